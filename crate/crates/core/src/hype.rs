//! k-hypes: total labelings whose every sub-assignment of size at most `k`
//! is realised by some member of the class.
//!
//! Consistency is always relative to the explicit class `C`; the realised
//! members play the role of the consistent types.

use rayon::prelude::*;

use crate::average::{search_decomposition, Alpha, DecomposeOutcome};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::hitting::min_hitting_set;
use crate::setsystem::{Labeling, SetSystem};
use crate::vc::vc_dimension;

/// Largest ground set for which every labeling is enumerated.
pub const MAX_HYPE_GROUND: usize = 16;

/// A labeling checked to be a k-hype of a particular class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hype {
    signs: Labeling,
    k: usize,
    class_fingerprint: u64,
}

impl Hype {
    pub fn new(class: &SetSystem, signs: Labeling, k: usize) -> Result<Self> {
        if !is_k_hype(class, &signs, k)? {
            return Err(Error::NotAHype { k });
        }
        Ok(Hype {
            signs,
            k,
            class_fingerprint: class.fingerprint(),
        })
    }

    pub fn signs(&self) -> &Labeling {
        &self.signs
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ground_size(&self) -> usize {
        self.signs.ground_size()
    }

    fn check_class(&self, class: &SetSystem) -> Result<()> {
        if self.class_fingerprint != class.fingerprint() {
            return Err(Error::Precondition(
                "hype was checked against another class".into(),
            ));
        }
        Ok(())
    }
}

/// Does every sub-assignment of `gamma` on at most `k` points extend to a
/// member of `class`?
///
/// A set `S` fails to extend exactly when it meets every disagreement set
/// `c Δ gamma`, so `gamma` is a k-hype iff the disagreement sets have no
/// hitting set of size `≤ k`.
pub fn is_k_hype(class: &SetSystem, gamma: &Labeling, k: usize) -> Result<bool> {
    if gamma.ground_size() != class.ground_size() {
        return Err(Error::GroundMismatch {
            expected: class.ground_size(),
            got: gamma.ground_size(),
        });
    }
    class.require_nonempty()?;
    Ok(hype_bits(class, gamma.bits(), k))
}

fn hype_bits(class: &SetSystem, gamma: &Bits, k: usize) -> bool {
    let disagreements: Vec<Bits> = class.concepts().iter().map(|c| c.xor(gamma)).collect();
    // An empty disagreement set means gamma is a member; nothing can hit it.
    min_hitting_set(class.ground_size(), &disagreements, k).is_none()
}

/// The class of all k-hypes of `class`, on the same ground set.
pub fn hype_family(class: &SetSystem, k: usize) -> Result<SetSystem> {
    class.require_nonempty()?;
    let m = class.ground_size();
    Error::cap("ground size", MAX_HYPE_GROUND, m)?;
    let concepts: Vec<Bits> = (0..1u64 << m)
        .into_par_iter()
        .map(|w| Bits::from_word(m, w))
        .filter(|g| hype_bits(class, g, k))
        .collect();
    SetSystem::new(m, concepts)
}

/// Writes a hype as the α-rounded average of at most `n_max` members of
/// teaching dimension at most `hype.k()`.
pub fn hype_decompose(
    class: &SetSystem,
    hype: &Hype,
    alpha: Alpha,
    n_max: usize,
) -> Result<DecomposeOutcome> {
    hype.check_class(class)?;
    search_decomposition(class, hype.signs(), alpha, n_max, hype.k())
}

/// A minimum list of members such that each point has a listed member
/// agreeing with the hype there. Requires `k > vc(class)`.
pub fn hype_cover(class: &SetSystem, hype: &Hype) -> Result<Vec<Labeling>> {
    hype.check_class(class)?;
    let vc = vc_dimension(class)?;
    if hype.k() <= vc {
        return Err(Error::Precondition(format!(
            "hype cover needs k > vc(C): k = {}, vc = {vc}",
            hype.k()
        )));
    }
    let m = class.ground_size();
    let gamma = hype.signs().bits();
    // Universe: members of the class. One set per point: the members agreeing there.
    let agreeing: Vec<Bits> = (0..m)
        .map(|a| {
            Bits::from_indices(
                class.len(),
                class
                    .concepts()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.get(a) == gamma.get(a))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    let chosen = min_hitting_set(class.len(), &agreeing, class.len())
        .ok_or_else(|| Error::Internal("a point has no agreeing member".into()))?;
    Ok(chosen.into_iter().map(|i| class.labeling(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn lab(s: &str) -> Labeling {
        Labeling::parse(s).unwrap()
    }

    fn sys(rows: &[&str]) -> SetSystem {
        SetSystem::from_bitstrings(rows).unwrap()
    }

    fn triangle() -> SetSystem {
        sys(&["110", "011", "101"])
    }

    /// Direct reading of k-consistency: every subset of size min(k, m) extends.
    fn brute_is_hype(class: &SetSystem, gamma: &Labeling, k: usize) -> bool {
        let m = class.ground_size();
        (0..m).combinations(k.min(m)).all(|s| {
            class
                .labelings()
                .any(|c| s.iter().all(|&p| c.get(p) == gamma.get(p)))
        })
    }

    #[test]
    fn hype_examples() {
        let c = triangle();
        assert!(is_k_hype(&c, &lab("111"), 2).unwrap());
        assert!(!is_k_hype(&c, &lab("111"), 3).unwrap());
        assert!(!is_k_hype(&c, &lab("000"), 2).unwrap());
        for member in c.labelings() {
            assert!(is_k_hype(&c, &member, 3).unwrap());
        }
        assert!(is_k_hype(&c, &lab("11"), 2).is_err());
    }

    #[test]
    fn hitting_form_matches_direct_reading() {
        let c = sys(&["1100", "0110", "0011", "1001", "0000"]);
        for w in 0..16u64 {
            let g = Labeling::new(4, Bits::from_word(4, w)).unwrap();
            for k in 0..=5 {
                assert_eq!(is_k_hype(&c, &g, k).unwrap(), brute_is_hype(&c, &g, k));
            }
        }
    }

    #[test]
    fn family_examples() {
        let c = triangle();
        assert_eq!(
            hype_family(&c, 2).unwrap(),
            sys(&["110", "011", "101", "111"])
        );
        assert_eq!(hype_family(&c, 0).unwrap().len(), 8);
        assert_eq!(hype_family(&c, 3).unwrap(), c);
        let big = SetSystem::new(17, vec![Bits::zeros(17)]).unwrap();
        assert!(hype_family(&big, 2).unwrap_err().is_cap());
    }

    #[test]
    fn decompose_examples() {
        let c = triangle();
        let h = Hype::new(&c, lab("111"), 2).unwrap();
        let d = hype_decompose(&c, &h, Alpha::HALF, 5).unwrap();
        let d = d.found().unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.concepts(), vec![lab("011"), lab("101"), lab("110")]);

        let member = Hype::new(&c, lab("110"), 2).unwrap();
        let d = hype_decompose(&c, &member, Alpha::HALF, 5).unwrap();
        assert_eq!(d.found().unwrap().n(), 1);

        // Every member has teaching dimension 1, so k = 1 gives the same answer.
        let h1 = Hype::new(&c, lab("111"), 1).unwrap();
        assert_eq!(
            hype_decompose(&c, &h1, Alpha::HALF, 5)
                .unwrap()
                .found()
                .unwrap()
                .n(),
            3
        );

        assert_eq!(
            Hype::new(&c, lab("000"), 2).unwrap_err(),
            Error::NotAHype { k: 2 }
        );
    }

    #[test]
    fn cover_examples() {
        let c = triangle();
        let h = Hype::new(&c, lab("111"), 2).unwrap();
        let cover = hype_cover(&c, &h).unwrap();
        assert_eq!(cover, vec![lab("011"), lab("101")]);

        let member = Hype::new(&c, lab("101"), 2).unwrap();
        assert_eq!(hype_cover(&c, &member).unwrap(), vec![lab("101")]);

        let low = Hype::new(&c, lab("111"), 1).unwrap();
        assert!(matches!(hype_cover(&c, &low), Err(Error::Precondition(_))));
    }
}
