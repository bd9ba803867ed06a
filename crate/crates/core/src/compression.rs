//! Teaching sets and compressible concepts.
//!
//! On a finite ground set `A`, a concept `c` is k-compressible in `C` exactly
//! when some `A1` with `|A1| ≤ k` satisfies `c|A1 ⊢_C c|A`: asking for every
//! finite `A0 ⊆ A` is the same as asking for `A0 = A`. The teaching dimension
//! below is therefore the least such `k`, and equals the least `k` for which
//! `c` is k-isolated.

use itertools::Itertools;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::hitting::min_hitting_set;
use crate::setsystem::{Labeling, PartialLabeling, SetSystem};
use crate::vc::{largest_shattered_set, vc_dimension};

/// Largest ground set on which minimum teaching sets are searched exactly.
pub const MAX_TEACHING_GROUND: usize = 24;

/// Largest cube built by [`shattering_hard_instance`].
pub const MAX_HARD_INSTANCE: usize = 20;

/// A witness set on which `concept` is the only member of its class with
/// these signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeachingCertificate {
    pub concept: Labeling,
    pub witness: Vec<usize>,
    pub class_fingerprint: u64,
}

impl TeachingCertificate {
    pub fn size(&self) -> usize {
        self.witness.len()
    }

    /// The signed literals `point ↦ sign` of the witness.
    pub fn literals(&self) -> Vec<(usize, bool)> {
        self.witness
            .iter()
            .map(|&p| (p, self.concept.get(p)))
            .collect()
    }

    /// Full re-scan of `class`: the concept is a member, and no other member
    /// agrees with it on the witness.
    pub fn verify(&self, class: &SetSystem) -> bool {
        if self.class_fingerprint != class.fingerprint() || !class.contains(&self.concept) {
            return false;
        }
        if self.witness.iter().any(|&p| p >= class.ground_size()) {
            return false;
        }
        let mask = Bits::from_indices(class.ground_size(), self.witness.iter().copied());
        class
            .concepts()
            .iter()
            .filter(|c| c.agrees_on(self.concept.bits(), &mask))
            .count()
            == 1
    }
}

/// `c|B ⊢_C c|A0`: every member agreeing with `c` on `B` agrees with it on `A0`.
pub fn implies_within(class: &SetSystem, c: &Labeling, b: &[usize], a0: &[usize]) -> Result<bool> {
    class.require_member(c)?;
    let bm = class.point_mask(b)?;
    let am = class.point_mask(a0)?;
    Ok(class
        .concepts()
        .iter()
        .filter(|other| other.agrees_on(c.bits(), &bm))
        .all(|other| other.agrees_on(c.bits(), &am)))
}

/// Lexicographically least minimum teaching set of the member at `index`,
/// if one of size at most `max_size` exists.
pub(crate) fn teaching_set_within(
    class: &SetSystem,
    index: usize,
    max_size: usize,
) -> Option<Vec<usize>> {
    let target = &class.concepts()[index];
    let diffs: Vec<Bits> = class
        .concepts()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, c)| c.xor(target))
        .collect();
    min_hitting_set(class.ground_size(), &diffs, max_size)
}

fn certificate(class: &SetSystem, index: usize, witness: Vec<usize>) -> TeachingCertificate {
    TeachingCertificate {
        concept: class.labeling(index),
        witness,
        class_fingerprint: class.fingerprint(),
    }
}

/// Minimum teaching-set size of `c` in `class`, with the lexicographically
/// least witness of that size.
pub fn teaching_dimension(class: &SetSystem, c: &Labeling) -> Result<(usize, TeachingCertificate)> {
    let index = class.require_member(c)?;
    Error::cap("ground size", MAX_TEACHING_GROUND, class.ground_size())?;
    let witness = teaching_set_within(class, index, class.ground_size())
        .ok_or_else(|| Error::Internal("full ground set failed to teach a member".into()))?;
    Ok((witness.len(), certificate(class, index, witness)))
}

/// A certificate of size at most `k`, if `c` is k-compressible in `class`.
pub fn is_k_compressible(
    class: &SetSystem,
    c: &Labeling,
    k: usize,
) -> Result<Option<TeachingCertificate>> {
    let index = class.require_member(c)?;
    Ok(teaching_set_within(class, index, k).map(|w| certificate(class, index, w)))
}

/// k-isolation read directly: some `A0` with `|A0| ≤ k` has `c|A0 ⊢_C c`.
///
/// Scans subsets with [`implies_within`] rather than the hitting-set search,
/// so it can serve as a cross-check of [`is_k_compressible`].
pub fn is_k_isolated(class: &SetSystem, c: &Labeling, k: usize) -> Result<bool> {
    class.require_member(c)?;
    let m = class.ground_size();
    let all: Vec<usize> = (0..m).collect();
    for size in 0..=k.min(m) {
        for a0 in (0..m).combinations(size) {
            if implies_within(class, c, &a0, &all)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `kc(d) = 2^{d+1}(d−2) + d + 4`.
pub fn kc(d: u32) -> u64 {
    let d = i128::from(d);
    let v = (1i128 << (d + 1)) * (d - 2) + d + 4;
    u64::try_from(v).expect("kc(d) is non-negative")
}

/// Constants of the compressibility recursion for classes of VC dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KcParameters {
    pub d: u32,
    pub kc_value: u64,
    /// Size of the teaching sets kept for the partial labeling that cuts the
    /// VC dimension by one; `2^d (d−1) + 1`, defined for `d ≥ 1`.
    pub k0_value: Option<u64>,
}

impl KcParameters {
    pub fn for_vc(d: u32) -> Self {
        let k0_value = (d >= 1).then(|| (1u64 << d) * u64::from(d - 1) + 1);
        KcParameters {
            d,
            kc_value: kc(d),
            k0_value,
        }
    }
}

/// Member of `class` whose restriction to the domain of `cond` is `cond`,
/// as an index into the restricted class, together with that restriction.
fn restricted_member(
    class: &SetSystem,
    cond: &PartialLabeling,
) -> Result<Option<(crate::setsystem::Restriction, usize)>> {
    let r = class.restrict(&cond.domain_points())?;
    let projected = r
        .project(cond)
        .to_total()
        .ok_or_else(|| Error::Internal("projection of a condition is total".into()))?;
    Ok(r.system.index_of(&projected).map(|i| (r, i)))
}

/// Is `cond` a member of `C|_D` (D its domain) with a teaching set of size
/// at most `k0` there?
fn in_poset(class: &SetSystem, cond: &PartialLabeling, k0: usize) -> Result<bool> {
    Ok(match restricted_member(class, cond)? {
        Some((r, i)) => teaching_set_within(&r.system, i, k0).is_some(),
        None => false,
    })
}

/// Grows a partial labeling that stays k0-compressible in its own restriction
/// until the relativised class drops below VC dimension `vc`.
fn grow_condition(class: &SetSystem, vc: usize, k0: usize) -> Result<PartialLabeling> {
    let m = class.ground_size();
    let mut cond = PartialLabeling::empty(m);
    'grow: loop {
        for p in 0..m {
            if cond.domain().get(p) {
                continue;
            }
            for v in [false, true] {
                let mut next = cond.clone();
                next.assign(p, v);
                if in_poset(class, &next, k0)? {
                    cond = next;
                    continue 'grow;
                }
            }
        }
        // No single point extends `cond`. If the relativised class still
        // shatters `vc` points, some sign pattern on such a set `B` extends it.
        let rel = class.relativize(&cond)?;
        if vc_dimension(&rel)? < vc {
            return Ok(cond);
        }
        let shattered = largest_shattered_set(&rel)?;
        let b = &shattered[..vc];
        for pattern in 0..(1u64 << vc) {
            let mut next = cond.clone();
            for (j, &p) in b.iter().enumerate() {
                next.assign(p, (pattern >> j) & 1 == 1);
            }
            if in_poset(class, &next, k0)? {
                cond = next;
                continue 'grow;
            }
        }
        return Err(Error::Internal(format!(
            "no extension of {cond} on shattered set {b:?} stays {k0}-compressible"
        )));
    }
}

/// Index of a member and a witness with `|witness| ≤ kc(vc(class))`.
fn kc_search(class: &SetSystem) -> Result<(usize, Vec<usize>)> {
    let m = class.ground_size();
    let vc = vc_dimension(class)?;
    if vc == 0 {
        return Ok((0, Vec::new()));
    }
    let k0 = KcParameters::for_vc(vc as u32).k0_value.expect("vc ≥ 1") as usize;
    if m <= k0 {
        return Ok((0, (0..m).collect()));
    }
    let cond = grow_condition(class, vc, k0)?;
    let rel = class.relativize(&cond)?;
    let (inner, inner_witness) = kc_search(&rel)?;
    let (r, ri) = restricted_member(class, &cond)?
        .ok_or_else(|| Error::Internal("grown condition left the class".into()))?;
    let local = teaching_set_within(&r.system, ri, k0)
        .ok_or_else(|| Error::Internal("grown condition lost its teaching set".into()))?;
    let mut witness = inner_witness;
    witness.extend(r.lift_points(&local));
    witness.sort_unstable();
    witness.dedup();
    let index = class
        .index_of(&rel.labeling(inner))
        .ok_or_else(|| Error::Internal("relativised member missing from class".into()))?;
    Ok((index, witness))
}

/// A member of `class` that is `kc(vc(class))`-compressible, with its certificate.
///
/// Recursion on the VC dimension: grow a partial labeling `c'` on a domain
/// `D` that is k0-compressible in `C|_D` and maximal for that, which forces
/// `vc(C_{c'}) < vc(C)`; take a compressible member of `C_{c'}` and add the
/// k0 teaching points of `c'`.
pub fn find_kc_compressible(class: &SetSystem) -> Result<(Labeling, TeachingCertificate)> {
    class.require_nonempty()?;
    Error::cap("ground size", MAX_TEACHING_GROUND, class.ground_size())?;
    let (index, witness) = kc_search(class)?;
    let cert = certificate(class, index, witness);
    if !cert.verify(class) {
        return Err(Error::Internal("kc certificate failed verification".into()));
    }
    Ok((cert.concept.clone(), cert))
}

/// Extends a consistent partial labeling with a teaching set of size `≤ l` in
/// its own restriction to a member with a certificate of size
/// `≤ l + kc(vc(class))`.
pub fn extend_compressible(
    class: &SetSystem,
    cond: &PartialLabeling,
    l: usize,
) -> Result<(Labeling, TeachingCertificate)> {
    class.require_nonempty()?;
    class.check_partial(cond)?;
    Error::cap("ground size", MAX_TEACHING_GROUND, class.ground_size())?;
    let rel = class.relativize(cond)?;
    if rel.is_empty() {
        return Err(Error::InconsistentCondition);
    }
    let (r, ri) = restricted_member(class, cond)?
        .ok_or_else(|| Error::Internal("consistent condition not in restriction".into()))?;
    let local = teaching_set_within(&r.system, ri, l).ok_or_else(|| {
        Error::Precondition(format!(
            "{cond} has no teaching set of size ≤ {l} in its restriction"
        ))
    })?;
    let (inner, inner_witness) = kc_search(&rel)?;
    let mut witness = inner_witness;
    witness.extend(r.lift_points(&local));
    witness.sort_unstable();
    witness.dedup();
    let index = class
        .index_of(&rel.labeling(inner))
        .ok_or_else(|| Error::Internal("relativised member missing from class".into()))?;
    let cert = certificate(class, index, witness);
    if !cert.verify(class) {
        return Err(Error::Internal(
            "extension certificate failed verification".into(),
        ));
    }
    Ok((cert.concept.clone(), cert))
}

/// Minimum size of a teaching set of `cond` within its own restriction.
pub fn partial_teaching_dimension(class: &SetSystem, cond: &PartialLabeling) -> Result<usize> {
    class.check_partial(cond)?;
    let (r, ri) = restricted_member(class, cond)?.ok_or(Error::InconsistentCondition)?;
    teaching_set_within(&r.system, ri, r.system.ground_size())
        .map(|w| w.len())
        .ok_or_else(|| Error::Internal("full domain failed to teach".into()))
}

/// One stage of the recursive teaching sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RtdStep {
    pub concept: Labeling,
    pub teaching_dimension: usize,
    /// VC dimension of the class the concept was removed from.
    pub class_vc: usize,
}

/// Repeatedly removes a concept of minimum teaching dimension (first in
/// canonical order on ties) until the class is empty.
pub fn rtd_sequence(class: &SetSystem) -> Result<Vec<RtdStep>> {
    class.require_nonempty()?;
    Error::cap("ground size", MAX_TEACHING_GROUND, class.ground_size())?;
    let mut current = class.clone();
    let mut steps = Vec::with_capacity(class.len());
    while !current.is_empty() {
        let dims: Vec<usize> = (0..current.len())
            .into_par_iter()
            .map(|i| {
                teaching_set_within(&current, i, current.ground_size())
                    .map_or(usize::MAX, |w| w.len())
            })
            .collect();
        let (best, &td) = dims
            .iter()
            .enumerate()
            .min_by_key(|&(i, &d)| (d, i))
            .expect("non-empty");
        steps.push(RtdStep {
            concept: current.labeling(best),
            teaching_dimension: td,
            class_vc: vc_dimension(&current)?,
        });
        current = current.without(best);
    }
    Ok(steps)
}

/// The full cube on `n` points: every concept has teaching dimension `n`.
pub fn shattering_hard_instance(n: usize) -> Result<SetSystem> {
    Error::cap("cube dimension", MAX_HARD_INSTANCE, n)?;
    let concepts = (0..1u64 << n).map(|w| Bits::from_word(n, w)).collect();
    SetSystem::new(n, concepts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&str]) -> SetSystem {
        SetSystem::from_bitstrings(rows).unwrap()
    }

    fn lab(s: &str) -> Labeling {
        Labeling::parse(s).unwrap()
    }

    fn thresholds(m: usize) -> SetSystem {
        SetSystem::new(m, (0..=m).map(|j| Bits::from_indices(m, 0..j)).collect()).unwrap()
    }

    fn intervals(m: usize) -> SetSystem {
        let mut v = vec![Bits::zeros(m)];
        for i in 0..m {
            for j in i..m {
                v.push(Bits::from_indices(m, i..=j));
            }
        }
        SetSystem::new(m, v).unwrap()
    }

    #[test]
    fn implies_within_examples() {
        let cube = shattering_hard_instance(3).unwrap();
        let c = lab("010");
        assert!(implies_within(&cube, &c, &[0, 1, 2], &[0, 1, 2]).unwrap());
        assert!(!implies_within(&cube, &c, &[0, 1], &[0, 1, 2]).unwrap());
        let t = thresholds(3);
        assert!(implies_within(&t, &lab("110"), &[1, 2], &[0]).unwrap());
        assert_eq!(
            implies_within(&t, &lab("101"), &[0], &[1]),
            Err(Error::NotInClass)
        );
    }

    #[test]
    fn teaching_dimension_examples() {
        let single = sys(&["0110"]);
        let (td, cert) = teaching_dimension(&single, &lab("0110")).unwrap();
        assert_eq!((td, cert.witness.clone()), (0, vec![]));
        assert!(cert.verify(&single));

        let cube = shattering_hard_instance(4).unwrap();
        for c in cube.labelings() {
            let (td, cert) = teaching_dimension(&cube, &c).unwrap();
            assert_eq!(td, 4);
            assert_eq!(cert.witness, vec![0, 1, 2, 3]);
        }

        let iv = intervals(5);
        let (td, cert) = teaching_dimension(&iv, &lab("10000")).unwrap();
        assert_eq!(td, 2);
        assert_eq!(cert.literals(), vec![(0, true), (1, false)]);
        assert_eq!(teaching_dimension(&iv, &lab("01000")).unwrap().0, 3);
        assert_eq!(
            teaching_dimension(&iv, &lab("10100")).unwrap_err(),
            Error::NotInClass
        );
    }

    #[test]
    fn compressibility_and_isolation() {
        let cube = shattering_hard_instance(3).unwrap();
        let c = lab("101");
        assert!(is_k_compressible(&cube, &c, 3).unwrap().is_some());
        assert!(is_k_compressible(&cube, &c, 2).unwrap().is_none());
        assert!(!is_k_isolated(&cube, &c, 2).unwrap());
        assert!(is_k_isolated(&cube, &c, 3).unwrap());
    }

    #[test]
    fn kc_values() {
        assert_eq!((0..4).map(kc).collect::<Vec<_>>(), vec![0, 1, 6, 23]);
        for d in 0..=6u32 {
            assert_eq!(kc(d + 1) - kc(d), (1u64 << (d + 1)) * u64::from(d) + 1);
        }
        for d in 0..10 {
            assert!(kc(d) <= kc(d + 1));
        }
        let p = KcParameters::for_vc(2);
        assert_eq!((p.kc_value, p.k0_value), (6, Some(5)));
        assert_eq!(KcParameters::for_vc(0).k0_value, None);
        assert_eq!(KcParameters::for_vc(1).k0_value, Some(1));
    }

    #[test]
    fn find_kc_on_thresholds() {
        let t = thresholds(10);
        let (c, cert) = find_kc_compressible(&t).unwrap();
        assert!(cert.size() <= 1);
        assert!(cert.verify(&t));
        assert_eq!(c, cert.concept);
    }

    #[test]
    fn find_kc_small_ground_base_case() {
        let cube = shattering_hard_instance(2).unwrap();
        let (_, cert) = find_kc_compressible(&cube).unwrap();
        assert_eq!(cert.size(), 2);
    }

    #[test]
    fn find_kc_on_intervals() {
        let iv = intervals(8);
        let (_, cert) = find_kc_compressible(&iv).unwrap();
        assert!(cert.size() <= 6);
        assert!(cert.verify(&iv));
    }

    #[test]
    fn extend_examples() {
        let t = thresholds(10);
        let total = lab("1110000000");
        let (c, cert) = extend_compressible(&t, &total.as_partial(), 2).unwrap();
        assert_eq!(c, total);
        assert_eq!(cert.size(), 2);

        let cond = PartialLabeling::from_pairs(10, [(3, true)]).unwrap();
        let (c, cert) = extend_compressible(&t, &cond, 1).unwrap();
        assert!(c.get(3));
        assert!(cert.size() <= 2);
        assert!(cert.verify(&t));

        let bad = PartialLabeling::from_pairs(10, [(3, true), (1, false)]).unwrap();
        assert_eq!(
            extend_compressible(&t, &bad, 5).unwrap_err(),
            Error::InconsistentCondition
        );
    }

    #[test]
    fn rtd_examples() {
        let single = sys(&["01"]);
        let steps = rtd_sequence(&single).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].teaching_dimension, 0);

        let steps = rtd_sequence(&thresholds(4)).unwrap();
        assert_eq!(steps.len(), 5);
        assert!(steps.iter().all(|s| s.teaching_dimension <= 1));

        let steps = rtd_sequence(&shattering_hard_instance(2).unwrap()).unwrap();
        assert_eq!(steps.iter().map(|s| s.teaching_dimension).max(), Some(2));
    }

    #[test]
    fn hard_instance() {
        let one = shattering_hard_instance(1).unwrap();
        assert_eq!(one, sys(&["0", "1"]));
        assert_eq!(
            vc_dimension(&shattering_hard_instance(3).unwrap()).unwrap(),
            3
        );
        assert!(shattering_hard_instance(21).unwrap_err().is_cap());
    }
}
