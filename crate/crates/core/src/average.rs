//! Majority votes, α-rounded averages and decompositions of a labeling into
//! compressible concepts; (p,q)-property checks and minimum transversals.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::compression::{teaching_set_within, TeachingCertificate};
use crate::error::{Error, Result};
use crate::hitting::min_hitting_set;
use crate::setsystem::{Labeling, PartialLabeling, SetSystem};

/// Largest ground set for transversal search.
pub const MAX_TRANSVERSAL_GROUND: usize = 24;

/// A rational threshold in `[1/2, 1)`, compared exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alpha {
    num: u64,
    den: u64,
}

impl Alpha {
    pub const HALF: Alpha = Alpha { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || 2 * num < den || num >= den {
            return Err(Error::AlphaOutOfRange(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Alpha {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// `count > α·n`, by cross-multiplication.
    #[inline]
    pub fn exceeded_by(&self, count: usize, n: usize) -> bool {
        (count as u128) * u128::from(self.den) > u128::from(self.num) * (n as u128)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Default for Alpha {
    fn default() -> Self {
        Alpha::HALF
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::AlphaOutOfRange(s.to_string()))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::AlphaOutOfRange(s.to_string()))
        };
        Alpha::new(parse(n)?, parse(d)?)
    }
}

/// `Maj^α`: the sign carried by strictly more than `α·n` votes, if any.
pub fn maj_alpha(votes: &[bool], alpha: Alpha) -> Result<Option<bool>> {
    if votes.is_empty() {
        return Err(Error::Input("majority of an empty vote".into()));
    }
    let n = votes.len();
    let ones = votes.iter().filter(|&&v| v).count();
    Ok(if alpha.exceeded_by(ones, n) {
        Some(true)
    } else if alpha.exceeded_by(n - ones, n) {
        Some(false)
    } else {
        None
    })
}

/// Pointwise `Maj^α`; points where neither sign wins are left unassigned.
pub fn rounded_average(concepts: &[Labeling], alpha: Alpha) -> Result<PartialLabeling> {
    let first = concepts
        .first()
        .ok_or_else(|| Error::Input("rounded average of no concepts".into()))?;
    let m = first.ground_size();
    if let Some(bad) = concepts.iter().find(|c| c.ground_size() != m) {
        return Err(Error::GroundMismatch {
            expected: m,
            got: bad.ground_size(),
        });
    }
    let n = concepts.len();
    let mut out = PartialLabeling::empty(m);
    for a in 0..m {
        let ones = concepts.iter().filter(|c| c.get(a)).count();
        if alpha.exceeded_by(ones, n) {
            out.assign(a, true);
        } else if alpha.exceeded_by(n - ones, n) {
            out.assign(a, false);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub concept: Labeling,
    pub certificate: TeachingCertificate,
}

/// A multiset of compressible concepts whose α-rounded average is `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub alpha: Alpha,
    pub components: Vec<Component>,
    pub target: Labeling,
    pub k_bound: usize,
}

impl Decomposition {
    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn concepts(&self) -> Vec<Labeling> {
        self.components.iter().map(|c| c.concept.clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    NoComponents,
    GroundMismatch,
    ComponentNotInClass,
    CertificateMismatch,
    CertificateInvalid,
    CertificateTooLarge,
    AverageMismatch,
}

impl Fault {
    pub fn code(&self) -> &'static str {
        match self {
            Fault::NoComponents => "no components",
            Fault::GroundMismatch => "ground mismatch",
            Fault::ComponentNotInClass => "component not in class",
            Fault::CertificateMismatch => "certificate names another concept",
            Fault::CertificateInvalid => "certificate invalid",
            Fault::CertificateTooLarge => "certificate exceeds k",
            Fault::AverageMismatch => "average mismatch",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Re-evaluates every invariant of `d` against `class`.
///
/// Membership is checked for components only; the target may lie outside
/// the class (hypes).
pub fn verify_decomposition(
    class: &SetSystem,
    d: &Decomposition,
) -> std::result::Result<(), Fault> {
    if d.components.is_empty() {
        return Err(Fault::NoComponents);
    }
    let m = class.ground_size();
    if d.target.ground_size() != m || d.components.iter().any(|c| c.concept.ground_size() != m) {
        return Err(Fault::GroundMismatch);
    }
    for c in &d.components {
        if !class.contains(&c.concept) {
            return Err(Fault::ComponentNotInClass);
        }
        if c.certificate.concept != c.concept {
            return Err(Fault::CertificateMismatch);
        }
        if !c.certificate.verify(class) {
            return Err(Fault::CertificateInvalid);
        }
        if c.certificate.size() > d.k_bound {
            return Err(Fault::CertificateTooLarge);
        }
    }
    let avg = rounded_average(&d.concepts(), d.alpha).map_err(|_| Fault::GroundMismatch)?;
    if avg != d.target.as_partial() {
        return Err(Fault::AverageMismatch);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Found(Decomposition),
    /// No decomposition with at most `n_max` components of teaching
    /// dimension at most `k`. Not a claim that none exists beyond the bounds.
    Exhausted {
        n_max: usize,
        k: usize,
    },
}

impl DecomposeOutcome {
    pub fn found(&self) -> Option<&Decomposition> {
        match self {
            DecomposeOutcome::Found(d) => Some(d),
            DecomposeOutcome::Exhausted { .. } => None,
        }
    }
}

struct MultisetSearch<'a> {
    candidates: &'a [Bits],
    target: &'a Bits,
    m: usize,
    n: usize,
    alpha: Alpha,
}

impl MultisetSearch<'_> {
    fn feasible(&self, ones: &[usize], chosen: usize) -> bool {
        let left = self.n - chosen;
        (0..self.m).all(|a| {
            let agree = if self.target.get(a) {
                ones[a]
            } else {
                chosen - ones[a]
            };
            self.alpha.exceeded_by(agree + left, self.n)
        })
    }

    fn dfs(&self, start: usize, ones: &mut [usize], picked: &mut Vec<usize>) -> bool {
        if !self.feasible(ones, picked.len()) {
            return false;
        }
        if picked.len() == self.n {
            return true;
        }
        for i in start..self.candidates.len() {
            let c = &self.candidates[i];
            for p in c.iter_ones() {
                ones[p] += 1;
            }
            picked.push(i);
            if self.dfs(i, ones, picked) {
                return true;
            }
            picked.pop();
            for p in c.iter_ones() {
                ones[p] -= 1;
            }
        }
        false
    }
}

/// Iterative deepening over multisets of members with teaching dimension at
/// most `k`, components in canonical order; the target need not be a member.
pub(crate) fn search_decomposition(
    class: &SetSystem,
    target: &Labeling,
    alpha: Alpha,
    n_max: usize,
    k: usize,
) -> Result<DecomposeOutcome> {
    class.require_nonempty()?;
    if target.ground_size() != class.ground_size() {
        return Err(Error::GroundMismatch {
            expected: class.ground_size(),
            got: target.ground_size(),
        });
    }
    if n_max == 0 {
        return Err(Error::Input("n_max must be at least 1".into()));
    }
    let teachable: Vec<(usize, Vec<usize>)> = (0..class.len())
        .into_par_iter()
        .filter_map(|i| teaching_set_within(class, i, k).map(|w| (i, w)))
        .collect();
    let candidates: Vec<Bits> = teachable
        .iter()
        .map(|(i, _)| class.concepts()[*i].clone())
        .collect();
    let m = class.ground_size();
    for n in 1..=n_max {
        let search = MultisetSearch {
            candidates: &candidates,
            target: target.bits(),
            m,
            n,
            alpha,
        };
        let mut picked = Vec::with_capacity(n);
        if search.dfs(0, &mut vec![0; m], &mut picked) {
            let fp = class.fingerprint();
            let components = picked
                .iter()
                .map(|&j| {
                    let (i, w) = &teachable[j];
                    let concept = class.labeling(*i);
                    Component {
                        certificate: TeachingCertificate {
                            concept: concept.clone(),
                            witness: w.clone(),
                            class_fingerprint: fp,
                        },
                        concept,
                    }
                })
                .collect();
            let d = Decomposition {
                alpha,
                components,
                target: target.clone(),
                k_bound: k,
            };
            verify_decomposition(class, &d).map_err(|f| {
                Error::Internal(format!("search produced a bad decomposition: {f}"))
            })?;
            return Ok(DecomposeOutcome::Found(d));
        }
    }
    Ok(DecomposeOutcome::Exhausted { n_max, k })
}

/// Writes a member of `class` as the α-rounded average of at most `n_max`
/// members of teaching dimension at most `k`.
pub fn decompose(
    class: &SetSystem,
    target: &Labeling,
    alpha: Alpha,
    n_max: usize,
    k: usize,
) -> Result<DecomposeOutcome> {
    class.require_member(target)?;
    search_decomposition(class, target, alpha, n_max, k)
}

fn require_nonempty_members(family: &SetSystem) -> Result<()> {
    if family.concepts().iter().any(Bits::is_zero) {
        return Err(Error::Input("family contains an empty set".into()));
    }
    Ok(())
}

/// Every `p` members of the family include `q` with a common point.
///
/// Families with fewer than `p` members satisfy this vacuously.
pub fn pq_property(family: &SetSystem, p: usize, q: usize) -> Result<bool> {
    if q == 0 || q > p {
        return Err(Error::Input(format!("need 1 ≤ q ≤ p, got p={p} q={q}")));
    }
    require_nonempty_members(family)?;
    let sets = family.concepts();
    let m = family.ground_size();
    let has_common_q = |group: &[usize]| {
        group.iter().copied().combinations(q).any(|sub| {
            let mut acc = Bits::ones(m);
            for i in sub {
                acc = acc.and(&sets[i]);
            }
            !acc.is_zero()
        })
    };
    let groups: Vec<Vec<usize>> = (0..sets.len()).combinations(p).collect();
    Ok(groups.par_iter().all(|g| has_common_q(g)))
}

/// A minimum hitting set of the family, lexicographically least among those
/// of minimum size.
pub fn min_transversal(family: &SetSystem) -> Result<Vec<usize>> {
    Error::cap("ground size", MAX_TRANSVERSAL_GROUND, family.ground_size())?;
    require_nonempty_members(family)?;
    min_hitting_set(
        family.ground_size(),
        family.concepts(),
        family.ground_size(),
    )
    .ok_or_else(|| Error::Internal("ground set failed to hit a non-empty family".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalReport {
    pub family: SetSystem,
    pub p: usize,
    pub q: usize,
    pub has_pq: bool,
    pub min_transversal: Vec<usize>,
}

pub fn transversal_report(family: &SetSystem, p: usize, q: usize) -> Result<TransversalReport> {
    Ok(TransversalReport {
        family: family.clone(),
        p,
        q,
        has_pq: pq_property(family, p, q)?,
        min_transversal: min_transversal(family)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compression::teaching_dimension;

    fn lab(s: &str) -> Labeling {
        Labeling::parse(s).unwrap()
    }

    fn sys(rows: &[&str]) -> SetSystem {
        SetSystem::from_bitstrings(rows).unwrap()
    }

    fn votes(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn alpha_parsing_and_range() {
        assert_eq!("2/3".parse::<Alpha>().unwrap(), Alpha::new(2, 3).unwrap());
        assert_eq!("2/4".parse::<Alpha>().unwrap(), Alpha::HALF);
        assert!("1/3".parse::<Alpha>().is_err());
        assert!("1/1".parse::<Alpha>().is_err());
        assert!("x".parse::<Alpha>().is_err());
        assert!(Alpha::new(1, 0).is_err());
    }

    #[test]
    fn maj_examples() {
        let half = Alpha::HALF;
        let two_thirds = Alpha::new(2, 3).unwrap();
        assert_eq!(maj_alpha(&votes("110"), half).unwrap(), Some(true));
        assert_eq!(maj_alpha(&votes("10"), half).unwrap(), None);
        assert_eq!(maj_alpha(&votes("1110"), two_thirds).unwrap(), Some(true));
        assert_eq!(maj_alpha(&votes("1100"), two_thirds).unwrap(), None);
        assert_eq!(maj_alpha(&votes("000"), two_thirds).unwrap(), Some(false));
        assert!(maj_alpha(&[], half).is_err());
    }

    #[test]
    fn rounded_average_examples() {
        let p = lab("1011");
        let avg = rounded_average(&[p.clone(), p.clone(), p.clone()], Alpha::HALF).unwrap();
        assert_eq!(avg.to_total(), Some(p));
        let avg = rounded_average(&[lab("11"), lab("10")], Alpha::HALF).unwrap();
        assert_eq!(avg.to_string(), "1-");
        let avg = rounded_average(&[lab("100"), lab("110"), lab("111")], Alpha::HALF).unwrap();
        assert_eq!(avg.to_string(), "110");
        assert!(rounded_average(&[lab("1"), lab("10")], Alpha::HALF).is_err());
    }

    #[test]
    fn verify_accepts_self_decomposition_and_rejects_tampering() {
        let c = sys(&["000", "100", "110", "111"]);
        let p = lab("110");
        let (td, cert) = teaching_dimension(&c, &p).unwrap();
        let comp = Component {
            concept: p.clone(),
            certificate: cert,
        };
        let d = Decomposition {
            alpha: Alpha::HALF,
            components: vec![comp.clone(), comp.clone(), comp],
            target: p,
            k_bound: td,
        };
        assert_eq!(verify_decomposition(&c, &d), Ok(()));

        let mut bad = d.clone();
        bad.target = bad.target.flipped(2);
        assert_eq!(verify_decomposition(&c, &bad), Err(Fault::AverageMismatch));

        let mut bad = d.clone();
        bad.k_bound = 1;
        assert_eq!(
            verify_decomposition(&c, &bad),
            Err(Fault::CertificateTooLarge)
        );

        let mut bad = d.clone();
        bad.components[1].concept = lab("111");
        assert_eq!(
            verify_decomposition(&c, &bad),
            Err(Fault::CertificateMismatch)
        );

        let mut bad = d;
        bad.components[0].certificate.witness = vec![1];
        assert_eq!(
            verify_decomposition(&c, &bad),
            Err(Fault::CertificateInvalid)
        );
    }

    #[test]
    fn decompose_examples() {
        let t = sys(&["000", "100", "110", "111"]);
        let target = lab("110");
        let out = decompose(&t, &target, Alpha::HALF, 5, 1).unwrap();
        assert_eq!(out, DecomposeOutcome::Exhausted { n_max: 5, k: 1 });
        let out = decompose(&t, &target, Alpha::HALF, 5, 2).unwrap();
        let d = out.found().unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(d.concepts(), vec![target.clone()]);
        assert_eq!(
            decompose(&t, &lab("101"), Alpha::HALF, 5, 2).unwrap_err(),
            Error::NotInClass
        );
    }

    #[test]
    fn pq_examples() {
        let iv = sys(&["11100", "01110", "00111"]);
        assert!(pq_property(&iv, 2, 2).unwrap());
        assert!(!pq_property(&sys(&["100", "001"]), 2, 2).unwrap());
        assert!(pq_property(&sys(&["100", "001", "010"]), 3, 1).unwrap());
        assert!(pq_property(&sys(&["100", "000"]), 2, 1).is_err());
        assert!(pq_property(&iv, 2, 3).is_err());
    }

    #[test]
    fn transversal_examples() {
        let iv = sys(&["11100", "01110", "00111"]);
        assert_eq!(min_transversal(&iv).unwrap(), vec![2]);
        let singles = sys(&["1000", "0100", "0010", "0001"]);
        assert_eq!(min_transversal(&singles).unwrap(), vec![0, 1, 2, 3]);
        let r = transversal_report(&iv, 2, 2).unwrap();
        assert!(r.has_pq);
        assert_eq!(r.min_transversal, vec![2]);
    }
}
