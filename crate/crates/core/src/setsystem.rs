//! Finite set systems, total and partial labelings, restriction and relativisation.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::bits::Bits;
use crate::error::{Error, Result};

/// A total sign assignment on `0..ground_size`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    ground_size: usize,
    bits: Bits,
}

impl Labeling {
    pub fn new(ground_size: usize, bits: Bits) -> Result<Self> {
        check_width(ground_size, &bits)?;
        Ok(Labeling { ground_size, bits })
    }

    pub(crate) fn from_bits_unchecked(ground_size: usize, bits: Bits) -> Self {
        Labeling { ground_size, bits }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bits = Bits::parse(s.trim())
            .ok_or_else(|| Error::Input(format!("not a 0/1 string: {s:?}")))?;
        Ok(Labeling {
            ground_size: s.trim().len(),
            bits,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn get(&self, point: usize) -> bool {
        self.bits.get(point)
    }

    pub fn positives(&self) -> Vec<usize> {
        self.bits.iter_ones().collect()
    }

    pub fn flipped(&self, point: usize) -> Labeling {
        let mut bits = self.bits.clone();
        bits.set(point, !bits.get(point));
        Labeling {
            ground_size: self.ground_size,
            bits,
        }
    }

    /// The restriction of this labeling to `points`, as a partial labeling.
    pub fn restrict_to(&self, points: &[usize]) -> PartialLabeling {
        let domain = Bits::from_indices(self.ground_size, points.iter().copied());
        PartialLabeling {
            ground_size: self.ground_size,
            values: self.bits.and(&domain),
            domain,
        }
    }

    pub fn as_partial(&self) -> PartialLabeling {
        PartialLabeling {
            ground_size: self.ground_size,
            domain: Bits::ones(self.ground_size),
            values: self.bits.clone(),
        }
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bits.to_bitstring(self.ground_size))
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling({self})")
    }
}

/// A sign assignment on a subset of the ground set.
///
/// `values` is always a subset of `domain`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialLabeling {
    ground_size: usize,
    domain: Bits,
    values: Bits,
}

impl PartialLabeling {
    pub fn empty(ground_size: usize) -> Self {
        PartialLabeling {
            ground_size,
            domain: Bits::zeros(ground_size),
            values: Bits::zeros(ground_size),
        }
    }

    pub fn from_pairs<I>(ground_size: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, bool)>,
    {
        let mut seen = BTreeMap::new();
        for (p, v) in pairs {
            if p >= ground_size {
                return Err(Error::PointOutOfRange {
                    point: p,
                    ground_size,
                });
            }
            if seen.insert(p, v).is_some_and(|old| old != v) {
                return Err(Error::Input(format!("point {p} assigned twice")));
            }
        }
        let mut out = PartialLabeling::empty(ground_size);
        for (p, v) in seen {
            out.assign(p, v);
        }
        Ok(out)
    }

    /// Parses `0`, `1` and `-` (unassigned), point 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut out = PartialLabeling::empty(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => out.assign(i, false),
                '1' => out.assign(i, true),
                '-' | '*' | '?' => {}
                _ => return Err(Error::Input(format!("bad partial labeling {s:?}"))),
            }
        }
        Ok(out)
    }

    pub fn assign(&mut self, point: usize, value: bool) {
        self.domain.set(point, true);
        self.values.set(point, value);
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn domain(&self) -> &Bits {
        &self.domain
    }

    pub fn values(&self) -> &Bits {
        &self.values
    }

    pub fn domain_points(&self) -> Vec<usize> {
        self.domain.iter_ones().collect()
    }

    pub fn len(&self) -> usize {
        self.domain.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_zero()
    }

    pub fn is_total(&self) -> bool {
        self.len() == self.ground_size
    }

    pub fn get(&self, point: usize) -> Option<bool> {
        self.domain.get(point).then(|| self.values.get(point))
    }

    /// True iff `concept` carries these signs on the whole domain.
    pub fn is_extended_by(&self, concept: &Bits) -> bool {
        concept.agrees_on(&self.values, &self.domain)
    }

    pub fn to_total(&self) -> Option<Labeling> {
        self.is_total()
            .then(|| Labeling::from_bits_unchecked(self.ground_size, self.values.clone()))
    }

    pub fn pairs(&self) -> Vec<(usize, bool)> {
        self.domain
            .iter_ones()
            .map(|p| (p, self.values.get(p)))
            .collect()
    }
}

impl fmt::Display for PartialLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.ground_size {
            let ch = match self.get(i) {
                Some(true) => '1',
                Some(false) => '0',
                None => '-',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialLabeling({self})")
    }
}

fn check_width(ground_size: usize, bits: &Bits) -> Result<()> {
    if !bits.fits_width(ground_size) {
        return Err(Error::GroundMismatch {
            expected: ground_size,
            got: bits.iter_ones().last().map_or(0, |p| p + 1),
        });
    }
    Ok(())
}

/// A finite ground set `0..ground_size` with a deduplicated family of concepts
/// kept in canonical (lexicographic, point 0 first) order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground_size: usize,
    concepts: Vec<Bits>,
}

impl SetSystem {
    pub fn new(ground_size: usize, mut concepts: Vec<Bits>) -> Result<Self> {
        for c in &concepts {
            check_width(ground_size, c)?;
        }
        concepts.sort();
        concepts.dedup();
        Ok(SetSystem {
            ground_size,
            concepts,
        })
    }

    pub(crate) fn from_sorted_unchecked(ground_size: usize, concepts: Vec<Bits>) -> Self {
        debug_assert!(concepts.windows(2).all(|w| w[0] < w[1]));
        SetSystem {
            ground_size,
            concepts,
        }
    }

    pub fn empty(ground_size: usize) -> Self {
        SetSystem {
            ground_size,
            concepts: Vec::new(),
        }
    }

    /// Builds a class from `0`/`1` strings, point 0 first.
    pub fn from_bitstrings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let ground_size = rows.first().map_or(0, |r| r.as_ref().trim().len());
        let mut concepts = Vec::with_capacity(rows.len());
        for r in rows {
            let l = Labeling::parse(r.as_ref())?;
            if l.ground_size != ground_size {
                return Err(Error::GroundMismatch {
                    expected: ground_size,
                    got: l.ground_size,
                });
            }
            concepts.push(l.bits);
        }
        SetSystem::new(ground_size, concepts)
    }

    pub fn from_labelings(ground_size: usize, labelings: &[Labeling]) -> Result<Self> {
        let mut concepts = Vec::with_capacity(labelings.len());
        for l in labelings {
            if l.ground_size != ground_size {
                return Err(Error::GroundMismatch {
                    expected: ground_size,
                    got: l.ground_size,
                });
            }
            concepts.push(l.bits.clone());
        }
        SetSystem::new(ground_size, concepts)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn concepts(&self) -> &[Bits] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn labeling(&self, index: usize) -> Labeling {
        Labeling::from_bits_unchecked(self.ground_size, self.concepts[index].clone())
    }

    pub fn labelings(&self) -> impl Iterator<Item = Labeling> + '_ {
        (0..self.len()).map(|i| self.labeling(i))
    }

    pub fn index_of(&self, c: &Labeling) -> Option<usize> {
        if c.ground_size != self.ground_size {
            return None;
        }
        self.concepts.binary_search(&c.bits).ok()
    }

    pub fn contains(&self, c: &Labeling) -> bool {
        self.index_of(c).is_some()
    }

    /// Errors with [`Error::NotInClass`] unless `c` is a member.
    pub fn require_member(&self, c: &Labeling) -> Result<usize> {
        if c.ground_size != self.ground_size {
            return Err(Error::GroundMismatch {
                expected: self.ground_size,
                got: c.ground_size,
            });
        }
        self.index_of(c).ok_or(Error::NotInClass)
    }

    pub fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyClass)
        } else {
            Ok(())
        }
    }

    /// Validates a point list and returns it as a mask.
    pub fn point_mask(&self, points: &[usize]) -> Result<Bits> {
        for &p in points {
            if p >= self.ground_size {
                return Err(Error::PointOutOfRange {
                    point: p,
                    ground_size: self.ground_size,
                });
            }
        }
        Ok(Bits::from_indices(self.ground_size, points.iter().copied()))
    }

    pub fn check_partial(&self, c: &PartialLabeling) -> Result<()> {
        if c.ground_size != self.ground_size {
            return Err(Error::GroundMismatch {
                expected: self.ground_size,
                got: c.ground_size,
            });
        }
        Ok(())
    }

    /// Stable 64-bit digest of the class, used to tie certificates to it.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over the canonical encoding.
        struct Fnv(u64);
        impl Hasher for Fnv {
            fn finish(&self) -> u64 {
                self.0
            }
            fn write(&mut self, bytes: &[u8]) {
                for &b in bytes {
                    self.0 ^= u64::from(b);
                    self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        let mut h = Fnv(0xcbf2_9ce4_8422_2325);
        (self.ground_size as u64).hash(&mut h);
        for c in &self.concepts {
            c.hash(&mut h);
        }
        h.finish()
    }

    /// The subclass `{c ∈ C : c ⊇ c'}` on the same ground set. May be empty.
    pub fn relativize(&self, condition: &PartialLabeling) -> Result<SetSystem> {
        self.check_partial(condition)?;
        let concepts = self
            .concepts
            .iter()
            .filter(|c| condition.is_extended_by(c))
            .cloned()
            .collect();
        Ok(SetSystem::from_sorted_unchecked(self.ground_size, concepts))
    }

    /// `C|_B`, reindexed so that new point `j` is `points[j]` (after sorting).
    pub fn restrict(&self, points: &[usize]) -> Result<Restriction> {
        self.point_mask(points)?;
        let mut point_map = points.to_vec();
        point_map.sort_unstable();
        point_map.dedup();
        let width = point_map.len();
        let concepts = self
            .concepts
            .iter()
            .map(|c| {
                let mut b = Bits::zeros(width);
                for (j, &p) in point_map.iter().enumerate() {
                    if c.get(p) {
                        b.set(j, true);
                    }
                }
                b
            })
            .collect();
        Ok(Restriction {
            system: SetSystem::new(width, concepts)?,
            point_map,
        })
    }

    /// The class without the concept at `index`.
    pub fn without(&self, index: usize) -> SetSystem {
        let mut concepts = self.concepts.clone();
        concepts.remove(index);
        SetSystem::from_sorted_unchecked(self.ground_size, concepts)
    }

    pub fn is_subclass_of(&self, other: &SetSystem) -> bool {
        self.ground_size == other.ground_size
            && self
                .concepts
                .iter()
                .all(|c| other.concepts.binary_search(c).is_ok())
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetSystem")
            .field("ground_size", &self.ground_size)
            .field(
                "concepts",
                &self
                    .concepts
                    .iter()
                    .map(|c| c.to_bitstring(self.ground_size))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A restricted class together with the original index of each new point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub system: SetSystem,
    pub point_map: Vec<usize>,
}

impl Restriction {
    /// Maps a set of restricted points back to original indices.
    pub fn lift_points(&self, points: &[usize]) -> Vec<usize> {
        points.iter().map(|&j| self.point_map[j]).collect()
    }

    /// Rewrites a partial labeling of the original ground set over the restricted points.
    pub fn project(&self, c: &PartialLabeling) -> PartialLabeling {
        let mut out = PartialLabeling::empty(self.point_map.len());
        for (j, &p) in self.point_map.iter().enumerate() {
            if let Some(v) = c.get(p) {
                out.assign(j, v);
            }
        }
        out
    }
}

/// The class of all `n`-fold intersections `s_1 ∩ … ∩ s_n`, one member per system.
pub fn intersection_system(systems: &[SetSystem]) -> Result<SetSystem> {
    let first = systems
        .first()
        .ok_or_else(|| Error::Input("intersection of an empty list of systems".into()))?;
    let m = first.ground_size;
    for s in systems {
        if s.ground_size != m {
            return Err(Error::GroundMismatch {
                expected: m,
                got: s.ground_size,
            });
        }
    }
    // Intersection is associative, so folding with a dedup per step gives the
    // same family as enumerating every choice tuple.
    let mut acc = first.concepts.clone();
    for s in &systems[1..] {
        let mut next = Vec::with_capacity(acc.len() * s.len());
        for a in &acc {
            for b in &s.concepts {
                next.push(a.and(b));
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    Ok(SetSystem::from_sorted_unchecked(m, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&str]) -> SetSystem {
        SetSystem::from_bitstrings(rows).unwrap()
    }

    #[test]
    fn construction_dedups_and_sorts() {
        let c = sys(&["110", "011", "110", "000"]);
        assert_eq!(c.len(), 3);
        let rows: Vec<String> = c.labelings().map(|l| l.to_string()).collect();
        assert_eq!(rows, ["000", "011", "110"]);
    }

    #[test]
    fn width_is_checked() {
        let err = SetSystem::new(2, vec![Bits::from_indices(3, [2])]).unwrap_err();
        assert!(matches!(err, Error::GroundMismatch { .. }));
        assert!(SetSystem::from_bitstrings(&["10", "101"]).is_err());
    }

    #[test]
    fn relativize_examples() {
        let cube = sys(&["000", "001", "010", "011", "100", "101", "110", "111"]);
        let all = cube.relativize(&PartialLabeling::empty(3)).unwrap();
        assert_eq!(all, cube);
        let pos0 = cube
            .relativize(&PartialLabeling::from_pairs(3, [(0, true)]).unwrap())
            .unwrap();
        assert_eq!(pos0.len(), 4);
        assert!(pos0.labelings().all(|l| l.get(0)));
        let none = sys(&["00"])
            .relativize(&PartialLabeling::parse("1-").unwrap())
            .unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn restrict_examples() {
        let cube = sys(&["000", "001", "010", "011", "100", "101", "110", "111"]);
        let r = cube.restrict(&[0, 1]).unwrap();
        assert_eq!(r.system, sys(&["00", "01", "10", "11"]));
        assert_eq!(r.point_map, vec![0, 1]);
        assert_eq!(cube.restrict(&[0, 1, 2]).unwrap().system, cube);
        assert!(matches!(
            cube.restrict(&[3]),
            Err(Error::PointOutOfRange { point: 3, .. })
        ));
        let t = sys(&["100", "110", "111"]).restrict(&[2, 1]).unwrap();
        assert_eq!(t.point_map, vec![1, 2]);
        assert_eq!(t.lift_points(&[1]), vec![2]);
    }

    #[test]
    fn intersection_examples() {
        let a = sys(&["10"]);
        let b = sys(&["01"]);
        assert_eq!(intersection_system(&[a.clone()]).unwrap(), a);
        assert_eq!(intersection_system(&[a, b]).unwrap(), sys(&["00"]));
        assert!(intersection_system(&[sys(&["1"]), sys(&["11"])]).is_err());
        assert!(intersection_system(&[]).is_err());
    }

    #[test]
    fn partial_labeling_rejects_double_assignment() {
        assert!(PartialLabeling::from_pairs(3, [(0, true), (0, false)]).is_err());
        assert!(PartialLabeling::from_pairs(3, [(0, true), (0, true)]).is_ok());
        assert!(PartialLabeling::from_pairs(3, [(5, true)]).is_err());
        let p = PartialLabeling::parse("1-0").unwrap();
        assert_eq!(p.pairs(), vec![(0, true), (2, false)]);
        assert_eq!(p.to_string(), "1-0");
    }

    #[test]
    fn fingerprint_distinguishes_classes() {
        assert_ne!(
            sys(&["10", "01"]).fingerprint(),
            sys(&["10", "11"]).fingerprint()
        );
        assert_eq!(
            sys(&["10", "01"]).fingerprint(),
            sys(&["01", "10"]).fingerprint()
        );
    }
}
