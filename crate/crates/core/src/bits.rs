//! Fixed-width bit vectors used for concepts, labelings and point-sets.
//!
//! Point `i` lives in bit `i % 64` of limb `i / 64`. The [`Ord`] impl is the
//! canonical order of the crate: lexicographic on the bit string read from
//! point 0 upwards, with `0 < 1`.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const LIMB: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    limbs: SmallVec<[u64; 2]>,
}

#[inline]
fn limbs_for(width: usize) -> usize {
    width.div_ceil(LIMB)
}

impl Bits {
    pub fn zeros(width: usize) -> Self {
        Bits {
            limbs: SmallVec::from_elem(0, limbs_for(width)),
        }
    }

    pub fn ones(width: usize) -> Self {
        let mut b = Bits::zeros(width);
        for i in 0..width {
            b.set(i, true);
        }
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, points: I) -> Self {
        let mut b = Bits::zeros(width);
        for p in points {
            b.set(p, true);
        }
        b
    }

    /// Low `width` bits of `word`, point `i` taken from bit `i`.
    pub fn from_word(width: usize, word: u64) -> Self {
        debug_assert!(width <= LIMB);
        let mut b = Bits::zeros(width);
        if width > 0 {
            let mask = if width == LIMB {
                u64::MAX
            } else {
                (1u64 << width) - 1
            };
            b.limbs[0] = word & mask;
        }
        b
    }

    /// Parses a `0`/`1` string, point 0 first.
    pub fn parse(s: &str) -> Option<Self> {
        let mut b = Bits::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => b.set(i, true),
                _ => return None,
            }
        }
        Some(b)
    }

    /// True iff the limb count matches `width` and no bit at or above `width` is set.
    pub fn fits_width(&self, width: usize) -> bool {
        self.limbs.len() == limbs_for(width) && self.iter_ones().all(|p| p < width)
    }

    /// The first limb, for widths up to 64.
    #[inline]
    pub fn word(&self) -> u64 {
        self.limbs.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.limbs
            .get(i / LIMB)
            .is_some_and(|l| (l >> (i % LIMB)) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let bit = 1u64 << (i % LIMB);
        let limb = &mut self.limbs[i / LIMB];
        if v {
            *limb |= bit;
        } else {
            *limb &= !bit;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(li, &limb)| {
            let mut rest = limb;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(li * LIMB + tz)
                }
            })
        })
    }

    pub fn and(&self, other: &Bits) -> Bits {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Bits) -> Bits {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn and_not(&self, other: &Bits) -> Bits {
        self.zip(other, |a, b| a & !b)
    }

    fn zip(&self, other: &Bits, f: impl Fn(u64, u64) -> u64) -> Bits {
        debug_assert_eq!(self.limbs.len(), other.limbs.len());
        Bits {
            limbs: self
                .limbs
                .iter()
                .zip(other.limbs.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.limbs
            .iter()
            .zip(other.limbs.iter())
            .any(|(&a, &b)| a & b != 0)
    }

    pub fn is_subset_of(&self, other: &Bits) -> bool {
        self.limbs
            .iter()
            .zip(other.limbs.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    /// True iff `self` and `other` carry the same bits on every point of `mask`.
    #[inline]
    pub fn agrees_on(&self, other: &Bits, mask: &Bits) -> bool {
        self.limbs
            .iter()
            .zip(other.limbs.iter())
            .zip(mask.limbs.iter())
            .all(|((&a, &b), &m)| (a ^ b) & m == 0)
    }

    /// Packs the bits selected by `points` into a word, `points[j]` landing in bit `j`.
    pub fn gather(&self, points: &[usize]) -> u64 {
        debug_assert!(points.len() <= LIMB);
        points
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &p)| acc | (u64::from(self.get(p)) << j))
    }

    pub fn to_bitstring(&self, width: usize) -> String {
        (0..width)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs.len().cmp(&other.limbs.len()).then_with(|| {
            for (&a, &b) in self.limbs.iter().zip(other.limbs.iter()) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    return if a & low == 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits{{")?;
        for (n, p) in self.iter_ones().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_lexicographic_from_point_zero() {
        let mut v: Vec<Bits> = ["110", "011", "101", "000", "111"]
            .iter()
            .map(|s| Bits::parse(s).unwrap())
            .collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|b| b.to_bitstring(3)).collect();
        assert_eq!(s, ["000", "011", "101", "110", "111"]);
    }

    #[test]
    fn wide_vectors_cross_limbs() {
        let b = Bits::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(b.count_ones(), 4);
        let c = Bits::from_indices(130, [0, 63, 65, 129]);
        let mask = Bits::from_indices(130, [0, 63, 129]);
        assert!(b.agrees_on(&c, &mask));
        assert!(!b.agrees_on(&c, &Bits::ones(130)));
        assert!(c < b);
    }

    #[test]
    fn gather_packs_selected_points() {
        let b = Bits::parse("10110").unwrap();
        assert_eq!(b.gather(&[0, 2, 4]), 0b011);
        assert_eq!(b.gather(&[1, 3]), 0b10);
    }
}
