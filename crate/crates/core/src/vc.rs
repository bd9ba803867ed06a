//! Shattering, VC dimension, dual classes and the Sauer–Shelah counting bounds.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bits::Bits;
use crate::error::Result;
use crate::setsystem::SetSystem;

/// True iff every sign pattern on `points` is the trace of some concept.
pub fn shatters(class: &SetSystem, points: &[usize]) -> Result<bool> {
    class.point_mask(points)?;
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    Ok(shatters_sorted(class, &pts))
}

fn shatters_sorted(class: &SetSystem, points: &[usize]) -> bool {
    let s = points.len();
    if s >= usize::BITS as usize - 1 || class.len() < (1usize << s) {
        return false;
    }
    let mut seen = vec![false; 1 << s];
    let mut distinct = 0usize;
    for c in class.concepts() {
        let t = c.gather(points) as usize;
        if !seen[t] {
            seen[t] = true;
            distinct += 1;
            if distinct == seen.len() {
                return true;
            }
        }
    }
    false
}

/// All shattered subsets, level by level.
///
/// Shattered sets are closed downwards and there are at most `|C|` of them,
/// so growing each level from the previous one stays exhaustive and cheap.
fn shattered_levels(class: &SetSystem) -> Vec<Vec<Vec<usize>>> {
    let m = class.ground_size();
    let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    loop {
        let prev = levels.last().expect("level 0 present");
        let s = prev[0].len();
        if s + 1 >= usize::BITS as usize - 1 || class.len() < (1usize << (s + 1)) {
            break;
        }
        let known: HashSet<&[usize]> = prev.iter().map(Vec::as_slice).collect();
        let mut next = Vec::new();
        for base in prev {
            let start = base.last().map_or(0, |&l| l + 1);
            for p in start..m {
                let mut cand = base.clone();
                cand.push(p);
                let faces_ok = (0..cand.len() - 1).all(|skip| {
                    let face: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    known.contains(face.as_slice())
                });
                if faces_ok && shatters_sorted(class, &cand) {
                    next.push(cand);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

/// The size of the largest shattered set.
pub fn vc_dimension(class: &SetSystem) -> Result<usize> {
    class.require_nonempty()?;
    Ok(shattered_levels(class).len() - 1)
}

/// The lexicographically least shattered set of maximum size.
pub fn largest_shattered_set(class: &SetSystem) -> Result<Vec<usize>> {
    class.require_nonempty()?;
    let levels = shattered_levels(class);
    Ok(levels.last().expect("level 0")[0].clone())
}

/// Every shattered set, sorted by size then lexicographically.
pub fn shattered_sets(class: &SetSystem) -> Result<Vec<Vec<usize>>> {
    class.require_nonempty()?;
    Ok(shattered_levels(class).into_iter().flatten().collect())
}

/// The dual class: points are the concepts of `class` (in canonical order) and
/// each original point `x` contributes the concept `{s : x ∈ s}`.
pub fn dual(class: &SetSystem) -> Result<SetSystem> {
    class.require_nonempty()?;
    let width = class.len();
    let concepts = (0..class.ground_size())
        .map(|x| {
            Bits::from_indices(
                width,
                class
                    .concepts()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.get(x))
                    .map(|(j, _)| j),
            )
        })
        .collect();
    SetSystem::new(width, concepts)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `Σ_{i≤k} C(s, i)`.
pub fn sauer_bound(s: u64, k: u64) -> BigUint {
    (0..=k.min(s)).map(|i| binomial(s, i)).sum()
}

/// `max { s : sauer_bound(s, k)^n ≥ 2^s }`.
///
/// Since `sauer_bound(s, k) ≤ (s+1)^k`, the scan stops at the first `s` where
/// `(s+1)^{kn} < 2^s` and `(s+2)^{kn} ≤ 2·(s+1)^{kn}`: from there on
/// `(s+1)^{kn} / 2^s` is decreasing, so no larger `s` can qualify.
pub fn b_vc(n: u64, k: u64) -> u64 {
    let kn = u32::try_from(k * n).expect("k·n fits in u32");
    let two = BigUint::from(2u32);
    let mut best = 0;
    let mut s = 0u64;
    loop {
        let lhs = sauer_bound(s, k).pow(n as u32);
        let rhs = two.pow(s as u32);
        if lhs >= rhs {
            best = s;
        }
        let poly = BigUint::from(s + 1).pow(kn);
        let poly_next = BigUint::from(s + 2).pow(kn);
        if poly < rhs && poly_next <= &poly * 2u32 {
            return best;
        }
        s += 1;
    }
}
