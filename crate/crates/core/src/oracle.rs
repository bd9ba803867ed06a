//! Brute-force reference computations.
//!
//! These deliberately avoid the search code in the rest of the crate: classes
//! are unpacked into plain `Vec<Vec<bool>>` rows and every subset of the
//! ground set is visited as an integer mask.

use crate::error::{Error, Result};
use crate::setsystem::{Labeling, SetSystem};

/// Largest ground set for exhaustive subset enumeration.
pub const MAX_ORACLE_GROUND: usize = 16;

fn rows(class: &SetSystem) -> Vec<Vec<bool>> {
    class
        .labelings()
        .map(|l| (0..class.ground_size()).map(|p| l.get(p)).collect())
        .collect()
}

fn agree(a: &[bool], b: &[bool], mask: u32) -> bool {
    (0..a.len()).all(|p| mask >> p & 1 == 0 || a[p] == b[p])
}

/// Exact minimum teaching-set size of `c` by visiting all `2^m` subsets.
pub fn oracle_min_td(class: &SetSystem, c: &Labeling) -> Result<usize> {
    let m = class.ground_size();
    Error::cap("oracle ground size", MAX_ORACLE_GROUND, m)?;
    class.require_member(c)?;
    let all = rows(class);
    let me: Vec<bool> = (0..m).map(|p| c.get(p)).collect();
    let mut best = m;
    for mask in 0u32..(1 << m) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        if all.iter().filter(|r| agree(r, &me, mask)).count() == 1 {
            best = size;
        }
    }
    Ok(best)
}

/// Minimum teaching dimension over the whole class.
pub fn oracle_min_td_class(class: &SetSystem) -> Result<usize> {
    class.require_nonempty()?;
    let mut best = usize::MAX;
    for c in class.labelings() {
        best = best.min(oracle_min_td(class, &c)?);
    }
    Ok(best)
}

/// VC dimension by testing every subset mask for shattering.
pub fn oracle_vc(class: &SetSystem) -> Result<usize> {
    let m = class.ground_size();
    Error::cap("oracle ground size", MAX_ORACLE_GROUND, m)?;
    class.require_nonempty()?;
    let all = rows(class);
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let pts: Vec<usize> = (0..m).filter(|&p| mask >> p & 1 == 1).collect();
        if pts.len() <= best {
            continue;
        }
        let mut traces: Vec<Vec<bool>> = all
            .iter()
            .map(|r| pts.iter().map(|&p| r[p]).collect())
            .collect();
        traces.sort();
        traces.dedup();
        if traces.len() == 1 << pts.len() {
            best = pts.len();
        }
    }
    Ok(best)
}

/// Number of distinct traces on `points`.
pub fn oracle_trace_count(class: &SetSystem, points: &[usize]) -> usize {
    let mut traces: Vec<Vec<bool>> = rows(class)
        .iter()
        .map(|r| points.iter().map(|&p| r[p]).collect())
        .collect();
    traces.sort();
    traces.dedup();
    traces.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_system, GeneratorSpec};

    #[test]
    fn oracle_examples() {
        let single = SetSystem::from_bitstrings(&["0101"]).unwrap();
        assert_eq!(oracle_min_td(&single, &single.labeling(0)).unwrap(), 0);
        let cube = generate_system(&GeneratorSpec::FullCube { m: 3 }).unwrap();
        for c in cube.labelings() {
            assert_eq!(oracle_min_td(&cube, &c).unwrap(), 3);
        }
        let iv = generate_system(&GeneratorSpec::Intervals { m: 5 }).unwrap();
        assert_eq!(
            oracle_min_td(&iv, &Labeling::parse("10000").unwrap()).unwrap(),
            2
        );
        assert_eq!(oracle_vc(&iv).unwrap(), 2);
        let big = generate_system(&GeneratorSpec::Thresholds { m: 17 }).unwrap();
        assert!(oracle_min_td(&big, &big.labeling(0)).unwrap_err().is_cap());
    }
}
