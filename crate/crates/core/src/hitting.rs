//! Exact minimum hitting sets with lexicographic tie-breaking.
//!
//! Teaching sets, (p,q) transversals and hype covers all reduce to this:
//! find the smallest point set meeting every member of a family, preferring
//! the lexicographically least one among those of minimum size.

use crate::bits::Bits;

struct Search<'a> {
    universe: usize,
    sets: &'a [Bits],
    /// `hits[p]` marks which family members contain point `p`.
    hits: Vec<Bits>,
    last: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&self, start: usize, left: usize, unhit: &Bits, chosen: &mut Vec<usize>) -> bool {
        let Some(first) = unhit.iter_ones().next() else {
            return true;
        };
        if left == 0 {
            return false;
        }
        let limit = self.last[first];
        for p in start..self.universe.min(limit + 1) {
            let hits_first = self.sets[first].get(p);
            if !hits_first && left == 1 {
                continue;
            }
            let rest = unhit.and_not(&self.hits[p]);
            chosen.push(p);
            if self.dfs(p + 1, left - 1, &rest, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// The lexicographically least hitting set of minimum size, if one of size
/// at most `max_size` exists.
///
/// An empty member can never be hit, so its presence yields `None`.
pub fn min_hitting_set(universe: usize, sets: &[Bits], max_size: usize) -> Option<Vec<usize>> {
    if sets.iter().any(Bits::is_zero) {
        return None;
    }
    let hits = (0..universe)
        .map(|p| {
            Bits::from_indices(
                sets.len(),
                sets.iter()
                    .enumerate()
                    .filter(|(_, s)| s.get(p))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    let last = sets
        .iter()
        .map(|s| s.iter_ones().last().expect("non-empty"))
        .collect();
    let search = Search {
        universe,
        sets,
        hits,
        last,
    };
    let all = Bits::ones(sets.len());
    let mut chosen = Vec::new();
    for size in 0..=max_size.min(universe) {
        if search.dfs(0, size, &all, &mut chosen) {
            return Some(chosen);
        }
        chosen.clear();
    }
    None
}
