//! Deterministic generators for concept classes and relations with known
//! VC dimension.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;
use crate::udtfs::BipartiteRelation;
use crate::vc::vc_dimension;

pub const MAX_GROUND: usize = 24;
pub const MAX_CONCEPTS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorSpec {
    FullCube {
        m: usize,
    },
    /// `{{0}, …, {m−1}}`.
    Singletons {
        m: usize,
    },
    /// Initial segments `∅, [0,0], …, [0,m−1]`.
    Thresholds {
        m: usize,
    },
    /// `∅` and every interval `[i,j]`.
    Intervals {
        m: usize,
    },
    /// Every union of at most `t` intervals, `∅` included.
    UnionsOfIntervals {
        m: usize,
        t: usize,
    },
    /// Subsets of the `width × height` grid cut out by closed half-planes;
    /// point `(x, y)` has index `y·width + x`.
    HalfplanesOnGrid {
        width: usize,
        height: usize,
    },
    /// The relation `a ≤ y` on `{0..m−1}²`.
    OrderRelation {
        m: usize,
    },
    /// Uniform random concepts, each kept only if the class stays within
    /// VC dimension `max_vc`.
    RandomFiltered {
        m: usize,
        concepts: usize,
        max_vc: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    System(SetSystem),
    Relation(BipartiteRelation),
}

impl Generated {
    pub fn system(self) -> Option<SetSystem> {
        match self {
            Generated::System(s) => Some(s),
            Generated::Relation(_) => None,
        }
    }

    pub fn relation(self) -> Option<BipartiteRelation> {
        match self {
            Generated::Relation(r) => Some(r),
            Generated::System(_) => None,
        }
    }
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::FullCube { .. } => "full_cube",
            GeneratorSpec::Singletons { .. } => "singletons",
            GeneratorSpec::Thresholds { .. } => "thresholds",
            GeneratorSpec::Intervals { .. } => "intervals",
            GeneratorSpec::UnionsOfIntervals { .. } => "unions_of_t_intervals",
            GeneratorSpec::HalfplanesOnGrid { .. } => "halfplanes_on_grid",
            GeneratorSpec::OrderRelation { .. } => "order_relation",
            GeneratorSpec::RandomFiltered { .. } => "random_filtered",
        }
    }

    pub fn ground_size(&self) -> usize {
        match *self {
            GeneratorSpec::FullCube { m }
            | GeneratorSpec::Singletons { m }
            | GeneratorSpec::Thresholds { m }
            | GeneratorSpec::Intervals { m }
            | GeneratorSpec::UnionsOfIntervals { m, .. }
            | GeneratorSpec::OrderRelation { m }
            | GeneratorSpec::RandomFiltered { m, .. } => m,
            GeneratorSpec::HalfplanesOnGrid { width, height } => width * height,
        }
    }

    /// The VC dimension the family is known to have, where it is fixed.
    pub fn documented_vc(&self) -> Option<usize> {
        match *self {
            GeneratorSpec::FullCube { m } => Some(m),
            GeneratorSpec::Singletons { m } => Some(usize::from(m >= 2)),
            GeneratorSpec::Thresholds { m } => Some(usize::from(m >= 1)),
            GeneratorSpec::Intervals { m } => Some(m.min(2)),
            GeneratorSpec::UnionsOfIntervals { m, t } => Some(m.min(2 * t)),
            _ => None,
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSpec::FullCube { m }
            | GeneratorSpec::Singletons { m }
            | GeneratorSpec::Thresholds { m }
            | GeneratorSpec::Intervals { m }
            | GeneratorSpec::OrderRelation { m } => write!(f, "{}({m})", self.family()),
            GeneratorSpec::UnionsOfIntervals { m, t } => write!(f, "{}({m}, t={t})", self.family()),
            GeneratorSpec::HalfplanesOnGrid { width, height } => {
                write!(f, "{}({width}x{height})", self.family())
            }
            GeneratorSpec::RandomFiltered {
                m,
                concepts,
                max_vc,
                seed,
            } => write!(
                f,
                "{}({m}, concepts={concepts}, max_vc={max_vc}, seed={seed})",
                self.family()
            ),
        }
    }
}

fn finish(m: usize, concepts: Vec<Bits>) -> Result<SetSystem> {
    Error::cap("concept count", MAX_CONCEPTS, concepts.len())?;
    SetSystem::new(m, concepts)
}

fn count_runs(w: u64) -> u32 {
    // A run starts at every set bit whose lower neighbour is clear.
    (w & !(w << 1)).count_ones()
}

fn halfplanes(width: usize, height: usize) -> Vec<Bits> {
    let m = width * height;
    let pts: Vec<(i64, i64)> = (0..m)
        .map(|i| ((i % width) as i64, (i / width) as i64))
        .collect();
    // Directions with coordinates up to twice the grid extent reach every open
    // arc between consecutive critical directions.
    let r = 2 * width.max(height) as i64 + 1;
    let mut out = vec![Bits::zeros(m), Bits::ones(m)];
    for a in -r..=r {
        for b in -r..=r {
            if a == 0 && b == 0 {
                continue;
            }
            let mut order: Vec<(i64, usize)> = pts
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| (a * x + b * y, i))
                .collect();
            order.sort_unstable();
            let mut cut = Bits::zeros(m);
            for w in 0..order.len() {
                cut.set(order[w].1, true);
                if w + 1 == order.len() || order[w + 1].0 != order[w].0 {
                    out.push(cut.clone());
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    let m = spec.ground_size();
    Error::cap("ground size", MAX_GROUND, m)?;
    let sys = |v| finish(m, v).map(Generated::System);
    match *spec {
        GeneratorSpec::FullCube { m } => {
            Error::cap("concept count", MAX_CONCEPTS, 1usize << m)?;
            sys((0..1u64 << m).map(|w| Bits::from_word(m, w)).collect())
        }
        GeneratorSpec::Singletons { m } => {
            sys((0..m).map(|i| Bits::from_indices(m, [i])).collect())
        }
        GeneratorSpec::Thresholds { m } => {
            sys((0..=m).map(|j| Bits::from_indices(m, 0..j)).collect())
        }
        GeneratorSpec::Intervals { m } => {
            let mut v = vec![Bits::zeros(m)];
            for i in 0..m {
                for j in i..m {
                    v.push(Bits::from_indices(m, i..=j));
                }
            }
            sys(v)
        }
        GeneratorSpec::UnionsOfIntervals { m, t } => {
            let mut v = Vec::new();
            for w in 0..1u64 << m {
                if count_runs(w) as usize <= t {
                    v.push(Bits::from_word(m, w));
                    Error::cap("concept count", MAX_CONCEPTS, v.len())?;
                }
            }
            sys(v)
        }
        GeneratorSpec::HalfplanesOnGrid { width, height } => sys(halfplanes(width, height)),
        GeneratorSpec::OrderRelation { m } => Ok(Generated::Relation(BipartiteRelation::from_fn(
            m,
            m,
            |a, y| a <= y,
        ))),
        GeneratorSpec::RandomFiltered {
            m,
            concepts,
            max_vc,
            seed,
        } => {
            Error::cap("concept count", MAX_CONCEPTS, concepts)?;
            if m == 0 {
                return sys(vec![Bits::zeros(0)]);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut kept: Vec<Bits> = Vec::with_capacity(concepts);
            let attempts = concepts.saturating_mul(64).max(64);
            for _ in 0..attempts {
                if kept.len() == concepts {
                    break;
                }
                let w: u64 = rng.gen::<u64>();
                let c = Bits::from_word(m, w);
                if kept.contains(&c) {
                    continue;
                }
                kept.push(c);
                let trial = SetSystem::new(m, kept.clone())?;
                if vc_dimension(&trial)? > max_vc {
                    kept.pop();
                }
            }
            sys(kept)
        }
    }
}

/// Shorthand for the set-system families.
pub fn generate_system(spec: &GeneratorSpec) -> Result<SetSystem> {
    generate(spec)?
        .system()
        .ok_or_else(|| Error::Input(format!("{spec} is a relation, not a set system")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let t = generate_system(&GeneratorSpec::Thresholds { m: 4 }).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(
            t.labelings().map(|l| l.to_string()).collect::<Vec<_>>(),
            ["0000", "1000", "1100", "1110", "1111"]
        );
        assert_eq!(vc_dimension(&t).unwrap(), 1);

        let c = generate_system(&GeneratorSpec::FullCube { m: 3 }).unwrap();
        assert_eq!((c.len(), vc_dimension(&c).unwrap()), (8, 3));

        let iv = generate_system(&GeneratorSpec::Intervals { m: 5 }).unwrap();
        assert_eq!((iv.len(), vc_dimension(&iv).unwrap()), (16, 2));
    }

    #[test]
    fn unions_of_intervals() {
        let u1 = generate_system(&GeneratorSpec::UnionsOfIntervals { m: 5, t: 1 }).unwrap();
        assert_eq!(
            u1,
            generate_system(&GeneratorSpec::Intervals { m: 5 }).unwrap()
        );
        let u2 = generate_system(&GeneratorSpec::UnionsOfIntervals { m: 6, t: 2 }).unwrap();
        assert_eq!(vc_dimension(&u2).unwrap(), 4);
    }

    #[test]
    fn halfplanes_have_vc_three() {
        let h = generate_system(&GeneratorSpec::HalfplanesOnGrid {
            width: 3,
            height: 3,
        })
        .unwrap();
        assert_eq!(vc_dimension(&h).unwrap(), 3);
        assert!(h.contains(&crate::Labeling::parse("111000000").unwrap()));
    }

    #[test]
    fn random_is_deterministic_and_filtered() {
        let spec = GeneratorSpec::RandomFiltered {
            m: 8,
            concepts: 20,
            max_vc: 2,
            seed: 7,
        };
        let a = generate_system(&spec).unwrap();
        let b = generate_system(&spec).unwrap();
        assert_eq!(a, b);
        assert!(vc_dimension(&a).unwrap() <= 2);
        assert_eq!(a.len(), 20);
    }

    #[test]
    fn caps_are_errors() {
        assert!(generate(&GeneratorSpec::FullCube { m: 13 })
            .unwrap_err()
            .is_cap());
        assert!(generate(&GeneratorSpec::Thresholds { m: 25 })
            .unwrap_err()
            .is_cap());
        assert!(generate(&GeneratorSpec::UnionsOfIntervals { m: 20, t: 5 })
            .unwrap_err()
            .is_cap());
    }

    #[test]
    fn order_relation_is_a_relation() {
        let r = generate(&GeneratorSpec::OrderRelation { m: 3 }).unwrap();
        let r = r.relation().unwrap();
        assert!(r.get(0, 2) && !r.get(2, 0));
    }
}
