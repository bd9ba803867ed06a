//! Finite first-order semantics over a bipartite relation `R ⊆ X × Y`, read
//! as a formula `φ(x, y)`, and exact synthesis of honest definitions.
//!
//! The definition schema is
//!
//! ```text
//! ψ(a; d, d', d'') ⟺ Maj^α_{i<n} ∀y ∈ Y ( ⋀_{j<k} (R(d_ij, y) ↔ d'_ij = d''_ij) → R(a, y) )
//! ```
//!
//! Each block `i` encodes the signed teaching set of one component of a
//! rounded-average decomposition: a positive literal on point `d` is written
//! with `d'' = d'` and a negative one with `d'' ≠ d'`, using two fixed anchor
//! points of `A`.
//!
//! Why it is exact on finite `A`: if the literals of block `i` form a teaching
//! set of the type `p_i` among the realised types over `A`, the columns `y`
//! satisfying the guard are exactly those whose type is `p_i`. There is at
//! least one such column, so the universal clause holds at `a` iff
//! `p_i(a) = 1`. The majority over blocks is then the α-rounded average of the
//! `p_i`, which by construction is the target type.

use std::fmt;

use rayon::prelude::*;

use crate::average::{decompose, maj_alpha, Alpha, DecomposeOutcome, Decomposition};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::hype::{hype_decompose, Hype};
use crate::setsystem::{Labeling, SetSystem};

/// A finite 0/1 relation, rows indexed by `X` and columns by `Y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteRelation {
    x_size: usize,
    y_size: usize,
    rows: Vec<Bits>,
}

impl BipartiteRelation {
    pub fn new(x_size: usize, y_size: usize, rows: Vec<Bits>) -> Result<Self> {
        if rows.len() != x_size {
            return Err(Error::Input(format!(
                "relation has {} rows, expected {x_size}",
                rows.len()
            )));
        }
        if rows.iter().any(|r| !r.fits_width(y_size)) {
            return Err(Error::Input("relation row wider than |Y|".into()));
        }
        Ok(BipartiteRelation {
            x_size,
            y_size,
            rows,
        })
    }

    pub fn from_fn(x_size: usize, y_size: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let rows = (0..x_size)
            .map(|a| Bits::from_indices(y_size, (0..y_size).filter(|&y| f(a, y))))
            .collect();
        BipartiteRelation {
            x_size,
            y_size,
            rows,
        }
    }

    /// Builds a relation whose columns are the given labelings of `X`.
    pub fn from_columns(columns: &[Labeling]) -> Result<Self> {
        let x_size = columns.first().map_or(0, Labeling::ground_size);
        if columns.iter().any(|c| c.ground_size() != x_size) {
            return Err(Error::Input("columns of different heights".into()));
        }
        Ok(BipartiteRelation::from_fn(x_size, columns.len(), |a, y| {
            columns[y].get(a)
        }))
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    #[inline]
    pub fn get(&self, a: usize, y: usize) -> bool {
        self.rows[a].get(y)
    }

    pub fn row(&self, a: usize) -> &Bits {
        &self.rows[a]
    }

    fn check_params_set(&self, points: &[usize]) -> Result<()> {
        if points.is_empty() {
            return Err(Error::Input("parameter set A is empty".into()));
        }
        if let Some(&p) = points.iter().find(|&&p| p >= self.x_size) {
            return Err(Error::PointOutOfRange {
                point: p,
                ground_size: self.x_size,
            });
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("A must be strictly increasing".into()));
        }
        Ok(())
    }

    /// The type of column `y` over `A`, as a labeling of `0..|A|`.
    pub fn column_type(&self, points: &[usize], y: usize) -> Labeling {
        Labeling::from_bits_unchecked(
            points.len(),
            Bits::from_indices(
                points.len(),
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| self.get(a, y))
                    .map(|(j, _)| j),
            ),
        )
    }
}

impl fmt::Debug for BipartiteRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteRelation")
            .field("x_size", &self.x_size)
            .field("y_size", &self.y_size)
            .field(
                "rows",
                &self
                    .rows
                    .iter()
                    .map(|r| r.to_bitstring(self.y_size))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// The realised types over `A`: one concept per column, point `j` of the
/// result standing for `A[j]`.
pub fn phi_types(rel: &BipartiteRelation, points: &[usize]) -> Result<SetSystem> {
    rel.check_params_set(points)?;
    let concepts = (0..rel.y_size)
        .map(|y| rel.column_type(points, y).bits().clone())
        .collect();
    SetSystem::new(points.len(), concepts)
}

/// Parameters `(d, d', d'')` of the definition schema; all entries are
/// elements of `X` lying in the declared parameter set `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HonestParams {
    pub n: usize,
    pub k: usize,
    pub alpha: Alpha,
    pub d: Vec<Vec<usize>>,
    pub d_prime: Vec<Vec<usize>>,
    pub d_dblprime: Vec<Vec<usize>>,
    pub anchors: (usize, usize),
}

impl HonestParams {
    fn check(&self, points: &[usize]) -> Result<()> {
        let shape_ok =
            |m: &Vec<Vec<usize>>| m.len() == self.n && m.iter().all(|r| r.len() == self.k);
        if self.n == 0 {
            return Err(Error::Input("parameters with no blocks".into()));
        }
        if !(shape_ok(&self.d) && shape_ok(&self.d_prime) && shape_ok(&self.d_dblprime)) {
            return Err(Error::Input(format!(
                "parameter matrices must be {}×{}",
                self.n, self.k
            )));
        }
        let in_a = |p: &usize| points.binary_search(p).is_ok();
        let all = self
            .d
            .iter()
            .chain(&self.d_prime)
            .chain(&self.d_dblprime)
            .flatten();
        if let Some(p) = all.clone().find(|p| !in_a(p)) {
            return Err(Error::Input(format!("parameter {p} is not in A")));
        }
        Ok(())
    }

    /// The signed literals `(point, sign)` of block `i`.
    pub fn literals(&self, i: usize) -> Vec<(usize, bool)> {
        (0..self.k)
            .map(|j| (self.d[i][j], self.d_prime[i][j] == self.d_dblprime[i][j]))
            .collect()
    }
}

fn block_accepts(rel: &BipartiteRelation, params: &HonestParams, i: usize, a: usize) -> bool {
    (0..rel.y_size).all(|y| {
        let guard = (0..params.k).all(|j| {
            rel.get(params.d[i][j], y) == (params.d_prime[i][j] == params.d_dblprime[i][j])
        });
        !guard || rel.get(a, y)
    })
}

/// Evaluates the definition schema at `a ∈ A`.
pub fn eval_psi(
    rel: &BipartiteRelation,
    points: &[usize],
    params: &HonestParams,
    a: usize,
) -> Result<bool> {
    rel.check_params_set(points)?;
    params.check(points)?;
    if points.binary_search(&a).is_err() {
        return Err(Error::Input(format!("point {a} is not in A")));
    }
    let votes: Vec<bool> = (0..params.n)
        .map(|i| block_accepts(rel, params, i, a))
        .collect();
    Ok(maj_alpha(&votes, params.alpha)? == Some(true))
}

/// `{a ∈ A : ψ(a; params)}`.
pub fn psi_set(
    rel: &BipartiteRelation,
    points: &[usize],
    params: &HonestParams,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &a in points {
        if eval_psi(rel, points, params, a)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// `{a ∈ A : R(a, b)}`.
pub fn phi_set(rel: &BipartiteRelation, points: &[usize], b: usize) -> Vec<usize> {
    points.iter().copied().filter(|&a| rel.get(a, b)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HonestOutcome {
    Defined(HonestParams),
    Exhausted { n_max: usize, k: usize },
}

impl HonestOutcome {
    pub fn params(&self) -> Option<&HonestParams> {
        match self {
            HonestOutcome::Defined(p) => Some(p),
            HonestOutcome::Exhausted { .. } => None,
        }
    }
}

fn anchors(points: &[usize]) -> Result<(usize, usize)> {
    match points {
        [c0, c1, ..] => Ok((*c0, *c1)),
        _ => Err(Error::NeedsTwoAnchors(points.len())),
    }
}

/// Lays out a decomposition over `phi_types(rel, A)` as schema parameters.
fn params_from(points: &[usize], d: &Decomposition) -> Result<HonestParams> {
    let (c0, c1) = anchors(points)?;
    let k = d
        .components
        .iter()
        .map(|c| c.certificate.size())
        .max()
        .unwrap_or(0);
    let mut rows = (Vec::new(), Vec::new(), Vec::new());
    for comp in &d.components {
        let mut lits = comp.certificate.literals();
        if lits.is_empty() && k > 0 {
            return Err(Error::Internal(
                "empty witness next to a non-empty one".into(),
            ));
        }
        // Repeated literals are idempotent in the conjunction.
        while lits.len() < k {
            lits.push(lits[0]);
        }
        rows.0.push(lits.iter().map(|&(p, _)| points[p]).collect());
        rows.1.push(vec![c0; k]);
        rows.2
            .push(lits.iter().map(|&(_, s)| if s { c0 } else { c1 }).collect());
    }
    Ok(HonestParams {
        n: d.n(),
        k,
        alpha: d.alpha,
        d: rows.0,
        d_prime: rows.1,
        d_dblprime: rows.2,
        anchors: (c0, c1),
    })
}

fn check_exact(
    rel: &BipartiteRelation,
    points: &[usize],
    params: &HonestParams,
    expected: &[usize],
) -> Result<()> {
    let got = psi_set(rel, points, params)?;
    if got != expected {
        return Err(Error::Internal(format!(
            "definition accepts {got:?}, expected {expected:?}"
        )));
    }
    Ok(())
}

/// Parameters with `ψ(A; params) = φ(A, b)` exactly, from a decomposition of
/// the type of `b` into at most `n_max` types of teaching dimension `≤ k`.
pub fn honest_define(
    rel: &BipartiteRelation,
    points: &[usize],
    b: usize,
    alpha: Alpha,
    n_max: usize,
    k: usize,
) -> Result<HonestOutcome> {
    rel.check_params_set(points)?;
    anchors(points)?;
    if b >= rel.y_size {
        return Err(Error::Input(format!("column {b} out of range")));
    }
    let types = phi_types(rel, points)?;
    let target = rel.column_type(points, b);
    match decompose(&types, &target, alpha, n_max, k)? {
        DecomposeOutcome::Exhausted { n_max, k } => Ok(HonestOutcome::Exhausted { n_max, k }),
        DecomposeOutcome::Found(d) => {
            let params = params_from(points, &d)?;
            check_exact(rel, points, &params, &phi_set(rel, points, b))?;
            Ok(HonestOutcome::Defined(params))
        }
    }
}

/// Honest definition of a hype over the realised types: `ψ(A; params)` is
/// exactly the positive set of `gamma` (a labeling of `0..|A|`).
pub fn hype_honest_define(
    rel: &BipartiteRelation,
    points: &[usize],
    gamma: &Labeling,
    alpha: Alpha,
    n_max: usize,
    k: usize,
) -> Result<HonestOutcome> {
    rel.check_params_set(points)?;
    anchors(points)?;
    let types = phi_types(rel, points)?;
    let hype = Hype::new(&types, gamma.clone(), k)?;
    match hype_decompose(&types, &hype, alpha, n_max)? {
        DecomposeOutcome::Exhausted { n_max, k } => Ok(HonestOutcome::Exhausted { n_max, k }),
        DecomposeOutcome::Found(d) => {
            let params = params_from(points, &d)?;
            let expected: Vec<usize> = gamma.positives().into_iter().map(|j| points[j]).collect();
            check_exact(rel, points, &params, &expected)?;
            Ok(HonestOutcome::Defined(params))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdtfsEntry {
    pub b: usize,
    pub outcome: HonestOutcome,
    /// `ψ(A; params) = φ(A, b)`, re-evaluated; false for exhausted entries.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdtfsReport {
    pub points: Vec<usize>,
    pub alpha: Alpha,
    pub n_max: usize,
    pub k: usize,
    pub entries: Vec<UdtfsEntry>,
}

impl UdtfsReport {
    pub fn successes(&self) -> usize {
        self.entries.iter().filter(|e| e.exact).count()
    }

    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn all_exact(&self) -> bool {
        self.successes() == self.total()
    }

    pub fn max_k(&self) -> Option<usize> {
        self.entries
            .iter()
            .filter_map(|e| e.outcome.params().map(|p| p.k))
            .max()
    }
}

/// Runs [`honest_define`] for every column and re-checks each result.
pub fn udtfs_report(
    rel: &BipartiteRelation,
    points: &[usize],
    alpha: Alpha,
    n_max: usize,
    k: usize,
) -> Result<UdtfsReport> {
    rel.check_params_set(points)?;
    anchors(points)?;
    let entries = (0..rel.y_size)
        .into_par_iter()
        .map(|b| {
            let outcome = honest_define(rel, points, b, alpha, n_max, k)?;
            let exact = match outcome.params() {
                Some(p) => psi_set(rel, points, p)? == phi_set(rel, points, b),
                None => false,
            };
            Ok(UdtfsEntry { b, outcome, exact })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UdtfsReport {
        points: points.to_vec(),
        alpha,
        n_max,
        k,
        entries,
    })
}
