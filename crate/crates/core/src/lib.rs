//! Finite combinatorics of compressible types.
//!
//! Set systems over a finite ground set, their VC dimension and dual, teaching
//! sets with the `kc(d)` compressibility guarantee, majority-vote (rounded
//! average) decompositions, k-hypes, (p,q) transversals, and exact honest
//! definitions over finite bipartite relations. Every search is exhaustive
//! and every result carries a certificate that can be re-checked by a full
//! scan.

pub mod average;
pub mod bits;
pub mod compression;
pub mod error;
pub mod generators;
pub mod hitting;
pub mod hype;
pub mod io;
pub mod oracle;
pub mod report;
pub mod setsystem;
pub mod udtfs;
pub mod vc;

pub use average::{
    decompose, maj_alpha, min_transversal, pq_property, rounded_average, transversal_report,
    verify_decomposition, Alpha, Component, DecomposeOutcome, Decomposition, Fault,
    TransversalReport,
};

pub use bits::Bits;
pub use compression::{
    extend_compressible, find_kc_compressible, implies_within, is_k_compressible, is_k_isolated,
    kc, partial_teaching_dimension, rtd_sequence, shattering_hard_instance, teaching_dimension,
    KcParameters, RtdStep, TeachingCertificate,
};
pub use error::{Error, Result};
pub use generators::{generate, generate_system, Generated, GeneratorSpec};
pub use hype::{hype_cover, hype_decompose, hype_family, is_k_hype, Hype};
pub use setsystem::{intersection_system, Labeling, PartialLabeling, Restriction, SetSystem};
pub use udtfs::{
    eval_psi, honest_define, hype_honest_define, phi_types, udtfs_report, BipartiteRelation,
    HonestOutcome, HonestParams, UdtfsReport,
};
pub use vc::{b_vc, dual, largest_shattered_set, sauer_bound, shatters, vc_dimension};
