//! Lattices `Λ(C, t) = Zⁿ + (1/t)⟨C_d⟩` built from binary linear codes, and
//! exact counts of their minimal vectors under `l_p` and generalized
//! superball gauges.
//!
//! - [`gf2codes`]: binary codes, minimum-weight codewords, zero-padding embeddings.
//! - [`bodies`]: block gauges, body descriptions and their Minkowski functionals.
//! - [`lattices`]: the lattice, its coset group `Λ/Zⁿ`, exact minimal-vector counts
//!   and a brute-force oracle.
//! - [`asymptotics`]: entropy exponents and growth-rate constants.
//! - [`pipelines`]: end-to-end lower-bound verification drivers and reports.

pub mod asymptotics;
pub mod bodies;
pub mod error;
pub mod gf2codes;
pub mod lattices;
pub mod pipelines;
pub mod report;

pub use bodies::{parse_body_spec, Block, BlockGauge, BodySpec, Monotonicity};
pub use error::{Error, Result};
pub use gf2codes::{named_code, BinaryCode, NamedCode};
pub use lattices::{
    brute_force_kissing, brute_force_short_vectors, choose_t_lp, kissing_count, kissing_count_with, CosetSubgroup,
    KissingReport, LatticeD, Method,
};
pub use pipelines::{
    plan_theorem4, verify_theorem3, verify_theorem4, Check, PivotPolicy, Theorem4Plan, VerificationReport,
};

/// Relative tolerance under which two gauge values count as equal.
pub const TIE_TOL: f64 = 1e-9;

/// `|a − b| <= TIE_TOL · max(1, a, b)` for finite values.
#[inline]
pub fn ties_with(a: f64, b: f64) -> bool {
    a.is_finite() && b.is_finite() && (a - b).abs() <= TIE_TOL * a.abs().max(b.abs()).max(1.0)
}
