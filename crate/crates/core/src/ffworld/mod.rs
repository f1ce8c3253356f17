//! Finite levels `F_{p^k}` of `F̄ₚ` with multiplicative endomorphisms given by
//! exponent families.

mod audit;
mod endo;
mod field;
mod kernels;
mod mult;

use num_bigint::BigInt;
use thiserror::Error;

use crate::intlinalg::LinalgError;

pub use audit::{genericity_audit, AuditConfig, CurveReport, PairCoverage, Scorecard, Tally};
pub use endo::{endo_eval, kernel_order, level_modulus, poly_exponent, random_endo, ExponentFamily, KernelDesc};
pub use field::{FieldElem, FiniteFieldCtx, DEFAULT_DLOG_LIMIT};
pub use kernels::{
    generic_kernel_probe, kernel_elements, kernel_sum_coverage, line_points, torsion_witness, Coverage,
    TorsionWitness,
};
pub use mult::{
    cl_theta_degree, freeness_at_level, generated_subgroup, pi_m_closure, pi_stabilization, subgroup_characters,
    translated_lattice, Freeness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    BadDegree,
    #[error("{p}^{k} - 1 exceeds the discrete-log limit {limit}")]
    LimitExceeded { p: u64, k: u32, limit: u64 },
    #[error("level {0} is missing from the exponent family")]
    LevelMissing(u32),
    #[error("levels are not divisor-closed: {0} is missing")]
    NotDivisorClosed(u32),
    #[error("residue {residue} out of range at level {level}")]
    ResidueOutOfRange { level: u32, residue: BigInt },
    #[error("residues at levels {j} and {k} are incompatible")]
    Incompatible { j: u32, k: u32 },
    #[error("exponent family is over p = {endo} but the field has p = {field}")]
    PrimeMismatch { endo: u64, field: u64 },
    #[error("the zero polynomial is not allowed")]
    ZeroPolynomial,
    #[error("{n} does not divide the group order {order}")]
    NotDivisor { n: u64, order: u64 },
    #[error("empty point set")]
    EmptySet,
    #[error("point with a zero coordinate")]
    ZeroCoordinate,
    #[error("the identity is not in the set")]
    IdentityMissing,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("bad field element {0:?}")]
    BadElement(String),
    #[error("malformed configuration: {0}")]
    MalformedConfig(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
