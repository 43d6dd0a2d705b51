//! The series Ω and Ω_q, their specializations and their images in the
//! classical quotients of the free pre-Lie algebra.

mod forks;
mod identities;
mod limits;
mod morphisms;
mod recursion;

use num_rational::BigRational;
use thiserror::Error;

use crate::arith::{ArithError, RationalFunction};
use crate::tree::TreeSeries;

pub use forks::omega_q_via_forks;
pub use identities::{
    class_eq3_residual, exp_minus_one_action, forest_action, graft_injection_rank, infinity_action_iterated,
    infinity_action_nodes, quant_eq_residual,
};
pub use limits::{
    denominator_check, omega_infinity, omega_infinity_from, specialize, DenominatorReport, DenominatorRow,
    InfinityMode, Point,
};
pub use morphisms::{carlitz_oracle, extract_carlitz, extract_qlog, qlog_coefficient, vector_field_image};
pub use recursion::{omega_classical, omega_pair, omega_q, OmegaParts};

/// Ω with rational coefficients.
pub type OmegaClassical = TreeSeries<BigRational>;
/// Ω_q with coefficients in Q(q).
pub type OmegaQ = TreeSeries<RationalFunction>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("coefficient of {term}: {source}")]
    Coefficient { term: String, source: ArithError },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
