//! Checkers for the coefficient-norm inequality family: the convex-function
//! and `p`-norm comparisons between a field and its Fourier coefficients,
//! their classical corollaries in published (un-normalized) constants, and
//! constructors for the known equality cases.

mod checks;
mod corollaries;
mod witness;

pub use checks::{
    check_alpha, check_pp, check_pq, check_qp, check_uin_convex, AlphaWeights,
};
pub use corollaries::{check_corollary, Corollary};
pub use witness::{equality_witness, WitnessKind};

use crate::fourier::FourierError;
use crate::groups::GroupError;
use crate::operators::OperatorError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IneqError {
    #[error("exponent p = {p} is outside {range} for the {check} check")]
    ExponentOutOfRange {
        check: &'static str,
        p: f64,
        range: &'static str,
    },
    #[error(
        "p = 1 is excluded: the conjugate exponent q = p/(p-1) is unbounded \
         at the endpoint, so the coefficient-sum side is undefined"
    )]
    ConjugateUndefined,
    #[error("alpha weights must be positive and sum to exactly 1, got {got}")]
    AlphaSum { got: String },
    #[error("alpha weight count {got} does not match the dual-group order {expected}")]
    AlphaLength { got: usize, expected: u64 },
    #[error("unknown corollary {0:?}")]
    UnknownCorollary(String),
    #[error("corollary {name} needs {expected}, got a tuple of length {got}")]
    TupleLength {
        name: &'static str,
        expected: &'static str,
        got: usize,
    },
    #[error("tuple matrices must be square and share dimensions")]
    TupleDims,
    #[error("unknown equality witness {0:?}")]
    UnknownWitness(String),
    #[error(
        "corollary {name} disagrees with its normalized counterpart on the {side}: \
         corollary value {got:.12e}, scaled theorem value {expected:.12e}"
    )]
    CrossCheck {
        name: &'static str,
        side: &'static str,
        got: f64,
        expected: f64,
    },
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
