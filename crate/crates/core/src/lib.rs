//! Operator-valued Fourier analysis on finite abelian groups and numerical
//! verification of Clarkson-McCarthy type Schatten-norm inequalities.
//!
//! The library works at desk scale: groups are products of cyclic factors
//! (or a uniformly discretized circle), operators are dense complex matrices,
//! and the Bochner integral over the group is the exact Haar-weighted sum.
//! On top of that sit checkers for the Parseval identity, the p-norm
//! inequality family relating a field `theta -> A_theta` to its Fourier
//! coefficients `B_k`, the classical corollaries in their published
//! constants, and a seeded randomized explorer probing sharpness.

pub mod explorer;
pub mod fourier;
pub mod groups;
pub mod inequalities;
pub mod io;
pub mod operators;
pub mod report;
pub mod sample;
pub mod tol;

pub use groups::{
    circle_discretization, littlewood_matrix, parse_group, Character, CircleDiscretization,
    GroupElement, GroupError, GroupSpec, HaarWeight, ParsedGroup, DEFAULT_ORDER_CAP,
};
pub use explorer::{ExplorerError, SearchConfig, SearchResult, Target, WitnessStore};
pub use fourier::{FourierCoefficients, FourierError, OperatorField, ParsevalResidual};
pub use inequalities::{AlphaWeights, Corollary, IneqError, WitnessKind};
pub use operators::{CMatrix, NormKind, OperatorError, ScalarFunction, SingularSpectrum};
pub use report::{Direction, InequalityReport, ReportParams};
