//! Padé approximants of truncated power series about arbitrary centers.
//!
//! The crate is generic over a [`Scalar`] field with a floating realization
//! ([`Float`]) and an exact Gaussian-rational one ([`Exact`]). On top of the
//! series and polynomial algebra it provides the Hankel normality test, Padé
//! construction, the membership law for rational functions, sample-based
//! compact sets, the polynomial and rational perturbations that make a
//! function its own `[p/q]` approximant at every center, and an experiment
//! layer for tables and convergence runs.

pub mod approximant;
pub mod density;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod series;

pub use approximant::{
    derivative_at, evaluate, hankel_determinant, hankel_determinant_with_tol, jacobi_evaluate,
    order_defect, pade_from_series, pade_from_series_with_tol, NormalityVerdict, PadeApproximant,
};
pub use density::{
    perturb_polynomial, perturb_polynomial_smooth, perturb_rational, pick_indices, IndexConstraints,
    IndexFamily, PerturbationKind, PerturbationResult,
};
pub use error::{PadeError, Result};
pub use experiment::{
    construct_report, converge, membership, table, ConstructReport, ExperimentPlan, ExperimentRow,
    MembershipReport, Oracle, OrderCheck, SupError, TableCell,
};
pub use geometry::{build, exhaustion, sup_diff, Descriptor, Domain, Evaluable, ExpFunction, SampleSet, SupNorm};
pub use poly::Polynomial;
pub use rational::{reduce, taylor_at, theorem21_check, theorem21_predict, Prediction, RationalFn};
pub use scalar::{Exact, Float, Scalar, ScalarRepr};
pub use series::{exp_series, geometric_series, partial_sum, series_of_polynomial, PowerSeries};
