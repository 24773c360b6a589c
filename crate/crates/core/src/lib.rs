//! Discrete quantum groups at desk scale.
//!
//! The algebra of a discrete quantum group is a direct sum of full matrix
//! blocks, possibly over an infinite index set. This crate models such
//! algebras together with their multiplier algebras, the convolution
//! algebra of reduced functionals against the Haar functional, slice maps
//! of tensor multipliers, and a constructive test for whether a multiplier
//! of B⊗A factors through M(B)⊗M(A) — equivalently, whether the span of
//! its right slices is finite-dimensional. All computations on infinite
//! models are window-relative; reports carry their window history.

pub mod algebra;
pub mod dqg;
pub mod error;
pub mod functional;
pub mod matrix;
pub mod scalar;
pub mod slice;

pub use algebra::{
    check_nondegenerate, BlockAlgebra, BlockIndex, BlockRule, Element, GroupModel, IndexModel,
    IntFormula, IntTerm, Multiplier, Side, TableDefault, TensorElement, TensorMultiplier,
    TensorRule,
};
pub use dqg::{
    verify_left_invariance, verify_mhopf_axioms, AxiomReport, DQGDescriptor, InvarianceReport,
    Surjectivity,
};
pub use error::Error;
pub use functional::{
    bimodule_act, convolve, dual_unit, FunctionalSide, HaarData, ReducedFunctional,
    WindowFunctional,
};
pub use matrix::{coordinates_in_span, DenseMatrix, RankPolicy, TolBasis};
pub use scalar::{Scalar, ScalarMode};
pub use slice::{
    almost_periodic, factor, slice, slice_space_dimension, AlmostPeriodicVerdict, Factorization,
    Leg, SliceSpaceReport,
};
