//! Reduced functionals, the Haar functional, the convolution algebra Â
//! and the modular automorphism.

pub mod convolution;
pub mod haar;
pub mod reduced;

pub use convolution::{convolve, dual_unit};
pub use haar::HaarData;
pub use reduced::{bimodule_act, FunctionalSide, ReducedFunctional, WindowFunctional};
