//! Slice maps of tensor multipliers, the slice-span dimension scan, the
//! constructive factorization through M(B)⊗M(A) and the almost-periodicity
//! detector built on it.

pub mod almost_periodic;
pub mod dimension;
pub mod factor;
pub mod maps;

pub use almost_periodic::{almost_periodic, AlmostPeriodicVerdict};
pub use dimension::{slice_space_dimension, SliceBasisEntry, SliceSpaceReport};
pub use factor::{factor, Factorization};
pub use maps::{slice, Leg};
