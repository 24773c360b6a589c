//! Discrete quantum group models: fusion data, comultiplication and the
//! window-relative structural verifiers.

pub mod clebsch;
pub mod descriptor;
pub mod verify;

pub use clebsch::{cg_isometry, fusion_targets};
pub use descriptor::DQGDescriptor;
pub use verify::{
    coassociativity_deviation, verify_left_invariance, verify_mhopf_axioms, AxiomReport,
    InvarianceReport, MapReport, Surjectivity,
};
