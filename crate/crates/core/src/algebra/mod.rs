//! Direct-sum-of-matrix-blocks algebras, elements, multipliers and tensor
//! products.

pub mod block;
pub mod element;
pub mod group;
pub mod index;
pub mod multiplier;
pub mod nondegenerate;
pub mod tensor;

pub use block::{BlockAlgebra, IndexModel};
pub use element::Element;
pub use group::GroupModel;
pub use index::BlockIndex;
pub use multiplier::{BlockRule, IntFormula, IntTerm, Multiplier, Side, TableDefault};
pub use nondegenerate::{check_nondegenerate, FiniteAlgebraWindow};
pub use tensor::{TensorElement, TensorMultiplier, TensorRule};
