//! Nondegeneracy of the product on finite windows.

use crate::algebra::block::BlockAlgebra;
use crate::algebra::index::BlockIndex;
use crate::matrix::{DenseMatrix, RankPolicy};
use crate::scalar::Scalar;

/// A finite-dimensional algebra presented by structure constants: the
/// product of basis vectors p, q is Σ_r structure[p][q][r]·e_r.
///
/// Built from a window of a block algebra, or synthetically for negative
/// controls (e.g. a one-dimensional algebra with zero product).
pub struct FiniteAlgebraWindow {
    dim: usize,
    structure: Vec<Vec<Vec<Scalar>>>,
}

impl FiniteAlgebraWindow {
    pub fn from_structure(structure: Vec<Vec<Vec<Scalar>>>) -> Self {
        let dim = structure.len();
        assert!(structure
            .iter()
            .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim)));
        FiniteAlgebraWindow { dim, structure }
    }

    /// One-dimensional algebra with zero product; a degenerate control case.
    pub fn zero_product_line() -> Self {
        Self::from_structure(vec![vec![vec![Scalar::zero()]]])
    }

    /// The restriction of a block algebra to a finite window, with matrix
    /// units as basis.
    pub fn from_window(algebra: &BlockAlgebra, window: &[BlockIndex]) -> Self {
        // basis: (block, i, j) in window order
        let mut basis = Vec::new();
        for idx in window {
            let n = algebra.block_dim(idx);
            for i in 0..n {
                for j in 0..n {
                    basis.push((idx.clone(), i, j));
                }
            }
        }
        let dim = basis.len();
        let mut structure = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for (p, (bp, ip, jp)) in basis.iter().enumerate() {
            for (q, (bq, iq, jq)) in basis.iter().enumerate() {
                if bp != bq || jp != iq {
                    continue;
                }
                // e_{ip,jp} · e_{jp,jq} = e_{ip,jq}
                let r = basis
                    .iter()
                    .position(|(b, i, j)| b == bp && i == ip && j == jq)
                    .unwrap();
                structure[p][q][r] = Scalar::one();
            }
        }
        FiniteAlgebraWindow { dim, structure }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True iff aA = 0 ⇒ a = 0 and Aa = 0 ⇒ a = 0 on this window, decided
    /// by the kernel of the stacked multiplication operators.
    pub fn is_nondegenerate(&self, policy: &RankPolicy) -> bool {
        if self.dim == 0 {
            return true;
        }
        // L a = vec(a·e_q for all q); rows (q, r), cols p
        let left = DenseMatrix::from_fn(self.dim * self.dim, self.dim, |row, p| {
            let (q, r) = (row / self.dim, row % self.dim);
            self.structure[p][q][r].clone()
        });
        let right = DenseMatrix::from_fn(self.dim * self.dim, self.dim, |row, p| {
            let (q, r) = (row / self.dim, row % self.dim);
            self.structure[q][p][r].clone()
        });
        left.kernel_basis(policy).is_empty() && right.kernel_basis(policy).is_empty()
    }
}

/// Nondegeneracy of the product on a finite window of a block algebra.
pub fn check_nondegenerate(
    algebra: &BlockAlgebra,
    window: &[BlockIndex],
    policy: &RankPolicy,
) -> bool {
    FiniteAlgebraWindow::from_window(algebra, window).is_nondegenerate(policy)
}
