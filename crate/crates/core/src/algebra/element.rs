//! Finitely supported elements of a block algebra.

use std::collections::BTreeMap;

use crate::algebra::block::BlockAlgebra;
use crate::algebra::index::BlockIndex;
use crate::error::Error;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// An element a ∈ A = ⊕_α M_{n_α}: a finite map from block indices to
/// matrices of the block's size. Zero blocks are pruned on construction.
#[derive(Clone, PartialEq, Debug)]
pub struct Element {
    algebra: BlockAlgebra,
    blocks: BTreeMap<BlockIndex, DenseMatrix>,
}

impl Element {
    pub fn zero(algebra: &BlockAlgebra) -> Self {
        Element {
            algebra: algebra.clone(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn from_blocks(
        algebra: &BlockAlgebra,
        blocks: impl IntoIterator<Item = (BlockIndex, DenseMatrix)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (idx, m) in blocks {
            let n = algebra.block_dim(&idx);
            assert_eq!(
                (m.rows(), m.cols()),
                (n, n),
                "block {idx:?} must be {n}x{n}"
            );
            if !m.is_zero() {
                map.insert(idx, m);
            }
        }
        Element {
            algebra: algebra.clone(),
            blocks: map,
        }
    }

    /// Point mass: the scalar 1 on a 1×1 block (δ_g for group duals).
    pub fn delta(algebra: &BlockAlgebra, idx: BlockIndex) -> Self {
        let n = algebra.block_dim(&idx);
        Self::from_blocks(algebra, [(idx, DenseMatrix::scalar_matrix(n, &Scalar::one()))])
    }

    /// Matrix unit e^α_{ij}.
    pub fn matrix_unit(algebra: &BlockAlgebra, idx: BlockIndex, i: usize, j: usize) -> Self {
        let n = algebra.block_dim(&idx);
        Self::from_blocks(algebra, [(idx, DenseMatrix::matrix_unit(n, i, j))])
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn support(&self) -> impl Iterator<Item = &BlockIndex> {
        self.blocks.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, idx: &BlockIndex) -> Option<&DenseMatrix> {
        self.blocks.get(idx)
    }

    /// The block at `idx`, zero-filled if absent.
    pub fn block_or_zero(&self, idx: &BlockIndex) -> DenseMatrix {
        self.blocks
            .get(idx)
            .cloned()
            .unwrap_or_else(|| DenseMatrix::zeros(self.algebra.block_dim(idx), self.algebra.block_dim(idx)))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&BlockIndex, &DenseMatrix)> {
        self.blocks.iter()
    }

    pub fn add(&self, other: &Element) -> Result<Element, Error> {
        self.check_algebra(other)?;
        let mut map = self.blocks.clone();
        for (idx, m) in &other.blocks {
            let sum = match map.get(idx) {
                Some(cur) => cur.add(m),
                None => m.clone(),
            };
            if sum.is_zero() {
                map.remove(idx);
            } else {
                map.insert(idx.clone(), sum);
            }
        }
        Ok(Element {
            algebra: self.algebra.clone(),
            blocks: map,
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, Error> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero(&self.algebra);
        }
        Element {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|(i, m)| (i.clone(), m.scale(s)))
                .collect(),
        }
    }

    /// Block-wise matrix product on the intersection of supports.
    pub fn multiply(&self, other: &Element) -> Result<Element, Error> {
        self.check_algebra(other)?;
        let mut map = BTreeMap::new();
        for (idx, m) in &self.blocks {
            if let Some(n) = other.blocks.get(idx) {
                let p = m.matmul(n);
                if !p.is_zero() {
                    map.insert(idx.clone(), p);
                }
            }
        }
        Ok(Element {
            algebra: self.algebra.clone(),
            blocks: map,
        })
    }

    /// Sum of identity matrices over the support: the unit of the ideal
    /// generated by this element; a·e = a = e·a.
    pub fn local_unit(&self) -> Element {
        Element {
            algebra: self.algebra.clone(),
            blocks: self
                .blocks
                .keys()
                .map(|idx| {
                    (
                        idx.clone(),
                        DenseMatrix::identity(self.algebra.block_dim(idx)),
                    )
                })
                .collect(),
        }
    }

    /// Largest entry deviation from `other`, zero-filling missing blocks.
    pub fn max_abs_diff(&self, other: &Element) -> f64 {
        let mut worst = 0.0_f64;
        for idx in self.blocks.keys().chain(other.blocks.keys()) {
            let d = self
                .block_or_zero(idx)
                .max_abs_diff(&other.block_or_zero(idx));
            worst = worst.max(d);
        }
        worst
    }

    pub(crate) fn check_algebra(&self, other: &Element) -> Result<(), Error> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}
