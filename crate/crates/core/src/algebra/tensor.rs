//! Tensor products: finitely supported tensors of B⊗A and multipliers of
//! B⊗A as lazy block-pair maps.
//!
//! On the block pair (β, α) the tensor algebra is M_{n_β}⊗M_{n_α},
//! identified with M_{n_β·n_α} via the Kronecker product (left factor is
//! the coarse index).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::block::BlockAlgebra;
use crate::algebra::element::Element;
use crate::algebra::index::BlockIndex;
use crate::algebra::multiplier::{Multiplier, Side};
use crate::error::Error;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// A finite sum of elementary tensors b⊗a, stored block-pair-wise.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorElement {
    left: BlockAlgebra,
    right: BlockAlgebra,
    blocks: BTreeMap<(BlockIndex, BlockIndex), DenseMatrix>,
}

impl TensorElement {
    pub fn zero(left: &BlockAlgebra, right: &BlockAlgebra) -> Self {
        TensorElement {
            left: left.clone(),
            right: right.clone(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn from_blocks(
        left: &BlockAlgebra,
        right: &BlockAlgebra,
        blocks: impl IntoIterator<Item = ((BlockIndex, BlockIndex), DenseMatrix)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for ((b, a), m) in blocks {
            let dim = left.block_dim(&b) * right.block_dim(&a);
            assert_eq!((m.rows(), m.cols()), (dim, dim), "bad block size at ({b:?},{a:?})");
            if !m.is_zero() {
                map.insert((b, a), m);
            }
        }
        TensorElement {
            left: left.clone(),
            right: right.clone(),
            blocks: map,
        }
    }

    pub fn elementary(b: &Element, a: &Element) -> Self {
        let mut map = BTreeMap::new();
        for (bi, bm) in b.blocks() {
            for (ai, am) in a.blocks() {
                map.insert((bi.clone(), ai.clone()), bm.kron(am));
            }
        }
        TensorElement {
            left: b.algebra().clone(),
            right: a.algebra().clone(),
            blocks: map,
        }
    }

    pub fn left_algebra(&self) -> &BlockAlgebra {
        &self.left
    }

    pub fn right_algebra(&self) -> &BlockAlgebra {
        &self.right
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, b: &BlockIndex, a: &BlockIndex) -> Option<&DenseMatrix> {
        self.blocks.get(&(b.clone(), a.clone()))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(BlockIndex, BlockIndex), &DenseMatrix)> {
        self.blocks.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &(BlockIndex, BlockIndex)> {
        self.blocks.keys()
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::AlgebraMismatch);
        }
        let mut map = self.blocks.clone();
        for (k, m) in &other.blocks {
            let sum = match map.get(k) {
                Some(cur) => cur.add(m),
                None => m.clone(),
            };
            if sum.is_zero() {
                map.remove(k);
            } else {
                map.insert(k.clone(), sum);
            }
        }
        Ok(TensorElement {
            left: self.left.clone(),
            right: self.right.clone(),
            blocks: map,
        })
    }

    pub fn scale(&self, s: &Scalar) -> TensorElement {
        if s.is_zero() {
            return TensorElement::zero(&self.left, &self.right);
        }
        TensorElement {
            left: self.left.clone(),
            right: self.right.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|(k, m)| (k.clone(), m.scale(s)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn max_abs_diff(&self, other: &TensorElement) -> f64 {
        let mut worst = 0.0_f64;
        for k in self.blocks.keys().chain(other.blocks.keys()) {
            let dim = self.left.block_dim(&k.0) * self.right.block_dim(&k.1);
            let zero = DenseMatrix::zeros(dim, dim);
            let x = self.blocks.get(k).unwrap_or(&zero);
            let y = other.blocks.get(k).unwrap_or(&zero);
            worst = worst.max(x.max_abs_diff(y));
        }
        worst
    }
}

#[derive(Clone)]
pub enum TensorRule {
    Identity,
    Zero,
    /// Σ_k x_k ⊗ y_k for multipliers x_k of B and y_k of A.
    Sum(Vec<(Multiplier, Multiplier)>),
    /// Computed rule (comultiplication images and the like).
    Derived(Arc<dyn Fn(&BlockIndex, &BlockIndex) -> DenseMatrix + Send + Sync>),
}

impl fmt::Debug for TensorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorRule::Identity => write!(f, "Identity"),
            TensorRule::Zero => write!(f, "Zero"),
            TensorRule::Sum(terms) => write!(f, "Sum({} elementary terms)", terms.len()),
            TensorRule::Derived(_) => write!(f, "Derived(..)"),
        }
    }
}

/// A multiplier Y of B⊗A as a total lazy map over block pairs.
#[derive(Clone, Debug)]
pub struct TensorMultiplier {
    left: BlockAlgebra,
    right: BlockAlgebra,
    rule: TensorRule,
}

impl TensorMultiplier {
    pub fn new(left: &BlockAlgebra, right: &BlockAlgebra, rule: TensorRule) -> Self {
        if let TensorRule::Sum(terms) = &rule {
            for (x, y) in terms {
                assert_eq!(x.algebra(), left, "left factor algebra mismatch");
                assert_eq!(y.algebra(), right, "right factor algebra mismatch");
            }
        }
        TensorMultiplier {
            left: left.clone(),
            right: right.clone(),
            rule,
        }
    }

    pub fn identity(left: &BlockAlgebra, right: &BlockAlgebra) -> Self {
        Self::new(left, right, TensorRule::Identity)
    }

    pub fn elementary(x: &Multiplier, y: &Multiplier) -> Self {
        Self::new(
            x.algebra(),
            y.algebra(),
            TensorRule::Sum(vec![(x.clone(), y.clone())]),
        )
    }

    pub fn sum_of_elementary(terms: Vec<(Multiplier, Multiplier)>) -> Self {
        assert!(!terms.is_empty());
        let left = terms[0].0.algebra().clone();
        let right = terms[0].1.algebra().clone();
        Self::new(&left, &right, TensorRule::Sum(terms))
    }

    pub fn left_algebra(&self) -> &BlockAlgebra {
        &self.left
    }

    pub fn right_algebra(&self) -> &BlockAlgebra {
        &self.right
    }

    pub fn rule(&self) -> &TensorRule {
        &self.rule
    }

    pub fn block(&self, b: &BlockIndex, a: &BlockIndex) -> DenseMatrix {
        let dim = self.left.block_dim(b) * self.right.block_dim(a);
        match &self.rule {
            TensorRule::Identity => DenseMatrix::identity(dim),
            TensorRule::Zero => DenseMatrix::zeros(dim, dim),
            TensorRule::Sum(terms) => {
                let mut acc = DenseMatrix::zeros(dim, dim);
                for (x, y) in terms {
                    acc = acc.add(&x.block(b).kron(&y.block(a)));
                }
                acc
            }
            TensorRule::Derived(f) => {
                let m = f(b, a);
                assert_eq!((m.rows(), m.cols()), (dim, dim));
                m
            }
        }
    }

    /// Block-pair-wise product over the finite support of `t`.
    pub fn apply(&self, t: &TensorElement, side: Side) -> Result<TensorElement, Error> {
        if self.left != *t.left_algebra() || self.right != *t.right_algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let blocks: Vec<_> = t
            .blocks()
            .map(|((b, a), m)| {
                let yb = self.block(b, a);
                let p = match side {
                    Side::Left => yb.matmul(m),
                    Side::Right => m.matmul(&yb),
                };
                ((b.clone(), a.clone()), p)
            })
            .collect();
        Ok(TensorElement::from_blocks(&self.left, &self.right, blocks))
    }

    pub fn scale(&self, s: &Scalar) -> TensorMultiplier {
        let inner = self.clone();
        let s = s.clone();
        TensorMultiplier::new(
            &self.left,
            &self.right,
            TensorRule::Derived(Arc::new(move |b, a| inner.block(b, a).scale(&s))),
        )
    }

    pub fn add(&self, other: &TensorMultiplier) -> Result<TensorMultiplier, Error> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::AlgebraMismatch);
        }
        let lhs = self.clone();
        let rhs = other.clone();
        Ok(TensorMultiplier::new(
            &self.left,
            &self.right,
            TensorRule::Derived(Arc::new(move |b, a| lhs.block(b, a).add(&rhs.block(b, a)))),
        ))
    }

    pub fn sub(&self, other: &TensorMultiplier) -> Result<TensorMultiplier, Error> {
        self.add(&other.scale(&-Scalar::one()))
    }
}
