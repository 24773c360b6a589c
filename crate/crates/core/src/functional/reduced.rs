//! Reduced functionals: the algebra Â = {aφ} = {φa} and the bimodule
//! actions producing it.
//!
//! An element of Â is stored by a representative element and a side; the
//! two sides interconvert through the modular automorphism (φa = σ(a)φ).
//! Equality of functionals is equality of representatives, which is
//! legitimate because φ is faithful.

use std::collections::BTreeMap;

use crate::algebra::block::BlockAlgebra;
use crate::algebra::element::Element;
use crate::algebra::index::BlockIndex;
use crate::algebra::multiplier::{Multiplier, Side};
use crate::error::Error;
use crate::functional::haar::HaarData;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Which side of φ the representative sits on: aφ or φa.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionalSide {
    /// aφ, acting by x ↦ φ(xa).
    LeftOfPhi,
    /// φa, acting by x ↦ φ(ax).
    RightOfPhi,
}

/// An element of Â, the reduced functionals generated by φ.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedFunctional {
    haar: HaarData,
    representative: Element,
    side: FunctionalSide,
}

impl ReducedFunctional {
    pub fn new(haar: &HaarData, representative: Element, side: FunctionalSide) -> Self {
        assert_eq!(haar.algebra(), representative.algebra());
        ReducedFunctional {
            haar: haar.clone(),
            representative,
            side,
        }
    }

    /// aφ.
    pub fn left_of_phi(haar: &HaarData, a: Element) -> Self {
        Self::new(haar, a, FunctionalSide::LeftOfPhi)
    }

    /// φa.
    pub fn right_of_phi(haar: &HaarData, a: Element) -> Self {
        Self::new(haar, a, FunctionalSide::RightOfPhi)
    }

    pub fn haar(&self) -> &HaarData {
        &self.haar
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        self.representative.algebra()
    }

    pub fn representative(&self) -> &Element {
        &self.representative
    }

    pub fn side(&self) -> FunctionalSide {
        self.side
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ReducedFunctional {
            haar: self.haar.clone(),
            representative: self.representative.scale(s),
            side: self.side,
        }
    }

    pub fn add(&self, other: &ReducedFunctional) -> Result<Self, Error> {
        let o = other.with_side(self.side);
        Ok(ReducedFunctional {
            haar: self.haar.clone(),
            representative: self.representative.add(&o.representative)?,
            side: self.side,
        })
    }

    /// Converts the representation side through σ: φa = σ(a)φ. Evaluation
    /// is unchanged; double conversion is the identity.
    pub fn with_side(&self, side: FunctionalSide) -> ReducedFunctional {
        if self.side == side {
            return self.clone();
        }
        let rep = match (self.side, side) {
            (FunctionalSide::RightOfPhi, FunctionalSide::LeftOfPhi) => {
                self.haar.modular_apply(&self.representative)
            }
            (FunctionalSide::LeftOfPhi, FunctionalSide::RightOfPhi) => {
                self.haar.modular_inverse_apply(&self.representative)
            }
            _ => unreachable!(),
        };
        ReducedFunctional {
            haar: self.haar.clone(),
            representative: rep,
            side,
        }
    }

    /// ξ(x): φ(xa) or φ(ax) per side, a finite sum over the intersection
    /// of supports.
    pub fn evaluate(&self, x: &Element) -> Result<Scalar, Error> {
        self.representative.check_algebra(x)?;
        let prod = match self.side {
            FunctionalSide::LeftOfPhi => x.multiply(&self.representative)?,
            FunctionalSide::RightOfPhi => self.representative.multiply(x)?,
        };
        Ok(self.haar.phi(&prod))
    }

    /// The natural extension of ξ to M(A): truncate m by the local unit of
    /// the representative, then evaluate. Finite because the representative
    /// is finitely supported.
    pub fn evaluate_on_multiplier(&self, m: &Multiplier) -> Result<Scalar, Error> {
        let truncated = m.apply(&self.representative.local_unit(), Side::Left)?;
        self.evaluate(&truncated)
    }

    /// The block functional of ξ at `idx` as a matrix G with
    /// ξ(x) = Σ_α tr(G_α x_α); here G = d·a·F on the left-of-φ normal form.
    pub fn block_functional(&self, idx: &BlockIndex) -> DenseMatrix {
        let left = self.with_side(FunctionalSide::LeftOfPhi);
        let a = left.representative.block_or_zero(idx);
        let f = DenseMatrix::diagonal(&left.haar.f_diag(idx));
        a.matmul(&f).scale(&left.haar.d(idx))
    }

    /// Support of the left-of-φ normal form.
    pub fn support(&self) -> Vec<BlockIndex> {
        self.with_side(FunctionalSide::LeftOfPhi)
            .representative
            .support()
            .cloned()
            .collect()
    }
}

/// A functional given by arbitrary matrices on a finite window; the
/// artifact's stand-in for A^♯ where it matters. f(y) = Σ_α tr(G_α y_α).
#[derive(Clone, Debug, PartialEq)]
pub struct WindowFunctional {
    algebra: BlockAlgebra,
    entries: BTreeMap<BlockIndex, DenseMatrix>,
}

impl WindowFunctional {
    pub fn new(
        algebra: &BlockAlgebra,
        entries: impl IntoIterator<Item = (BlockIndex, DenseMatrix)>,
    ) -> Self {
        let entries: BTreeMap<_, _> = entries.into_iter().collect();
        for (idx, g) in &entries {
            let n = algebra.block_dim(idx);
            assert_eq!((g.rows(), g.cols()), (n, n));
        }
        WindowFunctional {
            algebra: algebra.clone(),
            entries,
        }
    }

    /// The restriction of a reduced functional to a window.
    pub fn from_reduced(xi: &ReducedFunctional, window: &[BlockIndex]) -> Self {
        Self::new(
            xi.algebra(),
            window.iter().map(|i| (i.clone(), xi.block_functional(i))),
        )
    }

    pub fn evaluate(&self, y: &Element) -> Result<Scalar, Error> {
        if self.algebra != *y.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let mut acc = Scalar::zero();
        for (idx, m) in y.blocks() {
            if let Some(g) = self.entries.get(idx) {
                acc = &acc + &g.matmul(m).trace();
            }
        }
        Ok(acc)
    }

    pub fn defined_on(&self, idx: &BlockIndex) -> bool {
        self.entries.contains_key(idx)
    }

    pub fn block(&self, idx: &BlockIndex) -> Option<&DenseMatrix> {
        self.entries.get(idx)
    }
}

/// The bimodule action afb ∈ Â: solves φ(x·r) = f(bxa) for the
/// representative r block by block (Riesz against φ). The window functional
/// must cover supp(a) ∩ supp(b).
pub fn bimodule_act(
    a: &Element,
    f: &WindowFunctional,
    b: &Element,
    haar: &HaarData,
) -> Result<ReducedFunctional, Error> {
    a.check_algebra(b)?;
    assert_eq!(haar.algebra(), a.algebra());
    let mut blocks = Vec::new();
    for idx in a.support() {
        let (am, bm) = match (a.block(idx), b.block(idx)) {
            (Some(x), Some(y)) => (x, y),
            _ => continue,
        };
        if !f.defined_on(idx) {
            return Err(Error::WindowTooSmall(idx.clone()));
        }
        let n = a.algebra().block_dim(idx);
        let r = haar.riesz_block(idx, |i, j| {
            // (afb)(e_ij) = f(b e_ij a)
            let x = bm.matmul(&DenseMatrix::matrix_unit(n, i, j)).matmul(am);
            f.block(idx)
                .map(|g| g.matmul(&x).trace())
                .unwrap_or_else(Scalar::zero)
        });
        blocks.push((idx.clone(), r));
    }
    Ok(ReducedFunctional::left_of_phi(
        haar,
        Element::from_blocks(a.algebra(), blocks),
    ))
}
