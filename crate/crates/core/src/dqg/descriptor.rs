//! Discrete quantum group descriptors: comultiplication as block-pair
//! fusion data plus Haar data.
//!
//! The comultiplication is specified per block pair (β, γ) by the list of
//! target blocks α together with isometric intertwiners
//! V: H_α → H_β ⊗ H_γ; δ(a) then has block (β, γ) equal to
//! Σ V·a_α·V†. T1/T2 and all verifications are derived from this data.

use std::sync::Arc;

use crate::algebra::block::BlockAlgebra;
use crate::algebra::element::Element;
use crate::algebra::group::GroupModel;
use crate::algebra::index::BlockIndex;
use crate::algebra::multiplier::Multiplier;
use crate::algebra::tensor::{TensorMultiplier, TensorRule};
use crate::dqg::clebsch::{cg_isometry, fusion_targets};
use crate::functional::haar::HaarData;
use crate::matrix::DenseMatrix;

#[derive(Clone, Debug, PartialEq)]
enum FusionData {
    /// Blocks are group elements, all 1×1; (g, h) fuses to g·h with V = 1.
    GroupDual(GroupModel),
    /// SU(2) fusion on doubled spin labels with Clebsch–Gordan isometries.
    /// `max_spin` bounds the window on which verifications are exhaustive.
    Su2 { max_spin: u64 },
}

#[derive(Debug, PartialEq)]
struct DqgData {
    algebra: BlockAlgebra,
    haar: HaarData,
    fusion: FusionData,
}

/// A discrete quantum group model: algebra, comultiplication (fusion data)
/// and Haar data. Cheap to clone.
#[derive(Clone, Debug, PartialEq)]
pub struct DQGDescriptor(Arc<DqgData>);

impl DQGDescriptor {
    /// The dual of a discrete group: blocks indexed by group elements, all
    /// 1×1; δ(f)(g,h) = f(g·h); φ = counting measure; σ = id.
    pub fn dual_of_group(g: GroupModel) -> Self {
        let algebra = BlockAlgebra::group_dual(g.clone());
        let haar = HaarData::uniform(&algebra);
        DQGDescriptor(Arc::new(DqgData {
            algebra,
            haar,
            fusion: FusionData::GroupDual(g),
        }))
    }

    /// The dual of SU(2): blocks M_{t+1} for doubled spins t, Clebsch–Gordan
    /// intertwiners, d_α = n_α, F = I, σ = id. Verifications are restricted
    /// to block pairs with t_β + t_γ ≤ max_spin_index.
    pub fn dual_of_su2(max_spin_index: u64) -> Self {
        let algebra = BlockAlgebra::spin_labels();
        let haar = HaarData::dim_weighted(&algebra);
        DQGDescriptor(Arc::new(DqgData {
            algebra,
            haar,
            fusion: FusionData::Su2 {
                max_spin: max_spin_index,
            },
        }))
    }

    /// Same model with φ rescaled; theorem-level outputs must not change.
    pub fn with_haar(&self, haar: HaarData) -> Self {
        assert_eq!(haar.algebra(), self.algebra());
        DQGDescriptor(Arc::new(DqgData {
            algebra: self.0.algebra.clone(),
            haar,
            fusion: self.0.fusion.clone(),
        }))
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.0.algebra
    }

    pub fn haar(&self) -> &HaarData {
        &self.0.haar
    }

    pub fn group(&self) -> Option<&GroupModel> {
        match &self.0.fusion {
            FusionData::GroupDual(g) => Some(g),
            FusionData::Su2 { .. } => None,
        }
    }

    /// Fusion entries of the block pair (β, γ): targets α with isometries
    /// V: H_α → H_β ⊗ H_γ. Always a finite list.
    pub fn fusion(&self, beta: &BlockIndex, gamma: &BlockIndex) -> Vec<(BlockIndex, DenseMatrix)> {
        match &self.0.fusion {
            FusionData::GroupDual(g) => {
                let target = g.multiply(beta, gamma).expect("indices outside group model");
                vec![(target, DenseMatrix::identity(1))]
            }
            FusionData::Su2 { .. } => {
                let (t1, t2) = match (beta, gamma) {
                    (BlockIndex::Nat(a), BlockIndex::Nat(b)) => (*a, *b),
                    _ => panic!("spin model indexed by naturals"),
                };
                fusion_targets(t1, t2)
                    .into_iter()
                    .map(|t| (BlockIndex::Nat(t), cg_isometry(t1, t2, t)))
                    .collect()
            }
        }
    }

    /// The β with α ∈ fusion(β, γ), for fixed target α and right factor γ.
    pub fn left_partners(&self, alpha: &BlockIndex, gamma: &BlockIndex) -> Vec<BlockIndex> {
        match &self.0.fusion {
            FusionData::GroupDual(g) => {
                let inv = g.inverse(gamma).expect("index outside group model");
                vec![g.multiply(alpha, &inv).unwrap()]
            }
            FusionData::Su2 { .. } => match (alpha, gamma) {
                (BlockIndex::Nat(ta), BlockIndex::Nat(tg)) => fusion_targets(*ta, *tg)
                    .into_iter()
                    .map(BlockIndex::Nat)
                    .collect(),
                _ => panic!("spin model indexed by naturals"),
            },
        }
    }

    /// The γ with α ∈ fusion(β, γ), for fixed left factor β and target α.
    pub fn right_partners(&self, beta: &BlockIndex, alpha: &BlockIndex) -> Vec<BlockIndex> {
        match &self.0.fusion {
            FusionData::GroupDual(g) => {
                let inv = g.inverse(beta).expect("index outside group model");
                vec![g.multiply(&inv, alpha).unwrap()]
            }
            FusionData::Su2 { .. } => match (beta, alpha) {
                (BlockIndex::Nat(tb), BlockIndex::Nat(ta)) => fusion_targets(*tb, *ta)
                    .into_iter()
                    .map(BlockIndex::Nat)
                    .collect(),
                _ => panic!("spin model indexed by naturals"),
            },
        }
    }

    /// Whether verifications touching the pair (β, γ) stay inside the
    /// configured bound (always true for group duals).
    pub fn pair_fully_verifiable(&self, beta: &BlockIndex, gamma: &BlockIndex) -> bool {
        match &self.0.fusion {
            FusionData::GroupDual(_) => true,
            FusionData::Su2 { max_spin } => match (beta, gamma) {
                (BlockIndex::Nat(a), BlockIndex::Nat(b)) => a + b <= *max_spin,
                _ => false,
            },
        }
    }

    /// The default verification window: everything for finite models, the
    /// level-0 window otherwise, capped at the spin bound for SU(2).
    pub fn verification_window(&self) -> Vec<BlockIndex> {
        match &self.0.fusion {
            FusionData::Su2 { max_spin } => (0..=*max_spin).map(BlockIndex::Nat).collect(),
            FusionData::GroupDual(_) => self.0.algebra.window(0),
        }
    }

    /// δ(a) ∈ M(A⊗A) for a finitely supported a: block (β, γ) is
    /// Σ_{(α,V), α ∈ supp(a)} V·a_α·V†.
    pub fn coproduct(&self, a: &Element) -> TensorMultiplier {
        assert_eq!(a.algebra(), self.algebra());
        let dqg = self.clone();
        let a = a.clone();
        TensorMultiplier::new(
            self.algebra(),
            self.algebra(),
            TensorRule::Derived(Arc::new(move |beta, gamma| {
                dqg.coproduct_pair_block(beta, gamma, |idx| a.block(idx).cloned())
            })),
        )
    }

    /// The unique extension of δ to M(A): every fusion entry of the pair
    /// contributes (a finite list per pair).
    pub fn coproduct_of_multiplier(&self, x: &Multiplier) -> TensorMultiplier {
        assert_eq!(x.algebra(), self.algebra());
        let dqg = self.clone();
        let x = x.clone();
        TensorMultiplier::new(
            self.algebra(),
            self.algebra(),
            TensorRule::Derived(Arc::new(move |beta, gamma| {
                dqg.coproduct_pair_block(beta, gamma, |idx| Some(x.block(idx)))
            })),
        )
    }

    fn coproduct_pair_block(
        &self,
        beta: &BlockIndex,
        gamma: &BlockIndex,
        block_of: impl Fn(&BlockIndex) -> Option<DenseMatrix>,
    ) -> DenseMatrix {
        let dim = self.algebra().block_dim(beta) * self.algebra().block_dim(gamma);
        let mut acc = DenseMatrix::zeros(dim, dim);
        for (alpha, v) in self.fusion(beta, gamma) {
            if let Some(block) = block_of(&alpha) {
                if block.is_zero() {
                    continue;
                }
                acc = acc.add(&v.matmul(&block).matmul(&v.conj_transpose()));
            }
        }
        acc
    }
}
