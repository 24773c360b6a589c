//! Direct sums of full matrix blocks and their window exhaustions.
//!
//! All infinite models are only ever touched through nested finite windows;
//! `window(level)` produces the exhaustion and is monotone in `level`.

use std::sync::Arc;

use crate::algebra::group::GroupModel;
use crate::algebra::index::BlockIndex;

/// How the block index set is enumerated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IndexModel {
    /// Finitely many blocks with the given dimensions; index k ↦ dims[k].
    Finite { dims: Vec<usize> },
    /// Group elements, all blocks 1×1 (function algebra on a discrete group).
    Group(GroupModel),
    /// Naturals with block dimension n+1 (fusion labels of the SU(2) dual).
    SpinLabels,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct AlgebraData {
    model: IndexModel,
}

/// The algebra A = ⊕_α M_{n_α}. Cheap to clone; equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockAlgebra(Arc<AlgebraData>);

impl BlockAlgebra {
    pub fn new(model: IndexModel) -> Self {
        BlockAlgebra(Arc::new(AlgebraData { model }))
    }

    pub fn finite(dims: Vec<usize>) -> Self {
        assert!(dims.iter().all(|&d| d > 0), "block dimensions must be positive");
        Self::new(IndexModel::Finite { dims })
    }

    pub fn group_dual(g: GroupModel) -> Self {
        match g.order() {
            Some(n) => Self::finite(vec![1; n]),
            None => Self::new(IndexModel::Group(g)),
        }
    }

    pub fn spin_labels() -> Self {
        Self::new(IndexModel::SpinLabels)
    }

    pub fn model(&self) -> &IndexModel {
        &self.0.model
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0.model, IndexModel::Finite { .. })
    }

    pub fn contains(&self, idx: &BlockIndex) -> bool {
        match (&self.0.model, idx) {
            (IndexModel::Finite { dims }, BlockIndex::Fin(k)) => *k < dims.len(),
            (IndexModel::Group(g), i) => g.contains(i),
            (IndexModel::SpinLabels, BlockIndex::Nat(_)) => true,
            _ => false,
        }
    }

    pub fn block_dim(&self, idx: &BlockIndex) -> usize {
        match (&self.0.model, idx) {
            (IndexModel::Finite { dims }, BlockIndex::Fin(k)) => dims[*k],
            (IndexModel::Group(_), _) => 1,
            (IndexModel::SpinLabels, BlockIndex::Nat(n)) => (*n + 1) as usize,
            _ => panic!("index {idx:?} not in algebra {:?}", self.0.model),
        }
    }

    /// Finite window at the given expansion level. Windows are nested and
    /// exhaust every fixed finite index set: intervals [−W, W] with W = 4·2^L
    /// for ℤ (squares for ℤ²), word-metric balls of radius L+1 for free
    /// groups, initial segments [0, 3·2^L] for spin labels, and everything
    /// for finite models.
    pub fn window(&self, level: u32) -> Vec<BlockIndex> {
        match &self.0.model {
            IndexModel::Finite { dims } => (0..dims.len()).map(BlockIndex::Fin).collect(),
            IndexModel::Group(g) => match g {
                GroupModel::Integers | GroupModel::IntegerPairs => g.ball(4 << level),
                GroupModel::FiniteCayley { .. } => g.ball(0),
                GroupModel::FreeWords { .. } => g.ball(level + 1),
            },
            IndexModel::SpinLabels => (0..=(3 << level) as u64).map(BlockIndex::Nat).collect(),
        }
    }

    /// Total dimension Σ n_α² of a window.
    pub fn window_dim(&self, window: &[BlockIndex]) -> usize {
        window.iter().map(|i| self.block_dim(i).pow(2)).sum()
    }
}
