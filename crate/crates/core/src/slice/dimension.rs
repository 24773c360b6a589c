//! Dimension of the span of right slices of a tensor multiplier, computed
//! window by window.
//!
//! For Y ∈ M(B⊗A) the candidate functionals are e^α_{ij}φ over a growing
//! window of A-blocks; their slices are restricted to a matching window of
//! B-blocks and the rank of the resulting column family is tracked per
//! expansion. The dimension has stabilized when it stops growing for
//! `patience` consecutive expansions; a finite value certifies that Y lies
//! in M(B)⊗M(A) (window-relative on infinite models).

use crate::algebra::element::Element;
use crate::algebra::index::BlockIndex;
use crate::algebra::multiplier::Multiplier;
use crate::algebra::tensor::TensorMultiplier;
use crate::error::Error;
use crate::functional::haar::HaarData;
use crate::functional::reduced::ReducedFunctional;
use crate::matrix::{DenseMatrix, RankPolicy};
use crate::scalar::Scalar;
use crate::slice::maps::{slice, Leg};

/// One retained basis slice: the functional label (α, i, j) of e^α_{ij}φ,
/// the slice as a multiplier of B, and its frozen coordinate column.
#[derive(Clone, Debug)]
pub struct SliceBasisEntry {
    pub label: (BlockIndex, usize, usize),
    pub slice: Multiplier,
    pub column: Vec<Scalar>,
}

/// Result of a stabilized dimension scan.
#[derive(Clone, Debug)]
pub struct SliceSpaceReport {
    /// Slice-span dimension per window expansion.
    pub history: Vec<usize>,
    pub dimension: usize,
    pub stabilized: bool,
    /// The window level at which the scan stopped.
    pub level: usize,
    /// The B-window the basis columns are vectorized over.
    pub b_window: Vec<BlockIndex>,
    pub basis: Vec<SliceBasisEntry>,
}

pub(crate) fn vectorize_restriction(
    m: &Multiplier,
    window: &[BlockIndex],
) -> Vec<Scalar> {
    let mut v = Vec::new();
    for idx in window {
        v.extend(m.block(idx).vectorize());
    }
    v
}

/// Scans growing windows until the slice-span dimension is unchanged for
/// `patience` consecutive expansions, or the level budget runs out
/// (`Error::BudgetExceeded` carrying the dimension history).
pub fn slice_space_dimension(
    y: &TensorMultiplier,
    haar: &HaarData,
    budget: usize,
    patience: usize,
    policy: &RankPolicy,
) -> Result<SliceSpaceReport, Error> {
    assert_eq!(haar.algebra(), y.right_algebra(), "Haar data must live on the right factor");
    assert!(budget > 0 && patience > 0);
    let a_alg = y.right_algebra().clone();
    let b_alg = y.left_algebra().clone();
    let mut history = Vec::new();
    for level in 0..budget {
        let a_window = a_alg.window(level as u32);
        let b_window = b_alg.window(level as u32);
        let mut labels = Vec::new();
        let mut slices = Vec::new();
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        for alpha in &a_window {
            let n = a_alg.block_dim(alpha);
            for i in 0..n {
                for j in 0..n {
                    let xi = ReducedFunctional::left_of_phi(
                        haar,
                        Element::matrix_unit(&a_alg, alpha.clone(), i, j),
                    );
                    let s = slice(y, &xi, Leg::Right);
                    columns.push(vectorize_restriction(&s, &b_window));
                    labels.push((alpha.clone(), i, j));
                    slices.push(s);
                }
            }
        }
        let matrix = DenseMatrix::from_fn(
            columns.first().map_or(0, |c| c.len()),
            columns.len(),
            |r, c| columns[c][r].clone(),
        );
        let pivots = matrix.independent_columns(policy);
        history.push(pivots.len());
        let n = history.len();
        if n > patience && history[n - 1 - patience..].iter().all(|&d| d == history[n - 1]) {
            let basis = pivots
                .into_iter()
                .map(|c| SliceBasisEntry {
                    label: labels[c].clone(),
                    slice: slices[c].clone(),
                    column: columns[c].clone(),
                })
                .collect();
            return Ok(SliceSpaceReport {
                dimension: history[n - 1],
                history,
                stabilized: true,
                level,
                b_window,
                basis,
            });
        }
    }
    Err(Error::BudgetExceeded { budget, history })
}
