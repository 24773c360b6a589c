//! Slice maps: pairing one tensor factor of Y ∈ M(B⊗A) with a reduced
//! functional, yielding a multiplier of the other factor.
//!
//! On a block pair the functional acts by a weighted partial trace against
//! its block functional G (with ξ(y) = Σ tr(G·y)), so slices of lazy
//! tensor multipliers are again lazy and total.

use std::sync::Arc;

use crate::algebra::multiplier::{BlockRule, Multiplier};
use crate::algebra::tensor::TensorMultiplier;
use crate::functional::reduced::ReducedFunctional;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Which tensor factor the functional consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    Left,
    Right,
}

/// (g⊗id)(M) for M on H_b⊗H_a and g(y) = tr(G·y) on the left factor.
pub(crate) fn eval_left(m: &DenseMatrix, nb: usize, na: usize, g: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(na, na, |i, j| {
        let mut s = Scalar::zero();
        for p in 0..nb {
            for q in 0..nb {
                let x = m.get(p * na + i, q * na + j);
                if !x.is_zero() {
                    s = &s + &(g.get(q, p) * x);
                }
            }
        }
        s
    })
}

/// (id⊗g)(M) for M on H_b⊗H_a and g(y) = tr(G·y) on the right factor.
pub(crate) fn eval_right(m: &DenseMatrix, nb: usize, na: usize, g: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(nb, nb, |p, q| {
        let mut s = Scalar::zero();
        for i in 0..na {
            for j in 0..na {
                let x = m.get(p * na + i, q * na + j);
                if !x.is_zero() {
                    s = &s + &(g.get(j, i) * x);
                }
            }
        }
        s
    })
}

/// The slice of Y by ξ: (ξ⊗id)(Y) ∈ M(A) for `Leg::Left`, (id⊗ξ)(Y) ∈ M(B)
/// for `Leg::Right`. ξ must be a reduced functional on the consumed factor;
/// its finite support makes every block of the result a finite sum.
pub fn slice(y: &TensorMultiplier, xi: &ReducedFunctional, leg: Leg) -> Multiplier {
    let expected = match leg {
        Leg::Left => y.left_algebra(),
        Leg::Right => y.right_algebra(),
    };
    assert_eq!(xi.algebra(), expected, "functional lives on the wrong factor");
    // freeze the finitely many block functionals of ξ
    let support: Vec<_> = xi
        .support()
        .into_iter()
        .map(|idx| {
            let g = xi.block_functional(&idx);
            (idx, g)
        })
        .collect();
    let y = y.clone();
    let result_algebra = match leg {
        Leg::Left => y.right_algebra().clone(),
        Leg::Right => y.left_algebra().clone(),
    };
    Multiplier::new(
        &result_algebra,
        BlockRule::Derived(Arc::new(move |idx, dim| {
            let mut acc = DenseMatrix::zeros(dim, dim);
            for (s_idx, g) in &support {
                let m = match leg {
                    Leg::Left => y.block(s_idx, idx),
                    Leg::Right => y.block(idx, s_idx),
                };
                let part = match leg {
                    Leg::Left => eval_left(&m, y.left_algebra().block_dim(s_idx), dim, g),
                    Leg::Right => eval_right(&m, dim, y.right_algebra().block_dim(s_idx), g),
                };
                acc = acc.add(&part);
            }
            acc
        })),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::block::BlockAlgebra;
    use crate::algebra::element::Element;
    use crate::algebra::group::GroupModel;
    use crate::algebra::index::BlockIndex;
    use crate::dqg::descriptor::DQGDescriptor;
    use crate::functional::haar::HaarData;

    #[test]
    fn slicing_elementary_tensor_scales_the_other_factor() {
        // Y = x⊗y with x, y embedded point masses: slicing by ξ gives
        // ξ(x)·y exactly
        let alg = BlockAlgebra::group_dual(GroupModel::Integers);
        let haar = HaarData::uniform(&alg);
        let x = Multiplier::embed_element(&Element::delta(&alg, BlockIndex::Int(2)));
        let y = Multiplier::embed_element(&Element::delta(&alg, BlockIndex::Int(5)));
        let t = TensorMultiplier::elementary(&x, &y);
        let xi = ReducedFunctional::left_of_phi(&haar, Element::delta(&alg, BlockIndex::Int(2)));
        let s = slice(&t, &xi, Leg::Left);
        // ξ(δ_2) = φ(δ_2·δ_2) = 1
        assert_eq!(s.block(&BlockIndex::Int(5)), DenseMatrix::identity(1));
        assert_eq!(s.block(&BlockIndex::Int(4)), DenseMatrix::zeros(1, 1));

        let xi_miss =
            ReducedFunctional::left_of_phi(&haar, Element::delta(&alg, BlockIndex::Int(3)));
        assert!(slice(&t, &xi_miss, Leg::Left)
            .block(&BlockIndex::Int(5))
            .is_zero());
    }

    #[test]
    fn right_slices_of_z_coproduct_are_point_masses() {
        // (id⊗δ_hφ)(δ(δ_n)) = δ_{n−h} on the dual of ℤ, exactly
        let dqg = DQGDescriptor::dual_of_group(GroupModel::Integers);
        let alg = dqg.algebra();
        let haar = dqg.haar();
        let y = dqg.coproduct(&Element::delta(alg, BlockIndex::Int(7)));
        for h in [-2i64, 0, 3, 7] {
            let xi = ReducedFunctional::left_of_phi(haar, Element::delta(alg, BlockIndex::Int(h)));
            let s = slice(&y, &xi, Leg::Right);
            for g in -10..=10 {
                let expect = if g == 7 - h { Scalar::one() } else { Scalar::zero() };
                assert_eq!(s.block(&BlockIndex::Int(g)).get(0, 0), &expect, "h={h} g={g}");
            }
        }
    }

    #[test]
    fn slice_respects_matrix_blocks() {
        // M_2 factor with an explicit tensor block: compare against a hand
        // partial trace
        let alg = BlockAlgebra::finite(vec![2]);
        let haar = HaarData::uniform(&alg);
        let a = Element::from_blocks(
            &alg,
            [(
                BlockIndex::Fin(0),
                DenseMatrix::from_fn(2, 2, |r, c| Scalar::from_int((r + 2 * c) as i64)),
            )],
        );
        let b = Element::from_blocks(
            &alg,
            [(
                BlockIndex::Fin(0),
                DenseMatrix::from_fn(2, 2, |r, c| Scalar::from_int(1 + (r * c) as i64)),
            )],
        );
        let t = TensorMultiplier::elementary(
            &Multiplier::embed_element(&a),
            &Multiplier::embed_element(&b),
        );
        let r = Element::matrix_unit(&alg, BlockIndex::Fin(0), 0, 1);
        let xi = ReducedFunctional::left_of_phi(&haar, r.clone());
        // ξ(a) = φ(a·r)
        let expect_scale = haar.phi(&a.multiply(&r).unwrap());
        let s = slice(&t, &xi, Leg::Left);
        assert_eq!(
            s.block(&BlockIndex::Fin(0)),
            b.block(&BlockIndex::Fin(0)).unwrap().scale(&expect_scale)
        );
    }
}
