//! The invariant functional φ(a) = Σ_α d_α·tr(F_α a_α) and its modular
//! automorphism.
//!
//! With diagonal positive F the modular automorphism is conjugation by F:
//! σ(a)_α = F_α a_α F_α⁻¹, which gives φ(ab) = φ(bσ(a)) block by block.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::block::BlockAlgebra;
use crate::algebra::element::Element;
use crate::algebra::index::BlockIndex;
use crate::matrix::{DenseMatrix, RankPolicy};
use crate::scalar::Scalar;

/// Per-block Haar weights.
#[derive(Clone, Debug, PartialEq)]
enum WeightRule {
    /// d = 1, F = I on every block (duals of discrete groups).
    Uniform,
    /// d = n_α, F = I (dual of SU(2)).
    DimWeighted,
    /// Explicit (d_α, diagonal of F_α) per block; blocks absent from the
    /// table get d = 1, F = I.
    Table(BTreeMap<BlockIndex, (Scalar, Vec<Scalar>)>),
}

/// Haar data for a block algebra: the left invariant functional and the
/// modular machinery derived from it. Cheap to clone.
#[derive(Clone, Debug, PartialEq)]
pub struct HaarData {
    algebra: BlockAlgebra,
    weights: Arc<WeightRule>,
    /// Global positive rescaling of φ; theorem-level outputs must not
    /// depend on it.
    scale: Scalar,
}

impl HaarData {
    pub fn uniform(algebra: &BlockAlgebra) -> Self {
        HaarData {
            algebra: algebra.clone(),
            weights: Arc::new(WeightRule::Uniform),
            scale: Scalar::one(),
        }
    }

    pub fn dim_weighted(algebra: &BlockAlgebra) -> Self {
        HaarData {
            algebra: algebra.clone(),
            weights: Arc::new(WeightRule::DimWeighted),
            scale: Scalar::one(),
        }
    }

    pub fn from_table(
        algebra: &BlockAlgebra,
        table: impl IntoIterator<Item = (BlockIndex, (Scalar, Vec<Scalar>))>,
    ) -> Self {
        let table: BTreeMap<_, _> = table.into_iter().collect();
        for (idx, (_, f)) in &table {
            assert_eq!(f.len(), algebra.block_dim(idx), "F diagonal has wrong size");
        }
        HaarData {
            algebra: algebra.clone(),
            weights: Arc::new(WeightRule::Table(table)),
            scale: Scalar::one(),
        }
    }

    /// φ rescaled by a positive constant.
    pub fn rescaled(&self, c: &Scalar) -> HaarData {
        HaarData {
            algebra: self.algebra.clone(),
            weights: self.weights.clone(),
            scale: &self.scale * c,
        }
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn d(&self, idx: &BlockIndex) -> Scalar {
        let base = match &*self.weights {
            WeightRule::Uniform => Scalar::one(),
            WeightRule::DimWeighted => Scalar::from_int(self.algebra.block_dim(idx) as i64),
            WeightRule::Table(t) => t.get(idx).map_or_else(Scalar::one, |(d, _)| d.clone()),
        };
        &base * &self.scale
    }

    pub fn f_diag(&self, idx: &BlockIndex) -> Vec<Scalar> {
        let n = self.algebra.block_dim(idx);
        match &*self.weights {
            WeightRule::Uniform | WeightRule::DimWeighted => vec![Scalar::one(); n],
            WeightRule::Table(t) => t
                .get(idx)
                .map_or_else(|| vec![Scalar::one(); n], |(_, f)| f.clone()),
        }
    }

    pub fn is_tracial(&self) -> bool {
        match &*self.weights {
            WeightRule::Uniform | WeightRule::DimWeighted => true,
            WeightRule::Table(t) => t
                .iter()
                .all(|(_, (_, f))| f.iter().all(|x| x == &f[0])),
        }
    }

    /// φ on one block: d_α · tr(F_α m).
    pub fn phi_block(&self, idx: &BlockIndex, m: &DenseMatrix) -> Scalar {
        let f = self.f_diag(idx);
        let mut t = Scalar::zero();
        for (i, fi) in f.iter().enumerate() {
            t = &t + &(fi * m.get(i, i));
        }
        &self.d(idx) * &t
    }

    pub fn phi(&self, a: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (idx, m) in a.blocks() {
            acc = &acc + &self.phi_block(idx, m);
        }
        acc
    }

    /// σ(a): block-wise conjugation by F.
    pub fn modular_apply(&self, a: &Element) -> Element {
        self.conjugate(a, false)
    }

    /// σ⁻¹(a).
    pub fn modular_inverse_apply(&self, a: &Element) -> Element {
        self.conjugate(a, true)
    }

    fn conjugate(&self, a: &Element, inverse: bool) -> Element {
        let blocks: Vec<_> = a
            .blocks()
            .map(|(idx, m)| {
                let f = self.f_diag(idx);
                let n = f.len();
                let mut out = DenseMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        let ratio = if inverse {
                            &f[j] / &f[i]
                        } else {
                            &f[i] / &f[j]
                        };
                        out.set(i, j, &ratio * m.get(i, j));
                    }
                }
                (idx.clone(), out)
            })
            .collect();
        Element::from_blocks(a.algebra(), blocks)
    }

    /// The Gram matrix of (a, b) ↦ φ(ab) over the matrix units of a window
    /// has full rank; faithfulness of φ at window scale.
    pub fn is_faithful_on(&self, window: &[BlockIndex], policy: &RankPolicy) -> bool {
        // φ(e^α_{ij} e^β_{kl}) = δ_{αβ} δ_{jk} d_α F_{ii} δ_{li};
        // the Gram matrix is a block permutation with nonzero weights, but
        // we compute it directly rather than rely on that shape.
        let mut basis = Vec::new();
        for idx in window {
            let n = self.algebra.block_dim(idx);
            for i in 0..n {
                for j in 0..n {
                    basis.push((idx.clone(), i, j));
                }
            }
        }
        let dim = basis.len();
        let gram = DenseMatrix::from_fn(dim, dim, |p, q| {
            let (bp, ip, jp) = &basis[p];
            let (bq, iq, jq) = &basis[q];
            if bp != bq || jp != iq {
                return Scalar::zero();
            }
            let unit = DenseMatrix::matrix_unit(self.algebra.block_dim(bp), *ip, *jq);
            self.phi_block(bp, &unit)
        });
        gram.rank(policy) == dim
    }

    /// The Riesz representative r of a block functional v against φ:
    /// φ(x·r) = v(x) for all x on the block, where v is given on matrix
    /// units. Requires F diagonal, which is the shipped normal form.
    pub fn riesz_block(
        &self,
        idx: &BlockIndex,
        value_on_unit: impl Fn(usize, usize) -> Scalar,
    ) -> DenseMatrix {
        let f = self.f_diag(idx);
        let d = self.d(idx);
        let n = f.len();
        let mut r = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // φ(e_ij r) = d F_ii r_{ji}
                let denom = &d * &f[i];
                r.set(j, i, &value_on_unit(i, j) / &denom);
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::GroupModel;

    fn m2_haar() -> (BlockAlgebra, HaarData) {
        let alg = BlockAlgebra::finite(vec![2]);
        let haar = HaarData::from_table(
            &alg,
            [(
                BlockIndex::Fin(0),
                (Scalar::one(), vec![Scalar::from_int(1), Scalar::from_int(2)]),
            )],
        );
        (alg, haar)
    }

    #[test]
    fn counting_measure_on_group_dual() {
        let alg = BlockAlgebra::group_dual(GroupModel::Integers);
        let haar = HaarData::uniform(&alg);
        let a = Element::delta(&alg, BlockIndex::Int(5))
            .add(&Element::delta(&alg, BlockIndex::Int(-2)).scale(&Scalar::from_int(3)))
            .unwrap();
        assert_eq!(haar.phi(&a), Scalar::from_int(4));
        assert!(haar.is_tracial());
    }

    #[test]
    fn modular_identity_on_all_m2_unit_pairs() {
        let (alg, haar) = m2_haar();
        for (i, j, k, l) in itertools_pairs() {
            let a = Element::matrix_unit(&alg, BlockIndex::Fin(0), i, j);
            let b = Element::matrix_unit(&alg, BlockIndex::Fin(0), k, l);
            let lhs = haar.phi(&a.multiply(&b).unwrap());
            let rhs = haar.phi(&b.multiply(&haar.modular_apply(&a)).unwrap());
            assert_eq!(lhs, rhs, "pair ({i}{j},{k}{l})");
        }
    }

    fn itertools_pairs() -> Vec<(usize, usize, usize, usize)> {
        let mut v = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        v.push((i, j, k, l));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn sigma_scales_off_diagonal_unit() {
        let (alg, haar) = m2_haar();
        let e12 = Element::matrix_unit(&alg, BlockIndex::Fin(0), 0, 1);
        assert_eq!(
            haar.modular_apply(&e12),
            e12.scale(&Scalar::from_ratio(1, 2))
        );
        // σ is an automorphism: σ(ab) = σ(a)σ(b)
        let a = Element::from_blocks(
            &alg,
            [(BlockIndex::Fin(0), DenseMatrix::from_fn(2, 2, |r, c| Scalar::from_int((2 * r + c + 1) as i64)))],
        );
        let b = Element::from_blocks(
            &alg,
            [(BlockIndex::Fin(0), DenseMatrix::from_fn(2, 2, |r, c| Scalar::from_int((r as i64) - (c as i64) + 2)))],
        );
        assert_eq!(
            haar.modular_apply(&a.multiply(&b).unwrap()),
            haar.modular_apply(&a).multiply(&haar.modular_apply(&b)).unwrap()
        );
        // σ∘σ⁻¹ = id
        assert_eq!(haar.modular_inverse_apply(&haar.modular_apply(&a)), a);
    }

    #[test]
    fn faithfulness_gram_full_rank() {
        let (_, haar) = m2_haar();
        let p = RankPolicy::default();
        assert!(haar.is_faithful_on(&[BlockIndex::Fin(0)], &p));
    }

    #[test]
    fn riesz_block_inverts_phi_pairing() {
        let (alg, haar) = m2_haar();
        let idx = BlockIndex::Fin(0);
        // target functional v(x) = φ(x r0) for a known r0; recover r0
        let r0 = DenseMatrix::from_fn(2, 2, |r, c| Scalar::from_int((3 * r + c) as i64 + 1));
        let v = |i: usize, j: usize| {
            let x = DenseMatrix::matrix_unit(2, i, j);
            haar.phi_block(&idx, &x.matmul(&r0))
        };
        let r = haar.riesz_block(&idx, v);
        assert_eq!(r, r0);
        let _ = alg;
    }
}
