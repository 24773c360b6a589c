//! Constructive factorization of a tensor multiplier Y ∈ M(B⊗A) as a
//! finite sum Σ_k x_k ⊗ y_k with x_k ∈ M(B), y_k ∈ M(A).
//!
//! The x_k are a basis of the span of right slices of Y. The coordinates
//! λ_k(a) of the slice by aφ in that basis are linear in a, and
//! y_k is recovered from them against φ: λ_k(e^α_{ij}) = d_α·F_jj·(y_k)_{ji}.
//! The factorization is verified by reconstructing Y on the scan windows
//! and on a disjoint probe window.

use std::sync::Arc;

use crate::algebra::block::BlockAlgebra;
use crate::algebra::element::Element;
use crate::algebra::index::BlockIndex;
use crate::algebra::multiplier::{BlockRule, Multiplier};
use crate::algebra::tensor::TensorMultiplier;
use crate::error::Error;
use crate::functional::haar::HaarData;
use crate::functional::reduced::ReducedFunctional;
use crate::matrix::{coordinates_in_span, RankPolicy};
use crate::scalar::Scalar;
use crate::slice::dimension::{slice_space_dimension, vectorize_restriction, SliceSpaceReport};
use crate::slice::maps::{slice, Leg};

/// A verified finite factorization of a tensor multiplier.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub report: SliceSpaceReport,
    /// The terms (x_k, y_k) with Y = Σ_k x_k ⊗ y_k.
    pub terms: Vec<(Multiplier, Multiplier)>,
    /// Largest reconstruction deviation over scan and probe windows.
    pub max_error: f64,
    y: TensorMultiplier,
    haar: HaarData,
    policy: RankPolicy,
}

/// The coordinates λ_k of the slice (id⊗aφ)(Y) in the frozen basis.
fn lambda_of(
    y: &TensorMultiplier,
    haar: &HaarData,
    report: &SliceSpaceReport,
    policy: &RankPolicy,
    a: Element,
) -> Result<Vec<Scalar>, Error> {
    let xi = ReducedFunctional::left_of_phi(haar, a);
    let s = slice(y, &xi, Leg::Right);
    let target = vectorize_restriction(&s, &report.b_window);
    let columns: Vec<Vec<Scalar>> = report.basis.iter().map(|e| e.column.clone()).collect();
    coordinates_in_span(&columns, &target, policy)
}

/// Factors Y through M(B)⊗M(A); fails with `BudgetExceeded` if the slice
/// span keeps growing and with `ReconstructionMismatch` if the rebuilt
/// tensor disagrees with Y beyond `tol`.
pub fn factor(
    y: &TensorMultiplier,
    haar: &HaarData,
    budget: usize,
    patience: usize,
    policy: &RankPolicy,
    tol: f64,
) -> Result<Factorization, Error> {
    let report = slice_space_dimension(y, haar, budget, patience, policy)?;
    let a_alg = y.right_algebra().clone();

    let mut terms = Vec::new();
    for k in 0..report.dimension {
        let x_k = report.basis[k].slice.clone();
        let y_cl = y.clone();
        let haar_cl = haar.clone();
        let report_cl = report.clone();
        let policy_cl = policy.clone();
        let a_alg_cl = a_alg.clone();
        let y_k = Multiplier::new(
            &a_alg,
            BlockRule::Derived(Arc::new(move |alpha: &BlockIndex, dim: usize| {
                let d = haar_cl.d(alpha);
                let f = haar_cl.f_diag(alpha);
                let mut m = crate::matrix::DenseMatrix::zeros(dim, dim);
                for i in 0..dim {
                    for j in 0..dim {
                        let lam = lambda_of(
                            &y_cl,
                            &haar_cl,
                            &report_cl,
                            &policy_cl,
                            Element::matrix_unit(&a_alg_cl, alpha.clone(), i, j),
                        )
                        .expect("slice left the stabilized span; window too small");
                        // λ_k(e_ij) = d·F_jj·(y_k)_{ji}
                        m.set(j, i, &lam[k] / &(&d * &f[j]));
                    }
                }
                m
            })),
        );
        terms.push((x_k, y_k));
    }

    // verification: scan windows plus a disjoint probe window one level out
    let b_alg = y.left_algebra().clone();
    let b_check = with_probe(&b_alg, &report.b_window, report.level);
    let a_check = with_probe(&a_alg, &a_alg.window(report.level as u32), report.level);
    let mut max_error = 0.0_f64;
    // evaluate the lazy factors once per block, not once per pair
    let x_blocks: Vec<Vec<_>> = terms
        .iter()
        .map(|(x_k, _)| b_check.iter().map(|beta| x_k.block(beta)).collect())
        .collect();
    let y_blocks: Vec<Vec<_>> = terms
        .iter()
        .map(|(_, y_k)| a_check.iter().map(|alpha| y_k.block(alpha)).collect())
        .collect();
    for (bi, beta) in b_check.iter().enumerate() {
        for (ai, alpha) in a_check.iter().enumerate() {
            let direct = y.block(beta, alpha);
            let mut rebuilt = crate::matrix::DenseMatrix::zeros(direct.rows(), direct.cols());
            for k in 0..terms.len() {
                rebuilt = rebuilt.add(&x_blocks[k][bi].kron(&y_blocks[k][ai]));
            }
            max_error = max_error.max(direct.max_abs_diff(&rebuilt));
        }
    }
    if max_error > tol {
        return Err(Error::ReconstructionMismatch { max_error });
    }
    Ok(Factorization {
        report,
        terms,
        max_error,
        y: y.clone(),
        haar: haar.clone(),
        policy: policy.clone(),
    })
}

/// The scan window extended by the next level's new blocks (disjoint probe).
fn with_probe(alg: &BlockAlgebra, window: &[BlockIndex], level: usize) -> Vec<BlockIndex> {
    let mut out = window.to_vec();
    for idx in alg.window(level as u32 + 1) {
        if !out.contains(&idx) {
            out.push(idx);
        }
    }
    out
}

impl Factorization {
    /// λ_k(a) for all k: the coordinates of (id⊗aφ)(Y) in the x-basis.
    pub fn lambda(&self, a: &Element) -> Result<Vec<Scalar>, Error> {
        lambda_of(&self.y, &self.haar, &self.report, &self.policy, a.clone())
    }

    /// z_k(c): the element with φ(z_k(c)·d) = λ_k(d·σ(c)) for all d; it
    /// satisfies z_k(a)·b = a·(y_k b), pairing the k-th factor's left and
    /// right actions.
    pub fn z_apply(&self, k: usize, c: &Element) -> Result<Element, Error> {
        let sigma_c = self.haar.modular_apply(c);
        let alg = c.algebra().clone();
        let mut blocks = Vec::new();
        for (alpha, _) in sigma_c.blocks() {
            let n = alg.block_dim(alpha);
            let d = self.haar.d(alpha);
            let f = self.haar.f_diag(alpha);
            let mut m = crate::matrix::DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    // φ(z e_ij) = d·F_jj·z_{ji} and must equal λ_k(e_ij σ(c))
                    let probe = Element::matrix_unit(&alg, alpha.clone(), i, j)
                        .multiply(&sigma_c)?;
                    let lam = self.lambda(&probe)?;
                    m.set(j, i, &lam[k] / &(&d * &f[j]));
                }
            }
            blocks.push((alpha.clone(), m));
        }
        Ok(Element::from_blocks(&alg, blocks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::GroupModel;
    use crate::algebra::multiplier::{IntFormula, IntTerm};
    use crate::algebra::Side;
    use crate::dqg::descriptor::DQGDescriptor;
    use rand::Rng;
    use rand::SeedableRng;

    fn z_dual() -> DQGDescriptor {
        DQGDescriptor::dual_of_group(GroupModel::Integers)
    }

    fn coord(dqg: &DQGDescriptor) -> Multiplier {
        Multiplier::new(
            dqg.algebra(),
            BlockRule::IntFormula(IntFormula {
                terms: vec![(Scalar::one(), IntTerm::Power(1))],
            }),
        )
    }

    #[test]
    fn additive_coordinate_factors_exactly() {
        let dqg = z_dual();
        let y = dqg.coproduct_of_multiplier(&coord(&dqg));
        let f = factor(&y, dqg.haar(), 4, 2, &RankPolicy::default(), 1e-7).unwrap();
        assert_eq!(f.terms.len(), 2);
        assert_eq!(f.max_error, 0.0);
        // reconstruction agrees far outside the scan window too
        for (g, n) in [(40i64, -3i64), (-100, 100), (17, 23)] {
            let direct = y.block(&BlockIndex::Int(g), &BlockIndex::Int(n));
            let mut rebuilt = crate::matrix::DenseMatrix::zeros(1, 1);
            for (x_k, y_k) in &f.terms {
                rebuilt = rebuilt.add(
                    &x_k.block(&BlockIndex::Int(g)).kron(&y_k.block(&BlockIndex::Int(n))),
                );
            }
            assert_eq!(direct, rebuilt);
        }
    }

    #[test]
    fn character_factors_as_single_term() {
        let dqg = z_dual();
        let chi = Multiplier::new(
            dqg.algebra(),
            BlockRule::IntFormula(IntFormula {
                terms: vec![(Scalar::one(), IntTerm::CharacterExact { quarter_turns: 1 })],
            }),
        );
        let y = dqg.coproduct_of_multiplier(&chi);
        let f = factor(&y, dqg.haar(), 4, 2, &RankPolicy::default(), 1e-7).unwrap();
        assert_eq!(f.terms.len(), 1);
        let (x, yk) = &f.terms[0];
        // both factors are proportional to the character itself
        let g = BlockIndex::Int(3);
        let prod = x.block(&g).get(0, 0) * yk.block(&BlockIndex::Int(2)).get(0, 0);
        assert_eq!(&prod, &(&Scalar::i_pow(3) * &Scalar::i_pow(2)));
    }

    #[test]
    fn double_centralizer_identity_on_random_pairs() {
        // z_k(a)·b = a·(y_k b) for random finitely supported a, b
        let dqg = z_dual();
        let y = dqg.coproduct_of_multiplier(&coord(&dqg));
        let f = factor(&y, dqg.haar(), 4, 2, &RankPolicy::default(), 1e-7).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let mut a = Element::zero(dqg.algebra());
            let mut b = Element::zero(dqg.algebra());
            for _ in 0..3 {
                let ga = rng.gen_range(-4..=4);
                let gb = rng.gen_range(-4..=4);
                let ca = Scalar::from_int(rng.gen_range(-5..=5));
                let cb = Scalar::from_int(rng.gen_range(-5..=5));
                a = a
                    .add(&Element::delta(dqg.algebra(), BlockIndex::Int(ga)).scale(&ca))
                    .unwrap();
                b = b
                    .add(&Element::delta(dqg.algebra(), BlockIndex::Int(gb)).scale(&cb))
                    .unwrap();
            }
            for k in 0..f.terms.len() {
                let lhs = f.z_apply(k, &a).unwrap().multiply(&b).unwrap();
                let rhs = a
                    .multiply(&f.terms[k].1.apply(&b, Side::Left).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rescaled_haar_gives_same_dimension_and_reconstruction() {
        let dqg = z_dual();
        let y = dqg.coproduct_of_multiplier(&coord(&dqg));
        let haar7 = dqg.haar().rescaled(&Scalar::from_int(7));
        let f = factor(&y, &haar7, 4, 2, &RankPolicy::default(), 1e-7).unwrap();
        assert_eq!(f.terms.len(), 2);
        assert_eq!(f.max_error, 0.0);
    }

    #[test]
    fn point_mass_coproduct_does_not_factor() {
        let dqg = z_dual();
        let y = dqg.coproduct(&Element::delta(dqg.algebra(), BlockIndex::Int(0)));
        let err = factor(&y, dqg.haar(), 4, 2, &RankPolicy::default(), 1e-7).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
