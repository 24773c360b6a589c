//! Clebsch–Gordan isometries for the SU(2) dual, by the ladder-operator
//! recursion in the Condon–Shortley phase convention.
//!
//! Spins are kept doubled throughout (block label t has dimension t+1,
//! spin j = t/2). Within a block, basis index i corresponds to the doubled
//! weight m = t − 2i, descending.

use crate::matrix::{DenseMatrix, RankPolicy};
use crate::scalar::Scalar;

/// j(j+1) − m(m−1) in doubled variables; the squared lowering coefficient.
fn lower_coeff_sq(tj: u64, tm: i64) -> f64 {
    let tj = tj as i64;
    ((tj * (tj + 2) - tm * (tm - 2)) as f64) / 4.0
}

/// j(j+1) − m(m+1) in doubled variables; the squared raising coefficient.
fn raise_coeff_sq(tj: u64, tm: i64) -> f64 {
    let tj = tj as i64;
    ((tj * (tj + 2) - tm * (tm + 2)) as f64) / 4.0
}

/// Fusion targets of t1 ⊗ t2: |t1−t2|, |t1−t2|+2, …, t1+t2.
pub fn fusion_targets(t1: u64, t2: u64) -> Vec<u64> {
    let lo = t1.abs_diff(t2);
    let hi = t1 + t2;
    (lo..=hi).step_by(2).collect()
}

/// The isometry V: H_t → H_{t1} ⊗ H_{t2} of shape (t1+1)(t2+1) × (t+1)
/// whose entries are the Clebsch–Gordan coefficients ⟨j1 m1 j2 m2 | J M⟩.
/// Row index is i1·(t2+1) + i2; column index is (t − M_doubled)/2.
pub fn cg_isometry(t1: u64, t2: u64, t: u64) -> DenseMatrix {
    assert!(
        fusion_targets(t1, t2).contains(&t),
        "target {t} not in fusion of {t1}⊗{t2}"
    );
    let n1 = (t1 + 1) as usize;
    let n2 = (t2 + 1) as usize;
    let prod_dim = n1 * n2;
    let cols = (t + 1) as usize;

    let weight = |i1: usize, i2: usize| -> i64 {
        (t1 as i64 - 2 * i1 as i64) + (t2 as i64 - 2 * i2 as i64)
    };
    let weight_space = |m: i64| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                if weight(i1, i2) == m {
                    v.push((i1, i2));
                }
            }
        }
        v
    };

    // Highest-weight vector: the kernel of the raising operator on the
    // weight-t subspace (one-dimensional; SU(2) fusion is multiplicity free).
    let top_basis = weight_space(t as i64);
    let above_basis = weight_space(t as i64 + 2);
    let raise = DenseMatrix::from_fn(above_basis.len().max(1), top_basis.len(), |r, c| {
        if above_basis.is_empty() {
            return Scalar::float(0.0, 0.0);
        }
        let (i1, i2) = top_basis[c];
        let m1 = t1 as i64 - 2 * i1 as i64;
        let m2 = t2 as i64 - 2 * i2 as i64;
        let mut v = 0.0;
        if i1 > 0 && above_basis[r] == (i1 - 1, i2) {
            v += raise_coeff_sq(t1, m1).sqrt();
        }
        if i2 > 0 && above_basis[r] == (i1, i2 - 1) {
            v += raise_coeff_sq(t2, m2).sqrt();
        }
        Scalar::float(v, 0.0)
    });
    let kernel = raise.kernel_basis(&RankPolicy::default());
    assert_eq!(kernel.len(), 1, "highest weight space must be 1-dimensional");
    let mut top: Vec<f64> = kernel[0].iter().map(|s| s.to_complex().re).collect();
    let norm: f64 = top.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut top {
        *x /= norm;
    }
    // Condon-Shortley: the coefficient at maximal m1 is positive.
    let lead = top_basis
        .iter()
        .enumerate()
        .min_by_key(|(_, (i1, _))| *i1)
        .map(|(k, _)| k)
        .unwrap();
    if top[lead] < 0.0 {
        for x in &mut top {
            *x = -*x;
        }
    }

    let mut v = DenseMatrix::zeros(prod_dim, cols);
    // column 0: M = t
    let mut current: Vec<f64> = vec![0.0; prod_dim];
    for (k, &(i1, i2)) in top_basis.iter().enumerate() {
        current[i1 * n2 + i2] = top[k];
    }
    for (row, &x) in current.iter().enumerate() {
        v.set(row, 0, Scalar::float(x, 0.0));
    }
    // lower step by step: |J, M−1⟩ = J₋|J, M⟩ / c₋(J, M)
    let mut tm = t as i64;
    for col in 1..cols {
        let mut next = vec![0.0; prod_dim];
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                let x = current[i1 * n2 + i2];
                if x == 0.0 {
                    continue;
                }
                let m1 = t1 as i64 - 2 * i1 as i64;
                let m2 = t2 as i64 - 2 * i2 as i64;
                if i1 + 1 < n1 {
                    next[(i1 + 1) * n2 + i2] += x * lower_coeff_sq(t1, m1).sqrt();
                }
                if i2 + 1 < n2 {
                    next[i1 * n2 + i2 + 1] += x * lower_coeff_sq(t2, m2).sqrt();
                }
            }
        }
        let c = lower_coeff_sq(t, tm).sqrt();
        for x in &mut next {
            *x /= c;
        }
        for (row, &x) in next.iter().enumerate() {
            v.set(row, col, Scalar::float(x, 0.0));
        }
        current = next;
        tm -= 2;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_dev_from_identity(m: &DenseMatrix) -> f64 {
        m.sub(&DenseMatrix::from_fn(m.rows(), m.cols(), |r, c| {
            if r == c {
                Scalar::float(1.0, 0.0)
            } else {
                Scalar::float(0.0, 0.0)
            }
        }))
        .max_abs()
    }

    #[test]
    fn half_times_half() {
        // fusion targets of two spin-1/2: {0, 2}
        assert_eq!(fusion_targets(1, 1), vec![0, 2]);
        let v0 = cg_isometry(1, 1, 0);
        let v2 = cg_isometry(1, 1, 2);
        // singlet = (|↑↓⟩ − |↓↑⟩)/√2 with CS sign
        let s = 0.5f64.sqrt();
        assert!((v0.get(1, 0).to_complex().re - s).abs() < 1e-12);
        assert!((v0.get(2, 0).to_complex().re + s).abs() < 1e-12);
        // isometry and completeness
        assert!(max_dev_from_identity(&v0.conj_transpose().matmul(&v0)) < 1e-12);
        assert!(max_dev_from_identity(&v2.conj_transpose().matmul(&v2)) < 1e-12);
        let completeness = v0
            .matmul(&v0.conj_transpose())
            .add(&v2.matmul(&v2.conj_transpose()));
        assert!(max_dev_from_identity(&completeness) < 1e-12);
    }

    #[test]
    fn triplet_middle_state() {
        let v2 = cg_isometry(1, 1, 2);
        // |1,0⟩ = (|↑↓⟩ + |↓↑⟩)/√2
        let s = 0.5f64.sqrt();
        assert!((v2.get(1, 1).to_complex().re - s).abs() < 1e-12);
        assert!((v2.get(2, 1).to_complex().re - s).abs() < 1e-12);
    }

    #[test]
    fn completeness_for_larger_pairs() {
        for (t1, t2) in [(2u64, 1u64), (2, 2), (3, 2), (3, 3)] {
            let n = ((t1 + 1) * (t2 + 1)) as usize;
            let mut acc = DenseMatrix::zeros(n, n);
            for t in fusion_targets(t1, t2) {
                let v = cg_isometry(t1, t2, t);
                assert!(
                    max_dev_from_identity(&v.conj_transpose().matmul(&v)) < 1e-9,
                    "isometry failed for {t1}x{t2}->{t}"
                );
                acc = acc.add(&v.matmul(&v.conj_transpose()));
            }
            assert!(
                max_dev_from_identity(&acc) < 1e-9,
                "completeness failed for {t1}x{t2}"
            );
        }
    }

    #[test]
    fn tensoring_with_trivial_is_identity() {
        let v = cg_isometry(2, 0, 2);
        assert!(max_dev_from_identity(&v) < 1e-12);
    }

    #[test]
    fn known_one_times_half_value() {
        // ⟨1 1 ½ −½ | ½ ½⟩ = √(2/3) in CS convention (sign +... value table)
        let v = cg_isometry(2, 1, 1);
        // row (i1=0 -> m1=1, i2=1 -> m2=-1/2), col M=1/2 -> col 0
        let got = v.get(1, 0).to_complex().re;
        assert!((got.abs() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }
}
