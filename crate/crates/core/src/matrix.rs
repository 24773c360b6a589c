//! Dense matrices over [`Scalar`] with rank, kernel and span routines.
//!
//! Exact-mode decisions are exact; float-mode decisions go through a
//! [`RankPolicy`] (relative threshold against the largest singular value by
//! default). A matrix is treated as float as soon as any entry is float.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::Error;
use crate::scalar::Scalar;

/// What the float rank threshold is relative to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TolBasis {
    SingularValue,
    MaxEntry,
}

/// Tolerance policy for float-mode rank/zero decisions.
#[derive(Clone, Copy, Debug)]
pub struct RankPolicy {
    /// Relative threshold for treating a singular value or pivot as zero.
    pub rel_tol: f64,
    pub basis: TolBasis,
    /// Relative residual accepted when deciding span membership in float mode.
    pub residual_tol: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            rel_tol: 1e-9,
            basis: TolBasis::SingularValue,
            residual_tol: 1e-8,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major, len = rows * cols
}

impl std::fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        DenseMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        DenseMatrix {
            rows: nr,
            cols: nc,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// e_{ij} in M_n.
    pub fn matrix_unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn scalar_matrix(n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// True when every entry is an exact Gaussian rational.
    pub fn is_exact_mode(&self) -> bool {
        self.entries.iter().all(Scalar::is_exact)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(Scalar::abs).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + k, j * other.cols + l, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj_transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Row-major flattening.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.sub(other).max_abs()
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).to_complex())
    }

    /// Matrix rank. Exact mode: Gaussian elimination over ℚ(i). Float mode:
    /// singular values (or elimination pivots, per policy) above the relative
    /// threshold.
    pub fn rank(&self, policy: &RankPolicy) -> usize {
        if self.rows == 0 || self.cols == 0 || self.is_zero() {
            return 0;
        }
        if self.is_exact_mode() {
            return rref(&row_vecs(self), 0.0).pivots.len();
        }
        match policy.basis {
            TolBasis::SingularValue => {
                let svd = self.to_nalgebra().svd(false, false);
                let smax = svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s));
                let tau = policy.rel_tol * smax;
                svd.singular_values.iter().filter(|&&s| s > tau).count()
            }
            TolBasis::MaxEntry => {
                let tau = policy.rel_tol * self.max_abs();
                rref(&row_vecs(self), tau).pivots.len()
            }
        }
    }

    /// Basis of the right null space; empty iff rank = cols.
    pub fn kernel_basis(&self, policy: &RankPolicy) -> Vec<Vec<Scalar>> {
        if self.cols == 0 {
            return vec![];
        }
        let thresh = if self.is_exact_mode() {
            0.0
        } else {
            let base = match policy.basis {
                TolBasis::SingularValue => {
                    let svd = self.to_nalgebra().svd(false, false);
                    svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s))
                }
                TolBasis::MaxEntry => self.max_abs(),
            };
            policy.rel_tol * base
        };
        let r = rref(&row_vecs(self), thresh);
        let pivot_cols: Vec<usize> = r.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for &(pr, pc) in &r.pivots {
                v[pc] = -&r.rows[pr][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Pivot columns of a row-reduction; a maximal independent subset of
    /// columns, taken greedily left to right.
    pub fn independent_columns(&self, policy: &RankPolicy) -> Vec<usize> {
        let thresh = if self.is_exact_mode() {
            0.0
        } else {
            policy.rel_tol * self.max_abs()
        };
        rref(&row_vecs(self), thresh)
            .pivots
            .iter()
            .map(|&(_, c)| c)
            .collect()
    }
}

struct Rref {
    rows: Vec<Vec<Scalar>>,
    /// (row, col) of each pivot, in order.
    pivots: Vec<(usize, usize)>,
}

fn row_vecs(m: &DenseMatrix) -> Vec<Vec<Scalar>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect())
        .collect()
}

fn negligible(s: &Scalar, thresh: f64) -> bool {
    if thresh == 0.0 && s.is_exact() {
        s.is_zero()
    } else {
        s.abs() <= thresh
    }
}

/// Reduced row echelon form by Gauss-Jordan elimination with partial
/// pivoting. `thresh = 0` gives exact decisions over ℚ(i).
fn rref(input: &[Vec<Scalar>], thresh: f64) -> Rref {
    let mut rows: Vec<Vec<Scalar>> = input.to_vec();
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut lead = 0usize;
    for col in 0..nc {
        if lead >= nr {
            break;
        }
        // partial pivoting by modulus
        let best = (lead..nr)
            .max_by(|&a, &b| {
                rows[a][col]
                    .abs()
                    .partial_cmp(&rows[b][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if negligible(&rows[best][col], thresh) {
            continue;
        }
        rows.swap(lead, best);
        let inv = rows[lead][col].recip().expect("pivot not invertible");
        for c in col..nc {
            rows[lead][c] = &rows[lead][c] * &inv;
        }
        for r in 0..nr {
            if r == lead || negligible(&rows[r][col], thresh) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..nc {
                let v = &rows[r][c] - &(&factor * &rows[lead][c]);
                rows[r][c] = v;
            }
        }
        pivots.push((lead, col));
        lead += 1;
    }
    Rref { rows, pivots }
}

/// Expresses `target` in the span of `basis`, returning the unique
/// coefficient list, or `Err(NotInSpan)`.
///
/// Callers guarantee the basis is linearly independent; this is checked in
/// debug builds.
pub fn coordinates_in_span(
    basis: &[Vec<Scalar>],
    target: &[Scalar],
    policy: &RankPolicy,
) -> Result<Vec<Scalar>, Error> {
    if basis.is_empty() {
        return if target.iter().all(Scalar::is_zero)
            || target.iter().map(Scalar::abs).fold(0.0, f64::max) <= policy.residual_tol
        {
            Ok(vec![])
        } else {
            Err(Error::NotInSpan)
        };
    }
    let dim = basis[0].len();
    assert!(basis.iter().all(|v| v.len() == dim), "ragged basis");
    assert_eq!(target.len(), dim, "target length mismatch");
    // columns = basis vectors
    let a = DenseMatrix::from_fn(dim, basis.len(), |r, c| basis[c][r].clone());
    debug_assert_eq!(a.rank(policy), basis.len(), "basis not independent");
    let exact = a.is_exact_mode() && target.iter().all(Scalar::is_exact);
    if exact {
        // augmented elimination
        let mut aug: Vec<Vec<Scalar>> = (0..dim)
            .map(|r| {
                let mut row: Vec<Scalar> = basis.iter().map(|b| b[r].clone()).collect();
                row.push(target[r].clone());
                row
            })
            .collect();
        let r = rref(&std::mem::take(&mut aug), 0.0);
        let k = basis.len();
        if r.pivots.iter().any(|&(_, c)| c == k) {
            return Err(Error::NotInSpan);
        }
        let mut coeffs = vec![Scalar::zero(); k];
        for &(pr, pc) in &r.pivots {
            coeffs[pc] = r.rows[pr][k].clone();
        }
        Ok(coeffs)
    } else {
        let an = a.to_nalgebra();
        let t = DMatrix::from_fn(dim, 1, |r, _| target[r].to_complex());
        let svd = an.clone().svd(true, true);
        let smax = svd.singular_values.iter().fold(0.0_f64, |acc, &s| acc.max(s));
        let sol = svd
            .solve(&t, policy.rel_tol * smax.max(1.0))
            .map_err(|_| Error::NotInSpan)?;
        let resid = (&an * &sol - &t).norm();
        let scale = t.norm().max(1.0);
        if resid > policy.residual_tol * scale {
            return Err(Error::NotInSpan);
        }
        Ok((0..basis.len())
            .map(|i| Scalar::from_complex(sol[(i, 0)]))
            .collect())
    }
}
