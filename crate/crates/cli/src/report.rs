//! Fixed-schema JSON reports. Every report carries the command, scalar
//! mode, verdict and window history; `timing_ms` is the one field excluded
//! from the byte-identical determinism guarantee.

use dqgm_core::{BlockIndex, DenseMatrix, Element, Multiplier, Scalar};
use serde::Serialize;

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub scalar_mode: String,
    pub verdict: String,
    pub dimension: Option<usize>,
    pub history: Option<Vec<usize>>,
    pub factors: Option<Vec<FactorPair>>,
    pub details: Option<serde_json::Value>,
    pub errors: Vec<String>,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, scalar_mode: &str) -> Report {
        Report {
            command: command.to_string(),
            scalar_mode: scalar_mode.to_string(),
            verdict: String::new(),
            dimension: None,
            history: None,
            factors: None,
            details: None,
            errors: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn error(command: &str, scalar_mode: &str, message: String) -> Report {
        let mut r = Report::new(command, scalar_mode);
        r.verdict = "error".to_string();
        r.errors.push(message);
        r
    }
}

/// One term x_k ⊗ y_k of a factorization.
#[derive(Serialize)]
pub struct FactorPair {
    pub left: MultiplierView,
    pub right: MultiplierView,
}

/// A multiplier rendered as a window table, plus a generating rule when
/// one could be inferred (constant-ratio scalar case on integer blocks).
#[derive(Serialize)]
pub struct MultiplierView {
    pub rule: Option<String>,
    pub window_relative: bool,
    pub window_table: Vec<BlockView>,
}

#[derive(Serialize)]
pub struct BlockView {
    pub block: String,
    pub matrix: Vec<Vec<String>>,
}

pub fn scalar_string(s: &Scalar) -> String {
    format!("{s}")
}

pub fn matrix_view(m: &DenseMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| scalar_string(m.get(r, c))).collect())
        .collect()
}

pub fn element_table(e: &Element) -> Vec<BlockView> {
    e.blocks()
        .map(|(idx, m)| BlockView {
            block: format!("{idx}"),
            matrix: matrix_view(m),
        })
        .collect()
}

pub fn multiplier_view(m: &Multiplier, window: &[BlockIndex]) -> MultiplierView {
    let table = window
        .iter()
        .map(|idx| BlockView {
            block: format!("{idx}"),
            matrix: matrix_view(&m.block(idx)),
        })
        .collect();
    MultiplierView {
        rule: infer_scalar_rule(m, window),
        window_relative: !m.algebra().is_finite(),
        window_table: table,
    }
}

/// Detects v(n) = c·z^n on integer-indexed scalar blocks (the rank-one
/// character case) so reports can state a closed form next to the table.
fn infer_scalar_rule(m: &Multiplier, window: &[BlockIndex]) -> Option<String> {
    let mut values = Vec::new();
    for idx in window {
        let n = match idx {
            BlockIndex::Int(n) => *n,
            _ => return None,
        };
        let b = m.block(idx);
        if b.rows() != 1 {
            return None;
        }
        values.push((n, b.get(0, 0).clone()));
    }
    values.sort_by_key(|(n, _)| *n);
    if values.len() < 3 || values.iter().any(|(_, v)| v.is_zero()) {
        return None;
    }
    let ratio = &values[1].1 / &values[0].1;
    for pair in values.windows(2) {
        let r = &pair[1].1 / &pair[0].1;
        if r.sub_abs(&ratio) > 1e-9 {
            return None;
        }
    }
    // anchor at n = 0: c = v(n0)·z^{-n0}
    let (n0, v0) = &values[0];
    let mut c = v0.clone();
    let mut k = *n0;
    while k > 0 {
        c = &c / &ratio;
        k -= 1;
    }
    while k < 0 {
        c = &c * &ratio;
        k += 1;
    }
    Some(format!(
        "n -> ({})*({})^n",
        scalar_string(&c),
        scalar_string(&ratio)
    ))
}

trait SubAbs {
    fn sub_abs(&self, other: &Scalar) -> f64;
}

impl SubAbs for Scalar {
    fn sub_abs(&self, other: &Scalar) -> f64 {
        (self - other).abs()
    }
}
