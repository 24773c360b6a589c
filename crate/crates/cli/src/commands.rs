//! Command dispatch: every command consumes a scenario and produces a
//! fixed-schema report plus a process exit code (0 success, 2 window
//! budget exhausted, 1 error).

use dqgm_core::{
    almost_periodic, check_nondegenerate, convolve, dual_unit, factor, slice,
    slice_space_dimension, verify_left_invariance, verify_mhopf_axioms, AlmostPeriodicVerdict,
    BlockIndex, Element, Error, Leg, RankPolicy, Scalar, Surjectivity,
    TensorMultiplier,
};
use rand::Rng;
use rand::SeedableRng;
use serde_json::json;

use crate::report::{element_table, multiplier_view, FactorPair, Report};
use crate::scenario::{Scenario, ScenarioError};

pub struct Settings {
    pub window_budget: usize,
    pub patience: usize,
    pub tolerance: f64,
    pub seed: u64,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

pub fn run(command: &str, scenario: &Scenario, settings: &Settings) -> (Report, i32) {
    let result = match command {
        "verify-axioms" => verify_axioms(scenario, settings),
        "verify-invariance" => verify_invariance(scenario, settings),
        "convolve" => convolve_cmd(scenario, settings),
        "dual-unit" => dual_unit_cmd(scenario, settings),
        "slice" => slice_cmd(scenario, settings),
        "slice-dim" => slice_dim(scenario, settings),
        "factor" => factor_cmd(scenario, settings),
        "almost-periodic" => almost_periodic_cmd(scenario, settings),
        "check-nondegenerate" => check_nondegenerate_cmd(scenario, settings),
        other => Err(ScenarioError::Validation(format!(
            "unknown command `{other}`"
        ))),
    };
    match result {
        Ok(pair) => pair,
        Err(e) => (
            Report::error(command, scenario.mode_name(), e.to_string()),
            EXIT_ERROR,
        ),
    }
}

type CmdResult = Result<(Report, i32), ScenarioError>;

fn policy() -> RankPolicy {
    RankPolicy::default()
}

fn level_param(scenario: &Scenario, key: &str, default: u32) -> Result<u32, ScenarioError> {
    Ok(scenario.param_u64(key)?.map(|v| v as u32).unwrap_or(default))
}

/// The tensor input of slice-dim / factor: a named tensor object, or the
/// coproduct of a named multiplier.
fn tensor_input(scenario: &Scenario) -> Result<TensorMultiplier, ScenarioError> {
    if let Some(name) = scenario.param_str("tensor")? {
        return Ok(scenario.tensor(name)?.clone());
    }
    if let Some(name) = scenario.param_str("multiplier")? {
        let x = scenario.multiplier(name)?.clone();
        return Ok(scenario.dqg()?.coproduct_of_multiplier(&x));
    }
    Err(ScenarioError::Validation(
        "params must name a `tensor` or a `multiplier`".to_string(),
    ))
}

fn verify_axioms(scenario: &Scenario, _settings: &Settings) -> CmdResult {
    let dqg = scenario.dqg()?;
    let default_level = if dqg.algebra().is_finite() { 0 } else { 1 };
    let window = dqg.algebra().window(level_param(scenario, "window_level", default_level)?);
    let inner = dqg.algebra().window(level_param(scenario, "inner_level", 0)?);
    let report = verify_mhopf_axioms(dqg, &window, &inner, &policy());
    let surj = |s: &Surjectivity| match s {
        Surjectivity::Exact(ok) => json!({ "kind": "exact", "passed": ok }),
        Surjectivity::Probe { attempted, solved } => {
            json!({ "kind": "probe", "attempted": attempted, "solved": solved })
        }
    };
    let mut out = Report::new("verify-axioms", scenario.mode_name());
    out.verdict = if report.passed() { "pass" } else { "fail" }.to_string();
    out.details = Some(json!({
        "window": window.iter().map(|i| format!("{i}")).collect::<Vec<_>>(),
        "window_relative": report.window_relative,
        "t1": { "injective": report.t1.injective, "surjectivity": surj(&report.t1.surjectivity) },
        "t2": { "injective": report.t2.injective, "surjectivity": surj(&report.t2.surjectivity) },
        "t1_flipped": { "injective": report.t1_flipped.injective, "surjectivity": surj(&report.t1_flipped.surjectivity) },
        "t2_flipped": { "injective": report.t2_flipped.injective, "surjectivity": surj(&report.t2_flipped.surjectivity) },
        "commutation_ok": report.commutation_ok,
    }));
    let code = if report.passed() { EXIT_OK } else { EXIT_ERROR };
    Ok((out, code))
}

fn random_element(scenario: &Scenario, rng: &mut impl Rng) -> Element {
    let window = match &scenario.dqg {
        Some(d) => d.verification_window(),
        None => scenario.algebra.window(0),
    };
    let mut e = Element::zero(&scenario.algebra);
    for _ in 0..3 {
        let idx = window[rng.gen_range(0..window.len())].clone();
        let n = scenario.algebra.block_dim(&idx);
        let m = dqgm_core::DenseMatrix::from_fn(n, n, |_, _| {
            Scalar::from_int(rng.gen_range(-5..=5))
        });
        e = e
            .add(&Element::from_blocks(&scenario.algebra, [(idx, m)]))
            .unwrap();
    }
    e
}

fn verify_invariance(scenario: &Scenario, settings: &Settings) -> CmdResult {
    let dqg = scenario.dqg()?;
    let window = match scenario.param_u64("window_level")? {
        Some(l) => dqg.algebra().window(l as u32),
        None => dqg.verification_window(),
    };
    let mut elements: Vec<Element> = Vec::new();
    match scenario.param_str_list("elements")? {
        Some(names) => {
            for n in &names {
                elements.push(scenario.element(n)?.clone());
            }
        }
        None => {
            let samples = scenario.param_u64("samples")?.unwrap_or(10) as usize;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(settings.seed);
            for _ in 0..samples {
                elements.push(random_element(scenario, &mut rng));
            }
        }
    }
    let mut all_ok = true;
    let mut max_dev = 0.0_f64;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for e in &elements {
        let r = verify_left_invariance(dqg, e, &window);
        all_ok &= r.ok;
        max_dev = max_dev.max(r.max_deviation);
        checked += r.checked_blocks.len();
        skipped += r.skipped_blocks.len();
    }
    let mut out = Report::new("verify-invariance", scenario.mode_name());
    out.verdict = if all_ok { "pass" } else { "fail" }.to_string();
    out.details = Some(json!({
        "elements": elements.len(),
        "max_deviation": max_dev,
        "checked_blocks": checked,
        "skipped_blocks": skipped,
    }));
    let code = if all_ok { EXIT_OK } else { EXIT_ERROR };
    Ok((out, code))
}

fn convolve_cmd(scenario: &Scenario, _settings: &Settings) -> CmdResult {
    let dqg = scenario.dqg()?;
    let left = scenario.param_str("left")?.ok_or_else(|| {
        ScenarioError::Validation("params.left must name a functional".to_string())
    })?;
    let right = scenario.param_str("right")?.ok_or_else(|| {
        ScenarioError::Validation("params.right must name a functional".to_string())
    })?;
    let l = scenario.functional(left)?;
    let r = scenario.functional(right)?;
    let conv = convolve(l, r, dqg)
        .map_err(|e| ScenarioError::Validation(e.to_string()))?;
    let mut out = Report::new("convolve", scenario.mode_name());
    out.verdict = "ok".to_string();
    out.details = Some(json!({
        "representative": element_table(conv.representative()),
        "side": "left_of_phi",
    }));
    Ok((out, EXIT_OK))
}

fn dual_unit_cmd(scenario: &Scenario, _settings: &Settings) -> CmdResult {
    let dqg = scenario.dqg()?;
    match dual_unit(dqg) {
        Ok(u) => {
            let mut out = Report::new("dual-unit", scenario.mode_name());
            out.verdict = "ok".to_string();
            out.details = Some(json!({
                "representative": element_table(u.representative()),
            }));
            Ok((out, EXIT_OK))
        }
        Err(e) => Ok((
            Report::error("dual-unit", scenario.mode_name(), e.to_string()),
            EXIT_ERROR,
        )),
    }
}

fn slice_cmd(scenario: &Scenario, _settings: &Settings) -> CmdResult {
    let tensor_name = scenario.param_str("tensor")?.ok_or_else(|| {
        ScenarioError::Validation("params.tensor must name a tensor multiplier".to_string())
    })?;
    let func_name = scenario.param_str("functional")?.ok_or_else(|| {
        ScenarioError::Validation("params.functional must name a functional".to_string())
    })?;
    let y = scenario.tensor(tensor_name)?;
    let xi = scenario.functional(func_name)?;
    let leg = match scenario.param_str("leg")?.unwrap_or("right") {
        "left" => Leg::Left,
        "right" => Leg::Right,
        other => {
            return Err(ScenarioError::Validation(format!(
                "unknown leg `{other}` (use \"left\" or \"right\")"
            )))
        }
    };
    let s = slice(y, xi, leg);
    let default_level = if s.algebra().is_finite() { 0 } else { 1 };
    let window = s
        .algebra()
        .window(level_param(scenario, "table_level", default_level)?);
    let mut out = Report::new("slice", scenario.mode_name());
    out.verdict = "ok".to_string();
    out.details = Some(json!({
        "result": multiplier_view(&s, &window),
    }));
    Ok((out, EXIT_OK))
}

fn slice_dim(scenario: &Scenario, settings: &Settings) -> CmdResult {
    let y = tensor_input(scenario)?;
    let mut out = Report::new("slice-dim", scenario.mode_name());
    match slice_space_dimension(
        &y,
        &scenario.haar,
        settings.window_budget,
        settings.patience,
        &policy(),
    ) {
        Ok(report) => {
            out.verdict = "stabilized".to_string();
            out.dimension = Some(report.dimension);
            out.history = Some(report.history);
            out.details = Some(json!({
                "level": report.level,
                "window": report.b_window.iter().map(|i| format!("{i}")).collect::<Vec<_>>(),
                "note": "stabilization is a window-relative certificate, not a proof",
            }));
            Ok((out, EXIT_OK))
        }
        Err(Error::BudgetExceeded { budget, history }) => {
            out.verdict = "budget-exhausted".to_string();
            out.history = Some(history);
            out.errors.push(format!(
                "window budget of {budget} expansions exhausted without stabilization"
            ));
            Ok((out, EXIT_BUDGET))
        }
        Err(e) => Ok((
            Report::error("slice-dim", scenario.mode_name(), e.to_string()),
            EXIT_ERROR,
        )),
    }
}

fn factor_pairs(scenario: &Scenario, f: &dqgm_core::Factorization) -> Vec<FactorPair> {
    let b_window = &f.report.b_window;
    let a_level = f.report.level as u32;
    let a_window = scenario.algebra.window(a_level);
    f.terms
        .iter()
        .map(|(x, y)| FactorPair {
            left: multiplier_view(x, b_window),
            right: multiplier_view(y, &a_window),
        })
        .collect()
}

fn factor_cmd(scenario: &Scenario, settings: &Settings) -> CmdResult {
    let y = tensor_input(scenario)?;
    let mut out = Report::new("factor", scenario.mode_name());
    match factor(
        &y,
        &scenario.haar,
        settings.window_budget,
        settings.patience,
        &policy(),
        settings.tolerance,
    ) {
        Ok(f) => {
            out.verdict = "factored".to_string();
            out.dimension = Some(f.terms.len());
            out.history = Some(f.report.history.clone());
            out.factors = Some(factor_pairs(scenario, &f));
            out.details = Some(json!({
                "max_reconstruction_error": f.max_error,
                "level": f.report.level,
            }));
            Ok((out, EXIT_OK))
        }
        Err(Error::BudgetExceeded { budget, history }) => {
            out.verdict = "budget-exhausted".to_string();
            out.history = Some(history);
            out.errors.push(format!(
                "window budget of {budget} expansions exhausted without stabilization"
            ));
            Ok((out, EXIT_BUDGET))
        }
        Err(e) => Ok((
            Report::error("factor", scenario.mode_name(), e.to_string()),
            EXIT_ERROR,
        )),
    }
}

fn almost_periodic_cmd(scenario: &Scenario, settings: &Settings) -> CmdResult {
    let name = scenario.param_str("multiplier")?.ok_or_else(|| {
        ScenarioError::Validation("params.multiplier must name a multiplier".to_string())
    })?;
    let x = scenario.multiplier(name)?;
    let dqg = scenario.dqg()?;
    let mut out = Report::new("almost-periodic", scenario.mode_name());
    match almost_periodic(
        x,
        dqg,
        settings.window_budget,
        settings.patience,
        &policy(),
        settings.tolerance,
    ) {
        Ok(AlmostPeriodicVerdict::AlmostPeriodic(f)) => {
            out.verdict = "affirmative".to_string();
            out.dimension = Some(f.terms.len());
            out.history = Some(f.report.history.clone());
            out.factors = Some(factor_pairs(scenario, &f));
            out.details = Some(json!({
                "max_reconstruction_error": f.max_error,
            }));
            Ok((out, EXIT_OK))
        }
        Ok(AlmostPeriodicVerdict::Undecided { budget, history }) => {
            out.verdict = "undecided".to_string();
            out.history = Some(history);
            out.errors.push(format!(
                "slice span still growing after {budget} window expansions"
            ));
            Ok((out, EXIT_BUDGET))
        }
        Err(e) => Ok((
            Report::error("almost-periodic", scenario.mode_name(), e.to_string()),
            EXIT_ERROR,
        )),
    }
}

fn check_nondegenerate_cmd(scenario: &Scenario, _settings: &Settings) -> CmdResult {
    let level = level_param(scenario, "window_level", 0)?;
    let window: Vec<BlockIndex> = scenario.algebra.window(level);
    let ok = check_nondegenerate(&scenario.algebra, &window, &policy());
    let mut out = Report::new("check-nondegenerate", scenario.mode_name());
    out.verdict = if ok { "pass" } else { "fail" }.to_string();
    out.details = Some(json!({
        "window": window.iter().map(|i| format!("{i}")).collect::<Vec<_>>(),
        "window_relative": !scenario.algebra.is_finite(),
    }));
    let code = if ok { EXIT_OK } else { EXIT_ERROR };
    Ok((out, code))
}
