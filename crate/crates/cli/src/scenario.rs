//! Scenario documents: one JSON file declaring the model, named objects
//! and command parameters. Parsing is strict (unknown fields rejected) and
//! validation resolves every name against the declared model.

use std::collections::BTreeMap;
use std::fmt;

use dqgm_core::{
    BlockAlgebra, BlockIndex, BlockRule, DQGDescriptor, DenseMatrix, Element, GroupModel,
    HaarData, IndexModel, IntFormula, IntTerm, Multiplier, ReducedFunctional, Scalar, ScalarMode,
    TableDefault, TensorMultiplier,
};
use serde::Deserialize;

#[derive(Debug)]
pub enum ScenarioError {
    Parse(String),
    Validation(String),
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Parse(m) => write!(f, "parse error: {m}"),
            ScenarioError::Validation(m) => write!(f, "validation error: {m}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation(msg.into())
}

// ---------- raw document ----------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    scalar_mode: String,
    model: ModelSpec,
    #[serde(default)]
    b_model: Option<ModelSpec>,
    #[serde(default)]
    haar_scale: Option<ScalarSpec>,
    #[serde(default)]
    objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    params: BTreeMap<String, serde_json::Value>,
}

#[derive(Deserialize, Clone)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ModelSpec {
    DualOfGroup { group: GroupSpec },
    DualOfSu2 { max_spin_index: u64 },
    Finite { dims: Vec<usize> },
}

#[derive(Deserialize, Clone)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
enum GroupSpec {
    Integers,
    IntegerPairs,
    Cyclic { n: usize },
    Symmetric { n: usize },
    FreeWords { generators: usize },
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum ObjectSpec {
    Multiplier {
        rule: RuleSpec,
        #[serde(default)]
        algebra: Option<String>,
    },
    Element {
        blocks: Vec<BlockEntry>,
        #[serde(default)]
        algebra: Option<String>,
    },
    Functional {
        representative: Vec<BlockEntry>,
        #[serde(default)]
        side: Option<String>,
    },
    /// Σ_k left_k ⊗ right_k over named multipliers.
    TensorSum { terms: Vec<(String, String)> },
    /// δ(x) for a named multiplier x.
    Coproduct { of: String },
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct BlockEntry {
    block: serde_json::Value,
    #[serde(default)]
    matrix: Option<Vec<Vec<ScalarSpec>>>,
    #[serde(default)]
    value: Option<ScalarSpec>,
}

#[derive(Deserialize, Clone)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RuleSpec {
    Identity,
    Zero,
    IntFormula { terms: Vec<TermSpec> },
    Table {
        entries: Vec<BlockEntry>,
        #[serde(default)]
        default: Option<String>,
    },
    Scaled { coeff: ScalarSpec, inner: Box<RuleSpec> },
    Sum { rules: Vec<RuleSpec> },
}

// no deny_unknown_fields here: serde forbids it alongside #[serde(flatten)]
#[derive(Deserialize, Clone)]
struct TermSpec {
    #[serde(default)]
    coeff: Option<ScalarSpec>,
    #[serde(flatten)]
    term: TermKind,
}

#[derive(Deserialize, Clone)]
#[serde(tag = "term", rename_all = "snake_case", deny_unknown_fields)]
enum TermKind {
    /// n ↦ n^exponent.
    Power { exponent: u32 },
    /// n ↦ ζ^{step·n} with ζ of the given order.
    Character {
        order: u32,
        #[serde(default)]
        step: Option<i64>,
    },
    /// n ↦ e^{i·angle·n}.
    CharacterAngle { angle: f64 },
    /// n ↦ [n = at].
    PointMass { at: i64 },
}

#[derive(Deserialize, Clone)]
#[serde(untagged)]
enum ScalarSpec {
    Int(i64),
    Float(f64),
    Ratio(String),
    Complex { re: Box<ScalarSpec>, im: Box<ScalarSpec> },
}

// ---------- resolved scenario ----------

pub enum Object {
    Multiplier(Multiplier),
    Element(Element),
    Functional(ReducedFunctional),
    Tensor(TensorMultiplier),
}

pub struct Scenario {
    pub mode: ScalarMode,
    pub algebra: BlockAlgebra,
    pub b_algebra: BlockAlgebra,
    pub dqg: Option<DQGDescriptor>,
    pub haar: HaarData,
    pub objects: BTreeMap<String, Object>,
    pub params: BTreeMap<String, serde_json::Value>,
}

impl Scenario {
    pub fn load(text: &str) -> Result<Scenario, ScenarioError> {
        let doc: ScenarioDoc =
            serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        resolve(doc)
    }

    pub fn mode_name(&self) -> &'static str {
        match self.mode {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        }
    }

    pub fn object(&self, name: &str) -> Result<&Object, ScenarioError> {
        self.objects
            .get(name)
            .ok_or_else(|| invalid(format!("undefined object `{name}`")))
    }

    pub fn multiplier(&self, name: &str) -> Result<&Multiplier, ScenarioError> {
        match self.object(name)? {
            Object::Multiplier(m) => Ok(m),
            _ => Err(invalid(format!("object `{name}` is not a multiplier"))),
        }
    }

    pub fn element(&self, name: &str) -> Result<&Element, ScenarioError> {
        match self.object(name)? {
            Object::Element(e) => Ok(e),
            _ => Err(invalid(format!("object `{name}` is not an element"))),
        }
    }

    pub fn functional(&self, name: &str) -> Result<&ReducedFunctional, ScenarioError> {
        match self.object(name)? {
            Object::Functional(f) => Ok(f),
            _ => Err(invalid(format!("object `{name}` is not a functional"))),
        }
    }

    pub fn tensor(&self, name: &str) -> Result<&TensorMultiplier, ScenarioError> {
        match self.object(name)? {
            Object::Tensor(t) => Ok(t),
            _ => Err(invalid(format!("object `{name}` is not a tensor multiplier"))),
        }
    }

    pub fn dqg(&self) -> Result<&DQGDescriptor, ScenarioError> {
        self.dqg
            .as_ref()
            .ok_or_else(|| invalid("this command needs fusion data; a plain finite model has none"))
    }

    pub fn param_u64(&self, key: &str) -> Result<Option<u64>, ScenarioError> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .ok_or_else(|| invalid(format!("param `{key}` must be a non-negative integer"))),
        }
    }

    pub fn param_str(&self, key: &str) -> Result<Option<&str>, ScenarioError> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_str()
                .map(Some)
                .ok_or_else(|| invalid(format!("param `{key}` must be a string"))),
        }
    }

    pub fn param_str_list(&self, key: &str) -> Result<Option<Vec<String>>, ScenarioError> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => {
                let arr = v
                    .as_array()
                    .ok_or_else(|| invalid(format!("param `{key}` must be a list of strings")))?;
                arr.iter()
                    .map(|x| {
                        x.as_str()
                            .map(str::to_owned)
                            .ok_or_else(|| invalid(format!("param `{key}` must be a list of strings")))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(Some)
            }
        }
    }
}

pub fn load(text: &str) -> Result<Scenario, ScenarioError> {
    Scenario::load(text)
}

fn resolve(doc: ScenarioDoc) -> Result<Scenario, ScenarioError> {
    let mode = match doc.scalar_mode.as_str() {
        "exact" => ScalarMode::Exact,
        "float" => ScalarMode::Float,
        other => return Err(invalid(format!("unknown scalar_mode `{other}`"))),
    };
    let (algebra, dqg) = build_model(&doc.model)?;
    let (b_algebra, _) = match &doc.b_model {
        Some(spec) => build_model(spec)?,
        None => (algebra.clone(), None),
    };
    let mut haar = match &dqg {
        Some(d) => d.haar().clone(),
        None => HaarData::uniform(&algebra),
    };
    if let Some(spec) = &doc.haar_scale {
        haar = haar.rescaled(&scalar(spec, mode)?);
    }
    let dqg = match (dqg, &doc.haar_scale) {
        (Some(d), Some(_)) => Some(d.with_haar(haar.clone())),
        (d, _) => d,
    };

    let mut scenario = Scenario {
        mode,
        algebra,
        b_algebra,
        dqg,
        haar,
        objects: BTreeMap::new(),
        params: doc.params,
    };

    // multipliers, elements and functionals first; tensors reference them
    for (name, spec) in &doc.objects {
        let obj = match spec {
            ObjectSpec::Multiplier { rule, algebra } => {
                let alg = pick_algebra(&scenario, algebra.as_deref(), name)?;
                Object::Multiplier(Multiplier::new(&alg, build_rule(rule, &alg, mode)?))
            }
            ObjectSpec::Element { blocks, algebra } => {
                let alg = pick_algebra(&scenario, algebra.as_deref(), name)?;
                Object::Element(build_element(blocks, &alg, mode)?)
            }
            ObjectSpec::Functional { representative, side } => {
                let rep = build_element(representative, &scenario.algebra, mode)?;
                let f = match side.as_deref().unwrap_or("left_of_phi") {
                    "left_of_phi" => ReducedFunctional::left_of_phi(&scenario.haar, rep),
                    "right_of_phi" => ReducedFunctional::right_of_phi(&scenario.haar, rep),
                    other => {
                        return Err(invalid(format!(
                            "functional `{name}`: unknown side `{other}`"
                        )))
                    }
                };
                Object::Functional(f)
            }
            ObjectSpec::TensorSum { .. } | ObjectSpec::Coproduct { .. } => continue,
        };
        scenario.objects.insert(name.clone(), obj);
    }
    for (name, spec) in &doc.objects {
        let obj = match spec {
            ObjectSpec::TensorSum { terms } => {
                let mut resolved = Vec::new();
                for (l, r) in terms {
                    let lm = scenario.multiplier(l)?.clone();
                    let rm = scenario.multiplier(r)?.clone();
                    if lm.algebra() != &scenario.b_algebra || rm.algebra() != &scenario.algebra {
                        return Err(invalid(format!(
                            "tensor `{name}`: term ({l}, {r}) does not match (b_model, model)"
                        )));
                    }
                    resolved.push((lm, rm));
                }
                if resolved.is_empty() {
                    return Err(invalid(format!("tensor `{name}` has no terms")));
                }
                Object::Tensor(TensorMultiplier::sum_of_elementary(resolved))
            }
            ObjectSpec::Coproduct { of } => {
                let x = scenario.multiplier(of)?.clone();
                Object::Tensor(scenario.dqg()?.coproduct_of_multiplier(&x))
            }
            _ => continue,
        };
        scenario.objects.insert(name.clone(), obj);
    }
    Ok(scenario)
}

fn pick_algebra(
    scenario: &Scenario,
    which: Option<&str>,
    name: &str,
) -> Result<BlockAlgebra, ScenarioError> {
    match which.unwrap_or("a") {
        "a" => Ok(scenario.algebra.clone()),
        "b" => Ok(scenario.b_algebra.clone()),
        other => Err(invalid(format!(
            "object `{name}`: unknown algebra tag `{other}` (use \"a\" or \"b\")"
        ))),
    }
}

fn build_model(spec: &ModelSpec) -> Result<(BlockAlgebra, Option<DQGDescriptor>), ScenarioError> {
    match spec {
        ModelSpec::DualOfGroup { group } => {
            let g = match group {
                GroupSpec::Integers => GroupModel::Integers,
                GroupSpec::IntegerPairs => GroupModel::IntegerPairs,
                GroupSpec::Cyclic { n } => {
                    if *n == 0 {
                        return Err(invalid("cyclic group order must be positive"));
                    }
                    GroupModel::cyclic(*n)
                }
                GroupSpec::Symmetric { n } => {
                    if *n == 0 || *n > 5 {
                        return Err(invalid("symmetric group degree must be between 1 and 5"));
                    }
                    GroupModel::symmetric(*n)
                }
                GroupSpec::FreeWords { generators } => GroupModel::FreeWords {
                    generators: *generators,
                },
            };
            let dqg = DQGDescriptor::dual_of_group(g);
            Ok((dqg.algebra().clone(), Some(dqg)))
        }
        ModelSpec::DualOfSu2 { max_spin_index } => {
            let dqg = DQGDescriptor::dual_of_su2(*max_spin_index);
            Ok((dqg.algebra().clone(), Some(dqg)))
        }
        ModelSpec::Finite { dims } => {
            if dims.is_empty() || dims.iter().any(|&d| d == 0) {
                return Err(invalid("finite model needs positive block dimensions"));
            }
            Ok((BlockAlgebra::finite(dims.clone()), None))
        }
    }
}

fn scalar(spec: &ScalarSpec, mode: ScalarMode) -> Result<Scalar, ScenarioError> {
    match spec {
        ScalarSpec::Int(n) => Ok(match mode {
            ScalarMode::Exact => Scalar::from_int(*n),
            ScalarMode::Float => Scalar::float(*n as f64, 0.0),
        }),
        ScalarSpec::Float(x) => match mode {
            ScalarMode::Float => Ok(Scalar::float(*x, 0.0)),
            ScalarMode::Exact => Err(invalid(format!(
                "float literal {x} is not allowed in exact mode; write an integer or \"p/q\""
            ))),
        },
        ScalarSpec::Ratio(s) => parse_ratio(s, mode),
        ScalarSpec::Complex { re, im } => {
            let re = scalar(re, mode)?;
            let im = scalar(im, mode)?;
            Ok(&re + &(&Scalar::i() * &im))
        }
    }
}

fn parse_ratio(s: &str, mode: ScalarMode) -> Result<Scalar, ScenarioError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: i64 = num
        .parse()
        .map_err(|_| invalid(format!("cannot parse `{s}` as a rational")))?;
    let den: i64 = den
        .parse()
        .map_err(|_| invalid(format!("cannot parse `{s}` as a rational")))?;
    if den == 0 {
        return Err(invalid(format!("zero denominator in `{s}`")));
    }
    Ok(match mode {
        ScalarMode::Exact => Scalar::from_ratio(num, den),
        ScalarMode::Float => Scalar::float(num as f64 / den as f64, 0.0),
    })
}

/// Parses a block label against the algebra's index model.
pub fn block_index(
    v: &serde_json::Value,
    algebra: &BlockAlgebra,
) -> Result<BlockIndex, ScenarioError> {
    let idx = match algebra.model() {
        IndexModel::Group(GroupModel::Integers) => BlockIndex::Int(
            v.as_i64()
                .ok_or_else(|| invalid(format!("block label {v} must be an integer")))?,
        ),
        IndexModel::Group(GroupModel::IntegerPairs) => {
            let arr = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| invalid(format!("block label {v} must be a pair [a, b]")))?;
            BlockIndex::Pair(
                arr[0].as_i64().ok_or_else(|| invalid("pair entries must be integers"))?,
                arr[1].as_i64().ok_or_else(|| invalid("pair entries must be integers"))?,
            )
        }
        IndexModel::Group(GroupModel::FreeWords { .. }) => {
            let arr = v
                .as_array()
                .ok_or_else(|| invalid(format!("block label {v} must be a letter list")))?;
            let letters = arr
                .iter()
                .map(|x| {
                    x.as_i64()
                        .map(|n| n as i32)
                        .ok_or_else(|| invalid("word letters must be integers"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            BlockIndex::Word(letters)
        }
        IndexModel::Group(GroupModel::FiniteCayley { .. }) | IndexModel::Finite { .. } => {
            BlockIndex::Fin(
                v.as_u64()
                    .ok_or_else(|| invalid(format!("block label {v} must be a non-negative index")))?
                    as usize,
            )
        }
        IndexModel::SpinLabels => BlockIndex::Nat(
            v.as_u64()
                .ok_or_else(|| invalid(format!("block label {v} must be a non-negative integer")))?,
        ),
    };
    if !algebra.contains(&idx) {
        return Err(invalid(format!("block label {v} is outside the model")));
    }
    Ok(idx)
}

fn build_element(
    blocks: &[BlockEntry],
    algebra: &BlockAlgebra,
    mode: ScalarMode,
) -> Result<Element, ScenarioError> {
    let mut resolved = Vec::new();
    for entry in blocks {
        let idx = block_index(&entry.block, algebra)?;
        let dim = algebra.block_dim(&idx);
        let m = match (&entry.matrix, &entry.value) {
            (Some(rows), None) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(invalid(format!(
                        "matrix for block {:?} must be {dim}×{dim}",
                        idx
                    )));
                }
                DenseMatrix::from_fn(dim, dim, |r, c| {
                    scalar(&rows[r][c], mode).unwrap_or_else(|_| Scalar::zero())
                })
            }
            (None, Some(v)) => {
                if dim != 1 {
                    return Err(invalid(format!(
                        "block {:?} has dimension {dim}; give a full matrix",
                        idx
                    )));
                }
                DenseMatrix::scalar_matrix(1, &scalar(v, mode)?)
            }
            _ => {
                return Err(invalid(format!(
                    "block {:?} needs exactly one of `matrix` or `value`",
                    idx
                )))
            }
        };
        // surface scalar parse failures hidden by the from_fn fallback
        if let Some(rows) = &entry.matrix {
            for row in rows {
                for s in row {
                    scalar(s, mode)?;
                }
            }
        }
        resolved.push((idx, m));
    }
    Ok(Element::from_blocks(algebra, resolved))
}

fn build_rule(
    spec: &RuleSpec,
    algebra: &BlockAlgebra,
    mode: ScalarMode,
) -> Result<BlockRule, ScenarioError> {
    Ok(match spec {
        RuleSpec::Identity => BlockRule::Identity,
        RuleSpec::Zero => BlockRule::Zero,
        RuleSpec::IntFormula { terms } => {
            if !matches!(algebra.model(), IndexModel::Group(GroupModel::Integers)) {
                return Err(invalid("int_formula rules need the dual-of-integers model"));
            }
            let mut out = Vec::new();
            for t in terms {
                let coeff = match &t.coeff {
                    Some(c) => scalar(c, mode)?,
                    None => Scalar::one(),
                };
                let term = match &t.term {
                    TermKind::Power { exponent } => IntTerm::Power(*exponent),
                    TermKind::Character { order, step } => {
                        let step = step.unwrap_or(1);
                        match mode {
                            ScalarMode::Exact => {
                                if *order == 0 || 4 % order != 0 {
                                    return Err(invalid(format!(
                                        "character of order {order} is not exactly representable \
                                         (orders 1, 2, 4 only); switch scalar_mode to \"float\""
                                    )));
                                }
                                let q = ((4 / *order as i64) * step).rem_euclid(4) as u8;
                                IntTerm::CharacterExact { quarter_turns: q }
                            }
                            ScalarMode::Float => IntTerm::CharacterFloat {
                                angle: std::f64::consts::TAU * step as f64 / *order as f64,
                            },
                        }
                    }
                    TermKind::CharacterAngle { angle } => match mode {
                        ScalarMode::Float => IntTerm::CharacterFloat { angle: *angle },
                        ScalarMode::Exact => {
                            return Err(invalid(
                                "character_angle terms need scalar_mode \"float\"",
                            ))
                        }
                    },
                    TermKind::PointMass { at } => IntTerm::PointMass(*at),
                };
                out.push((coeff, term));
            }
            BlockRule::IntFormula(IntFormula { terms: out })
        }
        RuleSpec::Table { entries, default } => {
            let default = match default.as_deref().unwrap_or("zero") {
                "zero" => TableDefault::Zero,
                "identity" => TableDefault::Identity,
                other => return Err(invalid(format!("unknown table default `{other}`"))),
            };
            let element = build_element(entries, algebra, mode)?;
            BlockRule::Table {
                entries: element
                    .blocks()
                    .map(|(i, m)| (i.clone(), m.clone()))
                    .collect(),
                default,
            }
        }
        RuleSpec::Scaled { coeff, inner } => BlockRule::Scaled(
            scalar(coeff, mode)?,
            Box::new(build_rule(inner, algebra, mode)?),
        ),
        RuleSpec::Sum { rules } => BlockRule::Sum(
            rules
                .iter()
                .map(|r| build_rule(r, algebra, mode))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    })
}
