//! Multipliers: total block maps acting as double centralizers.
//!
//! A multiplier m ∈ M(A) is represented by a rule assigning a matrix to
//! every block. Rules form a small closed language so that lazily defined
//! multipliers on infinite models stay representable; `Derived` covers
//! computed multipliers such as slices.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::block::BlockAlgebra;
use crate::algebra::element::Element;
use crate::algebra::index::BlockIndex;
use crate::error::Error;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Which side a multiplier acts on: λ(a) = ma or ρ(a) = am.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Fallback of a table rule outside its finite support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableDefault {
    Zero,
    Identity,
}

/// One term of an integer-indexed scalar formula (all blocks 1×1).
#[derive(Clone, Debug, PartialEq)]
pub enum IntTerm {
    /// n ↦ n^degree.
    Power(u32),
    /// n ↦ ζ^n with ζ = i^quarter_turns; exact Gaussian rational.
    CharacterExact { quarter_turns: u8 },
    /// n ↦ e^{i n θ}; float mode.
    CharacterFloat { angle: f64 },
    /// n ↦ [n = at].
    PointMass(i64),
}

/// A finite linear combination of integer formula terms.
#[derive(Clone, Debug, PartialEq)]
pub struct IntFormula {
    pub terms: Vec<(Scalar, IntTerm)>,
}

impl IntFormula {
    pub fn value(&self, n: i64) -> Scalar {
        let mut acc = Scalar::zero();
        for (coeff, term) in &self.terms {
            let v = match term {
                IntTerm::Power(d) => {
                    let mut p = Scalar::one();
                    for _ in 0..*d {
                        p = &p * &Scalar::from_int(n);
                    }
                    p
                }
                IntTerm::CharacterExact { quarter_turns } => {
                    Scalar::i_pow((*quarter_turns as i64) * n)
                }
                IntTerm::CharacterFloat { angle } => {
                    let t = angle * n as f64;
                    Scalar::float(t.cos(), t.sin())
                }
                IntTerm::PointMass(at) => {
                    if n == *at {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }
            };
            acc = &acc + &(coeff * &v);
        }
        acc
    }
}

#[derive(Clone)]
pub enum BlockRule {
    Identity,
    Zero,
    Table {
        entries: BTreeMap<BlockIndex, DenseMatrix>,
        default: TableDefault,
    },
    /// Scalar formula over ℤ-indexed 1×1 blocks.
    IntFormula(IntFormula),
    Scaled(Scalar, Box<BlockRule>),
    Sum(Vec<BlockRule>),
    /// Computed rule (slices, factor outputs); total by construction.
    Derived(Arc<dyn Fn(&BlockIndex, usize) -> DenseMatrix + Send + Sync>),
}

impl fmt::Debug for BlockRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockRule::Identity => write!(f, "Identity"),
            BlockRule::Zero => write!(f, "Zero"),
            BlockRule::Table { entries, default } => f
                .debug_struct("Table")
                .field("support", &entries.keys().collect::<Vec<_>>())
                .field("default", default)
                .finish(),
            BlockRule::IntFormula(formula) => write!(f, "IntFormula({:?})", formula.terms),
            BlockRule::Scaled(s, r) => write!(f, "Scaled({s}, {r:?})"),
            BlockRule::Sum(rs) => f.debug_tuple("Sum").field(rs).finish(),
            BlockRule::Derived(_) => write!(f, "Derived(..)"),
        }
    }
}

impl BlockRule {
    fn block(&self, idx: &BlockIndex, dim: usize) -> DenseMatrix {
        match self {
            BlockRule::Identity => DenseMatrix::identity(dim),
            BlockRule::Zero => DenseMatrix::zeros(dim, dim),
            BlockRule::Table { entries, default } => entries.get(idx).cloned().unwrap_or_else(
                || match default {
                    TableDefault::Zero => DenseMatrix::zeros(dim, dim),
                    TableDefault::Identity => DenseMatrix::identity(dim),
                },
            ),
            BlockRule::IntFormula(formula) => {
                let n = match idx {
                    BlockIndex::Int(n) => *n,
                    _ => panic!("IntFormula rule on non-integer block {idx:?}"),
                };
                assert_eq!(dim, 1, "IntFormula rules require 1×1 blocks");
                DenseMatrix::scalar_matrix(1, &formula.value(n))
            }
            BlockRule::Scaled(s, inner) => inner.block(idx, dim).scale(s),
            BlockRule::Sum(rules) => {
                let mut acc = DenseMatrix::zeros(dim, dim);
                for r in rules {
                    acc = acc.add(&r.block(idx, dim));
                }
                acc
            }
            BlockRule::Derived(f) => f(idx, dim),
        }
    }
}

/// A multiplier of a block algebra: a total lazy block map. The double
/// centralizer identity ρ(a)b = aλ(b) holds for block-wise left/right
/// multiplication by any such map.
#[derive(Clone, Debug)]
pub struct Multiplier {
    algebra: BlockAlgebra,
    rule: BlockRule,
}

impl Multiplier {
    pub fn new(algebra: &BlockAlgebra, rule: BlockRule) -> Self {
        Multiplier {
            algebra: algebra.clone(),
            rule,
        }
    }

    pub fn identity(algebra: &BlockAlgebra) -> Self {
        Self::new(algebra, BlockRule::Identity)
    }

    pub fn zero(algebra: &BlockAlgebra) -> Self {
        Self::new(algebra, BlockRule::Zero)
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn rule(&self) -> &BlockRule {
        &self.rule
    }

    pub fn block(&self, idx: &BlockIndex) -> DenseMatrix {
        let dim = self.algebra.block_dim(idx);
        let m = self.rule.block(idx, dim);
        assert_eq!((m.rows(), m.cols()), (dim, dim), "rule produced wrong block size at {idx:?}");
        m
    }

    /// λ(a) = ma (Left) or ρ(a) = am (Right), block-wise over supp(a).
    pub fn apply(&self, a: &Element, side: Side) -> Result<Element, Error> {
        if self.algebra != *a.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let blocks: Vec<(BlockIndex, DenseMatrix)> = a
            .blocks()
            .map(|(idx, m)| {
                let mb = self.block(idx);
                let p = match side {
                    Side::Left => mb.matmul(m),
                    Side::Right => m.matmul(&mb),
                };
                (idx.clone(), p)
            })
            .collect();
        Ok(Element::from_blocks(a.algebra(), blocks))
    }

    /// The canonical embedding A ⊂ M(A).
    pub fn embed_element(a: &Element) -> Multiplier {
        let entries: BTreeMap<BlockIndex, DenseMatrix> =
            a.blocks().map(|(i, m)| (i.clone(), m.clone())).collect();
        Multiplier::new(
            a.algebra(),
            BlockRule::Table {
                entries,
                default: TableDefault::Zero,
            },
        )
    }

    pub fn scale(&self, s: &Scalar) -> Multiplier {
        Multiplier::new(
            &self.algebra,
            BlockRule::Scaled(s.clone(), Box::new(self.rule.clone())),
        )
    }

    pub fn add(&self, other: &Multiplier) -> Result<Multiplier, Error> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Multiplier::new(
            &self.algebra,
            BlockRule::Sum(vec![self.rule.clone(), other.rule.clone()]),
        ))
    }

    /// Composition as multipliers: (mn)(idx) = m(idx)·n(idx).
    pub fn compose(&self, other: &Multiplier) -> Result<Multiplier, Error> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let lhs = self.clone();
        let rhs = other.clone();
        Ok(Multiplier::new(
            &self.algebra,
            BlockRule::Derived(Arc::new(move |idx, _dim| {
                lhs.block(idx).matmul(&rhs.block(idx))
            })),
        ))
    }

    /// Restriction to a finite window as an element.
    pub fn restrict(&self, window: &[BlockIndex]) -> Element {
        Element::from_blocks(
            &self.algebra,
            window.iter().map(|i| (i.clone(), self.block(i))),
        )
    }
}
