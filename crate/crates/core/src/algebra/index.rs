//! Block indices for direct sums of matrix algebras.

use std::fmt;

/// Index of one matrix block in a direct sum.
///
/// The variants mirror the supported index models: integers and integer
/// pairs (duals of ℤ and ℤ²), positions in a finite list (finite groups,
/// truncated models, synthetic examples), reduced words of a finitely
/// generated free group, and naturals (fusion labels).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockIndex {
    Int(i64),
    Pair(i64, i64),
    Fin(usize),
    /// Reduced word; letters are ±g for generator g ∈ 1..=k.
    Word(Vec<i32>),
    Nat(u64),
}

impl BlockIndex {
    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockIndex::Int(n) => write!(f, "{n}"),
            BlockIndex::Pair(a, b) => write!(f, "({a},{b})"),
            BlockIndex::Fin(k) => write!(f, "#{k}"),
            BlockIndex::Word(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                for l in w {
                    if *l > 0 {
                        write!(f, "a{l}")?;
                    } else {
                        write!(f, "A{}", -l)?;
                    }
                }
                Ok(())
            }
            BlockIndex::Nat(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Debug for BlockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

impl fmt::Display for BlockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}
