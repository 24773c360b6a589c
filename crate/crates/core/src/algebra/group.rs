//! Discrete group models backing the dual-of-group examples.

use crate::algebra::index::BlockIndex;
use crate::error::Error;

/// A discrete group with effective multiplication and inversion, with
/// elements addressed by [`BlockIndex`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupModel {
    Integers,
    IntegerPairs,
    /// Multiplication table over element indices 0..n.
    FiniteCayley { table: Vec<Vec<usize>>, identity: usize },
    /// Free group on `generators` generators; elements are reduced words.
    FreeWords { generators: usize },
}

impl GroupModel {
    /// Symmetric group S_n as a Cayley table (elements in lexicographic
    /// permutation order; identity first).
    pub fn symmetric(n: usize) -> GroupModel {
        let perms = permutations(n);
        let find = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        // (p*q)(x) = p(q(x))
                        let pq: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                        find(&pq)
                    })
                    .collect()
            })
            .collect();
        let id: Vec<usize> = (0..n).collect();
        GroupModel::FiniteCayley {
            identity: find(&id),
            table,
        }
    }

    /// Cyclic group ℤ/n as a Cayley table.
    pub fn cyclic(n: usize) -> GroupModel {
        GroupModel::FiniteCayley {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            identity: 0,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            GroupModel::FiniteCayley { table, .. } => Some(table.len()),
            _ => None,
        }
    }

    pub fn identity(&self) -> BlockIndex {
        match self {
            GroupModel::Integers => BlockIndex::Int(0),
            GroupModel::IntegerPairs => BlockIndex::Pair(0, 0),
            GroupModel::FiniteCayley { identity, .. } => BlockIndex::Fin(*identity),
            GroupModel::FreeWords { .. } => BlockIndex::Word(vec![]),
        }
    }

    pub fn multiply(&self, a: &BlockIndex, b: &BlockIndex) -> Result<BlockIndex, Error> {
        match (self, a, b) {
            (GroupModel::Integers, BlockIndex::Int(x), BlockIndex::Int(y)) => {
                Ok(BlockIndex::Int(x + y))
            }
            (GroupModel::IntegerPairs, BlockIndex::Pair(x1, x2), BlockIndex::Pair(y1, y2)) => {
                Ok(BlockIndex::Pair(x1 + y1, x2 + y2))
            }
            (GroupModel::FiniteCayley { table, .. }, BlockIndex::Fin(x), BlockIndex::Fin(y)) => {
                table
                    .get(*x)
                    .and_then(|row| row.get(*y))
                    .map(|&z| BlockIndex::Fin(z))
                    .ok_or_else(|| Error::Invalid(format!("index out of Cayley table: {x},{y}")))
            }
            (GroupModel::FreeWords { .. }, BlockIndex::Word(u), BlockIndex::Word(v)) => {
                let mut w = u.clone();
                for &l in v {
                    if w.last() == Some(&-l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                Ok(BlockIndex::Word(w))
            }
            _ => Err(Error::Invalid(format!(
                "indices {a:?}, {b:?} do not belong to group model {self:?}"
            ))),
        }
    }

    pub fn inverse(&self, a: &BlockIndex) -> Result<BlockIndex, Error> {
        match (self, a) {
            (GroupModel::Integers, BlockIndex::Int(x)) => Ok(BlockIndex::Int(-x)),
            (GroupModel::IntegerPairs, BlockIndex::Pair(x, y)) => Ok(BlockIndex::Pair(-x, -y)),
            (GroupModel::FiniteCayley { table, identity }, BlockIndex::Fin(x)) => {
                for y in 0..table.len() {
                    if table[*x][y] == *identity {
                        return Ok(BlockIndex::Fin(y));
                    }
                }
                Err(Error::Invalid(format!("element {x} has no inverse")))
            }
            (GroupModel::FreeWords { .. }, BlockIndex::Word(w)) => {
                Ok(BlockIndex::Word(w.iter().rev().map(|l| -l).collect()))
            }
            _ => Err(Error::Invalid(format!(
                "index {a:?} does not belong to group model {self:?}"
            ))),
        }
    }

    pub fn contains(&self, a: &BlockIndex) -> bool {
        match (self, a) {
            (GroupModel::Integers, BlockIndex::Int(_)) => true,
            (GroupModel::IntegerPairs, BlockIndex::Pair(_, _)) => true,
            (GroupModel::FiniteCayley { table, .. }, BlockIndex::Fin(x)) => *x < table.len(),
            (GroupModel::FreeWords { generators }, BlockIndex::Word(w)) => {
                let g = *generators as i32;
                w.iter().all(|&l| l != 0 && l.abs() <= g)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            _ => false,
        }
    }

    /// All elements of a finite group.
    pub fn elements(&self) -> Option<Vec<BlockIndex>> {
        self.order()
            .map(|n| (0..n).map(BlockIndex::Fin).collect())
    }

    /// Elements of the word-metric ball of the given radius (generators and
    /// their inverses as metric generators). Finite groups return all
    /// elements; ℤ and ℤ² return intervals/squares.
    pub fn ball(&self, radius: u32) -> Vec<BlockIndex> {
        let r = radius as i64;
        match self {
            GroupModel::Integers => (-r..=r).map(BlockIndex::Int).collect(),
            GroupModel::IntegerPairs => {
                let mut v = Vec::new();
                for x in -r..=r {
                    for y in -r..=r {
                        v.push(BlockIndex::Pair(x, y));
                    }
                }
                v
            }
            GroupModel::FiniteCayley { .. } => self.elements().unwrap(),
            GroupModel::FreeWords { generators } => {
                let mut out = vec![BlockIndex::Word(vec![])];
                let mut frontier = vec![Vec::<i32>::new()];
                for _ in 0..radius {
                    let mut next = Vec::new();
                    for w in &frontier {
                        for g in 1..=(*generators as i32) {
                            for l in [g, -g] {
                                if w.last() == Some(&-l) {
                                    continue;
                                }
                                let mut nw = w.clone();
                                nw.push(l);
                                next.push(nw);
                            }
                        }
                    }
                    out.extend(next.iter().cloned().map(BlockIndex::Word));
                    frontier = next;
                }
                out
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}
