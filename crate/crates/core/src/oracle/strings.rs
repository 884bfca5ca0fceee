//! Strings (walks avoiding zero relations) and their modules.

use num_traits::One;
use thiserror::Error;

use super::linalg::{Matrix, Scalar};
use super::rep::Representation;
use crate::quiver::{ArrowIx, StringAlgebra, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: ArrowIx,
    pub inverse: bool,
}

/// A walk in the quiver, read from its start vertex. Empty letters means
/// the trivial string at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringWalk {
    start: usize,
    letters: Vec<Letter>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StringError {
    #[error("letter {position} does not continue the walk")]
    NotComposable { position: usize },
    #[error("letter {position} is followed by its own inverse")]
    Backtrack { position: usize },
    #[error("letters ending at {position} contain a zero relation")]
    ZeroRelation { position: usize },
}

impl StringWalk {
    pub fn trivial(start: usize) -> Self {
        StringWalk {
            start,
            letters: Vec::new(),
        }
    }

    /// Checks every string condition.
    pub fn new(alg: &StringAlgebra, start: usize, letters: Vec<Letter>) -> Result<Self, StringError> {
        let mut w = StringWalk::trivial(start);
        for l in letters {
            w.push_checked(alg, l)?;
        }
        Ok(w)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    /// Dense vertex indices visited, `len() + 1` of them.
    pub fn positions(&self, alg: &StringAlgebra) -> Vec<usize> {
        let mut out = vec![self.start];
        for l in &self.letters {
            out.push(step(alg, l));
        }
        out
    }

    pub fn end(&self, alg: &StringAlgebra) -> usize {
        self.letters.last().map_or(self.start, |l| step(alg, l))
    }

    pub fn inverse(&self, alg: &StringAlgebra) -> StringWalk {
        StringWalk {
            start: self.end(alg),
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    arrow: l.arrow,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    pub fn render(&self, alg: &StringAlgebra) -> String {
        if self.letters.is_empty() {
            return format!("e{}", alg.vertex(self.start));
        }
        self.letters
            .iter()
            .map(|l| {
                let id = &alg.quiver().arrow(l.arrow).id;
                if l.inverse { format!("{id}^-1") } else { id.clone() }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The representative of `{self, self^-1}` with the smaller rendering.
    pub fn canonical(&self, alg: &StringAlgebra) -> StringWalk {
        let inv = self.inverse(alg);
        if inv.render(alg) < self.render(alg) { inv } else { self.clone() }
    }

    pub fn is_canonical(&self, alg: &StringAlgebra) -> bool {
        self.render(alg) <= self.inverse(alg).render(alg)
    }

    /// Appends `l`, checking composability, backtracking and the relations
    /// along the trailing run of same-direction letters.
    fn push_checked(&mut self, alg: &StringAlgebra, l: Letter) -> Result<(), StringError> {
        let position = self.letters.len();
        let here = self.end(alg);
        let from = if l.inverse { alg.target_index(l.arrow) } else { alg.source_index(l.arrow) };
        if from != here {
            return Err(StringError::NotComposable { position });
        }
        if self.letters.last().is_some_and(|p| p.arrow == l.arrow && p.inverse != l.inverse) {
            return Err(StringError::Backtrack { position });
        }
        self.letters.push(l);
        let run_start = self.letters.iter().rposition(|p| p.inverse != l.inverse).map_or(0, |k| k + 1);
        let mut path: Vec<ArrowIx> = self.letters[run_start..].iter().map(|p| p.arrow).collect();
        if l.inverse {
            path.reverse();
        }
        if alg.relations().contains_path(&path) {
            self.letters.pop();
            return Err(StringError::ZeroRelation { position });
        }
        Ok(())
    }
}

fn step(alg: &StringAlgebra, l: &Letter) -> usize {
    if l.inverse { alg.source_index(l.arrow) } else { alg.target_index(l.arrow) }
}

/// All strings up to inversion: one trivial string per vertex, then the
/// rest ordered by length and rendering.
pub fn enumerate_strings(alg: &StringAlgebra) -> Vec<StringWalk> {
    let mut out: Vec<StringWalk> = (0..alg.n()).map(StringWalk::trivial).collect();
    let mut found = Vec::new();
    for v in 0..alg.n() {
        let mut stack = vec![StringWalk::trivial(v)];
        while let Some(w) = stack.pop() {
            let here = w.end(alg);
            let candidates = alg
                .out_arrows(here)
                .iter()
                .map(|&arrow| Letter { arrow, inverse: false })
                .chain(alg.in_arrows(here).iter().map(|&arrow| Letter { arrow, inverse: true }));
            for l in candidates {
                let mut next = w.clone();
                if next.push_checked(alg, l).is_ok() {
                    if next.is_canonical(alg) {
                        found.push(next.clone());
                    }
                    stack.push(next);
                }
            }
        }
    }
    found.sort_by_cached_key(|w| (w.len(), w.render(alg)));
    found.dedup();
    out.extend(found);
    out
}

/// The string module of `w`: one basis vector per position of the walk.
pub fn string_module(alg: &StringAlgebra, w: &StringWalk) -> Representation {
    let positions = w.positions(alg);
    let mut dims = vec![0; alg.n()];
    let mut local = Vec::with_capacity(positions.len());
    for &v in &positions {
        local.push(dims[v]);
        dims[v] += 1;
    }
    let mut maps: Vec<Matrix> = (0..alg.quiver().arrows().len())
        .map(|a| Matrix::zeros(dims[alg.target_index(a)], dims[alg.source_index(a)]))
        .collect();
    for (k, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
        maps[l.arrow][(local[to], local[from])] = Scalar::one();
    }
    Representation::new(alg, dims, maps)
}

/// Vertex ids of a string's support, in walk order.
pub fn support(alg: &StringAlgebra, w: &StringWalk) -> Vec<VertexId> {
    w.positions(alg).into_iter().map(|v| alg.vertex(v)).collect()
}
