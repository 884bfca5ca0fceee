//! Indecomposable projectives, injectives, simples and radical summands,
//! built on bases of non-zero paths.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::linalg::{Matrix, Scalar};
use super::rep::{ModuleMap, Representation};
use crate::quiver::{AlgebraError, ArrowIx, StringAlgebra, VertexId};

/// A module whose basis is a list of paths, each sitting over one vertex.
#[derive(Clone, Debug)]
pub struct PathModule {
    pub vertex: VertexId,
    pub paths: Vec<Vec<ArrowIx>>,
    pub module: Representation,
}

/// Builds a representation on `basis` (with the vertex of each element)
/// where arrow `a` sends element `k` to `act(k, a)` or to zero.
fn on_basis(
    alg: &StringAlgebra,
    located: &[usize],
    act: impl Fn(usize, ArrowIx) -> Option<usize>,
) -> Representation {
    let mut dims = vec![0; alg.n()];
    let mut local = Vec::with_capacity(located.len());
    for &v in located {
        local.push(dims[v]);
        dims[v] += 1;
    }
    let maps = (0..alg.quiver().arrows().len())
        .map(|a| {
            let (s, t) = (alg.source_index(a), alg.target_index(a));
            let mut m = Matrix::zeros(dims[t], dims[s]);
            for (k, &v) in located.iter().enumerate() {
                if v != s {
                    continue;
                }
                if let Some(j) = act(k, a) {
                    debug_assert_eq!(located[j], t);
                    m[(local[j], local[k])] = Scalar::one();
                }
            }
            m
        })
        .collect();
    Representation::new(alg, dims, maps)
}

fn end_index(alg: &StringAlgebra, start: usize, path: &[ArrowIx]) -> usize {
    path.last().map_or(start, |&a| alg.target_index(a))
}

fn start_index(alg: &StringAlgebra, end: usize, path: &[ArrowIx]) -> usize {
    path.first().map_or(end, |&a| alg.source_index(a))
}

fn in_ideal(alg: &StringAlgebra, path: &[ArrowIx]) -> bool {
    alg.relations().contains_path(path)
}

/// Non-zero paths starting at dense index `v`, shortest first.
fn paths_from(alg: &StringAlgebra, v: usize) -> Vec<Vec<ArrowIx>> {
    let mut out = vec![Vec::new()];
    let mut k = 0;
    while k < out.len() {
        let p = out[k].clone();
        for &a in alg.out_arrows(end_index(alg, v, &p)) {
            let mut q = p.clone();
            q.push(a);
            if !in_ideal(alg, &q) {
                out.push(q);
            }
        }
        k += 1;
    }
    out
}

/// Non-zero paths ending at dense index `v`, shortest first.
fn paths_to(alg: &StringAlgebra, v: usize) -> Vec<Vec<ArrowIx>> {
    let mut out = vec![Vec::new()];
    let mut k = 0;
    while k < out.len() {
        let p = out[k].clone();
        for &a in alg.in_arrows(start_index(alg, v, &p)) {
            let mut q = vec![a];
            q.extend_from_slice(&p);
            if !in_ideal(alg, &q) {
                out.push(q);
            }
        }
        k += 1;
    }
    out
}

/// Module on a right-closed set of paths from `v`, arrows acting by appending.
fn projective_like(alg: &StringAlgebra, v: usize, paths: &[Vec<ArrowIx>]) -> Representation {
    let index: BTreeMap<&[ArrowIx], usize> = paths.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
    let located: Vec<usize> = paths.iter().map(|p| end_index(alg, v, p)).collect();
    on_basis(alg, &located, |k, a| {
        let mut q = paths[k].clone();
        q.push(a);
        index.get(q.as_slice()).copied()
    })
}

/// `P(i)`: basis the non-zero paths starting at `i`.
pub fn projective(alg: &StringAlgebra, i: VertexId) -> Result<PathModule, AlgebraError> {
    let v = alg.index(i)?;
    let paths = paths_from(alg, v);
    let module = projective_like(alg, v, &paths);
    Ok(PathModule { vertex: i, paths, module })
}

/// `I(i)`: basis dual to the non-zero paths ending at `i`; an arrow `a`
/// sends `(a q)*` to `q*`.
pub fn injective(alg: &StringAlgebra, i: VertexId) -> Result<PathModule, AlgebraError> {
    let v = alg.index(i)?;
    let paths = paths_to(alg, v);
    let index: BTreeMap<&[ArrowIx], usize> = paths.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
    let located: Vec<usize> = paths.iter().map(|p| start_index(alg, v, p)).collect();
    let module = on_basis(alg, &located, |k, a| match paths[k].split_first() {
        Some((&first, rest)) if first == a => index.get(rest).copied(),
        _ => None,
    });
    Ok(PathModule { vertex: i, paths, module })
}

pub fn simple(alg: &StringAlgebra, i: VertexId) -> Result<Representation, AlgebraError> {
    let v = alg.index(i)?;
    Ok(on_basis(alg, &[v], |_, _| None))
}

/// Inclusion of the span of the paths of `p` selected by `keep` into `p`.
fn path_submodule(alg: &StringAlgebra, p: &PathModule, keep: impl Fn(&[ArrowIx]) -> bool) -> ModuleMap {
    let v = alg.index(p.vertex).expect("vertex of a built projective");
    let selected: Vec<Vec<ArrowIx>> = p.paths.iter().filter(|q| keep(q)).cloned().collect();
    let sub = Arc::new(projective_like(alg, v, &selected));
    let whole = Arc::new(p.module.clone());
    let position = |paths: &[Vec<ArrowIx>], k: usize| {
        let w = end_index(alg, v, &paths[k]);
        paths[..k].iter().filter(|q| end_index(alg, v, q) == w).count()
    };
    let mut blocks: Vec<Matrix> = (0..alg.n()).map(|w| Matrix::zeros(whole.dim(w), sub.dim(w))).collect();
    for (k, q) in selected.iter().enumerate() {
        let j = p.paths.iter().position(|r| r == q).expect("selected from p");
        let w = end_index(alg, v, q);
        blocks[w][(position(&p.paths, j), position(&selected, k))] = Scalar::one();
    }
    ModuleMap::from_blocks(sub, whole, blocks)
}

/// A direct summand of `rad P(i)`: the paths beginning with `arrow`.
#[derive(Clone, Debug)]
pub struct RadicalSummand {
    pub arrow: ArrowIx,
    pub inclusion: ModuleMap,
}

impl RadicalSummand {
    pub fn module(&self) -> &Arc<Representation> {
        self.inclusion.source()
    }
}

/// Summands of `rad P(i)`, one per outgoing arrow of `i`.
pub fn radical(alg: &StringAlgebra, p: &PathModule) -> Vec<RadicalSummand> {
    let v = alg.index(p.vertex).expect("vertex of a built projective");
    alg.out_arrows(v)
        .iter()
        .map(|&arrow| RadicalSummand {
            arrow,
            inclusion: path_submodule(alg, p, |q| q.first() == Some(&arrow)),
        })
        .collect()
}

/// The inclusion `rad P(i) -> P(i)`.
pub fn radical_inclusion(alg: &StringAlgebra, p: &PathModule) -> ModuleMap {
    path_submodule(alg, p, |q| !q.is_empty())
}
