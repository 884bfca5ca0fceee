//! The Auslander-Reiten quiver of a tree string algebra, computed from the
//! string modules by exact linear algebra: irreducible maps are a
//! complement of the square of the radical, and the translate of a
//! non-projective is the kernel of its sink map.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::linalg::{Matrix, Scalar};
use super::modules::{injective, projective};
use super::rep::{hom_space, kernel, ModuleMap, Representation};
use super::strings::{enumerate_strings, string_module, StringWalk};
use super::OracleError;
use crate::quiver::{StringAlgebra, VertexId};

#[derive(Clone, Debug)]
pub struct ArNode {
    pub string: StringWalk,
    pub label: String,
    pub module: Arc<Representation>,
    pub projective_of: Option<VertexId>,
    pub injective_of: Option<VertexId>,
}

impl ArNode {
    pub fn dim(&self) -> usize {
        self.module.total_dim()
    }
}

/// An irreducible map between two nodes.
#[derive(Clone, Debug)]
pub struct ArArrow {
    pub source: usize,
    pub target: usize,
    pub map: ModuleMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// Indecomposable middle term.
    OneMiddle,
    /// Middle term with two indecomposable summands.
    TwoMiddles,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostSplitSequence {
    pub left: usize,
    pub middles: Vec<usize>,
    pub right: usize,
    pub kind: SequenceKind,
}

#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub nodes: Vec<ArNode>,
    pub arrows: Vec<ArArrow>,
    pub sequences: Vec<AlmostSplitSequence>,
    tau: BTreeMap<usize, usize>,
    tau_inverse: BTreeMap<usize, usize>,
    by_dims: HashMap<Vec<usize>, usize>,
}

impl ArQuiver {
    pub fn node_by_dims(&self, dims: &[usize]) -> Option<usize> {
        self.by_dims.get(dims).copied()
    }

    pub fn tau(&self, node: usize) -> Option<usize> {
        self.tau.get(&node).copied()
    }

    pub fn tau_inverse(&self, node: usize) -> Option<usize> {
        self.tau_inverse.get(&node).copied()
    }

    pub fn projective_node(&self, i: VertexId) -> Option<usize> {
        self.nodes.iter().position(|x| x.projective_of == Some(i))
    }

    pub fn arrows_into(&self, node: usize) -> impl Iterator<Item = &ArArrow> {
        self.arrows.iter().filter(move |a| a.target == node)
    }

    pub fn arrows_from(&self, node: usize) -> impl Iterator<Item = &ArArrow> {
        self.arrows.iter().filter(move |a| a.source == node)
    }

    pub fn one_middle_count(&self) -> usize {
        self.sequences.iter().filter(|s| s.kind == SequenceKind::OneMiddle).count()
    }

    pub fn arrow_label(&self, arrow: usize) -> String {
        let a = &self.arrows[arrow];
        format!("{} -> {}", self.nodes[a.source].label, self.nodes[a.target].label)
    }

    /// Structural invariants; returns a description of every failure.
    pub fn verify(&self, alg: &StringAlgebra) -> Vec<String> {
        let mut problems = Vec::new();
        let n = alg.n();
        let projectives = self.nodes.iter().filter(|x| x.projective_of.is_some()).count();
        let injectives = self.nodes.iter().filter(|x| x.injective_of.is_some()).count();
        if projectives != n || injectives != n {
            problems.push(format!("{projectives} projective and {injectives} injective nodes for {n} vertices"));
        }
        let mut right_ends = BTreeMap::new();
        let mut left_ends = BTreeMap::new();
        for s in &self.sequences {
            *right_ends.entry(s.right).or_insert(0) += 1;
            *left_ends.entry(s.left).or_insert(0) += 1;
            let middle: usize = s.middles.iter().map(|&m| self.nodes[m].dim()).sum();
            if self.nodes[s.left].dim() + self.nodes[s.right].dim() != middle {
                problems.push(format!("mesh ending at {} is not additive", self.nodes[s.right].label));
            }
            if !(1..=2).contains(&s.middles.len()) {
                problems.push(format!("mesh ending at {} has {} middle terms", self.nodes[s.right].label, s.middles.len()));
            }
            for &m in &s.middles {
                let from_left = self.arrows.iter().filter(|a| a.source == s.left && a.target == m).count();
                let to_right = self.arrows.iter().filter(|a| a.source == m && a.target == s.right).count();
                let expected = s.middles.iter().filter(|&&x| x == m).count();
                if from_left != expected || to_right != expected {
                    problems.push(format!("mesh ending at {} is not closed", self.nodes[s.right].label));
                }
            }
        }
        for (k, node) in self.nodes.iter().enumerate() {
            let r = right_ends.get(&k).copied().unwrap_or(0);
            let l = left_ends.get(&k).copied().unwrap_or(0);
            if r != usize::from(node.projective_of.is_none()) {
                problems.push(format!("{} is the right end of {r} sequences", node.label));
            }
            if l != usize::from(node.injective_of.is_none()) {
                problems.push(format!("{} is the left end of {l} sequences", node.label));
            }
        }
        for a in &self.arrows {
            let (s, t) = (self.nodes[a.source].dim(), self.nodes[a.target].dim());
            if s == t {
                problems.push(format!("irreducible map between modules of equal dimension {s}"));
            } else if (s < t && !a.map.is_mono()) || (s > t && !a.map.is_epi()) {
                problems.push(format!("irreducible map of dimension {s} -> {t} is neither mono nor epi"));
            }
        }
        for (k, node) in self.nodes.iter().enumerate() {
            if let Some(i) = node.projective_of {
                let rad: usize = self.arrows_into(k).map(|a| self.nodes[a.source].dim()).sum();
                let v = alg.index(i).expect("projective vertex");
                let summands = self.arrows_into(k).count();
                if rad + 1 != node.dim() || summands != alg.out_degree(v) {
                    problems.push(format!("radical of P({i}) does not match its incoming arrows"));
                }
            }
        }
        problems
    }
}

fn rank_of(rows: &[Vec<Scalar>], width: usize) -> usize {
    if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows, width).rank()
    }
}

/// Computes the AR quiver from the string modules of `alg`.
pub fn ar_quiver(alg: &StringAlgebra) -> Result<ArQuiver, OracleError> {
    let strings = enumerate_strings(alg);
    let mut nodes: Vec<ArNode> = strings
        .into_iter()
        .map(|string| ArNode {
            label: string.render(alg),
            module: Arc::new(string_module(alg, &string)),
            string,
            projective_of: None,
            injective_of: None,
        })
        .collect();
    let mut by_dims = HashMap::new();
    for (k, node) in nodes.iter().enumerate() {
        if by_dims.insert(node.module.dims().to_vec(), k).is_some() {
            return Err(OracleError::DuplicateDimensionVector(node.label.clone()));
        }
    }
    for &i in alg.quiver().vertices() {
        let p = projective(alg, i)?;
        let k = *by_dims
            .get(p.module.dims())
            .ok_or_else(|| OracleError::UnknownModule(p.module.dim_vector(alg)))?;
        nodes[k].projective_of = Some(i);
        let q = injective(alg, i)?;
        let k = *by_dims
            .get(q.module.dims())
            .ok_or_else(|| OracleError::UnknownModule(q.module.dim_vector(alg)))?;
        nodes[k].injective_of = Some(i);
    }

    let count = nodes.len();
    let mut homs: Vec<Vec<Vec<ModuleMap>>> = vec![vec![Vec::new(); count]; count];
    for x in 0..count {
        for y in 0..count {
            let basis = hom_space(alg, &nodes[x].module, &nodes[y].module);
            if x == y && basis.len() != 1 {
                return Err(OracleError::NotBrick(nodes[x].label.clone(), basis.len()));
            }
            if x != y {
                homs[x][y] = basis;
            }
        }
    }

    let mut arrows = Vec::new();
    for x in 0..count {
        for y in 0..count {
            let hom = &homs[x][y];
            if hom.is_empty() {
                continue;
            }
            let width = hom[0].flatten().len();
            let mut rows = Vec::new();
            let mut rank = 0;
            for (z, through) in homs[x].iter().enumerate() {
                if z == x || z == y || rank == hom.len() {
                    continue;
                }
                for f in through {
                    for g in &homs[z][y] {
                        rows.push(f.then(g).flatten());
                    }
                }
                rank = rank_of(&rows, width);
            }
            let mut base = rank_of(&rows, width);
            for h in hom {
                rows.push(h.flatten());
                let r = rank_of(&rows, width);
                if r > base {
                    base = r;
                    arrows.push(ArArrow {
                        source: x,
                        target: y,
                        map: h.clone(),
                    });
                } else {
                    rows.pop();
                }
            }
        }
    }

    let mut tau = BTreeMap::new();
    let mut tau_inverse = BTreeMap::new();
    let mut sequences = Vec::new();
    for z in 0..count {
        if nodes[z].projective_of.is_some() {
            continue;
        }
        let incoming: Vec<&ArArrow> = arrows.iter().filter(|a| a.target == z).collect();
        let parts: Vec<Arc<Representation>> = incoming.iter().map(|a| nodes[a.source].module.clone()).collect();
        let sum = Representation::direct_sum(alg, &parts);
        let mut sink = ModuleMap::zero(sum.sum.clone(), nodes[z].module.clone());
        for (a, p) in incoming.iter().zip(&sum.projections) {
            sink = sink.add(&p.then(&a.map));
        }
        if !sink.is_epi() {
            return Err(OracleError::SinkMapNotEpi(nodes[z].label.clone()));
        }
        let (k, _) = kernel(alg, &sink);
        let left = *by_dims
            .get(k.dims())
            .ok_or_else(|| OracleError::UnknownModule(k.dim_vector(alg)))?;
        let ends = hom_space(alg, &k, &k).len();
        if ends != 1 {
            return Err(OracleError::NotBrick(format!("kernel of the sink map into {}", nodes[z].label), ends));
        }
        tau.insert(z, left);
        if tau_inverse.insert(left, z).is_some() {
            return Err(OracleError::Invariant(format!("{} is the translate of two modules", nodes[left].label)));
        }
        let mut middles: Vec<usize> = incoming.iter().map(|a| a.source).collect();
        middles.sort_unstable();
        let kind = if middles.len() == 1 { SequenceKind::OneMiddle } else { SequenceKind::TwoMiddles };
        sequences.push(AlmostSplitSequence {
            left,
            middles,
            right: z,
            kind,
        });
    }
    Ok(ArQuiver {
        nodes,
        arrows,
        sequences,
        tau,
        tau_inverse,
        by_dims,
    })
}

/// Node indices of the right ends of sequences with indecomposable middle.
pub fn one_middle_right_ends(ar: &ArQuiver) -> BTreeSet<usize> {
    ar.sequences
        .iter()
        .filter(|s| s.kind == SequenceKind::OneMiddle)
        .map(|s| s.right)
        .collect()
}
