//! Bound quiver algebras `KQ/I` with monomial relations.
//!
//! Paths are always stored in traversal order: the first arrow walked comes
//! first. A path `[a, b]` therefore requires `target(a) == source(b)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::tree::TreeIndex;

/// Vertex label as written in the input document.
pub type VertexId = u32;

/// Position of an arrow in [`Quiver::arrows`].
pub type ArrowIx = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub id: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver. Vertices are kept sorted ascending; arrows keep their
/// declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
    arrow_lookup: HashMap<String, ArrowIx>,
}

impl Quiver {
    pub fn new(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        if vertices.is_empty() {
            return Err(AlgebraError::NoVertices);
        }
        let mut sorted = vertices;
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(AlgebraError::DuplicateVertex(pair[0]));
            }
        }
        if sorted[0] == 0 {
            return Err(AlgebraError::ZeroVertex);
        }
        let mut arrow_lookup = HashMap::with_capacity(arrows.len());
        for (ix, arrow) in arrows.iter().enumerate() {
            for end in [arrow.source, arrow.target] {
                if sorted.binary_search(&end).is_err() {
                    return Err(AlgebraError::UnknownVertex {
                        arrow: arrow.id.clone(),
                        vertex: end,
                    });
                }
            }
            if arrow_lookup.insert(arrow.id.clone(), ix).is_some() {
                return Err(AlgebraError::DuplicateArrow(arrow.id.clone()));
            }
        }
        Ok(Quiver {
            vertices: sorted,
            arrows,
            arrow_lookup,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow(&self, ix: ArrowIx) -> &Arrow {
        &self.arrows[ix]
    }

    /// Dense index of a vertex id.
    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn arrow_index(&self, id: &str) -> Option<ArrowIx> {
        self.arrow_lookup.get(id).copied()
    }

    pub fn source_index(&self, ix: ArrowIx) -> usize {
        self.vertex_index(self.arrows[ix].source).expect("checked at construction")
    }

    pub fn target_index(&self, ix: ArrowIx) -> usize {
        self.vertex_index(self.arrows[ix].target).expect("checked at construction")
    }

    pub fn outgoing(&self, v: VertexId) -> impl Iterator<Item = ArrowIx> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(ix, _)| ix)
    }

    pub fn incoming(&self, v: VertexId) -> impl Iterator<Item = ArrowIx> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(ix, _)| ix)
    }

    pub fn is_composable(&self, path: &[ArrowIx]) -> bool {
        path.iter().all(|&a| a < self.arrows.len())
            && path
                .windows(2)
                .all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    pub fn render_path(&self, path: &[ArrowIx]) -> String {
        path.iter().map(|&a| self.arrows[a].id.as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// Generators of a monomial ideal, each a path in traversal order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    generators: Vec<Vec<ArrowIx>>,
}

impl RelationSet {
    /// Builds a reduced generating set. Duplicates and generators that
    /// contain another generator as a consecutive subpath are dropped and
    /// returned separately.
    pub fn reduced(generators: Vec<Vec<ArrowIx>>) -> (Self, Vec<Vec<ArrowIx>>) {
        let mut kept: Vec<Vec<ArrowIx>> = Vec::with_capacity(generators.len());
        let mut dropped = Vec::new();
        for (ix, g) in generators.iter().enumerate() {
            let redundant = generators.iter().enumerate().any(|(jx, h)| {
                if jx == ix {
                    return false;
                }
                // equal generators: keep the first occurrence only
                if h == g {
                    return jx < ix;
                }
                contains_subpath(g, h)
            });
            if redundant {
                dropped.push(g.clone());
            } else {
                kept.push(g.clone());
            }
        }
        (RelationSet { generators: kept }, dropped)
    }

    pub fn generators(&self) -> &[Vec<ArrowIx>] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    /// Monomial ideal membership: some generator is a consecutive subpath.
    pub fn contains_path(&self, path: &[ArrowIx]) -> bool {
        self.generators.iter().any(|g| contains_subpath(path, g))
    }
}

fn contains_subpath(path: &[ArrowIx], needle: &[ArrowIx]) -> bool {
    !needle.is_empty() && needle.len() <= path.len() && path.windows(needle.len()).any(|w| w == needle)
}

/// One failed precondition of the string-algebra class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Loop { arrow: String },
    Cycle { arrow: String },
    Disconnected { components: usize },
    OutDegree { vertex: VertexId, count: usize },
    InDegree { vertex: VertexId, count: usize },
    /// Two arrows into `vertex` both compose non-trivially with `outgoing`.
    IncomingPair { vertex: VertexId, first: String, second: String, outgoing: String },
    /// Two arrows out of `vertex` both compose non-trivially after `incoming`.
    OutgoingPair { vertex: VertexId, first: String, second: String, incoming: String },
    ShortRelation { relation: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { arrow } => write!(f, "arrow {arrow} is a loop"),
            Violation::Cycle { arrow } => {
                write!(f, "arrow {arrow} closes a cycle; the underlying graph is not a tree")
            }
            Violation::Disconnected { components } => {
                write!(f, "underlying graph has {components} connected components; expected a tree")
            }
            Violation::OutDegree { vertex, count } => {
                write!(f, "vertex {vertex} has {count} outgoing arrows (at most 2 allowed)")
            }
            Violation::InDegree { vertex, count } => {
                write!(f, "vertex {vertex} has {count} incoming arrows (at most 2 allowed)")
            }
            Violation::IncomingPair { vertex, first, second, outgoing } => write!(
                f,
                "at vertex {vertex}: neither `{first} {outgoing}` nor `{second} {outgoing}` is a relation"
            ),
            Violation::OutgoingPair { vertex, first, second, incoming } => write!(
                f,
                "at vertex {vertex}: neither `{incoming} {first}` nor `{incoming} {second}` is a relation"
            ),
            Violation::ShortRelation { relation } => {
                write!(f, "relation `{relation}` has length < 2")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Unchecked,
    Valid,
    Invalid(Vec<Violation>),
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        matches!(self, Certificate::Valid)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Certificate::Invalid(v) => v,
            _ => &[],
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("quiver has no vertices")]
    NoVertices,
    #[error("vertex {0} declared twice")]
    DuplicateVertex(VertexId),
    #[error("vertex ids must be positive")]
    ZeroVertex,
    #[error("arrow id `{0}` declared twice")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` references unknown vertex {vertex}")]
    UnknownVertex { arrow: String, vertex: VertexId },
    #[error("unknown arrow id `{0}`")]
    UnknownArrow(String),
    #[error("path `{0}` is not composable")]
    NonComposable(String),
    #[error("relation is empty")]
    EmptyRelation,
    #[error("unknown vertex {0}")]
    NoSuchVertex(VertexId),
    #[error("algebra failed validation: {0} violation(s)")]
    NotValid(usize),
}

/// `KQ/I` together with the outcome of the last validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    relations: RelationSet,
    certificate: Certificate,
    warnings: Vec<String>,
}

impl BoundQuiverAlgebra {
    /// Builds an unvalidated algebra from arrow ids. Relations are paths in
    /// traversal order; non-reduced generating sets are reduced and the
    /// removed generators reported through [`Self::warnings`].
    pub fn new(
        vertices: Vec<VertexId>,
        arrows: Vec<Arrow>,
        relations: Vec<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        let quiver = Quiver::new(vertices, arrows)?;
        let mut paths = Vec::with_capacity(relations.len());
        for rel in &relations {
            paths.push(resolve_path(&quiver, rel)?);
        }
        Ok(Self::from_paths(quiver, paths))
    }

    pub(crate) fn from_paths(quiver: Quiver, paths: Vec<Vec<ArrowIx>>) -> Self {
        let (relations, dropped) = RelationSet::reduced(paths);
        let warnings = dropped
            .iter()
            .map(|p| format!("relation `{}` is redundant and was dropped", quiver.render_path(p)))
            .collect();
        BoundQuiverAlgebra {
            quiver,
            relations,
            certificate: Certificate::Unchecked,
            warnings,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `true` iff the composable `path` lies in the monomial ideal.
    pub fn path_in_ideal(&self, path: &[ArrowIx]) -> Result<bool, AlgebraError> {
        if !self.quiver.is_composable(path) {
            return Err(AlgebraError::NonComposable(self.quiver.render_path(path)));
        }
        Ok(self.relations.contains_path(path))
    }

    /// Same as [`Self::path_in_ideal`] with arrows named by id.
    pub fn path_in_ideal_by_id<S: AsRef<str>>(&self, path: &[S]) -> Result<bool, AlgebraError> {
        let ids: Vec<String> = path.iter().map(|s| s.as_ref().to_owned()).collect();
        let resolved = resolve_path(&self.quiver, &ids)?;
        self.path_in_ideal(&resolved)
    }

    /// Fills the certificate with every violated precondition: tree shape,
    /// degree bounds, the two biserial composition conditions and relation
    /// length.
    pub fn validate(mut self) -> Self {
        let violations = self.violations();
        self.certificate = if violations.is_empty() {
            Certificate::Valid
        } else {
            Certificate::Invalid(violations)
        };
        self
    }

    fn violations(&self) -> Vec<Violation> {
        let q = &self.quiver;
        let mut out = Vec::new();

        for a in q.arrows() {
            if a.source == a.target {
                out.push(Violation::Loop { arrow: a.id.clone() });
            }
        }

        // union-find over the underlying graph
        let n = q.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (ix, a) in q.arrows().iter().enumerate() {
            if a.source == a.target {
                continue;
            }
            let (s, t) = (find(&mut parent, q.source_index(ix)), find(&mut parent, q.target_index(ix)));
            if s == t {
                out.push(Violation::Cycle { arrow: a.id.clone() });
            } else {
                parent[s] = t;
            }
        }
        let components = (0..n).filter(|&x| find(&mut parent, x) == x).count();
        if components > 1 {
            out.push(Violation::Disconnected { components });
        }

        for &v in q.vertices() {
            let outs: Vec<ArrowIx> = q.outgoing(v).collect();
            let ins: Vec<ArrowIx> = q.incoming(v).collect();
            if outs.len() > 2 {
                out.push(Violation::OutDegree { vertex: v, count: outs.len() });
            }
            if ins.len() > 2 {
                out.push(Violation::InDegree { vertex: v, count: ins.len() });
            }
            let name = |a: ArrowIx| q.arrow(a).id.clone();
            for (x, &alpha) in ins.iter().enumerate() {
                for &beta in &ins[x + 1..] {
                    for &gamma in &outs {
                        if !self.relations.contains_path(&[alpha, gamma])
                            && !self.relations.contains_path(&[beta, gamma])
                        {
                            out.push(Violation::IncomingPair {
                                vertex: v,
                                first: name(alpha),
                                second: name(beta),
                                outgoing: name(gamma),
                            });
                        }
                    }
                }
            }
            for (x, &alpha) in outs.iter().enumerate() {
                for &beta in &outs[x + 1..] {
                    for &gamma in &ins {
                        if !self.relations.contains_path(&[gamma, alpha])
                            && !self.relations.contains_path(&[gamma, beta])
                        {
                            out.push(Violation::OutgoingPair {
                                vertex: v,
                                first: name(alpha),
                                second: name(beta),
                                incoming: name(gamma),
                            });
                        }
                    }
                }
            }
        }

        for g in self.relations.generators() {
            if g.len() < 2 {
                out.push(Violation::ShortRelation { relation: q.render_path(g) });
            }
        }
        out
    }
}

pub(crate) fn resolve_path(quiver: &Quiver, ids: &[String]) -> Result<Vec<ArrowIx>, AlgebraError> {
    if ids.is_empty() {
        return Err(AlgebraError::EmptyRelation);
    }
    let path = ids
        .iter()
        .map(|id| quiver.arrow_index(id).ok_or_else(|| AlgebraError::UnknownArrow(id.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    if !quiver.is_composable(&path) {
        return Err(AlgebraError::NonComposable(ids.join(" ")));
    }
    Ok(path)
}

/// A validated string algebra on a tree quiver, with adjacency and a rooted
/// spanning structure precomputed.
#[derive(Clone, Debug)]
pub struct StringAlgebra {
    algebra: BoundQuiverAlgebra,
    out_arrows: Vec<Vec<ArrowIx>>,
    in_arrows: Vec<Vec<ArrowIx>>,
    tree: TreeIndex,
}

impl StringAlgebra {
    /// Validates `algebra` if needed and wraps it; fails when the
    /// certificate lists any violation.
    pub fn new(algebra: BoundQuiverAlgebra) -> Result<Self, AlgebraError> {
        let algebra = match algebra.certificate {
            Certificate::Unchecked => algebra.validate(),
            _ => algebra,
        };
        if let Certificate::Invalid(v) = &algebra.certificate {
            return Err(AlgebraError::NotValid(v.len()));
        }
        let q = &algebra.quiver;
        let n = q.vertex_count();
        let mut out_arrows = vec![Vec::new(); n];
        let mut in_arrows = vec![Vec::new(); n];
        for ix in 0..q.arrows().len() {
            out_arrows[q.source_index(ix)].push(ix);
            in_arrows[q.target_index(ix)].push(ix);
        }
        let tree = TreeIndex::build(q);
        Ok(StringAlgebra {
            algebra,
            out_arrows,
            in_arrows,
            tree,
        })
    }

    pub fn algebra(&self) -> &BoundQuiverAlgebra {
        &self.algebra
    }

    pub fn quiver(&self) -> &Quiver {
        &self.algebra.quiver
    }

    pub fn relations(&self) -> &RelationSet {
        &self.algebra.relations
    }

    pub fn n(&self) -> usize {
        self.quiver().vertex_count()
    }

    pub(crate) fn tree(&self) -> &TreeIndex {
        &self.tree
    }

    pub fn index(&self, v: VertexId) -> Result<usize, AlgebraError> {
        self.quiver().vertex_index(v).ok_or(AlgebraError::NoSuchVertex(v))
    }

    pub fn vertex(&self, index: usize) -> VertexId {
        self.quiver().vertices()[index]
    }

    /// Outgoing arrows of the vertex at dense index `v`, in declaration order.
    pub fn out_arrows(&self, v: usize) -> &[ArrowIx] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[ArrowIx] {
        &self.in_arrows[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_arrows[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_arrows[v].len()
    }

    pub fn is_path_algebra(&self) -> bool {
        self.relations().is_empty()
    }

    pub fn sinks(&self) -> BTreeSet<VertexId> {
        (0..self.n()).filter(|&v| self.out_degree(v) == 0).map(|v| self.vertex(v)).collect()
    }

    pub fn source_index(&self, a: ArrowIx) -> usize {
        self.quiver().source_index(a)
    }

    pub fn target_index(&self, a: ArrowIx) -> usize {
        self.quiver().target_index(a)
    }
}

impl TryFrom<BoundQuiverAlgebra> for StringAlgebra {
    type Error = AlgebraError;

    fn try_from(value: BoundQuiverAlgebra) -> Result<Self, Self::Error> {
        StringAlgebra::new(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(id: &str, s: VertexId, t: VertexId) -> Arrow {
        Arrow { id: id.into(), source: s, target: t }
    }

    fn rel(ids: &[&str]) -> Vec<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    fn four_valent() -> BoundQuiverAlgebra {
        BoundQuiverAlgebra::new(
            (1..=6).collect(),
            vec![
                arrow("a1", 1, 3),
                arrow("a2", 2, 3),
                arrow("a3", 3, 4),
                arrow("a4", 3, 5),
                arrow("a5", 6, 5),
            ],
            vec![rel(&["a1", "a3"]), rel(&["a2", "a4"])],
        )
        .unwrap()
    }

    #[test]
    fn four_valent_is_a_string_algebra() {
        let alg = four_valent().validate();
        assert_eq!(alg.certificate(), &Certificate::Valid);
    }

    #[test]
    fn missing_relation_at_four_valent_vertex_is_reported() {
        let alg = BoundQuiverAlgebra::new(
            (1..=5).collect(),
            vec![arrow("a1", 1, 3), arrow("a2", 2, 3), arrow("a3", 3, 4), arrow("a4", 3, 5)],
            vec![rel(&["a1", "a3"])],
        )
        .unwrap()
        .validate();
        let v = alg.certificate().violations();
        assert!(v.iter().any(|x| matches!(x, Violation::IncomingPair { vertex: 3, .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::OutgoingPair { vertex: 3, .. })));
    }

    #[test]
    fn out_degree_three_violates_degree_bound() {
        let alg = BoundQuiverAlgebra::new(
            (1..=4).collect(),
            vec![arrow("a", 1, 2), arrow("b", 1, 3), arrow("c", 1, 4)],
            vec![],
        )
        .unwrap()
        .validate();
        assert!(alg
            .certificate()
            .violations()
            .contains(&Violation::OutDegree { vertex: 1, count: 3 }));
    }

    #[test]
    fn cycle_and_loop_are_not_trees() {
        let alg = BoundQuiverAlgebra::new(
            (1..=3).collect(),
            vec![arrow("a", 1, 2), arrow("b", 2, 3), arrow("c", 3, 1), arrow("l", 2, 2)],
            vec![],
        )
        .unwrap()
        .validate();
        let v = alg.certificate().violations();
        assert!(v.iter().any(|x| matches!(x, Violation::Cycle { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::Loop { .. })));
    }

    #[test]
    fn disconnected_quiver_is_rejected() {
        let alg = BoundQuiverAlgebra::new((1..=3).collect(), vec![arrow("a", 1, 2)], vec![])
            .unwrap()
            .validate();
        assert_eq!(
            alg.certificate().violations(),
            &[Violation::Disconnected { components: 2 }]
        );
    }

    #[test]
    fn length_one_relation_is_a_violation() {
        let alg = BoundQuiverAlgebra::new((1..=2).collect(), vec![arrow("a", 1, 2)], vec![rel(&["a"])])
            .unwrap()
            .validate();
        assert!(matches!(
            alg.certificate().violations(),
            [Violation::ShortRelation { .. }]
        ));
    }

    #[test]
    fn ideal_membership_is_subpath_containment() {
        let alg = BoundQuiverAlgebra::new(
            (1..=4).collect(),
            vec![arrow("a1", 1, 2), arrow("a3", 2, 3), arrow("a5", 3, 4)],
            vec![rel(&["a1", "a3"])],
        )
        .unwrap();
        assert!(alg.path_in_ideal_by_id(&["a1", "a3"]).unwrap());
        assert!(!alg.path_in_ideal_by_id(&["a1"]).unwrap());
        assert!(alg.path_in_ideal_by_id(&["a1", "a3", "a5"]).unwrap());
        assert!(!alg.path_in_ideal_by_id(&["a3", "a5"]).unwrap());
        assert!(matches!(
            alg.path_in_ideal_by_id(&["a1", "a5"]),
            Err(AlgebraError::NonComposable(_))
        ));
    }

    #[test]
    fn redundant_generators_are_dropped_with_warning() {
        let alg = BoundQuiverAlgebra::new(
            (1..=4).collect(),
            vec![arrow("a", 1, 2), arrow("b", 2, 3), arrow("c", 3, 4)],
            vec![rel(&["a", "b", "c"]), rel(&["b", "c"]), rel(&["b", "c"])],
        )
        .unwrap();
        assert_eq!(alg.relations().len(), 1);
        assert_eq!(alg.warnings().len(), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            BoundQuiverAlgebra::new(vec![1, 2], vec![arrow("a", 1, 3)], vec![]).unwrap_err(),
            AlgebraError::UnknownVertex { arrow: "a".into(), vertex: 3 }
        );
        assert_eq!(
            BoundQuiverAlgebra::new(vec![1, 2], vec![arrow("a", 1, 2), arrow("a", 2, 1)], vec![])
                .unwrap_err(),
            AlgebraError::DuplicateArrow("a".into())
        );
        assert_eq!(
            BoundQuiverAlgebra::new(vec![1, 2], vec![arrow("a", 1, 2)], vec![rel(&["z", "a"])])
                .unwrap_err(),
            AlgebraError::UnknownArrow("z".into())
        );
    }

    #[test]
    fn string_algebra_requires_valid_certificate() {
        let bad = BoundQuiverAlgebra::new((1..=3).collect(), vec![arrow("a", 1, 2)], vec![]).unwrap();
        assert!(matches!(StringAlgebra::new(bad), Err(AlgebraError::NotValid(1))));
        let good = StringAlgebra::new(four_valent()).unwrap();
        assert_eq!(good.n(), 6);
        assert_eq!(good.sinks(), BTreeSet::from([4, 5]));
    }
}
