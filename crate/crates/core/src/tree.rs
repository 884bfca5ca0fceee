//! Walks and vertex-induced subquivers of a tree quiver.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::quiver::{AlgebraError, ArrowIx, Quiver, StringAlgebra, VertexId};

/// Parent pointers of a BFS spanning tree rooted at dense index 0.
#[derive(Clone, Debug)]
pub(crate) struct TreeIndex {
    parent: Vec<Option<(usize, ArrowIx)>>,
    depth: Vec<usize>,
}

impl TreeIndex {
    pub(crate) fn build(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let mut adj: Vec<Vec<(usize, ArrowIx)>> = vec![Vec::new(); n];
        for ix in 0..q.arrows().len() {
            let (s, t) = (q.source_index(ix), q.target_index(ix));
            adj[s].push((t, ix));
            adj[t].push((s, ix));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut queue = VecDeque::from([0]);
        depth[0] = 0;
        while let Some(v) = queue.pop_front() {
            for &(w, a) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, a));
                    queue.push_back(w);
                }
            }
        }
        TreeIndex { parent, depth }
    }

    /// Dense vertex sequence and connecting arrows from `from` to `to`.
    fn path(&self, from: usize, to: usize) -> (Vec<usize>, Vec<ArrowIx>) {
        let (mut a, mut b) = (from, to);
        let mut up_a = vec![a];
        let mut arrows_a = Vec::new();
        let mut up_b = vec![b];
        let mut arrows_b = Vec::new();
        while self.depth[a] > self.depth[b] {
            let (p, arr) = self.parent[a].expect("non-root has parent");
            arrows_a.push(arr);
            a = p;
            up_a.push(a);
        }
        while self.depth[b] > self.depth[a] {
            let (p, arr) = self.parent[b].expect("non-root has parent");
            arrows_b.push(arr);
            b = p;
            up_b.push(b);
        }
        while a != b {
            let (pa, xa) = self.parent[a].expect("non-root has parent");
            let (pb, xb) = self.parent[b].expect("non-root has parent");
            arrows_a.push(xa);
            arrows_b.push(xb);
            a = pa;
            b = pb;
            up_a.push(a);
            up_b.push(b);
        }
        up_b.pop();
        up_a.extend(up_b.into_iter().rev());
        arrows_a.extend(arrows_b.into_iter().rev());
        (up_a, arrows_a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub arrow: ArrowIx,
    pub direction: Direction,
}

/// The unique simple path in the underlying tree from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeWalk {
    pub from: VertexId,
    pub to: VertexId,
    pub steps: Vec<Step>,
    vertices: Vec<VertexId>,
}

impl TreeWalk {
    /// Vertices visited, starting at `from`.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every step follows its arrow, i.e. the walk is a directed path.
    pub fn is_linear(&self) -> bool {
        self.steps.iter().all(|s| s.direction == Direction::Forward)
    }

    pub fn reversed(&self) -> TreeWalk {
        TreeWalk {
            from: self.to,
            to: self.from,
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| Step { arrow: s.arrow, direction: s.direction.flip() })
                .collect(),
            vertices: self.vertices.iter().rev().copied().collect(),
        }
    }
}

/// A vertex-induced subquiver.
pub trait Subquiver {
    fn contains_vertex(&self, v: VertexId) -> bool;
}

impl Subquiver for TreeWalk {
    fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

impl Subquiver for BTreeSet<VertexId> {
    fn contains_vertex(&self, v: VertexId) -> bool {
        self.contains(&v)
    }
}

/// A vertex of degree 3 or 4 together with its neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighbourhoodSubquiver {
    pub center: VertexId,
    pub members: BTreeSet<VertexId>,
    pub arrows: Vec<ArrowIx>,
}

impl Subquiver for NeighbourhoodSubquiver {
    fn contains_vertex(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("vertex {vertex} has {degree} neighbours; a neighbourhood needs at least 3")]
    TooFewNeighbours { vertex: VertexId, degree: usize },
}

pub fn walk_between(alg: &StringAlgebra, from: VertexId, to: VertexId) -> Result<TreeWalk, TreeError> {
    let (a, b) = (alg.index(from)?, alg.index(to)?);
    let (dense, arrows) = alg.tree().path(a, b);
    let steps = dense
        .windows(2)
        .zip(&arrows)
        .map(|(w, &arrow)| Step {
            arrow,
            direction: if alg.source_index(arrow) == w[0] {
                Direction::Forward
            } else {
                Direction::Backward
            },
        })
        .collect();
    Ok(TreeWalk {
        from,
        to,
        steps,
        vertices: dense.into_iter().map(|v| alg.vertex(v)).collect(),
    })
}

pub fn is_linear(walk: &TreeWalk) -> bool {
    walk.is_linear()
}

/// `true` iff some relation generator has all of its arrows inside `sub`.
pub fn restricted_ideal_nonzero<S: Subquiver + ?Sized>(alg: &StringAlgebra, sub: &S) -> bool {
    let q = alg.quiver();
    alg.relations().generators().iter().any(|g| {
        g.iter().all(|&a| {
            let arrow = q.arrow(a);
            sub.contains_vertex(arrow.source) && sub.contains_vertex(arrow.target)
        })
    })
}

pub fn neighbourhood(alg: &StringAlgebra, center: VertexId) -> Result<NeighbourhoodSubquiver, TreeError> {
    let c = alg.index(center)?;
    let mut arrows: Vec<ArrowIx> = alg.in_arrows(c).iter().chain(alg.out_arrows(c)).copied().collect();
    arrows.sort_unstable();
    if arrows.len() < 3 {
        return Err(TreeError::TooFewNeighbours { vertex: center, degree: arrows.len() });
    }
    let q = alg.quiver();
    let members = arrows
        .iter()
        .flat_map(|&a| [q.arrow(a).source, q.arrow(a).target])
        .collect();
    Ok(NeighbourhoodSubquiver { center, members, arrows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_algebra;
    use proptest::prelude::*;

    fn load(doc: &str) -> StringAlgebra {
        StringAlgebra::new(parse_algebra(doc).unwrap()).unwrap()
    }

    const EX_3_14_1: &str = "vertices: 4\narrow a1: 1 -> 2\narrow a2: 3 -> 2\narrow a3: 3 -> 4\n";
    const EX_3_14_2: &str = "vertices: 5\narrow a1: 3 -> 1\narrow a2: 3 -> 2\narrow a3: 4 -> 3\narrow a4: 4 -> 5\n";
    const EX_3_13: &str = "vertices: 6\narrow a1: 1 -> 3\narrow a2: 2 -> 3\narrow a3: 3 -> 4\narrow a4: 3 -> 5\narrow a5: 6 -> 5\nrelation: a1 a3\nrelation: a2 a4\n";

    fn ids(alg: &StringAlgebra, w: &TreeWalk) -> Vec<(String, Direction)> {
        w.steps.iter().map(|s| (alg.quiver().arrow(s.arrow).id.clone(), s.direction)).collect()
    }

    #[test]
    fn walk_follows_arrows_when_linear() {
        let alg = load(&format!("{EX_3_14_2}relation: a3 a1\nrelation: a3 a2\n"));
        let w = walk_between(&alg, 4, 1).unwrap();
        assert_eq!(
            ids(&alg, &w),
            vec![("a3".into(), Direction::Forward), ("a1".into(), Direction::Forward)]
        );
        assert!(w.is_linear());
        assert_eq!(w.vertices(), &[4, 3, 1]);
    }

    #[test]
    fn zigzag_walk_is_not_linear() {
        let alg = load(EX_3_14_1);
        let w = walk_between(&alg, 1, 4).unwrap();
        assert_eq!(
            ids(&alg, &w),
            vec![
                ("a1".into(), Direction::Forward),
                ("a2".into(), Direction::Backward),
                ("a3".into(), Direction::Forward)
            ]
        );
        assert!(!is_linear(&w));
    }

    #[test]
    fn trivial_walk() {
        let alg = load(EX_3_14_1);
        let w = walk_between(&alg, 3, 3).unwrap();
        assert!(w.is_empty() && w.is_linear());
        assert!(!restricted_ideal_nonzero(&alg, &w));
        assert!(walk_between(&alg, 3, 9).is_err());
    }

    #[test]
    fn restriction_to_walks() {
        let both = load(&format!("{EX_3_14_2}relation: a3 a1\nrelation: a3 a2\n"));
        assert!(restricted_ideal_nonzero(&both, &walk_between(&both, 4, 1).unwrap()));
        let one = load(&format!("{EX_3_14_2}relation: a3 a1\n"));
        assert!(!restricted_ideal_nonzero(&one, &walk_between(&one, 4, 2).unwrap()));
    }

    #[test]
    fn neighbourhoods() {
        let alg = load(EX_3_13);
        let x3 = neighbourhood(&alg, 3).unwrap();
        assert_eq!(x3.members, BTreeSet::from([1, 2, 3, 4, 5]));
        let names: Vec<_> = x3.arrows.iter().map(|&a| alg.quiver().arrow(a).id.as_str()).collect();
        assert_eq!(names, ["a1", "a2", "a3", "a4"]);

        let alg = load(&format!("{EX_3_14_2}relation: a3 a1\n"));
        let x3 = neighbourhood(&alg, 3).unwrap();
        assert_eq!(x3.members, BTreeSet::from([1, 2, 3, 4]));
        assert_eq!(x3.arrows.len(), 3);
        assert!(matches!(
            neighbourhood(&alg, 4),
            Err(TreeError::TooFewNeighbours { vertex: 4, degree: 2 })
        ));
    }

    fn random_tree(parents: &[usize], flips: &[bool]) -> Option<StringAlgebra> {
        crate::generate::tree_with_branch_relations(parents, flips).and_then(|a| StringAlgebra::new(a).ok())
    }

    proptest! {
        #[test]
        fn reversal_flips_directions(
            parents in proptest::collection::vec(0usize..8, 1..8),
            flips in proptest::collection::vec(any::<bool>(), 8),
            a in 0usize..9, b in 0usize..9,
        ) {
            let Some(alg) = random_tree(&parents, &flips) else { return Ok(()) };
            let n = alg.n();
            let (u, v) = (alg.vertex(a % n), alg.vertex(b % n));
            let w = walk_between(&alg, u, v).unwrap();
            prop_assert_eq!(w.reversed(), walk_between(&alg, v, u).unwrap());
            prop_assert_eq!(w.vertices().first(), Some(&u));
            prop_assert_eq!(w.vertices().last(), Some(&v));
            let distinct: BTreeSet<_> = w.vertices().iter().collect();
            prop_assert_eq!(distinct.len(), w.vertices().len());
        }

        #[test]
        fn linear_walks_concatenate(
            parents in proptest::collection::vec(0usize..8, 1..8),
            flips in proptest::collection::vec(any::<bool>(), 8),
            a in 0usize..9, b in 0usize..9, c in 0usize..9,
        ) {
            let Some(alg) = random_tree(&parents, &flips) else { return Ok(()) };
            let n = alg.n();
            let (j, i, k) = (alg.vertex(a % n), alg.vertex(b % n), alg.vertex(c % n));
            let jk = walk_between(&alg, j, k).unwrap();
            if jk.vertices().contains(&i)
                && walk_between(&alg, j, i).unwrap().is_linear()
                && walk_between(&alg, i, k).unwrap().is_linear()
            {
                prop_assert!(jk.is_linear());
            }
        }
    }
}
