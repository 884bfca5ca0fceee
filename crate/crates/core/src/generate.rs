//! Builders for the standard example algebras and for random tree-shaped
//! string algebras.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;

use crate::quiver::{Arrow, BoundQuiverAlgebra, VertexId};

fn arrow(id: impl Into<String>, source: VertexId, target: VertexId) -> Arrow {
    Arrow { id: id.into(), source, target }
}

fn build(n: VertexId, arrows: Vec<Arrow>, relations: &[&[&str]]) -> BoundQuiverAlgebra {
    let relations = relations
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect();
    BoundQuiverAlgebra::new((1..=n).collect(), arrows, relations).expect("generator output is well formed")
}

/// Four-valent vertex 3 with sources 1, 2, sinks 4, 5 and the extra arrow 6 -> 5.
pub fn four_valent() -> BoundQuiverAlgebra {
    build(
        6,
        vec![
            arrow("a1", 1, 3),
            arrow("a2", 2, 3),
            arrow("a3", 3, 4),
            arrow("a4", 3, 5),
            arrow("a5", 6, 5),
        ],
        &[&["a1", "a3"], &["a2", "a4"]],
    )
}

/// The path algebra of `1 -> 2 <- 3 -> 4`.
pub fn zigzag_a4() -> BoundQuiverAlgebra {
    build(4, vec![arrow("a1", 1, 2), arrow("a2", 3, 2), arrow("a3", 3, 4)], &[])
}

/// `3 -> 1`, `3 -> 2`, `4 -> 3`, `4 -> 5`. With `both_relations` the paths
/// through 3 into 1 and into 2 are zero, otherwise only the one into 1.
pub fn branching_d5(both_relations: bool) -> BoundQuiverAlgebra {
    let arrows = vec![arrow("a1", 3, 1), arrow("a2", 3, 2), arrow("a3", 4, 3), arrow("a4", 4, 5)];
    if both_relations {
        build(5, arrows, &[&["a3", "a1"], &["a3", "a2"]])
    } else {
        build(5, arrows, &[&["a3", "a1"]])
    }
}

/// Orientation of the `k`-th edge of a line `k-k+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Right,
    Left,
}

/// Type `A_n` line `1-2-…-n` with the given orientation per edge
/// (`orientation.len() == n - 1`) and no relations.
pub fn linear(orientation: &[Orientation]) -> BoundQuiverAlgebra {
    let n = orientation.len() as VertexId + 1;
    let arrows = orientation
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let k = k as VertexId + 1;
            match o {
                Orientation::Right => arrow(format!("a{k}"), k, k + 1),
                Orientation::Left => arrow(format!("a{k}"), k + 1, k),
            }
        })
        .collect();
    build(n, arrows, &[])
}

/// `1 -> 2 -> … -> n`.
pub fn linear_oriented(n: usize) -> BoundQuiverAlgebra {
    linear(&vec![Orientation::Right; n.saturating_sub(1)])
}

/// Parses `">><"`-style orientation strings: `>` points right, `<` left.
pub fn parse_orientation(s: &str) -> Option<Vec<Orientation>> {
    s.chars()
        .map(|c| match c {
            '>' | 'r' | 'R' => Some(Orientation::Right),
            '<' | 'l' | 'L' => Some(Orientation::Left),
            _ => None,
        })
        .collect()
}

/// Type `D_n` (`n >= 4`): `1 -> 3`, `2 -> 3`, `3 -> 4 -> … -> n`, with the
/// path `1 -> 3 -> 4` zero.
pub fn dynkin_d(n: usize) -> Option<BoundQuiverAlgebra> {
    if n < 4 {
        return None;
    }
    let n = n as VertexId;
    let mut arrows = vec![arrow("a1", 1, 3), arrow("a2", 2, 3)];
    for k in 3..n {
        arrows.push(arrow(format!("a{k}"), k, k + 1));
    }
    Some(build(n, arrows, &[&["a1", "a3"]]))
}

/// The family `Λ^(level)`: a four-valent centre; every leaf becomes
/// four-valent at the next level. All paths of length two are zero.
pub fn lambda(level: usize) -> BoundQuiverAlgebra {
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut next_vertex: VertexId = 1;
    let mut fresh = || {
        next_vertex += 1;
        next_vertex
    };
    // (vertex, has an outgoing arrow already, level at which it was added)
    let mut frontier: VecDeque<(VertexId, Option<bool>)> = VecDeque::from([(1, None)]);
    for _ in 0..level {
        let mut next = VecDeque::new();
        while let Some((v, leaf_is_source)) = frontier.pop_front() {
            let (add_in, add_out) = match leaf_is_source {
                None => (2, 2),
                Some(true) => (2, 1),
                Some(false) => (1, 2),
            };
            for _ in 0..add_in {
                let w = fresh();
                arrows.push(arrow(String::new(), w, v));
                next.push_back((w, Some(true)));
            }
            for _ in 0..add_out {
                let w = fresh();
                arrows.push(arrow(String::new(), v, w));
                next.push_back((w, Some(false)));
            }
        }
        frontier = next;
    }
    for (k, a) in arrows.iter_mut().enumerate() {
        a.id = format!("a{}", k + 1);
    }
    let mut relations = Vec::new();
    for a in &arrows {
        for b in &arrows {
            if a.target == b.source {
                relations.push(vec![a.id.clone(), b.id.clone()]);
            }
        }
    }
    BoundQuiverAlgebra::new((1..=next_vertex).collect(), arrows, relations).expect("well formed")
}

/// Tree on `parents.len() + 1` vertices where vertex `k + 2` hangs off
/// vertex `parents[k] % (k + 1) + 1`, oriented by `flips`, with every
/// length-two path through a vertex of in- or out-degree two declared
/// zero. `None` when some in- or out-degree exceeds two.
pub fn tree_with_branch_relations(parents: &[usize], flips: &[bool]) -> Option<BoundQuiverAlgebra> {
    let n = parents.len() + 1;
    let mut arrows = Vec::with_capacity(n - 1);
    for (k, &p) in parents.iter().enumerate() {
        let child = (k + 2) as VertexId;
        let parent = (p % (k + 1) + 1) as VertexId;
        let forward = flips.get(k).copied().unwrap_or(true);
        let (s, t) = if forward { (parent, child) } else { (child, parent) };
        arrows.push(arrow(format!("b{child}"), s, t));
    }
    let degree = |v: VertexId, out: bool| {
        arrows.iter().filter(|a| if out { a.source == v } else { a.target == v }).count()
    };
    if (1..=n as VertexId).any(|v| degree(v, true) > 2 || degree(v, false) > 2) {
        return None;
    }
    let mut relations = Vec::new();
    for a in &arrows {
        for b in &arrows {
            if a.target == b.source && (degree(a.target, true) == 2 || degree(a.target, false) == 2) {
                relations.push(vec![a.id.clone(), b.id.clone()]);
            }
        }
    }
    BoundQuiverAlgebra::new((1..=n as VertexId).collect(), arrows, relations).ok()
}

/// Vertex sequence of every directed path with at least two arrows.
fn long_paths(edges: &[(VertexId, VertexId)]) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<VertexId>> = edges.iter().map(|&(s, t)| vec![s, t]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in frontier {
            let last = *p.last().expect("non-empty");
            for &(s, t) in edges {
                if s == last {
                    let mut q = p.clone();
                    q.push(t);
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn is_subpath(short: &[VertexId], long: &[VertexId]) -> bool {
    short.len() <= long.len() && long.windows(short.len()).any(|w| w == short)
}

/// Smallest relabelling of (arrows, relations) over all vertex permutations.
type Shape = (Vec<(VertexId, VertexId)>, Vec<Vec<VertexId>>);

fn canonical_shape(n: usize, edges: &[(VertexId, VertexId)], relations: &[Vec<VertexId>]) -> Shape {
    (1..=n as VertexId)
        .permutations(n)
        .map(|perm| {
            let map = |v: VertexId| perm[v as usize - 1];
            let mut e: Vec<_> = edges.iter().map(|&(s, t)| (map(s), map(t))).collect();
            e.sort_unstable();
            let mut r: Vec<Vec<VertexId>> = relations.iter().map(|p| p.iter().map(|&v| map(v)).collect()).collect();
            r.sort_unstable();
            (e, r)
        })
        .min()
        .expect("at least one permutation")
}

/// Every valid string algebra on a tree with at most `max_vertices`
/// vertices, one per isomorphism class, with a reduced relation set.
pub fn small_tree_algebras(max_vertices: usize) -> Vec<BoundQuiverAlgebra> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for parents in parent_arrays(n) {
            for mask in 0u32..(1 << parents.len()) {
                let edges: Vec<(VertexId, VertexId)> = parents
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| {
                        let child = k as VertexId + 2;
                        if mask >> k & 1 == 1 { (child, p) } else { (p, child) }
                    })
                    .collect();
                let candidates = long_paths(&edges);
                for pick in 0u64..(1 << candidates.len()) {
                    let chosen: Vec<Vec<VertexId>> = (0..candidates.len())
                        .filter(|&k| pick >> k & 1 == 1)
                        .map(|k| candidates[k].clone())
                        .collect();
                    let reduced = chosen
                        .iter()
                        .tuple_combinations()
                        .all(|(a, b)| !is_subpath(a, b) && !is_subpath(b, a));
                    if !reduced {
                        continue;
                    }
                    let shape = canonical_shape(n, &edges, &chosen);
                    if seen.contains(&shape) {
                        continue;
                    }
                    let Some(alg) = algebra_from_shape(n, &shape) else { continue };
                    seen.insert(shape);
                    out.push(alg);
                }
            }
        }
    }
    out
}

fn algebra_from_shape(n: usize, (edges, relations): &Shape) -> Option<BoundQuiverAlgebra> {
    let arrows: Vec<Arrow> = edges
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| arrow(format!("a{}", k + 1), s, t))
        .collect();
    let id_of = |s: VertexId, t: VertexId| {
        let k = edges.iter().position(|&e| e == (s, t)).expect("path follows arrows");
        format!("a{}", k + 1)
    };
    let relations = relations
        .iter()
        .map(|p| p.windows(2).map(|w| id_of(w[0], w[1])).collect())
        .collect();
    let alg = BoundQuiverAlgebra::new((1..=n as VertexId).collect(), arrows, relations).ok()?.validate();
    alg.certificate().is_valid().then_some(alg)
}

/// All arrays where entry `k` is a parent for vertex `k + 2` among
/// vertices `1..=k + 1`; every tree shape on `n` vertices appears.
fn parent_arrays(n: usize) -> Vec<Vec<VertexId>> {
    (0..n.saturating_sub(1)).fold(vec![Vec::new()], |acc, k| {
        acc.into_iter()
            .flat_map(|p| {
                (1..=k as VertexId + 1).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect()
    })
}
