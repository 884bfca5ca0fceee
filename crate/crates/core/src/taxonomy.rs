//! Vertex classes by local orientation, and the zero/non-zero status of the
//! vertex ideal attached to each sink, branch and four-valent vertex.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::quiver::{AlgebraError, StringAlgebra, VertexId};
use crate::tree::{restricted_ideal_nonzero, walk_between};

/// Local shape of a vertex, read off its (in, out) degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexClass {
    /// Source with one neighbour.
    V1_1,
    /// Sink with one neighbour.
    V1_2,
    /// Source with two neighbours.
    V2_1,
    /// Sink with two neighbours.
    V2_2,
    /// One arrow in, one arrow out.
    V2_3,
    /// Two in, one out.
    V3_1,
    /// One in, two out.
    V3_2,
    /// Two in, two out.
    V4,
}

impl VertexClass {
    pub fn from_degrees(in_degree: usize, out_degree: usize) -> Option<Self> {
        Some(match (in_degree, out_degree) {
            (0, 1) => VertexClass::V1_1,
            (1, 0) => VertexClass::V1_2,
            (0, 2) => VertexClass::V2_1,
            (2, 0) => VertexClass::V2_2,
            (1, 1) => VertexClass::V2_3,
            (2, 1) => VertexClass::V3_1,
            (1, 2) => VertexClass::V3_2,
            (2, 2) => VertexClass::V4,
            _ => return None,
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            VertexClass::V1_1 => "v1.1",
            VertexClass::V1_2 => "v1.2",
            VertexClass::V2_1 => "v2.1",
            VertexClass::V2_2 => "v2.2",
            VertexClass::V2_3 => "v2.3",
            VertexClass::V3_1 => "v3.1",
            VertexClass::V3_2 => "v3.2",
            VertexClass::V4 => "v4",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            VertexClass::V1_1 => "source with one neighbour",
            VertexClass::V1_2 => "sink with one neighbour",
            VertexClass::V2_1 => "source with two neighbours",
            VertexClass::V2_2 => "sink with two neighbours",
            VertexClass::V2_3 => "one arrow in, one arrow out",
            VertexClass::V3_1 => "two arrows in, one out",
            VertexClass::V3_2 => "one arrow in, two out",
            VertexClass::V4 => "two arrows in, two out",
        }
    }

    /// Classes that carry a vertex ideal.
    pub fn has_vertex_ideal(self) -> bool {
        matches!(
            self,
            VertexClass::V1_2 | VertexClass::V2_2 | VertexClass::V3_1 | VertexClass::V3_2 | VertexClass::V4
        )
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealStatus {
    Zero,
    /// The whole algebra: a path algebra whose unique sink is this vertex.
    NonZeroWholeAlgebra,
    /// The defining ideal `I` itself.
    NonZeroIdeal,
    /// `I` restricted to the neighbourhood of the vertex.
    NonZeroRestricted,
}

impl IdealStatus {
    pub fn is_zero(self) -> bool {
        self == IdealStatus::Zero
    }
}

impl fmt::Display for IdealStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealStatus::Zero => "0",
            IdealStatus::NonZeroWholeAlgebra => "whole algebra",
            IdealStatus::NonZeroIdeal => "I",
            IdealStatus::NonZeroRestricted => "I restricted to neighbourhood",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexIdealStatus {
    pub vertex: VertexId,
    pub status: IdealStatus,
    /// Vertex `j` whose linear, relation-free walk into this vertex makes
    /// the ideal vanish. Absent for unconditional zeros and non-zero ideals.
    pub witness: Option<VertexId>,
}

/// Classification of one vertex with its ordered neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexProfile {
    pub vertex: VertexId,
    pub class: VertexClass,
    /// Sources of incoming arrows, in arrow declaration order.
    pub in_neighbours: Vec<VertexId>,
    /// Targets of outgoing arrows, in arrow declaration order.
    pub out_neighbours: Vec<VertexId>,
    pub ideal: Option<VertexIdealStatus>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaxonomyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("vertex {vertex} of class {class} has no vertex ideal")]
    NoVertexIdeal { vertex: VertexId, class: VertexClass },
    #[error("vertex {0} exceeds the degree bounds of a string algebra")]
    Unclassifiable(VertexId),
}

pub fn classify_vertex(alg: &StringAlgebra, i: VertexId) -> Result<VertexClass, TaxonomyError> {
    let ix = alg.index(i)?;
    VertexClass::from_degrees(alg.in_degree(ix), alg.out_degree(ix)).ok_or(TaxonomyError::Unclassifiable(i))
}

fn out_neighbours(alg: &StringAlgebra, ix: usize) -> Vec<VertexId> {
    alg.out_arrows(ix).iter().map(|&a| alg.vertex(alg.target_index(a))).collect()
}

fn in_neighbours(alg: &StringAlgebra, ix: usize) -> Vec<VertexId> {
    alg.in_arrows(ix).iter().map(|&a| alg.vertex(alg.source_index(a))).collect()
}

/// Smallest `j` with out-degree two whose walk to `i` is linear and meets no
/// relation, and (when `through` is non-empty) whose walks to each vertex of
/// `through` do meet a relation.
fn find_witness(alg: &StringAlgebra, i: VertexId, through: &[VertexId]) -> Option<VertexId> {
    alg.quiver().vertices().iter().copied().find(|&j| {
        let jx = alg.index(j).expect("vertex of the algebra");
        if alg.out_degree(jx) != 2 {
            return false;
        }
        let walk = walk_between(alg, j, i).expect("vertices of the algebra");
        walk.is_linear()
            && !restricted_ideal_nonzero(alg, &walk)
            && through.iter().all(|&t| {
                restricted_ideal_nonzero(alg, &walk_between(alg, j, t).expect("vertices of the algebra"))
            })
    })
}

pub fn vertex_ideal(alg: &StringAlgebra, i: VertexId) -> Result<VertexIdealStatus, TaxonomyError> {
    let class = classify_vertex(alg, i)?;
    let ix = alg.index(i)?;
    let zero = |witness| VertexIdealStatus { vertex: i, status: IdealStatus::Zero, witness };
    let nonzero = |status| VertexIdealStatus { vertex: i, status, witness: None };
    Ok(match class {
        VertexClass::V3_1 => zero(None),
        VertexClass::V1_2 | VertexClass::V2_2 => match find_witness(alg, i, &[]) {
            Some(j) => zero(Some(j)),
            None if alg.is_path_algebra() && alg.sinks().len() == 1 => nonzero(IdealStatus::NonZeroWholeAlgebra),
            None => nonzero(IdealStatus::NonZeroIdeal),
        },
        VertexClass::V3_2 | VertexClass::V4 => match find_witness(alg, i, &out_neighbours(alg, ix)) {
            Some(j) => zero(Some(j)),
            None => nonzero(IdealStatus::NonZeroRestricted),
        },
        VertexClass::V1_1 | VertexClass::V2_1 | VertexClass::V2_3 => {
            return Err(TaxonomyError::NoVertexIdeal { vertex: i, class })
        }
    })
}

pub fn profile(alg: &StringAlgebra, i: VertexId) -> Result<VertexProfile, TaxonomyError> {
    let class = classify_vertex(alg, i)?;
    let ix = alg.index(i)?;
    Ok(VertexProfile {
        vertex: i,
        class,
        in_neighbours: in_neighbours(alg, ix),
        out_neighbours: out_neighbours(alg, ix),
        ideal: if class.has_vertex_ideal() { Some(vertex_ideal(alg, i)?) } else { None },
    })
}

/// Profiles of all vertices, ascending by id. Fails only for the
/// one-vertex algebra, whose vertex has no neighbours to classify by.
pub fn profiles(alg: &StringAlgebra) -> Result<Vec<VertexProfile>, TaxonomyError> {
    alg.quiver().vertices().iter().map(|&v| profile(alg, v)).collect()
}

/// Number of sources with two neighbours.
pub fn count_p(alg: &StringAlgebra) -> usize {
    (0..alg.n())
        .filter(|&v| VertexClass::from_degrees(alg.in_degree(v), alg.out_degree(v)) == Some(VertexClass::V2_1))
        .count()
}

/// Number of vertices whose vertex ideal is non-zero.
pub fn count_q(alg: &StringAlgebra) -> Result<usize, TaxonomyError> {
    Ok(profiles(alg)?
        .iter()
        .filter(|p| p.ideal.as_ref().is_some_and(|s| !s.status.is_zero()))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn sa(alg: crate::quiver::BoundQuiverAlgebra) -> StringAlgebra {
        StringAlgebra::new(alg).unwrap()
    }

    #[test]
    fn classes_of_four_valent() {
        let alg = sa(generate::four_valent());
        assert_eq!(classify_vertex(&alg, 3).unwrap(), VertexClass::V4);
        assert_eq!(classify_vertex(&alg, 4).unwrap(), VertexClass::V1_2);
        assert_eq!(classify_vertex(&alg, 1).unwrap(), VertexClass::V1_1);
        assert_eq!(classify_vertex(&alg, 5).unwrap(), VertexClass::V2_2);
        assert!(classify_vertex(&alg, 7).is_err());
    }

    #[test]
    fn classes_of_branching() {
        let alg = sa(generate::branching_d5(true));
        assert_eq!(classify_vertex(&alg, 4).unwrap(), VertexClass::V2_1);
        assert_eq!(classify_vertex(&alg, 3).unwrap(), VertexClass::V3_2);
        let line = sa(generate::linear_oriented(2));
        assert_eq!(classify_vertex(&line, 1).unwrap(), VertexClass::V1_1);
        assert_eq!(classify_vertex(&line, 2).unwrap(), VertexClass::V1_2);
    }

    #[test]
    fn branch_ideal_vanishes_with_both_relations() {
        let alg = sa(generate::branching_d5(true));
        assert_eq!(
            vertex_ideal(&alg, 3).unwrap(),
            VertexIdealStatus { vertex: 3, status: IdealStatus::Zero, witness: Some(4) }
        );
        let alg = sa(generate::branching_d5(false));
        assert_eq!(vertex_ideal(&alg, 3).unwrap().status, IdealStatus::NonZeroRestricted);
    }

    #[test]
    fn unique_sink_of_path_algebra_gets_whole_algebra() {
        let alg = sa(generate::linear_oriented(3));
        assert_eq!(vertex_ideal(&alg, 3).unwrap().status, IdealStatus::NonZeroWholeAlgebra);
        assert_eq!(
            vertex_ideal(&alg, 1).unwrap_err(),
            TaxonomyError::NoVertexIdeal { vertex: 1, class: VertexClass::V1_1 }
        );
    }

    #[test]
    fn sink_of_bound_algebra_without_witness_gets_ideal() {
        // 1 -> 2 -> 3 with the path zero: single sink, no branching source
        let alg = sa(
            crate::quiver::BoundQuiverAlgebra::new(
                vec![1, 2, 3],
                vec![
                    crate::quiver::Arrow { id: "a".into(), source: 1, target: 2 },
                    crate::quiver::Arrow { id: "b".into(), source: 2, target: 3 },
                ],
                vec![vec!["a".into(), "b".into()]],
            )
            .unwrap(),
        );
        assert_eq!(vertex_ideal(&alg, 3).unwrap().status, IdealStatus::NonZeroIdeal);
    }

    #[test]
    fn center_of_lambda_one() {
        let alg = sa(generate::lambda(1));
        assert_eq!(vertex_ideal(&alg, 1).unwrap().status, IdealStatus::NonZeroRestricted);
        assert_eq!(count_p(&alg), 0);
        assert_eq!(count_q(&alg), Ok(1));
    }

    #[test]
    fn counts_of_zigzag() {
        let alg = sa(generate::zigzag_a4());
        assert_eq!(count_p(&alg), 1);
        assert_eq!(count_q(&alg), Ok(0));
        for sink in [2, 4] {
            assert_eq!(vertex_ideal(&alg, sink).unwrap().witness, Some(3));
        }
    }

    #[test]
    fn three_one_vertices_are_always_zero() {
        let alg = sa(generate::dynkin_d(5).unwrap());
        assert_eq!(classify_vertex(&alg, 3).unwrap(), VertexClass::V3_1);
        assert_eq!(vertex_ideal(&alg, 3).unwrap(), VertexIdealStatus { vertex: 3, status: IdealStatus::Zero, witness: None });
    }

    #[test]
    fn linear_single_orientation_has_no_interior_source() {
        for n in 2..8 {
            assert_eq!(count_p(&sa(generate::linear_oriented(n))), 0);
        }
    }
}
