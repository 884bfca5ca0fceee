//! Combinatorial decision of which indecomposable projectives are minimal
//! right determiners of irreducible morphisms, and the resulting count
//! `|Det| = 2n - p - q - 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::quiver::{StringAlgebra, VertexId};
use crate::taxonomy::{self, IdealStatus, TaxonomyError, VertexClass, VertexProfile};
use crate::tree::{neighbourhood, restricted_ideal_nonzero};

/// Which criterion decided membership of `P(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// One-neighbour source: always a determiner.
    Source,
    /// Single outgoing arrow (flow-through or two-in-one-out): always.
    SingleOutgoingArrow,
    /// Sink, decided by its vertex ideal.
    SinkIdeal,
    /// Branching vertex with two outgoing arrows, decided by its vertex ideal.
    BranchIdeal,
    /// Two-neighbour source: never a determiner.
    BranchingSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveVerdict {
    pub vertex: VertexId,
    pub class: VertexClass,
    pub ideal: Option<IdealStatus>,
    pub witness: Option<VertexId>,
    pub criterion: Criterion,
    pub is_determiner: bool,
}

impl ProjectiveVerdict {
    /// Human-readable justification.
    pub fn rationale(&self) -> String {
        let verdict = if self.is_determiner { "P({v}) is a determiner" } else { "P({v}) is not a determiner" }
            .replace("{v}", &self.vertex.to_string());
        let why = match (self.criterion, self.ideal, self.witness) {
            (Criterion::Source, ..) => "source with one neighbour: its radical inclusion has it as determiner".to_owned(),
            (Criterion::SingleOutgoingArrow, ..) => {
                "exactly one outgoing arrow: the radical is indecomposable".to_owned()
            }
            (Criterion::BranchingSource, ..) => {
                "source with two neighbours: no irreducible monomorphism has it as determiner".to_owned()
            }
            (_, Some(IdealStatus::Zero), Some(j)) => {
                format!("vertex ideal is zero, witnessed by the linear relation-free walk from {j}")
            }
            (_, Some(IdealStatus::Zero), None) => "vertex ideal is zero".to_owned(),
            (_, Some(status), _) => format!("vertex ideal is non-zero ({status})"),
            (_, None, _) => "no vertex ideal".to_owned(),
        };
        format!("{verdict}: {} [{}]; {why}", self.class.description(), self.class)
    }
}

fn verdict_from_profile(p: &VertexProfile) -> ProjectiveVerdict {
    let ideal = p.ideal.as_ref().map(|s| s.status);
    let witness = p.ideal.as_ref().and_then(|s| s.witness);
    let ideal_zero = ideal.is_some_and(IdealStatus::is_zero);
    let (criterion, is_determiner) = match p.class {
        VertexClass::V1_1 => (Criterion::Source, true),
        VertexClass::V2_3 | VertexClass::V3_1 => (Criterion::SingleOutgoingArrow, true),
        VertexClass::V1_2 | VertexClass::V2_2 => (Criterion::SinkIdeal, ideal_zero),
        VertexClass::V3_2 | VertexClass::V4 => (Criterion::BranchIdeal, ideal_zero),
        VertexClass::V2_1 => (Criterion::BranchingSource, false),
    };
    ProjectiveVerdict {
        vertex: p.vertex,
        class: p.class,
        ideal,
        witness,
        criterion,
        is_determiner,
    }
}

pub fn is_projective_determiner(alg: &StringAlgebra, i: VertexId) -> Result<ProjectiveVerdict, TaxonomyError> {
    Ok(verdict_from_profile(&taxonomy::profile(alg, i)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminerReport {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub formula_value: usize,
    pub projective_determiners: BTreeSet<VertexId>,
    pub epi_determiner_count: usize,
    pub rationale: Vec<ProjectiveVerdict>,
}

pub fn determiner_report(alg: &StringAlgebra) -> Result<DeterminerReport, TaxonomyError> {
    let profiles = taxonomy::profiles(alg)?;
    let n = alg.n();
    let p = profiles.iter().filter(|x| x.class == VertexClass::V2_1).count();
    let q = profiles
        .iter()
        .filter(|x| x.ideal.as_ref().is_some_and(|s| !s.status.is_zero()))
        .count();
    let rationale: Vec<ProjectiveVerdict> = profiles.iter().map(verdict_from_profile).collect();
    let projective_determiners = rationale.iter().filter(|v| v.is_determiner).map(|v| v.vertex).collect();
    Ok(DeterminerReport {
        n,
        p,
        q,
        formula_value: 2 * n - p - q - 1,
        projective_determiners,
        epi_determiner_count: n - 1,
        rationale,
    })
}

impl fmt::Display for DeterminerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, p = {}, q = {}", self.n, self.p, self.q)?;
        writeln!(
            f,
            "|Det| = 2n - p - q - 1 = {} ({} projective + {} from epimorphisms)",
            self.formula_value,
            self.projective_determiners.len(),
            self.epi_determiner_count
        )?;
        let set = self.projective_determiners.iter().map(|v| format!("P({v})")).collect::<Vec<_>>();
        writeln!(f, "projective determiners: {{{}}}", set.join(", "))?;
        for v in &self.rationale {
            writeln!(f, "  {}", v.rationale())?;
        }
        Ok(())
    }
}

/// Both sides of the unique-sink characterization for a sink `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SinkCharacterization {
    /// The projective determiners are exactly the `P(i)` with `i != j`.
    pub all_but_sink: bool,
    /// `j` is the only sink of the quiver.
    pub unique_sink: bool,
}

impl SinkCharacterization {
    pub fn agrees(&self) -> bool {
        self.all_but_sink == self.unique_sink
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotApplicable {
    FourValentVertex(VertexId),
    NotASink { vertex: VertexId, class: VertexClass },
    UnknownVertex(VertexId),
}

/// Evaluates the characterization against an arbitrary projective
/// determiner set (the engine's, or one computed independently).
pub fn sink_characterization_for(
    alg: &StringAlgebra,
    j: VertexId,
    projective_determiners: &BTreeSet<VertexId>,
) -> Result<SinkCharacterization, NotApplicable> {
    let class = taxonomy::classify_vertex(alg, j).map_err(|_| NotApplicable::UnknownVertex(j))?;
    if let Some(v) = (0..alg.n()).find(|&v| alg.in_degree(v) == 2 && alg.out_degree(v) == 2) {
        return Err(NotApplicable::FourValentVertex(alg.vertex(v)));
    }
    if !matches!(class, VertexClass::V1_2 | VertexClass::V2_2) {
        return Err(NotApplicable::NotASink { vertex: j, class });
    }
    let expected: BTreeSet<VertexId> = alg.quiver().vertices().iter().copied().filter(|&v| v != j).collect();
    Ok(SinkCharacterization {
        all_but_sink: *projective_determiners == expected,
        unique_sink: alg.sinks() == BTreeSet::from([j]),
    })
}

pub fn check_unique_sink_characterization(
    alg: &StringAlgebra,
    j: VertexId,
) -> Result<SinkCharacterization, NotApplicable> {
    let report = determiner_report(alg).map_err(|_| NotApplicable::UnknownVertex(j))?;
    sink_characterization_for(alg, j, &report.projective_determiners)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "n")]
pub enum DynkinKind {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    Other,
}

impl fmt::Display for DynkinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinKind::A(n) => write!(f, "A{n}"),
            DynkinKind::D(n) => write!(f, "D{n}"),
            DynkinKind::E6 => f.write_str("E6"),
            DynkinKind::E7 => f.write_str("E7"),
            DynkinKind::E8 => f.write_str("E8"),
            DynkinKind::Other => f.write_str("other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinReport {
    pub kind: DynkinKind,
    /// Standard labelling `1..=n` of the shape, mapped to vertex ids.
    pub labelling: BTreeMap<usize, VertexId>,
    /// For D and E shapes: whether a relation lies in the neighbourhood of
    /// the branch vertex.
    pub branch_ideal_nonzero: Option<bool>,
    /// Sources counted at the label positions where a two-neighbour source
    /// can occur for this shape.
    pub p_by_labels: Option<usize>,
    pub q: usize,
}

/// Arms of a tree with exactly one vertex of degree three, as vertex
/// sequences walking away from the branch point.
fn arms(adj: &[Vec<usize>], center: usize) -> Vec<Vec<usize>> {
    adj[center]
        .iter()
        .map(|&start| {
            let mut arm = vec![start];
            let (mut prev, mut cur) = (center, start);
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                arm.push(next);
                prev = cur;
                cur = next;
            }
            arm
        })
        .collect()
}

pub fn dynkin_type(alg: &StringAlgebra) -> Result<DynkinReport, TaxonomyError> {
    let n = alg.n();
    let mut adj = vec![Vec::new(); n];
    for a in 0..alg.quiver().arrows().len() {
        let (s, t) = (alg.source_index(a), alg.target_index(a));
        adj[s].push(t);
        adj[t].push(s);
    }
    // neighbours sorted by vertex id so labellings are deterministic
    for list in &mut adj {
        list.sort_unstable();
    }
    let degrees: Vec<usize> = adj.iter().map(Vec::len).collect();
    let branch: Vec<usize> = (0..n).filter(|&v| degrees[v] >= 3).collect();
    let q = taxonomy::count_q(alg)?;
    let other = DynkinReport {
        kind: DynkinKind::Other,
        labelling: BTreeMap::new(),
        branch_ideal_nonzero: None,
        p_by_labels: None,
        q,
    };

    let is_source = |v: usize| alg.in_degree(v) == 0;
    let mut labelling = BTreeMap::new();
    let (kind, p_by_labels, branch_ideal_nonzero) = if branch.is_empty() {
        // a path; label from the end with the smaller id
        let ends: Vec<usize> = (0..n).filter(|&v| degrees[v] <= 1).collect();
        let mut prev = usize::MAX;
        let mut cur = ends[0];
        for label in 1..=n {
            labelling.insert(label, alg.vertex(cur));
            let next = adj[cur].iter().copied().find(|&w| w != prev);
            prev = cur;
            match next {
                Some(w) => cur = w,
                None => break,
            }
        }
        let p = (2..n).filter(|l| is_source(alg.index(labelling[l]).unwrap())).count();
        (DynkinKind::A(n), Some(p), None)
    } else if branch.len() == 1 && degrees[branch[0]] == 3 {
        let c = branch[0];
        let mut arm_list = arms(&adj, c);
        arm_list.sort_by_key(|a| (a.len(), alg.vertex(a[0])));
        let lens: Vec<usize> = arm_list.iter().map(Vec::len).collect();
        let kind = match lens.as_slice() {
            [1, 1, k] => DynkinKind::D(3 + k),
            [1, 2, 2] => DynkinKind::E6,
            [1, 2, 3] => DynkinKind::E7,
            [1, 2, 4] => DynkinKind::E8,
            _ => return Ok(other),
        };
        let x3 = neighbourhood(alg, alg.vertex(c)).expect("branch vertex has three neighbours");
        let nonzero = restricted_ideal_nonzero(alg, &x3);
        let p = match kind {
            DynkinKind::D(m) => {
                labelling.insert(1, alg.vertex(arm_list[0][0]));
                labelling.insert(2, alg.vertex(arm_list[1][0]));
                labelling.insert(3, alg.vertex(c));
                for (k, &v) in arm_list[2].iter().enumerate() {
                    labelling.insert(4 + k, alg.vertex(v));
                }
                (4..m).filter(|l| is_source(alg.index(labelling[l]).unwrap())).count()
            }
            _ => {
                // 1 - 2 - 3 - 4 - ... - (m-1), with m attached to 3
                let m = n;
                // arms sorted by length then first vertex id: short, left, right
                let (short, left, right) = (&arm_list[0], &arm_list[1], &arm_list[2]);
                labelling.insert(m, alg.vertex(short[0]));
                labelling.insert(2, alg.vertex(left[0]));
                labelling.insert(1, alg.vertex(left[1]));
                labelling.insert(3, alg.vertex(c));
                for (k, &v) in right.iter().enumerate() {
                    labelling.insert(4 + k, alg.vertex(v));
                }
                (1..=m)
                    .filter(|l| ![1, 3, m - 1, m].contains(l))
                    .filter(|l| is_source(alg.index(labelling[l]).unwrap()))
                    .count()
            }
        };
        (kind, Some(p), Some(nonzero))
    } else {
        return Ok(other);
    };
    Ok(DynkinReport {
        kind,
        labelling,
        branch_ideal_nonzero,
        p_by_labels,
        q,
    })
}
