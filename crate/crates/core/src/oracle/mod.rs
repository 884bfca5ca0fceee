//! Independent verification from first principles: string modules, their
//! homomorphism spaces, the Auslander-Reiten quiver, and the minimal right
//! determiners of its arrows.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::engine::DeterminerReport;
use crate::quiver::{AlgebraError, StringAlgebra, VertexId};

pub mod ar;
pub mod determiners;
pub mod linalg;
pub mod modules;
pub mod rep;
pub mod strings;

pub use ar::{ar_quiver, ArQuiver, SequenceKind};
pub use determiners::{
    almost_factors_through, brute_force_det, minimal_right_determiner, right_determined_by, BruteForceDet,
    ModuleDescriptor,
};
pub use strings::{enumerate_strings, string_module, StringWalk};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("two strings share the dimension vector of {0}")]
    DuplicateDimensionVector(String),
    #[error("{0} has an endomorphism space of dimension {1}")]
    NotBrick(String, usize),
    #[error("no string module has dimension vector {0:?}")]
    UnknownModule(BTreeMap<VertexId, usize>),
    #[error("the sink map into {0} is not surjective")]
    SinkMapNotEpi(String),
    #[error("irreducible map {0} joins modules of equal dimension")]
    EqualDimension(String),
    #[error("cokernel of {arrow} has socle {socle:?}, not a simple module")]
    SocleNotSimple {
        arrow: String,
        socle: BTreeMap<VertexId, usize>,
    },
    #[error("determiner computations disagree for {arrow}: {detail}")]
    RouteDisagreement { arrow: String, detail: String },
    #[error("arrow {0} is not an arrow of the AR quiver")]
    NotIrreducible(usize),
    #[error("kernel {0} of an irreducible epimorphism is injective")]
    KernelInjective(String),
    #[error("{0}")]
    Invariant(String),
}

/// The AR quiver of an algebra together with its determiners.
#[derive(Clone, Debug)]
pub struct OracleRun {
    pub ar: ArQuiver,
    pub det: BruteForceDet,
}

impl OracleRun {
    pub fn new(alg: &StringAlgebra) -> Result<Self, OracleError> {
        let ar = ar_quiver(alg)?;
        let det = brute_force_det(alg, &ar)?;
        Ok(OracleRun { ar, det })
    }

    /// AR-quiver invariants plus the facts tying determiners of
    /// epimorphisms to sequences with an indecomposable middle term.
    pub fn structural_problems(&self, alg: &StringAlgebra) -> Vec<String> {
        let mut problems = self.ar.verify(alg);
        let expected = alg.n() - 1;
        let one_middle = self.ar.one_middle_count();
        if one_middle != expected {
            problems.push(format!("{one_middle} sequences with indecomposable middle, expected {expected}"));
        }
        let from_epis = self.det.from_epis();
        if from_epis.len() != expected {
            problems.push(format!("{} determiners of epimorphisms, expected {expected}", from_epis.len()));
        }
        if from_epis != ar::one_middle_right_ends(&self.ar) {
            problems.push("determiners of epimorphisms differ from the right ends of one-middle sequences".into());
        }
        problems
    }

    pub fn summary(&self, alg: &StringAlgebra) -> OracleSummary {
        OracleSummary {
            modules: self.ar.nodes.len(),
            irreducible_maps: self.ar.arrows.len(),
            one_middle_sequences: self.ar.one_middle_count(),
            two_middle_sequences: self.ar.sequences.len() - self.ar.one_middle_count(),
            det_size: self.det.len(),
            projective_determiners: self.det.projective_vertices(&self.ar),
            non_projective_determiners: self.det.non_projective(&self.ar).len(),
            members: self.det.describe(alg, &self.ar),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub modules: usize,
    pub irreducible_maps: usize,
    pub one_middle_sequences: usize,
    pub two_middle_sequences: usize,
    pub det_size: usize,
    pub projective_determiners: BTreeSet<VertexId>,
    pub non_projective_determiners: usize,
    pub members: Vec<ModuleDescriptor>,
}

/// Engine and oracle side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub engine_count: usize,
    pub oracle_count: usize,
    pub engine_projectives: BTreeSet<VertexId>,
    pub oracle_projectives: BTreeSet<VertexId>,
    pub agrees: bool,
}

pub fn compare(report: &DeterminerReport, summary: &OracleSummary) -> Agreement {
    Agreement {
        engine_count: report.formula_value,
        oracle_count: summary.det_size,
        engine_projectives: report.projective_determiners.clone(),
        oracle_projectives: summary.projective_determiners.clone(),
        agrees: report.formula_value == summary.det_size
            && report.projective_determiners == summary.projective_determiners,
    }
}
