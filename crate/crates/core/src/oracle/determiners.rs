//! Minimal right determiners of irreducible maps, computed from modules.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use super::ar::{ArQuiver, ArNode};
use super::linalg::{Matrix, Scalar};
use super::modules::{projective, radical_inclusion};
use super::rep::{cokernel, hom_space, kernel, lifting_pairs, socle, ModuleMap, Representation};
use super::OracleError;
use crate::quiver::{AlgebraError, StringAlgebra, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Mono,
    Epi,
}

/// Whether `P(i)` almost factors through `f`: some pair `h: P(i) -> N`,
/// `g: rad P(i) -> M` with `h ∘ incl = f ∘ g` has `Im h ⊄ Im f`.
pub fn almost_factors_through(alg: &StringAlgebra, i: VertexId, f: &ModuleMap) -> Result<bool, AlgebraError> {
    let p = projective(alg, i)?;
    let iota = radical_inclusion(alg, &p);
    Ok(lifting_pairs(alg, &iota, f).iter().any(|h| !h.image_within(f)))
}

/// The vertices `i` such that `P(i)` almost factors through `f`.
pub fn almost_factoring_projectives(alg: &StringAlgebra, f: &ModuleMap) -> BTreeSet<VertexId> {
    alg.quiver()
        .vertices()
        .iter()
        .copied()
        .filter(|&i| almost_factors_through(alg, i, f).expect("vertex of the algebra"))
        .collect()
}

/// How the determiner of one irreducible map was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminerComputation {
    pub arrow: usize,
    pub kind: MapKind,
    pub determiner: usize,
    /// Mono: the vertex of the simple socle of the cokernel.
    pub socle_vertex: Option<VertexId>,
    pub almost_factoring: BTreeSet<VertexId>,
    /// Epi: the node isomorphic to the kernel.
    pub kernel_node: Option<usize>,
}

fn is_brick(alg: &StringAlgebra, m: &Arc<Representation>) -> bool {
    hom_space(alg, m, m).len() == 1
}

/// Determiner of the `arrow`-th irreducible map of `ar`, cross-checking the
/// socle route, the almost-factorization route and the assembly of the
/// translate of the kernel with the almost factoring projectives.
pub fn minimal_right_determiner(
    alg: &StringAlgebra,
    ar: &ArQuiver,
    arrow: usize,
) -> Result<DeterminerComputation, OracleError> {
    let a = ar.arrows.get(arrow).ok_or(OracleError::NotIrreducible(arrow))?;
    let f = &a.map;
    let label = || ar.arrow_label(arrow);
    let (ds, dt) = (ar.nodes[a.source].dim(), ar.nodes[a.target].dim());
    let almost_factoring = almost_factoring_projectives(alg, f);
    let disagree = |detail: String| OracleError::RouteDisagreement { arrow: label(), detail };
    if ds < dt {
        let (c, _) = cokernel(alg, f);
        let soc = socle(alg, &c);
        let single = match soc.iter().next() {
            Some((&i, &1)) if soc.len() == 1 => i,
            _ => return Err(OracleError::SocleNotSimple { arrow: label(), socle: soc }),
        };
        if !is_brick(alg, &c) {
            return Err(OracleError::NotBrick(format!("cokernel of {}", label()), hom_space(alg, &c, &c).len()));
        }
        if !kernel(alg, f).0.is_zero() {
            return Err(disagree("monomorphism with non-zero kernel".into()));
        }
        if almost_factoring != BTreeSet::from([single]) {
            return Err(disagree(format!(
                "socle of the cokernel is S({single}) but the almost factoring projectives are {almost_factoring:?}"
            )));
        }
        let determiner = ar.projective_node(single).ok_or_else(|| disagree(format!("P({single}) is not a node")))?;
        Ok(DeterminerComputation {
            arrow,
            kind: MapKind::Mono,
            determiner,
            socle_vertex: Some(single),
            almost_factoring,
            kernel_node: None,
        })
    } else if ds > dt {
        let (k, _) = kernel(alg, f);
        let node = ar
            .node_by_dims(k.dims())
            .ok_or_else(|| OracleError::UnknownModule(k.dim_vector(alg)))?;
        if !is_brick(alg, &k) {
            return Err(OracleError::NotBrick(format!("kernel of {}", label()), hom_space(alg, &k, &k).len()));
        }
        if !almost_factoring.is_empty() {
            return Err(disagree(format!("epimorphism almost factored by {almost_factoring:?}")));
        }
        let determiner = ar
            .tau_inverse(node)
            .ok_or_else(|| OracleError::KernelInjective(ar.nodes[node].label.clone()))?;
        Ok(DeterminerComputation {
            arrow,
            kind: MapKind::Epi,
            determiner,
            socle_vertex: None,
            almost_factoring,
            kernel_node: Some(node),
        })
    } else {
        Err(OracleError::EqualDimension(label()))
    }
}

/// `Det` as computed from the AR quiver.
#[derive(Clone, Debug)]
pub struct BruteForceDet {
    pub members: BTreeSet<usize>,
    pub computations: Vec<DeterminerComputation>,
}

impl BruteForceDet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn projective_vertices(&self, ar: &ArQuiver) -> BTreeSet<VertexId> {
        self.members.iter().filter_map(|&k| ar.nodes[k].projective_of).collect()
    }

    pub fn non_projective(&self, ar: &ArQuiver) -> BTreeSet<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&k| ar.nodes[k].projective_of.is_none())
            .collect()
    }

    /// Determiners of the epimorphisms.
    pub fn from_epis(&self) -> BTreeSet<usize> {
        self.computations
            .iter()
            .filter(|c| c.kind == MapKind::Epi)
            .map(|c| c.determiner)
            .collect()
    }

    pub fn describe(&self, alg: &StringAlgebra, ar: &ArQuiver) -> Vec<ModuleDescriptor> {
        self.members.iter().map(|&k| ModuleDescriptor::new(alg, &ar.nodes[k])).collect()
    }
}

/// Machine-readable summary of one indecomposable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleDescriptor {
    pub string: String,
    pub dimension_vector: BTreeMap<VertexId, usize>,
    pub projective_of: Option<VertexId>,
}

impl ModuleDescriptor {
    pub fn new(alg: &StringAlgebra, node: &ArNode) -> Self {
        ModuleDescriptor {
            string: node.label.clone(),
            dimension_vector: node.module.dim_vector(alg),
            projective_of: node.projective_of,
        }
    }
}

/// The set of minimal right determiners of all irreducible maps.
pub fn brute_force_det(alg: &StringAlgebra, ar: &ArQuiver) -> Result<BruteForceDet, OracleError> {
    let computations = (0..ar.arrows.len())
        .map(|k| minimal_right_determiner(alg, ar, k))
        .collect::<Result<Vec<_>, _>>()?;
    let members = computations.iter().map(|c| c.determiner).collect();
    Ok(BruteForceDet { members, computations })
}

fn rows_rank(rows: &[Vec<Scalar>], width: usize) -> usize {
    if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows, width).rank()
    }
}

/// Whether `f: X -> Y` is right determined by the direct sum of `c`: for
/// every node `X'` and every `f': X' -> Y` such that `f' ∘ φ` factors
/// through `f` for all `φ: C -> X'`, `f'` itself factors through `f`.
pub fn right_determined_by(alg: &StringAlgebra, ar: &ArQuiver, f: &ModuleMap, c: &[Arc<Representation>]) -> bool {
    let x = f.source();
    let y = f.target();
    let c_sum = Representation::direct_sum(alg, c).sum;
    // Maps C -> Y that factor through f.
    let through_f: Vec<Vec<Scalar>> = hom_space(alg, &c_sum, x).iter().map(|h| h.then(f).flatten()).collect();
    for node in &ar.nodes {
        let xp = &node.module;
        let fprimes = hom_space(alg, xp, y);
        if fprimes.is_empty() {
            continue;
        }
        let phis = hom_space(alg, &c_sum, xp);
        // Unknowns: coefficients of f' (fprimes.len()), then one set of
        // coefficients over `through_f` per φ.
        let k = fprimes.len();
        let block = through_f.len();
        let width = k + phis.len() * block;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (l, phi) in phis.iter().enumerate() {
            let composites: Vec<Vec<Scalar>> = fprimes.iter().map(|fp| phi.then(fp).flatten()).collect();
            let len = composites[0].len();
            for e in 0..len {
                let mut row = vec![Scalar::from_integer(0.into()); width];
                for (j, comp) in composites.iter().enumerate() {
                    row[j] = comp[e].clone();
                }
                for (m, t) in through_f.iter().enumerate() {
                    row[k + l * block + m] = -t[e].clone();
                }
                rows.push(row);
            }
        }
        let admissible: Vec<Vec<Scalar>> = if rows.is_empty() {
            (0..k)
                .map(|j| (0..k).map(|i| Scalar::from_integer(i64::from(i == j).into())).collect())
                .collect()
        } else {
            Matrix::from_rows(&rows, width)
                .nullspace()
                .into_iter()
                .map(|v| v[..k].to_vec())
                .collect()
        };
        let factors: Vec<Vec<Scalar>> = hom_space(alg, xp, x).iter().map(|h| h.then(f).flatten()).collect();
        let width_y = fprimes[0].flatten().len();
        let base = rows_rank(&factors, width_y);
        for coeffs in admissible {
            let fp = ModuleMap::combination(&fprimes, &coeffs);
            let mut extended = factors.clone();
            extended.push(fp.flatten());
            if rows_rank(&extended, width_y) > base {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::oracle::ar::ar_quiver;

    fn a2() -> (StringAlgebra, ArQuiver) {
        let alg = StringAlgebra::new(generate::linear_oriented(2)).unwrap();
        let ar = ar_quiver(&alg).unwrap();
        (alg, ar)
    }

    fn arrow_between(ar: &ArQuiver, s: &str, t: &str) -> usize {
        ar.arrows
            .iter()
            .position(|a| ar.nodes[a.source].label == s && ar.nodes[a.target].label == t)
            .unwrap()
    }

    #[test]
    fn a2_almost_factorization() {
        let (alg, ar) = a2();
        let mono = &ar.arrows[arrow_between(&ar, "e2", "a1")].map;
        assert!(almost_factors_through(&alg, 1, mono).unwrap());
        assert!(!almost_factors_through(&alg, 2, mono).unwrap());
        let id = ModuleMap::identity(ar.nodes[0].module.clone());
        for i in [1, 2] {
            assert!(!almost_factors_through(&alg, i, &id).unwrap());
        }
    }

    #[test]
    fn a2_determiners() {
        let (alg, ar) = a2();
        let mono = minimal_right_determiner(&alg, &ar, arrow_between(&ar, "e2", "a1")).unwrap();
        assert_eq!(mono.kind, MapKind::Mono);
        assert_eq!(ar.nodes[mono.determiner].projective_of, Some(1));
        let epi = minimal_right_determiner(&alg, &ar, arrow_between(&ar, "a1", "e1")).unwrap();
        assert_eq!(epi.kind, MapKind::Epi);
        assert_eq!(ar.nodes[epi.determiner].label, "e1");
        let det = brute_force_det(&alg, &ar).unwrap();
        assert_eq!(det.len(), 2);
        assert_eq!(det.projective_vertices(&ar), BTreeSet::from([1]));
        assert!(matches!(minimal_right_determiner(&alg, &ar, 9), Err(OracleError::NotIrreducible(9))));
    }

    #[test]
    fn a2_right_determination() {
        let (alg, ar) = a2();
        for (k, a) in ar.arrows.iter().enumerate() {
            let c = minimal_right_determiner(&alg, &ar, k).unwrap();
            let module = ar.nodes[c.determiner].module.clone();
            assert!(right_determined_by(&alg, &ar, &a.map, &[module]));
            assert!(!right_determined_by(&alg, &ar, &a.map, &[]));
        }
    }

    #[test]
    fn branching_monos_avoid_their_target() {
        let alg = StringAlgebra::new(generate::four_valent()).unwrap();
        let ar = ar_quiver(&alg).unwrap();
        let det = brute_force_det(&alg, &ar).unwrap();
        for c in &det.computations {
            let target = ar.arrows[c.arrow].target;
            if let Some(i) = ar.nodes[target].projective_of {
                if alg.out_degree(alg.index(i).unwrap()) == 2 {
                    assert_ne!(c.determiner, target);
                }
            }
        }
        assert_eq!(det.projective_vertices(&ar), BTreeSet::from([1, 2, 4, 5, 6]));
        assert_eq!(det.non_projective(&ar).len(), 5);
    }
}
