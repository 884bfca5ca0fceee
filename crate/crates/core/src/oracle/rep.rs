//! Finite-dimensional representations of a bound quiver and the maps
//! between them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::linalg::{Matrix, Scalar};
use crate::quiver::{StringAlgebra, VertexId};

/// A representation: one vector space per vertex (by dense index) and one
/// matrix per arrow of shape `dims[target] x dims[source]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Panics when a matrix shape does not match `dims`.
    pub fn new(alg: &StringAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        assert_eq!(dims.len(), alg.n());
        assert_eq!(maps.len(), alg.quiver().arrows().len());
        for (a, m) in maps.iter().enumerate() {
            assert_eq!(
                m.shape(),
                (dims[alg.target_index(a)], dims[alg.source_index(a)]),
                "arrow matrix shape"
            );
        }
        Representation { dims, maps }
    }

    pub fn zero(alg: &StringAlgebra) -> Self {
        let maps = (0..alg.quiver().arrows().len()).map(|_| Matrix::zeros(0, 0)).collect();
        Representation {
            dims: vec![0; alg.n()],
            maps,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn dim_vector(&self, alg: &StringAlgebra) -> BTreeMap<VertexId, usize> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(v, &d)| (alg.vertex(v), d))
            .collect()
    }

    /// Every relation generator acts as zero.
    pub fn satisfies_relations(&self, alg: &StringAlgebra) -> bool {
        alg.relations().generators().iter().all(|path| {
            let start = alg.source_index(path[0]);
            let mut acc = Matrix::identity(self.dims[start]);
            for &a in path {
                acc = self.maps[a].mul(&acc);
            }
            acc.is_zero()
        })
    }

    /// Direct sum with the canonical injections and projections.
    pub fn direct_sum(alg: &StringAlgebra, parts: &[Arc<Representation>]) -> DirectSum {
        let n = alg.n();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..alg.quiver().arrows().len())
            .map(|a| {
                let (s, t) = (alg.source_index(a), alg.target_index(a));
                let mut m = Matrix::zeros(dims[t], dims[s]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let block = &p.maps[a];
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            m[(r0 + r, c0 + c)] = block[(r, c)].clone();
                        }
                    }
                    r0 += p.dims[t];
                    c0 += p.dims[s];
                }
                m
            })
            .collect();
        let sum = Arc::new(Representation { dims, maps });
        let mut offsets = vec![0usize; n];
        let mut injections = Vec::with_capacity(parts.len());
        let mut projections = Vec::with_capacity(parts.len());
        for p in parts {
            let inj: Vec<Matrix> = (0..n)
                .map(|v| {
                    let mut m = Matrix::zeros(sum.dims[v], p.dims[v]);
                    for k in 0..p.dims[v] {
                        m[(offsets[v] + k, k)] = Scalar::from_integer(1.into());
                    }
                    m
                })
                .collect();
            let proj: Vec<Matrix> = inj.iter().map(Matrix::transpose).collect();
            for (offset, d) in offsets.iter_mut().zip(&p.dims) {
                *offset += d;
            }
            injections.push(ModuleMap::from_blocks(p.clone(), sum.clone(), inj));
            projections.push(ModuleMap::from_blocks(sum.clone(), p.clone(), proj));
        }
        DirectSum {
            sum,
            injections,
            projections,
        }
    }
}

pub struct DirectSum {
    pub sum: Arc<Representation>,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// A homomorphism given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Arc<Representation>,
    target: Arc<Representation>,
    blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn from_blocks(source: Arc<Representation>, target: Arc<Representation>, blocks: Vec<Matrix>) -> Self {
        for (v, b) in blocks.iter().enumerate() {
            assert_eq!(b.shape(), (target.dims[v], source.dims[v]), "block shape");
        }
        ModuleMap { source, target, blocks }
    }

    pub fn zero(source: Arc<Representation>, target: Arc<Representation>) -> Self {
        let blocks = (0..source.dims.len())
            .map(|v| Matrix::zeros(target.dims[v], source.dims[v]))
            .collect();
        ModuleMap { source, target, blocks }
    }

    pub fn identity(m: Arc<Representation>) -> Self {
        let blocks = m.dims.iter().map(|&d| Matrix::identity(d)).collect();
        ModuleMap {
            source: m.clone(),
            target: m,
            blocks,
        }
    }

    pub fn source(&self) -> &Arc<Representation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Representation> {
        &self.target
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &ModuleMap) -> ModuleMap {
        debug_assert_eq!(self.target.dims, after.source.dims);
        let blocks = self.blocks.iter().zip(&after.blocks).map(|(a, b)| b.mul(a)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: after.target.clone(),
            blocks,
        }
    }

    pub fn is_intertwining(&self, alg: &StringAlgebra) -> bool {
        (0..alg.quiver().arrows().len()).all(|a| {
            let (s, t) = (alg.source_index(a), alg.target_index(a));
            self.blocks[t].mul(self.source.map(a)) == self.target.map(a).mul(&self.blocks[s])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    /// All block entries in vertex order.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    pub fn scale(&self, k: &Scalar) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(k)).collect(),
        }
    }

    /// `Σ coeffs[k] * basis[k]`; `basis` must be non-empty.
    pub fn combination(basis: &[ModuleMap], coeffs: &[Scalar]) -> ModuleMap {
        let mut acc = ModuleMap::zero(basis[0].source.clone(), basis[0].target.clone());
        for (m, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// `Im self ⊆ Im other`, both maps into the same module.
    pub fn image_within(&self, other: &ModuleMap) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(h, f)| f.column_space_contains(h))
    }
}

/// Layout of the unknowns of a vertex-wise linear map `M -> N`.
struct BlockLayout {
    offsets: Vec<usize>,
    total: usize,
}

impl BlockLayout {
    fn new(m: &Representation, n: &Representation) -> Self {
        let mut offsets = Vec::with_capacity(m.dims.len());
        let mut total = 0;
        for v in 0..m.dims.len() {
            offsets.push(total);
            total += n.dims[v] * m.dims[v];
        }
        BlockLayout { offsets, total }
    }

    fn var(&self, m: &Representation, v: usize, r: usize, c: usize) -> usize {
        self.offsets[v] + r * m.dims[v] + c
    }

    fn blocks(&self, m: &Representation, n: &Representation, x: &[Scalar]) -> Vec<Matrix> {
        (0..m.dims.len())
            .map(|v| Matrix::from_fn(n.dims[v], m.dims[v], |r, c| x[self.var(m, v, r, c)].clone()))
            .collect()
    }
}

/// Appends the intertwining equations `B_t M_a - N_a B_s = 0` as rows of
/// length `width`, the unknowns of `layout` starting at `col_offset`.
fn intertwining_rows(
    alg: &StringAlgebra,
    m: &Representation,
    n: &Representation,
    layout: &BlockLayout,
    col_offset: usize,
    width: usize,
    rows: &mut Vec<Vec<Scalar>>,
) {
    for a in 0..alg.quiver().arrows().len() {
        let (s, t) = (alg.source_index(a), alg.target_index(a));
        let (ma, na) = (m.map(a), n.map(a));
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![Scalar::zero(); width];
                for k in 0..m.dims[t] {
                    let coef = &ma[(k, c)];
                    if !coef.is_zero() {
                        row[col_offset + layout.var(m, t, r, k)] += coef;
                    }
                }
                for k in 0..n.dims[s] {
                    let coef = &na[(r, k)];
                    if !coef.is_zero() {
                        row[col_offset + layout.var(m, s, k, c)] -= coef;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
}

/// Basis of `Hom(M, N)`.
pub fn hom_space(alg: &StringAlgebra, m: &Arc<Representation>, n: &Arc<Representation>) -> Vec<ModuleMap> {
    let layout = BlockLayout::new(m, n);
    if layout.total == 0 {
        return Vec::new();
    }
    let mut rows = Vec::new();
    intertwining_rows(alg, m, n, &layout, 0, layout.total, &mut rows);
    let system = Matrix::from_rows(&rows, layout.total);
    system
        .nullspace()
        .into_iter()
        .map(|x| ModuleMap {
            source: m.clone(),
            target: n.clone(),
            blocks: layout.blocks(m, n, &x),
        })
        .collect()
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel(alg: &StringAlgebra, f: &ModuleMap) -> (Arc<Representation>, ModuleMap) {
    let m = &f.source;
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::kernel_matrix).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = (0..alg.quiver().arrows().len())
        .map(|a| {
            let (s, t) = (alg.source_index(a), alg.target_index(a));
            let image = m.map(a).mul(&bases[s]);
            bases[t].solve(&image).expect("kernel is a subrepresentation")
        })
        .collect();
    let k = Arc::new(Representation::new(alg, dims, maps));
    let inclusion = ModuleMap::from_blocks(k.clone(), m.clone(), bases);
    (k, inclusion)
}

/// Cokernel of `f` with the projection from the target.
pub fn cokernel(alg: &StringAlgebra, f: &ModuleMap) -> (Arc<Representation>, ModuleMap) {
    let n = &f.target;
    // Rows spanning the annihilator of the image at each vertex.
    let projections: Vec<Matrix> = f
        .blocks
        .iter()
        .map(|b| {
            let left = b.transpose().nullspace();
            Matrix::from_rows(&left, b.rows())
        })
        .collect();
    let sections: Vec<Matrix> = projections
        .iter()
        .map(|p| p.solve(&Matrix::identity(p.rows())).expect("projection has full row rank"))
        .collect();
    let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
    let maps = (0..alg.quiver().arrows().len())
        .map(|a| {
            let (s, t) = (alg.source_index(a), alg.target_index(a));
            projections[t].mul(n.map(a)).mul(&sections[s])
        })
        .collect();
    let c = Arc::new(Representation::new(alg, dims, maps));
    let projection = ModuleMap::from_blocks(n.clone(), c.clone(), projections);
    (c, projection)
}

/// Socle multiplicities by vertex id; vertices with zero socle are omitted.
pub fn socle(alg: &StringAlgebra, m: &Representation) -> BTreeMap<VertexId, usize> {
    let mut out = BTreeMap::new();
    for v in 0..alg.n() {
        if m.dims[v] == 0 {
            continue;
        }
        let mut stacked = Matrix::zeros(0, m.dims[v]);
        for &a in alg.out_arrows(v) {
            stacked = stacked.vstack(m.map(a));
        }
        let d = m.dims[v] - stacked.rank();
        if d > 0 {
            out.insert(alg.vertex(v), d);
        }
    }
    out
}

/// Solution space of pairs `(h: P -> N, g: R -> M)` with `h ∘ iota = f ∘ g`,
/// returned as the `h` components of a basis.
pub(crate) fn lifting_pairs(alg: &StringAlgebra, iota: &ModuleMap, f: &ModuleMap) -> Vec<ModuleMap> {
    let (p, r) = (&iota.target, &iota.source);
    let (m, n) = (&f.source, &f.target);
    let h_layout = BlockLayout::new(p, n);
    let g_layout = BlockLayout::new(r, m);
    let width = h_layout.total + g_layout.total;
    if h_layout.total == 0 {
        return Vec::new();
    }
    let mut rows = Vec::new();
    intertwining_rows(alg, p, n, &h_layout, 0, width, &mut rows);
    intertwining_rows(alg, r, m, &g_layout, h_layout.total, width, &mut rows);
    // h_v * iota_v - f_v * g_v = 0 at each vertex.
    for v in 0..alg.n() {
        let (iv, fv) = (&iota.blocks[v], &f.blocks[v]);
        for row_ix in 0..n.dims[v] {
            for col in 0..r.dims[v] {
                let mut row = vec![Scalar::zero(); width];
                for k in 0..p.dims[v] {
                    let coef = &iv[(k, col)];
                    if !coef.is_zero() {
                        row[h_layout.var(p, v, row_ix, k)] += coef;
                    }
                }
                for k in 0..m.dims[v] {
                    let coef = &fv[(row_ix, k)];
                    if !coef.is_zero() {
                        row[h_layout.total + g_layout.var(r, v, k, col)] -= coef;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_rows(&rows, width)
        .nullspace()
        .into_iter()
        .map(|x| ModuleMap {
            source: p.clone(),
            target: n.clone(),
            blocks: h_layout.blocks(p, n, &x[..h_layout.total]),
        })
        .collect()
}
