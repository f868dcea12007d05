//! Finite graded chain complexes over GF(2), homology with canonical bases,
//! mapping cones, and induced maps on homology.
//!
//! Degrees live in `Z/period`. Period 8 and period 4 gradings both occur (and
//! period 1 serves as the ungraded case); the differential lowers degree by
//! one modulo the period. Homology bases are canonical: a reduced echelon
//! cycle basis whose leading rows represent the homology classes reduced
//! against the boundary echelon, so identical inputs give identical bases.

use super::matrix::{BitMatrix, BitVec, Echelon};
use super::Gf2Error;

/// A finite chain complex graded by `Z/period` with differential of degree -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    period: usize,
    dims: Vec<usize>,
    diffs: Vec<BitMatrix>,
}

impl GradedComplex {
    /// Validates shapes and `d∘d = 0` in every degree.
    ///
    /// `diffs[d]` maps degree `d` to degree `d-1 (mod period)`: it must have
    /// `dims[d]` columns and `dims[d-1]` rows.
    pub fn new(
        period: usize,
        dims: Vec<usize>,
        diffs: Vec<BitMatrix>,
    ) -> Result<Self, Gf2Error> {
        if period == 0 || dims.len() != period || diffs.len() != period {
            return Err(Gf2Error::BadComplexShape {
                period,
                dims: dims.len(),
                diffs: diffs.len(),
            });
        }
        for d in 0..period {
            let target = (d + period - 1) % period;
            if diffs[d].cols() != dims[d] || diffs[d].rows() != dims[target] {
                return Err(Gf2Error::BadDifferentialShape { degree: d });
            }
        }
        for d in 0..period {
            let target = (d + period - 1) % period;
            if !diffs[target].mul(&diffs[d]).is_zero() {
                return Err(Gf2Error::DifferentialSquare { degree: d as i64 });
            }
        }
        Ok(GradedComplex { period, dims, diffs })
    }

    /// Ungraded complex: a single space with a square differential.
    pub fn ungraded(differential: BitMatrix) -> Result<Self, Gf2Error> {
        let n = differential.cols();
        Self::new(1, vec![n], vec![differential])
    }

    pub fn zero(period: usize) -> Self {
        let dims = vec![0; period];
        let diffs = (0..period).map(|_| BitMatrix::zeros(0, 0)).collect();
        GradedComplex { period, dims, diffs }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    fn reduce_degree(&self, d: i64) -> usize {
        d.rem_euclid(self.period as i64) as usize
    }

    pub fn dim(&self, d: i64) -> usize {
        self.dims[self.reduce_degree(d)]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The differential out of degree `d`.
    pub fn differential(&self, d: i64) -> &BitMatrix {
        &self.diffs[self.reduce_degree(d)]
    }

    /// Homology in degree `d`, with canonical bases. Degrees outside the
    /// declared support simply yield zero spaces.
    pub fn homology(&self, d: i64) -> Homology {
        homology_of(self.differential(d), self.differential(d + 1))
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..self.period as i64).map(|d| self.homology(d).dim).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.period as i64).all(|d| self.homology(d).dim == 0)
    }
}

/// Homology of one degree: `ker(out) / im(in)`.
#[derive(Clone, Debug)]
pub struct Homology {
    /// Dimension of the homology space.
    pub dim: usize,
    /// Canonical class representatives, one row per class.
    pub class_reps: BitMatrix,
    /// Basis of the full cycle space: the `dim` class representatives first,
    /// then a basis of the boundary subspace.
    pub cycle_basis: BitMatrix,
    boundaries: Echelon,
    classes: Echelon,
}

impl Homology {
    /// Coordinates of a cycle's class in the canonical representative basis.
    /// Returns `None` if `v` is not a cycle of this degree.
    pub fn class_coords(&self, v: &BitVec) -> Option<BitVec> {
        let mut w = v.clone();
        self.boundaries.reduce(&mut w);
        self.classes.coords(&w)
    }

    pub fn boundary_dim(&self) -> usize {
        self.boundaries.dim()
    }
}

/// Homology of the two-step sequence `C -> (out) -> C'`, `(in) C'' -> C`:
/// cycles are `ker(out)`, boundaries `im(in)`.
pub fn homology_of(out_map: &BitMatrix, in_map: &BitMatrix) -> Homology {
    let n = out_map.cols();
    assert_eq!(in_map.rows(), n, "composability mismatch in homology");
    let cycles = Echelon::from_matrix_rows(&out_map.kernel_basis());
    let boundaries = Echelon::from_matrix_rows(&in_map.transpose());
    // Reduce each cycle basis row against the boundaries, then re-echelon to
    // get canonical class representatives.
    let mut reduced_rows: Vec<BitVec> = Vec::new();
    for i in 0..cycles.dim() {
        let mut v = cycles.basis().row(i);
        boundaries.reduce(&mut v);
        if !v.is_zero() {
            reduced_rows.push(v);
        }
    }
    let classes = Echelon::from_vecs(&reduced_rows, n);
    let dim = classes.dim();
    debug_assert_eq!(dim, cycles.dim() - boundaries.dim());
    let class_reps = classes.basis().clone();
    let cycle_basis = class_reps.vstack(boundaries.basis());
    Homology { dim, class_reps, cycle_basis, boundaries, classes }
}

/// A map of graded complexes of some degree, given by one block per source
/// degree. Construction checks commutation with the differentials (over GF(2)
/// commuting and anticommuting coincide).
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: GradedComplex,
    pub target: GradedComplex,
    pub degree: i64,
    blocks: Vec<BitMatrix>,
}

impl ChainMap {
    pub fn new(
        source: GradedComplex,
        target: GradedComplex,
        degree: i64,
        blocks: Vec<BitMatrix>,
    ) -> Result<Self, Gf2Error> {
        if source.period() != target.period() || blocks.len() != source.period() {
            return Err(Gf2Error::BadMapShape);
        }
        let p = source.period() as i64;
        for d in 0..p {
            let b = &blocks[d as usize];
            if b.cols() != source.dim(d) || b.rows() != target.dim(d + degree) {
                return Err(Gf2Error::BadMapShape);
            }
        }
        for d in 0..p {
            let left = target
                .differential(d + degree)
                .mul(&blocks[d as usize]);
            let right = blocks[(d - 1).rem_euclid(p) as usize].mul(source.differential(d));
            if left != right {
                return Err(Gf2Error::NotChainMap { degree: d });
            }
        }
        Ok(ChainMap { source, target, degree, blocks })
    }

    pub fn zero(source: GradedComplex, target: GradedComplex, degree: i64) -> Self {
        let p = source.period() as i64;
        let blocks = (0..p)
            .map(|d| BitMatrix::zeros(target.dim(d + degree), source.dim(d)))
            .collect();
        ChainMap { source, target, degree, blocks }
    }

    pub fn identity(c: &GradedComplex) -> Self {
        let blocks = c.dims().iter().map(|&n| BitMatrix::identity(n)).collect();
        ChainMap { source: c.clone(), target: c.clone(), degree: 0, blocks }
    }

    pub fn block(&self, d: i64) -> &BitMatrix {
        &self.blocks[d.rem_euclid(self.source.period() as i64) as usize]
    }

    /// Induced map on homology in source degree `d`, expressed in the
    /// canonical class bases. Rows index target classes, columns source
    /// classes.
    pub fn induced(&self, d: i64) -> BitMatrix {
        let src = self.source.homology(d);
        let tgt = self.target.homology(d + self.degree);
        let mut out = BitMatrix::zeros(tgt.dim, src.dim);
        for j in 0..src.dim {
            let image = self.block(d).mul_vec(&src.class_reps.row(j));
            let coords = tgt
                .class_coords(&image)
                .expect("chain map must send cycles to cycles");
            for i in coords.ones() {
                out.set(i, j, true);
            }
        }
        out
    }

    /// Whether the induced map on homology is an isomorphism in every degree.
    pub fn is_quasi_isomorphism(&self) -> bool {
        (0..self.source.period() as i64).all(|d| {
            let m = self.induced(d);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }
}

/// The mapping cone of a degree-preserving chain map `f: A -> B`.
///
/// In degree `d` the cone is `A_{d-1} ⊕ B_d` with differential
/// `(a, b) -> (d_A a, f a + d_B b)`, block lower triangular. The source part
/// comes first in the chosen ordering.
pub fn cone(f: &ChainMap) -> Result<GradedComplex, Gf2Error> {
    let p = f.source.period();
    if f.degree.rem_euclid(p as i64) != 0 {
        return Err(Gf2Error::ConeDegree { degree: f.degree });
    }
    let pi = p as i64;
    let dims: Vec<usize> = (0..pi).map(|d| f.source.dim(d - 1) + f.target.dim(d)).collect();
    let mut diffs = Vec::with_capacity(p);
    for d in 0..pi {
        let a_rows = f.source.dim(d - 2);
        let b_rows = f.target.dim(d - 1);
        let a_cols = f.source.dim(d - 1);
        let b_cols = f.target.dim(d);
        let da = f.source.differential(d - 1);
        let db = f.target.differential(d);
        let fb = f.block(d - 1);
        let top = da.hstack(&BitMatrix::zeros(a_rows, b_cols));
        let bottom = fb.hstack(db);
        debug_assert_eq!(top.cols(), a_cols + b_cols);
        debug_assert_eq!(bottom.rows(), b_rows);
        diffs.push(top.vstack(&bottom));
    }
    GradedComplex::new(p, dims, diffs)
}
