//! Exact linear algebra over the two-element field and finite graded chain
//! complexes: ranks, kernels, homology, induced maps, mapping cones.

mod complex;
mod matrix;
mod system;

pub use complex::{cone, homology_of, ChainMap, GradedComplex, Homology};
pub use matrix::{BitMatrix, BitVec, Echelon};
pub use system::{sample_two_sided, solve_two_sided, F2System};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("entry ({row},{col}) out of range for a {rows}x{cols} matrix")]
    EntryOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("complex shape mismatch: period {period}, {dims} dims, {diffs} differentials")]
    BadComplexShape { period: usize, dims: usize, diffs: usize },
    #[error("differential out of degree {degree} has the wrong shape")]
    BadDifferentialShape { degree: usize },
    #[error("differential does not square to zero at degree {degree}")]
    DifferentialSquare { degree: i64 },
    #[error("chain map blocks do not match the complexes")]
    BadMapShape,
    #[error("map fails to commute with the differentials at degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("mapping cone requires a degree-preserving map, got degree {degree}")]
    ConeDegree { degree: i64 },
}
