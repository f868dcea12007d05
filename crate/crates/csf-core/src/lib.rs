//! Algebra for Chern–Simons–filtered homology computations.
//!
//! The crate provides the layers needed to work with filtered instanton-style
//! chain complexes at the algebraic level:
//!
//! - [`gf2`]: exact linear algebra over the two-element field, graded chain
//!   complexes, mapping cones and induced maps on homology;
//! - [`persistence`]: filtered chain complexes with an 8-periodic translation,
//!   their sublevel homology and barcodes;
//! - [`ip`]: 8-periodic persistence modules, the `kappa`/`ell` invariants and
//!   the level/degree bookkeeping of filtered morphisms;
//! - [`floer`]: ingestion of generator tables (grading + filtration value +
//!   differential) into persistence modules;
//! - [`cobordism`]: exact degree/level/index calculators and the inequality
//!   certificate engine;
//! - [`triangle`]: the chain-level exact-triangle detector, exactness checks
//!   on rank data and the surgery rank calculus;
//! - [`alexander`]: Laurent polynomial arithmetic and the cosmetic-surgery
//!   constraint pipeline.
//!
//! All scalars are exact: filtration levels are arbitrary-precision rationals
//! and every matrix computation happens over GF(2).

pub mod alexander;
pub mod cobordism;
pub mod floer;
pub mod gen;
pub mod gf2;
pub mod ip;
pub mod persistence;
pub mod rational;
pub mod triangle;

pub use gf2::{BitMatrix, BitVec, ChainMap, GradedComplex};
pub use ip::{IpModule, MorphismMeta, Slack};
pub use persistence::{Bar, Barcode, FilteredComplex, FlatGenerator};
pub use rational::{ExtRat, Rat};
