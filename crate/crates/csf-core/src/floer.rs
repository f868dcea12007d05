//! Ingestion of flat-generator tables into filtered complexes and their
//! persistence modules.
//!
//! The manifest is a single JSON object:
//!
//! ```json
//! {
//!   "name": "poincare-sphere",
//!   "generators": [
//!     { "label": "alpha", "grading": 1, "cs": "1/120" }
//!   ],
//!   "boundary": [["x", "y"]]
//! }
//! ```
//!
//! `cs` values are `"p/q"` strings in lowest terms with positive denominator
//! (a bare integer `"p"` is also accepted); floats are never read or written.
//! The trivial connection is not a generator: it only fixes the normalization
//! of the lift, which is a documentation convention for the data files.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::ip::IpModule;
use crate::persistence::{FilteredComplex, FlatGenerator, ValidationError};
use crate::rational::{parse_rat, ExtRat, RatParseError};

/// A validated manifold data set: a name plus a filtered complex.
#[derive(Clone, Debug)]
pub struct ManifoldData {
    name: String,
    complex: FilteredComplex,
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read manifest: {0}")]
    Io(#[from] std::io::Error),
    #[error("manifest parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("manifest must have a nonempty name")]
    EmptyName,
    #[error("generator `{label}`: {source}")]
    BadRational { label: String, source: RatParseError },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

#[derive(Deserialize)]
struct RawManifest {
    name: String,
    generators: Vec<RawGenerator>,
    #[serde(default)]
    boundary: Vec<(String, String)>,
}

#[derive(Deserialize)]
struct RawGenerator {
    label: String,
    grading: i64,
    cs: String,
}

impl ManifoldData {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<FlatGenerator>,
        boundary: &[(String, String)],
    ) -> Result<Self, ManifestError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ManifestError::EmptyName);
        }
        let complex = FilteredComplex::new(generators, boundary)?;
        Ok(ManifoldData { name, complex })
    }

    pub fn from_json(text: &str) -> Result<Self, ManifestError> {
        let raw: RawManifest = serde_json::from_str(text)?;
        let mut generators = Vec::with_capacity(raw.generators.len());
        for g in raw.generators {
            let cs = parse_rat(&g.cs)
                .map_err(|source| ManifestError::BadRational { label: g.label.clone(), source })?;
            generators.push(FlatGenerator { label: g.label, grading: g.grading, cs });
        }
        Self::new(raw.name, generators, &raw.boundary)
    }

    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn complex(&self) -> &FilteredComplex {
        &self.complex
    }

    /// The persistence module of the filtered complex: its barcode with the
    /// translation structure. At infinite level the dimensions are the
    /// unfiltered homology of the complex.
    pub fn ip_module(&self) -> IpModule {
        IpModule::new(self.complex.barcode())
    }

    pub fn kappa(&self, d: i64) -> ExtRat {
        self.ip_module().kappa(d)
    }

    pub fn ell(&self) -> ExtRat {
        self.ip_module().ell()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::Bar;
    use crate::rational::rat;

    const POINCARE: &str = r#"{
        "name": "poincare-sphere",
        "generators": [
            { "label": "alpha", "grading": 1, "cs": "1/120" },
            { "label": "beta", "grading": 5, "cs": "49/120" }
        ],
        "boundary": []
    }"#;

    #[test]
    fn loads_poincare_manifest() {
        let m = ManifoldData::from_json(POINCARE).unwrap();
        assert_eq!(m.name(), "poincare-sphere");
        let module = m.ip_module();
        assert_eq!(
            module.barcode().bars(),
            &[
                Bar { degree: 1, birth: rat(1, 120), death: None },
                Bar { degree: 5, birth: rat(49, 120), death: None },
            ]
        );
        assert_eq!(m.ell(), ExtRat::Finite(rat(-13, 60)));
    }

    #[test]
    fn dropping_the_higher_generator_changes_ell() {
        let m = ManifoldData::new(
            "alpha-only",
            vec![FlatGenerator { label: "alpha".into(), grading: 1, cs: rat(1, 120) }],
            &[],
        )
        .unwrap();
        // 1/120 - 1/8 = -7/60
        assert_eq!(m.ell(), ExtRat::Finite(rat(-7, 60)));
    }

    #[test]
    fn empty_data_has_infinite_ell() {
        let m = ManifoldData::new("empty", vec![], &[]).unwrap();
        assert_eq!(m.ell(), ExtRat::PosInf);
        assert!(m.ip_module().limit_is_zero());
    }

    #[test]
    fn toy_complex_yields_one_finite_bar() {
        let m = ManifoldData::new(
            "toy",
            vec![
                FlatGenerator { label: "x".into(), grading: 1, cs: rat(3, 4) },
                FlatGenerator { label: "y".into(), grading: 0, cs: rat(1, 4) },
            ],
            &[("x".to_string(), "y".to_string())],
        )
        .unwrap();
        let module = m.ip_module();
        assert_eq!(module.barcode().bars().len(), 1);
        assert!(module.limit_is_zero());
        assert_eq!(m.ell(), ExtRat::PosInf);
    }

    #[test]
    fn rejects_grading_violation() {
        let bad = r#"{
            "name": "bad",
            "generators": [
                { "label": "x", "grading": 1, "cs": "1/2" },
                { "label": "y", "grading": 1, "cs": "1/4" }
            ],
            "boundary": [["x", "y"]]
        }"#;
        let err = ManifoldData::from_json(bad).unwrap_err();
        assert!(matches!(
            err,
            ManifestError::Validation(ValidationError::GradingStep { .. })
        ));
    }

    #[test]
    fn rejects_non_strict_filtration() {
        let bad = r#"{
            "name": "bad",
            "generators": [
                { "label": "x", "grading": 1, "cs": "1/4" },
                { "label": "y", "grading": 0, "cs": "1/4" }
            ],
            "boundary": [["x", "y"]]
        }"#;
        let err = ManifoldData::from_json(bad).unwrap_err();
        assert!(matches!(
            err,
            ManifestError::Validation(ValidationError::NonStrictFiltration { .. })
        ));
    }

    #[test]
    fn rejects_unreduced_rationals_and_bad_json() {
        let unreduced = r#"{
            "name": "bad",
            "generators": [{ "label": "x", "grading": 1, "cs": "2/4" }],
            "boundary": []
        }"#;
        assert!(matches!(
            ManifoldData::from_json(unreduced).unwrap_err(),
            ManifestError::BadRational { .. }
        ));
        assert!(matches!(
            ManifoldData::from_json("{ not json").unwrap_err(),
            ManifestError::Json(_)
        ));
        assert!(matches!(
            ManifoldData::from_json(r#"{"name":"","generators":[],"boundary":[]}"#).unwrap_err(),
            ManifestError::EmptyName
        ));
    }

    #[test]
    fn ell_is_min_generator_drift_when_differential_vanishes() {
        // With no differential every generator survives, so ell is the least
        // cs - grading/8 over the table.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for case in 0..20 {
            let n = rng.random_range(1..=12usize);
            let gens: Vec<FlatGenerator> = (0..n)
                .map(|i| FlatGenerator {
                    label: format!("g{i}"),
                    grading: rng.random_range(-6..=13),
                    cs: rat(rng.random_range(-30..=30), rng.random_range(1..=10)),
                })
                .collect();
            let expected = gens
                .iter()
                .map(|g| &g.cs - rat(g.grading, 8))
                .min()
                .unwrap();
            let m = ManifoldData::new(format!("case{case}"), gens, &[]).unwrap();
            assert_eq!(m.ell(), ExtRat::Finite(expected));
        }
    }

    #[test]
    fn limit_dims_are_periodic() {
        let m = ManifoldData::from_json(POINCARE).unwrap();
        let module = m.ip_module();
        for d in -8..16 {
            assert_eq!(module.limit_dim(d), module.limit_dim(d + 8));
        }
    }
}
