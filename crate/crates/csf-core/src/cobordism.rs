//! Exact degree/level/index arithmetic for cobordism-induced morphisms, the
//! reducible enumeration on the three-ended piece, lower bounds for broken
//! instantons, and the inequality certificate engine.
//!
//! Everything here is arithmetic on user-supplied topological data: no moduli
//! spaces are constructed. Injectivity of induced maps and nonvanishing of
//! homology are *attested evidence* carried by tags, never inferred.

use std::collections::BTreeSet;
use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::ip::{MorphismMeta, Slack};
use crate::rational::{parse_rat, rat, rat_int, Rat};
use num_traits::Zero;

/// Homological data of a cobordism with middle ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismTopology {
    pub b1: u32,
    pub b_plus: u32,
    pub c_squared: Rat,
    pub simply_connected: bool,
    /// Dimension of the metric family (0 for a single metric).
    pub family_dim: u32,
    pub middle_ends: Vec<MiddleEnd>,
}

/// A middle boundary component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MiddleEnd {
    /// A 3-sphere; supports only the central flat connection.
    Sphere,
    /// A projective space with nontrivial bundle class; supports exactly one
    /// abelian flat connection.
    ProjectiveNontrivial,
}

impl CobordismTopology {
    /// The flat-limit types carried by the middle ends.
    pub fn middle_limits(&self) -> Vec<FlatLimit> {
        self.middle_ends
            .iter()
            .map(|e| match e {
                MiddleEnd::Sphere => FlatLimit::Central,
                MiddleEnd::ProjectiveNontrivial => FlatLimit::Abelian,
            })
            .collect()
    }

    /// Reducible index on this topology for a given aggregate energy term.
    pub fn asd_index(&self, e8: &Rat) -> Rat {
        asd_index(e8, self.b_plus, &self.middle_limits())
    }
}

/// Stabilizer type of a flat limit; `h0` is the stabilizer dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatLimit {
    Central,
    Abelian,
    Irreducible,
}

impl FlatLimit {
    pub fn h0(self) -> i64 {
        match self {
            FlatLimit::Central => 3,
            FlatLimit::Abelian => 1,
            FlatLimit::Irreducible => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error("degree/level formulas require b1 = b+ = 0, got b1 = {b1}, b+ = {b_plus}")]
    UnsupportedTopology { b1: u32, b_plus: u32 },
    #[error("family_dim - 2c² must be an integer, got {0}")]
    NonIntegerDegree(String),
    #[error("-2c² must be an integer, got c² = {0}")]
    NonIntegerIndexShift(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("surgery slope {0} is outside the supported set")]
    UnsupportedSlope(i64),
    #[error("certificate steps must chain: step {index} starts at `{found}` but the previous step ends at `{expected}`")]
    BrokenChain { index: usize, expected: String, found: String },
    #[error("a certificate needs at least one step")]
    EmptyChain,
    #[error("chain file error: {0}")]
    ChainFile(String),
}

/// Degree and level of the morphism induced by a cobordism carrying a
/// cohomology class of square `c²` and a metric family of the given
/// dimension: `D = family_dim - 2c²`, `L = -c²/4 - eta`, with `eta > 0` when
/// the cobordism is simply connected.
pub fn degree_level(t: &CobordismTopology) -> Result<MorphismMeta, CobordismError> {
    if t.b1 != 0 || t.b_plus != 0 {
        return Err(CobordismError::UnsupportedTopology { b1: t.b1, b_plus: t.b_plus });
    }
    let degree_rat = rat_int(t.family_dim as i64) - rat_int(2) * &t.c_squared;
    if !degree_rat.is_integer() {
        return Err(CobordismError::NonIntegerDegree(degree_rat.to_string()));
    }
    let degree = i64::try_from(degree_rat.to_integer()).expect("degree fits i64");
    let level_base = -&t.c_squared / rat_int(4);
    let slack = if t.simply_connected { Slack::Positive } else { Slack::NonNeg };
    Ok(MorphismMeta::new(degree, level_base, slack))
}

/// Topological energy of a trajectory between filtration levels:
/// `E = -c²/4 + cs_from - cs_to`.
pub fn energy_relation(c_squared: &Rat, cs_from: &Rat, cs_to: &Rat) -> Rat {
    -c_squared / rat_int(4) + cs_from - cs_to
}

/// Grading shift from index additivity: a zero-index solution forces
/// `i(α) + 3 + (-2c² - 3) - i(α')`, i.e. the returned value
/// `i(α) - 2c² - i(α')` vanishes exactly when `i(α') = i(α) - 2c²`.
pub fn index_additivity(
    i_alpha: i64,
    c_squared: &Rat,
    i_alpha_prime: i64,
) -> Result<i64, CobordismError> {
    let shift = rat_int(-2) * c_squared;
    if !shift.is_integer() {
        return Err(CobordismError::NonIntegerIndexShift(c_squared.to_string()));
    }
    let shift = i64::try_from(shift.to_integer()).expect("shift fits i64");
    Ok(i_alpha + shift - i_alpha_prime)
}

/// Index of a reducible solution from the aggregate energy term:
/// `i = 8E - 3(1 + b⁺) + (1/2)·Σ (3 - h⁰)`.
///
/// The argument is the aggregate `8E` as one rational; `rho` vanishes for the
/// supported end types and is therefore not a parameter.
pub fn asd_index(e8: &Rat, b_plus: u32, ends: &[FlatLimit]) -> Rat {
    let end_sum: i64 = ends.iter().map(|e| 3 - e.h0()).sum();
    e8 - rat_int(3) * rat_int(1 + b_plus as i64) + rat(end_sum, 2)
}

/// One reducible solution on the three-ended piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NReducible {
    pub n: i64,
    pub e8: Rat,
    pub index: Rat,
}

/// Enumerates the reducible solutions indexed by `n`: splitting the class as
/// `{n·c, (1-n)·c}` gives aggregate energy `8E = (2n-1)²·(-2c²)`, and the
/// piece has `b⁺ = 0` with ends (sphere, sphere, projective), so each index is
/// `8E - 3 + 1`. On the actual geometry `c² = -1/2`, hence `8E(1) = 1`.
pub fn reducibles_on_n(c_self_intersection: &Rat, range: RangeInclusive<i64>) -> Vec<NReducible> {
    let ends = [FlatLimit::Central, FlatLimit::Central, FlatLimit::Abelian];
    range
        .map(|n| {
            let m = 2 * n - 1;
            let e8 = rat_int(m * m) * rat_int(-2) * c_self_intersection;
            let index = asd_index(&e8, 0, &ends);
            NReducible { n, e8, index }
        })
        .collect()
}

/// Position of the minimal-index element and whether it is unique.
pub fn minimal_reducible(list: &[NReducible]) -> Option<(usize, bool)> {
    let min = list.iter().map(|r| &r.index).min()?;
    let mut hits = list.iter().enumerate().filter(|(_, r)| &r.index == min);
    let first = hits.next()?.0;
    Some((first, hits.next().is_none()))
}

/// Case analysis scenarios for lower bounds on the index of a broken
/// instanton over a family of metrics. Each bound is assembled from the
/// standard component contributions: a cylinder piece costs at least `+1`, a
/// reducible intermediate limit contributes its stabilizer dimension (`+3`
/// central, `+1` abelian), an unbroken irreducible piece over a `k`-family
/// costs at least `-k`, and a reducible piece costs at least `-4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BreakScenario {
    /// All pieces irreducible but some intermediate limit reducible, over a
    /// family of dimension `hops - 1` (the number of composed cobordisms
    /// minus one).
    ReducibleIntermediate { hops: u32 },
    /// A single reducible unbroken piece: the minimum over the two possible
    /// topologies (`b⁺ = 0`, or `b⁺ = 1` with one projective end and positive
    /// energy).
    ReducibleComponent,
    /// Unbroken irreducible solution in the interior of a metric family.
    FamilyInterior { family_dim: u32 },
    /// Metric broken along a sphere: two pieces and a central limit.
    SphereBroken,
    /// Metric broken along an intermediate surgery manifold: two irreducible
    /// pieces, one of which may move in a one-dimensional family.
    SurgeryBroken,
    /// Metric broken along the projective-space end: an irreducible piece in
    /// a one-dimensional family glued to the minimal reducible along the
    /// abelian limit.
    ProjectiveBroken,
    /// Metric broken along the product locus; the stated bound for the fiber
    /// product with the reducible stratum.
    ProductBroken,
    /// Both pieces of a once-broken metric reducible, with central limits and
    /// cylinder pieces on the outside.
    BothPiecesReducible,
    /// Exactly one piece reducible; the other is unbroken irreducible.
    OnePieceReducible,
    /// A reducible piece inside an otherwise broken configuration with
    /// irreducible outer limits: cylinders and central limits on both sides.
    GluedReducible,
}

const CYLINDER_MIN: i64 = 1;
const CENTRAL_STABILIZER: i64 = 3;
const ABELIAN_STABILIZER: i64 = 1;
const REDUCIBLE_PIECE_MIN: i64 = -4;

/// Lower bound on the index of a broken instanton in the given scenario.
/// The `+ 0` terms keep the zero-index components of each sum visible.
#[allow(clippy::identity_op)]
pub fn broken_index_bound(scenario: &BreakScenario) -> i64 {
    use BreakScenario::*;
    match scenario {
        ReducibleIntermediate { hops } => {
            // cylinder + stabilizer - family dimension
            CYLINDER_MIN + 1 - (*hops as i64 - 1)
        }
        ReducibleComponent => {
            // b⁺ = 0: 0 - 3(1+0) + 0 = -3;
            // b⁺ = 1, one projective end, 8E > 0 integral: > -6 + 1, so >= -4.
            let flat = asd_index(&rat_int(0), 0, &[]);
            let projective = asd_index(&rat_int(0), 1, &[FlatLimit::Abelian]) + rat_int(1);
            let flat = i64::try_from(flat.to_integer()).unwrap();
            let projective = i64::try_from(projective.to_integer()).unwrap();
            flat.min(projective)
        }
        FamilyInterior { family_dim } => -(*family_dim as i64),
        SphereBroken => -1 + -1 + CENTRAL_STABILIZER,
        SurgeryBroken => -1 + 0,
        ProjectiveBroken => -1 + -1 + ABELIAN_STABILIZER,
        ProductBroken => -1,
        BothPiecesReducible => {
            CYLINDER_MIN
                + CENTRAL_STABILIZER
                + REDUCIBLE_PIECE_MIN
                + CENTRAL_STABILIZER
                + REDUCIBLE_PIECE_MIN
                + CENTRAL_STABILIZER
                + CYLINDER_MIN
        }
        OnePieceReducible => {
            CYLINDER_MIN + CENTRAL_STABILIZER + REDUCIBLE_PIECE_MIN + CENTRAL_STABILIZER + 0
        }
        GluedReducible => {
            CYLINDER_MIN
                + CENTRAL_STABILIZER
                + REDUCIBLE_PIECE_MIN
                + CENTRAL_STABILIZER
                + CYLINDER_MIN
        }
    }
}

/// Parses a scenario name as used in reports: kebab-case, with a numeric
/// parameter after `:` where one is needed.
pub fn parse_scenario(s: &str) -> Result<BreakScenario, CobordismError> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (s, None),
    };
    let num = || -> Result<u32, CobordismError> {
        arg.and_then(|a| a.trim().parse().ok())
            .ok_or_else(|| CobordismError::UnknownScenario(s.to_string()))
    };
    match name.trim() {
        "reducible-intermediate" => Ok(BreakScenario::ReducibleIntermediate { hops: num()? }),
        "reducible-component" => Ok(BreakScenario::ReducibleComponent),
        "family-interior" => Ok(BreakScenario::FamilyInterior { family_dim: num()? }),
        "sphere-broken" => Ok(BreakScenario::SphereBroken),
        "surgery-broken" => Ok(BreakScenario::SurgeryBroken),
        "projective-broken" => Ok(BreakScenario::ProjectiveBroken),
        "product-broken" => Ok(BreakScenario::ProductBroken),
        "both-pieces-reducible" => Ok(BreakScenario::BothPiecesReducible),
        "one-piece-reducible" => Ok(BreakScenario::OnePieceReducible),
        "glued-reducible" => Ok(BreakScenario::GluedReducible),
        _ => Err(CobordismError::UnknownScenario(s.to_string())),
    }
}

/// One step of an inequality chain: a morphism between named quantities plus
/// the attested evidence for its hypotheses.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub label: String,
    pub source: String,
    pub target: String,
    pub morphism: MorphismMeta,
    /// Evidence tag that the induced map is injective on the limit.
    pub injectivity: Option<String>,
    /// Evidence tag that the source invariant is finite.
    pub nonvanishing: Option<String>,
}

/// Relation emitted for one step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
        }
    }
}

/// A verified step of the certificate: `target REL source + offset`.
#[derive(Clone, Debug)]
pub struct CertifiedStep {
    pub label: String,
    pub source: String,
    pub target: String,
    pub offset: Rat,
    pub relation: Relation,
    /// Hypotheses with missing evidence make the step conditional.
    pub conditional: bool,
    pub missing: Vec<String>,
    pub justification: Vec<String>,
}

/// An ordered chain of inequalities with the propagated cumulative bound.
#[derive(Clone, Debug)]
pub struct InequalityCertificate {
    pub steps: Vec<CertifiedStep>,
    /// `last target <= first source + cumulative_offset`.
    pub cumulative_offset: Rat,
    pub cumulative_strict: bool,
    /// True when any step lacks evidence.
    pub conditional: bool,
    /// True when the chain returns to its starting node.
    pub cyclic: bool,
    /// A cyclic, fully evidenced chain whose total offset is negative, or
    /// zero with a strict step, certifies a contradiction.
    pub contradictory: bool,
}

/// Builds the certificate for an ordered chain of steps. Steps must be
/// linked: each step's source is the previous step's target.
pub fn certify_chain(steps: &[ChainStep]) -> Result<InequalityCertificate, CobordismError> {
    if steps.is_empty() {
        return Err(CobordismError::EmptyChain);
    }
    for (i, w) in steps.windows(2).enumerate() {
        if w[1].source != w[0].target {
            return Err(CobordismError::BrokenChain {
                index: i + 1,
                expected: w[0].target.clone(),
                found: w[1].source.clone(),
            });
        }
    }
    let mut certified = Vec::with_capacity(steps.len());
    let mut cumulative_offset = Rat::zero();
    let mut cumulative_strict = false;
    let mut conditional = false;
    let mut any_nonvanishing = false;
    for step in steps {
        let mut missing = Vec::new();
        if step.injectivity.is_none() {
            missing.push("injectivity".to_string());
        }
        let strict_slack = step.morphism.slack.is_strict();
        if strict_slack && step.nonvanishing.is_none() {
            missing.push("nonvanishing".to_string());
        }
        if step.nonvanishing.is_some() {
            any_nonvanishing = true;
        }
        let relation = if strict_slack && step.nonvanishing.is_some() {
            Relation::Lt
        } else {
            Relation::Le
        };
        let offset = step.morphism.drift_base();
        cumulative_offset += &offset;
        if relation == Relation::Lt {
            cumulative_strict = true;
        }
        let is_conditional = !missing.is_empty();
        conditional |= is_conditional;
        let justification: Vec<String> = [&step.injectivity, &step.nonvanishing]
            .into_iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        certified.push(CertifiedStep {
            label: step.label.clone(),
            source: step.source.clone(),
            target: step.target.clone(),
            offset,
            relation,
            conditional: is_conditional,
            missing,
            justification,
        });
    }
    let cyclic = steps.last().unwrap().target == steps[0].source;
    let contradictory = cyclic
        && !conditional
        && any_nonvanishing
        && (cumulative_offset < Rat::zero()
            || (cumulative_offset.is_zero() && cumulative_strict));
    Ok(InequalityCertificate {
        steps: certified,
        cumulative_offset,
        cumulative_strict,
        conditional,
        cyclic,
        contradictory,
    })
}

// ---------------------------------------------------------------------------
// Chain spec files
// ---------------------------------------------------------------------------

/// On-disk form of an inequality chain. The `slack` field is one of `"none"`,
/// `"nonneg"`, `"positive"`; `level_base` is a `"p/q"` string.
#[derive(Debug, Deserialize)]
struct ChainFile {
    name: String,
    steps: Vec<ChainStepFile>,
}

#[derive(Debug, Deserialize)]
struct ChainStepFile {
    label: String,
    source: String,
    target: String,
    degree: i64,
    level_base: String,
    slack: String,
    #[serde(default)]
    injectivity: Option<String>,
    #[serde(default)]
    nonvanishing: Option<String>,
}

pub fn parse_chain_spec(text: &str) -> Result<(String, Vec<ChainStep>), CobordismError> {
    let file: ChainFile =
        serde_json::from_str(text).map_err(|e| CobordismError::ChainFile(e.to_string()))?;
    let mut steps = Vec::with_capacity(file.steps.len());
    for s in file.steps {
        let level_base = parse_rat(&s.level_base).map_err(|e| {
            CobordismError::ChainFile(format!("step `{}`: {e}", s.label))
        })?;
        let slack = match s.slack.as_str() {
            "none" => Slack::None,
            "nonneg" => Slack::NonNeg,
            "positive" => Slack::Positive,
            other => {
                return Err(CobordismError::ChainFile(format!(
                    "step `{}`: unknown slack `{other}` (use none | nonneg | positive)",
                    s.label
                )))
            }
        };
        steps.push(ChainStep {
            label: s.label,
            source: s.source,
            target: s.target,
            morphism: MorphismMeta::new(s.degree, level_base, slack),
            injectivity: s.injectivity,
            nonvanishing: s.nonvanishing,
        });
    }
    Ok((file.name, steps))
}

pub fn load_chain_spec(path: &Path) -> Result<(String, Vec<ChainStep>), CobordismError> {
    let text =
        fs::read_to_string(path).map_err(|e| CobordismError::ChainFile(e.to_string()))?;
    parse_chain_spec(&text)
}
