//! 8-periodic persistence modules, their `kappa` and `ell` invariants, and
//! the degree/level bookkeeping of filtered morphisms.
//!
//! A module is represented by its barcode on the fundamental degree window
//! `0..=7`; the periodicity isomorphism is the bar-shift rule, so the module
//! axioms hold by construction. Morphisms are tracked as metadata only: a
//! degree `D`, an exact level base, and a symbolic nonnegative slack `eta`
//! subtracted from the level. The slack is never a number — only its sign
//! constraint matters for the emitted inequalities.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::persistence::{Barcode, PERIOD};
use crate::rational::{rat, ExtRat, Rat};

/// An 8-periodic persistence module presented by a barcode.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IpModule {
    barcode: Barcode,
}

impl IpModule {
    pub fn new(barcode: Barcode) -> Self {
        IpModule { barcode }
    }

    pub fn zero() -> Self {
        IpModule { barcode: Barcode::empty() }
    }

    pub fn barcode(&self) -> &Barcode {
        &self.barcode
    }

    /// Dimension of the filtered piece at level `r`, degree `d`.
    pub fn dim_at(&self, r: &Rat, d: i64) -> usize {
        self.barcode.dim_at(r, d)
    }

    /// Rank of the connecting map from level `r` to `r2` in degree `d`.
    pub fn connecting_rank(
        &self,
        r: &Rat,
        r2: &Rat,
        d: i64,
    ) -> Result<usize, crate::persistence::BarcodeError> {
        self.barcode.connecting_rank(r, r2, d)
    }

    /// Dimension of the unfiltered (limit) space in degree `d`: the number of
    /// infinite bars.
    pub fn limit_dim(&self, d: i64) -> usize {
        self.barcode.bars_in_degree(d).iter().filter(|b| b.death.is_none()).count()
    }

    /// Whether the unfiltered module vanishes in every degree. Finite bars do
    /// not count: they die before reaching the limit.
    pub fn limit_is_zero(&self) -> bool {
        self.barcode.bars().iter().all(|b| b.death.is_some())
    }

    /// Least level at which a class surviving to the limit appears in degree
    /// `d`; infinite when no class survives there.
    pub fn kappa(&self, d: i64) -> ExtRat {
        self.barcode
            .bars_in_degree(d)
            .iter()
            .filter(|b| b.death.is_none())
            .map(|b| b.birth.clone())
            .min()
            .map_or(ExtRat::PosInf, ExtRat::Finite)
    }

    /// `ell = inf over d of kappa(d) - d/8`. The function `kappa(d) - d/8` is
    /// 8-periodic, so the fundamental window realizes the infimum exactly.
    /// Infinite iff the unfiltered module is zero; never `-inf`.
    pub fn ell(&self) -> ExtRat {
        let mut best = ExtRat::PosInf;
        for d in 0..PERIOD {
            let v = self.kappa(d).add_rat(&-rat(d, 8));
            best = best.min(v);
        }
        best
    }
}

/// Sign information for the symbolic slack `eta` in a level `L = base - eta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slack {
    /// No slack term: the level is exactly the base.
    None,
    /// `eta >= 0`.
    NonNeg,
    /// `eta > 0`.
    Positive,
}

impl Slack {
    /// Slacks add when morphisms compose; a sum of nonnegatives is positive
    /// as soon as one summand is.
    pub fn plus(self, other: Slack) -> Slack {
        use Slack::*;
        match (self, other) {
            (Positive, _) | (_, Positive) => Positive,
            (NonNeg, _) | (_, NonNeg) => NonNeg,
            (None, None) => None,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Slack::Positive)
    }
}

/// Metadata of a filtered morphism: degree `D`, level `L = level_base - eta`,
/// and the injectivity facts declared for it on the unfiltered limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismMeta {
    pub degree: i64,
    pub level_base: Rat,
    pub slack: Slack,
    /// Injective on the limit in every degree.
    pub injective_all: bool,
    /// Injective on the limit in these degrees mod 8 (refinement when
    /// `injective_all` is false).
    pub injective_degrees: Option<BTreeSet<u8>>,
}

impl MorphismMeta {
    pub fn new(degree: i64, level_base: Rat, slack: Slack) -> Self {
        MorphismMeta {
            degree,
            level_base,
            slack,
            injective_all: false,
            injective_degrees: None,
        }
    }

    pub fn with_injective_all(mut self) -> Self {
        self.injective_all = true;
        self
    }

    pub fn with_injective_degrees(mut self, degrees: impl IntoIterator<Item = i64>) -> Self {
        self.injective_degrees =
            Some(degrees.into_iter().map(|d| d.rem_euclid(PERIOD) as u8).collect());
        self
    }

    pub fn injective_at(&self, d: i64) -> bool {
        self.injective_all
            || self
                .injective_degrees
                .as_ref()
                .is_some_and(|s| s.contains(&(d.rem_euclid(PERIOD) as u8)))
    }

    /// The level drift `L - D/8 = (level_base - D/8) - eta`; its base part.
    pub fn drift_base(&self) -> Rat {
        &self.level_base - rat(self.degree, 8)
    }

    /// Sequential composition: `self` applied first, then `next`.
    /// Degrees and level bases add, slacks add, injectivity is the
    /// conjunction (tracked through the degree shift).
    pub fn then(&self, next: &MorphismMeta) -> MorphismMeta {
        let injective_all = self.injective_all && next.injective_all;
        let injective_degrees = if injective_all {
            None
        } else {
            // Degrees d where self is injective at d and next at d + D_self.
            let first: BTreeSet<u8> = match (&self.injective_degrees, self.injective_all) {
                (_, true) => (0..PERIOD as u8).collect(),
                (Some(s), _) => s.clone(),
                (None, false) => BTreeSet::new(),
            };
            let set: BTreeSet<u8> = first
                .into_iter()
                .filter(|&d| next.injective_at(d as i64 + self.degree))
                .collect();
            if set.is_empty() {
                None
            } else {
                Some(set)
            }
        };
        MorphismMeta {
            degree: self.degree + next.degree,
            level_base: &self.level_base + &next.level_base,
            slack: self.slack.plus(next.slack),
            injective_all,
            injective_degrees,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IpError {
    #[error("the bound requires injectivity in all degrees, which was not declared")]
    InjectivityNotDeclared,
    #[error("the bound requires injectivity at degree {0}, which was not declared")]
    InjectivityNotDeclaredAt(i64),
    #[error("the paired bound requires joint injectivity, which was not declared")]
    JointInjectivityNotDeclared,
}

/// A symbolic inequality `ell(B) <= ell(A) + offset`, strict when `strict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllBound {
    pub offset: Rat,
    pub strict: bool,
}

impl EllBound {
    /// Evaluates the right-hand side at a known `ell(A)`. Strictness only
    /// survives when the input is finite.
    pub fn apply(&self, ell_a: &ExtRat) -> (ExtRat, bool) {
        let rhs = ell_a.add_rat(&self.offset);
        (rhs, self.strict && ell_a.is_finite())
    }
}

/// Single-morphism bound: if the morphism is injective on the limit in every
/// degree, `ell(B) <= ell(A) + (L - D/8)`, strict under strict slack.
pub fn ell_bound_single(f: &MorphismMeta) -> Result<EllBound, IpError> {
    if !f.injective_all {
        return Err(IpError::InjectivityNotDeclared);
    }
    Ok(EllBound { offset: f.drift_base(), strict: f.slack.is_strict() })
}

/// Two-morphism bound under joint injectivity of the pair on the limit:
/// `ell(B) <= ell(A) + max(L1 - D1/8, L2 - D2/8)`.
///
/// The usable offset is the max of the two drift bases; the bound is strict
/// exactly when every morphism attaining that max carries strict slack.
pub fn ell_bound_pair(
    f1: &MorphismMeta,
    f2: &MorphismMeta,
    jointly_injective: bool,
) -> Result<EllBound, IpError> {
    if !jointly_injective {
        return Err(IpError::JointInjectivityNotDeclared);
    }
    let d1 = f1.drift_base();
    let d2 = f2.drift_base();
    let offset = d1.clone().max(d2.clone());
    let strict = [(d1, f1.slack), (d2, f2.slack)]
        .iter()
        .filter(|(d, _)| *d == offset)
        .all(|(_, s)| s.is_strict());
    Ok(EllBound { offset, strict })
}

/// Per-degree bound: if the morphism is injective on the limit at degree `d`,
/// then `kappa_B(d + D) <= kappa_A(d) + L`.
pub fn kappa_bound(f: &MorphismMeta, d: i64) -> Result<KappaBound, IpError> {
    if !f.injective_at(d) {
        return Err(IpError::InjectivityNotDeclaredAt(d));
    }
    Ok(KappaBound {
        source_degree: d,
        target_degree: d + f.degree,
        offset: f.level_base.clone(),
        strict: f.slack.is_strict(),
    })
}

/// `kappa_B(target_degree) <= kappa_A(source_degree) + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaBound {
    pub source_degree: i64,
    pub target_degree: i64,
    pub offset: Rat,
    pub strict: bool,
}
