//! Exact rational scalars, the extended line `[-inf, inf]`, and the `"p/q"`
//! wire format used by every file interface of this workspace.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Filtration levels, energies and squares of
/// cohomology classes are never floats; ties at critical values are
/// meaningful.
pub type Rat = BigRational;

/// Rational from an integer pair. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Rational from an integer.
pub fn rat_int(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal `{0}`")]
    BadInt(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
    #[error("denominator must be positive in `{0}`")]
    NonPositiveDenominator(String),
    #[error("rational literal `{0}` is not in lowest terms")]
    NotReduced(String),
}

/// Parses `"p/q"` (lowest terms, `q > 0`) or a bare integer `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RatParseError::Empty);
    }
    let bad = || RatParseError::BadInt(s.to_string());
    match t.split_once('/') {
        None => {
            let p = BigInt::from_str(t).map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
        Some((ps, qs)) => {
            let p = BigInt::from_str(ps.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(qs.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(RatParseError::ZeroDenominator(s.to_string()));
            }
            if q.is_negative() {
                return Err(RatParseError::NonPositiveDenominator(s.to_string()));
            }
            let r = BigRational::new(p.clone(), q.clone());
            if r.numer() != &p || r.denom() != &q {
                return Err(RatParseError::NotReduced(s.to_string()));
            }
            Ok(r)
        }
    }
}

/// Canonical machine form: always `"p/q"`, including `q = 1`.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human form: `"p"` for integers, `"p/q"` otherwise.
pub fn display_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational extended by the two infinities, totally ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtRat {
    pub fn finite(r: Rat) -> Self {
        ExtRat::Finite(r)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Adds a finite rational; infinities absorb.
    pub fn add_rat(&self, r: &Rat) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::NegInf,
            ExtRat::PosInf => ExtRat::PosInf,
            ExtRat::Finite(x) => ExtRat::Finite(x + r),
        }
    }

    pub fn min(self, other: ExtRat) -> ExtRat {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRat::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::PosInf => write!(f, "inf"),
            ExtRat::Finite(r) => write!(f, "{}", display_rat(r)),
        }
    }
}

/// Machine form of an extended rational: `"p/q"`, `"inf"` or `"-inf"`.
pub fn format_ext(e: &ExtRat) -> String {
    match e {
        ExtRat::NegInf => "-inf".to_string(),
        ExtRat::PosInf => "inf".to_string(),
        ExtRat::Finite(r) => format_rat(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let r = parse_rat("49/120").unwrap();
        assert_eq!(r, rat(49, 120));
        assert_eq!(format_rat(&r), "49/120");
        assert_eq!(display_rat(&r), "49/120");
        assert_eq!(display_rat(&rat_int(-3)), "-3");
        assert_eq!(format_rat(&rat_int(-3)), "-3/1");
    }

    #[test]
    fn parse_accepts_bare_integers() {
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("-2").unwrap(), rat_int(-2));
    }

    #[test]
    fn parse_rejects_bad_literals() {
        assert!(matches!(parse_rat(""), Err(RatParseError::Empty)));
        assert!(matches!(
            parse_rat("1/0"),
            Err(RatParseError::ZeroDenominator(_))
        ));
        assert!(matches!(
            parse_rat("1/-2"),
            Err(RatParseError::NonPositiveDenominator(_))
        ));
        assert!(matches!(parse_rat("2/4"), Err(RatParseError::NotReduced(_))));
        assert!(matches!(parse_rat("x/2"), Err(RatParseError::BadInt(_))));
    }

    #[test]
    fn extended_order() {
        let vals = [
            ExtRat::NegInf,
            ExtRat::Finite(rat(-13, 60)),
            ExtRat::Finite(rat(1, 120)),
            ExtRat::PosInf,
        ];
        for w in vals.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(ExtRat::PosInf.add_rat(&rat_int(5)), ExtRat::PosInf);
        assert_eq!(format_ext(&ExtRat::PosInf), "inf");
    }
}
