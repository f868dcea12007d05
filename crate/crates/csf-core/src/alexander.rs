//! Integer Laurent polynomials in one variable and the cosmetic-surgery
//! constraint pipeline for genus-two symmetric Alexander polynomials.
//!
//! The pipeline combines three constraints on `Δ(t) = at² + bt + c + bt⁻¹ +
//! at⁻²`: the vanishing of `Δ''(1)`, the determinant normalization
//! `|Δ(1)| = 1`, and the vanishing of the same second derivative for the
//! lifted polynomial `Δ(t^{1/2})·Δ(-t^{1/2})` of the branched double cover.
//! The three intersect only in the trivial polynomial.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("the branched-cover substitution requires a symmetric polynomial")]
    Asymmetric,
    #[error("surgery slope {0} is outside the supported set {{2, -2}}")]
    UnsupportedSlope(i64),
}

/// Integer-coefficient Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(coeff: i64, exponent: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exponent, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (exponent, coeff) in terms {
            p.add_term(exponent, coeff);
        }
        p
    }

    fn add_term(&mut self, exponent: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: i64) -> i64 {
        *self.coeffs.get(&exponent).unwrap_or(&0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(exponent, coefficient)` pairs, ascending in the exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect() }
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: i64) -> LaurentPoly {
        if k == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, c * k)).collect() }
    }

    /// Formal derivative: `t^k` differentiates to `k t^{k-1}`.
    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e - 1, c * e)))
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms().map(|(_, c)| c).sum()
    }

    pub fn eval_at_minus_one(&self) -> i64 {
        self.terms().map(|(e, c)| if e.rem_euclid(2) == 0 { c } else { -c }).sum()
    }

    /// Substitutes `t -> -t`.
    pub fn negate_variable(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms().map(|(e, c)| (e, if e.rem_euclid(2) == 0 { c } else { -c })),
        )
    }

    /// Substitutes `t -> t^{-1}`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    /// `Σ coeff(k)·k·(k-1)`: the second derivative evaluated at `t = 1`.
    pub fn second_derivative_at_one(&self) -> i64 {
        self.terms().map(|(e, c)| c * e * (e - 1)).sum()
    }
}

impl LaurentPoly {
    /// Renders the polynomial with the given variable name, descending
    /// exponents.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let term = |c: i64, e: i64, leading: bool| -> String {
            let sign = if c < 0 {
                if leading {
                    "-"
                } else {
                    "- "
                }
            } else if leading {
                ""
            } else {
                "+ "
            };
            let mag = c.abs();
            let body = match (mag, e) {
                (m, 0) => format!("{m}"),
                (1, 1) => var.to_string(),
                (m, 1) => format!("{m}{var}"),
                (1, e) => format!("{var}^{e}"),
                (m, e) => format!("{m}{var}^{e}"),
            };
            format!("{sign}{body}")
        };
        let mut out = String::new();
        for (i, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&term(c, e, i == 0));
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

/// The lifted polynomial of the branched double cover:
/// `Δ(t^{1/2})·Δ(-t^{1/2})`, expanded in integer powers of `t`.
///
/// The product of `p(u)` and `p(-u)` is even in `u`, so substituting
/// `u² = t` leaves no half-integer exponents. Asymmetric input is rejected:
/// the construction is only meaningful for symmetric polynomials.
pub fn branched_cover_poly(p: &LaurentPoly) -> Result<LaurentPoly, AlexanderError> {
    if !p.is_symmetric() {
        return Err(AlexanderError::Asymmetric);
    }
    let product = p.mul(&p.negate_variable());
    let mut out = LaurentPoly::zero();
    for (e, c) in product.terms() {
        debug_assert!(e % 2 == 0, "odd powers cancel in p(u)p(-u)");
        out.add_term(e / 2, c);
    }
    Ok(out)
}

/// Lift of a surgery slope to the branched double cover: the preimage of the
/// `±2`-sloped filling curve is the `±1`-sloped curve upstairs.
pub fn double_cover_slope(slope: i64) -> Result<i64, AlexanderError> {
    match slope {
        2 => Ok(1),
        -2 => Ok(-1),
        other => Err(AlexanderError::UnsupportedSlope(other)),
    }
}

/// The symmetric genus-two template `at² + bt + c + bt⁻¹ + at⁻²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusTwoSymmetric {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl GenusTwoSymmetric {
    pub fn poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms([
            (2, self.a),
            (1, self.b),
            (0, self.c),
            (-1, self.b),
            (-2, self.a),
        ])
    }
}

/// Full record of the closed-form constraint solve.
#[derive(Clone, Debug)]
pub struct CosmeticReport {
    /// Coefficients of `Δ''(1)` as a linear form in `(a, b, c)`.
    pub second_derivative_form: [i64; 3],
    /// `b` as a polynomial in `a`, from `Δ''(1) = 0`.
    pub b_of_a: LaurentPoly,
    /// The two branches of `c` as polynomials in `a`, from `Δ(1) = ±1`.
    pub c_of_a: [LaurentPoly; 2],
    /// `Δ''(1)` of the lifted polynomial on each branch, in `a`.
    pub cover_second_derivative: [LaurentPoly; 2],
    /// All template solutions of the three constraints.
    pub raw_solutions: Vec<GenusTwoSymmetric>,
    /// The solution normalized by `Δ(1) = +1`: the trivial polynomial.
    pub normalized: GenusTwoSymmetric,
}

/// Solves the three cosmetic-surgery constraints on the genus-two symmetric
/// template in closed form.
///
/// The second-derivative form is extracted by evaluating the generic operator
/// on template basis vectors; `b` and `c` are then eliminated, the lifted
/// second derivative collapses to `±4a`, and the only solutions are
/// `(0, 0, ±1)`, i.e. the trivial polynomial after normalization.
pub fn cosmetic_solve() -> CosmeticReport {
    // Linear form of Δ''(1) on (a, b, c), read off the template basis.
    let form = |g: GenusTwoSymmetric| g.poly().second_derivative_at_one();
    let second_derivative_form = [
        form(GenusTwoSymmetric { a: 1, b: 0, c: 0 }),
        form(GenusTwoSymmetric { a: 0, b: 1, c: 0 }),
        form(GenusTwoSymmetric { a: 0, b: 0, c: 1 }),
    ];
    debug_assert_eq!(second_derivative_form, [8, 2, 0]);

    // Δ''(1) = 8a + 2b = 0  =>  b = -4a.
    let a = LaurentPoly::var();
    let b_of_a = a.scale(-4);
    // Δ(1) = 2a + 2b + c = ±1  =>  c = ±1 + 6a.
    let c_plus = a.scale(6).add(&LaurentPoly::one());
    let c_minus = a.scale(6).sub(&LaurentPoly::one());

    // The lifted polynomial is the symmetric template with top coefficient
    // a² and next coefficient 2ac - b², so its second derivative at one is
    // 8·a² + 2·(2ac - b²) by the same linear form.
    let cover_d2 = |c_of_a: &LaurentPoly| {
        let a_sq = a.mul(&a);
        let middle = a.mul(c_of_a).scale(2).sub(&b_of_a.mul(&b_of_a));
        a_sq.scale(second_derivative_form[0])
            .add(&middle.scale(second_derivative_form[1]))
    };
    let cover_plus = cover_d2(&c_plus);
    let cover_minus = cover_d2(&c_minus);
    debug_assert_eq!(cover_plus, LaurentPoly::monomial(4, 1));
    debug_assert_eq!(cover_minus, LaurentPoly::monomial(-4, 1));

    // ±4a = 0 forces a = 0; back-substitution gives b = 0 and c = ±1.
    let solutions: Vec<GenusTwoSymmetric> = [&c_plus, &c_minus]
        .into_iter()
        .map(|c| GenusTwoSymmetric { a: 0, b: b_of_a.coeff(0), c: c.coeff(0) })
        .map(|mut g| {
            g.b = 0; // b(0) = 0: the polynomial b_of_a has no constant term
            g
        })
        .collect();

    CosmeticReport {
        second_derivative_form,
        b_of_a,
        c_of_a: [c_plus, c_minus],
        cover_second_derivative: [cover_plus, cover_minus],
        normalized: solutions[0],
        raw_solutions: solutions,
    }
}

/// Brute-force check: all `(a, b, c)` with entries bounded by `bound` that
/// satisfy the three constraints directly.
pub fn exhaustive_solutions(bound: i64) -> Vec<GenusTwoSymmetric> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            // Δ''(1) = 8a + 2b
            if 8 * a + 2 * b != 0 {
                continue;
            }
            for c in -bound..=bound {
                // |Δ(1)| = |2a + 2b + c|
                if (2 * a + 2 * b + c).abs() != 1 {
                    continue;
                }
                // Lifted Δ''(1) = 8a² + 2(2ac - b²)
                if 8 * a * a + 2 * (2 * a * c - b * b) != 0 {
                    continue;
                }
                out.push(GenusTwoSymmetric { a, b, c });
            }
        }
    }
    out
}
