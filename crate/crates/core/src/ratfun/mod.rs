//! Polynomials and rational functions in the generating-function variable
//! `t`, plus an exact solver for linear systems with polynomial entries.

mod intpoly;
mod poly;
mod solve;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};
use intpoly::IntPoly;

pub use poly::{poly_gcd, Poly};
pub use solve::{solve_linear_system, CramerSolution, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFunError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not a power series at the origin: denominator vanishes at t = 0")]
    NotPowerSeries,
    #[error("invalid rational function json: {0}")]
    Json(String),
}

/// A reduced quotient `num / den` of polynomials in `t`.
///
/// `gcd(num, den) = 1`, and `den` is scaled so that `den(0) = 1` when
/// `den(0) ≠ 0`, monic otherwise. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RfJson", into = "RfJson")]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

#[derive(Serialize, Deserialize)]
struct RfJson {
    num: Poly,
    den: Poly,
}

impl From<RationalFunction> for RfJson {
    fn from(f: RationalFunction) -> Self {
        RfJson {
            num: f.num,
            den: f.den,
        }
    }
}

impl TryFrom<RfJson> for RationalFunction {
    type Error = RatFunError;

    fn try_from(j: RfJson) -> Result<Self, Self::Error> {
        rf_normalize(&j.num, &j.den).map_err(|e| RatFunError::Json(e.to_string()))
    }
}

/// Reduces `num / den` and applies the normalization rule.
pub fn rf_normalize(num: &Poly, den: &Poly) -> Result<RationalFunction, RatFunError> {
    if den.is_zero() {
        return Err(RatFunError::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    // Work over Z: clear both denominators with one common factor.
    let (n, dn) = IntPoly::from_rational(num);
    let (d, dd) = IntPoly::from_rational(den);
    let n = n.scale(&dd);
    let d = d.scale(&dn);
    Ok(reduce_int(&n, &d))
}

/// Reduces an integer quotient; `d` must be nonzero.
pub(crate) fn reduce_int(n: &IntPoly, d: &IntPoly) -> RationalFunction {
    if n.is_zero() {
        return RationalFunction::zero();
    }
    let g = n.gcd(d);
    let n = n.div_exact(&g).expect("gcd divides numerator");
    let d = d.div_exact(&g).expect("gcd divides denominator");
    let scale = match d.eval_zero() {
        c if !c.is_zero() => Rational::from_integer(c),
        _ => Rational::from_integer(d.lc().clone()),
    }
    .recip();
    RationalFunction {
        num: n.to_rational().scale(&scale),
        den: d.to_rational().scale(&scale),
    }
}

impl RationalFunction {
    pub fn new(num: &Poly, den: &Poly) -> Result<Self, RatFunError> {
        rf_normalize(num, den)
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        rf_normalize(&num, &self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&RationalFunction {
            num: other.num.neg(),
            den: other.den.clone(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        rf_normalize(&self.num.mul(&other.num), &self.den.mul(&other.den))
            .expect("nonzero denominators")
    }

    /// Maclaurin coefficients of `t⁰ … t^n`, driven by the recurrence the
    /// denominator induces.
    pub fn series(&self, n: usize) -> Result<Vec<Rational>, RatFunError> {
        let d0 = self.den.constant_term();
        if d0.is_zero() {
            return Err(RatFunError::NotPowerSeries);
        }
        let inv = d0.recip();
        let den = self.den.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.num.coeff(i);
            for (j, dj) in den.iter().enumerate().skip(1).take(i) {
                if !dj.is_zero() {
                    acc -= dj * &out[i - j];
                }
            }
            out.push(if inv.is_one() { acc } else { acc * &inv });
        }
        Ok(out)
    }

    /// Renders as `(1-t)/(1-2*t-3*t^2)`; parentheses only where needed.
    pub fn to_text(&self) -> String {
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            return self.num.to_string();
        }
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// Exact values as canonical strings, for messages and JSON payloads.
pub fn format_all(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}
