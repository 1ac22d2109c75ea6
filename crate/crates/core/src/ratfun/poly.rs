use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use crate::rational::{self, Rational};

/// Dense univariate polynomial in `t` over the rationals, ascending powers.
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    #[serde(with = "rational::serde_rational::vec")]
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| rational::int(n)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^e`
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division over `Q`: `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let inv_lc = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let q = &rem[i + dd] * &inv_lc;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Whether `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Poly) -> bool {
        self.div_rem(d).1.is_zero()
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * v + c)
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Renders as `1-2*t-3*t^2`, ascending powers.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let m = rational::format(&mag);
            match (e, mag.is_one()) {
                (0, _) => out.push_str(&m),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&m);
                    out.push('*');
                }
            }
            match e {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{e}")),
            }
        }
        out
    }
}

/// Monic greatest common divisor over `Q`; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (ia, _) = IntPoly::from_rational(a);
    let (ib, _) = IntPoly::from_rational(b);
    ia.gcd(&ib).to_rational().monic()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn gcd_examples() {
        let g = poly_gcd(&Poly::from_ints(&[-1, 0, 1]), &Poly::from_ints(&[-1, 1]));
        assert_eq!(g, Poly::from_ints(&[-1, 1]));
        let p = Poly::from_ints(&[4, 0, 2]);
        assert_eq!(poly_gcd(&p, &Poly::zero()), Poly::from_ints(&[2, 0, 1]));
        assert_eq!(
            poly_gcd(&Poly::from_ints(&[1, -3]), &Poly::from_ints(&[1, 1])),
            Poly::one()
        );
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
        let half = Poly::new(vec![ratio(1, 2), ratio(-1, 2)]);
        assert_eq!(
            poly_gcd(&half, &Poly::from_ints(&[-1, 0, 1])),
            Poly::from_ints(&[-1, 1])
        );
    }

    #[test]
    fn division() {
        let a = Poly::from_ints(&[1, -2, -3]);
        let (q, r) = a.div_rem(&Poly::from_ints(&[1, 1]));
        assert_eq!(q, Poly::from_ints(&[1, -3]));
        assert!(r.is_zero());
        let (q, r) = a.div_rem(&Poly::from_ints(&[0, 2]));
        assert_eq!(q, Poly::new(vec![ratio(-1, 1), ratio(-3, 2)]));
        assert_eq!(r, Poly::from_ints(&[1]));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(Poly::from_ints(&[1, -2, -3]).to_string(), "1-2*t-3*t^2");
        assert_eq!(Poly::from_ints(&[0, 2]).to_string(), "2*t");
        assert_eq!(Poly::from_ints(&[-1, 0, 1]).to_string(), "-1+t^2");
        assert_eq!(Poly::new(vec![ratio(1, 3)]).to_string(), "1/3");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
