//! Dense polynomials over `Z`, the working representation for
//! fraction-free elimination and gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly(c)
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    /// Clears denominators: returns `(q, d)` with `p = q / d`, `d > 0`.
    pub fn from_rational(p: &Poly) -> (IntPoly, BigInt) {
        let d = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let c = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (IntPoly::new(c), d)
    }

    pub fn to_rational(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigInt) -> IntPoly {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly(self.0.iter().map(|c| c * s).collect())
    }

    pub fn div_scalar_exact(&self, s: &BigInt) -> IntPoly {
        IntPoly(
            self.0
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(s);
                    debug_assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    /// `self / d`, which must be exact in `Z[t]`; `None` otherwise.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let Some(n) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if n < dd {
            return None;
        }
        let lc = d.lc();
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.0.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^(deg self - deg d + 1) · self mod d`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-division by zero");
        if self.degree().is_none_or(|n| n < dd) {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.0.clone();
        while r.len() > dd {
            let top = r.pop().unwrap();
            let shift = r.len() - dd;
            for c in r.iter_mut() {
                *c *= lc;
            }
            if !top.is_zero() {
                for (j, dc) in d.0[..dd].iter().enumerate() {
                    r[shift + j] -= &top * dc;
                }
            }
        }
        IntPoly::new(r)
    }

    /// Primitive gcd with positive leading coefficient (subresultant PRS).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        if b.is_zero() {
            return a.primitive();
        }
        a = a.primitive();
        b = b.primitive();
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.degree() == Some(0) {
                return IntPoly::one();
            }
            a = b;
            let divisor = &g * num_traits::pow(h.clone(), delta);
            b = r.div_scalar_exact(&divisor);
            g = a.lc().clone();
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
            };
        }
        b.primitive()
    }

    pub fn eval_zero(&self) -> BigInt {
        self.0.first().cloned().unwrap_or_default()
    }
}
