//! Laurent polynomials in one variable `x` with exact rational coefficients.
//!
//! A [`LaurentPoly`] stores its coefficients densely from `min_exp` up to
//! `max_exp`. The representation is canonical: the first and last stored
//! coefficients are nonzero, and the zero polynomial is `min_exp = 0` with no
//! coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("non-integer exponent at position {pos}")]
    NonIntegerExponent { pos: usize },
    #[error("division by zero in coefficient at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("cannot evaluate at 0: polynomial has negative exponents")]
    EvalAtZero,
    #[error("invalid polynomial json: {0}")]
    Json(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LaurentJson", into = "LaurentJson")]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    min_exp: i64,
    #[serde(with = "rational::serde_rational::vec")]
    coeffs: Vec<Rational>,
}

impl From<LaurentPoly> for LaurentJson {
    fn from(p: LaurentPoly) -> Self {
        LaurentJson {
            min_exp: p.min_exp,
            coeffs: p.coeffs,
        }
    }
}

impl TryFrom<LaurentJson> for LaurentPoly {
    type Error = LaurentError;

    fn try_from(j: LaurentJson) -> Result<Self, Self::Error> {
        let len = j.coeffs.len();
        let p = LaurentPoly::new(j.min_exp, j.coeffs);
        // Only canonical forms are accepted so that serialization is a bijection.
        if p.min_exp != j.min_exp || p.coeffs.len() != len {
            return Err(LaurentError::Json(
                "coefficients must have nonzero first and last entries".into(),
            ));
        }
        Ok(p)
    }
}

impl LaurentPoly {
    /// Builds `Σ coeffs[i] x^(min_exp + i)` and trims zero ends.
    pub fn new(min_exp: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    /// Sums `(exponent, coefficient)` pairs, merging like terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::new(lo, coeffs)
    }

    /// `x⁻¹ + 1 + x`, the base of the trinomial coefficients.
    pub fn trinomial() -> Self {
        Self::new(-1, vec![Rational::one(), Rational::one(), Rational::one()])
    }

    fn trim(&mut self) {
        let Some(first) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            *self = Self::zero();
            return;
        };
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.min_exp += first as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent; equals `min_exp - 1` for the zero polynomial.
    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Coefficient of `x^j`; zero outside the support.
    pub fn coeff(&self, j: i64) -> Rational {
        if self.is_zero() || j < self.min_exp || j > self.max_exp() {
            return Rational::zero();
        }
        self.coeffs[(j - self.min_exp) as usize].clone()
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
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
        Self::new(self.min_exp + other.min_exp, out)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        Self::from_terms(
            self.terms()
                .chain(other.terms())
                .map(|(e, c)| (e, c.clone())),
        )
    }

    pub fn scale(&self, s: &Rational) -> LaurentPoly {
        Self::new(self.min_exp, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `self^n` by iterated multiplication. `p^0 = 1` for every `p`,
    /// including the zero polynomial.
    pub fn pow(&self, n: u64) -> LaurentPoly {
        self.powers().nth(n as usize).unwrap()
    }

    /// The powers `1, p, p², …` in order.
    pub fn powers(&self) -> Powers<'_> {
        Powers {
            base: self,
            next: Some(Self::one()),
        }
    }

    /// Whether `P(x) = P(1/x)`.
    pub fn is_symmetric(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.min_exp == -self.max_exp() && self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Exact value `Σ cᵢ vⁱ`.
    pub fn eval_at(&self, v: &Rational) -> Result<Rational, LaurentError> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if v.is_zero() {
            if self.min_exp < 0 {
                return Err(LaurentError::EvalAtZero);
            }
            return Ok(self.coeff(0));
        }
        // Horner over the dense block, then shift by v^min_exp.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        let shift = pow_signed(v, self.min_exp);
        Ok(acc * shift)
    }

    /// `Σ cᵢ`, i.e. the value at `x = 1`.
    pub fn total(&self) -> Rational {
        self.coeffs.iter().sum()
    }

    /// Parses the text grammar, e.g. `x^-1 + 1 + x` or `1/4*x^-1 + 3/4 x`.
    pub fn parse(text: &str) -> Result<Self, LaurentError> {
        Parser::new(text).expression()
    }
}

pub struct Powers<'a> {
    base: &'a LaurentPoly,
    next: Option<LaurentPoly>,
}

impl Iterator for Powers<'_> {
    type Item = LaurentPoly;

    fn next(&mut self) -> Option<LaurentPoly> {
        let cur = self.next.take()?;
        self.next = Some(cur.mul(self.base));
        Some(cur)
    }
}

fn pow_signed(v: &Rational, e: i64) -> Rational {
    let base = if e < 0 { v.recip() } else { v.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{}", rational::format(&mag))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", rational::format(&mag))?,
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expression(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (e, c) = self.term()?;
            terms.push((e, if sign < 0 { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(other) => return self.err(format!("unexpected character {:?}", other as char)),
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    fn term(&mut self) -> Result<(i64, Rational), LaurentError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok((self.exponent()?, Rational::one()))
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.unsigned()?;
                let mut c = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    let slash = self.pos;
                    self.pos += 1;
                    if self.peek() == Some(b'x') {
                        // `c/x^e` reads as `c*x^-e`.
                        self.pos += 1;
                        let e = self.exponent()?;
                        return Ok((-e, c));
                    }
                    let den = self.unsigned()?;
                    if den.is_zero() {
                        return Err(LaurentError::ZeroDenominator { pos: slash });
                    }
                    c /= Rational::from_integer(den);
                }
                let starred = self.eat(b'*');
                if self.peek() == Some(b'x') {
                    self.pos += 1;
                    Ok((self.exponent()?, c))
                } else if starred {
                    self.err("expected 'x' after '*'")
                } else {
                    Ok((0, c))
                }
            }
            Some(other) => self.err(format!("expected a term, found {:?}", other as char)),
            None => self.err("expected a term, found end of input"),
        }
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let start = {
            self.skip_ws();
            self.pos
        };
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        if !matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            return self.err("expected integer exponent");
        }
        let mag = self.unsigned()?;
        if matches!(self.peek(), Some(b'/' | b'.')) {
            return Err(LaurentError::NonIntegerExponent { pos: start });
        }
        let e: i64 = mag
            .try_into()
            .map_err(|_| LaurentError::Syntax {
                pos: start,
                msg: "exponent out of range".into(),
            })?;
        Ok(if neg { -e } else { e })
    }

    fn unsigned(&mut self) -> Result<BigInt, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}
