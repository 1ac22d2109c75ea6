//! A loaded die with signed dollar faces. After `n` throws, the chance of
//! breaking even is a plain coefficient of `Pⁿ`, and the chance that the
//! total lands in a residue class mod `k` is a residue sum, so it has a
//! rational generating function.
//!
//! The generating-function path costs `O(k³)` polynomial operations, so `k`
//! is capped (default [`DEFAULT_K_CEILING`]).

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gasolver::{self, GASolution, GaError};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rational};

pub const DEFAULT_K_CEILING: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiceError {
    #[error("a die needs at least one face")]
    NoFaces,
    #[error("face {value} has non-positive probability {prob}")]
    NonPositive { value: i64, prob: String },
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(String),
    #[error("k = {k} exceeds the configured ceiling {ceiling}")]
    KTooLarge { k: usize, ceiling: usize },
    #[error(transparent)]
    Ga(#[from] GaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct FaceJson {
    value: i64,
    #[serde(with = "rational::serde_rational")]
    prob: Rational,
}

/// Faces sorted by value, each with a positive probability, summing to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DieJson", into = "DieJson")]
pub struct DieSpec {
    faces: Vec<(i64, Rational)>,
}

#[derive(Serialize, Deserialize)]
struct DieJson {
    faces: Vec<FaceJson>,
}

impl From<DieSpec> for DieJson {
    fn from(d: DieSpec) -> Self {
        DieJson {
            faces: d
                .faces
                .into_iter()
                .map(|(value, prob)| FaceJson { value, prob })
                .collect(),
        }
    }
}

impl TryFrom<DieJson> for DieSpec {
    type Error = DiceError;

    fn try_from(j: DieJson) -> Result<Self, DiceError> {
        DieSpec::new(j.faces.into_iter().map(|f| (f.value, f.prob)))
    }
}

impl DieSpec {
    /// Faces with equal values are merged by adding their probabilities.
    pub fn new<I>(faces: I) -> Result<Self, DiceError>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut merged: Vec<(i64, Rational)> = Vec::new();
        for (value, prob) in faces {
            if !prob.is_positive() {
                return Err(DiceError::NonPositive {
                    value,
                    prob: rational::format(&prob),
                });
            }
            match merged.iter_mut().find(|(v, _)| *v == value) {
                Some((_, p)) => *p += prob,
                None => merged.push((value, prob)),
            }
        }
        if merged.is_empty() {
            return Err(DiceError::NoFaces);
        }
        let total: Rational = merged.iter().map(|(_, p)| p).sum();
        if !total.is_one() {
            return Err(DiceError::NotNormalized(rational::format(&total)));
        }
        merged.sort_by_key(|(v, _)| *v);
        Ok(DieSpec { faces: merged })
    }

    /// Every face equally likely.
    pub fn fair(values: &[i64]) -> Result<Self, DiceError> {
        let p = rational::ratio(1, values.len().max(1) as i64);
        Self::new(values.iter().map(|&v| (v, p.clone())))
    }

    pub fn faces(&self) -> &[(i64, Rational)] {
        &self.faces
    }

    pub fn max_abs_value(&self) -> u64 {
        self.faces.iter().map(|(v, _)| v.unsigned_abs()).max().unwrap_or(0)
    }
}

/// `P(x) = Σ pᵢ x^{vᵢ}`.
pub fn die_poly(die: &DieSpec) -> LaurentPoly {
    LaurentPoly::from_terms(die.faces.iter().map(|(v, p)| (*v, p.clone())))
}

pub fn modular_prob_gf(die: &DieSpec, k: usize) -> Result<GASolution, DiceError> {
    modular_prob_gf_with_ceiling(die, k, DEFAULT_K_CEILING)
}

/// Generating functions of `b_{k,a}(n)`, the probability that the running
/// total is `≡ a (mod k)` after `n` throws.
pub fn modular_prob_gf_with_ceiling(
    die: &DieSpec,
    k: usize,
    ceiling: usize,
) -> Result<GASolution, DiceError> {
    if k > ceiling {
        return Err(DiceError::KTooLarge { k, ceiling });
    }
    Ok(gasolver::ga(&die_poly(die), k)?)
}

/// Probability of a zero total after `n` throws, by direct expansion.
pub fn break_even_prob(die: &DieSpec, n: u64) -> Rational {
    die_poly(die).pow(n).coeff(0)
}

/// `b_{k,a}(n)` for all `a`, by direct expansion.
pub fn residue_probs(die: &DieSpec, k: usize, n: u64) -> Result<Vec<Rational>, DiceError> {
    if k == 0 {
        return Err(GaError::ZeroModulus.into());
    }
    let q = die_poly(die).pow(n);
    let mut out = vec![Rational::zero(); k];
    for (e, c) in q.terms() {
        out[gasolver::floored_residue(e, k)] += c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::ratfun::{Poly, RationalFunction};

    #[test]
    fn encoding() {
        let fair = DieSpec::fair(&[-1, 0, 1]).unwrap();
        assert_eq!(
            die_poly(&fair),
            LaurentPoly::trinomial().scale(&ratio(1, 3))
        );
        let single = DieSpec::new([(2, int(1))]).unwrap();
        assert_eq!(die_poly(&single), LaurentPoly::monomial(int(1), 2));
        let loaded = DieSpec::new([(-1, ratio(1, 4)), (1, ratio(3, 4))]).unwrap();
        assert_eq!(
            die_poly(&loaded),
            LaurentPoly::from_terms([(-1, ratio(1, 4)), (1, ratio(3, 4))])
        );
        assert_eq!(die_poly(&loaded).total(), int(1));
    }

    #[test]
    fn construction_rules() {
        let merged = DieSpec::new([(1, ratio(1, 2)), (-1, ratio(1, 4)), (1, ratio(1, 4))]).unwrap();
        assert_eq!(merged.faces(), &[(-1, ratio(1, 4)), (1, ratio(3, 4))]);
        assert_eq!(DieSpec::new([]), Err(DiceError::NoFaces));
        assert!(matches!(
            DieSpec::new([(0, int(0)), (1, int(1))]),
            Err(DiceError::NonPositive { value: 0, .. })
        ));
        assert_eq!(
            DieSpec::new([(0, ratio(1, 2))]),
            Err(DiceError::NotNormalized("1/2".into()))
        );
    }

    #[test]
    fn modular_probabilities() {
        let coin = DieSpec::fair(&[-1, 1]).unwrap();
        let s = modular_prob_gf(&coin, 2).unwrap();
        let even = s.series(0, 7);
        for (n, v) in even.iter().enumerate() {
            assert_eq!(*v, if n % 2 == 0 { int(1) } else { int(0) });
        }
        let die = DieSpec::fair(&[-1, 0, 1]).unwrap();
        assert_eq!(modular_prob_gf(&die, 2).unwrap().series(0, 2)[2], ratio(5, 9));
        let one = modular_prob_gf(&die, 1).unwrap();
        assert_eq!(
            one.gfs(),
            &[RationalFunction::new(&Poly::one(), &Poly::from_ints(&[1, -1])).unwrap()]
        );
        assert_eq!(
            modular_prob_gf_with_ceiling(&die, 11, 10).unwrap_err(),
            DiceError::KTooLarge { k: 11, ceiling: 10 }
        );
    }

    #[test]
    fn break_even() {
        let die = DieSpec::fair(&[-1, 0, 1]).unwrap();
        assert_eq!(break_even_prob(&die, 2), ratio(1, 3));
        assert_eq!(break_even_prob(&die, 0), int(1));
        let up = DieSpec::fair(&[1, 3]).unwrap();
        for n in 1..6 {
            assert_eq!(break_even_prob(&up, n), int(0));
        }
        assert_eq!(break_even_prob(&up, 0), int(1));
    }

    #[test]
    fn json_shape() {
        let die = DieSpec::fair(&[-1, 0, 1]).unwrap();
        let s = serde_json::to_string(&die).unwrap();
        assert_eq!(
            s,
            r#"{"faces":[{"value":-1,"prob":"1/3"},{"value":0,"prob":"1/3"},{"value":1,"prob":"1/3"}]}"#
        );
        assert_eq!(serde_json::from_str::<DieSpec>(&s).unwrap(), die);
        assert!(serde_json::from_str::<DieSpec>(r#"{"faces":[{"value":1,"prob":"1/2"}]}"#).is_err());
    }
}
