//! Residue-class coefficient sums of powers of a Laurent polynomial and
//! their rational generating functions.
//!
//! For `P(x) = Σ cᵢ xⁱ`, `k ≥ 1` and `0 ≤ a < k`, let `A(n, k, a)` be the sum
//! of the coefficients of `Pⁿ` at exponents `≡ a (mod k)`. Multiplying by
//! `P` once more moves mass from class `b` to class `(b + i) mod k` with
//! weight `cᵢ`, so with `M[a][b] = Σ_{i ≡ a−b (mod k)} cᵢ` the generating
//! functions `f_a(t) = Σₙ A(n, k, a) tⁿ` solve
//!
//! ```text
//! (I − tM) f = e₀.
//! ```
//!
//! By Cramer's rule every `f_a` has denominator `det(I − tM)`, of degree at
//! most `k`, and numerator of degree at most `k − 1`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cfinite::LinearRecurrence;
use crate::laurent::LaurentPoly;
use crate::ratfun::{solve_linear_system, CramerSolution, Poly, RationalFunction, SolveError};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaError {
    #[error("P must be a nonzero Laurent polynomial")]
    ZeroPolynomial,
    #[error("k must be a positive integer")]
    ZeroModulus,
    #[error("residue a = {a} is outside [0, {k})")]
    ResidueOutOfRange { a: usize, k: usize },
    #[error("P is not symmetric (P(x) != P(1/x)); use ga instead")]
    NotSymmetric,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<SolveError> for GaError {
    fn from(e: SolveError) -> Self {
        GaError::Internal(e.to_string())
    }
}

/// The family `f_{k,0}, …, f_{k,k−1}` for one `P` and `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SolutionJson", into = "SolutionJson")]
pub struct GASolution {
    p: LaurentPoly,
    k: usize,
    gfs: Vec<RationalFunction>,
    common_den: Poly,
    symmetric: bool,
}

#[derive(Serialize, Deserialize)]
struct SolutionJson {
    #[serde(rename = "P")]
    p: LaurentPoly,
    k: usize,
    common_den: Poly,
    common_den_degree: usize,
    gfs: Vec<RationalFunction>,
    symmetric: bool,
}

impl From<GASolution> for SolutionJson {
    fn from(s: GASolution) -> Self {
        SolutionJson {
            common_den_degree: s.common_den.degree().unwrap_or(0),
            p: s.p,
            k: s.k,
            common_den: s.common_den,
            gfs: s.gfs,
            symmetric: s.symmetric,
        }
    }
}

impl TryFrom<SolutionJson> for GASolution {
    type Error = String;

    fn try_from(j: SolutionJson) -> Result<Self, String> {
        if j.gfs.len() != j.k {
            return Err(format!("expected {} generating functions, got {}", j.k, j.gfs.len()));
        }
        if j.common_den.constant_term() != Rational::one() {
            return Err("common_den must have constant term 1".into());
        }
        if j.common_den.degree().unwrap_or(0) != j.common_den_degree {
            return Err("common_den_degree does not match common_den".into());
        }
        if let Some(a) = j.gfs.iter().position(|f| !j.common_den.divisible_by(f.den())) {
            return Err(format!("gfs[{a}] denominator does not divide common_den"));
        }
        Ok(GASolution {
            p: j.p,
            k: j.k,
            gfs: j.gfs,
            common_den: j.common_den,
            symmetric: j.symmetric,
        })
    }
}

impl GASolution {
    pub fn p(&self) -> &LaurentPoly {
        &self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `gfs()[a]` is `f_{k,a}`, reduced.
    pub fn gfs(&self) -> &[RationalFunction] {
        &self.gfs
    }

    /// `det(I − tM)` with constant term 1, not reduced against any entry.
    pub fn common_den(&self) -> &Poly {
        &self.common_den
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    /// Numerator of `f_{k,a}` over the common denominator.
    pub fn unreduced_numerator(&self, a: usize) -> Poly {
        let f = &self.gfs[a];
        let (cofactor, _) = self.common_den.div_rem(f.den());
        f.num().mul(&cofactor)
    }

    /// `A(0, k, a) … A(n, k, a)` from the generating function.
    pub fn series(&self, a: usize, n: usize) -> Vec<Rational> {
        self.gfs[a]
            .series(n)
            .expect("generating functions are power series")
    }

    /// Number of distinct reduced generating functions.
    pub fn distinct_count(&self) -> usize {
        let mut seen: Vec<&RationalFunction> = Vec::new();
        for f in &self.gfs {
            if !seen.contains(&f) {
                seen.push(f);
            }
        }
        seen.len()
    }
}

/// `(a − i) mod k` in `[0, k)` for any sign of `a − i`.
pub fn floored_residue(value: i64, k: usize) -> usize {
    value.rem_euclid(k as i64) as usize
}

fn check_params(k: usize, a: usize) -> Result<(), GaError> {
    if k == 0 {
        return Err(GaError::ZeroModulus);
    }
    if a >= k {
        return Err(GaError::ResidueOutOfRange { a, k });
    }
    Ok(())
}

/// `A(n, k, a)` by expanding `Pⁿ` directly. Independent of the linear
/// algebra; this is the reference the generating functions are checked
/// against.
pub fn residue_sum(p: &LaurentPoly, k: usize, a: usize, n: u64) -> Result<Rational, GaError> {
    check_params(k, a)?;
    Ok(class_sums(&p.pow(n), k).swap_remove(a))
}

/// `table[n][a] = A(n, k, a)` for `n = 0 … n_max`, by repeated expansion.
pub fn residue_sums(p: &LaurentPoly, k: usize, n_max: usize) -> Result<Vec<Vec<Rational>>, GaError> {
    check_params(k, 0)?;
    Ok(p.powers()
        .take(n_max + 1)
        .map(|q| class_sums(&q, k))
        .collect())
}

fn class_sums(q: &LaurentPoly, k: usize) -> Vec<Rational> {
    let mut sums = vec![Rational::zero(); k];
    for (e, c) in q.terms() {
        sums[floored_residue(e, k)] += c;
    }
    sums
}

/// The `k × k` transfer matrix `M[a][b] = Σ_{i ≡ a−b (mod k)} cᵢ`.
pub fn transfer_matrix(p: &LaurentPoly, k: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); k]; k];
    for (i, c) in p.terms() {
        let shift = floored_residue(i, k);
        for b in 0..k {
            m[(b + shift) % k][b] += c;
        }
    }
    m
}

/// Solves `(I − tM) f = e₀`. Returns the Cramer solution and `det(I − tM)`
/// normalized to constant term 1.
fn solve_system(p: &LaurentPoly, k: usize) -> Result<(CramerSolution, Poly), GaError> {
    if p.is_zero() {
        return Err(GaError::ZeroPolynomial);
    }
    check_params(k, 0)?;
    let m = transfer_matrix(p, k);
    let system: Vec<Vec<Poly>> = m
        .iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(|(b, c)| {
                    let delta = if a == b { Rational::one() } else { Rational::zero() };
                    Poly::new(vec![delta, -c.clone()])
                })
                .collect()
        })
        .collect();
    let mut rhs = vec![Poly::zero(); k];
    rhs[0] = Poly::one();

    let sol = solve_linear_system(&system, &rhs, Some(k))?;
    let d0 = sol.det().constant_term();
    if d0.is_zero() {
        return Err(GaError::Internal("det(I - tM) vanishes at t = 0".into()));
    }
    let common_den = sol.det().scale(&d0.recip());
    for (a, num) in sol.numerators().iter().enumerate() {
        if num.degree().is_some_and(|d| d + 1 > k) {
            return Err(GaError::Internal(format!(
                "numerator of f_{a} has degree {:?} > k - 1",
                num.degree()
            )));
        }
    }
    Ok((sol, common_den))
}

/// All `f_{k,a}` for arbitrary nonzero `P`.
pub fn ga(p: &LaurentPoly, k: usize) -> Result<GASolution, GaError> {
    let (sol, common_den) = solve_system(p, k)?;
    Ok(GASolution {
        p: p.clone(),
        k,
        gfs: sol.solution(),
        common_den,
        symmetric: p.is_symmetric(),
    })
}

/// As [`ga`] for symmetric `P`: only `a ≤ k/2` are reduced, the rest are
/// mirrored through `f_{k,k−a} = f_{k,a}`.
pub fn gas(p: &LaurentPoly, k: usize) -> Result<GASolution, GaError> {
    if !p.is_symmetric() {
        return Err(GaError::NotSymmetric);
    }
    let (sol, common_den) = solve_system(p, k)?;
    let half: Vec<RationalFunction> = (0..=k / 2).map(|a| sol.entry(a)).collect();
    let gfs = (0..k)
        .map(|a| half[if a <= k / 2 { a } else { k - a }].clone())
        .collect();
    Ok(GASolution {
        p: p.clone(),
        k,
        gfs,
        common_den,
        symmetric: true,
    })
}

/// The recurrence shared by every residue class, read off `common_den`.
///
/// With `common_den = 1 − d₁t − … − d_r t^r`, every class satisfies
/// `A(n) = d₁A(n−1) + … + d_rA(n−r)` for `n ≥ start`. `start` equals `r`
/// unless some unreduced numerator has degree `≥ r`, which happens when
/// `det M = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharedRecurrence {
    #[serde(with = "rational::serde_rational::vec")]
    pub rec_coeffs: Vec<Rational>,
    pub start: usize,
    /// `initials[a]` holds `A(0, k, a) … A(start − 1, k, a)`.
    #[serde(serialize_with = "serialize_rows")]
    pub initials: Vec<Vec<Rational>>,
}

fn serialize_rows<S: serde::Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for row in rows {
        seq.serialize_element(&crate::ratfun::format_all(row))?;
    }
    seq.end()
}

impl SharedRecurrence {
    pub fn order(&self) -> usize {
        self.rec_coeffs.len()
    }

    pub fn for_class(&self, a: usize) -> LinearRecurrence {
        LinearRecurrence::new(self.rec_coeffs.clone(), self.initials[a].clone())
            .expect("common denominator has full degree")
    }
}

pub fn recurrence_of(sol: &GASolution) -> SharedRecurrence {
    let den = sol.common_den();
    let order = den.degree().unwrap_or(0);
    let rec_coeffs: Vec<Rational> = (1..=order).map(|j| -den.coeff(j)).collect();
    let start = (0..sol.k())
        .filter_map(|a| sol.unreduced_numerator(a).degree())
        .map(|d| d + 1)
        .max()
        .unwrap_or(0)
        .max(order);
    let initials = (0..sol.k())
        .map(|a| match start {
            0 => Vec::new(),
            s => sol.series(a, s - 1),
        })
        .collect();
    SharedRecurrence {
        rec_coeffs,
        start,
        initials,
    }
}
