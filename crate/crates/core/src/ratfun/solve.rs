//! Fraction-free (Bareiss) elimination for square systems `M·x = b` whose
//! entries are polynomials in `t`.
//!
//! Rows are first scaled to integer coefficients, so every intermediate
//! entry lives in `Z[t]` and every Bareiss division is exact. The final
//! pivot is `±det(M)` up to the row scalings, and fraction-free
//! back-substitution yields the Cramer numerators directly.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::intpoly::IntPoly;
use super::{reduce_int, Poly, RationalFunction};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular system: determinant is the zero polynomial")]
    Singular,
    #[error("determinant degree {found} exceeds the expected bound {bound}")]
    DegreeBound { found: usize, bound: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Exact solution `x_i = numerators[i] / det` of a polynomial system.
#[derive(Debug, Clone)]
pub struct CramerSolution {
    det: Poly,
    numerators: Vec<Poly>,
    // Same quotient kept over Z for cheap reduction.
    int_den: IntPoly,
    int_nums: Vec<IntPoly>,
}

impl CramerSolution {
    /// `det(M)`, unreduced.
    pub fn det(&self) -> &Poly {
        &self.det
    }

    /// Cramer numerators: `det` of `M` with column `i` replaced by the rhs.
    pub fn numerators(&self) -> &[Poly] {
        &self.numerators
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    /// Entry `i` in reduced, normalized form.
    pub fn entry(&self, i: usize) -> RationalFunction {
        reduce_int(&self.int_nums[i], &self.int_den)
    }

    pub fn solution(&self) -> Vec<RationalFunction> {
        (0..self.len()).map(|i| self.entry(i)).collect()
    }
}

/// Solves `M·x = rhs` exactly. When `max_degree` is given, a determinant of
/// larger degree is reported as [`SolveError::DegreeBound`].
pub fn solve_linear_system(
    m: &[Vec<Poly>],
    rhs: &[Poly],
    max_degree: Option<usize>,
) -> Result<CramerSolution, SolveError> {
    let n = m.len();
    if rhs.len() != n {
        return Err(SolveError::DimensionMismatch(format!(
            "{n} rows but {} right-hand-side entries",
            rhs.len()
        )));
    }
    if let Some((i, row)) = m.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(SolveError::DimensionMismatch(format!(
            "row {i} has {} entries, expected {n}",
            row.len()
        )));
    }
    if n == 0 {
        return Err(SolveError::DimensionMismatch("empty system".into()));
    }

    // Scale each augmented row to integer coefficients.
    let mut scale_product = BigInt::one();
    let mut a: Vec<Vec<IntPoly>> = Vec::with_capacity(n);
    for (row, b) in m.iter().zip(rhs) {
        let lcm = row
            .iter()
            .chain(std::iter::once(b))
            .flat_map(|p| p.coeffs().iter())
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let int_row = row
            .iter()
            .chain(std::iter::once(b))
            .map(|p| {
                let (q, d) = IntPoly::from_rational(p);
                q.scale(&(&lcm / d))
            })
            .collect();
        scale_product *= lcm;
        a.push(int_row);
    }

    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Err(SolveError::Singular);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = std::mem::replace(&mut row[k], IntPoly::zero());
            for j in k + 1..=n {
                if factor.is_zero() && row[j].is_zero() {
                    continue;
                }
                let mut v = pivot.mul(&row[j]);
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v = v.sub(&factor.mul(&pivot_row[j]));
                }
                row[j] = exact(&v, &prev)?;
            }
        }
        prev = a[k][k].clone();
    }

    let den = a[n - 1][n - 1].clone();
    if let (Some(bound), Some(d)) = (max_degree, den.degree()) {
        if d > bound {
            return Err(SolveError::DegreeBound { found: d, bound });
        }
    }

    // Fraction-free back-substitution: y_i = den · x_i.
    let mut ys = vec![IntPoly::zero(); n];
    for i in (0..n).rev() {
        let mut acc = den.mul(&a[i][n]);
        for j in i + 1..n {
            if !a[i][j].is_zero() && !ys[j].is_zero() {
                acc = acc.sub(&a[i][j].mul(&ys[j]));
            }
        }
        ys[i] = exact(&acc, &a[i][i])?;
    }

    let factor = Rational::new(
        if negate { -BigInt::one() } else { BigInt::one() },
        scale_product,
    );
    let det = den.to_rational().scale(&factor);
    let numerators = ys.iter().map(|y| y.to_rational().scale(&factor)).collect();
    Ok(CramerSolution {
        det,
        numerators,
        int_den: den,
        int_nums: ys,
    })
}

fn exact(v: &IntPoly, d: &IntPoly) -> Result<IntPoly, SolveError> {
    if d.0.len() == 1 && d.0[0].is_one() {
        return Ok(v.clone());
    }
    v.div_exact(d)
        .ok_or_else(|| SolveError::Internal("inexact division during elimination".into()))
}
