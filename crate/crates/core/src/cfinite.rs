//! C-finite sequences: constant-coefficient linear recurrences, fitting
//! them to data, and proving two of them equal by a finite check.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CFiniteError {
    #[error("fibonacci is defined here for n >= -1, got {0}")]
    FibonacciIndex(i64),
    #[error("recurrence has order {order} but only {initials} initial values")]
    TooFewInitials { order: usize, initials: usize },
    #[error("last recurrence coefficient must be nonzero")]
    DegenerateOrder,
    #[error("insufficient data: need at least {needed} terms, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("max_order must be positive")]
    ZeroMaxOrder,
    #[error("growth rate needs at least two terms with a nonzero next-to-last term")]
    ZeroDenominator,
}

/// `F_n` with `F_{-1} = 1`, `F_0 = 0`, `F_n = F_{n-1} + F_{n-2}`.
pub fn fibonacci(n: i64) -> Result<BigUint, CFiniteError> {
    if n < -1 {
        return Err(CFiniteError::FibonacciIndex(n));
    }
    let (mut prev, mut cur) = (BigUint::one(), BigUint::zero());
    for _ in 0..n.max(0) {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(if n == -1 { prev } else { cur })
}

/// `s(n) = d₁·s(n−1) + … + d_r·s(n−r)` for every `n ≥ initials.len()`.
///
/// Usually `initials.len() == order`. A longer prefix describes a sequence
/// whose first few terms precede the recurrence (a rational generating
/// function whose numerator degree reaches the denominator degree).
/// Order 0 is the sequence that vanishes after its prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RecurrenceJson", into = "RecurrenceJson")]
pub struct LinearRecurrence {
    rec_coeffs: Vec<Rational>,
    initials: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RecurrenceJson {
    order: usize,
    #[serde(with = "rational::serde_rational::vec")]
    rec_coeffs: Vec<Rational>,
    #[serde(with = "rational::serde_rational::vec")]
    initials: Vec<Rational>,
}

impl From<LinearRecurrence> for RecurrenceJson {
    fn from(r: LinearRecurrence) -> Self {
        RecurrenceJson {
            order: r.order(),
            rec_coeffs: r.rec_coeffs,
            initials: r.initials,
        }
    }
}

impl TryFrom<RecurrenceJson> for LinearRecurrence {
    type Error = String;

    fn try_from(j: RecurrenceJson) -> Result<Self, String> {
        if j.order != j.rec_coeffs.len() {
            return Err(format!(
                "order {} does not match {} rec_coeffs",
                j.order,
                j.rec_coeffs.len()
            ));
        }
        LinearRecurrence::new(j.rec_coeffs, j.initials).map_err(|e| e.to_string())
    }
}

impl LinearRecurrence {
    pub fn new(rec_coeffs: Vec<Rational>, initials: Vec<Rational>) -> Result<Self, CFiniteError> {
        if rec_coeffs.last().is_some_and(Zero::is_zero) {
            return Err(CFiniteError::DegenerateOrder);
        }
        if initials.len() < rec_coeffs.len() {
            return Err(CFiniteError::TooFewInitials {
                order: rec_coeffs.len(),
                initials: initials.len(),
            });
        }
        Ok(LinearRecurrence {
            rec_coeffs,
            initials,
        })
    }

    /// `F_0, F_1, …`
    pub fn fibonacci() -> Self {
        Self::new(
            vec![rational::int(1), rational::int(1)],
            vec![rational::int(0), rational::int(1)],
        )
        .unwrap()
    }

    pub fn order(&self) -> usize {
        self.rec_coeffs.len()
    }

    pub fn rec_coeffs(&self) -> &[Rational] {
        &self.rec_coeffs
    }

    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    /// Number of leading terms not governed by the recurrence.
    pub fn offset(&self) -> usize {
        self.initials.len() - self.order()
    }

    /// `s(0) … s(n)`.
    pub fn extend(&self, n: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.initials.iter().take(n + 1).cloned().collect();
        while out.len() <= n {
            let i = out.len();
            let next = self
                .rec_coeffs
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_zero())
                .map(|(j, d)| d * &out[i - 1 - j])
                .sum();
            out.push(next);
        }
        out
    }

    /// The sequence `n ↦ s(n + shift)`.
    pub fn shifted(&self, shift: usize) -> LinearRecurrence {
        let len = self.initials.len().saturating_sub(shift).max(self.order());
        let terms = self.extend(shift + len);
        LinearRecurrence {
            rec_coeffs: self.rec_coeffs.clone(),
            initials: terms[shift..shift + len].to_vec(),
        }
    }

    /// Termwise difference. The result uses the product characteristic
    /// polynomial, so its order is the sum of the two orders.
    pub fn sub(&self, other: &LinearRecurrence) -> LinearRecurrence {
        // characteristic polynomials as 1 - d1 z - ... - dr z^r
        let char_a = char_poly(&self.rec_coeffs);
        let char_b = char_poly(&other.rec_coeffs);
        let mut prod = vec![Rational::zero(); char_a.len() + char_b.len() - 1];
        for (i, x) in char_a.iter().enumerate() {
            for (j, y) in char_b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let rec_coeffs: Vec<Rational> = prod[1..].iter().map(|c| -c).collect();
        let len = (self.offset().max(other.offset())) + rec_coeffs.len();
        let a = self.extend(len);
        let b = other.extend(len);
        let initials = a.iter().zip(&b).take(len).map(|(x, y)| x - y).collect();
        LinearRecurrence {
            rec_coeffs,
            initials,
        }
    }
}

fn char_poly(d: &[Rational]) -> Vec<Rational> {
    std::iter::once(Rational::one())
        .chain(d.iter().map(|c| -c))
        .collect()
}

/// The minimal-order recurrence (with no offset) satisfied by every term,
/// searched up to `max_order`. `Ok(None)` means no such recurrence exists.
pub fn fit_recurrence(
    terms: &[Rational],
    max_order: usize,
) -> Result<Option<LinearRecurrence>, CFiniteError> {
    if max_order == 0 {
        return Err(CFiniteError::ZeroMaxOrder);
    }
    let needed = 2 * max_order + 2;
    if terms.len() < needed {
        return Err(CFiniteError::InsufficientData {
            needed,
            got: terms.len(),
        });
    }
    if terms.iter().all(Zero::is_zero) {
        return Ok(Some(LinearRecurrence {
            rec_coeffs: Vec::new(),
            initials: Vec::new(),
        }));
    }
    for order in 1..=max_order {
        if let Some(d) = solve_order(terms, order) {
            return Ok(Some(LinearRecurrence {
                rec_coeffs: d,
                initials: terms[..order].to_vec(),
            }));
        }
    }
    Ok(None)
}

/// Finds `d` with `d_r ≠ 0` and `s(n) = Σ d_j s(n−j)` for all `n ≥ r`.
fn solve_order(terms: &[Rational], r: usize) -> Option<Vec<Rational>> {
    // Augmented rows [s(n-1), ..., s(n-r) | s(n)].
    let mut rows: Vec<Vec<Rational>> = (r..terms.len())
        .map(|n| {
            (1..=r)
                .map(|j| terms[n - j].clone())
                .chain(std::iter::once(terms[n].clone()))
                .collect()
        })
        .collect();
    let pivots = rref(&mut rows, r);
    // Inconsistent if some row reads 0 = nonzero.
    if rows[pivots.len()..].iter().any(|row| !row[r].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); r];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = rows[row][r].clone();
    }
    if x[r - 1].is_zero() {
        // Move along a null-space direction that changes d_r, if any.
        let last_pivot_row = pivots.iter().position(|&c| c == r - 1);
        let free = (0..r).filter(|f| !pivots.contains(f)).find(|&f| match last_pivot_row {
            Some(row) => !rows[row][f].is_zero(),
            None => f == r - 1,
        })?;
        x[free] += Rational::one();
        for (row, &c) in pivots.iter().enumerate() {
            x[c] -= &rows[row][free];
        }
    }
    Some(x)
}

/// Reduced row echelon form over the first `cols` columns, in place.
/// Returns the pivot column of each leading row.
fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        pivots.push(c);
    }
    pivots
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Equal for all `n`; `checked` terms sufficed.
    Equal { checked: usize },
    FirstDifference {
        n: usize,
        left: Rational,
        right: Rational,
    },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }
}

/// Number of leading terms on which agreement proves equality everywhere.
pub fn proof_window(a: &LinearRecurrence, b: &LinearRecurrence) -> usize {
    a.offset().max(b.offset()) + a.order() + b.order()
}

/// Decides whether two C-finite descriptions define the same sequence.
/// Their difference satisfies a recurrence of order `a.order() + b.order()`,
/// so agreement on [`proof_window`] terms is a proof.
pub fn verify_equal(a: &LinearRecurrence, b: &LinearRecurrence) -> Verdict {
    verify_equal_with_window(a, b, 0)
}

/// As [`verify_equal`], but checks at least `min_terms` terms.
pub fn verify_equal_with_window(
    a: &LinearRecurrence,
    b: &LinearRecurrence,
    min_terms: usize,
) -> Verdict {
    let checked = proof_window(a, b).max(min_terms);
    if checked == 0 {
        return Verdict::Equal { checked };
    }
    let xs = a.extend(checked - 1);
    let ys = b.extend(checked - 1);
    match xs.iter().zip(&ys).position(|(x, y)| x != y) {
        Some(n) => Verdict::FirstDifference {
            n,
            left: xs[n].clone(),
            right: ys[n].clone(),
        },
        None => Verdict::Equal { checked },
    }
}

/// `terms[last] / terms[last - 1]`.
pub fn growth_rate_estimate(terms: &[Rational]) -> Result<Rational, CFiniteError> {
    match terms {
        [.., prev, last] if !prev.is_zero() => Ok(last / prev),
        _ => Err(CFiniteError::ZeroDenominator),
    }
}
