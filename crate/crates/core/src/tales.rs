//! Cautionary tales: constant-coefficient laws that agree with a residue
//! sum sequence for a long stretch and then break.
//!
//! Search parameters (fitting window, horizon, the `fit_window + 2` survival
//! threshold) are this crate's own choices and are echoed in every [`Tale`]
//! so a run can be reproduced.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cfinite::{
    self, fibonacci, fit_recurrence, proof_window, verify_equal_with_window, LinearRecurrence,
    Verdict,
};
use crate::gasolver::{self, GaError};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rational};

/// Terms of each sequence echoed into a [`Tale`] for inspection.
pub const SHOWN_TERMS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaleError {
    #[error("fit_window must be at least 4, got {0}")]
    FitWindow(usize),
    #[error("horizon ({horizon}) must exceed fit_window ({fit_window})")]
    Horizon { horizon: usize, fit_window: usize },
    #[error(transparent)]
    Ga(#[from] GaError),
}

/// A law that matched `prefix_len` leading terms and failed on the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tale {
    #[serde(rename = "P")]
    pub p: LaurentPoly,
    /// `None` for tales not built from a single residue class.
    pub k: Option<usize>,
    pub a: Option<usize>,
    pub candidate: LinearRecurrence,
    /// Index of the first term of both sequences (0, or −1 for Euler's).
    pub first_index: i64,
    pub prefix_len: usize,
    pub first_failure_n: i64,
    /// The candidate's value at the failure.
    #[serde(with = "rational::serde_rational")]
    pub expected: Rational,
    /// The true value at the failure.
    #[serde(with = "rational::serde_rational")]
    pub actual: Rational,
    pub fit_window: Option<usize>,
    pub horizon: Option<usize>,
    pub label: String,
    #[serde(with = "rational::serde_rational::vec")]
    pub true_terms: Vec<Rational>,
    #[serde(with = "rational::serde_rational::vec")]
    pub candidate_terms: Vec<Rational>,
}

/// Outcome of [`find_tale`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaleSearch {
    Found(Box<Tale>),
    /// No recurrence of the allowed order fits the window.
    NoCandidate,
    /// The candidate is provably the true sequence: not a tale, a theorem.
    Theorem(LinearRecurrence),
    /// The candidate broke within two terms of its window.
    EarlyFailure { n: usize },
    /// The candidate is wrong but survives the whole horizon.
    SurvivesHorizon(LinearRecurrence),
}

impl TaleSearch {
    pub fn into_tale(self) -> Option<Tale> {
        match self {
            TaleSearch::Found(t) => Some(*t),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            TaleSearch::Found(t) => t.label.clone(),
            TaleSearch::NoCandidate => "none: no recurrence of the allowed order fits the window".into(),
            TaleSearch::Theorem(_) => "none: not a tale, a theorem (candidate verified equal)".into(),
            TaleSearch::EarlyFailure { n } => {
                format!("none: candidate fails at n = {n}, too close to its fitting window")
            }
            TaleSearch::SurvivesHorizon(_) => {
                "none: candidate differs from the truth only beyond the horizon".into()
            }
        }
    }
}

/// Fits the lowest-order recurrence to the first `fit_window` values of
/// `A(n, k, a)` and looks for its first failure up to `horizon`.
pub fn find_tale(
    p: &LaurentPoly,
    k: usize,
    a: usize,
    fit_window: usize,
    horizon: usize,
) -> Result<TaleSearch, TaleError> {
    if fit_window < 4 {
        return Err(TaleError::FitWindow(fit_window));
    }
    if horizon <= fit_window {
        return Err(TaleError::Horizon {
            horizon,
            fit_window,
        });
    }
    if a >= k.max(1) {
        return Err(GaError::ResidueOutOfRange { a, k }.into());
    }
    let sol = gasolver::ga(p, k)?;
    let truth = sol.series(a, horizon);
    let max_order = fit_window / 2 - 1;
    let Some(candidate) = fit_recurrence(&truth[..fit_window], max_order)
        .expect("window holds 2 * max_order + 2 terms")
    else {
        return Ok(TaleSearch::NoCandidate);
    };
    let guess = candidate.extend(horizon);
    let Some(n) = (0..=horizon).find(|&n| guess[n] != truth[n]) else {
        let exact = gasolver::recurrence_of(&sol).for_class(a);
        return Ok(match cfinite::verify_equal(&candidate, &exact) {
            Verdict::Equal { .. } => TaleSearch::Theorem(candidate),
            Verdict::FirstDifference { .. } => TaleSearch::SurvivesHorizon(candidate),
        });
    };
    if n < fit_window + 2 {
        return Ok(TaleSearch::EarlyFailure { n });
    }
    let shown = SHOWN_TERMS.min(horizon + 1);
    Ok(TaleSearch::Found(Box::new(Tale {
        p: p.clone(),
        k: Some(k),
        a: Some(a),
        label: format!(
            "A(n,{k},{a}) for P = {p} matches an order-{} recurrence for 0 <= n <= {} and fails at n = {n} \
             (fit window {fit_window}, horizon {horizon})",
            candidate.order(),
            n - 1
        ),
        expected: guess[n].clone(),
        actual: truth[n].clone(),
        candidate,
        first_index: 0,
        prefix_len: n,
        first_failure_n: n as i64,
        fit_window: Some(fit_window),
        horizon: Some(horizon),
        true_terms: truth[..shown].to_vec(),
        candidate_terms: guess[..shown].to_vec(),
    })))
}

fn central_coefficients(count: usize) -> Vec<Rational> {
    LaurentPoly::trinomial()
        .powers()
        .take(count)
        .map(|q| q.coeff(0))
        .collect()
}

fn fib_product(n: i64) -> Rational {
    let f = Rational::from_integer(num_bigint::BigInt::from(fibonacci(n).expect("n >= -1")));
    &f * (&f + Rational::one())
}

/// Euler's law `3·C(n+1) − C(n+2) = F_n(F_n + 1)` with `C(m)` the central
/// trinomial coefficient: true for `−1 ≤ n ≤ 7`, false at `n = 8`.
pub fn euler_tale() -> Tale {
    const FIRST: i64 = -1;
    let count = SHOWN_TERMS.max(20);
    let central = central_coefficients(count + 2);
    let left: Vec<Rational> = (0..count)
        .map(|m| rational::int(3) * &central[m] - &central[m + 1])
        .collect();
    let right: Vec<Rational> = (0..count as i64).map(|m| fib_product(m + FIRST)).collect();

    let candidate = fit_recurrence(&right, 6)
        .expect("enough terms")
        .expect("F_n(F_n + 1) is C-finite of order 5");
    assert_eq!(candidate.extend(count - 1), right, "fitted law reproduces F_n(F_n + 1)");

    let failure = left
        .iter()
        .zip(&right)
        .position(|(l, r)| l != r)
        .expect("the law fails somewhere in the first 20 values");
    assert_eq!(failure, 9, "agreement on exactly -1 <= n <= 7");

    Tale {
        p: LaurentPoly::trinomial(),
        k: None,
        a: None,
        first_index: FIRST,
        prefix_len: failure,
        first_failure_n: FIRST + failure as i64,
        expected: right[failure].clone(),
        actual: left[failure].clone(),
        fit_window: None,
        horizon: None,
        label: "3*C(n+1,0) - C(n+2,0) = F_n*(F_n+1) with C the trinomial coefficients: \
                holds for the nine values -1 <= n <= 7, fails at n = 8"
            .into(),
        true_terms: left[..SHOWN_TERMS].to_vec(),
        candidate_terms: right[..SHOWN_TERMS].to_vec(),
        candidate,
    }
}

/// Evidence that the corrected identity
/// `Σⱼ C(n+1, 10j) − Σⱼ C(n+1, 10j+1) = ½ F_n(F_n + 1)` holds for all `n ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeorgeReport {
    /// `C(n+2,0) = C(n+1,−1) + C(n+1,0) + C(n+1,1)` and the rewritten law
    /// agree for `0 ≤ n ≤` this bound.
    pub rewriting_checked_upto: usize,
    pub rewriting_holds: bool,
    /// Only the `j = 0` summands are nonzero for every `n <` this bound.
    pub only_j0_below: usize,
    /// First `(n, j, C(n+1, 10j or 10j+1))` with `j ≠ 0` and a nonzero summand.
    pub first_outer_summand: Option<(usize, i64, String)>,
    /// Direct comparison on `0 ≤ n < window_terms`.
    pub window_terms: usize,
    pub window_agrees: bool,
    /// Left side as a C-finite description from the generating functions.
    pub left: LinearRecurrence,
    /// Right side fitted from its values.
    pub right: LinearRecurrence,
    /// Terms that suffice for a proof given the two orders.
    pub proof_window: usize,
    pub rigorous_equal: bool,
    pub checked_terms: usize,
    #[serde(with = "rational::serde_rational::vec")]
    pub left_terms: Vec<Rational>,
}

impl GeorgeReport {
    pub fn all_confirmed(&self) -> bool {
        self.rewriting_holds
            && self.only_j0_below >= 8
            && self.window_agrees
            && self.rigorous_equal
    }
}

/// `½ F_n (F_n + 1)`.
pub fn george_right(n: u64) -> Rational {
    fib_product(n as i64) / rational::int(2)
}

pub fn george_check() -> GeorgeReport {
    george_check_with(20)
}

/// As [`george_check`] with the direct window `0 ≤ n ≤ window_upto`.
pub fn george_check_with(window_upto: usize) -> GeorgeReport {
    const REWRITE_UPTO: usize = 30;
    let trinomial = LaurentPoly::trinomial();
    let powers: Vec<LaurentPoly> = trinomial.powers().take(REWRITE_UPTO + 3).collect();

    let rewriting_holds = (0..=REWRITE_UPTO).all(|n| {
        let (next, cur) = (&powers[n + 1], &powers[n + 2]);
        let split = cur.coeff(0) == next.coeff(-1) + next.coeff(0) + next.coeff(1);
        let original = rational::int(3) * next.coeff(0) - cur.coeff(0);
        let rewritten = rational::int(2) * (next.coeff(0) - next.coeff(1));
        split && original == rewritten
    });

    // Outer summands C(n+1, 10j) and C(n+1, 10j+1) with j != 0.
    let outer = |n: usize| -> Option<(i64, Rational)> {
        let q = &powers[n + 1];
        (q.min_exp().div_euclid(10) - 1..=q.max_exp().div_euclid(10) + 1)
            .filter(|&j| j != 0)
            .flat_map(|j| [(j, q.coeff(10 * j)), (j, q.coeff(10 * j + 1))])
            .find(|(_, c)| !c.is_zero())
    };
    let first_outer = (0..=REWRITE_UPTO).find_map(|n| outer(n).map(|(j, c)| (n, j, c)));
    let only_j0_below = first_outer.as_ref().map_or(REWRITE_UPTO + 1, |(n, _, _)| *n);

    let sol = gasolver::gas(&trinomial, 10).expect("trinomial is symmetric");
    let shared = gasolver::recurrence_of(&sol);
    let (c0, c1) = (&shared.initials[0], &shared.initials[1]);
    let diff = c0.iter().zip(c1).map(|(x, y)| x - y).collect();
    let left = LinearRecurrence::new(shared.rec_coeffs.clone(), diff)
        .expect("common denominator has full degree")
        .shifted(1);

    let right_terms: Vec<Rational> = (0..=window_upto.max(20) as u64).map(george_right).collect();
    let right = fit_recurrence(&right_terms, 6)
        .expect("enough terms")
        .expect("half of F_n(F_n + 1) is C-finite of order at most 6");

    let left_terms = left.extend(window_upto);
    let window_agrees = left_terms[..] == right_terms[..=window_upto];
    let verdict = verify_equal_with_window(&left, &right, window_upto + 1);

    GeorgeReport {
        rewriting_checked_upto: REWRITE_UPTO,
        rewriting_holds,
        only_j0_below,
        first_outer_summand: first_outer.map(|(n, j, c)| (n, j, rational::format(&c))),
        window_terms: window_upto + 1,
        window_agrees,
        proof_window: proof_window(&left, &right),
        rigorous_equal: verdict.is_equal(),
        checked_terms: match verdict {
            Verdict::Equal { checked } => checked,
            Verdict::FirstDifference { n, .. } => n + 1,
        },
        left,
        right,
        left_terms,
    }
}
