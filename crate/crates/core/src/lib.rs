//! Exact rational generating functions for residue-class coefficient sums
//! of powers of Laurent polynomials.
//!
//! * [`laurent`]: Laurent polynomials in `x`, powers, coefficient extraction.
//! * [`ratfun`]: polynomials and rational functions in `t`, exact linear solving.
//! * [`gasolver`]: the sums `A(n, k, a)` and their generating functions.
//! * [`cfinite`]: constant-coefficient recurrences, fitting, proof by finite check.
//! * [`tales`]: laws that hold for a while and then fail, and their fixes.
//! * [`dice`]: residue-class probabilities for a loaded die.
//! * [`cli`]: the command-line front end.

pub mod cfinite;
pub mod cli;
pub mod dice;
pub mod gasolver;
pub mod laurent;
pub mod ratfun;
pub mod rational;
pub mod tales;

pub use cfinite::{fibonacci, fit_recurrence, verify_equal, LinearRecurrence, Verdict};
pub use dice::{break_even_prob, die_poly, modular_prob_gf, DieSpec};
pub use gasolver::{ga, gas, recurrence_of, residue_sum, GASolution};
pub use laurent::LaurentPoly;
pub use ratfun::{Poly, RationalFunction};
pub use rational::Rational;
pub use tales::{euler_tale, find_tale, george_check, Tale};
