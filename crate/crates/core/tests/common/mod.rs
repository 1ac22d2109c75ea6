#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use residuegf::rational::int;
use residuegf::LaurentPoly;

/// Nonzero Laurent polynomial with support width at most `width` and
/// integer coefficients in [-3, 3].
pub fn laurent_strategy(width: usize) -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-3i64..=3, 1..=width))
        .prop_filter_map("zero polynomial", |(min, cs)| {
            let p = LaurentPoly::new(min, cs.into_iter().map(int).collect());
            (!p.is_zero()).then_some(p)
        })
}

/// Seeded counterpart of [`laurent_strategy`].
pub fn random_laurent(rng: &mut ChaCha8Rng, width: usize) -> LaurentPoly {
    loop {
        let min = rng.gen_range(-3i64..=3);
        let len = rng.gen_range(1..=width);
        let cs = (0..len).map(|_| int(rng.gen_range(-3i64..=3))).collect();
        let p = LaurentPoly::new(min, cs);
        if !p.is_zero() {
            return p;
        }
    }
}

use num_traits::Zero;
use residuegf::Rational;

/// Rank of the `r × r` Hankel matrix `[s(i + j)]`, by plain Gaussian
/// elimination over the rationals. For a sequence satisfying an order-`r`
/// recurrence, the minimal order is `r` exactly when this rank is `r`.
pub fn hankel_rank(s: &[Rational], r: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = (0..r).map(|i| s[i..i + r].to_vec()).collect();
    let mut rank = 0;
    for col in 0..r {
        let Some(p) = (rank..r).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..r {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                for j in col..r {
                    let v = &f * &m[rank][j];
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Random recurrence of order `1..=max_order` with `d_r != 0`.
pub fn random_recurrence(rng: &mut ChaCha8Rng, max_order: usize) -> residuegf::LinearRecurrence {
    let r = rng.gen_range(1..=max_order);
    let mut d: Vec<Rational> = (0..r).map(|_| int(rng.gen_range(-3i64..=3))).collect();
    while d[r - 1].is_zero() {
        d[r - 1] = int(rng.gen_range(-3i64..=3));
    }
    let init = (0..r).map(|_| int(rng.gen_range(-5i64..=5))).collect();
    residuegf::LinearRecurrence::new(d, init).unwrap()
}
