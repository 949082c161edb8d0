//! Built-in instances used by `selftest` and the test suites.

use rand::rngs::StdRng;
use rand::Rng;

use crate::laurent::{int, rat, LaurentPoly, Rational};
use crate::puiseux::{exp, Exp, GenericSeries};

/// Key sequences with all-ones `theta`; every one is primitive and algebraic.
pub const ALGEBRAIC_SEQUENCES: &[&[i64]] = &[
    &[1, 1],
    &[1, 2],
    &[1, 5],
    &[2, 3],
    &[3, 5],
    &[2, 3, 1],
    &[2, 3, 2],
    &[2, 3, 5],
    &[2, 5, 3],
    &[3, 4, 2],
    &[3, 5, 1],
    &[2, 3, 2, 1],
    &[4, 6, 3, 1],
    &[4, 6, 3, 3],
    &[4, 6, 5, 1],
    &[4, 10, 9, 1],
    &[6, 9, 4, 1],
    &[4, 6, 7, 13, 1],
];

fn s(terms: &[(Rational, Exp)], r: Exp) -> GenericSeries {
    GenericSeries::from_terms(terms, r).expect("corpus series are valid")
}

/// Degree-wise Puiseux series with rational coefficients, including one
/// whose key data is not algebraic.
pub fn series_corpus() -> Vec<GenericSeries> {
    vec![
        s(&[(int(1), exp(3, 2))], exp(-1, 1)),
        s(&[], exp(5, 3)),
        s(&[(int(1), exp(3, 2)), (int(5), exp(1, 4))], exp(1, 8)),
        s(&[(int(1), exp(3, 2)), (int(1), exp(1, 1))], exp(-1, 1)),
        s(&[(int(1), exp(4, 3)), (rat(1, 3), exp(-22, 9))], exp(-3, 1)),
        s(&[(int(2), exp(5, 2))], exp(-1, 2)),
        s(&[(int(1), exp(5, 3)), (int(1), exp(1, 3))], exp(-1, 1)),
        s(&[(int(1), exp(7, 4)), (int(2), exp(5, 8))], exp(-1, 2)),
        s(&[(int(1), exp(3, 2)), (rat(-1, 2), exp(1, 2))], exp(0, 1)),
        s(&[(int(3), exp(5, 2)), (int(1), exp(3, 2)), (int(-1), exp(1, 2))], exp(-3, 1)),
        s(&[(int(1), exp(9, 4)), (int(1), exp(3, 2)), (int(1), exp(11, 8))], exp(1, 1)),
    ]
}

/// A random polynomial with `deg_y <= max_deg_y` and x-exponents in `ex_range`.
pub fn random_poly(rng: &mut StdRng, max_deg_y: u32, ex_range: (i64, i64), max_terms: usize) -> LaurentPoly {
    let n = rng.gen_range(1..=max_terms);
    let mut p = LaurentPoly::zero();
    for _ in 0..n {
        let c = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        p.add_term(c, rng.gen_range(ex_range.0..=ex_range.1), rng.gen_range(0..=max_deg_y));
    }
    if p.is_zero() {
        p = LaurentPoly::one();
    }
    p
}
