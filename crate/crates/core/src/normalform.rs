//! Normalization of generic series: the sets `S_k`, `S'`, the forbidden values
//! `omega_hat(beta)`, and a solver that removes them one slot at a time.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::keyseq::{essential_subsequence, normal_form_check, KeySequence};
use crate::laurent::{int, Rational};
use crate::puiseux::{
    formal_pairs, formal_pairs_from_key_sequence, key_data_from_series, key_iteration, transform_raw, Exp,
    FormalPairs, GenericSeries, UniPoly,
};

/// Accumulated change `x' = a^w x + b`, `y' = c y + f(x)`; `swap` exchanges
/// `x` and `y` first (only used for pure weighted series).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub f: UniPoly,
    pub swap: bool,
}

impl Transform {
    pub fn identity() -> Self {
        Transform { a: Rational::one(), b: Rational::zero(), c: Rational::one(), f: UniPoly::new(), swap: false }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    // f += t (x + b)^deg
    fn add_y_shift(&mut self, t: &Rational, deg: u32) {
        let mut binom = Rational::one();
        let mut bpow = Rational::one();
        let mut terms = Vec::new();
        for m in 0..=deg {
            terms.push((deg - m, t * &binom * &bpow));
            binom = binom * int((deg - m) as i64) / int(m as i64 + 1);
            bpow *= &self.b;
        }
        for (e, v) in terms {
            let slot = self.f.entry(e).or_insert_with(Rational::zero);
            *slot += v;
            if slot.is_zero() {
                self.f.remove(&e);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationData {
    /// S_1..S_l, each ascending
    pub s_sets: Vec<Vec<Exp>>,
    /// S' ascending
    pub s_prime: Vec<Exp>,
    pub forbidden: BTreeMap<Exp, i64>,
    pub transform: Transform,
}

pub fn s_prime(fp: &FormalPairs, omega: &KeySequence) -> Result<NormalizationData> {
    if formal_pairs_from_key_sequence(omega) != *fp {
        return Err(Error::InconsistentInput(format!("pairs {:?} do not match {omega}", fp.pairs)));
    }
    let (idx, _) = essential_subsequence(omega);
    let w = omega.omega();
    let l = fp.l();
    let x_slot = if l >= 1 { Some(Exp::new(fp.q(1), fp.p(1)) - Exp::one()) } else { None };
    let mut s_sets = Vec::with_capacity(l);
    let mut s_prime = Vec::new();
    let mut forbidden = BTreeMap::new();
    let mut excess = 0i64;
    for k in 1..=l {
        excess += (fp.p(k) - 1) * w[idx[k]];
        let pk = fp.p_prod(k);
        let lo = Exp::new(fp.q(k + 1), fp.p(k + 1));
        let first = lo.floor().to_integer() + 1;
        let set: Vec<Exp> = (first..fp.q(k)).map(|q| Exp::new(q, pk)).collect();
        for &beta in &set {
            if (beta.is_integer() && beta >= Exp::zero()) || Some(beta) == x_slot {
                s_prime.push(beta);
                let hat = Exp::from_integer(excess) + beta * Exp::from_integer(w[0]);
                forbidden.insert(beta, hat.to_integer());
            }
        }
        s_sets.push(set);
    }
    s_prime.sort();
    Ok(NormalizationData { s_sets, s_prime, forbidden, transform: Transform::identity() })
}

/// Clause N1(d) decided by avoidance of the forbidden values. `w_j` is only
/// compared with the values coming from its own level `k`, the number of
/// essential indices `1 <= i_t < j`: values from other levels can coincide
/// numerically, e.g. `w_3 = 6` in `(4, 6, 5, 6, 1)`.
pub fn normal_form_equiv(omega: &KeySequence, fp: &FormalPairs) -> Result<bool> {
    let nd = s_prime(fp, omega)?;
    let (idx, _) = essential_subsequence(omega);
    let w = omega.omega();
    let n = omega.n();
    Ok((2..=n).all(|j| {
        let k = idx.iter().filter(|&&i| 1 <= i && i < j).count();
        nd.s_sets[k - 1].iter().filter_map(|b| nd.forbidden.get(b)).all(|&h| h != w[j])
    }))
}

fn slot_series(s: &GenericSeries, beta: Exp, x_slot: bool, t: &Rational) -> GenericSeries {
    if x_slot {
        transform_raw(s, &Rational::one(), &Rational::one(), &UniPoly::new(), t)
    } else {
        let mut f = UniPoly::new();
        f.insert(beta.to_integer() as u32, t.clone());
        transform_raw(s, &Rational::one(), &Rational::one(), &f, &Rational::zero())
    }
}

/// Coefficient of `x^{target/p}` in the `j`-th substituted key form, after
/// checking that the earlier part of the key sequence is unchanged.
fn offending_coeff(s: &GenericSeries, j: usize, target: i64, prefix: &[i64]) -> Result<Rational> {
    let (omega, _, subs) = key_iteration(s, Some(j))?;
    if omega != prefix || subs.len() <= j {
        return Err(Error::NotNormalizable("slot correction changed earlier key values".into()));
    }
    Ok(subs[j].coeff(0, Exp::new(target, s.polydromy())))
}

fn strip_integer_head(s: &GenericSeries, t: &mut Transform) -> Result<GenericSeries> {
    let first_char = s.body().iter().rev().map(|(e, _)| *e).find(|e| !e.is_integer());
    let mut f = UniPoly::new();
    for (e, c) in s.body() {
        if e.is_integer() && first_char.map_or(true, |fc| *e > fc) {
            if e.is_negative() {
                return Err(Error::NotNormalizable(format!("term x^{e} cannot be removed by a polynomial shift")));
            }
            f.insert(e.to_integer() as u32, -c);
        }
    }
    for (e, c) in &f {
        t.add_y_shift(c, *e);
    }
    Ok(transform_raw(s, &Rational::one(), &Rational::one(), &f, &Rational::zero()))
}

/// Brings a series to normal form by polynomial shifts; returns the new series
/// and the composite change of coordinates.
pub fn normalize_series(s: &GenericSeries) -> Result<(GenericSeries, Transform)> {
    let mut t = Transform::identity();
    let mut cur = strip_integer_head(s, &mut t)?;
    let Some(top) = cur.top_exponent() else {
        let r = cur.r();
        let (p, q) = (*r.denom(), *r.numer());
        if (p, q) == (1, 0) || (0 < p && p <= q) {
            return Ok((cur, t));
        }
        if 0 < q && q < p {
            t.swap = true;
            return Ok((GenericSeries::new(BTreeMap::new(), Exp::new(p, q))?, t));
        }
        return Err(Error::NotNormalizable(format!("tail exponent {r} gives a non-primitive valuation")));
    };
    if top <= Exp::one() {
        return Err(Error::NotNormalizable(format!(
            "leading characteristic exponent {top} needs x and y exchanged"
        )));
    }
    let fp = formal_pairs(&cur);
    let kd = key_data_from_series(&cur)?;
    let nd = s_prime(&fp, &kd.omega)?;
    let x_slot = Exp::new(fp.q(1), fp.p(1)) - Exp::one();
    for &beta in nd.s_prime.iter().rev() {
        let target = nd.forbidden[&beta];
        let kd = key_data_from_series(&cur)?;
        let w = kd.omega.omega().to_vec();
        let level = nd.s_sets.iter().position(|set| set.contains(&beta)).unwrap() + 1;
        let (idx, _) = essential_subsequence(&kd.omega);
        let at_level = |j: usize| idx.iter().filter(|&&i| 1 <= i && i < j).count() == level;
        let Some(j) = (2..=kd.omega.n()).find(|&j| w[j] == target && at_level(j)) else {
            continue;
        };
        let is_x = beta == x_slot;
        let sample = |v: i64| offending_coeff(&slot_series(&cur, beta, is_x, &int(v)), j, target, &w[..j]);
        let (c0, c1, c2) = (sample(0)?, sample(1)?, sample(2)?);
        if c1 == c0 {
            return Err(Error::NotNormalizable(format!("slot {beta} does not affect the value {target}")));
        }
        if &c2 - &c0 != (&c1 - &c0) * int(2) {
            return Err(Error::NotNormalizable(format!("correction at slot {beta} is not affine")));
        }
        let lambda = -&c0 / (&c1 - &c0);
        cur = slot_series(&cur, beta, is_x, &lambda);
        if is_x {
            t.b += &lambda;
        } else {
            t.add_y_shift(&lambda, beta.to_integer() as u32);
        }
        let after = key_data_from_series(&cur)?;
        if (2..=after.omega.n()).any(|j| after.omega.omega()[j] == target) {
            return Err(Error::NotNormalizable(format!("value {target} persists after correcting slot {beta}")));
        }
    }
    let kd = key_data_from_series(&cur)?;
    if let (false, clause) = normal_form_check(&kd.omega) {
        return Err(Error::NotNormalizable(format!(
            "{} still fails {}",
            kd.omega,
            clause.unwrap_or("normal form")
        )));
    }
    Ok((cur, t))
}

fn random_unit(rng: &mut StdRng) -> Rational {
    let n = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d = rng.gen_range(1..=3);
    Rational::new(n.into(), i64::into(d))
}

/// Random change `x' = a^w x + b`, `y' = c y + f(x)` with `deg f` below the
/// leading exponent of the series.
pub fn random_triangular_change(s: &GenericSeries, rng: &mut StdRng) -> GenericSeries {
    let a = random_unit(rng);
    let c = random_unit(rng);
    let b = int(rng.gen_range(-2..=2));
    let lead = s.top_exponent().unwrap_or(s.r());
    let max_deg = (lead.ceil().to_integer() - 1).max(0) as u32;
    let mut f = UniPoly::new();
    for e in 0..=max_deg {
        let v = rng.gen_range(-3..=3);
        if v != 0 {
            f.insert(e, int(v));
        }
    }
    transform_raw(s, &a, &c, &f, &b)
}

/// Applies `trials` random triangular changes and checks every renormalized
/// series gives the same key sequence.
pub fn uniqueness_check(s: &GenericSeries, trials: usize, seed: u64) -> Result<bool> {
    let (base, _) = normalize_series(s)?;
    let want = key_data_from_series(&base)?.omega;
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let moved = random_triangular_change(&base, &mut rng);
        let (renorm, _) = normalize_series(&moved)?;
        if key_data_from_series(&renorm)?.omega != want {
            return Ok(false);
        }
    }
    Ok(true)
}
