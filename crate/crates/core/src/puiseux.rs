//! Degree-wise Puiseux polynomials with a generic tail `xi * x^r`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::keyforms::{build_key_forms, KeyFormSet};
use crate::keyseq::{essential_subsequence, gcd_ladder, represent, KeySequence};
use crate::laurent::{int, rpow, LaurentPoly, Rational};

/// Rational exponent of `x`.
pub type Exp = Ratio<i64>;

pub fn exp(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

fn lcm_den(exps: impl Iterator<Item = Exp>) -> i64 {
    exps.fold(1, |acc, e| acc.lcm(e.denom()))
}

/// `phi(x) + xi * x^r` with `phi` a finite sum of rational powers of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSeries {
    body: BTreeMap<Exp, Rational>,
    r: Exp,
}

impl GenericSeries {
    /// Zero coefficients are dropped; every body exponent must exceed `r`.
    pub fn new(body: BTreeMap<Exp, Rational>, r: Exp) -> Result<Self> {
        let body: BTreeMap<Exp, Rational> = body.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if let Some((lo, _)) = body.iter().next() {
            if *lo <= r {
                return Err(Error::InvalidSeries(format!("tail exponent {r} is not below body exponent {lo}")));
            }
        }
        Ok(GenericSeries { body, r })
    }

    pub fn from_terms(terms: &[(Rational, Exp)], r: Exp) -> Result<Self> {
        let mut body = BTreeMap::new();
        for (c, e) in terms {
            *body.entry(*e).or_insert_with(Rational::zero) += c;
        }
        Self::new(body, r)
    }

    pub fn body(&self) -> &BTreeMap<Exp, Rational> {
        &self.body
    }

    pub fn r(&self) -> Exp {
        self.r
    }

    /// Common denominator of all exponents, tail included; equals `delta(x)`.
    pub fn polydromy(&self) -> i64 {
        lcm_den(self.body.keys().copied().chain(std::iter::once(self.r)))
    }

    /// Common denominator of the body exponents alone.
    pub fn body_polydromy(&self) -> i64 {
        lcm_den(self.body.keys().copied())
    }

    pub fn top_exponent(&self) -> Option<Exp> {
        self.body.keys().next_back().copied()
    }

    fn as_xi_poly(&self) -> XiPoly {
        let mut y = XiPoly::default();
        for (e, c) in &self.body {
            y.add_term(c.clone(), 0, *e);
        }
        y.add_term(Rational::one(), 1, self.r);
        y
    }

    /// Adds `c * x^e`, dropping it if `e <= r`.
    pub(crate) fn add_body_term(&mut self, c: Rational, e: Exp) {
        if e <= self.r || c.is_zero() {
            return;
        }
        let v = self.body.entry(e).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.body.remove(&e);
        }
    }
}

/// Polynomial in `xi` whose coefficients are finite sums of rational powers of `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XiPoly {
    terms: BTreeMap<(u32, Exp), Rational>,
}

impl XiPoly {
    pub fn x_pow(e: Exp) -> Self {
        let mut p = Self::default();
        p.add_term(Rational::one(), 0, e);
        p
    }

    pub fn one() -> Self {
        Self::x_pow(Exp::zero())
    }

    pub fn add_term(&mut self, c: Rational, xi: u32, e: Exp) {
        if c.is_zero() {
            return;
        }
        let key = (xi, e);
        let v = self.terms.entry(key).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(xi_power, x_exponent, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, Exp, &Rational)> {
        self.terms.iter().map(|(&(k, e), c)| (k, e, c))
    }

    pub fn coeff(&self, xi: u32, e: Exp) -> Rational {
        self.terms.get(&(xi, e)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest x-exponent and its coefficient as a polynomial in `xi`.
    pub fn leading(&self) -> Option<(Exp, BTreeMap<u32, Rational>)> {
        let top = self.terms.keys().map(|k| k.1).max()?;
        let coeff = self
            .terms
            .iter()
            .filter(|(k, _)| k.1 == top)
            .map(|(k, c)| (k.0, c.clone()))
            .collect();
        Some((top, coeff))
    }

    pub fn scale(&self, c: &Rational) -> XiPoly {
        let mut out = XiPoly::default();
        for (&(k, e), v) in &self.terms {
            out.add_term(v * c, k, e);
        }
        out
    }

    pub fn shift_x(&self, by: Exp) -> XiPoly {
        XiPoly { terms: self.terms.iter().map(|(&(k, e), v)| ((k, e + by), v.clone())).collect() }
    }

    pub fn pow_u(&self, mut e: u32) -> XiPoly {
        let mut base = self.clone();
        let mut acc = XiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &XiPoly {
    type Output = XiPoly;
    fn add(self, rhs: &XiPoly) -> XiPoly {
        let mut out = self.clone();
        for (&(k, e), c) in &rhs.terms {
            out.add_term(c.clone(), k, e);
        }
        out
    }
}

impl Sub for &XiPoly {
    type Output = XiPoly;
    fn sub(self, rhs: &XiPoly) -> XiPoly {
        let mut out = self.clone();
        for (&(k, e), c) in &rhs.terms {
            out.add_term(-c, k, e);
        }
        out
    }
}

impl Mul for &XiPoly {
    type Output = XiPoly;
    fn mul(self, rhs: &XiPoly) -> XiPoly {
        let mut out = XiPoly::default();
        for (&(k1, e1), c1) in &self.terms {
            for (&(k2, e2), c2) in &rhs.terms {
                out.add_term(c1 * c2, k1 + k2, e1 + e2);
            }
        }
        out
    }
}

/// `f(x, phi(x) + xi x^r)`.
pub fn substitute(f: &LaurentPoly, s: &GenericSeries) -> Result<XiPoly> {
    let deg_y = f.deg_y().ok_or(Error::ZeroPolynomial)?;
    let y = s.as_xi_poly();
    let mut powers = vec![XiPoly::one()];
    for i in 1..=deg_y as usize {
        let next = &powers[i - 1] * &y;
        powers.push(next);
    }
    let mut out = XiPoly::default();
    for (ex, ey, c) in f.terms() {
        for (k, e, v) in powers[ey as usize].terms() {
            out.add_term(v * c, k, e + Exp::from_integer(ex));
        }
    }
    Ok(out)
}

fn scaled_degree(e: Exp, p: i64) -> Result<i64> {
    let d = e * Exp::from_integer(p);
    if !d.is_integer() {
        return Err(Error::NonIntegralDegree(d.to_string()));
    }
    Ok(d.to_integer())
}

pub fn semidegree_via_series(f: &LaurentPoly, s: &GenericSeries) -> Result<i64> {
    let sub = substitute(f, s)?;
    let (top, _) = sub.leading().ok_or(Error::ZeroPolynomial)?;
    scaled_degree(top, s.polydromy())
}

/// Characteristic pairs `(q_k, p_k)`; the exponent of the k-th pair is
/// `q_k / (p_1 .. p_k)` and the last pair encodes the tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalPairs {
    pub pairs: Vec<(i64, i64)>,
}

impl FormalPairs {
    /// Number of characteristic pairs before the tail pair.
    pub fn l(&self) -> usize {
        self.pairs.len() - 1
    }

    pub fn p(&self, k: usize) -> i64 {
        self.pairs[k - 1].1
    }

    pub fn q(&self, k: usize) -> i64 {
        self.pairs[k - 1].0
    }

    /// p_1 .. p_k
    pub fn p_prod(&self, k: usize) -> i64 {
        (1..=k).map(|j| self.p(j)).product()
    }
}

pub fn formal_pairs(s: &GenericSeries) -> FormalPairs {
    let mut pairs = Vec::new();
    let mut den = 1i64;
    for (&e, _) in s.body.iter().rev() {
        if den % e.denom() != 0 {
            let next = den.lcm(e.denom());
            let q = e * Exp::from_integer(next);
            pairs.push((q.to_integer(), next / den));
            den = next;
        }
    }
    let tail = s.r * Exp::from_integer(den);
    pairs.push((*tail.numer(), *tail.denom()));
    FormalPairs { pairs }
}

/// Pairs read off the essential subsequence of a key sequence.
pub fn formal_pairs_from_key_sequence(ks: &KeySequence) -> FormalPairs {
    let ladder = ks.ladder();
    let (idx, _) = essential_subsequence(ks);
    let w = ks.omega();
    let ps: Vec<i64> = idx[1..].iter().map(|&i| ladder.alpha(i)).collect();
    let mut pairs = Vec::with_capacity(ps.len());
    let mut excess = 0i64;
    for (k, &i) in idx[1..].iter().enumerate() {
        let tail: i64 = ps[k + 1..].iter().product();
        pairs.push(((w[i] - excess) / tail, ps[k]));
        excess += (ps[k] - 1) * w[i];
    }
    FormalPairs { pairs }
}

/// `delta(g_{n+1})` from the pairs alone.
pub fn delta_last_key(fp: &FormalPairs) -> Result<i64> {
    let l = fp.l();
    let head = Rational::from_integer(fp.p_prod(l).into());
    let mut sum = Rational::zero();
    for k in 1..=l {
        let tail: i64 = (k + 1..=l + 1).map(|j| fp.p(j)).product();
        sum += int((fp.p(k) - 1) * tail) * Rational::new(fp.q(k).into(), fp.p_prod(k).into());
    }
    let v = int(fp.q(l + 1)) + head * sum;
    if !v.is_integer() {
        return Err(Error::NonIntegralDegree(v.to_string()));
    }
    Ok(v.to_integer().try_into().expect("small"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyData {
    pub omega: KeySequence,
    pub theta: Vec<Rational>,
    pub kf: KeyFormSet,
}

const MAX_KEY_FORMS: usize = 64;

/// Runs the key-form recursion on the substituted series. Stops after `stop`
/// forms if given, returning the substituted forms computed so far.
pub(crate) fn key_iteration(s: &GenericSeries, stop: Option<usize>) -> Result<(Vec<i64>, Vec<Rational>, Vec<XiPoly>)> {
    let p = s.polydromy();
    let mut omega = vec![p];
    let mut lead: Vec<Rational> = vec![Rational::one()];
    let mut theta = Vec::new();
    let mut subs = vec![XiPoly::x_pow(Exp::one()), s.as_xi_poly()];
    let mut k = 1;
    loop {
        if stop == Some(k) {
            return Ok((omega, theta, subs));
        }
        let (e, lc) = subs[k]
            .leading()
            .ok_or_else(|| Error::InvalidSeries("substituted key form vanished".into()))?;
        omega.push(scaled_degree(e, p)?);
        if lc.keys().any(|&xi| xi > 0) {
            break;
        }
        if k >= MAX_KEY_FORMS {
            return Err(Error::InvalidSeries("key form recursion did not terminate".into()));
        }
        let c_k = lc[&0].clone();
        let ladder = gcd_ladder(&omega)?;
        let alpha = ladder.alpha(k);
        let beta = represent(&omega, &ladder, alpha * omega[k], k - 1);
        let mut denom = Rational::one();
        let mut prod = XiPoly::x_pow(Exp::from_integer(beta[0]));
        for j in 1..k {
            if beta[j] > 0 {
                denom *= rpow(&lead[j], beta[j]);
                prod = &prod * &subs[j].pow_u(beta[j] as u32);
            }
        }
        let t = rpow(&c_k, alpha) / denom;
        let next = &subs[k].pow_u(alpha as u32) - &prod.scale(&t);
        lead.push(c_k);
        theta.push(t);
        subs.push(next);
        k += 1;
    }
    Ok((omega, theta, subs))
}

pub fn key_data_from_series(s: &GenericSeries) -> Result<KeyData> {
    let (omega, theta, _) = key_iteration(s, None)?;
    let omega = KeySequence::new(omega).map_err(|e| Error::InvalidSeries(e.to_string()))?;
    let kf = build_key_forms(&omega, &theta)?;
    Ok(KeyData { omega, theta, kf })
}

/// `binom(beta, m)` for rational `beta`.
fn binom(beta: Exp, m: u32) -> Rational {
    let b = Rational::new((*beta.numer()).into(), (*beta.denom()).into());
    let mut acc = Rational::one();
    for i in 0..m {
        acc = acc * (&b - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// Univariate polynomial `sum f_i x^i`.
pub type UniPoly = BTreeMap<u32, Rational>;

/// Applies `(x, y) -> (a^w x + b, c y + f(x))` with `w` the body polydromy,
/// truncating every term of degree at most `r`. No admissibility checks.
pub(crate) fn transform_raw(s: &GenericSeries, a: &Rational, c: &Rational, f: &UniPoly, b: &Rational) -> GenericSeries {
    let w = s.body_polydromy();
    let mut out = GenericSeries { body: BTreeMap::new(), r: s.r };
    let push = |coef: Rational, beta: Exp, out: &mut GenericSeries| {
        if b.is_zero() {
            out.add_body_term(coef, beta);
            return;
        }
        let mut m = 0u32;
        loop {
            let e = beta - Exp::from_integer(m as i64);
            if e <= out.r {
                break;
            }
            let t = &coef * binom(beta, m) * rpow(&-b, m as i64);
            out.add_body_term(t, e);
            m += 1;
            if beta.is_integer() && beta.to_integer() >= 0 && m as i64 > beta.to_integer() {
                break;
            }
        }
    };
    for (&beta, coef) in &s.body {
        let scaled = scaled_degree(beta, w).expect("body exponents share the polydromy");
        push(c * coef * rpow(a, -scaled), beta, &mut out);
    }
    for (&i, coef) in f {
        push(coef * rpow(a, -(w * i as i64)), Exp::from_integer(i as i64), &mut out);
    }
    out
}

/// Coordinate change preserving a normal key sequence: scaling by `(a, c)`,
/// a y-shift `f` of degree at most `r` and an x-shift `b` where allowed.
pub fn coordinate_change(s: &GenericSeries, a: &Rational, c: &Rational, f: &UniPoly, b: &Rational) -> Result<GenericSeries> {
    if a.is_zero() || c.is_zero() {
        return Err(Error::InadmissibleChange("scalings must be non-zero".into()));
    }
    if let Some((&d, _)) = f.iter().filter(|(_, v)| !v.is_zero()).next_back() {
        if Exp::from_integer(d as i64) > s.r {
            return Err(Error::InadmissibleChange(format!("deg f = {d} exceeds r = {}", s.r)));
        }
    }
    if !b.is_zero() {
        if let Some(top) = s.top_exponent() {
            if top - Exp::one() > s.r {
                return Err(Error::InadmissibleChange("x-shift must vanish".into()));
            }
        }
    }
    Ok(transform_raw(s, a, c, f, b))
}

/// `a_beta -> c a^{-w0 beta} a_beta` with `w0` the full polydromy, so that
/// `a^{-w0 beta}` is an integral power.
pub fn scale_series(s: &GenericSeries, a: &Rational, c: &Rational) -> Result<GenericSeries> {
    if a.is_zero() || c.is_zero() {
        return Err(Error::InadmissibleChange("scalings must be non-zero".into()));
    }
    let w0 = s.polydromy();
    let mut out = GenericSeries { body: BTreeMap::new(), r: s.r };
    for (&beta, coef) in &s.body {
        out.add_body_term(c * coef * rpow(a, -scaled_degree(beta, w0)?), beta);
    }
    Ok(out)
}
