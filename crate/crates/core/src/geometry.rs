//! Canonical divisor, singularities at infinity, weighted projective embedding,
//! the curve at infinity, and the Gorenstein genus-zero list.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enumerate::{enumerate_with, Bounds};
use crate::error::{Error, Result};
use crate::keyseq::{bounded_representation, normal_form_check, KeySequence};
use crate::laurent::{int, Rational};

fn require_primitive(ks: &KeySequence) -> Result<()> {
    if ks.is_primitive() {
        Ok(())
    } else {
        Err(Error::NonPrimitive)
    }
}

/// `k` with `K = k [C_inf]`.
pub fn canonical_coefficient(ks: &KeySequence) -> Result<i64> {
    require_primitive(ks)?;
    let w = ks.omega();
    Ok(-(w[0] + ks.last() + 1 - ks.weighted_excess()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub k_canonical: i64,
    pub is_rational: bool,
    pub is_elliptic: bool,
    pub p_g: u64,
    /// `(a, b)` for the cyclic quotient `1/a (1, b)` at `P_0`.
    pub quotient_type: (i64, i64),
    pub gorenstein_index: i64,
    pub is_gorenstein: bool,
    pub rigid_embedding: bool,
    /// Fields whose meaning is only established for algebraic surfaces.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub requires_algebraic: Vec<&'static str>,
}

/// Number of `beta >= 0` with `beta_j < alpha_j` for `1 <= j <= n` and
/// `sum w_j beta_j <= k`.
pub fn genus_count(ks: &KeySequence, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let w = ks.omega();
    let n = ks.n();
    let ladder = ks.ladder();
    let size = k as usize + 1;
    // ways[v] = number of partial vectors of weight exactly v
    let mut ways = vec![0u64; size];
    ways[0] = 1;
    for (j, &wj) in w.iter().enumerate() {
        let cap = if (1..=n).contains(&j) { Some(ladder.alpha(j) - 1) } else { None };
        let wj = wj as usize;
        let mut next = vec![0u64; size];
        for (v, &c) in ways.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut t = 0i64;
            let mut u = v;
            while u < size && cap.map_or(true, |m| t <= m) {
                next[u] += c;
                u += wj;
                t += 1;
            }
        }
        ways = next;
    }
    ways.iter().sum()
}

/// Least `m >= 1` with `m k` divisible by both `alpha_{n+1}` and `w_{n+1}`.
pub fn gorenstein_index(ks: &KeySequence, k: i64) -> i64 {
    let a = ks.ladder().alpha(ks.n() + 1);
    let w = ks.last();
    let part = |m: i64| m / m.gcd(&k);
    part(a).lcm(&part(w))
}

pub fn singularity_report(ks: &KeySequence) -> Result<SingularityReport> {
    let k = canonical_coefficient(ks)?;
    let w = ks.omega();
    let n = ks.n();
    let w_min = *w.iter().min().unwrap();
    let index = gorenstein_index(ks, k);
    let requires_algebraic =
        if ks.is_algebraic() { Vec::new() } else { vec!["is_elliptic", "p_g", "gorenstein_index", "is_gorenstein"] };
    Ok(SingularityReport {
        k_canonical: k,
        is_rational: k < 0,
        is_elliptic: 0 <= k && k < w_min,
        p_g: genus_count(ks, k),
        quotient_type: (ks.ladder().alpha(n + 1), ks.last()),
        gorenstein_index: index,
        is_gorenstein: index == 1,
        rigid_embedding: !(n == 0 && w[0] == 1),
        requires_algebraic,
    })
}

/// Polynomial with rational coefficients in named variables; exponents are
/// stored as one vector per monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoly {
    pub vars: Vec<String>,
    pub weights: Vec<i64>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl WeightedPoly {
    pub fn zero(vars: Vec<String>, weights: Vec<i64>) -> Self {
        assert_eq!(vars.len(), weights.len());
        WeightedPoly { vars, weights, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, c: Rational, exps: Vec<u32>) {
        assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monomial_degree(&self, exps: &[u32]) -> i64 {
        exps.iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    /// The common weighted degree of all monomials, if there is one.
    pub fn weighted_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| self.monomial_degree(e));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn mul(&self, other: &WeightedPoly) -> WeightedPoly {
        let mut out = WeightedPoly::zero(self.vars.clone(), self.weights.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(c1 * c2, e1.iter().zip(e2).map(|(a, b)| a + b).collect());
            }
        }
        out
    }

    fn pow(&self, e: u32) -> WeightedPoly {
        let mut acc = WeightedPoly::zero(self.vars.clone(), self.weights.clone());
        acc.add_term(Rational::one(), vec![0; self.vars.len()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces variable `v` by `by` (same variable set).
    pub fn substitute(&self, v: usize, by: &WeightedPoly) -> WeightedPoly {
        let mut out = WeightedPoly::zero(self.vars.clone(), self.weights.clone());
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[v] = 0;
            let mut mono = WeightedPoly::zero(self.vars.clone(), self.weights.clone());
            mono.add_term(c.clone(), rest);
            for (ex, cx) in mono.mul(&by.pow(e[v])).terms {
                out.add_term(cx, ex);
            }
        }
        out
    }

    /// Keeps only the listed variables; every other exponent must be zero.
    pub fn restrict(&self, keep: &[usize]) -> WeightedPoly {
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let weights = keep.iter().map(|&i| self.weights[i]).collect();
        let mut out = WeightedPoly::zero(vars, weights);
        for (e, c) in &self.terms {
            assert!(e.iter().enumerate().all(|(i, &x)| x == 0 || keep.contains(&i)), "eliminated variable survives");
            out.add_term(c.clone(), keep.iter().map(|&i| e[i]).collect());
        }
        out
    }

    pub fn rename(mut self, vars: &[&str]) -> WeightedPoly {
        assert_eq!(vars.len(), self.vars.len());
        self.vars = vars.iter().map(|s| s.to_string()).collect();
        self
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, v)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingEquations {
    /// `(1, w_0, .., w_{n+1})` for the coordinates `w, y_0, .., y_{n+1}`.
    pub weights: Vec<i64>,
    pub equations: Vec<WeightedPoly>,
}

pub fn embedding_equations(ks: &KeySequence, theta: &[Rational]) -> Result<EmbeddingEquations> {
    require_primitive(ks)?;
    let n = ks.n();
    if theta.len() != n {
        return Err(Error::ThetaLengthMismatch { expected: n, got: theta.len() });
    }
    if theta.iter().any(|t| t.is_zero()) {
        return Err(Error::ZeroTheta);
    }
    if !ks.is_algebraic() {
        return Err(Error::NotAlgebraic);
    }
    let w = ks.omega();
    let ladder = ks.ladder();
    let mut vars = vec!["w".to_string()];
    vars.extend((0..=n + 1).map(|i| format!("y{i}")));
    let mut weights = vec![1];
    weights.extend_from_slice(w);
    let nv = vars.len();
    let mut equations = Vec::with_capacity(n);
    for k in 1..=n {
        let rep = bounded_representation(ks, k)?;
        let alpha = ladder.alpha(k);
        let mut g = WeightedPoly::zero(vars.clone(), weights.clone());
        let mut e = vec![0u32; nv];
        e[0] = (alpha * w[k] - w[k + 1]) as u32;
        e[k + 2] = 1;
        g.add_term(Rational::one(), e);
        let mut e = vec![0u32; nv];
        e[k + 1] = alpha as u32;
        g.add_term(-Rational::one(), e);
        let e: Vec<u32> = std::iter::once(0).chain(rep.beta.iter().map(|&b| b as u32)).chain(std::iter::repeat(0)).take(nv).collect();
        g.add_term(theta[k - 1].clone(), e);
        equations.push(g);
    }
    Ok(EmbeddingEquations { weights, equations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveAtInfinityReport {
    pub semigroup_s_generators: Vec<(i64, i64)>,
    pub tilde_s_generators: Vec<i64>,
    /// Every element of `S~` up to this value was examined.
    pub scan_bound: i64,
    pub is_smooth_at_pinf: bool,
}

/// Largest integer outside the semigroup plus one; generators must have gcd 1.
fn conductor(gens: &[i64]) -> i64 {
    let min = *gens.iter().min().unwrap();
    if min == 1 {
        return 0;
    }
    let mut reach = vec![true];
    let mut streak = 0;
    let mut v = 0i64;
    while streak < min {
        v += 1;
        let ok = gens.iter().any(|&g| g <= v && reach[(v - g) as usize]);
        reach.push(ok);
        streak = if ok { streak + 1 } else { 0 };
    }
    v - min + 1
}

pub fn curve_at_infinity(ks: &KeySequence) -> Result<CurveAtInfinityReport> {
    require_primitive(ks)?;
    if !ks.is_algebraic() {
        return Err(Error::NotAlgebraic);
    }
    let w = ks.omega();
    let n = ks.n();
    let a = ks.ladder().alpha(n + 1);
    let last = ks.last();
    let mut s_gens: Vec<(i64, i64)> = w[..=n].iter().map(|&x| (x, 0)).collect();
    s_gens.push((0, last));
    // S~ = a*last * U with U = { m : m*last in <w_0/a, .., w_n/a> }
    let reduced: Vec<i64> = w[..=n].iter().map(|&x| x / a).collect();
    let c = conductor(&reduced);
    let m_max = 2 * ((c + last - 1) / last) + 2;
    let top = m_max * last;
    let mut reach = vec![false; top as usize + 1];
    reach[0] = true;
    for v in 1..=top {
        reach[v as usize] = reduced.iter().any(|&g| g <= v && reach[(v - g) as usize]);
    }
    let in_u: Vec<bool> = (0..=m_max).map(|m| reach[(m * last) as usize]).collect();
    let mut gens: Vec<i64> = Vec::new();
    for m in 1..=m_max {
        if !in_u[m as usize] {
            continue;
        }
        let decomposable = (1..m).any(|i| in_u[i as usize] && in_u[(m - i) as usize]);
        if !decomposable {
            gens.push(m);
        }
    }
    let unit = a * last;
    Ok(CurveAtInfinityReport {
        semigroup_s_generators: s_gens,
        is_smooth_at_pinf: gens == [1],
        tilde_s_generators: gens.into_iter().map(|m| m * unit).collect(),
        scan_bound: m_max * unit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrentonEntry {
    pub omega: KeySequence,
    pub report: SingularityReport,
    /// `P2`, `P(1,1,2)`, `P(1,2,3)` or `F_r`.
    pub family: String,
    /// Weights of the ambient space of `equation`.
    pub ambient: Vec<i64>,
    /// The defining equation in `P(1,2,3,r)` with coordinates `w, x, y, z`,
    /// for members of the `F_r` families (all `theta_k = 1`).
    pub equation: Option<WeightedPoly>,
}

fn family_of(ks: &KeySequence) -> Option<String> {
    let w = ks.omega();
    let ladder = ks.ladder();
    match w {
        [1, 1] => Some("P2".into()),
        [1, 2] => Some("P(1,1,2)".into()),
        [2, 3] => Some("P(1,2,3)".into()),
        [2, 3, ..] if (2..=ks.n() + 1).all(|k| ladder.alpha(k) == 1) => Some(format!("F_{}", ks.last())),
        _ => None,
    }
}

/// Eliminates `y_2..y_n` from the embedding of `(2, 3, .., r)`, leaving a
/// single equation in `w, x = y_0, y = y_1, z = y_{n+1}`.
pub fn reduced_equation(ks: &KeySequence, theta: &[Rational]) -> Result<WeightedPoly> {
    let eqs = embedding_equations(ks, theta)?;
    let n = ks.n();
    let mut f = eqs.equations[0].clone();
    for k in 2..=n {
        // G_k = w^e y_{k+1} - y_k + theta_k M(y_0, y_1), so y_k = G_k + y_k
        let g = &eqs.equations[k - 1];
        let mut e = vec![0u32; g.vars.len()];
        e[k + 1] = 1;
        let mut yk = g.clone();
        yk.add_term(Rational::one(), e.clone());
        if !yk.coeff(&e).is_zero() {
            return Err(Error::InconsistentInput(format!("y{k} is not linear in G_{k}")));
        }
        f = f.substitute(k + 1, &yk);
    }
    Ok(f.restrict(&[0, 1, 2, n + 2]).rename(&["w", "x", "y", "z"]))
}

/// Degree 6 in `P(1,2,3,r)`, containing `w^{6-r} z`, `y^2`, `x^3`, and
/// otherwise only `z`-free monomials with `w`-degree below `6 - r`.
pub fn has_f_r_shape(f: &WeightedPoly, r: i64) -> bool {
    if f.weights != [1, 2, 3, r] || f.weighted_degree() != Some(6) || !(1..=5).contains(&r) {
        return false;
    }
    let lead = [(6 - r) as u32, 0, 0, 1];
    let needed = [lead, [0, 0, 2, 0], [0, 3, 0, 0]];
    if needed.iter().any(|e| f.coeff(e).is_zero()) {
        return false;
    }
    f.terms().all(|(e, _)| needed.iter().any(|n| n[..] == e[..]) || (e[3] == 0 && (e[0] as i64) < 6 - r))
}

/// Primitive normal algebraic key sequences with entries `<= bound` and at
/// most four entries whose compactification is Gorenstein with rational
/// singularities, grouped by family.
pub fn brenton_enumerate(bound: i64) -> Result<Vec<BrentonEntry>> {
    let bounds = Bounds::new(bound, 4)?;
    let found = enumerate_with(bounds, 1, |ks| {
        ks.is_algebraic()
            && normal_form_check(ks).0
            && singularity_report(ks).map(|r| r.is_gorenstein && r.p_g == 0).unwrap_or(false)
    });
    let mut out = Vec::with_capacity(found.len());
    for ks in found {
        let report = singularity_report(&ks)?;
        let family = family_of(&ks).unwrap_or_else(|| "unclassified".into());
        let (ambient, equation) = if family.starts_with("F_") {
            let theta = vec![int(1); ks.n()];
            (vec![1, 2, 3, ks.last()], Some(reduced_equation(&ks, &theta)?))
        } else {
            let mut amb = vec![1];
            amb.extend_from_slice(ks.omega());
            (amb, None)
        };
        out.push(BrentonEntry { omega: ks, report, family, ambient, equation });
    }
    Ok(out)
}
