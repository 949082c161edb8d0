//! Key sequences: gcd ladders, bounded representations, normal form.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// d_k = gcd(|w_0|..|w_k|) and the jumps alpha_k = d_{k-1}/d_k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdLadder {
    pub d: Vec<i64>,
    /// alpha_1..alpha_{n+1}
    pub alpha: Vec<i64>,
}

impl GcdLadder {
    /// alpha_k with the convention alpha_0 = 1.
    pub fn alpha(&self, k: usize) -> i64 {
        if k == 0 {
            1
        } else {
            self.alpha[k - 1]
        }
    }
}

pub fn gcd_ladder(omega: &[i64]) -> Result<GcdLadder> {
    let Some(&w0) = omega.first() else {
        return Err(Error::InvalidKeySequence("empty sequence".into()));
    };
    if w0 < 1 {
        return Err(Error::NonPositiveLead(w0));
    }
    let mut d = Vec::with_capacity(omega.len());
    let mut alpha = Vec::with_capacity(omega.len().saturating_sub(1));
    let mut g = w0;
    d.push(g);
    for &w in &omega[1..] {
        let next = g.gcd(&w);
        alpha.push(g / next);
        g = next;
        d.push(g);
    }
    Ok(GcdLadder { d, alpha })
}

/// A validated key sequence `(w_0, .., w_{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeySequence {
    omega: Vec<i64>,
}

impl KeySequence {
    pub fn new(omega: Vec<i64>) -> Result<Self> {
        if omega.len() < 2 {
            return Err(Error::InvalidKeySequence("length must be at least 2".into()));
        }
        let ladder = gcd_ladder(&omega)?;
        if *ladder.d.last().unwrap() != 1 {
            return Err(Error::InvalidKeySequence("gcd of all entries is not 1".into()));
        }
        for k in 1..omega.len() - 1 {
            if omega[k + 1] >= ladder.alpha(k) * omega[k] {
                return Err(Error::InvalidKeySequence(format!(
                    "w_{} = {} is not below alpha_{k}*w_{k} = {}",
                    k + 1,
                    omega[k + 1],
                    ladder.alpha(k) * omega[k]
                )));
            }
        }
        Ok(KeySequence { omega })
    }

    pub fn omega(&self) -> &[i64] {
        &self.omega
    }

    /// The `n` in `(w_0, .., w_{n+1})`.
    pub fn n(&self) -> usize {
        self.omega.len() - 2
    }

    pub fn last(&self) -> i64 {
        *self.omega.last().unwrap()
    }

    pub fn ladder(&self) -> GcdLadder {
        gcd_ladder(&self.omega).expect("validated")
    }

    pub fn is_primitive(&self) -> bool {
        self.last() > 0
    }

    pub fn is_essential(&self) -> bool {
        let l = self.ladder();
        (1..=self.n()).all(|k| l.alpha(k) >= 2)
    }

    pub fn is_algebraic(&self) -> bool {
        (1..=self.n()).all(|k| bounded_representation(self, k).unwrap().beta[0] >= 0)
    }

    /// Sum of (alpha_k - 1) w_k over 1 <= k <= n.
    pub fn weighted_excess(&self) -> i64 {
        let l = self.ladder();
        (1..=self.n()).map(|k| (l.alpha(k) - 1) * self.omega[k]).sum()
    }
}

impl Serialize for KeySequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.omega.serialize(s)
    }
}

impl std::fmt::Display for KeySequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.omega.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedRep {
    pub k: usize,
    /// beta_{k,0}..beta_{k,k-1}
    pub beta: Vec<i64>,
}

/// Writes `target` as `sum_{j<=top} beta_j w_j` with `0 <= beta_j < alpha_j` for
/// `j >= 1`. `target` must lie in `d_top * Z`.
pub(crate) fn represent(omega: &[i64], ladder: &GcdLadder, target: i64, top: usize) -> Vec<i64> {
    debug_assert_eq!(target % ladder.d[top], 0);
    let mut beta = vec![0i64; top + 1];
    let mut residual = target;
    for j in (1..=top).rev() {
        let a = ladder.alpha(j);
        let modulus = ladder.d[j - 1];
        let b = (0..a)
            .find(|&b| (residual - b * omega[j]).rem_euclid(modulus) == 0)
            .expect("cyclic quotient generated by w_j");
        beta[j] = b;
        residual -= b * omega[j];
    }
    beta[0] = residual / omega[0];
    beta
}

pub fn bounded_representation(ks: &KeySequence, k: usize) -> Result<BoundedRep> {
    let n = ks.n();
    if k < 1 || k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    let ladder = ks.ladder();
    let target = ladder.alpha(k) * ks.omega[k];
    Ok(BoundedRep { k, beta: represent(&ks.omega, &ladder, target, k - 1) })
}

/// Indices `0 = i_0 < i_1 < .. < i_l < i_{l+1} = n+1` and the subsequence they pick.
pub fn essential_subsequence(ks: &KeySequence) -> (Vec<usize>, KeySequence) {
    let l = ks.ladder();
    let n = ks.n();
    let mut idx = vec![0];
    idx.extend((1..=n).filter(|&k| l.alpha(k) >= 2));
    idx.push(n + 1);
    let sub = KeySequence::new(idx.iter().map(|&i| ks.omega[i]).collect())
        .expect("essential subsequence of a key sequence is a key sequence");
    (idx, sub)
}

/// Witness coefficients for `target` in the semigroup spanned by `generators`.
pub fn semigroup_member(generators: &[i64], target: i64) -> Option<Vec<i64>> {
    assert!(!generators.is_empty() && generators.iter().all(|&g| g >= 1));
    if target < 0 {
        return None;
    }
    let t = target as usize;
    // last[v] = index of a generator used to reach v
    let mut last: Vec<Option<usize>> = vec![None; t + 1];
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for v in 1..=t {
        for (i, &g) in generators.iter().enumerate() {
            let g = g as usize;
            if g <= v && reach[v - g] {
                reach[v] = true;
                last[v] = Some(i);
                break;
            }
        }
    }
    if !reach[t] {
        return None;
    }
    let mut witness = vec![0i64; generators.len()];
    let mut v = t;
    while v > 0 {
        let i = last[v].unwrap();
        witness[i] += 1;
        v -= generators[i] as usize;
    }
    Some(witness)
}

/// Normal-form check; returns the first failing clause label.
pub fn normal_form_check(ks: &KeySequence) -> (bool, Option<&'static str>) {
    let w = &ks.omega;
    let n = ks.n();
    if n == 0 {
        return match (w[0], w[1]) {
            (1, 1) | (1, 0) => (true, None),
            (a, b) if 0 < a && a < b => (true, None),
            _ => (false, Some("N0c")),
        };
    }
    if !(0 < w[0] && w[0] < w[1]) {
        return (false, Some("N1b"));
    }
    let l = ks.ladder();
    if l.alpha(1) < 2 {
        return (false, Some("N1c"));
    }
    let mut excess = 0;
    for j in 2..=n {
        excess += (l.alpha(j - 1) - 1) * w[j - 1];
        let diff = w[j] - excess;
        if diff >= 0 && diff % w[0] == 0 {
            return (false, Some("N1d"));
        }
        if w[j] == excess + w[1] - w[0] {
            return (false, Some("N1d"));
        }
    }
    (true, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceClass {
    pub is_key: bool,
    pub is_primitive: bool,
    pub is_algebraic: bool,
    pub is_essential: bool,
    pub is_normal_form: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<&'static str>,
}

pub fn validate(omega: &[i64]) -> SequenceClass {
    let mut v = Vec::new();
    let mut out = SequenceClass {
        is_key: false,
        is_primitive: omega.len() >= 2 && *omega.last().unwrap() > 0,
        is_algebraic: false,
        is_essential: false,
        is_normal_form: false,
        violations: Vec::new(),
    };
    if omega.len() < 2 || omega[0] < 1 {
        v.push("P1");
        if !out.is_primitive {
            v.push("PRIM");
        }
        out.violations = v;
        return out;
    }
    let ladder = gcd_ladder(omega).unwrap();
    let n = omega.len() - 2;
    if *ladder.d.last().unwrap() != 1 {
        v.push("P2");
    }
    if (1..=n).any(|k| omega[k + 1] >= ladder.alpha(k) * omega[k]) {
        v.push("P3");
    }
    if !out.is_primitive {
        v.push("PRIM");
    }
    out.is_essential = (1..=n).all(|k| ladder.alpha(k) >= 2);
    if !out.is_essential {
        v.push("ESS");
    }
    // The representation only needs the gcd ladder, so algebraicity is decided
    // even when P3 fails; without P2 the top entries are still representable.
    out.is_algebraic = (1..=n).all(|k| {
        let target = ladder.alpha(k) * omega[k];
        represent(omega, &ladder, target, k - 1)[0] >= 0
    });
    if !out.is_algebraic {
        v.push("ALG");
    }
    out.is_key = !v.contains(&"P2") && !v.contains(&"P3");
    if out.is_key {
        let ks = KeySequence::new(omega.to_vec()).unwrap();
        let (ok, clause) = normal_form_check(&ks);
        out.is_normal_form = ok;
        if let Some(c) = clause {
            v.push(c);
        }
    }
    out.violations = v;
    out
}
