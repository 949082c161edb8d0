//! Automorphism groups, moduli of compactifications and of curves with one
//! place at infinity, and additive-group actions.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::canonical_coefficient;
use crate::keyseq::{essential_subsequence, normal_form_check, represent, semigroup_member, KeySequence};

fn require_normal_primitive(ks: &KeySequence) -> Result<()> {
    if !ks.is_primitive() {
        return Err(Error::NonPrimitive);
    }
    match normal_form_check(ks) {
        (true, _) => Ok(()),
        (false, clause) => Err(Error::NotNormalForm(format!("{ks} fails {}", clause.unwrap_or("?")))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AutCase {
    #[serde(rename = "PGL3")]
    Pgl3,
    #[serde(rename = "weighted_w0_eq_1")]
    WeightedW0Eq1,
    #[serde(rename = "weighted_w0_gt_1")]
    WeightedW0Gt1,
    #[serde(rename = "general")]
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutDescriptor {
    pub case: AutCase,
    /// Rank of a maximal torus.
    pub torus_rank: i64,
    /// Number of connected components.
    pub finite_part_order: i64,
    /// Dimension of the translation part (`f`, plus `b` when free).
    pub unipotent_dim: i64,
    /// Dimension of the whole group.
    pub dimension: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_hat: Option<i64>,
    pub b_free: bool,
    pub f_degree_bound: i64,
}

impl AutDescriptor {
    pub fn is_finite(&self) -> bool {
        self.dimension == 0
    }
}

/// `w_{n+1} - sum (alpha_k - 1) w_k`.
pub fn q_omega(ks: &KeySequence) -> i64 {
    ks.last() - ks.weighted_excess()
}

pub fn aut_group(ks: &KeySequence) -> Result<AutDescriptor> {
    require_normal_primitive(ks)?;
    let w = ks.omega();
    let n = ks.n();
    let k = canonical_coefficient(ks)?;
    let f_bound = Integer::div_floor(&q_omega(ks), &w[0]);
    if n == 0 {
        let (p, q) = (w[0], w[1]);
        // weighted automorphisms of P(1, p, q), modulo the weighted scaling
        return Ok(if p == 1 && q == 1 {
            AutDescriptor {
                case: AutCase::Pgl3,
                torus_rank: 2,
                finite_part_order: 1,
                unipotent_dim: 0,
                dimension: 8,
                omega_hat: None,
                b_free: true,
                f_degree_bound: f_bound,
            }
        } else if p == 1 {
            AutDescriptor {
                case: AutCase::WeightedW0Eq1,
                torus_rank: 2,
                finite_part_order: 1,
                unipotent_dim: q + 1,
                dimension: q + 5,
                omega_hat: None,
                b_free: true,
                f_degree_bound: f_bound,
            }
        } else {
            let f_dim = q / p + 1;
            AutDescriptor {
                case: AutCase::WeightedW0Gt1,
                torus_rank: 2,
                finite_part_order: 1,
                unipotent_dim: f_dim + 1,
                dimension: f_dim + 3,
                omega_hat: None,
                b_free: true,
                f_degree_bound: f_bound,
            }
        });
    }
    let a = ks.ladder().alpha(n + 1);
    let alpha = |j| ks.ladder().alpha(j);
    let t: Vec<i64> = w.iter().map(|x| x / a).collect();
    let omega_hat = (n >= 2).then(|| {
        (2..=n)
            .map(|kk| alpha(1) * t[1] + (2..kk).map(|j| (alpha(j) - 1) * t[j]).sum::<i64>() - t[kk])
            .fold(0i64, |g, h| g.gcd(&h))
    });
    let b_free = w[1] + k < 0;
    let torus_rank = if n == 1 { 1 } else { 0 };
    let unipotent_dim = b_free as i64 + (f_bound + 1).max(0);
    Ok(AutDescriptor {
        case: AutCase::General,
        torus_rank,
        finite_part_order: omega_hat.unwrap_or(1),
        unipotent_dim,
        dimension: torus_rank + unipotent_dim,
        omega_hat,
        b_free,
        f_degree_bound: f_bound,
    })
}

pub fn aut_is_finite(ks: &KeySequence) -> Result<bool> {
    Ok(aut_group(ks)?.is_finite())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuliMode {
    FixedSequence,
    EssentialFamily,
    CurveFamily,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub mode: ModuliMode,
    pub n: usize,
    pub m: usize,
    /// Dimension of the quotient of the theta-torus alone.
    pub torus_dim: i64,
    /// Dimension of the whole moduli space (theta plus extra coordinates).
    pub dimension: i64,
    /// Rank over Q of the 2 x (n + m) exponent matrix.
    pub rank: usize,
    /// Per k: the admissible values (group version, or semigroup version for curves).
    pub omega_check_sets: Vec<Vec<i64>>,
    /// Per k: the semigroup version.
    pub omega_check_alg_sets: Vec<Vec<i64>>,
    /// Per k: excluded values lying in the scanned interval.
    pub excluded_sets: Vec<Vec<i64>>,
    /// The extra coordinates in order, with the stratum `k` each comes from.
    pub extra_values: Vec<(usize, i64)>,
    /// `(mu, -beta_0)` for theta_1..theta_n, then the extra coordinates.
    pub action_exponents: Vec<(i64, i64)>,
    /// For each extra coordinate: does it survive on the algebraic locus.
    pub algebraic_coordinates: Vec<bool>,
}

/// `mu_i` for `1 <= i <= n`.
pub fn mu_values(ks: &KeySequence) -> Vec<i64> {
    let n = ks.n();
    let ladder = ks.ladder();
    let (idx, _) = essential_subsequence(ks);
    (1..=n)
        .map(|i| {
            let k = idx.iter().rposition(|&e| e <= i).unwrap();
            let beta = represent(ks.omega(), &ladder, ladder.alpha(i) * ks.omega()[i], i - 1);
            let mut prefix = 1i64;
            let mut sub = 0i64;
            for j in 1..=k {
                let b = if idx[j] < i { beta[idx[j]] } else { 0 };
                sub += prefix * b;
                prefix *= ladder.alpha(idx[j]);
            }
            prefix - sub
        })
        .collect()
}

fn theta_exponents(ks: &KeySequence) -> Vec<(i64, i64)> {
    let ladder = ks.ladder();
    mu_values(ks)
        .into_iter()
        .enumerate()
        .map(|(i0, mu)| {
            let i = i0 + 1;
            let beta = represent(ks.omega(), &ladder, ladder.alpha(i) * ks.omega()[i], i - 1);
            (mu, -beta[0])
        })
        .collect()
}

/// Rank over Q of the matrix with the given columns.
pub fn rank_2xn(cols: &[(i64, i64)]) -> usize {
    if cols.iter().all(|&(a, b)| a == 0 && b == 0) {
        return 0;
    }
    let minor = |(a, b): (i64, i64), (c, d): (i64, i64)| a as i128 * d as i128 - b as i128 * c as i128;
    for (i, &u) in cols.iter().enumerate() {
        for &v in &cols[i + 1..] {
            if minor(u, v) != 0 {
                return 2;
            }
        }
    }
    1
}

fn point(mode: ModuliMode) -> ModuliReport {
    ModuliReport {
        mode,
        n: 0,
        m: 0,
        torus_dim: 0,
        dimension: 0,
        rank: 0,
        omega_check_sets: Vec::new(),
        omega_check_alg_sets: Vec::new(),
        excluded_sets: Vec::new(),
        extra_values: Vec::new(),
        action_exponents: Vec::new(),
        algebraic_coordinates: Vec::new(),
    }
}

pub fn moduli_fixed(ks: &KeySequence) -> Result<ModuliReport> {
    require_normal_primitive(ks)?;
    let n = ks.n();
    if n == 0 {
        return Ok(point(ModuliMode::FixedSequence));
    }
    let exps = theta_exponents(ks);
    let rank = rank_2xn(&exps);
    let dim = n as i64 - rank as i64;
    Ok(ModuliReport { n, torus_dim: dim, dimension: dim, rank, action_exponents: exps, ..point(ModuliMode::FixedSequence) })
}

struct Scan {
    group: Vec<Vec<i64>>,
    semigroup: Vec<Vec<i64>>,
    excluded: Vec<Vec<i64>>,
}

fn scan_intervals(ks: &KeySequence) -> Scan {
    let w = ks.omega();
    let n = ks.n();
    let ladder = ks.ladder();
    let mut scan = Scan { group: Vec::new(), semigroup: Vec::new(), excluded: Vec::new() };
    for k in 1..=n {
        let base: i64 = (1..=k).map(|j| (ladder.alpha(j) - 1) * w[j]).sum();
        let special = base - (ladder.alpha(1) - 1) * w[1] + ladder.alpha(1) * w[1] - w[0];
        let is_excluded = |v: i64| v == special || (v >= base && (v - base) % w[0] == 0);
        let (lo, hi) = (w[k + 1], ladder.alpha(k) * w[k]);
        let mut g = Vec::new();
        let mut s = Vec::new();
        let mut x = Vec::new();
        for v in lo + 1..hi {
            if is_excluded(v) {
                x.push(v);
                continue;
            }
            if v % ladder.d[k] == 0 {
                g.push(v);
                if semigroup_member(&w[..=k], v).is_some() {
                    s.push(v);
                }
            }
        }
        scan.group.push(g);
        scan.semigroup.push(s);
        scan.excluded.push(x);
    }
    scan
}

// Collects the union in increasing order with the smallest stratum for each value.
fn strata_union(sets: &[Vec<i64>]) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for (k0, set) in sets.iter().enumerate() {
        for &v in set {
            if !out.iter().any(|&(_, u)| u == v) {
                out.push((k0 + 1, v));
            }
        }
    }
    out.sort_by_key(|&(_, v)| v);
    out
}

fn extra_exponent(ks: &KeySequence, k: usize, v: i64) -> (i64, i64) {
    let ladder = ks.ladder();
    let beta = represent(ks.omega(), &ladder, v, k);
    let mut prefix = 1i64;
    let mut sub = 0i64;
    for (j, &b) in beta.iter().enumerate().take(k + 1).skip(1) {
        sub += prefix * b;
        prefix *= ladder.alpha(j);
    }
    (prefix - sub, -beta[0])
}

pub fn moduli_essential(ks: &KeySequence) -> Result<ModuliReport> {
    require_normal_primitive(ks)?;
    if !ks.is_essential() {
        return Err(Error::NotEssential);
    }
    let n = ks.n();
    if n == 0 {
        return Ok(point(ModuliMode::EssentialFamily));
    }
    let scan = scan_intervals(ks);
    let extra = strata_union(&scan.group);
    let mut exps = theta_exponents(ks);
    let torus_dim = n as i64 - rank_2xn(&exps) as i64;
    exps.extend(extra.iter().map(|&(k, v)| extra_exponent(ks, k, v)));
    let alg = extra.iter().map(|&(k, v)| scan.semigroup[k - 1].contains(&v)).collect();
    let rank = rank_2xn(&exps);
    Ok(ModuliReport {
        mode: ModuliMode::EssentialFamily,
        n,
        m: extra.len(),
        torus_dim,
        dimension: (n + extra.len()) as i64 - rank as i64,
        rank,
        omega_check_sets: scan.group,
        omega_check_alg_sets: scan.semigroup,
        excluded_sets: scan.excluded,
        extra_values: extra,
        action_exponents: exps,
        algebraic_coordinates: alg,
    })
}

/// Moduli of curves with one place at infinity and pole sequence `delta`.
pub fn curve_moduli(delta: &[i64]) -> Result<ModuliReport> {
    let bad = |why: &str| Error::NotDeltaSequence(format!("{delta:?}: {why}"));
    let mut w = delta.to_vec();
    w.push(0);
    let ks = KeySequence::new(w).map_err(|e| bad(&e.to_string()))?;
    if !ks.is_algebraic() {
        return Err(bad("not algebraic"));
    }
    if !ks.is_essential() {
        return Err(bad("not essential"));
    }
    if let (false, clause) = normal_form_check(&ks) {
        return Err(bad(&format!("not in normal form ({})", clause.unwrap_or("?"))));
    }
    let n = ks.n();
    if n == 0 {
        return Ok(point(ModuliMode::CurveFamily));
    }
    let scan = scan_intervals(&ks);
    let extra = strata_union(&scan.semigroup);
    let mut exps = theta_exponents(&ks);
    let torus_dim = n as i64 - rank_2xn(&exps) as i64;
    exps.extend(extra.iter().map(|&(k, v)| extra_exponent(&ks, k, v)));
    let deg_y: i64 = (1..=n).map(|j| ks.ladder().alpha(j)).product();
    exps.push((deg_y, 0));
    let rank = rank_2xn(&exps);
    let m = extra.len();
    Ok(ModuliReport {
        mode: ModuliMode::CurveFamily,
        n,
        m,
        torus_dim,
        dimension: (n + m + 1) as i64 - rank as i64,
        rank,
        omega_check_sets: scan.semigroup.clone(),
        omega_check_alg_sets: scan.semigroup,
        excluded_sets: scan.excluded,
        extra_values: extra,
        action_exponents: exps,
        algebraic_coordinates: vec![true; m + 1],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionShape {
    AffineTranslations,
    YTranslationsOnly,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G2aReport {
    pub q_omega: i64,
    pub admits_action: bool,
    pub picard1_g2a: bool,
    pub action_shape: ActionShape,
    pub translation_param_dim: i64,
}

pub fn g2a_report(ks: &KeySequence) -> Result<G2aReport> {
    require_normal_primitive(ks)?;
    let q = q_omega(ks);
    let k = canonical_coefficient(ks)?;
    let w1 = ks.omega()[1];
    let admits = q >= 0;
    let shape = match (admits, w1 + k < 0) {
        (false, _) => ActionShape::None,
        (true, true) => ActionShape::AffineTranslations,
        (true, false) => ActionShape::YTranslationsOnly,
    };
    Ok(G2aReport {
        q_omega: q,
        admits_action: admits,
        picard1_g2a: k + w1 < 0,
        action_shape: shape,
        translation_param_dim: if admits { q / ks.omega()[0] + 1 } else { 0 },
    })
}
