//! Key forms built from `(omega, theta)`, expansion in the key-form basis, and
//! the semidegree.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::keyseq::{bounded_representation, BoundedRep, KeySequence};
use crate::laurent::{LaurentPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyFormSet {
    pub omega: KeySequence,
    pub theta: Vec<Rational>,
    /// g_0..g_{n+1}
    pub g: Vec<LaurentPoly>,
    /// bounded representations for k = 1..n
    pub reps: Vec<BoundedRep>,
}

impl KeyFormSet {
    pub fn last(&self) -> &LaurentPoly {
        self.g.last().unwrap()
    }
}

pub fn build_key_forms(omega: &KeySequence, theta: &[Rational]) -> Result<KeyFormSet> {
    let n = omega.n();
    if theta.len() != n {
        return Err(Error::ThetaLengthMismatch { expected: n, got: theta.len() });
    }
    if theta.iter().any(|t| t.is_zero()) {
        return Err(Error::ZeroTheta);
    }
    let ladder = omega.ladder();
    let mut g = vec![LaurentPoly::x(), LaurentPoly::y()];
    let mut reps = Vec::with_capacity(n);
    for k in 1..=n {
        let rep = bounded_representation(omega, k)?;
        let mut prod = LaurentPoly::monomial(theta[k - 1].clone(), rep.beta[0], 0);
        for (j, &b) in rep.beta.iter().enumerate().skip(1) {
            if b > 0 {
                prod = &prod * &g[j].pow_u(b as u32);
            }
        }
        let next = &g[k].pow_u(ladder.alpha(k) as u32) - &prod;
        assert!(next.is_monic_in_y(), "key form g_{} is not monic in y", k + 1);
        g.push(next);
        reps.push(rep);
    }
    Ok(KeyFormSet { omega: omega.clone(), theta: theta.to_vec(), g, reps })
}

/// Coefficients of `f` over the basis `g_0^b0 g_1^b1 .. g_{n+1}^b_{n+1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisExpansion {
    pub terms: BTreeMap<Vec<i64>, Rational>,
}

impl BasisExpansion {
    /// Substitutes the key forms back in.
    pub fn evaluate(&self, kf: &KeyFormSet) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (beta, c) in &self.terms {
            let mut t = LaurentPoly::monomial(c.clone(), beta[0], 0);
            for (j, &b) in beta.iter().enumerate().skip(1) {
                if b > 0 {
                    t = &t * &kf.g[j].pow_u(b as u32);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn weight(beta: &[i64], omega: &KeySequence) -> i64 {
        beta.iter().zip(omega.omega()).map(|(b, w)| b * w).sum()
    }
}

pub fn basis_expand(f: &LaurentPoly, kf: &KeyFormSet) -> Result<BasisExpansion> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let top = kf.g.len() - 1;
    let mut out = BasisExpansion::default();
    let mut beta = vec![0i64; top + 1];
    expand_level(f, top, kf, &mut beta, &mut out);
    Ok(out)
}

fn expand_level(f: &LaurentPoly, m: usize, kf: &KeyFormSet, beta: &mut Vec<i64>, out: &mut BasisExpansion) {
    if f.is_zero() {
        return;
    }
    if m == 0 {
        for (ex, ey, c) in f.terms() {
            debug_assert_eq!(ey, 0);
            beta[0] = ex;
            out.terms.insert(beta.clone(), c.clone());
        }
        beta[0] = 0;
        return;
    }
    let mut rest = f.clone();
    let mut digit = 0i64;
    while !rest.is_zero() {
        let (q, r) = rest.div_rem_monic(&kf.g[m]);
        beta[m] = digit;
        expand_level(&r, m - 1, kf, beta, out);
        rest = q;
        digit += 1;
    }
    beta[m] = 0;
}

pub fn semidegree(f: &LaurentPoly, kf: &KeyFormSet) -> Result<i64> {
    let e = basis_expand(f, kf)?;
    Ok(e.terms.keys().map(|b| BasisExpansion::weight(b, &kf.omega)).max().unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompactificationClass {
    None,
    AnalyticOnly,
    Algebraic,
}

pub fn compactification_class(kf: &KeyFormSet) -> CompactificationClass {
    if kf.omega.last() <= 0 {
        CompactificationClass::None
    } else if kf.last().is_polynomial() {
        debug_assert!(kf.g.iter().all(|g| g.is_polynomial()));
        CompactificationClass::Algebraic
    } else {
        CompactificationClass::AnalyticOnly
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;

    fn ks(w: &[i64]) -> KeySequence {
        KeySequence::new(w.to_vec()).unwrap()
    }

    fn p(ts: &[(i64, i64, u32)]) -> LaurentPoly {
        LaurentPoly::from_terms(ts.iter().map(|&(c, ex, ey)| (int(c), ex, ey)))
    }

    fn cusp() -> KeyFormSet {
        build_key_forms(&ks(&[2, 3, 1]), &[int(1)]).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(cusp().g[2], p(&[(1, 0, 2), (-1, 3, 0)]));
        let line = build_key_forms(&ks(&[1, 1]), &[]).unwrap();
        assert_eq!(line.g, vec![LaurentPoly::x(), LaurentPoly::y()]);
        let kf = build_key_forms(&ks(&[9, 12, 2, 1]), &[int(1), int(1)]).unwrap();
        let g2 = p(&[(1, 0, 3), (-1, 4, 0)]);
        assert_eq!(kf.g[2], g2);
        assert_eq!(kf.g[3], &g2.pow_u(3) - &p(&[(1, -2, 2)]));
        assert_eq!(
            build_key_forms(&ks(&[2, 3, 1]), &[]),
            Err(Error::ThetaLengthMismatch { expected: 1, got: 0 })
        );
    }

    #[test]
    fn y_to_the_fourth() {
        let kf = cusp();
        let e = basis_expand(&p(&[(1, 0, 4)]), &kf).unwrap();
        let want: BTreeMap<Vec<i64>, Rational> =
            [(vec![0, 0, 2], int(1)), (vec![3, 0, 1], int(2)), (vec![6, 0, 0], int(1))].into_iter().collect();
        assert_eq!(e.terms, want);
        assert_eq!(semidegree(&p(&[(1, 0, 4)]), &kf).unwrap(), 12);
    }

    #[test]
    fn trivial_expansions() {
        let kf = cusp();
        let e = basis_expand(&p(&[(1, 5, 0)]), &kf).unwrap();
        assert_eq!(e.terms.into_iter().collect::<Vec<_>>(), vec![(vec![5, 0, 0], int(1))]);
        let e = basis_expand(&kf.g[2], &kf).unwrap();
        assert_eq!(e.terms.into_iter().collect::<Vec<_>>(), vec![(vec![0, 0, 1], int(1))]);
        assert_eq!(semidegree(&LaurentPoly::x(), &kf).unwrap(), 2);
        let g2p1 = &kf.g[2] + &LaurentPoly::one();
        assert_eq!(semidegree(&g2p1, &kf).unwrap(), 1);
        assert_eq!(semidegree(&LaurentPoly::zero(), &kf), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn classes() {
        assert_eq!(compactification_class(&cusp()), CompactificationClass::Algebraic);
        let kf = build_key_forms(&ks(&[9, 12, 2, 1]), &[int(1), int(1)]).unwrap();
        assert_eq!(compactification_class(&kf), CompactificationClass::AnalyticOnly);
        let kf = build_key_forms(&ks(&[1, 0]), &[]).unwrap();
        assert_eq!(compactification_class(&kf), CompactificationClass::None);
    }

    #[test]
    fn key_form_values_match_sequence() {
        for w in [&[2, 3, 1][..], &[4, 6, 3, 1], &[9, 12, 2, 1], &[4, 6, 11, 3], &[6, 9, 17, 5, 2]] {
            let omega = ks(w);
            let theta = vec![int(1); omega.n()];
            let kf = build_key_forms(&omega, &theta).unwrap();
            for (j, g) in kf.g.iter().enumerate() {
                assert_eq!(semidegree(g, &kf).unwrap(), w[j]);
            }
        }
    }
}
