//! Polynomials in `x`, `x^-1` and `y` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as a big rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `q^e` for any integer `e`; `q` must be non-zero when `e < 0`.
pub fn rpow(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub deg_y: u32,
    pub max_ex: i64,
    pub min_ex: i64,
}

/// Element of `Q[x, x^-1, y]`. Terms are keyed by `(ey, ex)` so iteration runs
/// by y-degree first, then x-exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(u32, i64), Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, ex: i64, ey: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, ex, ey);
        p
    }

    /// Builds from `(coeff, ex, ey)` triples, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Rational, i64, u32)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (c, ex, ey) in it {
            p.add_term(c, ex, ey);
        }
        p
    }

    pub fn add_term(&mut self, c: Rational, ex: i64, ey: u32) {
        if c.is_zero() {
            return;
        }
        let key = (ey, ex);
        let drop = match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(key, c);
                false
            }
        };
        if drop {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(ex, ey, coeff)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &Rational)> {
        self.terms.iter().map(|(&(ey, ex), c)| (ex, ey, c))
    }

    pub fn coeff(&self, ex: i64, ey: u32) -> Rational {
        self.terms.get(&(ey, ex)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|&(ey, _)| ey)
    }

    pub fn degrees(&self) -> Result<Degrees> {
        let deg_y = self.deg_y().ok_or(Error::ZeroPolynomial)?;
        let max_ex = self.terms.keys().map(|k| k.1).max().unwrap();
        let min_ex = self.terms.keys().map(|k| k.1).min().unwrap();
        Ok(Degrees { deg_y, max_ex, min_ex })
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(_, ex)| ex >= 0)
    }

    /// Coefficient of `y^ey`, as a polynomial in `x` alone.
    pub fn y_coeff(&self, ey: u32) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .range((ey, i64::MIN)..=(ey, i64::MAX))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^ex y^ey`.
    pub fn shift(&self, ex: i64, ey: u32) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(y, x), v)| ((y + ey, x + ex), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<LaurentPoly> {
        if e < 0 {
            return Err(Error::NegativePower(e));
        }
        Ok(self.pow_u(e as u32))
    }

    pub fn pow_u(&self, mut e: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
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

    pub fn derivative_y(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(ey, ex), c) in &self.terms {
            if ey > 0 {
                out.add_term(c * int(ey as i64), ex, ey - 1);
            }
        }
        out
    }

    /// True when the coefficient of the top power of `y` is the constant 1.
    pub fn is_monic_in_y(&self) -> bool {
        match self.deg_y() {
            Some(d) => {
                let lead = self.y_coeff(d);
                lead.len() == 1 && lead.coeff(0, d).is_one()
            }
            None => false,
        }
    }

    /// Euclidean division in `y` by a polynomial monic in `y`.
    ///
    /// Panics if `g` is not monic; every key form is monic by construction.
    pub fn div_rem_monic(&self, g: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(g.is_monic_in_y(), "divisor must be monic in y");
        let dg = g.deg_y().unwrap();
        let mut q = LaurentPoly::zero();
        let mut r = self.clone();
        while let Some(dr) = r.deg_y() {
            if dr < dg {
                break;
            }
            let lead = r.y_coeff(dr);
            let t = lead.strip_y(dg);
            r = &r - &(&t * g);
            q = &q + &t;
        }
        (q, r)
    }

    // Lowers every y-exponent by `by`; only used on a single y-slice.
    fn strip_y(&self, by: u32) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(ey, ex), v)| ((ey - by, ex), v.clone()))
                .collect(),
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(ey, ex), c) in &rhs.terms {
            out.add_term(c.clone(), ex, ey);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(ey, ex), c) in &rhs.terms {
            out.add_term(-c, ex, ey);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(ey1, ex1), c1) in &self.terms {
            for (&(ey2, ex2), c2) in &rhs.terms {
                out.add_term(c1 * c2, ex1 + ex2, ey1 + ey2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(ey, ex), c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match (ex, ey) {
                (0, 0) => String::new(),
                _ => {
                    let mut s = Vec::new();
                    match ex {
                        0 => {}
                        1 => s.push("x".to_string()),
                        e => s.push(format!("x^{e}")),
                    }
                    match ey {
                        0 => {}
                        1 => s.push("y".to_string()),
                        e => s.push(format!("y^{e}")),
                    }
                    s.join("*")
                }
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ts: &[(i64, i64, u32)]) -> LaurentPoly {
        LaurentPoly::from_terms(ts.iter().map(|&(c, ex, ey)| (int(c), ex, ey)))
    }

    #[test]
    fn ring_examples() {
        let y = LaurentPoly::y();
        assert_eq!(&y * &y, p(&[(1, 0, 2)]));
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(&cusp + &p(&[(1, 3, 0)]), p(&[(1, 0, 2)]));
        let ymx = p(&[(1, 0, 1), (-1, 1, 0)]);
        assert_eq!(ymx.pow(2).unwrap(), p(&[(1, 0, 2), (-2, 1, 1), (1, 2, 0)]));
        assert_eq!(ymx.pow(-1), Err(Error::NegativePower(-1)));
    }

    #[test]
    fn degree_examples() {
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(cusp.degrees().unwrap(), Degrees { deg_y: 2, max_ex: 3, min_ex: 0 });
        let lau = p(&[(1, -2, 2)]);
        assert_eq!(lau.degrees().unwrap(), Degrees { deg_y: 2, max_ex: -2, min_ex: -2 });
        assert_eq!(p(&[(5, 0, 0)]).degrees().unwrap(), Degrees { deg_y: 0, max_ex: 0, min_ex: 0 });
        assert_eq!(LaurentPoly::zero().degrees(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn polynomial_flag() {
        assert!(p(&[(1, 0, 2), (-1, 3, 0)]).is_polynomial());
        assert!(!p(&[(1, -2, 2)]).is_polynomial());
        assert!(LaurentPoly::zero().is_polynomial());
    }

    #[test]
    fn monic_division() {
        let g = p(&[(1, 0, 2), (-1, 3, 0)]);
        let f = p(&[(1, 0, 4), (7, -1, 1), (2, 5, 3)]);
        let (q, r) = f.div_rem_monic(&g);
        assert!(r.deg_y().map_or(true, |d| d < 2));
        assert_eq!(&(&q * &g) + &r, f);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[(1, 0, 2), (-1, 3, 0)]).to_string(), "y^2 - x^3");
    }
}
