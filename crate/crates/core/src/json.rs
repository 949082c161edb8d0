//! JSON encodings: rationals as `[num, den]`, polynomials as
//! `[[num, den, ex, ey], ..]`, series as `{"body": [[n, d, en, ed], ..], "r": [rn, rd]}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::WeightedPoly;
use crate::laurent::{LaurentPoly, Rational};
use crate::normalform::Transform;
use crate::puiseux::{Exp, GenericSeries, UniPoly};

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

/// Integers that fit in i64 become JSON numbers, larger ones strings.
pub fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn rational_to_json(q: &Rational) -> Value {
    json!([bigint_to_json(q.numer()), bigint_to_json(q.denom())])
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| parse_err("an integer", v)),
        Value::String(s) => s.trim().parse().map_err(|_| parse_err("an integer", v)),
        _ => Err(parse_err("an integer", v)),
    }
}

fn parse_i64(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err("a 64-bit integer", v))
}

/// Accepts `[n, d]`, an integer, or a string `"n/d"`.
pub fn parse_rational(v: &Value) -> Result<Rational> {
    let (n, d) = match v {
        Value::Array(a) if a.len() == 2 => (parse_bigint(&a[0])?, parse_bigint(&a[1])?),
        Value::Number(_) => (parse_bigint(v)?, BigInt::from(1)),
        Value::String(s) => match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse().map_err(|_| parse_err("a rational", v))?,
                d.trim().parse().map_err(|_| parse_err("a rational", v))?,
            ),
            None => (parse_bigint(v)?, BigInt::from(1)),
        },
        _ => return Err(parse_err("a rational", v)),
    };
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

fn parse_exp(n: &Value, d: &Value) -> Result<Exp> {
    let (n, d) = (parse_i64(n)?, parse_i64(d)?);
    if d == 0 {
        return Err(Error::Parse("zero exponent denominator".into()));
    }
    Ok(Exp::new(n, d))
}

fn exp_to_json(e: Exp) -> Value {
    json!([*e.numer(), *e.denom()])
}

pub fn parse_value(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_omega(s: &str) -> Result<Vec<i64>> {
    let v = parse_value(s)?;
    let arr = v.as_array().ok_or_else(|| parse_err("an array of integers", &v))?;
    arr.iter().map(parse_i64).collect()
}

pub fn parse_theta(s: &str) -> Result<Vec<Rational>> {
    let v = parse_value(s)?;
    let arr = v.as_array().ok_or_else(|| parse_err("an array of rationals", &v))?;
    arr.iter().map(parse_rational).collect()
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(ex, ey, c)| json!([bigint_to_json(c.numer()), bigint_to_json(c.denom()), ex, ey]))
            .collect(),
    )
}

pub fn parse_poly(v: &Value) -> Result<LaurentPoly> {
    let arr = v.as_array().ok_or_else(|| parse_err("a list of [num, den, ex, ey]", v))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        match t.as_array().map(|a| a.as_slice()) {
            Some([n, d, ex, ey]) => {
                let c = parse_rational(&json!([n, d]))?;
                let ey = parse_i64(ey)?;
                if ey < 0 {
                    return Err(Error::Parse(format!("negative y exponent in {t}")));
                }
                terms.push((c, parse_i64(ex)?, ey as u32));
            }
            _ => return Err(parse_err("[num, den, ex, ey]", t)),
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn series_to_json(s: &GenericSeries) -> Value {
    let body: Vec<Value> = s
        .body()
        .iter()
        .rev()
        .map(|(e, c)| json!([bigint_to_json(c.numer()), bigint_to_json(c.denom()), *e.numer(), *e.denom()]))
        .collect();
    json!({"body": body, "r": exp_to_json(s.r())})
}

pub fn parse_series(v: &Value) -> Result<GenericSeries> {
    let body = v.get("body").and_then(Value::as_array).ok_or_else(|| parse_err("a \"body\" list", v))?;
    let r = match v.get("r").and_then(Value::as_array).map(|a| a.as_slice()) {
        Some([n, d]) => parse_exp(n, d)?,
        _ => return Err(parse_err("\"r\": [num, den]", v)),
    };
    let mut map: BTreeMap<Exp, Rational> = BTreeMap::new();
    for t in body {
        match t.as_array().map(|a| a.as_slice()) {
            Some([n, d, en, ed]) => {
                let c = parse_rational(&json!([n, d]))?;
                *map.entry(parse_exp(en, ed)?).or_insert_with(Rational::zero) += c;
            }
            _ => return Err(parse_err("[num, den, exp_num, exp_den]", t)),
        }
    }
    GenericSeries::new(map, r)
}

pub fn unipoly_to_json(f: &UniPoly) -> Value {
    Value::Array(
        f.iter().rev().map(|(e, c)| json!([bigint_to_json(c.numer()), bigint_to_json(c.denom()), e])).collect(),
    )
}

pub fn transform_to_json(t: &Transform) -> Value {
    json!({
        "a": rational_to_json(&t.a),
        "b": rational_to_json(&t.b),
        "c": rational_to_json(&t.c),
        "f": unipoly_to_json(&t.f),
        "swap": t.swap,
    })
}

pub fn weighted_poly_to_json(p: &WeightedPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({"coeff": rational_to_json(c), "exponents": e}))
        .collect();
    json!({
        "vars": p.vars,
        "weights": p.weights,
        "degree": p.weighted_degree(),
        "terms": terms,
        "text": p.to_string(),
    })
}

pub fn error_to_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}})
}
