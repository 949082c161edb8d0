//! Exhaustive enumeration of key sequences with positive entries.

use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::geometry::singularity_report;
use crate::keyseq::{normal_form_check, KeySequence};

pub const MAX_ENTRY_LIMIT: i64 = 10_000;
pub const MAX_LENGTH_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_entry: i64,
    /// Largest number of entries `n + 2`.
    pub max_length: usize,
}

impl Bounds {
    pub fn new(max_entry: i64, max_length: usize) -> Result<Self> {
        if max_entry > MAX_ENTRY_LIMIT || max_length > MAX_LENGTH_LIMIT {
            return Err(Error::BoundsTooLarge(format!(
                "max_entry <= {MAX_ENTRY_LIMIT} and max_length <= {MAX_LENGTH_LIMIT} required, got {max_entry} and {max_length}"
            )));
        }
        if max_entry < 1 || max_length < 2 {
            return Err(Error::BoundsTooLarge(format!("empty search range {max_entry}, {max_length}")));
        }
        Ok(Bounds { max_entry, max_length })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Primitive,
    Algebraic,
    Essential,
    Normal,
    Gorenstein,
    Rational,
    Elliptic,
}

/// A property, possibly negated (`non-algebraic`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Filter {
    pub property: Property,
    pub negated: bool,
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negated, name) = match s.strip_prefix("non-") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let property = match name {
            "primitive" => Property::Primitive,
            "algebraic" => Property::Algebraic,
            "essential" => Property::Essential,
            "normal" => Property::Normal,
            "gorenstein" => Property::Gorenstein,
            "rational" => Property::Rational,
            "elliptic" => Property::Elliptic,
            _ => return Err(Error::Parse(format!("unknown filter '{s}'"))),
        };
        Ok(Filter { property, negated })
    }
}

impl Filter {
    pub fn parse_list(s: &str) -> Result<Vec<Filter>> {
        s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
    }

    pub fn accepts(&self, ks: &KeySequence) -> bool {
        let v = match self.property {
            Property::Primitive => ks.is_primitive(),
            Property::Algebraic => ks.is_algebraic(),
            Property::Essential => ks.is_essential(),
            Property::Normal => normal_form_check(ks).0,
            Property::Gorenstein => singularity_report(ks).map(|r| r.is_gorenstein).unwrap_or(false),
            Property::Rational => singularity_report(ks).map(|r| r.is_rational).unwrap_or(false),
            Property::Elliptic => singularity_report(ks).map(|r| r.is_elliptic).unwrap_or(false),
        };
        v != self.negated
    }
}

pub fn accepts_all(filters: &[Filter], ks: &KeySequence) -> bool {
    filters.iter().all(|f| f.accepts(ks))
}

fn dfs<F: Fn(&KeySequence) -> bool>(prefix: &mut Vec<i64>, d: i64, bounds: Bounds, keep: &F, out: &mut Vec<KeySequence>) {
    if prefix.len() >= 2 && d == 1 {
        let ks = KeySequence::new(prefix.clone()).expect("prefix satisfies the key conditions");
        if keep(&ks) {
            out.push(ks);
        }
    }
    if prefix.len() == bounds.max_length {
        return;
    }
    let k = prefix.len() - 1;
    let cap = if k == 0 {
        bounds.max_entry
    } else {
        let prev_d = if k == 1 { prefix[0] } else { gcd_all(&prefix[..k]) };
        let alpha = prev_d / d;
        bounds.max_entry.min(alpha * prefix[k] - 1)
    };
    for w in 1..=cap {
        prefix.push(w);
        dfs(prefix, d.gcd(&w), bounds, keep, out);
        prefix.pop();
    }
}

fn gcd_all(w: &[i64]) -> i64 {
    w.iter().fold(0, |g, x| g.gcd(x))
}

fn enumerate_from(w0: i64, bounds: Bounds, keep: &(impl Fn(&KeySequence) -> bool + Sync)) -> Vec<KeySequence> {
    let mut out = Vec::new();
    dfs(&mut vec![w0], w0, bounds, keep, &mut out);
    out
}

/// All key sequences with entries in `1..=max_entry` and at most `max_length`
/// entries that pass `keep`, in lexicographic order. Work is split over
/// `jobs` threads by leading entry; the output does not depend on `jobs`.
pub fn enumerate_with<F>(bounds: Bounds, jobs: usize, keep: F) -> Vec<KeySequence>
where
    F: Fn(&KeySequence) -> bool + Sync,
{
    let jobs = jobs.max(1);
    if jobs == 1 {
        return (1..=bounds.max_entry).flat_map(|w0| enumerate_from(w0, bounds, &keep)).collect();
    }
    let mut shards: Vec<Vec<(i64, Vec<KeySequence>)>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs as i64)
            .map(|j| {
                let keep = &keep;
                scope.spawn(move || {
                    (1..=bounds.max_entry)
                        .filter(|w0| (w0 - 1) % jobs as i64 == j)
                        .map(|w0| (w0, enumerate_from(w0, bounds, keep)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        shards = handles.into_iter().map(|h| h.join().expect("worker panicked")).collect();
    });
    let mut all: Vec<(i64, Vec<KeySequence>)> = shards.into_iter().flatten().collect();
    all.sort_by_key(|(w0, _)| *w0);
    all.into_iter().flat_map(|(_, v)| v).collect()
}

pub fn enumerate(bounds: Bounds, filters: &[Filter], jobs: usize) -> Vec<KeySequence> {
    enumerate_with(bounds, jobs, |ks| accepts_all(filters, ks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omegas(v: &[KeySequence]) -> Vec<Vec<i64>> {
        v.iter().map(|k| k.omega().to_vec()).collect()
    }

    #[test]
    fn single_entry_bound() {
        let b = Bounds::new(1, 2).unwrap();
        assert_eq!(omegas(&enumerate(b, &[], 1)), vec![vec![1, 1]]);
    }

    #[test]
    fn normal_primitive_small() {
        let b = Bounds::new(3, 3).unwrap();
        let f = Filter::parse_list("normal,primitive").unwrap();
        let got = omegas(&enumerate(b, &f, 1));
        for w in [&[1, 1][..], &[1, 2], &[1, 3], &[2, 3, 1], &[2, 3, 2], &[2, 3, 3]] {
            assert!(got.contains(&w.to_vec()), "{w:?}");
        }
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(got, sorted);
    }

    #[test]
    fn finds_the_non_algebraic_example() {
        let b = Bounds::new(12, 4).unwrap();
        let f = Filter::parse_list("non-algebraic,normal,primitive").unwrap();
        assert!(omegas(&enumerate(b, &f, 2)).contains(&vec![9, 12, 2, 1]));
    }

    #[test]
    fn sharding_is_invisible() {
        let b = Bounds::new(9, 4).unwrap();
        assert_eq!(enumerate(b, &[], 1), enumerate(b, &[], 3));
    }

    #[test]
    fn bounds_and_filters_are_checked() {
        assert!(matches!(Bounds::new(10_001, 3), Err(Error::BoundsTooLarge(_))));
        assert!(matches!(Bounds::new(10, 9), Err(Error::BoundsTooLarge(_))));
        assert!(matches!(Filter::parse_list("shiny"), Err(Error::Parse(_))));
    }

    #[test]
    fn every_emitted_sequence_validates() {
        let b = Bounds::new(8, 5).unwrap();
        for ks in enumerate(b, &[], 1) {
            assert!(crate::keyseq::validate(ks.omega()).is_key);
        }
    }
}
