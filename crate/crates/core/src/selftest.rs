//! Cross-oracle checks over the built-in corpus.

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::corpus::{random_poly, series_corpus, ALGEBRAIC_SEQUENCES};
use crate::error::Result;
use crate::geometry::canonical_coefficient;
use crate::keyforms::{basis_expand, build_key_forms, semidegree};
use crate::keyseq::KeySequence;
use crate::laurent::int;
use crate::puiseux::{key_data_from_series, semidegree_via_series};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub instance: Vec<i64>,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Semidegree through the key-form basis against substitution of the
/// series, plus the basis round trip, for every corpus series.
fn series_checks(polys_per_instance: usize, out: &mut Vec<Check>) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for s in series_corpus() {
        let kd = key_data_from_series(&s)?;
        let mut detail = None;
        for _ in 0..polys_per_instance {
            let f = random_poly(&mut rng, 6, (-6, 10), 6);
            let a = semidegree(&f, &kd.kf)?;
            let b = semidegree_via_series(&f, &s)?;
            let back = basis_expand(&f, &kd.kf)?.evaluate(&kd.kf);
            if a != b || back != f {
                detail = Some(format!("f = {f}: basis {a}, series {b}"));
                break;
            }
        }
        out.push(Check {
            name: "semidegree_basis_vs_series",
            instance: kd.omega.omega().to_vec(),
            cases: polys_per_instance,
            passed: detail.is_none(),
            detail,
        });
    }
    Ok(())
}

/// The canonical coefficient against `-(w_0 + w_{n+1} + 1 - delta(dg_{n+1}/dy))`.
fn canonical_checks(out: &mut Vec<Check>) -> Result<()> {
    for w in ALGEBRAIC_SEQUENCES {
        let ks = KeySequence::new(w.to_vec())?;
        let kf = build_key_forms(&ks, &vec![int(1); ks.n()])?;
        let d = semidegree(&kf.last().derivative_y(), &kf)?;
        let via_forms = -(w[0] + ks.last() + 1 - d);
        let closed = canonical_coefficient(&ks)?;
        out.push(Check {
            name: "canonical_cross_check",
            instance: w.to_vec(),
            cases: 1,
            passed: via_forms == closed,
            detail: (via_forms != closed).then(|| format!("key forms give {via_forms}, closed form {closed}")),
        });
    }
    Ok(())
}

pub fn run(polys_per_instance: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    series_checks(polys_per_instance, &mut out)?;
    canonical_checks(&mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let checks = run(20).unwrap();
        assert!(checks.len() >= series_corpus().len() + ALGEBRAIC_SEQUENCES.len());
        for c in checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn corpus_sequences_are_algebraic_keys() {
        for w in ALGEBRAIC_SEQUENCES {
            let v = crate::keyseq::validate(w);
            assert!(v.is_key && v.is_primitive && v.is_algebraic, "{w:?} {v:?}");
        }
    }
}
