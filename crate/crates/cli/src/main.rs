//! `pcomp`: JSON front end for the plane-compact library.
//!
//! Every subcommand writes newline-delimited JSON to stdout. Exit status is 0
//! on success, 1 on a domain error (an `{"error": {..}}` object is printed)
//! and 2 on a usage error.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use plane_compact::classify::{aut_group, curve_moduli, g2a_report, moduli_essential, moduli_fixed};
use plane_compact::enumerate::{enumerate, Bounds, Filter};
use plane_compact::geometry::{brenton_enumerate, curve_at_infinity, embedding_equations, singularity_report};
use plane_compact::json::{
    error_to_json, parse_omega, parse_poly, parse_series, parse_theta, parse_value, poly_to_json, rational_to_json,
    series_to_json, transform_to_json, weighted_poly_to_json,
};
use plane_compact::keyforms::{basis_expand, build_key_forms, compactification_class, semidegree, BasisExpansion};
use plane_compact::keyseq::{validate, KeySequence};
use plane_compact::laurent::{int, LaurentPoly, Rational};
use plane_compact::normalform::normalize_series;
use plane_compact::puiseux::{key_data_from_series, semidegree_via_series, GenericSeries};
use plane_compact::{selftest, Error};

#[derive(Parser)]
#[command(name = "pcomp", version, about = "Invariants of primitive normal compactifications of the affine plane")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a candidate key sequence.
    Validate {
        #[arg(long)]
        omega: String,
    },
    /// Key forms g_0..g_{n+1}; with --poly also the basis expansion of the polynomial.
    Keyforms {
        #[arg(long)]
        omega: String,
        /// Defaults to all ones.
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Semidegree of a polynomial via key forms (--omega) and/or a series (--series).
    Semidegree {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        series: Option<String>,
    },
    /// Canonical divisor and singularity report.
    Classify {
        #[arg(long)]
        omega: String,
    },
    /// Weighted embedding equations.
    Equations {
        #[arg(long)]
        omega: String,
        #[arg(long)]
        theta: Option<String>,
    },
    /// Smoothness of the curve at infinity at the point P_infinity.
    CurveInfinity {
        #[arg(long)]
        omega: String,
    },
    /// Automorphism group descriptor.
    Aut {
        #[arg(long)]
        omega: String,
    },
    /// Moduli data for fixed key sequence, essential subsequence, or curve (delta-sequence).
    Moduli {
        #[arg(long)]
        omega: String,
        #[arg(long, conflicts_with = "curve")]
        essential: bool,
        #[arg(long)]
        curve: bool,
    },
    /// G_a^2 action criteria.
    G2a {
        #[arg(long)]
        omega: String,
    },
    /// Normal form of a degree-wise Puiseux series.
    Normalize {
        #[arg(long)]
        series: String,
    },
    /// Gorenstein compactifications with rational singularities, grouped by family.
    Brenton {
        #[arg(long, default_value_t = 12)]
        bound: i64,
    },
    /// Exhaustive enumeration of key sequences.
    Enumerate {
        #[arg(long)]
        max_entry: i64,
        #[arg(long)]
        max_length: usize,
        /// Comma-separated, e.g. `normal,primitive,non-algebraic`.
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Cross-oracle checks on the built-in corpus.
    Selftest {
        #[arg(long, default_value_t = 50)]
        polys: usize,
    },
}

enum Failure {
    Usage { flag: &'static str, message: String },
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<Vec<Value>, Failure>;

fn usage<T>(flag: &'static str, r: plane_compact::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage { flag, message: e.to_string() })
}

/// Inline JSON, or a path to a JSON file.
fn read_json(flag: &'static str, arg: &str) -> Result<Value, Failure> {
    let t = arg.trim_start();
    let text = if t.starts_with('[') || t.starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage { flag, message: format!("{arg}: {e}") })?
    };
    usage(flag, parse_value(&text))
}

fn key_sequence(omega: &str) -> Result<KeySequence, Failure> {
    Ok(KeySequence::new(usage("--omega", parse_omega(omega))?)?)
}

fn theta_for(ks: &KeySequence, theta: Option<&str>) -> Result<Vec<Rational>, Failure> {
    match theta {
        Some(t) => usage("--theta", parse_theta(t)),
        None => Ok(vec![int(1); ks.n()]),
    }
}

fn poly_arg(arg: &str) -> Result<LaurentPoly, Failure> {
    let v = read_json("--poly", arg)?;
    usage("--poly", parse_poly(&v))
}

fn series_arg(arg: &str) -> Result<GenericSeries, Failure> {
    let v = read_json("--series", arg)?;
    usage("--series", parse_series(&v))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn expansion_json(e: &BasisExpansion, ks: &KeySequence) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|(beta, c)| json!({"beta": beta, "coeff": rational_to_json(c), "weight": BasisExpansion::weight(beta, ks)}))
        .collect();
    Value::Array(terms)
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Validate { omega } => Ok(vec![to_value(&validate(&usage("--omega", parse_omega(&omega))?))]),
        Cmd::Keyforms { omega, theta, poly } => {
            let ks = key_sequence(&omega)?;
            let theta = theta_for(&ks, theta.as_deref())?;
            let kf = build_key_forms(&ks, &theta)?;
            let mut out = json!({
                "omega": ks.omega(),
                "theta": theta.iter().map(rational_to_json).collect::<Vec<_>>(),
                "class": to_value(&compactification_class(&kf)),
                "key_forms": kf.g.iter().map(poly_to_json).collect::<Vec<_>>(),
                "key_forms_text": kf.g.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            });
            if let Some(p) = poly {
                let f = poly_arg(&p)?;
                let e = basis_expand(&f, &kf)?;
                out["expansion"] = expansion_json(&e, &ks);
                out["semidegree"] = json!(semidegree(&f, &kf)?);
            }
            Ok(vec![out])
        }
        Cmd::Semidegree { poly, omega, theta, series } => {
            let f = poly_arg(&poly)?;
            if omega.is_none() && series.is_none() {
                return Err(Failure::Usage { flag: "--omega", message: "one of --omega or --series is required".into() });
            }
            let mut out = json!({});
            if let Some(o) = omega {
                let ks = key_sequence(&o)?;
                let theta = theta_for(&ks, theta.as_deref())?;
                out["via_key_forms"] = json!(semidegree(&f, &build_key_forms(&ks, &theta)?)?);
            }
            if let Some(s) = series {
                out["via_series"] = json!(semidegree_via_series(&f, &series_arg(&s)?)?);
            }
            let vals: Vec<Value> = ["via_key_forms", "via_series"].iter().filter_map(|k| out.get(*k).cloned()).collect();
            out["agree"] = json!(vals.iter().all(|v| *v == vals[0]));
            out["semidegree"] = vals[0].clone();
            Ok(vec![out])
        }
        Cmd::Classify { omega } => {
            let ks = key_sequence(&omega)?;
            let mut v = to_value(&singularity_report(&ks)?);
            v["omega"] = json!(ks.omega());
            Ok(vec![v])
        }
        Cmd::Equations { omega, theta } => {
            let ks = key_sequence(&omega)?;
            let theta = theta_for(&ks, theta.as_deref())?;
            let eqs = embedding_equations(&ks, &theta)?;
            Ok(vec![json!({
                "omega": ks.omega(),
                "weights": eqs.weights,
                "equations": eqs.equations.iter().map(weighted_poly_to_json).collect::<Vec<_>>(),
            })])
        }
        Cmd::CurveInfinity { omega } => Ok(vec![to_value(&curve_at_infinity(&key_sequence(&omega)?)?)]),
        Cmd::Aut { omega } => {
            let d = aut_group(&key_sequence(&omega)?)?;
            let mut v = to_value(&d);
            v["is_finite"] = json!(d.is_finite());
            Ok(vec![v])
        }
        Cmd::Moduli { omega, essential, curve } => {
            let r = if curve {
                curve_moduli(&usage("--omega", parse_omega(&omega))?)?
            } else if essential {
                moduli_essential(&key_sequence(&omega)?)?
            } else {
                moduli_fixed(&key_sequence(&omega)?)?
            };
            Ok(vec![to_value(&r)])
        }
        Cmd::G2a { omega } => Ok(vec![to_value(&g2a_report(&key_sequence(&omega)?)?)]),
        Cmd::Normalize { series } => {
            let s = series_arg(&series)?;
            let (t, tr) = normalize_series(&s)?;
            let kd = key_data_from_series(&t)?;
            Ok(vec![json!({
                "series": series_to_json(&t),
                "transform": transform_to_json(&tr),
                "omega": kd.omega.omega(),
                "theta": kd.theta.iter().map(rational_to_json).collect::<Vec<_>>(),
            })])
        }
        Cmd::Brenton { bound } => {
            let mut groups: BTreeMap<(usize, String), (Vec<i64>, Vec<Value>)> = BTreeMap::new();
            let mut order: Vec<String> = Vec::new();
            for e in brenton_enumerate(bound)? {
                if !order.contains(&e.family) {
                    order.push(e.family.clone());
                }
                let idx = order.iter().position(|f| *f == e.family).unwrap();
                let mut m = json!({"omega": e.omega.omega(), "k_canonical": e.report.k_canonical});
                if let Some(eq) = &e.equation {
                    m["equation"] = weighted_poly_to_json(eq);
                }
                let g = groups.entry((idx, e.family.clone())).or_insert_with(|| (e.ambient.clone(), Vec::new()));
                g.1.push(m);
            }
            Ok(groups
                .into_iter()
                .map(|((_, family), (ambient, members))| json!({"family": family, "ambient": ambient, "members": members}))
                .collect())
        }
        Cmd::Enumerate { max_entry, max_length, filter, jobs } => {
            let filters = usage("--filter", Filter::parse_list(&filter))?;
            let bounds = Bounds::new(max_entry, max_length)?;
            Ok(enumerate(bounds, &filters, jobs)
                .iter()
                .map(|ks| {
                    let mut v = to_value(&validate(ks.omega()));
                    v["omega"] = json!(ks.omega());
                    if let Ok(r) = singularity_report(ks) {
                        v["report"] = to_value(&r);
                    }
                    v
                })
                .collect())
        }
        Cmd::Selftest { polys } => {
            let checks = selftest::run(polys)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let mut out: Vec<Value> = checks.iter().map(to_value).collect();
            if failed > 0 {
                return Err(Failure::Domain(Error::InconsistentInput(format!(
                    "{failed} of {} selftest checks failed: {}",
                    checks.len(),
                    out.iter().filter(|c| c["passed"] == json!(false)).map(Value::to_string).collect::<Vec<_>>().join("; ")
                ))));
            }
            out.push(json!({"passed": true, "checks": checks.len()}));
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            println!("{}", error_to_json(&e));
            ExitCode::from(1)
        }
        Err(Failure::Usage { flag, message }) => {
            eprintln!("error: invalid value for '{flag}': {message}");
            ExitCode::from(2)
        }
    }
}
