use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use plane_compact::classify::{moduli_essential, moduli_fixed, mu_values};
use plane_compact::corpus::{series_corpus, ALGEBRAIC_SEQUENCES};
use plane_compact::enumerate::{enumerate, Bounds, Filter};
use plane_compact::geometry::{canonical_coefficient, embedding_equations, gorenstein_index};
use plane_compact::json::{parse_poly, parse_series, poly_to_json, series_to_json};
use plane_compact::keyforms::{basis_expand, build_key_forms, semidegree, KeyFormSet};
use plane_compact::keyseq::{bounded_representation, essential_subsequence, semigroup_member, validate, KeySequence};
use plane_compact::laurent::{int, rat, rpow, LaurentPoly, Rational};
use plane_compact::normalform::normalize_series;
use plane_compact::puiseux::{
    coordinate_change, delta_last_key, exp, formal_pairs, formal_pairs_from_key_sequence, key_data_from_series, scale_series,
    semidegree_via_series, Exp, GenericSeries, UniPoly,
};

fn normal_primitive() -> &'static [KeySequence] {
    static L: OnceLock<Vec<KeySequence>> = OnceLock::new();
    L.get_or_init(|| enumerate(Bounds::new(12, 5).unwrap(), &Filter::parse_list("normal,primitive").unwrap(), 4))
}

fn key_form_instances() -> &'static [KeyFormSet] {
    static L: OnceLock<Vec<KeyFormSet>> = OnceLock::new();
    L.get_or_init(|| {
        let mut v: Vec<KeyFormSet> = ALGEBRAIC_SEQUENCES
            .iter()
            .map(|w| {
                let ks = KeySequence::new(w.to_vec()).unwrap();
                build_key_forms(&ks, &vec![int(1); ks.n()]).unwrap()
            })
            .collect();
        v.push(build_key_forms(&KeySequence::new(vec![9, 12, 2, 1]).unwrap(), &[int(1), int(1)]).unwrap());
        v.push(build_key_forms(&KeySequence::new(vec![2, 3, 1]).unwrap(), &[rat(-2, 3)]).unwrap());
        v
    })
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_filter("non-zero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((coeff(), -6i64..=10, 0u32..=6), 1..6)
        .prop_map(LaurentPoly::from_terms)
        .prop_filter("non-zero", |p| !p.is_zero())
}

fn series() -> impl Strategy<Value = GenericSeries> {
    let r = (-3i64..=2, 1i64..=3).prop_map(|(n, d)| exp(n, d));
    (r, prop::collection::vec((coeff(), 1i64..=12, prop::sample::select(vec![1i64, 2, 3, 4])), 0..4)).prop_filter_map(
        "valid series",
        |(r, terms)| {
            let mut body: BTreeMap<Exp, Rational> = BTreeMap::new();
            for (c, k, d) in terms {
                body.insert(r + Exp::new(k, d), c);
            }
            GenericSeries::new(body, r).ok()
        },
    )
}

fn corpus_series() -> impl Strategy<Value = GenericSeries> {
    prop::sample::select(series_corpus())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn semidegree_is_a_degree(i in 0usize..20, f in poly(), g in poly()) {
        let kf = &key_form_instances()[i % key_form_instances().len()];
        let (df, dg) = (semidegree(&f, kf).unwrap(), semidegree(&g, kf).unwrap());
        prop_assert_eq!(semidegree(&(&f * &g), kf).unwrap(), df + dg);
        let s = &f + &g;
        if !s.is_zero() {
            prop_assert!(semidegree(&s, kf).unwrap() <= df.max(dg));
        }
        prop_assert_eq!(semidegree(&f.scale(&rat(7, 3)), kf).unwrap(), df);
    }

    #[test]
    fn basis_expansion_round_trips(i in 0usize..20, f in poly()) {
        let kf = &key_form_instances()[i % key_form_instances().len()];
        let e = basis_expand(&f, kf).unwrap();
        prop_assert_eq!(e.evaluate(kf), f);
    }

    #[test]
    fn basis_agrees_with_series(s in corpus_series(), f in poly()) {
        let kd = key_data_from_series(&s).unwrap();
        prop_assert_eq!(semidegree(&f, &kd.kf).unwrap(), semidegree_via_series(&f, &s).unwrap());
    }

    #[test]
    fn key_data_is_consistent(s in series()) {
        let kd = key_data_from_series(&s).unwrap();
        let fp = formal_pairs(&s);
        prop_assert_eq!(formal_pairs_from_key_sequence(&kd.omega), fp.clone());
        prop_assert_eq!(delta_last_key(&fp).unwrap(), kd.omega.last());
        for (j, g) in kd.kf.g.iter().enumerate() {
            prop_assert_eq!(semidegree_via_series(g, &s).unwrap(), kd.omega.omega()[j]);
        }
    }

    #[test]
    fn theta_is_covariant(s in series(), a in coeff(), c in coeff()) {
        let kd = key_data_from_series(&s).unwrap();
        let moved = key_data_from_series(&scale_series(&s, &a, &c).unwrap()).unwrap();
        prop_assert_eq!(&moved.omega, &kd.omega);
        let w0 = kd.omega.omega()[0];
        for (i, mu) in mu_values(&kd.omega).into_iter().enumerate() {
            let b0 = bounded_representation(&kd.omega, i + 1).unwrap().beta[0];
            let want = rpow(&c, mu) * rpow(&a, -w0 * b0) * &kd.theta[i];
            prop_assert_eq!(&moved.theta[i], &want);
        }
    }

    #[test]
    fn normalization_is_idempotent(s in series()) {
        if let Ok((t, _)) = normalize_series(&s) {
            let (u, tr) = normalize_series(&t).unwrap();
            prop_assert_eq!(&u, &t);
            prop_assert!(tr.is_identity());
        }
    }

    #[test]
    fn json_round_trips(f in poly(), s in series()) {
        prop_assert_eq!(parse_poly(&poly_to_json(&f)).unwrap(), f);
        prop_assert_eq!(parse_series(&series_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn embeddings_are_weighted_homogeneous(i in 0usize..100) {
        let alg: Vec<&KeySequence> = normal_primitive().iter().filter(|k| k.is_algebraic()).collect();
        let ks = alg[i % alg.len()];
        let eqs = embedding_equations(ks, &vec![int(1); ks.n()]).unwrap();
        prop_assert_eq!(eqs.equations.len(), ks.n());
        for (k, g) in eqs.equations.iter().enumerate() {
            prop_assert_eq!(g.weighted_degree(), Some(ks.ladder().alpha(k + 1) * ks.omega()[k + 1]));
        }
    }
}

#[test]
fn essential_moduli_sets() {
    for ks in normal_primitive().iter().filter(|k| k.is_essential() && k.n() >= 1) {
        let r = moduli_essential(ks).unwrap();
        for k in 0..r.omega_check_sets.len() {
            for v in &r.omega_check_alg_sets[k] {
                assert!(r.omega_check_sets[k].contains(v), "{ks}: alg set not inside");
            }
            for v in &r.excluded_sets[k] {
                assert!(!r.omega_check_sets[k].contains(v), "{ks}: excluded value {v} kept");
            }
        }
    }
}

#[test]
fn fixed_moduli_torus_dimension() {
    for ks in normal_primitive().iter().filter(|k| k.is_algebraic()) {
        let r = moduli_fixed(ks).unwrap();
        assert_eq!(r.torus_dim, (ks.n() as i64 - 2).max(0), "{ks}");
    }
}

#[test]
fn gorenstein_index_matches_search() {
    for ks in normal_primitive().iter().take(400) {
        let k = canonical_coefficient(ks).unwrap();
        let a = ks.ladder().alpha(ks.n() + 1);
        let w = ks.last();
        let brute = (1..=10_000).find(|m| (m * k) % a == 0 && (m * k) % w == 0).unwrap();
        assert_eq!(gorenstein_index(ks, k), brute, "{ks}");
    }
}

#[test]
fn enumeration_is_stable() {
    let b = Bounds::new(10, 5).unwrap();
    let f = Filter::parse_list("primitive").unwrap();
    let one = enumerate(b, &f, 1);
    assert_eq!(one, enumerate(b, &f, 3));
    assert_eq!(one, enumerate(b, &f, 1));
    assert!(one.windows(2).all(|p| p[0].omega() < p[1].omega()));
}

#[test]
fn representations_and_algebraicity() {
    let all = enumerate(Bounds::new(12, 5).unwrap(), &[], 4);
    for ks in &all {
        let w = ks.omega();
        let l = ks.ladder();
        let mut alg_by_semigroup = true;
        for k in 1..=ks.n() {
            let rep = bounded_representation(ks, k).unwrap();
            let sum: i64 = rep.beta.iter().zip(w).map(|(b, x)| b * x).sum();
            assert_eq!(sum, l.alpha(k) * w[k], "{ks} k={k}");
            alg_by_semigroup &= semigroup_member(&w[..k], l.alpha(k) * w[k]).is_some();
        }
        assert_eq!(ks.is_algebraic(), alg_by_semigroup, "{ks}");
        assert_eq!(validate(w).is_algebraic, alg_by_semigroup, "{ks}");
        if ks.is_algebraic() {
            assert!(essential_subsequence(ks).1.is_algebraic(), "{ks}");
        }
    }
}

#[test]
fn key_forms_have_their_weights() {
    for ks in normal_primitive() {
        let kf = build_key_forms(ks, &vec![int(1); ks.n()]).unwrap();
        for (j, g) in kf.g.iter().enumerate() {
            assert_eq!(semidegree(g, &kf).unwrap(), ks.omega()[j], "{ks} g_{j}");
        }
        assert_eq!(semidegree(&kf.last().derivative_y(), &kf).unwrap(), ks.weighted_excess(), "{ks}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deg_y_is_additive(f in poly(), g in poly()) {
        prop_assert_eq!((&f * &g).deg_y(), Some(f.deg_y().unwrap() + g.deg_y().unwrap()));
    }

    #[test]
    fn polynomial_degrees_lie_in_the_semigroup(i in 0usize..200, f in poly()) {
        let alg: Vec<&KeySequence> = normal_primitive().iter().filter(|k| k.is_algebraic()).collect();
        let ks = alg[i % alg.len()];
        let f = f.shift(6, 0);
        let kf = build_key_forms(ks, &vec![int(1); ks.n()]).unwrap();
        let d = semidegree(&f, &kf).unwrap();
        prop_assert!(semigroup_member(ks.omega(), d).is_some(), "{} {}", ks, d);
    }

    #[test]
    fn moduli_exponents_match_theta_scaling(s in series(), a in coeff(), c in coeff()) {
        let kd = key_data_from_series(&s).unwrap();
        if let Ok(m) = moduli_fixed(&kd.omega) {
            let moved = key_data_from_series(&scale_series(&s, &a, &c).unwrap()).unwrap();
            for i in 0..kd.omega.n() {
                let (ec, ea) = m.action_exponents[i];
                let w0 = kd.omega.omega()[0];
                prop_assert_eq!(&moved.theta[i], &(rpow(&c, ec) * rpow(&a, ea * w0) * &kd.theta[i]));
            }
        }
    }

    #[test]
    fn normal_leading_weight_is_minimal(s in series(), a in coeff(), c in coeff(), b in -2i64..=2, fs in prop::collection::vec(-3i64..=3, 0..4)) {
        if let Ok((t, _)) = normalize_series(&s) {
            let w0 = key_data_from_series(&t).unwrap().omega.omega()[0];
            let f: UniPoly = fs.iter().enumerate().filter(|(_, v)| **v != 0).map(|(e, v)| (e as u32, int(*v))).collect();
            if let Ok(moved) = coordinate_change(&t, &a, &c, &f, &int(b)) {
                prop_assert!(key_data_from_series(&moved).unwrap().omega.omega()[0] >= w0);
            }
        }
    }
}
