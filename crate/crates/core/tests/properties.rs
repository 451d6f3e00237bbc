mod common;

use evenflows::cohomology::{
    grassmannian_presentation, graded_dims_oracle_with_cap, hilbert_series_ci, theta_coinvariant,
    verify_diagram, DiagramCase, HilbertSeries,
};
use evenflows::higgs::{
    apply_hecke, classify, classify_via_weights, delta_from_mu, even_hitchin_multiplicity,
    hecke_path, hitchin_multiplicity, is_very_stable, mu_from_delta, DivisorTuple,
};
use evenflows::weights::{
    even_leq, is_even_minuscule, is_even_minuscule_oracle, lifted_root_coords, positive_roots,
    root_weight_coords, DominantWeight,
};
use evenflows::weyl::{
    binomial, euler_characteristic, poincare_polynomial, signature, GroupSpec, HomogeneousPair,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dominant(n: usize, max: i64) -> impl Strategy<Value = DominantWeight> {
    (prop::collection::vec(0..=max, n - 1), -3i64..=3).prop_map(|(mut c, last)| {
        c.push(last);
        DominantWeight::new(c).unwrap()
    })
}

#[test]
fn lifted_roots_project_to_roots() {
    for n in 1..=12 {
        for r in positive_roots(n) {
            assert_eq!(
                lifted_root_coords(r, n).unwrap().project(),
                root_weight_coords(r, n).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn lifted_lemma_holds(seed in any::<u64>()) {
        let x = common::random_lifted_even(&mut rng(seed), 10);
        prop_assert_eq!(common::lifted_lemma_violation(&x), None, "{:?}", x.coords());
    }

    #[test]
    fn even_order_is_reflexive_and_antisymmetric(
        (a, b) in (2usize..=7).prop_flat_map(|n| (dominant(n, 3), dominant(n, 3)))
    ) {
        prop_assert!(even_leq(&a, &a).unwrap());
        if even_leq(&a, &b).unwrap() && even_leq(&b, &a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn even_order_is_transitive(
        (a, b, c) in (2usize..=6).prop_flat_map(|n| (dominant(n, 3), dominant(n, 3), dominant(n, 3)))
    ) {
        if even_leq(&a, &b).unwrap() && even_leq(&b, &c).unwrap() {
            prop_assert!(even_leq(&a, &c).unwrap());
        }
    }

    #[test]
    fn central_twist_is_invisible(
        (l, t) in ((1usize..=9).prop_flat_map(|n| dominant(n, 3)), -20i64..=20)
    ) {
        prop_assert_eq!(is_even_minuscule(&l), is_even_minuscule(&l.twist(t)));
    }

    #[test]
    fn closed_form_matches_oracle_on_random_weights(
        l in (2usize..=7).prop_flat_map(|n| dominant(n, 2))
    ) {
        let bound = evenflows::weights::default_oracle_bound(&l);
        prop_assert_eq!(is_even_minuscule(&l), is_even_minuscule_oracle(&l, bound));
    }

    #[test]
    fn dictionary_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = common::random_tuple(&mut r, 10);
        prop_assert_eq!(delta_from_mu(&mu_from_delta(&t)), t);
        let mu = common::random_weight_map(&mut r, 10);
        prop_assert_eq!(mu_from_delta(&delta_from_mu(&mu)), mu);
    }

    #[test]
    fn classifiers_agree(seed in any::<u64>()) {
        let t = common::random_tuple(&mut rng(seed), 10);
        let report = classify(&t);
        prop_assert_eq!(report.even_very_stable, classify_via_weights(&t));
        prop_assert_eq!(report.even_very_stable, report.witnesses.is_empty());
        if report.very_stable {
            prop_assert!(report.even_very_stable);
        }
        prop_assert_eq!(report.very_stable, is_very_stable(&t));
    }

    #[test]
    fn divisor_classifier_matches_brute_force(seed in any::<u64>()) {
        let t = common::random_tuple(&mut rng(seed), 6);
        let mu = mu_from_delta(&t);
        let brute = mu.iter().all(|(_, w)| {
            is_even_minuscule_oracle(w, evenflows::weights::default_oracle_bound(w))
        });
        prop_assert_eq!(classify(&t).even_very_stable, brute);
    }

    #[test]
    fn rank_two_is_always_even_very_stable(mults in prop::collection::vec(0i64..=4, 1..=6)) {
        let pts = common::labels(mults.len());
        let entries: Vec<(usize, &str, i64)> =
            pts.iter().zip(&mults).map(|(&p, &m)| (1, p, m)).collect();
        let t = DivisorTuple::from_entries(2, entries).unwrap();
        let r = classify(&t);
        prop_assert!(r.even_very_stable);
        prop_assert_eq!(r.very_stable, mults.iter().all(|&m| m <= 1));
    }

    #[test]
    fn hecke_replay(seed in any::<u64>()) {
        let mu = common::random_weight_map(&mut rng(seed), 10);
        let replay = hecke_path(&mu)
            .iter()
            .try_fold(DivisorTuple::zero(mu.rank()).unwrap(), |acc, op| apply_hecke(&acc, op))
            .unwrap();
        prop_assert_eq!(replay, delta_from_mu(&mu));
    }
}

#[test]
fn multiplicities_match_binomials() {
    for n in 1..=6 {
        for k in 1..n {
            assert_eq!(hitchin_multiplicity(n, k).unwrap(), binomial(n as u64, k as u64));
            assert_eq!(even_hitchin_multiplicity(2 * n, 2 * k).unwrap(), binomial(n as u64, k as u64));
        }
    }
}

fn family_pairs() -> Vec<HomogeneousPair> {
    let mut out = Vec::new();
    for n in 2..=8 {
        for k in 1..n {
            out.push(HomogeneousPair::grassmannian(n, k).unwrap());
        }
    }
    for n in 1..=4 {
        let so = |m| GroupSpec::So(m);
        out.push(HomogeneousPair::new(so(4 * n + 2), GroupSpec::product(vec![so(2), so(4 * n)])).unwrap());
        out.push(HomogeneousPair::new(so(4 * n + 1), so(4 * n)).unwrap());
        out.push(HomogeneousPair::new(so(4 * n), GroupSpec::product(vec![so(2), so(4 * n - 2)])).unwrap());
    }
    for n in 2..=5 {
        for k in 1..n {
            out.push(
                HomogeneousPair::new(
                    GroupSpec::Sp(n),
                    GroupSpec::product(vec![GroupSpec::Sp(k), GroupSpec::Sp(n - k)]),
                )
                .unwrap(),
            );
        }
    }
    for s in ["E6/Spin10xU1", "F4/Spin9", "E6/E6"] {
        out.push(s.parse().unwrap());
    }
    out
}

#[test]
fn poincare_polynomials_satisfy_duality() {
    for pair in family_pairs() {
        let p = poincare_polynomial(&pair).unwrap();
        assert!(p.has_nonnegative_coeffs() && p.is_palindromic(), "{pair}: {p}");
        let (chi, sig) = (euler_characteristic(&pair).unwrap(), signature(&pair).unwrap());
        assert!(sig.abs() <= chi, "{pair}");
        assert_eq!(sig == chi, p.is_even(), "{pair}");
    }
}

#[test]
fn signatures_are_fixed_point_euler_characteristics() {
    for n in 2..=6 {
        for k in 1..n {
            let complex = HomogeneousPair::grassmannian(2 * n, 2 * k).unwrap();
            let quaternionic = HomogeneousPair::new(
                GroupSpec::Sp(n),
                GroupSpec::product(vec![GroupSpec::Sp(k), GroupSpec::Sp(n - k)]),
            )
            .unwrap();
            assert_eq!(signature(&complex).unwrap(), euler_characteristic(&quaternionic).unwrap());
        }
    }
    for n in 1..=4 {
        let quadric: HomogeneousPair = format!("SO{}/SO2xSO{}", 4 * n + 2, 4 * n).parse().unwrap();
        let sphere: HomogeneousPair = format!("SO{}/SO{}", 4 * n + 1, 4 * n).parse().unwrap();
        assert_eq!(signature(&quadric).unwrap(), 2);
        assert_eq!(euler_characteristic(&sphere).unwrap(), 2);
    }
    let cayley: HomogeneousPair = "E6/Spin10xU1".parse().unwrap();
    let real: HomogeneousPair = "F4/Spin9".parse().unwrap();
    assert_eq!(signature(&cayley).unwrap(), euler_characteristic(&real).unwrap());
}

#[test]
fn grassmannian_series_cancels_to_invariant_ring() {
    for n in 2..=8 {
        for k in 1..n {
            let ci = hilbert_series_ci(&grassmannian_presentation(n, k).unwrap()).unwrap();
            let den: Vec<u32> = (1..=k as u32).chain(1..=(n - k) as u32).collect();
            assert_eq!(ci, HilbertSeries::polynomial_ring(&den).unwrap(), "Gr_{k}(C^{n})");
        }
    }
}

#[test]
fn theta_commutes_with_the_series_rule() {
    for n in 2..=4 {
        for k in 1..n {
            let pres = grassmannian_presentation(n, k).unwrap();
            let theta = hilbert_series_ci(&theta_coinvariant(&pres).unwrap()).unwrap();
            let even = |ds: Vec<u32>| ds.into_iter().filter(|d| d % 2 == 0).collect::<Vec<_>>();
            let rule = HilbertSeries::new(even(pres.relation_degrees()), even(pres.generator_degrees())).unwrap();
            assert_eq!(theta, rule, "Gr_{k}(C^{n})");
        }
    }
}

#[test]
fn oracle_matches_series_on_small_grassmannians() {
    for n in 2..=4 {
        for k in 1..n {
            let pres = grassmannian_presentation(n, k).unwrap();
            for p in [pres.clone(), theta_coinvariant(&pres).unwrap()] {
                let dims = graded_dims_oracle_with_cap(&p, 8, 20_000).unwrap();
                let series = hilbert_series_ci(&p).unwrap().coefficients(8);
                let dims: Vec<i64> = dims.into_iter().map(|d| d as i64).collect();
                assert_eq!(dims, series, "{}", p.label);
            }
        }
    }
}

#[test]
fn quaternionic_rank_is_the_complex_signature() {
    for n in 2..=4 {
        for k in 1..n {
            let r = verify_diagram(&DiagramCase::Quaternionic { n, k }, 4).unwrap();
            let pair = HomogeneousPair::grassmannian(2 * n, 2 * k).unwrap();
            assert_eq!(r.rank, signature(&pair).unwrap());
            assert_eq!(r.rank as u64, binomial(n as u64, k as u64));
        }
    }
}
