//! End-to-end checks across the public API: the sign-flip structure tying
//! each function to its partner, user documents behaving like their catalog
//! twins, and the lemma-formula coefficient families agreeing with the
//! formal-series oracles on randomized maps.

use kindred_core::{
    assemble, catalog, compute_a0, compute_aij, compute_b, derive_all, lookup,
    oracle_log_ratio, oracle_power_difference, oracle_y_difference, parse_spec_file, rat,
    rat_int, Convention, PowerSeries, Rational, SeriesSpec, ThetaScale,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn alternator(k: i64) -> Rational {
    if k % 2 == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

#[test]
fn partner_tables_are_sign_flips_of_each_other() {
    for entry in catalog() {
        let partner = lookup(entry.kindred_partner).expect("partner exists");
        let f = derive_all(&entry.spec);
        let g = derive_all(&partner.spec);
        let name = &entry.spec.name;

        for (i, (cf, cg)) in f.coeffs.c.iter().zip(&g.coeffs.c).enumerate() {
            let i = i as i64;
            assert_eq!(*cg, &alternator(i + 1) * cf, "{name}: c_{i} flip");
        }
        let minus_one = rat_int(-1);
        for (m, (tf, tg)) in f.polys.t.iter().zip(&g.polys.t).enumerate() {
            let m = m as i64 + 1;
            let reflected = tf.scale_var(&minus_one).scale(&alternator(m));
            assert_eq!(*tg, reflected, "{name}: T_{m} reflection");
        }
        for (m, (pf, pg)) in f.polys.p.iter().zip(&g.polys.p).enumerate() {
            let m = m as i64;
            let reflected = pf.scale_var(&minus_one).scale(&alternator(m));
            assert_eq!(*pg, reflected, "{name}: P_{m} reflection");
        }
    }
}

#[test]
fn a_user_document_behaves_like_its_catalog_twin() {
    let text = r#"
        name = "product-log"
        tau = 1
        formula = "B"
        a = ["-1", "3/2", "-8/3", "125/24", "-54/5", "16807/720", "-16384/315", "531441/4480"]
    "#;
    let spec = parse_spec_file(text).unwrap();
    let twin = lookup("lambert-w").unwrap().spec;
    let ours = derive_all(&spec);
    let reference = derive_all(&twin);
    assert_eq!(ours.coeffs.lambda, reference.coeffs.lambda);
    assert_eq!(ours.coeffs.b, reference.coeffs.b);
    assert_eq!(ours.coeffs.a0, reference.coeffs.a0);
    assert_eq!(ours.coeffs.c, reference.coeffs.c);
    assert_eq!(ours.polys.t, reference.polys.t);
    assert_eq!(ours.polys.p, reference.polys.p);

    let depth = spec.depth_j();
    let from_document = assemble(&ours, depth);
    let from_catalog = assemble(&reference, depth);
    assert_eq!(from_document.terms, from_catalog.terms);
    assert_eq!(from_document.tau, from_catalog.tau);
    assert_eq!(from_document.lambda, from_catalog.lambda);
    assert_eq!(from_document.convention, from_catalog.convention);
}

#[test]
fn random_maps_agree_with_the_series_oracles() {
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
    for round in 0..25 {
        let tau = rng.gen_range(1..=4u32);
        let depth = rng.gen_range(2..=7usize);
        let mut a = vec![-rat(rng.gen_range(1..=5), rng.gen_range(1..=5))];
        for _ in 1..depth {
            a.push(rat(rng.gen_range(-6..=6), rng.gen_range(1..=6)));
        }
        let spec = SeriesSpec::new(
            format!("random-{round}"),
            tau,
            a,
            ThetaScale::One,
            Convention::plus_one(),
        )
        .unwrap();
        let series = PowerSeries::from(&spec);

        let b = compute_b(&spec);
        let drift = oracle_y_difference(&series);
        assert_eq!(drift[0], rat_int(1), "round {round}: leading drift");
        assert_eq!(&drift[1..], &b[..], "round {round}: b family");
        assert_eq!(
            oracle_log_ratio(&series),
            compute_a0(&spec, &b),
            "round {round}: a0 family"
        );
        let aij = compute_aij(&spec, &b);
        for i in 1..spec.depth_j() {
            assert_eq!(
                oracle_power_difference(&series, i),
                aij[i - 1],
                "round {round}: power-difference row {i}"
            );
        }
    }
}
