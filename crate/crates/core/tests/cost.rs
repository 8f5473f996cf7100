use ore_kex::cost::{
    cost_brute_force, cost_initial_message, cost_powers, cost_powers_recursive, cost_secret_param,
    cost_shared_secret, key_size_kb, matches_published, report, SecurityTuple, PUBLISHED_TABLE,
};

#[test]
fn every_published_row_is_reproduced() {
    for row in PUBLISHED_TABLE {
        let (d_l, d_pq, nu) = row.tuple;
        let t = SecurityTuple::new(d_l, d_pq, nu);
        let r = report(&t);
        assert!(matches_published(r.secret_param, row.secret_param), "{:?}: {}", row.tuple, r.secret_param);
        assert!(matches_published(r.initial_message, row.initial_message), "{:?}: {}", row.tuple, r.initial_message);
        assert!(matches_published(r.shared_secret, row.shared_secret), "{:?}: {}", row.tuple, r.shared_secret);
        assert_eq!(r.key_size_kb, row.key_size_kb, "{:?}", row.tuple);
    }
}

#[test]
fn hand_computed_values() {
    let t = SecurityTuple::new(30, 5, 10);
    // 625/8 * (5 * 11^5 - 11^4/2 + 11^3/3 - 10/30 - 1/30)
    assert!((cost_powers(10, 5) - 62_373_265.625).abs() < 1e-6);
    // (50^4 + 65^4) / 8
    assert_eq!(cost_initial_message(&t), (50f64.powi(4) + 65f64.powi(4)) / 8.0);
    // (115^4 + 165^4) / 8
    assert_eq!(cost_shared_secret(&t), (115f64.powi(4) + 165f64.powi(4)) / 8.0);
    // ((30 + 400) / 2)^2 / 1024 = 45.14...
    assert_eq!(key_size_kb(&t), 46);
    assert!(cost_secret_param(&t) > 2.0 * cost_powers(10, 5));
    assert_eq!(cost_powers_recursive(1, 5), 0.0);
    assert_eq!(cost_powers_recursive(3, 2), (2f64.powi(4) + 4f64.powi(4)) / 8.0);
}

#[test]
fn recursion_stays_below_the_printed_closed_form() {
    for nu in 1..=60 {
        for d in [1, 3, 5, 10] {
            assert!(cost_powers_recursive(nu, d) <= cost_powers(nu, d), "nu={nu} d={d}");
        }
    }
}

#[test]
fn brute_force_estimate_grows_with_nu_and_p() {
    let mut last = 0.0;
    for nu in 1..=60 {
        let v = cost_brute_force(&SecurityTuple::new(30, 5, nu));
        assert!(v > last);
        last = v;
    }
    let mut t = SecurityTuple::new(30, 5, 10);
    let base = cost_brute_force(&t);
    t.p = 3;
    assert!(cost_brute_force(&t) > base);
    t.p = 4;
    assert_eq!(key_size_kb(&t), 91);
}

#[test]
fn brute_force_dominates_honest_work() {
    let t = SecurityTuple::new(30, 5, 10);
    let r = report(&t);
    let honest = r.secret_param + r.initial_message + r.shared_secret;
    let ratio = r.brute_force / honest;
    assert!(ratio > 1e3, "ratio {ratio}");
    for row in PUBLISHED_TABLE {
        let (d_l, d_pq, nu) = row.tuple;
        let r = report(&SecurityTuple::new(d_l, d_pq, nu));
        assert!(r.brute_force > r.secret_param + r.initial_message + r.shared_secret);
    }
}
