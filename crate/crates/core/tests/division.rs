use std::sync::Arc;

use ore_kex::monomial::monomials_of_degree;
use ore_kex::{
    left_cofactor, ore_random, right_cofactor, Error, FieldSpec, OrePolynomial, OreRing,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn parse(ring: &Arc<OreRing>, s: &str) -> OrePolynomial {
    OrePolynomial::parse(ring, s).unwrap()
}

fn random(ring: &Arc<OreRing>, rng: &mut ChaCha20Rng, max_degree: u32, max_terms: u64) -> OrePolynomial {
    let degree = rng.random_range(0..=max_degree);
    let cap = ore_kex::ore::dense_term_count(ring, degree).min(max_terms);
    let terms = rng.random_range(1..=cap) as usize;
    ore_random(ring, degree, terms, rng).unwrap()
}

#[test]
fn trivial_cases() {
    let ring = OreRing::weyl3_f71();
    let d1 = parse(&ring, "d1");
    assert_eq!(right_cofactor(&d1, &d1).unwrap(), OrePolynomial::one(&ring));
    assert_eq!(right_cofactor(&parse(&ring, "d1 + 1"), &parse(&ring, "d2")), Err(Error::NotDivisible));
    let h = parse(&ring, "3*x1*d2^2 + x3 + 5");
    assert_eq!(left_cofactor(&h, &OrePolynomial::one(&ring)).unwrap(), h);
    assert!(matches!(
        left_cofactor(&h, &OrePolynomial::zero(&ring)),
        Err(Error::Precondition(_))
    ));
    assert!(right_cofactor(&OrePolynomial::zero(&ring), &h).unwrap().is_zero());
}

#[test]
fn round_trip_both_sides() {
    let mut rng = ChaCha20Rng::seed_from_u64(21);
    for ring in [OreRing::f125_skew2(), OreRing::weyl3_f71(), OreRing::weyl(3, 2).unwrap()] {
        for _ in 0..200 {
            let p = random(&ring, &mut rng, 6, 12);
            let q = random(&ring, &mut rng, 6, 12);
            let h = &p * &q;
            assert_eq!(right_cofactor(&h, &p).unwrap(), q);
            assert_eq!(left_cofactor(&h, &q).unwrap(), p);
        }
    }
}

#[test]
fn round_trip_at_protocol_sizes() {
    let mut rng = ChaCha20Rng::seed_from_u64(22);
    let ring = OreRing::f125_skew2();
    for _ in 0..5 {
        let p = ore_random(&ring, 25, 100, &mut rng).unwrap();
        let q = ore_random(&ring, 50, 300, &mut rng).unwrap();
        let h = &p * &q;
        assert_eq!(right_cofactor(&h, &p).unwrap(), q);
        assert_eq!(left_cofactor(&h, &q).unwrap(), p);
        let mut tampered = h.terms().to_vec();
        tampered.last_mut().unwrap().1 = (tampered.last().unwrap().1 + 1) % 125;
        let tampered = OrePolynomial::from_terms(&ring, tampered).unwrap();
        assert_eq!(right_cofactor(&tampered, &p), Err(Error::NotDivisible));
        assert_eq!(left_cofactor(&tampered, &q), Err(Error::NotDivisible));
    }
}

#[test]
fn three_pass_chain() {
    let mut rng = ChaCha20Rng::seed_from_u64(23);
    let ring = OreRing::f125_skew2();
    let mut r = |d, t| ore_random(&ring, d, t, &mut rng).unwrap();
    let (p, q, l) = (r(3, 5), r(3, 5), r(20, 30));
    let one = OrePolynomial::one(&ring);
    let (pa, pb) = (&(&p * &p) + &one, &(&p * &p) * &p);
    let (qa, qb) = (&q + &one, &(&q * &q) + &q);
    let via_b_first = &(&(&(&pb * &pa) * &l) * &qa) * &qb;
    let via_a_first = &(&(&(&pa * &pb) * &l) * &qb) * &qa;
    assert_eq!(via_b_first, via_a_first);
    let without_pa = right_cofactor(&via_b_first, &pa).unwrap();
    let stripped = left_cofactor(&without_pa, &qa).unwrap();
    assert_eq!(stripped, &(&pb * &l) * &qb);
}

/// Every polynomial of total degree at most `degree`, by brute force.
fn all_polynomials(ring: &Arc<OreRing>, degree: u32) -> Vec<OrePolynomial> {
    let monomials: Vec<_> = (0..=degree)
        .flat_map(|d| monomials_of_degree(ring.n_exponents(), d))
        .collect();
    let q = ring.coefficient_order() as u64;
    let total = q.pow(monomials.len() as u32);
    (0..total)
        .map(|mut idx| {
            let terms: Vec<_> = monomials
                .iter()
                .map(|m| {
                    let c = (idx % q) as u32;
                    idx /= q;
                    (m.clone(), c)
                })
                .collect();
            OrePolynomial::from_terms(ring, terms).unwrap()
        })
        .collect()
}

fn check_not_divisible_is_sound(ring: &Arc<OreRing>, max_q_degree: u32, seed: u64, cases: usize) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let candidates = all_polynomials(ring, max_q_degree);
    let mut checked = 0;
    while checked < cases {
        let p = random(ring, &mut rng, 1, 3);
        let h = random(ring, &mut rng, p.total_degree().unwrap() + max_q_degree, 4);
        let right = right_cofactor(&h, &p);
        let left = left_cofactor(&h, &p);
        if right.is_ok() && left.is_ok() {
            continue;
        }
        checked += 1;
        for q in &candidates {
            if right == Err(Error::NotDivisible) {
                assert_ne!(&p * q, h, "missed right cofactor {q} of {h} by {p}");
            }
            if left == Err(Error::NotDivisible) {
                assert_ne!(q * &p, h, "missed left cofactor {q} of {h} by {p}");
            }
        }
    }
}

#[test]
fn not_divisible_is_sound_in_small_skew_ring() {
    let f4 = FieldSpec::new(2, vec![1, 1, 1]).unwrap();
    let ring = OreRing::skew(f4, &[1, 0]).unwrap();
    check_not_divisible_is_sound(&ring, 2, 24, 12);
    let f9 = FieldSpec::new(3, vec![1, 0, 1]).unwrap();
    let ring = OreRing::skew(f9, &[1, 1]).unwrap();
    check_not_divisible_is_sound(&ring, 1, 25, 12);
}

#[test]
fn not_divisible_is_sound_in_small_weyl_algebra() {
    let ring = OreRing::weyl(2, 2).unwrap();
    check_not_divisible_is_sound(&ring, 2, 26, 6);
    let ring = OreRing::weyl(3, 2).unwrap();
    check_not_divisible_is_sound(&ring, 1, 27, 12);
}
