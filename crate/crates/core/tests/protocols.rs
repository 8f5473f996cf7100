use std::sync::Arc;

use ore_kex::protocols::elgamal::{decrypt, encrypt, shared_multiplier, Ciphertext, KeyPair};
use ore_kex::protocols::encoding::{decode_bytes, encode_bytes};
use ore_kex::protocols::kex::{exchange_between, run_exchange, KexParty};
use ore_kex::protocols::signature::{sign, sign_digest, sign_with, verify, SignatureTuple, SigningKey};
use ore_kex::protocols::three_pass::three_pass;
use ore_kex::protocols::zkp::{
    run_rounds, BlinderShape, Challenge, HonestProver, Prover, SplitCheater, TrivialSplitCheater,
    Verifier,
};
use ore_kex::{
    ore_random, ConstantPolynomial, Error, OrePolynomial, OreRing, ParameterShape, Party,
    PrivateTuple, PublicParameters, Transcript,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn parse(ring: &Arc<OreRing>, s: &str) -> OrePolynomial {
    OrePolynomial::parse(ring, s).unwrap()
}

fn small_skew(rng: &mut ChaCha20Rng) -> PublicParameters {
    PublicParameters::generate(&OreRing::f125_skew2(), ParameterShape::new(8, 3, 3), rng).unwrap()
}

fn small_weyl(rng: &mut ChaCha20Rng) -> PublicParameters {
    weyl_params(rng, ParameterShape::new(3, 2, 2))
}

/// The signature identity multiplies five factors, so its Weyl instance
/// stays at degree one for the generators.
fn tiny_weyl(rng: &mut ChaCha20Rng) -> PublicParameters {
    weyl_params(rng, ParameterShape::new(2, 1, 1))
}

fn weyl_params(rng: &mut ChaCha20Rng, mut shape: ParameterShape) -> PublicParameters {
    shape.l_terms = Some(6);
    shape.pq_terms = Some(4);
    PublicParameters::generate(&OreRing::weyl3_f71(), shape, rng).unwrap()
}

/// Changes the coefficient of one existing term to another nonzero value.
fn flip_one_coefficient(h: &OrePolynomial, rng: &mut ChaCha20Rng) -> OrePolynomial {
    let ring = h.ring();
    let q = ring.coefficient_order();
    let i = rng.random_range(0..h.len());
    let terms = h.terms().iter().enumerate().map(|(j, (m, c))| {
        let c = if i == j { (c + rng.random_range(1..q)) % q } else { *c };
        (m.clone(), c)
    });
    OrePolynomial::from_terms(ring, terms.filter(|(_, c)| *c != 0)).unwrap()
}

fn example_parameters() -> PublicParameters {
    let ring = OreRing::weyl3_f71();
    PublicParameters::new(
        parse(&ring, "3*x2^2 - 5*d2^2 - x2*d3 - x3 - d2"),
        parse(&ring, "-5*x3^2 - 2*x1*d3 + 34"),
        parse(&ring, "x2^2 + x1*x3 - d3^2 + d3"),
        2,
    )
    .unwrap()
}

fn tuple(params: &PublicParameters, f: &str, g: &str) -> PrivateTuple {
    PrivateTuple::from_polynomials(
        params,
        &params.l,
        ConstantPolynomial::parse(71, f).unwrap(),
        ConstantPolynomial::parse(71, g).unwrap(),
    )
    .unwrap()
}

#[test]
fn worked_weyl_session_agrees() {
    let params = example_parameters();
    let alice = tuple(&params, "[27,22,48]", "[52,5,58]");
    let bob = tuple(&params, "[31,1,3]", "[11,4,24]");

    let p = &params.p;
    let p_a = &(&(p * p).scale(48) + &p.scale(22)) + &OrePolynomial::constant(&params.ring, 27);
    assert_eq!(alice.p_side, p_a);
    let a_part = alice.wrap(&params.l).unwrap();
    assert_eq!(a_part, &(&p_a * &params.l) * &alice.q_side);

    let outcome = exchange_between(
        KexParty::with_private(&params, alice.clone()),
        KexParty::with_private(&params, bob.clone()),
    )
    .unwrap();
    assert!(outcome.agreed());
    assert_ne!(outcome.alice_key, params.l);
    let direct = &(&(&(&alice.p_side * &bob.p_side) * &params.l) * &bob.q_side) * &alice.q_side;
    assert_eq!(outcome.alice_key, direct);
    assert_eq!(outcome.transcript.message("A_part"), Some(&a_part));
}

#[test]
fn seeded_sessions_agree_in_both_ring_kinds() {
    let mut rng = ChaCha20Rng::seed_from_u64(60);
    for params in [small_skew(&mut rng), small_weyl(&mut rng)] {
        for _ in 0..20 {
            let outcome = run_exchange(&params, &mut rng).unwrap();
            assert!(outcome.agreed());
            for party in [&outcome.alice, &outcome.bob] {
                assert!(!party.p_side.commutes_with(&params.l).unwrap());
                assert!(!party.q_side.commutes_with(&params.l).unwrap());
            }
            let a_part = outcome.transcript.message("A_part").unwrap();
            let expected = outcome.alice.p_side.total_degree().unwrap()
                + params.l.total_degree().unwrap()
                + outcome.alice.q_side.total_degree().unwrap();
            assert_eq!(a_part.total_degree(), Some(expected));
        }
    }
}

#[test]
fn transcript_holds_only_public_messages() {
    let mut rng = ChaCha20Rng::seed_from_u64(61);
    let params = small_skew(&mut rng);
    let outcome = run_exchange(&params, &mut rng).unwrap();
    let t = &outcome.transcript;
    assert_eq!(t.protocol(), "exchange");
    let labels: Vec<(Party, &str)> = t.entries().iter().map(|(s, l, _)| (*s, l.as_str())).collect();
    assert_eq!(labels, [(Party::Alice, "A_part"), (Party::Bob, "B_part")]);
    for (_, _, m) in t.entries() {
        for secret in [&outcome.alice.p_side, &outcome.alice.q_side, &outcome.bob.p_side, &outcome.bob.q_side] {
            assert_ne!(m, secret);
        }
    }
    assert_eq!(&Transcript::parse(&params.ring, &t.to_string()).unwrap(), t);
}

#[test]
fn tampered_message_breaks_agreement() {
    let mut rng = ChaCha20Rng::seed_from_u64(62);
    let params = small_skew(&mut rng);
    for _ in 0..20 {
        let alice = KexParty::new(&params, &mut rng).unwrap();
        let bob = KexParty::new(&params, &mut rng).unwrap();
        let a_part = alice.message().unwrap();
        let b_part = bob.message().unwrap();
        let forged = flip_one_coefficient(&a_part, &mut rng);
        assert_ne!(alice.finalize(&b_part).unwrap(), bob.finalize(&forged).unwrap());
    }
    let alice = KexParty::new(&params, &mut rng).unwrap();
    assert!(matches!(
        alice.finalize(&OrePolynomial::zero(&params.ring)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn parameter_validation() {
    let ring = OreRing::f125_skew2();
    let l = parse(&ring, "d1*d2 + d1");
    let central = OrePolynomial::constant(&ring, 3);
    assert!(matches!(
        PublicParameters::new(l.clone(), central, parse(&ring, "d2"), 2),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        PublicParameters::new(l, parse(&ring, "d1"), parse(&ring, "d2"), 0),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn three_pass_recovers_the_secret() {
    let mut rng = ChaCha20Rng::seed_from_u64(63);
    let params = small_skew(&mut rng);
    let mut runs = 0;
    while runs < 100 {
        let secret = ore_random(&params.ring, 8, 20, &mut rng).unwrap();
        if secret.commutes_with(&params.p).unwrap() || secret.commutes_with(&params.q).unwrap() {
            continue;
        }
        let outcome = three_pass(&params, &secret, &mut rng).unwrap();
        assert_eq!(outcome.recovered, secret);
        let (a, b) = (&outcome.alice, &outcome.bob);
        let middle = &(&(&(&a.p_side * &b.p_side) * &secret) * &b.q_side) * &a.q_side;
        let other_order = &(&(&(&b.p_side * &a.p_side) * &secret) * &a.q_side) * &b.q_side;
        assert_eq!(outcome.transcript.message("P_int"), Some(&middle));
        assert_eq!(middle, other_order);
        runs += 1;
    }
}

#[test]
fn three_pass_rejects_a_central_secret() {
    let mut rng = ChaCha20Rng::seed_from_u64(64);
    let params = small_skew(&mut rng);
    assert!(matches!(
        three_pass(&params, &OrePolynomial::one(&params.ring), &mut rng),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn encoding_round_trips() {
    let mut rng = ChaCha20Rng::seed_from_u64(65);
    for ring in [OreRing::f125_skew2(), OreRing::weyl3_f71(), OreRing::weyl(2, 2).unwrap()] {
        for len in [0usize, 1, 2, 17, 300] {
            let bytes: Vec<u8> = (0..len).map(|_| rng.random()).collect();
            let h = encode_bytes(&ring, &bytes).unwrap();
            assert_eq!(decode_bytes(&h).unwrap(), bytes);
        }
    }
    let ring = OreRing::f125_skew2();
    assert!(matches!(decode_bytes(&parse(&ring, "d1")), Err(Error::Encoding(_))));
    let h = encode_bytes(&ring, b"abc").unwrap();
    let extended = &h + &parse(&ring, "d1^40");
    assert!(matches!(decode_bytes(&extended), Err(Error::Encoding(_))));
}

#[test]
fn encryption_round_trips() {
    let mut rng = ChaCha20Rng::seed_from_u64(66);
    let params = small_skew(&mut rng);
    let alice = KeyPair::generate(&params, &mut rng).unwrap();
    for _ in 0..100 {
        let len = rng.random_range(0..40);
        let bytes: Vec<u8> = (0..len).map(|_| rng.random()).collect();
        let m = encode_bytes(&params.ring, &bytes).unwrap();
        let (ct, p_final) = encrypt(&params, &alice.public, &m, &mut rng).unwrap();
        assert_eq!(shared_multiplier(&alice.private, &ct).unwrap(), p_final);
        assert_eq!(decode_bytes(&decrypt(&alice.private, &ct).unwrap()).unwrap(), bytes);
    }
    let one = OrePolynomial::one(&params.ring);
    let (ct, p_final) = encrypt(&params, &alice.public, &one, &mut rng).unwrap();
    assert_eq!(ct.body, p_final);
}

#[test]
fn corrupted_ciphertexts_are_detected() {
    let mut rng = ChaCha20Rng::seed_from_u64(67);
    let params = small_skew(&mut rng);
    let alice = KeyPair::generate(&params, &mut rng).unwrap();
    for round in 0..100 {
        let bytes: Vec<u8> = (0..12).map(|_| rng.random()).collect();
        let m = encode_bytes(&params.ring, &bytes).unwrap();
        let (ct, _) = encrypt(&params, &alice.public, &m, &mut rng).unwrap();
        let bad = if round % 2 == 0 {
            Ciphertext {
                body: flip_one_coefficient(&ct.body, &mut rng),
                p_bob: ct.p_bob.clone(),
            }
        } else {
            Ciphertext {
                body: ct.body.clone(),
                p_bob: flip_one_coefficient(&ct.p_bob, &mut rng),
            }
        };
        match decrypt(&alice.private, &bad) {
            Err(Error::NotDivisible) => {}
            Err(e) => panic!("unexpected error {e}"),
            Ok(m2) => assert!(decode_bytes(&m2).is_err(), "corruption went unnoticed"),
        }
    }
}

fn random_message(params: &PublicParameters, rng: &mut ChaCha20Rng) -> OrePolynomial {
    ore_random(&params.ring, 4, 10, rng).unwrap()
}

#[test]
fn honest_signatures_verify() {
    let mut rng = ChaCha20Rng::seed_from_u64(68);
    let params = small_skew(&mut rng);
    let key = SigningKey::generate(&params, &mut rng).unwrap();
    for _ in 0..100 {
        let m = random_message(&params, &mut rng);
        let (sig, _) = sign(&params, &key, &m, &mut rng).unwrap();
        assert!(verify(&params.l, &key.public, &sig).unwrap());
    }
}

#[test]
fn tampered_messages_are_rejected() {
    let mut rng = ChaCha20Rng::seed_from_u64(69);
    let params = small_skew(&mut rng);
    let key = SigningKey::generate(&params, &mut rng).unwrap();
    for _ in 0..100 {
        let m = random_message(&params, &mut rng);
        let (mut sig, _) = sign(&params, &key, &m, &mut rng).unwrap();
        sig.m = flip_one_coefficient(&sig.m, &mut rng);
        assert!(!verify(&params.l, &key.public, &sig).unwrap());
    }
}

/// `(q1 k1 + gamma a1) L (k2 q2 + a2 gamma)` multiplied out term by term from
/// the private values, compared with both verification sides.
#[test]
fn verification_identity_by_expansion() {
    let mut rng = ChaCha20Rng::seed_from_u64(70);
    for params in [small_skew(&mut rng), tiny_weyl(&mut rng)] {
        let key = SigningKey::generate(&params, &mut rng).unwrap();
        for _ in 0..10 {
            let m = random_message(&params, &mut rng);
            let (sig, nonces) = sign(&params, &key, &m, &mut rng).unwrap();
            let (a1, a2) = (&key.private.p_side, &key.private.q_side);
            let (k1, k2) = (&nonces.k.p_side, &nonces.k.q_side);
            let (q1, q2, g, l) = (&sig.q1, &sig.q2, &sig.gamma, &params.l);
            let left_parts = [&(q1 * k1), &(g * a1)];
            let right_parts = [&(k2 * q2), &(a2 * g)];
            let mut expanded = OrePolynomial::zero(&params.ring);
            for lp in left_parts {
                for rp in right_parts {
                    expanded = &expanded + &(&(lp * l) * rp);
                }
            }
            assert_eq!(sig.sig_left(l).unwrap(), expanded);
            assert_eq!(sig.sig_right(&key.public).unwrap(), expanded);
        }
    }
}

#[test]
fn degenerate_and_digest_signatures() {
    let mut rng = ChaCha20Rng::seed_from_u64(71);
    let params = small_skew(&mut rng);
    let key = SigningKey::generate(&params, &mut rng).unwrap();
    let m = random_message(&params, &mut rng);
    let (_, nonces) = sign(&params, &key, &m, &mut rng).unwrap();
    let zero = OrePolynomial::zero(&params.ring);
    let sig = sign_with(&params, &key, &m, &nonces, zero.clone(), zero).unwrap();
    assert_eq!(sig.r1, &m - &(&sig.gamma * &key.private.p_side));
    assert!(verify(&params.l, &key.public, &sig).unwrap());

    let sig = sign_digest(&params, &key, &[7u8; 32], &mut rng).unwrap();
    assert!(verify(&params.l, &key.public, &sig).unwrap());
    assert_eq!(decode_bytes(&sig.m).unwrap(), vec![7u8; 32]);

    let fields: [OrePolynomial; 8] = sig.fields().map(Clone::clone);
    assert_eq!(SignatureTuple::from_fields(fields), sig);
    assert_eq!(SignatureTuple::FIELD_NAMES.len(), 8);
}

fn zkp_setup(rng: &mut ChaCha20Rng) -> (HonestProver, BlinderShape) {
    let ring = OreRing::f125_skew2();
    let shape = BlinderShape::of_degree(&ring, 2);
    let l1 = ore_random(&ring, 3, 6, rng).unwrap();
    let l2 = ore_random(&ring, 3, 6, rng).unwrap();
    (HonestProver::new(l1, l2, shape).unwrap(), shape)
}

#[test]
fn honest_prover_passes_every_round() {
    let mut rng = ChaCha20Rng::seed_from_u64(72);
    let mut verifier_rng = ChaCha20Rng::seed_from_u64(73);
    let (mut prover, _) = zkp_setup(&mut rng);
    let verifier = Verifier::new(prover.public_l().clone());
    let log = run_rounds(&mut prover, &verifier, 40, &mut rng, &mut verifier_rng).unwrap();
    assert_eq!(log.len(), 40);
    assert!(log.iter().all(|r| r.accepted));
    assert!(log.iter().any(|r| r.challenge == Challenge::RevealFactors));
    assert!(log.iter().any(|r| r.challenge == Challenge::RevealSplit));
}

fn acceptance_rate(prover: &mut dyn Prover, verifier: &Verifier, seed: u64) -> f64 {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut verifier_rng = ChaCha20Rng::seed_from_u64(seed + 1);
    let accepted = (0..200)
        .filter(|_| {
            let commitment = prover.commit(&mut rng).unwrap();
            let challenge = verifier.challenge(&mut verifier_rng);
            let response = prover.respond(challenge).unwrap();
            verifier.check(&commitment, challenge, &response)
        })
        .count();
    accepted as f64 / 200.0
}

#[test]
fn cheating_provers_are_caught() {
    let mut rng = ChaCha20Rng::seed_from_u64(74);
    let (honest, shape) = zkp_setup(&mut rng);
    let l = honest.public_l().clone();
    let verifier = Verifier::new(l.clone());

    let mut split = SplitCheater::new(l.clone(), shape);
    let rate = acceptance_rate(&mut split, &verifier, 75);
    assert!(rate <= 0.6, "split cheater accepted in {rate} of rounds");
    let mut trivial = TrivialSplitCheater::new(l, shape);
    let rate = acceptance_rate(&mut trivial, &verifier, 77);
    assert!(rate <= 0.6, "trivial cheater accepted in {rate} of rounds");

    for seed in 0..10 {
        let mut a = ChaCha20Rng::seed_from_u64(100 + seed);
        let mut b = ChaCha20Rng::seed_from_u64(200 + seed);
        let log = run_rounds(&mut split, &verifier, 20, &mut a, &mut b).unwrap();
        assert!(!log.last().unwrap().accepted);
        let log = run_rounds(&mut trivial, &verifier, 20, &mut a, &mut b).unwrap();
        assert!(!log.last().unwrap().accepted);
    }
}

#[test]
fn factors_of_degree_zero_are_refused() {
    let ring = OreRing::f125_skew2();
    let shape = BlinderShape::of_degree(&ring, 1);
    let c = OrePolynomial::constant(&ring, 4);
    assert!(matches!(
        HonestProver::new(c, parse(&ring, "d1 + 1"), shape),
        Err(Error::Precondition(_))
    ));
}
