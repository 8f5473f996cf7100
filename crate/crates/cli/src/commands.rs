use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ore_kex::challenge::{self, seeded_rng, ChallengeProtocol};
use ore_kex::cost::{self, SecurityTuple, PUBLISHED_TABLE};
use ore_kex::ore::dense_term_count;
use ore_kex::protocols::elgamal::{self, Ciphertext};
use ore_kex::protocols::encoding::{decode_bytes, encode_bytes};
use ore_kex::protocols::kex::run_exchange;
use ore_kex::protocols::signature::{self, SignatureTuple, SigningKey};
use ore_kex::protocols::three_pass::three_pass;
use ore_kex::protocols::zkp::{
    run_rounds, BlinderShape, Challenge, HonestProver, Prover, SplitCheater, TrivialSplitCheater,
    Verifier,
};
use ore_kex::{
    grading_vector, ore_random, screen_private_key, OrePolynomial, OreRing, ParameterShape,
    PrivateTuple, PublicParameters, Screening,
};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest as _, Sha256};

use crate::args::{
    ChallengeKind, Cli, Command, Digest, MessageArgs, ParamsSource, ProverKind, ShapeArgs,
};
use crate::document::Document;
use crate::{CliError, EXIT_FAILED, EXIT_OK};

type CmdResult = Result<i32, CliError>;

pub fn execute(cli: Cli, out: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Keygen {
            source,
            seed,
            params_out,
            key_out,
            public_out,
        } => keygen(&source, seed, params_out, key_out, public_out, out),
        Command::Exchange { source, seed, out: path } => exchange(&source, seed, path, out),
        Command::ThreePass {
            source,
            seed,
            secret,
            out: path,
        } => three_pass_cmd(&source, seed, secret, path, out),
        Command::Encrypt {
            params,
            public,
            message,
            seed,
            out: path,
        } => encrypt(&params, &public, &message, seed, path, out),
        Command::Decrypt {
            params,
            key,
            ciphertext,
            out: path,
        } => decrypt(&params, &key, &ciphertext, path, out),
        Command::Sign {
            params,
            key,
            message,
            digest,
            seed,
            out: path,
        } => sign(&params, &key, &message, digest, seed, path, out),
        Command::Verify {
            params,
            public,
            signature,
            message,
            digest,
        } => verify(&params, &public, &signature, &message, digest, out),
        Command::Zkp {
            ring,
            factor_degree,
            blinder_degree,
            rounds,
            prover,
            seed,
            out: path,
        } => zkp(&ring, factor_degree, blinder_degree, rounds, prover, seed, path, out),
        Command::CheckWeak { ring, poly, l } => check_weak(&ring, &poly, l.as_deref(), out),
        Command::Estimate {
            d_l,
            d_pq,
            nu,
            p,
            omega,
            table,
        } => {
            if table {
                estimate_table(out)
            } else {
                let missing = || CliError::Input("--dL, --dPQ and --nu are required".into());
                let mut t = SecurityTuple::new(
                    d_l.ok_or_else(missing)?,
                    d_pq.ok_or_else(missing)?,
                    nu.ok_or_else(missing)?,
                );
                t.p = p;
                t.omega = omega;
                estimate(&t, out)
            }
        }
        Command::Challenge {
            protocol,
            shape,
            seed,
            out_dir,
            replay,
        } => match replay {
            Some(paths) => challenge_replay(&paths[0], &paths[1], out),
            None => {
                let protocol = protocol.ok_or_else(|| CliError::Input("--protocol is required".into()))?;
                let seed = seed.ok_or_else(|| CliError::Input("--seed is required".into()))?;
                challenge_generate(protocol, &shape, seed, &out_dir, out)
            }
        },
    }
}

fn resolve_ring(name: &str) -> Result<Arc<OreRing>, CliError> {
    if name.trim_start().starts_with("ring ") {
        Ok(Arc::new(name.parse::<OreRing>()?))
    } else {
        Ok(OreRing::by_alias(name)?)
    }
}

fn shape_of(args: &ShapeArgs) -> ParameterShape {
    let mut shape = ParameterShape::new(args.d_l, args.d_pq, args.nu);
    shape.l_terms = args.l_terms;
    shape.pq_terms = args.pq_terms;
    shape
}

fn params_from_document(doc: &Document) -> Result<PublicParameters, CliError> {
    let nu = doc
        .get("nu")?
        .parse()
        .map_err(|_| CliError::Input("`nu` must be a positive integer".into()))?;
    Ok(PublicParameters::new(doc.poly("L")?, doc.poly("P")?, doc.poly("Q")?, nu)?)
}

fn push_params(doc: &mut Document, params: &PublicParameters) {
    doc.push("nu", params.nu)
        .push("L", &params.l)
        .push("P", &params.p)
        .push("Q", &params.q);
}

fn read_params(path: &Path) -> Result<PublicParameters, CliError> {
    params_from_document(&Document::read(path)?)
}

/// Reads the parameter file when one is given, otherwise draws parameters
/// of the requested shape from `rng`.
fn obtain_params(source: &ParamsSource, rng: &mut ChaCha20Rng) -> Result<PublicParameters, CliError> {
    match &source.params {
        Some(path) => read_params(path),
        None => {
            let ring = resolve_ring(&source.shape.ring)?;
            Ok(PublicParameters::generate(&ring, shape_of(&source.shape), rng)?)
        }
    }
}

fn emit(path: Option<&Path>, text: &[u8], out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => Ok(out.write_all(text)?),
    }
}

fn message_bytes(args: &MessageArgs) -> Result<Option<Vec<u8>>, CliError> {
    match (&args.message, &args.message_file) {
        (Some(text), _) => Ok(Some(text.as_bytes().to_vec())),
        (None, Some(path)) => std::fs::read(path)
            .map(Some)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display()))),
        (None, None) => Ok(None),
    }
}

fn required_message(args: &MessageArgs) -> Result<Vec<u8>, CliError> {
    message_bytes(args)?.ok_or_else(|| CliError::Input("give --message or --message-file".into()))
}

/// The bytes that get encoded: the message itself or its digest.
fn signed_bytes(bytes: &[u8], digest: Option<Digest>) -> Vec<u8> {
    match digest {
        Some(Digest::Sha256) => Sha256::digest(bytes).to_vec(),
        None => bytes.to_vec(),
    }
}

fn read_private(params: &PublicParameters, path: &Path) -> Result<(PrivateTuple, OrePolynomial), CliError> {
    let doc = Document::read(path)?;
    let private = PrivateTuple::from_polynomials(
        params,
        &params.l,
        doc.constant_poly("f")?,
        doc.constant_poly("g")?,
    )?;
    let public = doc.poly("public")?;
    if private.wrap(&params.l)? != public {
        return Err(CliError::Input("key file: public key does not match f, g".into()));
    }
    Ok((private, public))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn keygen(
    source: &ParamsSource,
    seed: u64,
    params_out: Option<PathBuf>,
    key_out: Option<PathBuf>,
    public_out: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let mut rng = seeded_rng(seed);
    let params = obtain_params(source, &mut rng)?;
    if source.params.is_none() {
        let mut doc = Document::new(&params.ring, Some(seed));
        push_params(&mut doc, &params);
        emit(params_out.as_deref(), doc.render().as_bytes(), out)?;
    }
    let key = SigningKey::generate(&params, &mut rng)?;
    let mut private = Document::new(&params.ring, Some(seed));
    private
        .push("f", &key.private.f)
        .push("g", &key.private.g)
        .push("public", &key.public);
    emit(key_out.as_deref(), private.render().as_bytes(), out)?;
    if let Some(path) = public_out {
        let mut public = Document::new(&params.ring, None);
        public.push("public", &key.public);
        emit(Some(&path), public.render().as_bytes(), out)?;
    }
    Ok(EXIT_OK)
}

fn exchange(source: &ParamsSource, seed: u64, path: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    let mut rng = seeded_rng(seed);
    let params = obtain_params(source, &mut rng)?;
    let outcome = run_exchange(&params, &mut rng)?;
    let mut doc = Document::new(&params.ring, Some(seed));
    push_params(&mut doc, &params);
    for line in outcome.transcript.to_string().lines() {
        doc.push_line(line);
    }
    doc.push("key", &outcome.alice_key)
        .push("agreed", yes_no(outcome.agreed()));
    emit(path.as_deref(), doc.render().as_bytes(), out)?;
    Ok(if outcome.agreed() { EXIT_OK } else { EXIT_FAILED })
}

fn random_secret(
    params: &PublicParameters,
    shape: &ShapeArgs,
    rng: &mut ChaCha20Rng,
) -> Result<OrePolynomial, CliError> {
    let terms = shape
        .l_terms
        .unwrap_or_else(|| dense_term_count(&params.ring, shape.d_l).min(params.l.len() as u64) as usize);
    for _ in 0..ore_kex::commuting::RESAMPLE_LIMIT {
        let s = ore_random(&params.ring, shape.d_l, terms, rng)?;
        if !s.commutes_with(&params.p)? && !s.commutes_with(&params.q)? {
            return Ok(s);
        }
    }
    Err(ore_kex::Error::ResampleExhausted(ore_kex::commuting::RESAMPLE_LIMIT).into())
}

fn three_pass_cmd(
    source: &ParamsSource,
    seed: u64,
    secret: Option<String>,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let mut rng = seeded_rng(seed);
    let params = obtain_params(source, &mut rng)?;
    let secret = match secret {
        Some(text) => OrePolynomial::parse(&params.ring, &text)?,
        None => random_secret(&params, &source.shape, &mut rng)?,
    };
    let outcome = three_pass(&params, &secret, &mut rng)?;
    let ok = outcome.recovered == secret;
    let mut doc = Document::new(&params.ring, Some(seed));
    push_params(&mut doc, &params);
    for line in outcome.transcript.to_string().lines() {
        doc.push_line(line);
    }
    doc.push("recovered", &outcome.recovered)
        .push("matches", yes_no(ok));
    emit(path.as_deref(), doc.render().as_bytes(), out)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn encrypt(
    params_path: &Path,
    public_path: &Path,
    message: &MessageArgs,
    seed: u64,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let params = read_params(params_path)?;
    let public = Document::read(public_path)?.poly("public")?;
    let m = encode_bytes(&params.ring, &required_message(message)?)?;
    let mut rng = seeded_rng(seed);
    let (ct, _) = elgamal::encrypt(&params, &public, &m, &mut rng)?;
    let mut doc = Document::new(&params.ring, Some(seed));
    doc.push("body", &ct.body).push("p_bob", &ct.p_bob);
    emit(path.as_deref(), doc.render().as_bytes(), out)?;
    Ok(EXIT_OK)
}

fn decrypt(
    params_path: &Path,
    key_path: &Path,
    ct_path: &Path,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let params = read_params(params_path)?;
    let (private, _) = read_private(&params, key_path)?;
    let doc = Document::read(ct_path)?;
    let ct = Ciphertext {
        body: doc.poly("body")?,
        p_bob: doc.poly("p_bob")?,
    };
    let bytes = decode_bytes(&elgamal::decrypt(&private, &ct)?)?;
    emit(path.as_deref(), &bytes, out)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn sign(
    params_path: &Path,
    key_path: &Path,
    message: &MessageArgs,
    digest: Option<Digest>,
    seed: u64,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let params = read_params(params_path)?;
    let (private, public) = read_private(&params, key_path)?;
    let key = SigningKey { private, public };
    let bytes = signed_bytes(&required_message(message)?, digest);
    let mut rng = seeded_rng(seed);
    let sig = signature::sign_digest(&params, &key, &bytes, &mut rng)?;
    let mut doc = Document::new(&params.ring, Some(seed));
    for (name, value) in SignatureTuple::FIELD_NAMES.iter().zip(sig.fields()) {
        doc.push(name, value);
    }
    emit(path.as_deref(), doc.render().as_bytes(), out)?;
    Ok(EXIT_OK)
}

fn verify(
    params_path: &Path,
    public_path: &Path,
    sig_path: &Path,
    message: &MessageArgs,
    digest: Option<Digest>,
    out: &mut dyn Write,
) -> CmdResult {
    let params = read_params(params_path)?;
    let public = Document::read(public_path)?.poly("public")?;
    let doc = Document::read(sig_path)?;
    let mut fields = Vec::with_capacity(8);
    for name in SignatureTuple::FIELD_NAMES {
        fields.push(doc.poly(name)?);
    }
    let sig = SignatureTuple::from_fields(fields.try_into().expect("eight fields"));
    let mut valid = signature::verify(&params.l, &public, &sig)?;
    if let Some(bytes) = message_bytes(message)? {
        let expected = encode_bytes(&params.ring, &signed_bytes(&bytes, digest))?;
        valid &= expected == sig.m;
    }
    writeln!(out, "{}", if valid { "valid" } else { "invalid" })?;
    Ok(if valid { EXIT_OK } else { EXIT_FAILED })
}

fn random_factor(ring: &Arc<OreRing>, degree: u32, rng: &mut ChaCha20Rng) -> Result<OrePolynomial, CliError> {
    let terms = dense_term_count(ring, degree).min(16) as usize;
    for _ in 0..ore_kex::commuting::RESAMPLE_LIMIT {
        let h = ore_random(ring, degree, terms, rng)?;
        if h.degree_profile().is_some_and(|d| d.per_var.iter().any(|&e| e > 0)) {
            return Ok(h);
        }
    }
    Err(ore_kex::Error::ResampleExhausted(ore_kex::commuting::RESAMPLE_LIMIT).into())
}

#[allow(clippy::too_many_arguments)]
fn zkp(
    ring: &str,
    factor_degree: u32,
    blinder_degree: u32,
    rounds: usize,
    kind: ProverKind,
    seed: u64,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let ring = resolve_ring(ring)?;
    let mut prover_rng = seeded_rng(seed);
    let mut verifier_rng = seeded_rng(seed);
    verifier_rng.set_stream(1);
    let l1 = random_factor(&ring, factor_degree, &mut prover_rng)?;
    let l2 = random_factor(&ring, factor_degree, &mut prover_rng)?;
    let shape = BlinderShape::of_degree(&ring, blinder_degree);
    let honest = HonestProver::new(l1, l2, shape)?;
    let l = honest.public_l().clone();
    let mut prover: Box<dyn Prover> = match kind {
        ProverKind::Honest => Box::new(honest),
        ProverKind::Split => Box::new(SplitCheater::new(l.clone(), shape)),
        ProverKind::Trivial => Box::new(TrivialSplitCheater::new(l.clone(), shape)),
    };
    let verifier = Verifier::new(l.clone());
    let log = run_rounds(prover.as_mut(), &verifier, rounds, &mut prover_rng, &mut verifier_rng)?;
    let passed = log.iter().filter(|r| r.accepted).count();
    let all = passed == rounds;
    let mut doc = Document::new(&ring, Some(seed));
    doc.push("L", &l);
    for (i, round) in log.iter().enumerate() {
        let challenge = match round.challenge {
            Challenge::RevealFactors => "factors",
            Challenge::RevealSplit => "split",
        };
        let verdict = if round.accepted { "accept" } else { "reject" };
        doc.push(&format!("round {}", i + 1), format!("{challenge} {verdict}"));
    }
    doc.push("accepted_rounds", format!("{passed}/{}", log.len()))
        .push("verdict", if all { "accept" } else { "reject" });
    emit(path.as_deref(), doc.render().as_bytes(), out)?;
    Ok(if all { EXIT_OK } else { EXIT_FAILED })
}

fn check_weak(ring: &str, poly: &str, l: Option<&str>, out: &mut dyn Write) -> CmdResult {
    let ring = resolve_ring(ring)?;
    let h = OrePolynomial::parse(&ring, poly)?;
    let grading = grading_vector(&h)?;
    match &grading {
        Some(z) => writeln!(out, "grading: {z}")?,
        None => writeln!(out, "grading: none")?,
    }
    let mut weak = grading.is_some();
    if let Some(l) = l {
        let l = OrePolynomial::parse(&ring, l)?;
        match screen_private_key(&h, &l)? {
            Screening::Accept => writeln!(out, "screen: accept")?,
            Screening::Reject(reason) => {
                weak = true;
                writeln!(out, "screen: reject ({})", reason.code())?;
            }
        }
    }
    Ok(if weak { EXIT_FAILED } else { EXIT_OK })
}

fn estimate(t: &SecurityTuple, out: &mut dyn Write) -> CmdResult {
    let r = cost::report(t);
    writeln!(out, "dL={} dPQ={} nu={} p={} omega={}", t.d_l, t.d_pq, t.nu, t.p, t.omega)?;
    writeln!(out, "secret_param: {:.6e}", r.secret_param)?;
    writeln!(out, "initial_message: {:.6e}", r.initial_message)?;
    writeln!(out, "shared_secret: {:.6e}", r.shared_secret)?;
    writeln!(out, "key_size_kb: {}", r.key_size_kb)?;
    writeln!(out, "brute_force: {:.6e}", r.brute_force)?;
    Ok(EXIT_OK)
}

fn estimate_table(out: &mut dyn Write) -> CmdResult {
    let mut all = true;
    writeln!(
        out,
        "# computed (published); the brute-force column is a model estimate and is not compared"
    )?;
    for row in PUBLISHED_TABLE {
        let (d_l, d_pq, nu) = row.tuple;
        let r = cost::report(&SecurityTuple::new(d_l, d_pq, nu));
        let ok = cost::matches_published(r.secret_param, row.secret_param)
            && cost::matches_published(r.initial_message, row.initial_message)
            && cost::matches_published(r.shared_secret, row.shared_secret)
            && r.key_size_kb == row.key_size_kb;
        all &= ok;
        writeln!(
            out,
            "({d_l},{d_pq},{nu}) secret={:.6e} ({:.6e}) initial={:.6e} ({:.6e}) shared={:.6e} ({:.6e}) key_kb={} ({}) brute={:.6e} ({:.6e}) {}",
            r.secret_param,
            row.secret_param,
            r.initial_message,
            row.initial_message,
            r.shared_secret,
            row.shared_secret,
            r.key_size_kb,
            row.key_size_kb,
            r.brute_force,
            row.brute_force,
            if ok { "PASS" } else { "FAIL" }
        )?;
    }
    writeln!(out, "table: {}", if all { "PASS" } else { "FAIL" })?;
    Ok(if all { EXIT_OK } else { EXIT_FAILED })
}

fn challenge_generate(
    kind: ChallengeKind,
    shape: &ShapeArgs,
    seed: u64,
    dir: &Path,
    out: &mut dyn Write,
) -> CmdResult {
    let protocol = match kind {
        ChallengeKind::Exchange => ChallengeProtocol::Exchange,
        ChallengeKind::ThreePass => ChallengeProtocol::ThreePass,
    };
    let ring = resolve_ring(&shape.ring)?;
    let bundle = challenge::generate(&ring, protocol, shape_of(shape), seed)?;
    let public = dir.join(format!("challenge-{}-{seed}.txt", protocol.tag()));
    let answer = dir.join(format!("challenge-{}-{seed}-answer.txt", protocol.tag()));
    emit(Some(&public), bundle.public.as_bytes(), out)?;
    emit(Some(&answer), bundle.answer.as_bytes(), out)?;
    writeln!(out, "public: {}", public.display())?;
    writeln!(out, "answer: {}", answer.display())?;
    Ok(EXIT_OK)
}

fn challenge_replay(public: &Path, answer: &Path, out: &mut dyn Write) -> CmdResult {
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))
    };
    let ok = challenge::replay(&read(public)?, &read(answer)?)?;
    writeln!(out, "replay: {}", if ok { "ok" } else { "mismatch" })?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}
