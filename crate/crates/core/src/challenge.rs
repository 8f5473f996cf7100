//! Reproducible challenge problems: a public file with everything an
//! eavesdropper sees, and an answer file with the secrets, both derived from
//! one seed so the answer file can regenerate and check the public one.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::ore::{dense_term_count, ore_random, OrePolynomial, OreRing};
use crate::protocols::kex::run_exchange;
use crate::protocols::three_pass::three_pass;
use crate::protocols::{ParameterShape, PrivateTuple, PublicParameters};

/// Name of the pinned generator, recorded in every file header.
pub const RNG_NAME: &str = "chacha20";
pub const FORMAT_LINE: &str = "# ore-kex v1";

/// The generator used for every seeded operation.
pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// `# ore-kex v1`, the ring line and the seed line.
pub fn file_header(ring: &OreRing, seed: Option<u64>) -> String {
    let mut out = format!("{FORMAT_LINE}\n{ring}\n");
    if let Some(seed) = seed {
        let _ = writeln!(out, "seed {seed} rng={RNG_NAME}");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChallengeProtocol {
    Exchange,
    ThreePass,
}

impl ChallengeProtocol {
    pub fn tag(&self) -> &'static str {
        match self {
            ChallengeProtocol::Exchange => "exchange",
            ChallengeProtocol::ThreePass => "three-pass",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "exchange" => Ok(ChallengeProtocol::Exchange),
            "three-pass" => Ok(ChallengeProtocol::ThreePass),
            _ => Err(Error::Parse(format!("unknown protocol `{tag}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChallengeBundle {
    pub public: String,
    pub answer: String,
}

fn shape_line(shape: &ParameterShape) -> String {
    let opt = |v: Option<usize>| v.map_or_else(|| "default".to_owned(), |v| v.to_string());
    format!(
        "shape dL={} dPQ={} nu={} l_terms={} pq_terms={}",
        shape.d_l,
        shape.d_pq,
        shape.nu,
        opt(shape.l_terms),
        opt(shape.pq_terms)
    )
}

fn parse_shape_line(line: &str) -> Result<ParameterShape> {
    let rest = line
        .strip_prefix("shape ")
        .ok_or_else(|| Error::Parse(format!("expected a shape line, found `{line}`")))?;
    let mut shape = ParameterShape::new(0, 0, 0);
    for word in rest.split_whitespace() {
        let (k, v) = word
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("malformed shape entry `{word}`")))?;
        let num = || v.parse::<u64>().map_err(|_| Error::Parse(format!("bad number `{v}`")));
        let opt = || -> Result<Option<usize>> {
            if v == "default" {
                Ok(None)
            } else {
                Ok(Some(num()? as usize))
            }
        };
        match k {
            "dL" => shape.d_l = num()? as u32,
            "dPQ" => shape.d_pq = num()? as u32,
            "nu" => shape.nu = num()? as usize,
            "l_terms" => shape.l_terms = opt()?,
            "pq_terms" => shape.pq_terms = opt()?,
            _ => return Err(Error::Parse(format!("unknown shape entry `{k}`"))),
        }
    }
    Ok(shape)
}

fn describe_private(who: &str, t: &PrivateTuple) -> String {
    format!("{who} f={} g={}\n", t.f, t.g)
}

/// Draws a secret of the shape of `L` that commutes with neither generator.
fn draw_secret(
    params: &PublicParameters,
    shape: &ParameterShape,
    rng: &mut ChaCha20Rng,
) -> Result<OrePolynomial> {
    let terms = shape
        .l_terms
        .unwrap_or_else(|| params.l.len().min(dense_term_count(&params.ring, shape.d_l) as usize));
    for _ in 0..crate::commuting::RESAMPLE_LIMIT {
        let s = ore_random(&params.ring, shape.d_l, terms, rng)?;
        if !s.commutes_with(&params.p)? && !s.commutes_with(&params.q)? {
            return Ok(s);
        }
    }
    Err(Error::ResampleExhausted(crate::commuting::RESAMPLE_LIMIT))
}

/// Builds the public and answer files for one seeded protocol run.
pub fn generate(
    ring: &Arc<OreRing>,
    protocol: ChallengeProtocol,
    shape: ParameterShape,
    seed: u64,
) -> Result<ChallengeBundle> {
    let mut rng = seeded_rng(seed);
    let params = PublicParameters::generate(ring, shape, &mut rng)?;
    let header = format!(
        "{}{}\nchallenge {}\n",
        file_header(ring, Some(seed)),
        shape_line(&shape),
        protocol.tag()
    );
    let mut public = header.clone();
    let _ = writeln!(public, "L: {}\nP: {}\nQ: {}", params.l, params.p, params.q);
    let mut answer = header;
    match protocol {
        ChallengeProtocol::Exchange => {
            let outcome = run_exchange(&params, &mut rng)?;
            if !outcome.agreed() {
                return Err(Error::Precondition("parties disagree".into()));
            }
            public.push_str(&outcome.transcript.to_string());
            answer.push_str(&describe_private("alice", &outcome.alice));
            answer.push_str(&describe_private("bob", &outcome.bob));
            let _ = writeln!(answer, "key: {}", outcome.alice_key);
        }
        ChallengeProtocol::ThreePass => {
            let secret = draw_secret(&params, &shape, &mut rng)?;
            let outcome = three_pass(&params, &secret, &mut rng)?;
            if outcome.recovered != secret {
                return Err(Error::Precondition("three-pass did not recover the secret".into()));
            }
            public.push_str(&outcome.transcript.to_string());
            answer.push_str(&describe_private("alice", &outcome.alice));
            answer.push_str(&describe_private("bob", &outcome.bob));
            let _ = writeln!(answer, "secret: {secret}");
        }
    }
    Ok(ChallengeBundle { public, answer })
}

/// Reads ring, seed, shape and protocol back from an answer file, regenerates
/// the bundle, and checks that both files match what was given.
pub fn replay(public: &str, answer: &str) -> Result<bool> {
    let mut lines = answer.lines();
    if lines.next() != Some(FORMAT_LINE) {
        return Err(Error::Parse("missing format line".into()));
    }
    let ring: OreRing = lines
        .next()
        .ok_or_else(|| Error::Parse("missing ring line".into()))?
        .parse()?;
    let seed_line = lines.next().ok_or_else(|| Error::Parse("missing seed line".into()))?;
    let seed = seed_line
        .strip_prefix("seed ")
        .and_then(|s| s.split_whitespace().next())
        .and_then(|s| s.parse::<u64>().ok())
        .ok_or_else(|| Error::Parse(format!("malformed seed line `{seed_line}`")))?;
    if !seed_line.contains(&format!("rng={RNG_NAME}")) {
        return Err(Error::Parse(format!("answer file was not produced with {RNG_NAME}")));
    }
    let shape = parse_shape_line(lines.next().unwrap_or_default())?;
    let protocol = lines
        .next()
        .and_then(|l| l.strip_prefix("challenge "))
        .ok_or_else(|| Error::Parse("missing challenge line".into()))
        .and_then(ChallengeProtocol::from_tag)?;
    let bundle = generate(&Arc::new(ring), protocol, shape, seed)?;
    Ok(bundle.public == public && bundle.answer == answer)
}
