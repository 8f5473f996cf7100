//! ElGamal-style signatures.
//!
//! The signer holds `a1 = f(P)`, `a2 = g(Q)` with public `P_Alice = a1 L a2`.
//! For a message `m` she draws `k1`, `k2` from the same pools and random
//! `q1`, `q2`, and publishes
//!
//! ```text
//! gamma = k1 L k2    eps1 = k1 L a2    eps2 = a1 L k2
//! r1 = m - gamma a1 - q1 k1            r2 = m - a2 gamma - k2 q2
//! ```
//!
//! A verifier checks `(m - r1) L (m - r2)` against
//! `q1 gamma q2 + q1 eps1 gamma + gamma eps2 q2 + gamma P_Alice gamma`.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::ore::{ore_random, OrePolynomial, OreRing};

use super::encoding::encode_bytes;
use super::{PrivateTuple, PublicParameters};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTuple {
    pub m: OrePolynomial,
    pub gamma: OrePolynomial,
    pub q1: OrePolynomial,
    pub r1: OrePolynomial,
    pub q2: OrePolynomial,
    pub r2: OrePolynomial,
    pub eps1: OrePolynomial,
    pub eps2: OrePolynomial,
}

impl SignatureTuple {
    pub const FIELD_NAMES: [&'static str; 8] = ["m", "gamma", "q1", "r1", "q2", "r2", "eps1", "eps2"];

    pub fn fields(&self) -> [&OrePolynomial; 8] {
        [
            &self.m, &self.gamma, &self.q1, &self.r1, &self.q2, &self.r2, &self.eps1, &self.eps2,
        ]
    }

    pub fn from_fields(fields: [OrePolynomial; 8]) -> Self {
        let [m, gamma, q1, r1, q2, r2, eps1, eps2] = fields;
        Self {
            m,
            gamma,
            q1,
            r1,
            q2,
            r2,
            eps1,
            eps2,
        }
    }

    /// `(m - r1) * L * (m - r2)`
    pub fn sig_left(&self, l: &OrePolynomial) -> Result<OrePolynomial> {
        self.m
            .try_sub(&self.r1)?
            .try_mul(l)?
            .try_mul(&self.m.try_sub(&self.r2)?)
    }

    /// `q1 gamma q2 + q1 eps1 gamma + gamma eps2 q2 + gamma P_Alice gamma`
    pub fn sig_right(&self, public: &OrePolynomial) -> Result<OrePolynomial> {
        let g = &self.gamma;
        let terms = [
            self.q1.try_mul(g)?.try_mul(&self.q2)?,
            self.q1.try_mul(&self.eps1)?.try_mul(g)?,
            g.try_mul(&self.eps2)?.try_mul(&self.q2)?,
            g.try_mul(public)?.try_mul(g)?,
        ];
        terms
            .iter()
            .skip(1)
            .try_fold(terms[0].clone(), |acc, t| acc.try_add(t))
    }
}

/// Signing key `(a1, a2)` with its public `P_Alice = a1 L a2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigningKey {
    pub private: PrivateTuple,
    pub public: OrePolynomial,
}

impl SigningKey {
    pub fn generate<R: Rng + ?Sized>(params: &PublicParameters, rng: &mut R) -> Result<Self> {
        let private = PrivateTuple::sample(params, &params.l, rng)?;
        let public = private.wrap(&params.l)?;
        Ok(Self { private, public })
    }
}

/// Ephemeral values of one signature, kept for inspection in tests.
#[derive(Debug, Clone)]
pub struct Nonces {
    pub k: PrivateTuple,
}

/// Signs with explicit `q1`, `q2`.
pub fn sign_with(
    params: &PublicParameters,
    key: &SigningKey,
    m: &OrePolynomial,
    nonces: &Nonces,
    q1: OrePolynomial,
    q2: OrePolynomial,
) -> Result<SignatureTuple> {
    let (a1, a2) = (&key.private.p_side, &key.private.q_side);
    let (k1, k2) = (&nonces.k.p_side, &nonces.k.q_side);
    let l = &params.l;
    let gamma = k1.try_mul(l)?.try_mul(k2)?;
    let eps1 = k1.try_mul(l)?.try_mul(a2)?;
    let eps2 = a1.try_mul(l)?.try_mul(k2)?;
    let r1 = m.try_sub(&gamma.try_mul(a1)?)?.try_sub(&q1.try_mul(k1)?)?;
    let r2 = m.try_sub(&a2.try_mul(&gamma)?)?.try_sub(&k2.try_mul(&q2)?)?;
    Ok(SignatureTuple {
        m: m.clone(),
        gamma,
        q1,
        r1,
        q2,
        r2,
        eps1,
        eps2,
    })
}

fn random_blinder<R: Rng + ?Sized>(ring: &Arc<OreRing>, degree: u32, rng: &mut R) -> Result<OrePolynomial> {
    let terms = crate::ore::dense_term_count(ring, degree).min(64) as usize;
    ore_random(ring, degree, terms, rng)
}

/// Signs `m` with fresh nonces and random `q1`, `q2` of the same degree as `P`.
pub fn sign<R: Rng + ?Sized>(
    params: &PublicParameters,
    key: &SigningKey,
    m: &OrePolynomial,
    rng: &mut R,
) -> Result<(SignatureTuple, Nonces)> {
    let nonces = Nonces {
        k: PrivateTuple::sample(params, &params.l, rng)?,
    };
    let degree = params.p.total_degree().unwrap_or(0);
    let q1 = random_blinder(&params.ring, degree, rng)?;
    let q2 = random_blinder(&params.ring, degree, rng)?;
    let sig = sign_with(params, key, m, &nonces, q1, q2)?;
    Ok((sig, nonces))
}

/// Signs the byte encoding of a caller-supplied digest instead of a raw
/// polynomial.
pub fn sign_digest<R: Rng + ?Sized>(
    params: &PublicParameters,
    key: &SigningKey,
    digest: &[u8],
    rng: &mut R,
) -> Result<SignatureTuple> {
    let m = encode_bytes(&params.ring, digest)?;
    Ok(sign(params, key, &m, rng)?.0)
}

/// Accepts iff `sig_left == sig_right`.
pub fn verify(l: &OrePolynomial, public: &OrePolynomial, sig: &SignatureTuple) -> Result<bool> {
    Ok(sig.sig_left(l)? == sig.sig_right(public)?)
}
