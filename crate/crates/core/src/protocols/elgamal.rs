//! ElGamal-style public-key encryption.
//!
//! Alice publishes `P_Alice = P_A L Q_A`. Bob picks his own pair, sends
//! `P_Bob = P_B L Q_B`, and multiplies the message on the right by
//! `P_final = P_B P_Alice Q_B`. Alice forms the same `P_final` as
//! `P_A P_Bob Q_A` and divides it off.

use rand::Rng;

use crate::error::Result;
use crate::ore::{left_cofactor, OrePolynomial};

use super::{PrivateTuple, PublicParameters};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub private: PrivateTuple,
    /// `P_A * L * Q_A`
    pub public: OrePolynomial,
}

impl KeyPair {
    pub fn generate<R: Rng + ?Sized>(params: &PublicParameters, rng: &mut R) -> Result<Self> {
        let private = PrivateTuple::sample(params, &params.l, rng)?;
        let public = private.wrap(&params.l)?;
        Ok(Self { private, public })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    /// `m * P_final`
    pub body: OrePolynomial,
    /// `P_B * L * Q_B`
    pub p_bob: OrePolynomial,
}

/// Encrypts `m` to the holder of `public`. Also returns Bob's `P_final`.
pub fn encrypt<R: Rng + ?Sized>(
    params: &PublicParameters,
    public: &OrePolynomial,
    m: &OrePolynomial,
    rng: &mut R,
) -> Result<(Ciphertext, OrePolynomial)> {
    let bob = PrivateTuple::sample(params, &params.l, rng)?;
    let p_final = bob.wrap(public)?;
    let ciphertext = Ciphertext {
        body: m.try_mul(&p_final)?,
        p_bob: bob.wrap(&params.l)?,
    };
    Ok((ciphertext, p_final))
}

/// `P_A * P_Bob * Q_A`
pub fn shared_multiplier(private: &PrivateTuple, ciphertext: &Ciphertext) -> Result<OrePolynomial> {
    private.wrap(&ciphertext.p_bob)
}

/// Recovers `m`; a tampered ciphertext usually fails with
/// [`crate::Error::NotDivisible`].
pub fn decrypt(private: &PrivateTuple, ciphertext: &Ciphertext) -> Result<OrePolynomial> {
    left_cofactor(&ciphertext.body, &shared_multiplier(private, ciphertext)?)
}
