//! Two-message key agreement: each side sends `P_X * L * Q_X` and wraps the
//! message it receives with its own pair, so both end with
//! `P_A P_B L Q_B Q_A`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ore::OrePolynomial;

use super::{Party, PrivateTuple, PublicParameters, Transcript};

/// One side of the exchange.
#[derive(Debug, Clone)]
pub struct KexParty<'a> {
    params: &'a PublicParameters,
    private: PrivateTuple,
}

impl<'a> KexParty<'a> {
    /// Draws a fresh private tuple that does not commute with `L`.
    pub fn new<R: Rng + ?Sized>(params: &'a PublicParameters, rng: &mut R) -> Result<Self> {
        Ok(Self {
            params,
            private: PrivateTuple::sample(params, &params.l, rng)?,
        })
    }

    pub fn with_private(params: &'a PublicParameters, private: PrivateTuple) -> Self {
        Self { params, private }
    }

    pub fn private(&self) -> &PrivateTuple {
        &self.private
    }

    /// `P_X * L * Q_X`.
    pub fn message(&self) -> Result<OrePolynomial> {
        self.private.wrap(&self.params.l)
    }

    /// `P_X * other * Q_X`.
    pub fn finalize(&self, other: &OrePolynomial) -> Result<OrePolynomial> {
        if other.is_zero() {
            return Err(Error::Precondition("received the zero message".into()));
        }
        self.private.wrap(other)
    }
}

#[derive(Debug, Clone)]
pub struct ExchangeOutcome {
    pub alice_key: OrePolynomial,
    pub bob_key: OrePolynomial,
    pub alice: PrivateTuple,
    pub bob: PrivateTuple,
    pub transcript: Transcript,
}

impl ExchangeOutcome {
    pub fn agreed(&self) -> bool {
        self.alice_key == self.bob_key
    }
}

/// Runs both parties with private tuples drawn from `rng`, Alice first.
pub fn run_exchange<R: Rng + ?Sized>(
    params: &PublicParameters,
    rng: &mut R,
) -> Result<ExchangeOutcome> {
    let alice = KexParty::new(params, rng)?;
    let bob = KexParty::new(params, rng)?;
    exchange_between(alice, bob)
}

/// Runs the exchange between two prepared parties.
pub fn exchange_between(alice: KexParty<'_>, bob: KexParty<'_>) -> Result<ExchangeOutcome> {
    let mut transcript = Transcript::new("exchange");
    let a_part = alice.message()?;
    transcript.push(Party::Alice, "A_part", a_part.clone());
    let b_part = bob.message()?;
    transcript.push(Party::Bob, "B_part", b_part.clone());
    Ok(ExchangeOutcome {
        alice_key: alice.finalize(&b_part)?,
        bob_key: bob.finalize(&a_part)?,
        alice: alice.private,
        bob: bob.private,
        transcript,
    })
}
