//! Shamir-style three-pass transport of a secret `L`: Alice locks it with her
//! pair, Bob adds his, Alice removes hers, and Bob removes his. Locks from the
//! same pool commute, so they can be taken off in either order.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ore::{left_cofactor, right_cofactor, OrePolynomial};

use super::{Party, PrivateTuple, PublicParameters, Transcript};

#[derive(Debug, Clone)]
pub struct ThreePassOutcome {
    pub recovered: OrePolynomial,
    pub alice: PrivateTuple,
    pub bob: PrivateTuple,
    pub transcript: Transcript,
}

/// `x = P * y * Q`  =>  `y`.
pub fn unwrap(private: &PrivateTuple, x: &OrePolynomial) -> Result<OrePolynomial> {
    left_cofactor(&right_cofactor(x, &private.p_side)?, &private.q_side)
}

/// Sends `secret` from Alice to Bob. The public `L` of `params` is not used;
/// only the ring and the generators `P`, `Q` are.
pub fn three_pass<R: Rng + ?Sized>(
    params: &PublicParameters,
    secret: &OrePolynomial,
    rng: &mut R,
) -> Result<ThreePassOutcome> {
    if secret.ring() != &params.ring {
        return Err(Error::RingMismatch);
    }
    if secret.commutes_with(&params.p)? || secret.commutes_with(&params.q)? {
        return Err(Error::Precondition(
            "the secret must not commute with the public generators".into(),
        ));
    }
    let alice = PrivateTuple::sample(params, secret, rng)?;
    let bob = PrivateTuple::sample(params, secret, rng)?;
    let mut transcript = Transcript::new("three-pass");

    let first = alice.wrap(secret)?;
    transcript.push(Party::Alice, "P_A_L_Q_A", first.clone());
    let middle = bob.wrap(&first)?;
    transcript.push(Party::Bob, "P_int", middle.clone());
    let last = unwrap(&alice, &middle)?;
    transcript.push(Party::Alice, "P_B_L_Q_B", last.clone());
    let recovered = unwrap(&bob, &last)?;
    Ok(ThreePassOutcome {
        recovered,
        alice,
        bob,
        transcript,
    })
}
