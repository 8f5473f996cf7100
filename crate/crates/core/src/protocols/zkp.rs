//! Identification by knowledge of a factorization `L = l1 * l2`.
//!
//! Each round the prover commits to `pi = p1 L p2` together with the degree
//! profiles of fresh `p1`, `p2`. The verifier then asks either for `p1`, `p2`
//! (and checks the product and the announced degrees) or for a split
//! `pi = pi1 * pi2` in which `pi1` strictly exceeds `p1` in some `d_i`-degree
//! and is nowhere smaller, and likewise `pi2` against `p2`. An honest prover
//! answers with `pi1 = p1 l1`, `pi2 = l2 p2`.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ore::{dense_term_count, ore_random, DegreeProfile, OrePolynomial, OreRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commitment {
    pub pi: OrePolynomial,
    pub deg_p1: DegreeProfile,
    pub deg_p2: DegreeProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Challenge {
    RevealFactors,
    RevealSplit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Response {
    Factors { p1: OrePolynomial, p2: OrePolynomial },
    Split { pi1: OrePolynomial, pi2: OrePolynomial },
}

/// One completed round as the verifier saw it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZkpRound {
    pub commitment: Commitment,
    pub challenge: Challenge,
    pub response: Response,
    pub accepted: bool,
}

pub trait Prover {
    fn commit(&mut self, rng: &mut dyn rand::RngCore) -> Result<Commitment>;
    fn respond(&mut self, challenge: Challenge) -> Result<Response>;
}

/// How the prover draws its blinding factors `p1`, `p2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlinderShape {
    pub degree: u32,
    pub terms: usize,
}

impl BlinderShape {
    /// Degree `degree` with every monomial, capped at 64 terms.
    pub fn of_degree(ring: &OreRing, degree: u32) -> Self {
        Self {
            degree,
            terms: dense_term_count(ring, degree).min(64) as usize,
        }
    }

    fn sample(&self, ring: &Arc<OreRing>, rng: &mut dyn rand::RngCore) -> Result<OrePolynomial> {
        ore_random(ring, self.degree, self.terms, rng)
    }
}

fn profile(h: &OrePolynomial) -> Result<DegreeProfile> {
    h.degree_profile()
        .ok_or_else(|| Error::Precondition("zero polynomial in the protocol".into()))
}

fn has_positive_ore_degree(h: &OrePolynomial) -> bool {
    h.degree_profile().is_some_and(|d| d.per_var.iter().any(|&e| e > 0))
}

/// Knows `l1`, `l2` with `L = l1 * l2`.
#[derive(Debug, Clone)]
pub struct HonestProver {
    l: OrePolynomial,
    l1: OrePolynomial,
    l2: OrePolynomial,
    shape: BlinderShape,
    current: Option<(OrePolynomial, OrePolynomial)>,
}

impl HonestProver {
    pub fn new(l1: OrePolynomial, l2: OrePolynomial, shape: BlinderShape) -> Result<Self> {
        if !has_positive_ore_degree(&l1) || !has_positive_ore_degree(&l2) {
            return Err(Error::Precondition(
                "both factors need positive degree in some d_i".into(),
            ));
        }
        Ok(Self {
            l: l1.try_mul(&l2)?,
            l1,
            l2,
            shape,
            current: None,
        })
    }

    pub fn public_l(&self) -> &OrePolynomial {
        &self.l
    }
}

impl Prover for HonestProver {
    fn commit(&mut self, rng: &mut dyn rand::RngCore) -> Result<Commitment> {
        let ring = Arc::clone(self.l.ring());
        let p1 = self.shape.sample(&ring, rng)?;
        let p2 = self.shape.sample(&ring, rng)?;
        let commitment = Commitment {
            pi: p1.try_mul(&self.l)?.try_mul(&p2)?,
            deg_p1: profile(&p1)?,
            deg_p2: profile(&p2)?,
        };
        self.current = Some((p1, p2));
        Ok(commitment)
    }

    fn respond(&mut self, challenge: Challenge) -> Result<Response> {
        let (p1, p2) = self
            .current
            .take()
            .ok_or_else(|| Error::Precondition("respond called before commit".into()))?;
        Ok(match challenge {
            Challenge::RevealFactors => Response::Factors { p1, p2 },
            Challenge::RevealSplit => Response::Split {
                pi1: p1.try_mul(&self.l1)?,
                pi2: self.l2.try_mul(&p2)?,
            },
        })
    }
}

/// Knows no factorization. Commits to `p1' p1'' L p2` and, having to fix the
/// announced degrees first, prepares for one challenge chosen at random: the
/// factor reveal (announcing the degree of `p1' p1''`) or the split reveal
/// (answering `p1'`, `p1'' L p2` and announcing a `p1` degree one lower than
/// `p1'` in a single variable).
#[derive(Debug, Clone)]
pub struct SplitCheater {
    l: OrePolynomial,
    shape: BlinderShape,
    current: Option<[OrePolynomial; 3]>,
}

impl SplitCheater {
    pub fn new(l: OrePolynomial, shape: BlinderShape) -> Self {
        Self {
            l,
            shape,
            current: None,
        }
    }
}

impl Prover for SplitCheater {
    fn commit(&mut self, rng: &mut dyn rand::RngCore) -> Result<Commitment> {
        let ring = Arc::clone(self.l.ring());
        let mut p1a = self.shape.sample(&ring, rng)?;
        while !has_positive_ore_degree(&p1a) {
            p1a = self.shape.sample(&ring, rng)?;
        }
        let p1b = self.shape.sample(&ring, rng)?;
        let p2 = self.shape.sample(&ring, rng)?;
        let p1 = p1a.try_mul(&p1b)?;
        let pi = p1.try_mul(&self.l)?.try_mul(&p2)?;
        let deg_p1 = if rng.random::<bool>() {
            profile(&p1)?
        } else {
            let mut d = profile(&p1a)?;
            let i = d.per_var.iter().position(|&e| e > 0).expect("positive degree");
            d.per_var[i] -= 1;
            d.total -= 1;
            d
        };
        let commitment = Commitment {
            pi,
            deg_p1,
            deg_p2: profile(&p2)?,
        };
        self.current = Some([p1a, p1b, p2]);
        Ok(commitment)
    }

    fn respond(&mut self, challenge: Challenge) -> Result<Response> {
        let [p1a, p1b, p2] = self
            .current
            .take()
            .ok_or_else(|| Error::Precondition("respond called before commit".into()))?;
        Ok(match challenge {
            Challenge::RevealFactors => Response::Factors {
                p1: p1a.try_mul(&p1b)?,
                p2,
            },
            Challenge::RevealSplit => Response::Split {
                pi1: p1a,
                pi2: p1b.try_mul(&self.l)?.try_mul(&p2)?,
            },
        })
    }
}

/// Commits honestly to `p1 L p2` but answers the split challenge with
/// `(p1, L p2)`, which needs no factorization.
#[derive(Debug, Clone)]
pub struct TrivialSplitCheater {
    l: OrePolynomial,
    shape: BlinderShape,
    current: Option<(OrePolynomial, OrePolynomial)>,
}

impl TrivialSplitCheater {
    pub fn new(l: OrePolynomial, shape: BlinderShape) -> Self {
        Self {
            l,
            shape,
            current: None,
        }
    }
}

impl Prover for TrivialSplitCheater {
    fn commit(&mut self, rng: &mut dyn rand::RngCore) -> Result<Commitment> {
        let ring = Arc::clone(self.l.ring());
        let p1 = self.shape.sample(&ring, rng)?;
        let p2 = self.shape.sample(&ring, rng)?;
        let commitment = Commitment {
            pi: p1.try_mul(&self.l)?.try_mul(&p2)?,
            deg_p1: profile(&p1)?,
            deg_p2: profile(&p2)?,
        };
        self.current = Some((p1, p2));
        Ok(commitment)
    }

    fn respond(&mut self, challenge: Challenge) -> Result<Response> {
        let (p1, p2) = self
            .current
            .take()
            .ok_or_else(|| Error::Precondition("respond called before commit".into()))?;
        Ok(match challenge {
            Challenge::RevealFactors => Response::Factors { p1, p2 },
            Challenge::RevealSplit => Response::Split {
                pi1: p1,
                pi2: self.l.try_mul(&p2)?,
            },
        })
    }
}

/// `outer >= inner` in every `d_i`-degree and `>` in at least one.
fn strictly_dominates(outer: &DegreeProfile, inner: &DegreeProfile) -> bool {
    outer.per_var.len() == inner.per_var.len()
        && outer.per_var.iter().zip(&inner.per_var).all(|(a, b)| a >= b)
        && outer.per_var.iter().zip(&inner.per_var).any(|(a, b)| a > b)
}

#[derive(Debug, Clone)]
pub struct Verifier {
    l: OrePolynomial,
}

impl Verifier {
    pub fn new(l: OrePolynomial) -> Self {
        Self { l }
    }

    pub fn challenge<R: Rng + ?Sized>(&self, rng: &mut R) -> Challenge {
        if rng.random::<bool>() {
            Challenge::RevealFactors
        } else {
            Challenge::RevealSplit
        }
    }

    /// Round verdict. Any malformed or mismatched response is a rejection.
    pub fn check(&self, commitment: &Commitment, challenge: Challenge, response: &Response) -> bool {
        let check = || -> Result<bool> {
            Ok(match (challenge, response) {
                (Challenge::RevealFactors, Response::Factors { p1, p2 }) => {
                    p1.degree_profile().as_ref() == Some(&commitment.deg_p1)
                        && p2.degree_profile().as_ref() == Some(&commitment.deg_p2)
                        && p1.try_mul(&self.l)?.try_mul(p2)? == commitment.pi
                }
                (Challenge::RevealSplit, Response::Split { pi1, pi2 }) => {
                    let (Some(d1), Some(d2)) = (pi1.degree_profile(), pi2.degree_profile()) else {
                        return Ok(false);
                    };
                    strictly_dominates(&d1, &commitment.deg_p1)
                        && strictly_dominates(&d2, &commitment.deg_p2)
                        && pi1.try_mul(pi2)? == commitment.pi
                }
                _ => false,
            })
        };
        check().unwrap_or(false)
    }
}

/// Runs up to `rounds` rounds, stopping at the first rejection.
pub fn run_rounds(
    prover: &mut dyn Prover,
    verifier: &Verifier,
    rounds: usize,
    prover_rng: &mut dyn rand::RngCore,
    verifier_rng: &mut dyn rand::RngCore,
) -> Result<Vec<ZkpRound>> {
    let mut log = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let commitment = prover.commit(prover_rng)?;
        let challenge = verifier.challenge(verifier_rng);
        let response = prover.respond(challenge)?;
        let accepted = verifier.check(&commitment, challenge, &response);
        log.push(ZkpRound {
            commitment,
            challenge,
            response,
            accepted,
        });
        if !accepted {
            break;
        }
    }
    Ok(log)
}
