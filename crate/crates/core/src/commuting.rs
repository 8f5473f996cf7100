//! Commuting private-key pools: every `f(P)` with `f` over the prime field
//! commutes with every other `g(P)`, since both are polynomials in `P`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{fmt_vec, is_prime, parse_vec};
use crate::ore::OrePolynomial;

/// How many fresh `f` to try before giving up on a public pair `(P, L)`.
pub const RESAMPLE_LIMIT: usize = 100;

/// `f = f0 + f1 X + ... + fm X^m` over `F_p`, with `f0 != 0` and `m >= 1`.
///
/// A nonzero constant term keeps an eavesdropper from peeling a factor `P`
/// off `f(P)`, and a constant `f` would give a central, useless key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstantPolynomial {
    p: u32,
    coeffs: Vec<u32>,
}

impl ConstantPolynomial {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidConstantPolynomial(
                "degree must be at least 1".into(),
            ));
        }
        if coeffs[0] == 0 {
            return Err(Error::InvalidConstantPolynomial(
                "constant coefficient must be nonzero".into(),
            ));
        }
        Ok(Self { p, coeffs })
    }

    /// Uniform among valid polynomials of degree exactly `degree`.
    pub fn random<R: Rng + ?Sized>(p: u32, degree: usize, rng: &mut R) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidConstantPolynomial(
                "degree must be at least 1".into(),
            ));
        }
        let coeffs = (0..=degree)
            .map(|i| {
                if i == 0 || i == degree {
                    rng.random_range(1..p)
                } else {
                    rng.random_range(0..p)
                }
            })
            .collect();
        Self::new(p, coeffs)
    }

    /// Parses `[f0,f1,...,fm]`.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        Self::new(p, parse_vec(s)?)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `f0..fm`, constant term first.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `f(P)` by Horner's scheme.
    pub fn evaluate_at(&self, point: &OrePolynomial) -> Result<OrePolynomial> {
        let ring = point.ring();
        if ring.characteristic() != self.p {
            return Err(Error::RingMismatch);
        }
        // Prime-field elements are stored under their own value in both ring kinds.
        let constant = |c: u32| OrePolynomial::constant(ring, c);
        let mut acc = constant(*self.coeffs.last().expect("degree >= 1"));
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * point) + &constant(c);
        }
        Ok(acc)
    }
}

impl fmt::Display for ConstantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_vec(&self.coeffs))
    }
}

/// Draws `f` of degree `degree` until `f(point)` does not commute with `l`.
pub fn sample_private<R: Rng + ?Sized>(
    point: &OrePolynomial,
    l: &OrePolynomial,
    degree: usize,
    rng: &mut R,
) -> Result<(ConstantPolynomial, OrePolynomial)> {
    if point.commutes_with(l)? {
        return Err(Error::Precondition(
            "the public generator commutes with L".into(),
        ));
    }
    let p = point.ring().characteristic();
    for _ in 0..RESAMPLE_LIMIT {
        let f = ConstantPolynomial::random(p, degree, rng)?;
        let value = f.evaluate_at(point)?;
        if !value.commutes_with(l)? {
            return Ok((f, value));
        }
    }
    Err(Error::ResampleExhausted(RESAMPLE_LIMIT))
}
