//! Graded elements of the Weyl algebra.
//!
//! The algebra is `Z^n`-graded by giving `x_i` weight `-1` and `d_i` weight
//! `+1` in coordinate `i`. A homogeneous element, one where every term
//! `x^e d^w` has the same `w - e`, factors through commutative factorization,
//! so a private key of that shape leaks.

use std::fmt;

use crate::error::{Error, Result};
use crate::ore::{OrePolynomial, RingKind};

/// The common value of `w - e` over all terms of a graded element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradingVector(pub Vec<i64>);

impl fmt::Display for GradingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The grading vector of `h`, or `None` when two terms disagree.
///
/// Errors on the zero polynomial and on skew rings.
pub fn grading_vector(h: &OrePolynomial) -> Result<Option<GradingVector>> {
    if h.ring().kind() != RingKind::Weyl {
        return Err(Error::InvalidRing("gradings are defined for Weyl algebras".into()));
    }
    if h.is_zero() {
        return Err(Error::Precondition("the zero polynomial has no grading".into()));
    }
    let n = h.ring().n_ore_vars();
    let weight = |exps: &[u32]| -> Vec<i64> {
        (0..n).map(|i| exps[n + i] as i64 - exps[i] as i64).collect()
    };
    let mut terms = h.terms().iter();
    let first = weight(terms.next().expect("nonzero").0.exponents());
    for (m, _) in terms {
        if weight(m.exponents()) != first {
            return Ok(None);
        }
    }
    Ok(Some(GradingVector(first)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakKeyReason {
    Graded(GradingVector),
    CommutesWithL,
}

impl WeakKeyReason {
    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            WeakKeyReason::Graded(_) => "graded",
            WeakKeyReason::CommutesWithL => "commutes",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Screening {
    Accept,
    Reject(WeakKeyReason),
}

/// Rejects a candidate private element of a Weyl algebra that is graded or
/// that commutes with the public `l`.
pub fn screen_private_key(h: &OrePolynomial, l: &OrePolynomial) -> Result<Screening> {
    if let Some(z) = grading_vector(h)? {
        return Ok(Screening::Reject(WeakKeyReason::Graded(z)));
    }
    if h.commutes_with(l)? {
        return Ok(Screening::Reject(WeakKeyReason::CommutesWithL));
    }
    Ok(Screening::Accept)
}
