use std::sync::Arc;

use rand::Rng;

use crate::commuting::{sample_private, ConstantPolynomial, RESAMPLE_LIMIT};
use crate::error::{Error, Result};
use crate::ore::{dense_term_count, ore_random, OrePolynomial, OreRing, RingKind};
use crate::weak_keys::{screen_private_key, Screening};

/// Largest term count for which an unspecified shape means "fully dense".
const DENSE_DEFAULT_LIMIT: u64 = 4096;
/// Term count used when a dense polynomial would be larger than that.
const SPARSE_DEFAULT_TERMS: usize = 32;

/// Degrees and sparsity of freshly generated public parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterShape {
    /// Total degree of `L`.
    pub d_l: u32,
    /// Total degree of the generators `P` and `Q`.
    pub d_pq: u32,
    /// Degree of the private polynomials `f`, `g` over the prime field.
    pub nu: usize,
    /// Term count of `L`; `None` picks every monomial when that is at most
    /// 4096 of them and 32 random ones otherwise.
    pub l_terms: Option<usize>,
    /// Term count of `P` and `Q`, defaulting the same way.
    pub pq_terms: Option<usize>,
}

impl ParameterShape {
    pub fn new(d_l: u32, d_pq: u32, nu: usize) -> Self {
        Self {
            d_l,
            d_pq,
            nu,
            l_terms: None,
            pq_terms: None,
        }
    }
}

fn default_terms(ring: &OreRing, degree: u32, requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| {
        let dense = dense_term_count(ring, degree);
        if dense <= DENSE_DEFAULT_LIMIT {
            dense as usize
        } else {
            SPARSE_DEFAULT_TERMS
        }
    })
}

/// The public data every party shares: the ring, a non-central `L`, and the
/// generators `P`, `Q` of the two commuting pools.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicParameters {
    pub ring: Arc<OreRing>,
    pub l: OrePolynomial,
    pub p: OrePolynomial,
    pub q: OrePolynomial,
    pub nu: usize,
}

impl PublicParameters {
    /// Checks that neither `P` nor `Q` commutes with `L`; either witness also
    /// shows that `L` is not central.
    pub fn new(l: OrePolynomial, p: OrePolynomial, q: OrePolynomial, nu: usize) -> Result<Self> {
        if nu == 0 {
            return Err(Error::Precondition("nu must be at least 1".into()));
        }
        if p.commutes_with(&l)? {
            return Err(Error::Precondition("P commutes with L".into()));
        }
        if q.commutes_with(&l)? {
            return Err(Error::Precondition("Q commutes with L".into()));
        }
        Ok(Self {
            ring: Arc::clone(l.ring()),
            l,
            p,
            q,
            nu,
        })
    }

    /// Samples `L`, `P`, `Q` of the requested shape, redrawing `P` and `Q`
    /// until they do not commute with `L`.
    pub fn generate<R: Rng + ?Sized>(
        ring: &Arc<OreRing>,
        shape: ParameterShape,
        rng: &mut R,
    ) -> Result<Self> {
        let l_terms = default_terms(ring, shape.d_l, shape.l_terms);
        let pq_terms = default_terms(ring, shape.d_pq, shape.pq_terms);
        let l = ore_random(ring, shape.d_l, l_terms, rng)?;
        let draw = |rng: &mut R| -> Result<OrePolynomial> {
            for _ in 0..RESAMPLE_LIMIT {
                let g = ore_random(ring, shape.d_pq, pq_terms, rng)?;
                if !g.commutes_with(&l)? {
                    return Ok(g);
                }
            }
            Err(Error::ResampleExhausted(RESAMPLE_LIMIT))
        };
        let p = draw(rng)?;
        let q = draw(rng)?;
        Self::new(l, p, q, shape.nu)
    }
}

/// One party's secret: `f(P)` from the left pool and `g(Q)` from the right
/// pool, together with the polynomials that generated them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateTuple {
    pub f: ConstantPolynomial,
    pub g: ConstantPolynomial,
    pub p_side: OrePolynomial,
    pub q_side: OrePolynomial,
}

impl PrivateTuple {
    /// Samples `f`, `g` of degree `nu` so that neither `f(P)` nor `g(Q)`
    /// commutes with `against` (usually `L`). In Weyl algebras a graded
    /// candidate is also redrawn.
    pub fn sample<R: Rng + ?Sized>(
        params: &PublicParameters,
        against: &OrePolynomial,
        rng: &mut R,
    ) -> Result<Self> {
        let screened = |point: &OrePolynomial, rng: &mut R| {
            for _ in 0..RESAMPLE_LIMIT {
                let (f, value) = sample_private(point, against, params.nu, rng)?;
                if params.ring.kind() != RingKind::Weyl
                    || screen_private_key(&value, against)? == Screening::Accept
                {
                    return Ok((f, value));
                }
            }
            Err(Error::ResampleExhausted(RESAMPLE_LIMIT))
        };
        let (f, p_side) = screened(&params.p, rng)?;
        let (g, q_side) = screened(&params.q, rng)?;
        Ok(Self {
            f,
            g,
            p_side,
            q_side,
        })
    }

    /// Builds the tuple `(f(P), g(Q))` for given `f`, `g`, enforcing the same
    /// conditions as [`PrivateTuple::sample`].
    pub fn from_polynomials(
        params: &PublicParameters,
        against: &OrePolynomial,
        f: ConstantPolynomial,
        g: ConstantPolynomial,
    ) -> Result<Self> {
        let p_side = f.evaluate_at(&params.p)?;
        let q_side = g.evaluate_at(&params.q)?;
        for side in [&p_side, &q_side] {
            if params.ring.kind() == RingKind::Weyl {
                if let Screening::Reject(reason) = screen_private_key(side, against)? {
                    return Err(Error::Precondition(format!(
                        "weak private element ({})",
                        reason.code()
                    )));
                }
            } else if side.commutes_with(against)? {
                return Err(Error::Precondition("private element commutes with L".into()));
            }
        }
        Ok(Self {
            f,
            g,
            p_side,
            q_side,
        })
    }

    /// `f(P) * x * g(Q)`.
    pub fn wrap(&self, x: &OrePolynomial) -> Result<OrePolynomial> {
        self.p_side.try_mul(x)?.try_mul(&self.q_side)
    }
}
