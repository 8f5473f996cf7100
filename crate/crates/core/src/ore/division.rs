//! Exact division by leading-term cancellation.
//!
//! Both rings are domains whose leading monomials multiply, so a cofactor, when
//! it exists, is unique and is recovered one term at a time from the top: the
//! leading term of what remains determines the next quotient term, and a
//! leading monomial that the divisor's does not divide proves that no exact
//! cofactor exists.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monomial::{Exponents, Monomial};

use super::mul::{sparse_product, DENSE_CELL_LIMIT};
use super::poly::OrePolynomial;
use super::ring::{Coefficients, RingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    /// Solve `divisor * q = h` for `q`.
    Right,
    /// Solve `p * divisor = h` for `p`.
    Left,
}

/// The unique `q` with `p * q == h`, or [`Error::NotDivisible`].
pub fn right_cofactor(h: &OrePolynomial, p: &OrePolynomial) -> Result<OrePolynomial> {
    divide(h, p, Side::Right)
}

/// The unique `p` with `p * q == h`, or [`Error::NotDivisible`].
pub fn left_cofactor(h: &OrePolynomial, q: &OrePolynomial) -> Result<OrePolynomial> {
    divide(h, q, Side::Left)
}

fn divide(h: &OrePolynomial, divisor: &OrePolynomial, side: Side) -> Result<OrePolynomial> {
    if h.ring != divisor.ring {
        return Err(Error::RingMismatch);
    }
    if divisor.is_zero() {
        return Err(Error::Precondition("division by the zero polynomial".into()));
    }
    if h.is_zero() {
        return Ok(OrePolynomial::zero(&h.ring));
    }
    let (hmax, dmax) = (h.max_exponents(), divisor.max_exponents());
    if hmax.iter().zip(&dmax).any(|(a, b)| a < b) {
        return Err(Error::NotDivisible);
    }
    if h.ring.kind() == RingKind::Skew {
        let cells = hmax
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64 + 1))
            .unwrap_or(u64::MAX);
        // The dense walk touches every cell of the box; it pays off once the
        // dividend fills a reasonable fraction of it.
        if cells <= DENSE_CELL_LIMIT && (h.len() as u64).saturating_mul(8) >= cells {
            return dense_skew_divide(h, divisor, side, &hmax, &dmax);
        }
    }
    sparse_divide(h, divisor, side)
}

/// Coefficient `c` of the next quotient term `c * mon^mu`, given the leading
/// coefficient `lr` of the remainder.
fn next_coefficient(
    divisor: &OrePolynomial,
    side: Side,
    mu: &[u32],
    lr: u32,
) -> u32 {
    let ring = &divisor.ring;
    let k = &ring.coeffs;
    let (lm, ld) = divisor.leading_term().expect("nonzero divisor");
    match (ring.kind(), side) {
        (RingKind::Weyl, _) => k.mul(lr, k.inv(*ld).expect("nonzero")),
        (RingKind::Skew, Side::Right) => {
            // ld * sigma^lm(c) = lr
            let degree = ring.field().degree() as u32;
            let t = ring.twist_class(lm.exponents());
            let back = (degree - t) % degree;
            k.frobenius(back, k.mul(lr, k.inv(*ld).expect("nonzero")))
        }
        (RingKind::Skew, Side::Left) => {
            // c * sigma^mu(ld) = lr
            let t = ring.twist_class(mu);
            k.mul(lr, k.inv(k.frobenius(t, *ld)).expect("nonzero"))
        }
    }
}

fn sparse_divide(h: &OrePolynomial, divisor: &OrePolynomial, side: Side) -> Result<OrePolynomial> {
    let ring = &h.ring;
    let k: &Coefficients = &ring.coeffs;
    let (lm, _) = divisor.leading_term().expect("nonzero divisor");
    let mut rem: BTreeMap<Monomial, u32> = h.terms.iter().cloned().collect();
    let mut quotient = Vec::new();
    while let Some((top, &lr)) = rem.last_key_value() {
        let mu = top.checked_div(lm).ok_or(Error::NotDivisible)?;
        let c = next_coefficient(divisor, side, mu.exponents(), lr);
        let term = OrePolynomial::from_sorted(ring, vec![(mu.clone(), c)]);
        let product = match side {
            Side::Right => sparse_product(divisor, &term),
            Side::Left => sparse_product(&term, divisor),
        };
        for (m, v) in product.terms {
            match rem.entry(m) {
                Entry::Vacant(slot) => {
                    slot.insert(k.neg(v));
                }
                Entry::Occupied(mut slot) => {
                    let s = k.sub(*slot.get(), v);
                    if s == 0 {
                        slot.remove();
                    } else {
                        *slot.get_mut() = s;
                    }
                }
            }
        }
        quotient.push((mu, c));
    }
    Ok(OrePolynomial::from_sorted(ring, quotient))
}

fn dense_skew_divide(
    h: &OrePolynomial,
    divisor: &OrePolynomial,
    side: Side,
    hmax: &[u32],
    dmax: &[u32],
) -> Result<OrePolynomial> {
    let ring = &h.ring;
    let tables = ring.tables().expect("skew ring");
    let n = hmax.len();
    let k = tables.degree() as u32;
    let mut strides = vec![1usize; n];
    for i in (0..n - 1).rev() {
        strides[i] = strides[i + 1] * (hmax[i + 1] as usize + 1);
    }
    let cells = strides[0] * (hmax[0] as usize + 1);
    let lin = |e: &[u32]| -> usize { e.iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum() };
    let qmax: Vec<u32> = hmax.iter().zip(dmax).map(|(a, b)| a - b).collect();

    let mut rem = vec![0u32; cells];
    for (m, c) in &h.terms {
        rem[lin(m.exponents())] = *c;
    }
    let top_degree = h.terms[0].0.total_degree();
    let mut order: Vec<Monomial> = Vec::new();
    let mut e: Exponents = Exponents::from_elem(0, n);
    'enumerate: loop {
        if e.iter().sum::<u32>() <= top_degree {
            order.push(Monomial(e.clone()));
        }
        let mut i = n;
        loop {
            if i == 0 {
                break 'enumerate;
            }
            i -= 1;
            if e[i] < hmax[i] {
                e[i] += 1;
                break;
            }
            e[i] = 0;
        }
    }
    order.sort_unstable_by(|a, b| b.cmp(a));

    // (offset of the divisor term, its coefficient, its twist class)
    let dterms: Vec<(usize, u32, u32)> = divisor
        .terms
        .iter()
        .map(|(m, c)| (lin(m.exponents()), *c, ring.twist_class(m.exponents())))
        .collect();
    let (lm, _) = divisor.leading_term().expect("nonzero divisor");
    // Left side: the divisor's coefficients under every Frobenius power.
    let images: Vec<Vec<u32>> = (0..k)
        .map(|t| dterms.iter().map(|&(_, c, _)| tables.frobenius(t, c)).collect())
        .collect();

    let mut quotient = Vec::new();
    for m in &order {
        let cell = lin(m.exponents());
        let lr = rem[cell];
        if lr == 0 {
            continue;
        }
        let mu = m.checked_div(lm).ok_or(Error::NotDivisible)?;
        if mu.exponents().iter().zip(&qmax).any(|(a, b)| a > b) {
            return Err(Error::NotDivisible);
        }
        let c = next_coefficient(divisor, side, mu.exponents(), lr);
        let base = lin(mu.exponents());
        match side {
            Side::Right => {
                let twisted: Vec<u32> = (0..k).map(|t| tables.frobenius(t, c)).collect();
                for &(off, d, t) in &dterms {
                    let slot = &mut rem[base + off];
                    *slot = tables.sub(*slot, tables.mul(d, twisted[t as usize]));
                }
            }
            Side::Left => {
                let t = ring.twist_class(mu.exponents()) as usize;
                for (j, &(off, _, _)) in dterms.iter().enumerate() {
                    let slot = &mut rem[base + off];
                    *slot = tables.sub(*slot, tables.mul(c, images[t][j]));
                }
            }
        }
        debug_assert_eq!(rem[cell], 0);
        quotient.push((mu, c));
    }
    Ok(OrePolynomial::from_sorted(ring, quotient))
}
