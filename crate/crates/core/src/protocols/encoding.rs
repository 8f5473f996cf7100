//! Byte strings as ring elements.
//!
//! The payload is a 4-byte big-endian length followed by the bytes. Each byte
//! becomes a fixed number of base-`q` digits (`q` the coefficient count), and
//! the digits fill the coefficients of the monomials after `1` in ascending
//! monomial order. The constant term is always `1`, which keeps every encoding
//! nonzero and lets the decoder reject foreign polynomials early.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::ore::{OrePolynomial, OreRing};

const HEADER_BYTES: usize = 4;
const MAX_DECODED_LEN: usize = 1 << 20;

fn digits_per_byte(q: u32) -> usize {
    let mut capacity = 1u64;
    let mut digits = 0;
    while capacity < 256 {
        capacity *= q as u64;
        digits += 1;
    }
    digits
}

/// Monomials in ascending order, skipping `1`, until `count` have been produced.
fn slots(ring: &OreRing, count: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(count);
    let mut degree = 1;
    while out.len() < count {
        out.extend(
            monomials_of_degree(ring.n_exponents(), degree)
                .into_iter()
                .take(count - out.len()),
        );
        degree += 1;
    }
    out
}

pub fn encode_bytes(ring: &Arc<OreRing>, bytes: &[u8]) -> Result<OrePolynomial> {
    let len = u32::try_from(bytes.len()).map_err(|_| Error::Encoding("message too long".into()))?;
    let q = ring.coefficient_order();
    let per_byte = digits_per_byte(q);
    let payload: Vec<u8> = len.to_be_bytes().iter().chain(bytes).copied().collect();
    let positions = slots(ring, payload.len() * per_byte);
    let mut terms = vec![(Monomial::one(ring.n_exponents()), 1)];
    let mut idx = 0;
    for &b in &payload {
        let mut v = b as u32;
        for _ in 0..per_byte {
            terms.push((positions[idx].clone(), v % q));
            v /= q;
            idx += 1;
        }
    }
    OrePolynomial::from_terms(ring, terms)
}

pub fn decode_bytes(h: &OrePolynomial) -> Result<Vec<u8>> {
    let ring = h.ring();
    let n = ring.n_exponents();
    if h.coeff(&Monomial::one(n)) != 1 {
        return Err(Error::Encoding("missing constant marker".into()));
    }
    let q = ring.coefficient_order();
    let per_byte = digits_per_byte(q);
    let read = |positions: &[Monomial]| -> Result<Vec<u8>> {
        positions
            .chunks(per_byte)
            .map(|chunk| {
                let v = chunk
                    .iter()
                    .rev()
                    .fold(0u64, |acc, m| acc * q as u64 + h.coeff(m) as u64);
                u8::try_from(v).map_err(|_| Error::Encoding("digit group exceeds a byte".into()))
            })
            .collect()
    };
    let header_slots = slots(ring, HEADER_BYTES * per_byte);
    let header = read(&header_slots)?;
    let len = u32::from_be_bytes(header.try_into().expect("four bytes")) as usize;
    if len > MAX_DECODED_LEN {
        return Err(Error::Encoding(format!("declared length {len} is implausible")));
    }
    let all = slots(ring, (HEADER_BYTES + len) * per_byte);
    let last = all.last().expect("header slots");
    if h.terms().iter().any(|(m, _)| m > last) {
        return Err(Error::Encoding("terms beyond the declared length".into()));
    }
    read(&all[HEADER_BYTES * per_byte..])
}
