//! Text form of Ore polynomials.
//!
//! A polynomial prints as its terms joined by ` + `, highest monomial first;
//! zero prints as `0`. A skew term reads `[a0,a1,a2]*d1^3*d2^1` and a Weyl
//! term reads `5*x1^2*d3^1`; zero exponents are omitted.
//!
//! The parser accepts that output and a little more for hand-written input:
//! `-` between terms (Weyl only), an omitted coefficient meaning `1`, and a
//! bare variable meaning exponent `1`. Inside a term every `x` factor must come
//! before every `d` factor, since a term is read as a normal-form monomial.

use std::fmt;
use std::sync::Arc;

use crate::comm_poly::write_term;
use crate::error::{Error, Result};
use crate::field::parse_u32;
use crate::monomial::Monomial;

use super::poly::OrePolynomial;
use super::ring::{OreRing, RingKind};

impl fmt::Display for OrePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.variable_names();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_term(f, &self.ring.format_coeff(*c), &names, m.exponents())?;
        }
        Ok(())
    }
}

/// Splits at top-level `+`/`-`, keeping the sign of each piece.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let piece = s[start..i].trim();
                if !piece.is_empty() {
                    out.push((negative, piece));
                } else if !out.is_empty() || i != s.len() - s.trim_start().len() {
                    return Err(Error::Parse(format!("dangling operator in `{s}`")));
                }
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
        }
    }
    let piece = s[start..].trim();
    if piece.is_empty() {
        return Err(Error::Parse(format!("missing term at the end of `{s}`")));
    }
    out.push((negative, piece));
    Ok(out)
}

impl OrePolynomial {
    pub fn parse(ring: &Arc<OreRing>, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(ring));
        }
        let names = ring.variable_names();
        let n = ring.n_ore_vars();
        let mut terms = Vec::new();
        for (negative, piece) in split_terms(s)? {
            let mut factors = piece.split('*').map(str::trim).peekable();
            let first = *factors.peek().ok_or_else(|| Error::Parse("empty term".into()))?;
            let starts_with_var = first.starts_with('x') || first.starts_with('d');
            let mut coeff = if starts_with_var {
                1
            } else {
                factors.next();
                parse_coefficient(ring, first)?
            };
            let mut exps = vec![0u32; ring.n_exponents()];
            let mut last_pos: Option<usize> = None;
            for factor in factors {
                let (name, e) = match factor.split_once('^') {
                    Some((name, e)) => (name.trim(), parse_u32(e.trim())?),
                    None => (factor, 1),
                };
                let pos = names
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                if ring.kind() == RingKind::Weyl
                    && last_pos.is_some_and(|lp| lp >= n)
                    && pos < n
                {
                    return Err(Error::Parse(format!(
                        "`{piece}` is not in normal form: x factors must precede d factors"
                    )));
                }
                exps[pos] += e;
                last_pos = Some(pos);
            }
            if negative {
                coeff = ring.coeffs.neg(coeff);
            }
            terms.push((Monomial::new(&exps), coeff));
        }
        Self::from_terms(ring, terms)
    }
}

fn parse_coefficient(ring: &Arc<OreRing>, s: &str) -> Result<u32> {
    match ring.kind() {
        RingKind::Skew if s.starts_with('[') => Ok(ring.field().parse_element(s)?.index() as u32),
        // A bare integer is an element of the prime subfield, whose index is its value.
        _ => {
            let v: u64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("invalid coefficient `{s}`")))?;
            Ok((v % ring.characteristic() as u64) as u32)
        }
    }
}
