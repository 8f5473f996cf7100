use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::monomial::{count_up_to_degree, monomials_of_degree, Monomial};

use super::poly::OrePolynomial;
use super::ring::OreRing;

/// Number of monomials of total degree at most `degree` in `ring`, i.e. the
/// term count of a fully dense polynomial.
pub fn dense_term_count(ring: &OreRing, degree: u32) -> u64 {
    count_up_to_degree(ring.n_exponents(), degree)
}

/// Uniformly random exponent vector of `n` entries summing to `total`
/// (stars and bars).
fn random_composition<R: Rng + ?Sized>(rng: &mut R, n: usize, total: u32) -> Vec<u32> {
    if n == 1 {
        return vec![total];
    }
    let slots = total as usize + n - 1;
    let mut bars = index::sample(rng, slots, n - 1).into_vec();
    bars.sort_unstable();
    let mut out = Vec::with_capacity(n);
    let mut prev = 0usize;
    for &b in &bars {
        out.push((b - prev) as u32);
        prev = b + 1;
    }
    out.push((slots - prev) as u32);
    out
}

/// Random element with exactly `n_terms` nonzero terms and total degree
/// exactly `total_degree`: the leading monomial is drawn among those of that
/// degree, the others uniformly among monomials of degree at most that, and
/// every coefficient is uniform and nonzero.
pub fn ore_random<R: Rng + ?Sized>(
    ring: &Arc<OreRing>,
    total_degree: u32,
    n_terms: usize,
    rng: &mut R,
) -> Result<OrePolynomial> {
    let nv = ring.n_exponents();
    let available = count_up_to_degree(nv, total_degree);
    if n_terms == 0 || n_terms as u64 > available {
        return Err(Error::ImpossibleShape {
            degree: total_degree,
            n_terms,
        });
    }
    let lead = Monomial::new(&random_composition(rng, nv, total_degree));
    let mut chosen: BTreeSet<Monomial> = BTreeSet::new();
    chosen.insert(lead.clone());
    if (n_terms as u64).saturating_mul(2) > available {
        // Dense regime: sample an index subset of the full enumeration.
        let all: Vec<Monomial> = (0..=total_degree)
            .flat_map(|d| monomials_of_degree(nv, d))
            .filter(|m| *m != lead)
            .collect();
        for i in index::sample(rng, all.len(), n_terms - 1) {
            chosen.insert(all[i].clone());
        }
    } else {
        while chosen.len() < n_terms {
            // A composition into nv + 1 parts, slack part dropped, is uniform
            // over monomials of degree <= total_degree.
            let mut e = random_composition(rng, nv + 1, total_degree);
            e.pop();
            chosen.insert(Monomial::new(&e));
        }
    }
    let order = ring.coefficient_order();
    let terms: Vec<(Monomial, u32)> = chosen
        .into_iter()
        .rev()
        .map(|m| (m, rng.random_range(1..order)))
        .collect();
    Ok(OrePolynomial::from_sorted(ring, terms))
}
