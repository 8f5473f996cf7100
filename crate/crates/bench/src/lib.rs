//! Seeded fixtures shared by the benchmarks.

use std::sync::Arc;

use ore_kex::{ore_random, OrePolynomial, OreRing, ParameterShape, PublicParameters};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// A random element of total degree `degree` with at most `terms` terms.
pub fn operand(ring: &Arc<OreRing>, degree: u32, terms: usize, seed: u64) -> OrePolynomial {
    let terms = ore_kex::ore::dense_term_count(ring, degree).min(terms as u64) as usize;
    ore_random(ring, degree, terms, &mut rng(seed)).expect("feasible shape")
}

pub fn parameters(ring: &Arc<OreRing>, d_l: u32, d_pq: u32, nu: usize, seed: u64) -> PublicParameters {
    PublicParameters::generate(ring, ParameterShape::new(d_l, d_pq, nu), &mut rng(seed))
        .expect("feasible parameters")
}
