//! Iterated Ore extensions: ring descriptors, polynomials in normal form,
//! multiplication kernels and exact division.

pub mod division;
mod format;
pub mod mul;
mod poly;
mod random;
mod ring;

pub use division::{left_cofactor, right_cofactor};
pub use poly::{DegreeProfile, OrePolynomial};
pub use random::{dense_term_count, ore_random};
pub use ring::{BaseRing, Derivation, OreRing, QuasiDerivation, RingKind};
