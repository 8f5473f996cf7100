//! Arithmetic in multivariate Ore polynomial rings over finite fields and
//! key-agreement, encryption, signature and identification protocols built on
//! their noncommutativity.

pub mod challenge;
pub mod comm_poly;
pub mod commuting;
pub mod cost;
pub mod error;
pub mod field;
pub mod monomial;
pub mod ore;
pub mod protocols;
pub mod weak_keys;

pub use comm_poly::CommPolynomial;
pub use commuting::{sample_private, ConstantPolynomial};
pub use error::{Error, Result};
pub use field::{Automorphism, FieldElement, FieldSpec, FieldTables};
pub use monomial::Monomial;
pub use ore::{
    left_cofactor, ore_random, right_cofactor, BaseRing, DegreeProfile, Derivation, OrePolynomial,
    OreRing, QuasiDerivation, RingKind,
};
pub use protocols::{ParameterShape, Party, PrivateTuple, PublicParameters, Transcript};
pub use weak_keys::{grading_vector, screen_private_key, GradingVector, Screening, WeakKeyReason};
