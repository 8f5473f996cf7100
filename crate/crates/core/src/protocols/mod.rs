//! Key agreement, three-pass transport, ElGamal-style encryption and
//! signatures, and a factor-knowledge identification protocol, all over a
//! shared [`PublicParameters`].

pub mod elgamal;
pub mod encoding;
pub mod kex;
mod params;
pub mod signature;
pub mod three_pass;
mod transcript;
pub mod zkp;

pub use params::{ParameterShape, PrivateTuple, PublicParameters};
pub use transcript::{Party, Transcript};
