//! Coefficient rings: Galois rings `GR(p^N, s)` and finite chain rings built
//! from them (truncated Witt rings of finite fields, Eisenstein quotients,
//! and equal-characteristic truncated power-series rings).

pub mod chain;
pub mod galois;

pub use chain::{ChainElt, ChainRing};
pub use galois::{GaloisRing, GrElt};
