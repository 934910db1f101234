//! Exact arithmetic for truncated (ramified) Witt vectors, semilinear algebra
//! over finite chain rings, finite-level Dieudonné modules and displays, their
//! exterior powers, multilinear morphism spaces, and the equivalence between
//! modules over a ramified base and their unramified unrollings.

pub mod descriptor;
pub mod fixtures;
pub mod ramequiv;
pub mod ramified;
pub mod ring;
pub mod dieudonne;
pub mod display;
pub mod mpoly;
pub mod multilinear;
pub mod semilinear;
pub mod witt;
