//! Exact computations with Hermitian lattices over `Z[λ]`, `λ = (−1+√−7)/2`,
//! and the action of two arithmetic subgroups of `PGL₃(Q₂)` on the
//! Bruhat–Tits building.

pub mod building;
pub mod elimination;
pub mod error;
pub mod group;
pub mod hermitian;
pub mod matrix;
pub mod named;
pub mod padic;
pub mod qlambda;

pub use error::{Error, Result};
pub use matrix::Mat3;
pub use qlambda::{QuadInt, QuadRat};
