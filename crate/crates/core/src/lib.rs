//! Exact and modular computation with Somos and Gale-Robinson sequences.

pub mod arith;
pub mod certificates;
pub mod data;
pub mod error;
pub mod diamond;
pub mod experiments;
pub mod integrality;
pub mod invariants;
pub mod sequences;

pub use arith::{Field, Fp, Int, MultiPoly, PrimeField, Rational, Ring, ZPoly};
