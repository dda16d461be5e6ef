//! Exact coefficient domains, sparse polynomials and exact linear algebra.

pub mod fp;
pub mod int;
pub mod matrix;
pub mod mono;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod resultant;
pub mod ring;
pub mod text;
pub mod univariate;

pub use fp::{Fp, PrimeField};
pub use int::Int;
pub use matrix::Matrix;
pub use mono::Mono;
pub use poly::MultiPoly;
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use ring::{Field, Ring};
pub use univariate::UniPoly;

/// Integer polynomial, the carrier for every symbolic object.
pub type ZPoly = MultiPoly<Int>;
