//! Exact certificates for injective specialization of elliptic curves over
//! Q(t) with a rational 2-torsion point.
//!
//! The crate is layered bottom-up: [`arith`] (integers and rationals),
//! [`polyring`] (Z[t] with factorization), [`funcfield`] (Q(t)), [`curve`]
//! (Weierstrass models over any [`field::Field`]), [`descent`] (2-descent
//! maps and the 2-isogeny), [`injectivity`] (the square-free divisor
//! criteria and certificates), [`specialize`] and [`mestre`].

pub mod arith;
pub mod curve;
pub mod descent;
pub mod error;
pub mod field;
pub mod funcfield;
pub mod golden;
pub mod injectivity;
pub mod mestre;
pub mod parse;
pub mod polyring;
pub mod specialize;

pub use arith::{BigInt, BigRat};
pub use curve::{Curve, IntegralModel, Point};
pub use error::{Error, Result};
pub use field::Field;
pub use funcfield::RatFunc;
pub use polyring::IntPoly;
