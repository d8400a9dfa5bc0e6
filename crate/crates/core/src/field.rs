//! Exact fields the curve code is generic over: Q and Q(t).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{is_square_rat, BigInt, BigRat};
use crate::polyring::IntPoly;

pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// A square root in the field, if one exists.
    fn sqrt(&self) -> Option<Self>;
    /// Roots in the field of the monic cubic `x^3 + a x^2 + b x + c`,
    /// without multiplicity.
    fn cubic_roots(a: &Self, b: &Self, c: &Self) -> Vec<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        Some(self.clone() * rhs.inv()?)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Field for BigRat {
    fn zero() -> Self {
        <BigRat as Zero>::zero()
    }

    fn one() -> Self {
        <BigRat as One>::one()
    }

    fn from_int(n: i64) -> Self {
        BigRat::from_integer(n.into())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn sqrt(&self) -> Option<Self> {
        is_square_rat(self)
    }

    fn cubic_roots(a: &Self, b: &Self, c: &Self) -> Vec<Self> {
        // clear denominators and treat the cubic as an integer polynomial in x
        let l = [a, b, c]
            .iter()
            .fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
        let lq = BigRat::from_integer(l.clone());
        let coeffs: Vec<BigInt> = [c, b, a]
            .iter()
            .map(|q| (*q * &lq).to_integer())
            .chain(std::iter::once(l))
            .collect();
        IntPoly::new(coeffs)
            .rational_roots()
            .expect("cubic is nonzero")
    }
}
