//! The rational function field Q(t).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{BigInt, BigRat};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::IntPoly;

/// Reduced fraction `num / den` of integer polynomials.
///
/// Canonical form: `num` and `den` coprime in Z[t] (both the primitive parts
/// and the contents), `lc(den) > 0`, and zero is `0 / 1`. Equality of values
/// is equality of representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

/// Value of a rational function at a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Eval {
    Value(BigRat),
    Pole,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero_value();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        if d.lc().is_negative() {
            n = -n;
            d = -d;
        }
        RatFunc { num: n, den: d }
    }

    fn zero_value() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn from_rat(q: &BigRat) -> Self {
        RatFunc {
            num: IntPoly::constant(q.numer().clone()),
            den: IntPoly::constant(q.denom().clone()),
        }
    }

    pub fn t() -> Self {
        Self::from_poly(IntPoly::t())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    /// The polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&IntPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// The rational constant when both parts are constant.
    pub fn as_constant(&self) -> Option<BigRat> {
        Some(BigRat::new(self.num.as_constant()?, self.den.as_constant()?))
    }

    pub fn scale(&self, q: &BigRat) -> Self {
        Self::reduce(self.num.scale(q.numer()), self.den.scale(q.denom()))
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.checked_inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        // canonical form is preserved by powers
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Degree of the induced map to the projective line.
    pub fn deg_map(&self) -> Result<usize> {
        if self.num.is_zero() {
            return Err(Error::ZeroInput("deg_map"));
        }
        Ok(self.num.deg().max(self.den.deg()))
    }

    pub fn eval(&self, t0: &BigRat) -> Eval {
        let d = self.den.eval(t0);
        if Zero::is_zero(&d) {
            // coprime num/den cannot both vanish
            return Eval::Pole;
        }
        Eval::Value(self.num.eval(t0) / d)
    }

    /// A square root in Q(t), if one exists.
    pub fn sqrt(&self) -> Option<RatFunc> {
        if self.num.is_zero() {
            return Some(self.clone());
        }
        // num/den = num*den / den^2 and a polynomial in Z[t] is a square in
        // Q[t] iff it is a square in Z[t]
        let root = (&self.num * &self.den).sqrt()?;
        Some(Self::reduce(root, self.den.clone()))
    }

    /// Combined `(numerator, denominator)` contents split off as a rational.
    pub fn rational_content(&self) -> BigRat {
        BigRat::new(
            self.num.content_unchecked(),
            self.den.content_unchecked(),
        )
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    fn from_int(n: i64) -> Self {
        Self::from_poly(IntPoly::constant(n.into()))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }

    fn sqrt(&self) -> Option<Self> {
        RatFunc::sqrt(self)
    }

    fn cubic_roots(a: &Self, b: &Self, c: &Self) -> Vec<Self> {
        // Substitute x = X / L with L the lcm of the denominators so the cubic
        // in X has Z[t] coefficients; its roots then lie in Z[t].
        let l = [a, b, c].iter().fold(IntPoly::one(), |acc, q| {
            let g = acc.gcd(&q.den);
            (&acc * &q.den).exact_div(&g).unwrap()
        });
        let lf = RatFunc::from_poly(l.clone());
        let a2 = (a * &lf).num;
        let b2 = (b * &lf.pow(2)).num;
        let c2 = (c * &lf.pow(3)).num;
        integral_cubic_roots(&a2, &b2, &c2)
            .into_iter()
            .map(|r| Self::reduce(r, l.clone()))
            .collect()
    }
}

/// Roots in Z[t] of `X^3 + a X^2 + b X + c` with `a, b, c` in Z[t].
pub(crate) fn integral_cubic_roots(a: &IntPoly, b: &IntPoly, c: &IntPoly) -> Vec<IntPoly> {
    let cubic = |r: &IntPoly| &(&(&(&(r * r) * r) + &(&(a * r) * r)) + &(b * r)) + c;
    let mut roots: Vec<IntPoly> = Vec::new();
    if c.is_zero() {
        roots.push(IntPoly::zero());
        // remaining roots solve X^2 + a X + b
        let disc = &(a * a) - &b.scale(&BigInt::from(4));
        if let Some(s) = disc.sqrt() {
            for cand in [&(-a) + &s, &(-a) - &s] {
                if let Some(r) = cand.div_scalar(&BigInt::from(2)) {
                    roots.push(r);
                }
            }
        }
    } else {
        // a root divides c and has degree at most max(deg a, deg b / 2, deg c / 3)
        let max_deg = a.deg().max(b.deg().div_ceil(2)).max(c.deg().div_ceil(3));
        let fac = c.factor().expect("c is nonzero");
        // sieve candidates through an integer specialization first
        let t1 = (2..)
            .map(BigInt::from)
            .find(|t| !c.eval_int(t).is_zero())
            .unwrap();
        let at_t1 = IntPoly::new(vec![
            c.eval_int(&t1),
            b.eval_int(&t1),
            a.eval_int(&t1),
            BigInt::one(),
        ]);
        let int_roots: Vec<BigInt> = at_t1
            .rational_roots()
            .expect("nonzero cubic")
            .into_iter()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
            .collect();
        if !int_roots.is_empty() {
            for cand in divisors_up_to_degree(&fac, max_deg) {
                for sign in [1i64, -1] {
                    let r = cand.scale(&BigInt::from(sign));
                    if int_roots.contains(&r.eval_int(&t1)) && cubic(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// All positive-content divisors (with multiplicity) of a factored polynomial,
/// limited to degree `max_deg`.
fn divisors_up_to_degree(fac: &crate::polyring::Factorization, max_deg: usize) -> Vec<IntPoly> {
    let mut ints = vec![BigInt::one()];
    for (p, e) in &fac.content_primes {
        let mut next = Vec::new();
        for d in &ints {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        ints = next;
    }
    let mut polys = vec![IntPoly::one()];
    for (f, m) in &fac.poly_factors {
        let mut next = Vec::new();
        for d in &polys {
            let mut fk = IntPoly::one();
            for _ in 0..=*m {
                if d.deg() + fk.deg() > max_deg {
                    break;
                }
                next.push(d * &fk);
                fk = &fk * f;
            }
        }
        polys = next;
    }
    let mut out = Vec::new();
    for p in &polys {
        for n in &ints {
            out.push(p.scale(n));
        }
    }
    out
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &IntPoly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
                || s.starts_with('-')
                || s.contains('*')
                || s.contains('^')
            {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl std::str::FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_ratfunc(s)
    }
}

impl From<IntPoly> for RatFunc {
    fn from(p: IntPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // a/(g b1) + c/(g d1) = (a d1 + c b1) / (g b1 d1)
        let g = self.den.gcd(&rhs.den);
        let b1 = self.den.exact_div(&g).unwrap();
        let d1 = rhs.den.exact_div(&g).unwrap();
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        RatFunc::reduce(num, &(&g * &b1) * &d1)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero_value();
        }
        // cross-cancel first; the product of the reduced pieces is reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.lc().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}
