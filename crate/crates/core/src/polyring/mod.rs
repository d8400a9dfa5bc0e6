//! The ring Z[t] of univariate integer polynomials.

mod factor;
mod gcd;
mod modp;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{BigInt, BigRat};
use crate::error::{Error, Result};

pub use factor::{Factorization, SquareFreeDecomposition};

/// Dense polynomial over Z, lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Constant value of a degree-0 polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide every coefficient by `c`; `None` unless all divide exactly.
    pub fn div_scalar(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Positive gcd of the coefficients.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroInput("content"));
        }
        Ok(self.content_unchecked())
    }

    pub(crate) fn content_unchecked(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content(self)`; the sign stays on the primitive part.
    pub fn primitive_part(&self) -> Result<Self> {
        let c = self.content()?;
        Ok(self.div_scalar(&c).expect("content divides every coefficient"))
    }

    /// Primitive part with positive leading coefficient.
    pub(crate) fn normalized_primitive(&self) -> Self {
        let c = self.content_unchecked();
        if c.is_zero() {
            return Self::zero();
        }
        let c = if self.lc().is_negative() { -c } else { c };
        self.div_scalar(&c).expect("content divides")
    }

    /// Exact division in Z[t]; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (n, m) = (self.deg(), d.deg());
        if n < m {
            return None;
        }
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &rem[k + m];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub(crate) fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let m = d.deg();
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= m {
            return self.clone();
        }
        let steps = rem.len() - m;
        for _ in 0..steps {
            let top_idx = rem.len() - 1;
            let top = rem[top_idx].clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            let shift = top_idx - m;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &top * dc;
            }
            rem.pop();
        }
        IntPoly::new(rem)
    }

    /// Gcd in Z[t]: content gcd times primitive gcd, positive leading coefficient.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        gcd::gcd(self, other)
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, t0: &BigRat) -> BigRat {
        // Work with num/den to avoid a gcd per step.
        let (n, d) = (t0.numer(), t0.denom());
        let deg = match self.degree() {
            None => return BigRat::zero(),
            Some(k) => k,
        };
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // acc = sum c_k n^k d^(deg-k); dpow = d^(deg+1)
        BigRat::new(acc, num_traits::pow(d.clone(), deg))
    }

    pub fn eval_int(&self, t0: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t0 + c)
    }

    /// `self(other(t))`
    pub fn compose(&self, other: &IntPoly) -> IntPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, c| &(&acc * other) + &IntPoly::constant(c.clone()))
    }

    /// Exact square root in Z[t], sign chosen with positive leading coefficient.
    pub fn sqrt(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.deg();
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let lead = crate::arith::is_square_int(&self.lc())?;
        let two_lead = &lead * 2u32;
        let mut root = vec![BigInt::zero(); m + 1];
        root[m] = lead;
        for k in 1..=m {
            // coefficient of t^(2m-k) in root^2
            let idx = 2 * m - k;
            let mut acc = self.coeff(idx);
            for i in (m - k + 1)..m {
                let j = idx - i;
                if j > m || j <= m - k {
                    continue;
                }
                acc -= &root[i] * &root[j];
            }
            let (q, r) = acc.div_rem(&two_lead);
            if !r.is_zero() {
                return None;
            }
            root[m - k] = q;
        }
        let root = IntPoly::new(root);
        (&root * &root == *self).then_some(root)
    }

    /// Square-free decomposition (Yun) of a nonzero polynomial.
    pub fn squarefree_decompose(&self) -> Result<SquareFreeDecomposition> {
        factor::squarefree_decompose(self)
    }

    /// Complete factorization into content primes and primitive irreducibles.
    pub fn factor(&self) -> Result<Factorization> {
        factor::factor(self)
    }

    /// Product of the distinct prime factors, positive leading coefficient.
    pub fn radical(&self) -> Result<IntPoly> {
        Ok(self.factor()?.radical())
    }

    /// Square-free kernel: product of the primes dividing `self` to odd
    /// multiplicity, times the sign of the leading coefficient.
    pub fn squarefree_kernel(&self) -> Result<IntPoly> {
        Ok(self.factor()?.squarefree_kernel())
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        let d = self.squarefree_decompose()?;
        Ok(d.factors.iter().all(|(_, m)| *m == 1))
    }

    /// Number of distinct rational roots.
    pub fn rational_roots(&self) -> Result<Vec<BigRat>> {
        let f = self.factor()?;
        let mut roots: Vec<BigRat> = f
            .poly_factors
            .iter()
            .filter(|(p, _)| p.deg() == 1)
            .map(|(p, _)| BigRat::new(-p.coeff(0), p.coeff(1)))
            .collect();
        roots.sort();
        Ok(roots)
    }
}

/// Discriminant of the monic cubic `x^3 + A x^2 + B x + C`:
/// `18ABC - 4A^3 C + A^2 B^2 - 4B^3 - 27C^2`.
pub fn cubic_discriminant(a: &IntPoly, b: &IntPoly, c: &IntPoly) -> IntPoly {
    let k = |v: i64| IntPoly::constant(BigInt::from(v));
    let a2 = a * a;
    let b2 = b * b;
    &(&(&(&(&k(18) * &(&(a * b) * c)) - &(&(&k(4) * &(&a2 * a)) * c)) + &(&a2 * &b2))
        - &(&k(4) * &(&b2 * b)))
        - &(&k(27) * &(c * c))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self, "t"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Descending-power printer, e.g. `3*t^4 - 30*t^3 + 9`.
pub fn format_poly(p: &IntPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

impl std::str::FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_poly(s)
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly { (&self).$m(&rhs) }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    #[test]
    fn content_and_primitive() {
        let f = p("6*t^2 + 12");
        assert_eq!(f.content().unwrap(), BigInt::from(6));
        assert_eq!(f.primitive_part().unwrap(), p("t^2 + 2"));
        let g = p("-2*t");
        assert_eq!(g.content().unwrap(), BigInt::from(2));
        assert_eq!(g.primitive_part().unwrap(), p("-t"));
        assert!(IntPoly::zero().content().is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("7*t + 1").eval(&r(1, 21)), r(4, 3));
        assert_eq!(IntPoly::zero().eval(&r(5, 7)), r(0, 1));
        assert_eq!(p("t^4 + 4").eval(&r(0, 1)), r(4, 1));
        assert_eq!(p("t^2 - 3*t + 2").eval(&r(-1, 2)), r(15, 4));
    }

    #[test]
    fn cubic_discriminant_examples() {
        let t2 = p("t^2");
        let d = cubic_discriminant(&t2, &p("-1"), &IntPoly::zero());
        assert_eq!(d, p("t^4 + 4"));
        let d = cubic_discriminant(&IntPoly::zero(), &IntPoly::zero(), &IntPoly::one());
        assert_eq!(d, p("-27"));
    }

    #[test]
    fn exact_division_and_sqrt() {
        let a = p("t^2 - 1");
        assert_eq!(a.exact_div(&p("t - 1")), Some(p("t + 1")));
        assert_eq!(a.exact_div(&p("t - 2")), None);
        assert_eq!(p("2*t + 1").exact_div(&p("2")), None);
        let sq = p("4*t^4 + 12*t^3 + 13*t^2 + 6*t + 1");
        assert_eq!(sq.sqrt(), Some(p("2*t^2 + 3*t + 1")));
        assert_eq!(p("t^2 + 1").sqrt(), None);
        assert_eq!(p("-t^2").sqrt(), None);
        assert_eq!(p("9").sqrt(), Some(p("3")));
    }

    #[test]
    fn printer_format() {
        assert_eq!(p("9 - 30*t + 47*t^2 - 30*t^3 + 9*t^4").to_string(), "9*t^4 - 30*t^3 + 47*t^2 - 30*t + 9");
        assert_eq!(p("-t").to_string(), "-t");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p("t^2 - 1").to_string(), "t^2 - 1");
    }

    #[test]
    fn gcd_basics() {
        let a = p("(t - 1)^2*(t + 2)*6");
        let b = p("(t - 1)*(t + 3)*4");
        assert_eq!(a.gcd(&b), p("2*t - 2"));
        assert_eq!(a.gcd(&IntPoly::zero()), p("6*(t-1)^2*(t+2)"));
        assert_eq!(p("-3*t").gcd(&IntPoly::zero()), p("3*t"));
        assert_eq!(IntPoly::zero().gcd(&IntPoly::zero()), IntPoly::zero());
        assert_eq!(p("t^2 + 1").gcd(&p("t + 1")), IntPoly::one());
    }

    #[test]
    fn compose_shift() {
        assert_eq!(p("t^2").compose(&p("t + 1")), p("t^2 + 2*t + 1"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = IntPoly> {
            proptest::collection::vec(-50i64..50, 0..6).prop_map(|c| IntPoly::from_i64s(&c))
        }

        proptest! {
            #[test]
            fn gauss_lemma(a in small_poly(), b in small_poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let prod = &a * &b;
                prop_assert_eq!(prod.content().unwrap(), a.content().unwrap() * b.content().unwrap());
            }

            #[test]
            fn eval_is_ring_hom(a in small_poly(), b in small_poly(), n in -30i64..30, d in 1i64..30) {
                let t0 = r(n, d);
                prop_assert_eq!((&a * &b).eval(&t0), a.eval(&t0) * b.eval(&t0));
                prop_assert_eq!((&a + &b).eval(&t0), a.eval(&t0) + b.eval(&t0));
            }

            #[test]
            fn gcd_divides_and_is_maximal(a in small_poly(), b in small_poly(), c in small_poly()) {
                prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
                let (x, y) = (&a * &c, &b * &c);
                let g = x.gcd(&y);
                prop_assert!(g.divides(&x) && g.divides(&y));
                prop_assert!(c.divides(&g));
            }

            #[test]
            fn print_parse_fixpoint(a in small_poly()) {
                let s = a.to_string();
                let back: IntPoly = s.parse().unwrap();
                prop_assert_eq!(&back, &a);
                prop_assert_eq!(back.to_string(), s);
            }
        }
    }
}
