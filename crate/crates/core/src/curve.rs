//! Weierstrass cubics `y^2 = x^3 + A x^2 + B x + C` and their group law.

use std::fmt;

use crate::arith::{factor_int, BigInt, BigRat};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::funcfield::RatFunc;
use crate::polyring::{cubic_discriminant, IntPoly};

#[derive(Clone, Debug, PartialEq)]
pub enum Point<F> {
    O,
    Affine(F, F),
}

impl<F: Field> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point::Affine(x, y)
    }

    pub fn is_o(&self) -> bool {
        matches!(self, Point::O)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::O => None,
            Point::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::O => None,
            Point::Affine(_, y) => Some(y),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Point::O => Point::O,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y.clone()),
        }
    }
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::O => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve<F> {
    a: F,
    b: F,
    c: F,
    roots: Option<[F; 3]>,
    disc: F,
}

fn discriminant<F: Field>(a: &F, b: &F, c: &F) -> F {
    let n = |k: i64| F::from_int(k);
    n(18) * a.clone() * b.clone() * c.clone() - n(4) * a.square() * a.clone() * c.clone()
        + a.square() * b.square()
        - n(4) * b.square() * b.clone()
        - n(27) * c.square()
}

impl<F: Field> Curve<F> {
    pub fn new(a: F, b: F, c: F) -> Result<Self> {
        let disc = discriminant(&a, &b, &c);
        if disc.is_zero() {
            return Err(Error::Singular(format!(
                "discriminant of x^3 + ({a})x^2 + ({b})x + ({c}) vanishes"
            )));
        }
        Ok(Curve {
            a,
            b,
            c,
            roots: None,
            disc,
        })
    }

    /// The curve `y^2 = (x - e1)(x - e2)(x - e3)`.
    pub fn from_roots(e1: F, e2: F, e3: F) -> Result<Self> {
        let a = -(e1.clone() + e2.clone() + e3.clone());
        let b = e1.clone() * e2.clone() + e1.clone() * e3.clone() + e2.clone() * e3.clone();
        let c = -(e1.clone() * e2.clone() * e3.clone());
        let mut curve = Self::new(a, b, c)?;
        curve.roots = Some([e1, e2, e3]);
        Ok(curve)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn c(&self) -> &F {
        &self.c
    }

    /// The roots `(e1, e2, e3)` when the curve was built in split form.
    pub fn split_roots(&self) -> Option<&[F; 3]> {
        self.roots.as_ref()
    }

    /// Discriminant of the cubic, `D`.
    pub fn discriminant(&self) -> &F {
        &self.disc
    }

    /// Discriminant of the curve, `16 D`.
    pub fn delta(&self) -> F {
        F::from_int(16) * self.disc.clone()
    }

    /// `256 (A^2 - 3B)^3 / D`
    pub fn j_invariant(&self) -> F {
        let u = self.a.square() - F::from_int(3) * self.b.clone();
        let num = F::from_int(256) * u.square() * u;
        num.div(&self.disc).expect("nonsingular")
    }

    pub fn rhs(&self, x: &F) -> F {
        ((x.clone() + self.a.clone()) * x.clone() + self.b.clone()) * x.clone() + self.c.clone()
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::O => true,
            Point::Affine(x, y) => y.square() == self.rhs(x),
        }
    }

    pub fn point(&self, x: F, y: F) -> Result<Point<F>> {
        let p = Point::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// Roots of the cubic in the field.
    pub fn rational_roots(&self) -> Vec<F> {
        match &self.roots {
            Some(r) => {
                let mut v: Vec<F> = Vec::new();
                for e in r {
                    if !v.contains(e) {
                        v.push(e.clone());
                    }
                }
                v
            }
            None => F::cubic_roots(&self.a, &self.b, &self.c),
        }
    }

    /// `O` followed by the points `(e, 0)`.
    pub fn two_torsion(&self) -> Vec<Point<F>> {
        std::iter::once(Point::O)
            .chain(
                self.rational_roots()
                    .into_iter()
                    .map(|e| Point::Affine(e, F::zero())),
            )
            .collect()
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    /// Chord and tangent addition for points already known to be on the curve.
    pub fn add_unchecked(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::O, _) => return q.clone(),
            (_, Point::O) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1.clone() + y2.clone()).is_zero() {
                return Point::O;
            }
            let num = F::from_int(3) * x1.square()
                + F::from_int(2) * self.a.clone() * x1.clone()
                + self.b.clone();
            num.div(&(F::from_int(2) * y1.clone())).unwrap()
        } else {
            (y2.clone() - y1.clone())
                .div(&(x2.clone() - x1.clone()))
                .unwrap()
        };
        let x3 = lambda.square() - self.a.clone() - x1.clone() - x2.clone();
        let y3 = -(y1.clone() + lambda * (x3.clone() - x1.clone()));
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add_unchecked(p, p)
    }

    /// `[m] P` by double-and-add; negative `m` allowed.
    pub fn scalar_mul(&self, m: i64, p: &Point<F>) -> Point<F> {
        let base = if m < 0 { p.neg() } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = Point::O;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.double(&pow);
            }
        }
        acc
    }

    /// `sum m_i P_i`
    pub fn combination(&self, coeffs: &[i64], points: &[Point<F>]) -> Point<F> {
        coeffs
            .iter()
            .zip(points)
            .fold(Point::O, |acc, (&m, p)| {
                self.add_unchecked(&acc, &self.scalar_mul(m, p))
            })
    }
}

impl<F: Field> fmt::Display for Curve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 = x^3 + ({})*x^2 + ({})*x + ({})",
            self.a, self.b, self.c
        )
    }
}

impl Curve<RatFunc> {
    /// True when the j-invariant is not constant.
    pub fn is_nonconstant(&self) -> bool {
        self.j_invariant().as_constant().is_none()
    }
}

/// `x = p / q^2` with `p, q` in Z[t] and coprime over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XDecomposition {
    pub p: IntPoly,
    pub q: IntPoly,
}

/// Write `x(P)` as `p / q^2`.
///
/// The primitive part of the reduced denominator must be a square in Z[t];
/// the integer content is absorbed by scaling `p` and `q` by its square-free
/// part.
pub fn x_decompose(p: &Point<RatFunc>) -> Result<XDecomposition> {
    let x = p
        .x()
        .ok_or_else(|| Error::Invalid("the point at infinity has no x-coordinate".into()))?;
    let den = x.den();
    let content = den.content()?;
    let prim = den.primitive_part()?;
    let root = prim.sqrt().ok_or_else(|| {
        Error::NonSquareDenominator(format!("denominator {den} of x = {x} is not a square"))
    })?;
    let fac = factor_int(&content)?;
    let mut k = BigInt::from(1);
    let mut s = BigInt::from(1);
    for (prime, e) in &fac.factors {
        if e % 2 == 1 {
            k *= prime;
        }
        s *= prime.pow(e / 2);
    }
    // den = s^2 k prim, so k den = (k s root)^2
    Ok(XDecomposition {
        p: x.num().scale(&k),
        q: root.scale(&(k * s)),
    })
}

/// A model with Z[t] coefficients, optionally in split form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralModel {
    pub a: IntPoly,
    pub b: IntPoly,
    pub c: IntPoly,
    pub roots: Option<[IntPoly; 3]>,
}

impl IntegralModel {
    pub fn new(a: IntPoly, b: IntPoly, c: IntPoly) -> Self {
        IntegralModel {
            a,
            b,
            c,
            roots: None,
        }
    }

    pub fn from_roots(e1: IntPoly, e2: IntPoly, e3: IntPoly) -> Self {
        let a = -&(&(&e1 + &e2) + &e3);
        let b = &(&(&e1 * &e2) + &(&e1 * &e3)) + &(&e2 * &e3);
        let c = -&(&(&e1 * &e2) * &e3);
        IntegralModel {
            a,
            b,
            c,
            roots: Some([e1, e2, e3]),
        }
    }

    /// Discriminant of the cubic, `D`.
    pub fn discriminant(&self) -> IntPoly {
        cubic_discriminant(&self.a, &self.b, &self.c)
    }

    /// Discriminant of the curve, `16 D`.
    pub fn delta(&self) -> IntPoly {
        self.discriminant().scale(&BigInt::from(16))
    }

    pub fn curve(&self) -> Result<Curve<RatFunc>> {
        let lift = |p: &IntPoly| RatFunc::from_poly(p.clone());
        match &self.roots {
            Some([e1, e2, e3]) => Curve::from_roots(lift(e1), lift(e2), lift(e3)),
            None => Curve::new(lift(&self.a), lift(&self.b), lift(&self.c)),
        }
    }

    /// Roots of the cubic lying in Z[t].
    pub fn integral_roots(&self) -> Vec<IntPoly> {
        if let Some(r) = &self.roots {
            let mut v: Vec<IntPoly> = r.to_vec();
            v.sort();
            v.dedup();
            return v;
        }
        crate::funcfield::integral_cubic_roots(&self.a, &self.b, &self.c)
    }

    /// The model after `x -> x + r` for a root `r`, so that `(0, 0)` is the
    /// image of `(r, 0)` and `C = 0`.
    pub fn shift_to_origin(&self, r: &IntPoly) -> Result<IntegralModel> {
        let three = BigInt::from(3);
        let f_r = &(&(&(&(r * r) * r) + &(&(&self.a * r) * r)) + &(&self.b * r)) + &self.c;
        if !f_r.is_zero() {
            return Err(Error::Invalid(format!("{r} is not a root of the cubic")));
        }
        let a = &self.a + &r.scale(&three);
        let b = &(&self.b + &(&self.a * r).scale(&BigInt::from(2))) + &(r * r).scale(&three);
        let roots = self
            .roots
            .as_ref()
            .map(|es| [&es[0] - r, &es[1] - r, &es[2] - r]);
        Ok(IntegralModel {
            a,
            b,
            c: IntPoly::zero(),
            roots,
        })
    }

    /// The specialized model over Q; errors when `D(t0) = 0`.
    pub fn specialize(&self, t0: &BigRat) -> Result<Curve<BigRat>> {
        let ev = |p: &IntPoly| p.eval(t0);
        match &self.roots {
            Some([e1, e2, e3]) => Curve::from_roots(ev(e1), ev(e2), ev(e3)),
            None => Curve::new(ev(&self.a), ev(&self.b), ev(&self.c)),
        }
        .map_err(|_| Error::Singular(format!("D({}) = 0", crate::arith::format_rat(t0))))
    }

    /// All of A, B, C constant.
    pub fn is_constant(&self) -> bool {
        self.a.is_constant() && self.b.is_constant() && self.c.is_constant()
    }
}

impl fmt::Display for IntegralModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.roots {
            Some([e1, e2, e3]) => write!(f, "e=({e1}, {e2}, {e3})"),
            None => f.write_str(&crate::parse::format_equation(&self.a, &self.b, &self.c)),
        }
    }
}

impl std::str::FromStr for IntegralModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_curve(s)
    }
}
