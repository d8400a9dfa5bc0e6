//! 2-descent over Q(t): the maps `Theta_i` into square classes and the
//! 2-isogeny `phi: E -> E'`, `psi: E' -> E` for models `y^2 = x^3 + A x^2 + B x`.

use std::fmt;

use crate::arith::{factor_int, BigInt};
use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::funcfield::RatFunc;
use crate::polyring::IntPoly;

/// An element of `Q(t)^* / (Q(t)^*)^2`, represented by the square-free
/// polynomial `s` with the sign and content it carries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareClass {
    rep: IntPoly,
}

impl SquareClass {
    pub fn trivial() -> Self {
        SquareClass { rep: IntPoly::one() }
    }

    /// The class of a nonzero rational function.
    pub fn of(v: &RatFunc) -> Result<Self> {
        if Field::is_zero(v) {
            return Err(Error::ZeroInput("square class"));
        }
        // num/den and num*den differ by the square den^2
        Ok(SquareClass {
            rep: squarefree_part(&(v.num() * v.den()))?,
        })
    }

    pub fn of_poly(p: &IntPoly) -> Result<Self> {
        Ok(SquareClass {
            rep: squarefree_part(p)?,
        })
    }

    pub fn representative(&self) -> &IntPoly {
        &self.rep
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass::of_poly(&(&self.rep * &other.rep)).expect("nonzero")
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareClass({})", self.rep)
    }
}

/// Square-free part with sign, via Yun and an integer factorization of the
/// content. No polynomial factoring is needed.
fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    let d = p.squarefree_decompose()?;
    let mut c = BigInt::from(d.unit);
    for (prime, e) in factor_int(&d.content)?.factors {
        if e % 2 == 1 {
            c *= prime;
        }
    }
    Ok(d.factors
        .iter()
        .filter(|(_, m)| m % 2 == 1)
        .fold(IntPoly::constant(c), |acc, (f, _)| &acc * f))
}

fn split_roots(curve: &Curve<RatFunc>) -> Result<&[RatFunc; 3]> {
    curve
        .split_roots()
        .ok_or_else(|| Error::WrongShape("2-descent needs a curve given by its three roots".into()))
}

fn check_index(i: usize) -> Result<(usize, usize, usize)> {
    match i {
        1 => Ok((0, 1, 2)),
        2 => Ok((1, 0, 2)),
        3 => Ok((2, 0, 1)),
        _ => Err(Error::Invalid(format!("root index {i} is not 1, 2 or 3"))),
    }
}

/// `Theta_i(P)`: the class of `x - e_i`, of `(e_j - e_i)(e_k - e_i)` at
/// `(e_i, 0)`, and trivial at `O`.
pub fn theta(curve: &Curve<RatFunc>, i: usize, p: &Point<RatFunc>) -> Result<SquareClass> {
    let roots = split_roots(curve)?;
    let (ii, j, k) = check_index(i)?;
    let ei = &roots[ii];
    match p {
        Point::O => Ok(SquareClass::trivial()),
        Point::Affine(x, _) if x == ei => {
            SquareClass::of(&(&(&roots[j] - ei) * &(&roots[k] - ei)))
        }
        Point::Affine(x, _) => SquareClass::of(&(x - ei)),
    }
}

/// All three classes of `P`.
pub fn thetas(curve: &Curve<RatFunc>, p: &Point<RatFunc>) -> Result<[SquareClass; 3]> {
    Ok([theta(curve, 1, p)?, theta(curve, 2, p)?, theta(curve, 3, p)?])
}

/// `P` lies in `2 E(Q(t))` exactly when all three classes are trivial.
pub fn in_double(curve: &Curve<RatFunc>, p: &Point<RatFunc>) -> Result<bool> {
    Ok(thetas(curve, p)?.iter().all(SquareClass::is_trivial))
}

/// `(e_j - e_i)(e_k - e_i)`, which every `s_i(P)` divides.
pub fn divisibility_bound(curve: &Curve<RatFunc>, i: usize) -> Result<IntPoly> {
    let roots = split_roots(curve)?;
    let (ii, j, k) = check_index(i)?;
    let v = &(&roots[j] - &roots[ii]) * &(&roots[k] - &roots[ii]);
    v.as_poly()
        .cloned()
        .ok_or_else(|| Error::NotIntegral(format!("roots must lie in Z[t], got {v}")))
}

/// The pair of 2-isogenies between `E: y^2 = x^3 + A x^2 + B x` and
/// `E': y^2 = x^3 - 2A x^2 + (A^2 - 4B) x`.
#[derive(Clone, Debug)]
pub struct TwoIsogeny<F> {
    pub source: Curve<F>,
    pub dual: Curve<F>,
}

/// `y^2 = x^3 - 2A x^2 + (A^2 - 4B) x`
pub fn dual_curve<F: Field>(curve: &Curve<F>) -> Result<Curve<F>> {
    if !curve.c().is_zero() {
        return Err(Error::WrongShape("the dual curve needs C = 0".into()));
    }
    if curve.b().is_zero() {
        return Err(Error::WrongShape("the dual curve needs B != 0".into()));
    }
    let a = curve.a().clone();
    let b = curve.b().clone();
    Curve::new(
        F::from_int(-2) * a.clone(),
        a.square() - F::from_int(4) * b,
        F::zero(),
    )
}

fn is_kernel<F: Field>(p: &Point<F>) -> bool {
    match p {
        Point::O => true,
        Point::Affine(x, y) => x.is_zero() && y.is_zero(),
    }
}

/// `(y^2 / (k x^2), y (x^2 - b) / (k' x^2))` with `(k, k')` = (1, 1) for phi
/// and (4, 8) for psi; the kernel goes to `O`.
fn isogeny_map<F: Field>(p: &Point<F>, b: &F, k: i64) -> Point<F> {
    if is_kernel(p) {
        return Point::O;
    }
    let (x, y) = match p {
        Point::Affine(x, y) => (x, y),
        Point::O => unreachable!(),
    };
    let x2 = x.square();
    let nx = y.square().div(&(F::from_int(k) * x2.clone())).unwrap();
    let ky = if k == 1 { 1 } else { 8 };
    let ny = (y.clone() * (x2.clone() - b.clone()))
        .div(&(F::from_int(ky) * x2))
        .unwrap();
    Point::Affine(nx, ny)
}

/// Preimage of `target` under the map with source coefficients `(a, b)`:
/// its x solves `x^2 + (a - k X) x + b = 0` and `X` must be a square.
fn isogeny_preimage<F: Field>(
    src: &Curve<F>,
    target: &Point<F>,
    k: i64,
) -> Option<Point<F>> {
    if is_kernel(target) {
        return Some(Point::O);
    }
    let big_x = target.x()?;
    let u = big_x.sqrt()?;
    let m = src.a().clone() - F::from_int(k) * big_x.clone();
    let disc = m.square() - F::from_int(4) * src.b().clone();
    let s = disc.sqrt()?;
    let half = F::from_int(2).inv().unwrap();
    for x in [(-m.clone() + s.clone()) * half.clone(), (-m.clone() - s.clone()) * half.clone()] {
        if x.is_zero() {
            continue;
        }
        // y(P)^2 = k X x^2, so y = +-sqrt(k) u x; only k in {1, 4} occurs
        let root_k = if k == 1 { F::one() } else { F::from_int(2) };
        for sign in [1, -1] {
            let y = F::from_int(sign) * root_k.clone() * u.clone() * x.clone();
            let cand = Point::Affine(x.clone(), y);
            if src.contains(&cand) && isogeny_map(&cand, src.b(), k) == *target {
                return Some(cand);
            }
        }
    }
    None
}

impl<F: Field> TwoIsogeny<F> {
    pub fn new(source: Curve<F>) -> Result<Self> {
        let dual = dual_curve(&source)?;
        Ok(TwoIsogeny { source, dual })
    }

    /// `phi(x, y) = (y^2 / x^2, y (x^2 - B) / x^2)`
    pub fn phi(&self, p: &Point<F>) -> Point<F> {
        isogeny_map(p, self.source.b(), 1)
    }

    /// `psi(x, y) = (y^2 / (4x^2), y (x^2 - (A^2 - 4B)) / (8x^2))`
    pub fn psi(&self, p: &Point<F>) -> Point<F> {
        isogeny_map(p, self.dual.b(), 4)
    }

    /// A point `P` with `phi(P) = target`, when one exists.
    pub fn phi_preimage(&self, target: &Point<F>) -> Option<Point<F>> {
        isogeny_preimage(&self.source, target, 1)
    }

    /// A point `P'` with `psi(P') = target`, when one exists.
    pub fn psi_preimage(&self, target: &Point<F>) -> Option<Point<F>> {
        isogeny_preimage(&self.dual, target, 4)
    }
}

/// Whether `v` is a nonzero square; exposed for the image criterion.
pub fn is_square<F: Field>(v: &F) -> bool {
    !v.is_zero() && v.sqrt().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigRat;
    use crate::parse::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn r22() -> Curve<RatFunc> {
        Curve::from_roots(rf("0"), rf("t"), rf("7*t+1")).unwrap()
    }

    #[test]
    fn theta_special_cases() {
        let c = r22();
        assert!(theta(&c, 1, &Point::O).unwrap().is_trivial());
        let e1 = Point::new(RatFunc::zero(), RatFunc::zero());
        assert_eq!(theta(&c, 1, &e1).unwrap().representative(), &poly("t*(7*t+1)"));
        assert!(!in_double(&c, &e1).unwrap());
        assert!(in_double(&c, &Point::O).unwrap());
        assert!(theta(&c, 4, &e1).is_err());
    }

    #[test]
    fn bounds_on_the_split_example() {
        let c = r22();
        assert_eq!(divisibility_bound(&c, 1).unwrap(), poly("t*(7*t+1)"));
        assert_eq!(divisibility_bound(&c, 2).unwrap(), poly("-t*(6*t+1)"));
        assert_eq!(divisibility_bound(&c, 3).unwrap(), poly("(7*t+1)*(6*t+1)"));
        let constant = Curve::from_roots(rf("0"), rf("1"), rf("-1")).unwrap();
        assert_eq!(divisibility_bound(&constant, 1).unwrap(), poly("-1"));
        let unsplit = Curve::new(RatFunc::zero(), rf("1"), rf("1")).unwrap();
        assert!(matches!(divisibility_bound(&unsplit, 1), Err(Error::WrongShape(_))));
    }

    #[test]
    fn square_classes() {
        assert_eq!(SquareClass::of(&rf("(4*t^3)/(9*(t+1)^2)")).unwrap().representative(), &poly("t"));
        assert_eq!(SquareClass::of(&rf("-12/t")).unwrap().representative(), &poly("-3*t"));
        assert!(SquareClass::of(&rf("(t-1)^2/25")).unwrap().is_trivial());
        assert!(SquareClass::of(&RatFunc::zero()).is_err());
    }

    #[test]
    fn dual_examples() {
        let c = Curve::new(rf("t^2"), rf("-1"), RatFunc::zero()).unwrap();
        let d = dual_curve(&c).unwrap();
        assert_eq!((d.a(), d.b(), d.c()), (&rf("-2*t^2"), &rf("t^4+4"), &RatFunc::zero()));
        // D' = 16 B (A^2 - 4B)^2
        assert_eq!(d.discriminant(), &(rf("16") * c.b().clone() * rf("(t^4+4)^2")));
        let q = |n: i64| BigRat::from_integer(n.into());
        let e = dual_curve(&Curve::new(q(0), q(1), q(0)).unwrap()).unwrap();
        assert_eq!((e.a(), e.b()), (&q(0), &q(-4)));
        assert!(dual_curve(&Curve::new(q(0), q(1), q(1)).unwrap()).is_err());
    }

    #[test]
    fn isogeny_on_the_quartic_example() {
        let c = Curve::new(rf("t^2"), rf("-1"), RatFunc::zero()).unwrap();
        let iso = TwoIsogeny::new(c.clone()).unwrap();
        let p = c.point(rf("1"), rf("t")).unwrap();
        let img = iso.phi(&p);
        assert!(iso.dual.contains(&img));
        assert_eq!(iso.psi(&img), c.double(&p));
        assert_eq!(iso.phi(&Point::new(RatFunc::zero(), RatFunc::zero())), Point::O);
        assert_eq!(iso.psi(&Point::new(RatFunc::zero(), RatFunc::zero())), Point::O);
        assert_eq!(iso.phi_preimage(&img).map(|q| iso.phi(&q)), Some(img));
        // x(P) = 1 is a square, so P is in the image of psi
        let pre = iso.psi_preimage(&p).unwrap();
        assert_eq!(iso.psi(&pre), p);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// `y^2 = (x + u^2)(x + v^2)(x + w^2)` with the point `(0, uvw)`.
        fn family() -> impl Strategy<Value = (Curve<RatFunc>, Point<RatFunc>)> {
            let lin = (-3i64..4, -3i64..4).prop_map(|(a, b)| IntPoly::from_i64s(&[a, b]));
            (lin.clone(), lin.clone(), lin).prop_filter_map("nonsingular", |(u, v, w)| {
                let sq = |p: &IntPoly| RatFunc::from_poly(p * p);
                let curve = Curve::from_roots(-sq(&u), -sq(&v), -sq(&w)).ok()?;
                let y = RatFunc::from_poly(&(&u * &v) * &w);
                if Field::is_zero(&y) {
                    return None;
                }
                let p = curve.point(RatFunc::zero(), y).ok()?;
                Some((curve, p))
            })
        }

        fn sample(curve: &Curve<RatFunc>, p: &Point<RatFunc>, m: i64, tor: usize) -> Point<RatFunc> {
            let t = curve.two_torsion();
            curve.add_unchecked(&curve.scalar_mul(m, p), &t[tor % t.len()])
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(50))]
            #[test]
            fn theta_is_a_homomorphism(
                (curve, p) in family(),
                m in -2i64..3, n in -2i64..3, ta in 0usize..4, tb in 0usize..4,
            ) {
                let a = sample(&curve, &p, m, ta);
                let b = sample(&curve, &p, n, tb);
                let ab = curve.add(&a, &b).unwrap();
                for i in 1..=3 {
                    let sa = theta(&curve, i, &a).unwrap();
                    let sb = theta(&curve, i, &b).unwrap();
                    prop_assert_eq!(theta(&curve, i, &ab).unwrap(), sa.mul(&sb));
                }
                for q in [&a, &b, &ab] {
                    let s = thetas(&curve, q).unwrap();
                    let prod = &(s[0].representative() * s[1].representative()) * s[2].representative();
                    prop_assert!(prod.sqrt().is_some(), "s1 s2 s3 = {}", prod);
                    for i in 1..=3 {
                        let bound = divisibility_bound(&curve, i).unwrap();
                        prop_assert!(s[i - 1].representative().divides(&bound));
                    }
                    prop_assert!(in_double(&curve, &curve.double(q)).unwrap());
                }
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(25))]
            #[test]
            fn psi_after_phi_is_doubling((curve, p) in family(), m in -2i64..3, tor in 0usize..4) {
                // move the root -u^2 to the origin: x -> x - u^2
                let e = curve.split_roots().unwrap().clone();
                let shifted = Curve::from_roots(
                    RatFunc::zero(), &e[1] - &e[0], &e[2] - &e[0],
                );
                prop_assume!(shifted.is_ok());
                let shifted = shifted.unwrap();
                let q = sample(&curve, &p, m, tor);
                let q = match q {
                    Point::O => Point::O,
                    Point::Affine(x, y) => Point::Affine(&x - &e[0], y),
                };
                prop_assert!(shifted.contains(&q));
                let iso = TwoIsogeny::new(shifted.clone()).unwrap();
                let img = iso.phi(&q);
                prop_assert!(iso.dual.contains(&img));
                prop_assert_eq!(iso.psi(&img), shifted.double(&q));
                // image criterion in both directions
                if let Some(x) = img.x() {
                    if !Field::is_zero(x) {
                        prop_assert!(is_square(x));
                    }
                }
                prop_assert!(iso.phi_preimage(&img).is_some());
                if let Some(x) = q.x() {
                    if !Field::is_zero(x) {
                        prop_assert_eq!(is_square(x), iso.psi_preimage(&q).is_some());
                    }
                }
                // phi is a homomorphism
                let t = shifted.two_torsion();
                let other = &t[tor % t.len()];
                prop_assert_eq!(
                    iso.phi(&shifted.add(&q, other).unwrap()),
                    iso.dual.add(&iso.phi(&q), &iso.phi(other)).unwrap()
                );
            }
        }
    }
}
