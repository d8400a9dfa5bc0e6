//! The specialization map `E(Q(t)) -> E_t0(Q)` and a bounded search for
//! integer relations among points over Q.

use crate::arith::{format_rat, BigRat};
use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::funcfield::{Eval, RatFunc};

fn eval_coeff(v: &RatFunc, t0: &BigRat) -> Result<BigRat> {
    match v.eval(t0) {
        Eval::Value(q) => Ok(q),
        Eval::Pole => Err(Error::Invalid(format!(
            "coefficient {v} has a pole at t0 = {}",
            format_rat(t0)
        ))),
    }
}

/// The curve with `t = t0`; errors when the specialized model is singular.
pub fn specialize_curve(curve: &Curve<RatFunc>, t0: &BigRat) -> Result<Curve<BigRat>> {
    let singular = |_| Error::Singular(format!("D({}) = 0", format_rat(t0)));
    match curve.split_roots() {
        Some([e1, e2, e3]) => Curve::from_roots(
            eval_coeff(e1, t0)?,
            eval_coeff(e2, t0)?,
            eval_coeff(e3, t0)?,
        )
        .map_err(singular),
        None => Curve::new(
            eval_coeff(curve.a(), t0)?,
            eval_coeff(curve.b(), t0)?,
            eval_coeff(curve.c(), t0)?,
        )
        .map_err(singular),
    }
}

/// `sigma_t0(P)`: coordinates evaluated at `t0`, or `O` when `x(P)` has a
/// pole there.
pub fn specialize_point(p: &Point<RatFunc>, t0: &BigRat) -> Result<Point<BigRat>> {
    let (x, y) = match p {
        Point::O => return Ok(Point::O),
        Point::Affine(x, y) => (x, y),
    };
    match (x.eval(t0), y.eval(t0)) {
        (Eval::Pole, _) => Ok(Point::O),
        (Eval::Value(x0), Eval::Value(y0)) => Ok(Point::Affine(x0, y0)),
        (Eval::Value(_), Eval::Pole) => Err(Error::Invariant(format!(
            "y has a pole at {} while x does not",
            format_rat(t0)
        ))),
    }
}

/// The map applied to a curve and a point together, with the image checked
/// to lie on the specialized curve.
pub struct Specialization {
    pub t0: BigRat,
    pub source: Curve<RatFunc>,
    pub target: Curve<BigRat>,
}

impl Specialization {
    pub fn new(curve: &Curve<RatFunc>, t0: &BigRat) -> Result<Self> {
        Ok(Specialization {
            t0: t0.clone(),
            source: curve.clone(),
            target: specialize_curve(curve, t0)?,
        })
    }

    pub fn apply(&self, p: &Point<RatFunc>) -> Result<Point<BigRat>> {
        if !self.source.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let image = specialize_point(p, &self.t0)?;
        if !self.target.contains(&image) {
            return Err(Error::Invariant(format!("sigma({p}) = {image} is off the specialized curve")));
        }
        Ok(image)
    }

    /// `sigma(P + Q) == sigma(P) + sigma(Q)`.
    pub fn homomorphism_check(&self, p: &Point<RatFunc>, q: &Point<RatFunc>) -> Result<bool> {
        let sum = self.source.add(p, q)?;
        let lhs = self.apply(&sum)?;
        let rhs = self.target.add(&self.apply(p)?, &self.apply(q)?)?;
        Ok(lhs == rhs)
    }
}

/// `sigma(P + Q) == sigma(P) + sigma(Q)` at `t0`.
pub fn homomorphism_check(
    curve: &Curve<RatFunc>,
    p: &Point<RatFunc>,
    q: &Point<RatFunc>,
    t0: &BigRat,
) -> Result<bool> {
    Specialization::new(curve, t0)?.homomorphism_check(p, q)
}

/// The smallest nonzero `(m_1, ..., m_k)` with `|m_i| <= bound` and
/// `sum m_i P_i = O`, ordered by max-norm, then lexicographically, with the
/// first nonzero entry positive. `None` means no relation inside the box,
/// not independence.
pub fn relation_search<F: Field>(
    curve: &Curve<F>,
    points: &[Point<F>],
    bound: u32,
) -> Result<Option<Vec<i64>>> {
    for p in points {
        if !curve.contains(p) {
            return Err(Error::NotOnCurve);
        }
    }
    let k = points.len();
    if k == 0 {
        return Ok(None);
    }
    let b = bound as i64;
    // multiples[i][m + b] = m P_i
    let multiples: Vec<Vec<Point<F>>> = points
        .iter()
        .map(|p| {
            let mut pos = vec![Point::O];
            for m in 1..=b {
                let next = curve.add_unchecked(&pos[m as usize - 1], p);
                pos.push(next);
            }
            let mut all: Vec<Point<F>> = pos[1..].iter().rev().map(Point::neg).collect();
            all.extend(pos);
            all
        })
        .collect();
    for norm in 1..=b {
        let mut coeffs = vec![-norm; k];
        loop {
            let max = coeffs.iter().map(|c| c.abs()).max().unwrap();
            let first = coeffs.iter().find(|&&c| c != 0).copied().unwrap_or(0);
            if max == norm && first > 0 {
                let sum = coeffs.iter().enumerate().fold(Point::O, |acc, (i, &m)| {
                    curve.add_unchecked(&acc, &multiples[i][(m + b) as usize])
                });
                if sum.is_o() {
                    return Ok(Some(coeffs));
                }
            }
            // lexicographic successor in [-norm, norm]^k
            match (0..k).rev().find(|&i| coeffs[i] < norm) {
                None => break,
                Some(i) => {
                    coeffs[i] += 1;
                    for c in &mut coeffs[i + 1..] {
                        *c = -norm;
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::IntegralModel;
    use crate::injectivity::{find_t0, Condition, SearchBudget};
    use crate::parse::parse_ratfunc;
    use crate::polyring::IntPoly;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    fn quartic() -> Curve<RatFunc> {
        Curve::new(rf("t^2"), rf("-1"), RatFunc::zero()).unwrap()
    }

    #[test]
    fn specialized_models() {
        let e = specialize_curve(&quartic(), &r(2, 1)).unwrap();
        assert_eq!((e.a(), e.b(), e.c()), (&r(4, 1), &r(-1, 1), &r(0, 1)));
        let split = Curve::from_roots(rf("0"), rf("t"), rf("7*t+1")).unwrap();
        assert!(matches!(specialize_curve(&split, &r(0, 1)), Err(Error::Singular(_))));
        assert!(specialize_curve(&split, &r(1, 21)).unwrap().split_roots().is_some());
    }

    #[test]
    fn point_images() {
        let p = Point::new(rf("1"), rf("t"));
        assert_eq!(specialize_point(&p, &r(2, 1)).unwrap(), Point::new(r(1, 1), r(2, 1)));
        assert_eq!(specialize_point(&Point::O, &r(2, 1)).unwrap(), Point::O);
        let c = Point::new(rf("3/4"), rf("-5"));
        assert_eq!(specialize_point(&c, &r(7, 3)).unwrap(), Point::new(r(3, 4), r(-5, 1)));
    }

    #[test]
    fn kernel_at_zero() {
        let curve = quartic();
        let p = curve.point(rf("1"), rf("t")).unwrap();
        let two_p = curve.double(&p);
        assert!(!two_p.is_o());
        assert_eq!(two_p.x().unwrap(), &rf("1/t^2"));
        let s = Specialization::new(&curve, &r(0, 1)).unwrap();
        assert_eq!(s.apply(&two_p).unwrap(), Point::O);
        assert!(s.homomorphism_check(&p, &p).unwrap());
    }

    #[test]
    fn homomorphism_examples() {
        let curve = quartic();
        let p = curve.point(rf("1"), rf("t")).unwrap();
        let t = Point::new(RatFunc::zero(), RatFunc::zero());
        let t0 = r(2, 1);
        let pts = [p.clone(), curve.double(&p), curve.add(&p, &t).unwrap(), curve.scalar_mul(-3, &p)];
        for a in &pts {
            for b in &pts {
                assert!(homomorphism_check(&curve, a, b, &t0).unwrap());
            }
        }
        assert!(homomorphism_check(&curve, &p, &p.neg(), &t0).unwrap());
        assert!(homomorphism_check(&curve, &p, &Point::O, &t0).unwrap());
    }

    #[test]
    fn relation_search_basics() {
        let e = Curve::new(r(0, 1), r(-1, 1), r(1, 1)).unwrap();
        let p = e.point(r(1, 1), r(1, 1)).unwrap();
        assert_eq!(relation_search(&e, &[p.clone(), p.neg()], 1).unwrap(), Some(vec![1, 1]));
        assert_eq!(relation_search(&e, &[p.clone(), p.clone()], 3).unwrap(), Some(vec![1, -1]));
        // a 2-torsion point has the relation (2)
        let t = Curve::new(r(0, 1), r(-1, 1), r(0, 1)).unwrap();
        let two = t.point(r(1, 1), r(0, 1)).unwrap();
        assert_eq!(relation_search(&t, &[two], 5).unwrap(), Some(vec![2]));
        assert!(relation_search(&e, &[Point::new(r(5, 1), r(1, 1))], 2).is_err());
    }

    #[test]
    fn constant_points_are_fixed() {
        let curve = Curve::new(RatFunc::zero(), rf("-1"), rf("1")).unwrap();
        let p = curve.point(rf("1"), rf("-1")).unwrap();
        for t0 in [r(0, 1), r(5, 3), r(-7, 2)] {
            let img = specialize_point(&p, &t0).unwrap();
            assert_eq!(img, Point::new(r(1, 1), r(-1, 1)));
        }
    }

    #[test]
    fn certified_specialization_has_no_small_relations() {
        let model: IntegralModel = "y^2 = x^3 + t^2*x^2 - x".parse().unwrap();
        let (t0, _) = find_t0(&model, Condition::ScriptA, SearchBudget::default()).unwrap();
        let curve = model.curve().unwrap();
        let s = Specialization::new(&curve, &t0).unwrap();
        let p = s.apply(&curve.point(rf("1"), rf("t")).unwrap()).unwrap();
        assert_eq!(relation_search(&s.target, &[p], 10).unwrap(), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn lin() -> impl Strategy<Value = IntPoly> {
            (-3i64..4, -3i64..4).prop_map(|(a, b)| IntPoly::from_i64s(&[a, b]))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            /// When condition A certifies `t0`, no nonzero combination of a
            /// known point and 2-torsion specializes to `O`.
            #[test]
            fn condition_a_is_sound_on_samples(u in lin(), v in lin(), w in lin()) {
                let sq = |p: &IntPoly| -(p * p);
                let model = IntegralModel::from_roots(sq(&u), sq(&v), sq(&w));
                prop_assume!(!model.discriminant().is_zero());
                let curve = model.curve().unwrap();
                let y = RatFunc::from_poly(&(&u * &v) * &w);
                prop_assume!(!Field::is_zero(&y));
                let p = curve.point(RatFunc::zero(), y).unwrap();
                let budget = SearchBudget { max_int: 30, max_height: 5 };
                if let Ok((t0, _)) = find_t0(&model, Condition::A, budget) {
                    let s = Specialization::new(&curve, &t0).unwrap();
                    for t in curve.two_torsion() {
                        for m in -3i64..=3 {
                            let q = curve.add(&curve.scalar_mul(m, &p), &t).unwrap();
                            if !q.is_o() {
                                prop_assert!(!s.apply(&q).unwrap().is_o(), "m = {}, T = {}", m, t);
                            }
                        }
                    }
                }
            }
        }
    }
}
