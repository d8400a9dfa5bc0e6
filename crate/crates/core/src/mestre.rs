//! The twist family `E_g: y^2 = x^3 + a g^2 x + b g^3` of `y^2 = x^3 + ax + b`
//! by the degree 14 polynomial
//! `g = -ab (t^2+1) (b^2 (t^4+t^2+1)^3 + a^3 t^4 (t^2+1)^2)`,
//! its two points `P`, `Q`, degree heights, and the free-generator record.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rat, BigInt, BigRat};
use crate::curve::{Curve, IntegralModel, Point};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::funcfield::RatFunc;
use crate::injectivity::{check, Condition, InjectivityCertificate, PreparedCondition};
use crate::parse::format_point;
use crate::polyring::IntPoly;
use crate::specialize::specialize_point;

/// Largest degree of `w * beta` when `deg(x(T)/g) <= 2`.
const SMALL_DEGREE_BOUND: usize = 8;

#[derive(Clone, Debug)]
pub struct MestreInstance {
    pub a: BigRat,
    pub b: BigRat,
    /// `g` in Q[t].
    pub g: RatFunc,
    /// `E_g` over Q(t) with `A = C' = 0`, `B = a g^2`, `C = b g^3`.
    pub curve: Curve<RatFunc>,
    pub p: Point<RatFunc>,
    pub q: Point<RatFunc>,
    /// `lambda` with `(x, y) -> (lambda^2 x, lambda^3 y)` taking `E_g` to
    /// [`MestreInstance::model`]; 1 when `a`, `b` and `g` are integral.
    pub scale: BigInt,
    /// `E_g` with Z[t] coefficients after scaling by `lambda`.
    pub model: IntegralModel,
}

fn poly(coeffs: &[i64]) -> RatFunc {
    RatFunc::from_poly(IntPoly::from_i64s(coeffs))
}

/// `g^{a,b}` as an element of Q(t).
pub fn mestre_g(a: &BigRat, b: &BigRat) -> RatFunc {
    let t2p1 = poly(&[1, 0, 1]);
    let quartic = poly(&[1, 0, 1, 0, 1]);
    let t4 = poly(&[0, 0, 0, 0, 1]);
    let a3 = a * a * a;
    let inner = &quartic.pow(3).scale(&(b * b)) + &(&t4 * &t2p1.pow(2)).scale(&a3);
    (&t2p1 * &inner).scale(&-(a * b))
}

impl MestreInstance {
    /// Builds the family member and checks every stated property of `g`,
    /// `P` and `Q`.
    pub fn build(a: &BigRat, b: &BigRat) -> Result<Self> {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return Err(Error::Invalid("the family needs ab != 0".into()));
        }
        let g = mestre_g(a, b);
        let g_num = g.num();
        if g_num.deg() != 14 {
            return Err(Error::Invariant(format!("deg g = {}", g_num.deg())));
        }
        if !g_num.is_squarefree()? {
            return Err(Error::Invalid(format!("g = {g} is not square-free")));
        }
        let g2 = g.square();
        let curve = Curve::new(RatFunc::zero(), g2.scale(a), (&g2 * &g).scale(b))?;

        let quartic = poly(&[1, 0, 1, 0, 1]);
        let t2p1 = poly(&[1, 0, 1]);
        let base = (&quartic * &g).checked_div(&t2p1)?.scale(&-(b / a));
        let y_scale = (a * a).recip();
        let px = base.clone();
        let py = g2.checked_div(&t2p1.pow(2))?.scale(&y_scale);
        let qx = base.checked_div(&poly(&[0, 0, 1]))?;
        let qy = g2
            .checked_div(&(&poly(&[0, 0, 0, 1]) * &t2p1.pow(2)))?
            .scale(&y_scale);
        let p = curve
            .point(px, py)
            .map_err(|_| Error::Invariant("P is not on E_g".into()))?;
        let q = curve
            .point(qx, qy)
            .map_err(|_| Error::Invariant("Q is not on E_g".into()))?;

        let scale = g.den().lc() * a.denom() * b.denom();
        let lam = BigRat::from(scale.clone());
        let l2 = &lam * &lam;
        let integral = |v: RatFunc| {
            v.as_poly()
                .cloned()
                .ok_or_else(|| Error::Invariant(format!("{v} is not in Z[t] after scaling")))
        };
        let big_b = integral(curve.b().scale(&(&l2 * &l2)))?;
        let big_c = integral(curve.c().scale(&(&l2 * &l2 * &l2)))?;
        let model = IntegralModel::new(IntPoly::zero(), big_b, big_c);
        Ok(MestreInstance {
            a: a.clone(),
            b: b.clone(),
            g,
            curve,
            p,
            q,
            scale,
            model,
        })
    }

    pub fn build_i64(a: i64, b: i64) -> Result<Self> {
        Self::build(&BigRat::from_integer(a.into()), &BigRat::from_integer(b.into()))
    }

    /// `deg(x(T)/g)`; 0 for `O` and for points with `x(T)/g` constant.
    pub fn morphism_degree(&self, t: &Point<RatFunc>) -> usize {
        match t {
            Point::O => 0,
            Point::Affine(x, _) => {
                if Field::is_zero(x) {
                    return 0;
                }
                let ratio = x.checked_div(&self.g).expect("g is nonzero");
                ratio.deg_map().expect("ratio is nonzero")
            }
        }
    }

    /// `<T, S> = (deg(T + S) - deg T - deg S) / 2`.
    pub fn pairing(&self, t: &Point<RatFunc>, s: &Point<RatFunc>) -> BigRat {
        let sum = self.curve.add_unchecked(t, s);
        let d = |p: &Point<RatFunc>| self.morphism_degree(p) as i64;
        BigRat::new((d(&sum) - d(t) - d(s)).into(), 2.into())
    }

    /// `m P + n Q`.
    pub fn combination(&self, m: i64, n: i64) -> Point<RatFunc> {
        self.curve
            .combination(&[m, n], &[self.p.clone(), self.q.clone()])
    }

    /// Rational roots of `x^3 + ax + b`.
    pub fn base_roots(&self) -> Vec<BigRat> {
        <BigRat as Field>::cubic_roots(&Zero::zero(), &self.a, &self.b)
    }

    /// No point has `0 < deg(x(T)/g) <= 2`: for `x/g = alpha/beta` with
    /// `deg alpha, deg beta <= 2` the curve equation forces `w beta g` to be
    /// a square for some `w` of degree at most 6, which needs every root of
    /// `g` to divide `w beta`.
    pub fn small_degree_exclusion(&self) -> bool {
        degree_obstruction(self.g.num())
    }

    /// The model and condition carrying an injectivity certificate over Q,
    /// when `x^3 + ax + b` has a rational root.
    pub fn certifying_model(&self) -> Result<(IntegralModel, Condition)> {
        let roots = self.base_roots();
        let lam = BigRat::from(self.scale.clone());
        let lift = |r: &BigRat| -> Result<IntPoly> {
            let e = self.g.scale(&(r * &lam * &lam));
            e.as_poly()
                .cloned()
                .ok_or_else(|| Error::Invariant(format!("root {e} is not in Z[t]")))
        };
        match roots.len() {
            3 => Ok((
                IntegralModel::from_roots(lift(&roots[0])?, lift(&roots[1])?, lift(&roots[2])?),
                Condition::A,
            )),
            1 => Ok((self.model.clone(), Condition::ScriptA)),
            _ => Err(Error::WrongShape(format!(
                "x^3 + ({})x + ({}) has no rational root, so E_g has no rational 2-torsion point",
                format_rat(&self.a),
                format_rat(&self.b)
            ))),
        }
    }

    /// Injectivity certificate at `t0` from condition A or scriptA.
    pub fn injectivity_certificate(&self, t0: &BigRat) -> Result<InjectivityCertificate> {
        let (model, condition) = self.certifying_model()?;
        PreparedCondition::new(&model, condition)?.certificate(t0)
    }

    /// `E_g(t0)` in the integral model.
    pub fn specialized_curve(&self, t0: &BigRat) -> Result<Curve<BigRat>> {
        self.model.specialize(t0)
    }

    /// Images of `P` and `Q` on [`MestreInstance::specialized_curve`].
    pub fn specialized_points(&self, t0: &BigRat) -> Result<[Point<BigRat>; 2]> {
        let lam = BigRat::from(self.scale.clone());
        let l2 = &lam * &lam;
        let l3 = &l2 * &lam;
        let target = self.specialized_curve(t0)?;
        let scaled = |p: &Point<RatFunc>| -> Result<Point<BigRat>> {
            Ok(match specialize_point(p, t0)? {
                Point::O => Point::O,
                Point::Affine(x, y) => Point::Affine(x * &l2, y * &l3),
            })
        };
        let out = [scaled(&self.p)?, scaled(&self.q)?];
        if out.iter().any(|pt| !target.contains(pt)) {
            return Err(Error::Invariant("specialized P or Q is off E_g(t0)".into()));
        }
        Ok(out)
    }
}

fn point_text(p: &Point<RatFunc>) -> String {
    format_point(p.x().zip(p.y()))
}

/// True when a square-free `g` of degree 14 cannot divide a square `w beta g`
/// with `deg(w beta) <= 8`.
pub fn degree_obstruction(g: &IntPoly) -> bool {
    match g.is_squarefree() {
        Ok(true) => g.deg() == 14 && g.deg() > SMALL_DEGREE_BOUND,
        _ => false,
    }
}

/// A rank value computed outside this crate, with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalRank {
    pub value: u32,
    pub source: String,
}

/// How injectivity at `t0` is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InjectivityEvidence {
    /// Re-verifiable certificate over Q.
    Certified { certificate: InjectivityCertificate },
    /// Asserted by the caller; not checked here.
    Declared { source: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTable {
    pub p: usize,
    pub q: usize,
    pub p_plus_q: usize,
    pub p_minus_q: usize,
    pub pairing_pq: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticCheck {
    pub condition: Condition,
    pub passed: bool,
    pub certifying: bool,
}

/// Conclusion about `E_g(Q(t))` drawn from injectivity at `t0` and the rank
/// of `E_g(t0)(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MestreConclusion {
    pub a: String,
    pub b: String,
    pub g: String,
    pub scale: String,
    pub p: String,
    pub q: String,
    pub degrees: DegreeTable,
    pub small_degree_exclusion: bool,
    pub t0: String,
    pub injectivity: InjectivityEvidence,
    pub machine_checked: bool,
    /// Condition scriptA at `t0`, when the model has exactly one rational
    /// 2-torsion point.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub script_a_cross_check: Option<DiagnosticCheck>,
    /// Condition A1B at `t0`, reported when nothing certifies over Q.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostic: Option<DiagnosticCheck>,
    pub specialized_rank: ExternalRank,
    pub rank_lower_bound: u32,
    pub rank_upper_bound: u32,
    pub free_generators: bool,
    pub conclusion: String,
}

impl MestreConclusion {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Certificate(format!("malformed JSON: {e}")))
    }
}

impl MestreInstance {
    pub fn degree_table(&self) -> DegreeTable {
        DegreeTable {
            p: self.morphism_degree(&self.p),
            q: self.morphism_degree(&self.q),
            p_plus_q: self.morphism_degree(&self.combination(1, 1)),
            p_minus_q: self.morphism_degree(&self.combination(1, -1)),
            pairing_pq: format_rat(&self.pairing(&self.p, &self.q)),
        }
    }

    /// Combines injectivity at `t0` with the externally known rank of
    /// `E_g(t0)(Q)`. A Q-certificate is used whenever one exists at `t0`;
    /// otherwise `declared` must say where injectivity comes from.
    pub fn generator_certificate(
        &self,
        t0: &BigRat,
        rank: &ExternalRank,
        declared: Option<&str>,
    ) -> Result<MestreConclusion> {
        self.specialized_curve(t0)?;
        let (injectivity, diagnostic) = match self.injectivity_certificate(t0) {
            Ok(certificate) => (InjectivityEvidence::Certified { certificate }, None),
            Err(err) => match declared {
                None => return Err(Error::Certificate(format!("no injectivity certificate at t0 = {}: {err}", format_rat(t0)))),
                Some(source) => {
                    let report = check(&self.model, Condition::A1B, t0)?;
                    (
                        InjectivityEvidence::Declared { source: source.to_string() },
                        Some(DiagnosticCheck {
                            condition: Condition::A1B,
                            passed: report.passed,
                            certifying: false,
                        }),
                    )
                }
            },
        };
        let machine_checked = matches!(injectivity, InjectivityEvidence::Certified { .. });
        let script_a_cross_check = match self.base_roots().len() {
            1 => {
                let report = check(&self.model, Condition::ScriptA, t0)?;
                Some(DiagnosticCheck {
                    condition: Condition::ScriptA,
                    passed: report.passed,
                    certifying: true,
                })
            }
            _ => None,
        };
        let degrees = self.degree_table();
        let generators_ok = degrees.p == 4
            && degrees.q == 4
            && degrees.pairing_pq == "0"
            && self.small_degree_exclusion();
        if rank.value < 2 {
            return Err(Error::Invalid(format!(
                "rank {} at an injective t0 contradicts rank(E_g(Q(t))) >= 2",
                rank.value
            )));
        }
        let free_generators = rank.value == 2 && generators_ok;
        let conclusion = if free_generators {
            "rank(E_g/Q(t)) = 2 with free generators P, Q".to_string()
        } else {
            format!("2 <= rank(E_g/Q(t)) <= {}", rank.value)
        };
        Ok(MestreConclusion {
            a: format_rat(&self.a),
            b: format_rat(&self.b),
            g: self.g.to_string(),
            scale: self.scale.to_string(),
            p: point_text(&self.p),
            q: point_text(&self.q),
            degrees,
            small_degree_exclusion: self.small_degree_exclusion(),
            t0: format_rat(t0),
            injectivity,
            machine_checked,
            script_a_cross_check,
            diagnostic,
            specialized_rank: rank.clone(),
            rank_lower_bound: 2,
            rank_upper_bound: rank.value,
            free_generators,
            conclusion,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::injectivity::verify_certificate;

    fn r(n: i64) -> BigRat {
        BigRat::from_integer(n.into())
    }

    /// `(a, b)` pairs with `ab != 0`, `4a^3 + 27b^2 != 0` and square-free `g`.
    pub(crate) const GRID: [(i64, i64); 20] = [
        (1, 1),
        (2, 12),
        (1, -1),
        (-1, 1),
        (2, 1),
        (1, 2),
        (-2, 3),
        (3, -2),
        (-3, 1),
        (1, 3),
        (5, 7),
        (-4, 6),
        (2, -5),
        (6, 1),
        (-1, 4),
        (3, 3),
        (-5, -2),
        (7, -3),
        (4, 10),
        (-6, 9),
    ];

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(MestreInstance::build_i64(1, 0).is_err());
        assert!(MestreInstance::build_i64(0, 3).is_err());
        // 4a^3 + 27b^2 = 0 is singular
        assert!(MestreInstance::build_i64(-3, 2).is_err());
    }

    #[test]
    fn g_for_two_twelve() {
        let inst = MestreInstance::build_i64(2, 12).unwrap();
        let expected = ["t^2 + 1", "3*t^4 + 2*t^2 + 2", "3*t^4 + 4*t^2 + 3", "2*t^4 + 2*t^2 + 3"]
            .iter()
            .fold(IntPoly::constant((-192).into()), |acc, f| &acc * &f.parse::<IntPoly>().unwrap());
        assert_eq!(inst.g.as_poly(), Some(&expected));
        assert_eq!(inst.scale, BigInt::from(1));
    }

    #[test]
    fn degrees_and_pairing() {
        let inst = MestreInstance::build_i64(1, 1).unwrap();
        assert_eq!(inst.morphism_degree(&inst.p), 4);
        assert_eq!(inst.morphism_degree(&inst.q), 4);
        assert_eq!(inst.morphism_degree(&Point::O), 0);
        assert_eq!(inst.pairing(&inst.p, &inst.p), r(4));
        assert_eq!(inst.pairing(&inst.p, &inst.q), r(0));
        assert_eq!(inst.morphism_degree(&inst.combination(2, 0)), 16);
    }

    #[test]
    fn rational_parameters_scale_to_integers() {
        let inst = MestreInstance::build(&BigRat::new(1.into(), 2.into()), &BigRat::new((-3).into(), 5.into())).unwrap();
        assert!(inst.scale > BigInt::from(1));
        let t0 = r(2);
        let [p, q] = inst.specialized_points(&t0).unwrap();
        assert!(!p.is_o() && !q.is_o());
        assert_eq!(inst.degree_table().p_plus_q, 8);
    }

    #[test]
    fn small_degree_obstruction() {
        assert!(MestreInstance::build_i64(1, 1).unwrap().small_degree_exclusion());
        assert!(MestreInstance::build_i64(2, 12).unwrap().small_degree_exclusion());
        let mut doctored = MestreInstance::build_i64(1, 1).unwrap();
        doctored.g = "(t^2+1)^2*(t^10+3)".parse().unwrap();
        assert!(!doctored.small_degree_exclusion());
        assert!(!degree_obstruction(&"t^8 + 1".parse().unwrap()));
    }

    #[test]
    fn two_twelve_is_certified_at_four() {
        let inst = MestreInstance::build_i64(2, 12).unwrap();
        let (_, condition) = inst.certifying_model().unwrap();
        assert_eq!(condition, Condition::ScriptA);
        let rank = ExternalRank { value: 2, source: "declared".into() };
        let rec = inst.generator_certificate(&r(4), &rank, None).unwrap();
        assert!(rec.machine_checked && rec.free_generators);
        assert!(rec.script_a_cross_check.as_ref().unwrap().passed);
        match &rec.injectivity {
            InjectivityEvidence::Certified { certificate } => {
                verify_certificate(certificate).unwrap();
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(MestreConclusion::from_json(&rec.to_json()).unwrap(), rec);
    }

    #[test]
    fn one_one_needs_declared_injectivity() {
        let inst = MestreInstance::build_i64(1, 1).unwrap();
        assert!(inst.base_roots().is_empty());
        let rank = ExternalRank { value: 2, source: "mwrank".into() };
        assert!(inst.generator_certificate(&r(3), &rank, None).is_err());
        let rec = inst
            .generator_certificate(&r(3), &rank, Some("splitting field"))
            .unwrap();
        assert!(!rec.machine_checked);
        assert!(rec.free_generators);
        assert!(!rec.diagnostic.as_ref().unwrap().certifying);
        assert_eq!(rec.conclusion, "rank(E_g/Q(t)) = 2 with free generators P, Q");
        let three = ExternalRank { value: 3, source: "hypothetical".into() };
        let rec = inst.generator_certificate(&r(3), &three, Some("splitting field")).unwrap();
        assert!(!rec.free_generators);
        assert_eq!((rec.rank_lower_bound, rec.rank_upper_bound), (2, 3));
        let one = ExternalRank { value: 1, source: "hypothetical".into() };
        assert!(inst.generator_certificate(&r(3), &one, Some("x")).is_err());
    }

    #[test]
    fn grid_instances() {
        for (a, b) in GRID {
            let inst = MestreInstance::build_i64(a, b).unwrap_or_else(|e| panic!("({a},{b}): {e}"));
            let d = inst.degree_table();
            assert_eq!((d.p, d.q, d.p_plus_q, d.p_minus_q), (4, 4, 8, 8), "({a},{b})");
            assert_eq!(d.pairing_pq, "0");
            assert_eq!(d.p_plus_q + d.p_minus_q, 2 * (d.p + d.q));
            assert_eq!(inst.g.num().deg(), 14);
            assert!(inst.g.num().is_squarefree().unwrap());
        }
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear() {
        for (a, b, k) in [(1, 1, 2), (2, 12, 1), (-3, 1, 1)] {
            let inst = MestreInstance::build_i64(a, b).unwrap();
            let pts: Vec<(i64, i64, Point<RatFunc>)> = (-k..=k)
                .flat_map(|m| (-k..=k).map(move |n| (m, n)))
                .map(|(m, n)| (m, n, inst.combination(m, n)))
                .collect();
            for (m1, n1, s) in &pts {
                for (m2, n2, u) in &pts {
                    let pair = inst.pairing(s, u);
                    assert_eq!(pair, inst.pairing(u, s));
                    // <mP + nQ, m'P + n'Q> = 4 (m m' + n n')
                    assert_eq!(pair, r(4 * (m1 * m2 + n1 * n2)), "({m1},{n1}) ({m2},{n2})");
                }
            }
        }
    }
}
