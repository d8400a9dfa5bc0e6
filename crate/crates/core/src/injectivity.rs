//! Sufficient conditions for injectivity of the specialization map at `t0`,
//! built on the square-free divisors of polynomials attached to the model.
//!
//! * `A`: split model `(x - e1)(x - e2)(x - e3)` with `e_i` in Z[t]; no
//!   nonconstant square-free divisor `h` of any `(e_j - e_i)(e_k - e_i)` has
//!   `h(t0)` a square in Q.
//! * `Aprime`: the same test against the single product
//!   `(e1 - e2)(e2 - e3)(e3 - e1)`. Stronger than `A`.
//! * `scriptA`: model `y^2 = x^3 + A x^2 + B x` with `A^2 - 4B` not a square;
//!   the divisors of `B` and of `A^2 - 4B` are tested.
//! * `A1B`: divisors of the discriminant plus irreducibility of the
//!   specialized cubic. Diagnostic only, never a certificate.
//!
//! Zero counts as a square, so `D(t0) = 0` always fails (a linear factor of
//! the target vanishes at `t0`).

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rat, is_square_rat, parse_rat, rationals_of_height, BigInt, BigRat};
use crate::curve::IntegralModel;
use crate::error::{Error, Result};
use crate::polyring::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "Aprime")]
    APrime,
    #[serde(rename = "scriptA")]
    ScriptA,
    #[serde(rename = "A1B")]
    A1B,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::A => "A",
            Condition::APrime => "Aprime",
            Condition::ScriptA => "scriptA",
            Condition::A1B => "A1B",
        }
    }

    /// Whether a pass proves injectivity.
    pub fn is_certifying(self) -> bool {
        matches!(self, Condition::A | Condition::APrime | Condition::ScriptA)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Condition::A),
            "Aprime" | "A'" => Ok(Condition::APrime),
            "scriptA" => Ok(Condition::ScriptA),
            "A1B" => Ok(Condition::A1B),
            _ => Err(Error::Invalid(format!(
                "unknown condition {s:?}; expected A, Aprime, scriptA or A1B"
            ))),
        }
    }
}

/// Nonconstant square-free divisors of a target, both signs, in the order
/// produced by [`enumerate_divisors`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSet {
    pub target: IntPoly,
    pub divisors: Vec<IntPoly>,
    /// Square-free constants `+-prod(S)` other than 1.
    pub constants: Vec<IntPoly>,
}

/// All `eps * prod(S) * prod(T)` with `eps = +-1`, `S` a set of distinct
/// primes of the content and `T` a nonempty set of distinct irreducible
/// factors. Order: `T` by bitmask, then `S` by bitmask, then `+` before `-`.
///
/// Every content prime is offered, whatever its multiplicity: a prime `p`
/// dividing the target makes `p * h` a square-free divisor as soon as `h` is.
pub fn enumerate_divisors(target: &IntPoly) -> Result<DivisorSet> {
    let fac = target.factor()?;
    let primes = fac.primes();
    let polys = fac.irreducibles();
    let contents: Vec<BigInt> = (0u64..1 << primes.len())
        .map(|mask| {
            primes
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, p)| p.clone())
                .product()
        })
        .collect();
    let mut divisors = Vec::new();
    for tmask in 1u64..1 << polys.len() {
        let prod = polys
            .iter()
            .enumerate()
            .filter(|(k, _)| tmask >> k & 1 == 1)
            .fold(IntPoly::one(), |acc, (_, f)| &acc * f);
        for c in &contents {
            let h = prod.scale(c);
            divisors.push(h.clone());
            divisors.push(-h);
        }
    }
    let mut constants = Vec::new();
    for c in &contents {
        let h = IntPoly::constant(c.clone());
        if !h.is_one() {
            constants.push(h.clone());
        }
        constants.push(-h);
    }
    Ok(DivisorSet {
        target: target.clone(),
        divisors,
        constants,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCheck {
    pub h: IntPoly,
    pub value: BigRat,
    pub square: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub label: String,
    pub target: IntPoly,
    pub checks: Vec<DivisorCheck>,
}

impl GroupReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &DivisorCheck> {
        self.checks.iter().filter(|c| c.square)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: Condition,
    pub t0: BigRat,
    /// `D(t0)` for the cubic of the model.
    pub discriminant_value: BigRat,
    pub groups: Vec<GroupReport>,
    /// `scriptA` only: verdict when square-free constant divisors are also
    /// tested. Nonconstant and constant readings agree whenever this matches
    /// `divisors_pass`.
    pub constant_reading: Option<bool>,
    /// `A1B` only: the specialized cubic has no rational root.
    pub irreducible_at_t0: Option<bool>,
    /// No tested divisor is a square at `t0`.
    pub divisors_pass: bool,
    pub passed: bool,
    pub certifying: bool,
}

impl ConditionReport {
    pub fn witnesses(&self) -> Vec<(&str, &DivisorCheck)> {
        self.groups
            .iter()
            .flat_map(|g| g.witnesses().map(move |c| (g.label.as_str(), c)))
            .collect()
    }

    pub fn nonsingular(&self) -> bool {
        !self.discriminant_value.is_zero()
    }
}

#[derive(Clone, Debug)]
struct Group {
    label: String,
    divisors: DivisorSet,
}

/// A condition with its divisor sets computed once, ready to be evaluated
/// at many `t0`.
#[derive(Clone, Debug)]
pub struct PreparedCondition {
    pub condition: Condition,
    /// The model as given.
    pub model: IntegralModel,
    /// The model the condition is stated on (shifted for `scriptA`).
    pub working: IntegralModel,
    /// Root moved to the origin for `scriptA`, if any.
    pub shift: Option<IntPoly>,
    discriminant: IntPoly,
    groups: Vec<Group>,
}

fn group(label: &str, target: IntPoly) -> Result<Group> {
    Ok(Group {
        label: label.to_string(),
        divisors: enumerate_divisors(&target)?,
    })
}

/// The model in the form `y^2 = x^3 + A x^2 + B x` with `A^2 - 4B` not a
/// square, shifting a unique integral root to the origin when `C != 0`.
pub fn one_torsion_model(model: &IntegralModel) -> Result<(IntegralModel, Option<IntPoly>)> {
    let (working, shift) = if model.c.is_zero() {
        (model.clone(), None)
    } else {
        let roots = model.integral_roots();
        match roots.len() {
            0 => {
                return Err(Error::WrongShape(
                    "the cubic has no root in Z[t], so there is no rational 2-torsion point".into(),
                ))
            }
            1 => (model.shift_to_origin(&roots[0])?, Some(roots[0].clone())),
            _ => {
                return Err(Error::WrongShape(
                    "the cubic splits over Z[t]; use condition A".into(),
                ))
            }
        }
    };
    let disc = &(&working.a * &working.a) - &working.b.scale(&BigInt::from(4));
    if working.b.is_zero() {
        return Err(Error::WrongShape("B = 0 makes the model singular".into()));
    }
    if disc.sqrt().is_some() {
        return Err(Error::WrongShape(
            "A^2 - 4B is a square in Z[t]; the cubic splits, use condition A".into(),
        ));
    }
    let working = IntegralModel {
        roots: None,
        ..working
    };
    Ok((working, shift))
}

impl PreparedCondition {
    pub fn new(model: &IntegralModel, condition: Condition) -> Result<Self> {
        let discriminant = model.discriminant();
        if discriminant.is_zero() {
            return Err(Error::Singular(format!("the discriminant of {model} is 0")));
        }
        let mut working = model.clone();
        let mut shift = None;
        let groups = match condition {
            Condition::A | Condition::APrime => {
                let [e1, e2, e3] = model.roots.as_ref().ok_or_else(|| {
                    Error::WrongShape(format!(
                        "condition {condition} needs a split model e=(e1, e2, e3)"
                    ))
                })?;
                if condition == Condition::A {
                    vec![
                        group("(e1 - e2)(e1 - e3)", &(e1 - e2) * &(e1 - e3))?,
                        group("(e2 - e1)(e2 - e3)", &(e2 - e1) * &(e2 - e3))?,
                        group("(e3 - e1)(e3 - e2)", &(e3 - e1) * &(e3 - e2))?,
                    ]
                } else {
                    vec![group(
                        "(e1 - e2)(e2 - e3)(e3 - e1)",
                        &(&(e1 - e2) * &(e2 - e3)) * &(e3 - e1),
                    )?]
                }
            }
            Condition::ScriptA => {
                let (w, s) = one_torsion_model(model)?;
                let a2_4b = &(&w.a * &w.a) - &w.b.scale(&BigInt::from(4));
                let groups = vec![group("B", w.b.clone())?, group("A^2 - 4B", a2_4b)?];
                working = w;
                shift = s;
                groups
            }
            Condition::A1B => vec![group("D", discriminant.clone())?],
        };
        Ok(PreparedCondition {
            condition,
            model: model.clone(),
            working,
            shift,
            discriminant,
            groups,
        })
    }

    /// Total number of divisors evaluated per `t0`.
    pub fn divisor_count(&self) -> usize {
        self.groups.iter().map(|g| g.divisors.divisors.len()).sum()
    }

    pub fn evaluate(&self, t0: &BigRat) -> ConditionReport {
        let mut groups = Vec::new();
        for g in &self.groups {
            let checks = g
                .divisors
                .divisors
                .iter()
                .map(|h| {
                    let value = h.eval(t0);
                    let square = is_square_rat(&value).is_some();
                    DivisorCheck {
                        h: h.clone(),
                        value,
                        square,
                    }
                })
                .collect();
            groups.push(GroupReport {
                label: g.label.clone(),
                target: g.divisors.target.clone(),
                checks,
            });
        }
        let discriminant_value = self.discriminant.eval(t0);
        let divisors_pass = discriminant_value != BigRat::zero()
            && groups.iter().all(|g| g.witnesses().next().is_none());
        let constant_reading = (self.condition == Condition::ScriptA).then(|| {
            divisors_pass
                && self.groups.iter().all(|g| {
                    g.divisors
                        .constants
                        .iter()
                        .all(|c| is_square_rat(&c.eval(t0)).is_none())
                })
        });
        let irreducible_at_t0 = (self.condition == Condition::A1B).then(|| {
            let q = |p: &IntPoly| p.eval(t0);
            <BigRat as crate::field::Field>::cubic_roots(&q(&self.model.a), &q(&self.model.b), &q(&self.model.c)).is_empty()
        });
        let passed = divisors_pass && irreducible_at_t0.unwrap_or(true);
        ConditionReport {
            condition: self.condition,
            t0: t0.clone(),
            discriminant_value,
            groups,
            constant_reading,
            irreducible_at_t0,
            divisors_pass,
            passed,
            certifying: passed && self.condition.is_certifying(),
        }
    }

    /// Quick verdict without building the report.
    pub fn passes(&self, t0: &BigRat) -> bool {
        if self.discriminant.eval(t0).is_zero() {
            return false;
        }
        let divisors_ok = self.groups.iter().all(|g| {
            g.divisors
                .divisors
                .iter()
                .all(|h| is_square_rat(&h.eval(t0)).is_none())
        });
        divisors_ok && (self.condition != Condition::A1B || self.evaluate(t0).passed)
    }
}

/// Evaluate `condition` for `model` at `t0`.
pub fn check(model: &IntegralModel, condition: Condition, t0: &BigRat) -> Result<ConditionReport> {
    Ok(PreparedCondition::new(model, condition)?.evaluate(t0))
}

/// `(D(t0) != 0, the specialized cubic has exactly one rational root)`.
pub fn one_torsion_checks(model: &IntegralModel, t0: &BigRat) -> (bool, bool) {
    let q = |p: &IntPoly| p.eval(t0);
    let nonsingular = !model.discriminant().eval(t0).is_zero();
    let roots = <BigRat as crate::field::Field>::cubic_roots(&q(&model.a), &q(&model.b), &q(&model.c));
    (nonsingular, roots.len() == 1)
}

/// Bounds for [`find_t0`]: integers `|t0| <= max_int`, then rationals of
/// height `2..=max_height` with denominator at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_int: u64,
    pub max_height: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_int: 10_000,
            max_height: 100,
        }
    }
}

/// Candidates in search order: `0, 1, -1, 2, -2, ...`, then rationals by
/// height, increasing absolute value, positive first.
pub fn search_order(budget: SearchBudget) -> impl Iterator<Item = BigRat> {
    let ints = std::iter::once(BigRat::zero()).chain((1..=budget.max_int).flat_map(|n| {
        let q = BigRat::from_integer(BigInt::from(n));
        [q.clone(), -q]
    }));
    let rats = (2..=budget.max_height).flat_map(rationals_of_height);
    ints.chain(rats)
}

/// The first `t0` in [`search_order`] passing `condition`.
pub fn find_t0(
    model: &IntegralModel,
    condition: Condition,
    budget: SearchBudget,
) -> Result<(BigRat, ConditionReport)> {
    let prepared = PreparedCondition::new(model, condition)?;
    let mut tried = 0;
    for t0 in search_order(budget) {
        tried += 1;
        if prepared.passes(&t0) {
            let report = prepared.evaluate(&t0);
            return Ok((t0, report));
        }
    }
    Err(Error::BudgetExhausted(tried))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub h: String,
    pub value: String,
    pub square: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateGroup {
    pub label: String,
    pub target: String,
    pub divisors: Vec<CertificateEntry>,
}

/// Machine-checkable record of a passing certifying condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityCertificate {
    pub curve: String,
    /// Model the divisors refer to; differs from `curve` after a shift.
    pub working_model: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shift: Option<String>,
    pub condition: Condition,
    pub t0: String,
    pub discriminant_at_t0: String,
    pub groups: Vec<CertificateGroup>,
}

impl InjectivityCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Certificate(format!("malformed JSON: {e}")))
    }
}

fn certificate_groups(report: &ConditionReport) -> Vec<CertificateGroup> {
    report
        .groups
        .iter()
        .map(|g| CertificateGroup {
            label: g.label.clone(),
            target: g.target.to_string(),
            divisors: g
                .checks
                .iter()
                .map(|c| CertificateEntry {
                    h: c.h.to_string(),
                    value: format_rat(&c.value),
                    square: c.square,
                })
                .collect(),
        })
        .collect()
}

impl PreparedCondition {
    /// A certificate for `t0`; errors unless the condition certifies and
    /// passes there.
    pub fn certificate(&self, t0: &BigRat) -> Result<InjectivityCertificate> {
        if !self.condition.is_certifying() {
            return Err(Error::Certificate(format!(
                "condition {} does not certify injectivity",
                self.condition
            )));
        }
        let report = self.evaluate(t0);
        if !report.passed {
            return Err(Error::Certificate(format!(
                "condition {} fails at t0 = {}",
                self.condition,
                format_rat(t0)
            )));
        }
        Ok(InjectivityCertificate {
            curve: self.model.to_string(),
            working_model: self.working.to_string(),
            shift: self.shift.as_ref().map(IntPoly::to_string),
            condition: self.condition,
            t0: format_rat(t0),
            discriminant_at_t0: format_rat(&report.discriminant_value),
            groups: certificate_groups(&report),
        })
    }
}

/// Re-derive a certificate from its curve, condition and `t0` and require
/// every recorded divisor, value and verdict to match exactly.
pub fn verify_certificate(cert: &InjectivityCertificate) -> Result<ConditionReport> {
    let model: IntegralModel = cert.curve.parse()?;
    let t0 = parse_rat(&cert.t0)?;
    let prepared = PreparedCondition::new(&model, cert.condition)?;
    let fresh = prepared.certificate(&t0)?;
    let mismatch = |what: &str| Err(Error::Certificate(format!("{what} does not match a fresh computation")));
    if fresh.working_model != cert.working_model || fresh.shift != cert.shift {
        return mismatch("working model");
    }
    if fresh.discriminant_at_t0 != cert.discriminant_at_t0 {
        return mismatch("D(t0)");
    }
    if fresh.groups.len() != cert.groups.len() {
        return mismatch("number of divisor groups");
    }
    for (a, b) in fresh.groups.iter().zip(&cert.groups) {
        if a.label != b.label || a.target != b.target {
            return mismatch(&format!("group {}", b.label));
        }
        if a.divisors != b.divisors {
            return mismatch(&format!("divisor list of {}", b.label));
        }
    }
    if cert.groups.iter().flat_map(|g| &g.divisors).any(|e| e.square) {
        return Err(Error::Certificate("a recorded verdict is 'square'".into()));
    }
    Ok(prepared.evaluate(&t0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(s: &str) -> IntegralModel {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    fn set(v: &[&str]) -> Vec<IntPoly> {
        let mut out: Vec<IntPoly> = v.iter().map(|s| poly(s)).collect();
        out.sort();
        out
    }

    fn sorted(mut v: Vec<IntPoly>) -> Vec<IntPoly> {
        v.sort();
        v
    }

    #[test]
    fn divisor_enumeration() {
        let d = enumerate_divisors(&poly("t*(7*t+1)")).unwrap();
        assert_eq!(
            sorted(d.divisors),
            set(&["t", "-t", "7*t+1", "-(7*t+1)", "t*(7*t+1)", "-t*(7*t+1)"])
        );
        let d = enumerate_divisors(&poly("t^4+4")).unwrap();
        assert_eq!(
            sorted(d.divisors),
            set(&["t^2-2*t+2", "-(t^2-2*t+2)", "t^2+2*t+2", "-(t^2+2*t+2)", "t^4+4", "-(t^4+4)"])
        );
        // content primes are offered alongside the irreducible factors
        let d = enumerate_divisors(&poly("4*(t-1)^2")).unwrap();
        assert_eq!(sorted(d.divisors), set(&["t-1", "-(t-1)", "2*(t-1)", "-2*(t-1)"]));
        assert_eq!(sorted(d.constants), set(&["-1", "2", "-2"]));
        assert!(enumerate_divisors(&IntPoly::zero()).is_err());
    }

    #[test]
    fn separation_between_a_and_a_prime() {
        let m = model("e=(0,t,7*t+1)");
        let t0 = r(1, 21);
        let a = check(&m, Condition::A, &t0).unwrap();
        assert!(a.passed && a.certifying);
        let ap = check(&m, Condition::APrime, &t0).unwrap();
        assert!(!ap.passed);
        let w = ap.witnesses();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].1.h, poly("t*(6*t+1)*(7*t+1)"));
        assert_eq!(w[0].1.value, r(4, 49));
        let fail = check(&m, Condition::A, &r(4, 1)).unwrap();
        assert!(!fail.passed);
        assert!(fail.witnesses().iter().any(|(_, c)| c.h == poly("t") && c.value == r(4, 1)));
    }

    #[test]
    fn roots_of_d_fail() {
        let m = model("e=(0,t,7*t+1)");
        for t0 in [r(0, 1), r(-1, 6), r(-1, 7)] {
            let rep = check(&m, Condition::A, &t0).unwrap();
            assert!(!rep.passed && !rep.nonsingular());
            assert!(!check(&m, Condition::APrime, &t0).unwrap().passed);
        }
    }

    #[test]
    fn script_a_on_the_quartic_example() {
        let m = model("y^2 = x^3 + t^2*x^2 - x");
        for t0 in [0, 1, -1] {
            let rep = check(&m, Condition::ScriptA, &r(t0, 1)).unwrap();
            assert!(!rep.passed, "t0 = {t0}");
        }
        let at0 = check(&m, Condition::ScriptA, &r(0, 1)).unwrap();
        assert!(at0.witnesses().iter().any(|(_, c)| c.h == poly("t^4+4") && c.value == r(4, 1)));
        let at1 = check(&m, Condition::ScriptA, &r(1, 1)).unwrap();
        assert!(at1.witnesses().iter().any(|(_, c)| c.h == poly("t^2-2*t+2") && c.value == r(1, 1)));
        let at2 = check(&m, Condition::ScriptA, &r(2, 1)).unwrap();
        assert!(at2.passed && at2.certifying);
        let mut values: Vec<BigRat> = at2.groups.iter().flat_map(|g| g.checks.iter().map(|c| c.value.clone())).collect();
        values.sort();
        assert_eq!(values, [-20, -10, -2, 2, 10, 20].map(|v| r(v, 1)).to_vec());
        assert_eq!(at2.constant_reading, Some(true));
        assert_eq!(one_torsion_checks(&m, &r(2, 1)), (true, true));
        let (t0, _) = find_t0(&m, Condition::ScriptA, SearchBudget::default()).unwrap();
        assert_eq!(t0, r(2, 1));
    }

    #[test]
    fn script_a_shape_checks() {
        assert!(matches!(
            PreparedCondition::new(&model("e=(0,t,7*t+1)"), Condition::ScriptA),
            Err(Error::WrongShape(_))
        ));
        assert!(matches!(
            PreparedCondition::new(&model("y^2 = x^3 - x + t^2"), Condition::ScriptA),
            Err(Error::WrongShape(_))
        ));
        // a single integral root away from the origin is shifted there
        let p = PreparedCondition::new(&model("y^2 = x^3 + 2*x + 12"), Condition::ScriptA).unwrap();
        assert_eq!(p.shift, Some(poly("-2")));
        assert_eq!(p.working.c, IntPoly::zero());
        assert!(matches!(
            PreparedCondition::new(&model("e=(t,t,0)"), Condition::A),
            Err(Error::Singular(_))
        ));
        assert!(matches!(
            PreparedCondition::new(&model("y^2 = x^3 + t^2*x^2 - x"), Condition::A),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn one_torsion_necessary_conditions() {
        let split = model("e=(0,t,7*t+1)");
        assert_eq!(one_torsion_checks(&split, &r(1, 21)), (true, false));
        // B = t - 1 vanishes at 1
        let bad = model("(t, t - 1, 0)");
        assert!(!one_torsion_checks(&bad, &r(1, 1)).0);
    }

    #[test]
    fn diagnostic_conditions() {
        let m = model("y^2 = x^3 - x + t^2");
        for t0 in [r(1, 1), r(-1, 1), r(1, 2), r(-1, 2)] {
            let rep = check(&m, Condition::A1B, &t0).unwrap();
            assert!(rep.passed && !rep.certifying, "t0 = {t0}");
            assert_eq!(rep.irreducible_at_t0, Some(true));
        }
        let m2 = model("y^2 = x^3 - t^2*x + 1");
        let rep = check(&m2, Condition::A1B, &r(0, 1)).unwrap();
        assert!(rep.divisors_pass);
        // x^3 + 1 has the root -1
        assert_eq!(rep.irreducible_at_t0, Some(false));
        // 4 - 27 t^4 has no rational root, but D(t0) = 0 is rejected anyway
        let sing = model("y^2 = x^3 + t*x^2");
        assert!(PreparedCondition::new(&sing, Condition::A1B).is_err());
        let lin = model("y^2 = x^3 - 3*x + 2*t");
        let rep = check(&lin, Condition::A1B, &r(1, 1)).unwrap();
        assert!(!rep.passed && !rep.nonsingular());
    }

    #[test]
    fn certificates_replay() {
        let m = model("e=(0,t,7*t+1)");
        let p = PreparedCondition::new(&m, Condition::A).unwrap();
        let cert = p.certificate(&r(1, 21)).unwrap();
        assert_eq!(cert.t0, "1/21");
        let json = cert.to_json();
        let back = InjectivityCertificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        let rep = verify_certificate(&back).unwrap();
        assert!(rep.passed);
        assert_eq!(rep, p.evaluate(&r(1, 21)));

        let mut tampered = cert.clone();
        tampered.groups[0].divisors[0].value = "5".into();
        assert!(matches!(verify_certificate(&tampered), Err(Error::Certificate(_))));
        let mut dropped = cert.clone();
        dropped.groups[1].divisors.pop();
        assert!(verify_certificate(&dropped).is_err());
        let mut moved = cert;
        moved.t0 = "4".into();
        assert!(verify_certificate(&moved).is_err());

        assert!(p.certificate(&r(4, 1)).is_err());
        let diag = PreparedCondition::new(&model("y^2 = x^3 - x + t^2"), Condition::A1B).unwrap();
        assert!(diag.certificate(&r(1, 1)).is_err());
    }

    #[test]
    fn shifted_certificate_replays() {
        let m = model("y^2 = x^3 + t^2*x^2 - x");
        let p = PreparedCondition::new(&m, Condition::ScriptA).unwrap();
        let cert = p.certificate(&r(2, 1)).unwrap();
        assert!(verify_certificate(&cert).is_ok());
        assert_eq!(cert.condition, Condition::ScriptA);
        assert!(cert.to_json().contains("\"condition\": \"scriptA\""));
    }

    #[test]
    fn search_order_prefix() {
        let b = SearchBudget { max_int: 2, max_height: 3 };
        let got: Vec<String> = search_order(b).map(|q| format_rat(&q)).collect();
        assert_eq!(
            got,
            ["0", "1", "-1", "2", "-2", "1/2", "-1/2", "1/3", "-1/3", "2/3", "-2/3", "3/2", "-3/2"]
        );
        let m = model("y^2 = x^3 + t^2*x^2 - x");
        let tiny = SearchBudget { max_int: 1, max_height: 0 };
        assert_eq!(find_t0(&m, Condition::ScriptA, tiny), Err(Error::BudgetExhausted(3)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn lin() -> impl Strategy<Value = IntPoly> {
            (-4i64..5, -3i64..4).prop_map(|(a, b)| IntPoly::from_i64s(&[a, b]))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn a_prime_implies_a(e2 in lin(), e3 in lin(), n in -12i64..13, d in 1i64..6) {
                let m = IntegralModel::from_roots(IntPoly::zero(), e2, e3);
                prop_assume!(!m.discriminant().is_zero());
                let t0 = r(n, d);
                let ap = check(&m, Condition::APrime, &t0).unwrap();
                if ap.passed {
                    prop_assert!(check(&m, Condition::A, &t0).unwrap().passed);
                }
            }

            #[test]
            fn script_a_implies_one_torsion_checks(a in proptest::collection::vec(-3i64..4, 0..3),
                                        b in proptest::collection::vec(-3i64..4, 1..4),
                                        n in -10i64..11, d in 1i64..4) {
                let m = IntegralModel::new(IntPoly::from_i64s(&a), IntPoly::from_i64s(&b), IntPoly::zero());
                if let Ok(p) = PreparedCondition::new(&m, Condition::ScriptA) {
                    let t0 = r(n, d);
                    if p.evaluate(&t0).passed {
                        prop_assert_eq!(one_torsion_checks(&p.working, &t0), (true, true));
                    }
                }
            }

            #[test]
            fn replay_is_idempotent(e2 in lin(), e3 in lin()) {
                let m = IntegralModel::from_roots(IntPoly::zero(), e2, e3);
                prop_assume!(!m.discriminant().is_zero());
                let budget = SearchBudget { max_int: 50, max_height: 6 };
                if let Ok((t0, _)) = find_t0(&m, Condition::A, budget) {
                    let p = PreparedCondition::new(&m, Condition::A).unwrap();
                    let cert = p.certificate(&t0).unwrap();
                    let once = verify_certificate(&cert).unwrap();
                    let again = verify_certificate(&InjectivityCertificate::from_json(&cert.to_json()).unwrap()).unwrap();
                    prop_assert_eq!(once, again);
                }
            }
        }
    }
}
