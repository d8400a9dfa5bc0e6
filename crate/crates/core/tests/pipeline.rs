use ecspec::arith::parse_rat;
use ecspec::injectivity::{find_t0, verify_certificate, Condition, InjectivityCertificate, PreparedCondition, SearchBudget};
use ecspec::mestre::MestreInstance;
use ecspec::specialize::{relation_search, Specialization};
use ecspec::{BigRat, IntegralModel, RatFunc};

fn q(s: &str) -> BigRat {
    parse_rat(s).unwrap()
}

#[test]
fn search_certify_replay_specialize() {
    let model: IntegralModel = "y^2 = x^3 + t^2*x^2 - x".parse().unwrap();
    let (t0, report) = find_t0(&model, Condition::ScriptA, SearchBudget::default()).unwrap();
    assert!(report.passed && report.certifying);
    let cert = PreparedCondition::new(&model, Condition::ScriptA).unwrap().certificate(&t0).unwrap();
    let back = InjectivityCertificate::from_json(&cert.to_json()).unwrap();
    assert!(verify_certificate(&back).unwrap().passed);

    let curve = model.curve().unwrap();
    let s = Specialization::new(&curve, &t0).unwrap();
    let p = s.apply(&curve.point(RatFunc::from_rat(&q("1")), RatFunc::t()).unwrap()).unwrap();
    let torsion = s.apply(&curve.two_torsion()[1]).unwrap();
    // P has infinite order and sigma(P) avoids the 2-torsion coset within the box
    assert_eq!(relation_search(&s.target, &[p.clone()], 12).unwrap(), None);
    assert_eq!(relation_search(&s.target, &[p, torsion], 6).unwrap(), Some(vec![0, 2]));
}

#[test]
fn tampered_certificates_are_rejected() {
    let model: IntegralModel = "e=(0, t, 7*t + 1)".parse().unwrap();
    let cert = PreparedCondition::new(&model, Condition::A).unwrap().certificate(&q("1/21")).unwrap();
    let mut bad = cert.clone();
    bad.groups[0].divisors[0].value = "1".into();
    assert!(verify_certificate(&bad).is_err());
    let mut bad = cert.clone();
    bad.groups.pop();
    assert!(verify_certificate(&bad).is_err());
    let mut bad = cert;
    bad.condition = Condition::APrime;
    assert!(verify_certificate(&bad).is_err());
}

#[test]
fn rational_twist_parameters() {
    let inst = MestreInstance::build(&q("3/2"), &q("-1/3")).unwrap();
    let d = inst.degree_table();
    assert_eq!((d.p, d.q, d.p_plus_q, d.p_minus_q), (4, 4, 8, 8));
    let [p, r] = inst.specialized_points(&q("5")).unwrap();
    let e = inst.specialized_curve(&q("5")).unwrap();
    assert!(e.contains(&p) && e.contains(&r));
    assert!(inst.scale > 1.into());
}
