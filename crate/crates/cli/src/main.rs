//! `ecspec`: command-line front-end to the `ecspec` library.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ecspec::arith::{format_rat, parse_rat};
use ecspec::curve::{Curve, IntegralModel, Point};
use ecspec::injectivity::{
    find_t0, verify_certificate, Condition, ConditionReport, InjectivityCertificate,
    PreparedCondition, SearchBudget,
};
use ecspec::mestre::{ExternalRank, MestreInstance};
use ecspec::parse::{parse_curve, parse_point, parse_poly};
use ecspec::specialize::Specialization;
use ecspec::{golden, BigRat, Error};

#[derive(Parser)]
#[command(name = "ecspec", version, about = "Injective specialization certificates for elliptic curves over Q(t)")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a polynomial in Z[t].
    Factor { poly: String },
    /// Evaluate a condition at t0, or replay a saved certificate.
    Check(CheckArgs),
    /// Search for the first t0 passing a condition.
    FindT0 {
        #[arg(long)]
        condition: Condition,
        /// Curve text or a file containing it.
        #[arg(long)]
        curve: String,
        /// Largest |t0| tried among integers.
        #[arg(long, default_value_t = SearchBudget::default().max_int)]
        budget: u64,
        /// Largest height tried among non-integral rationals.
        #[arg(long, default_value_t = SearchBudget::default().max_height)]
        max_height: u64,
    },
    /// Specialize a curve and a point at t0.
    Specialize {
        #[arg(long)]
        curve: String,
        /// `O` or `(x, y)` with coordinates in Q(t).
        #[arg(long)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
    },
    /// Twist family member E_g for y^2 = x^3 + ax + b.
    Mestre(MestreArgs),
    /// Run the built-in reference table.
    VerifyPaper,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, required_unless_present = "replay")]
    condition: Option<Condition>,
    /// Curve text or a file containing it.
    #[arg(long, required_unless_present = "replay")]
    curve: Option<String>,
    #[arg(long, required_unless_present = "replay", allow_hyphen_values = true)]
    t0: Option<String>,
    /// Write the certificate here when the condition passes.
    #[arg(long)]
    certificate_out: Option<String>,
    /// Re-verify a certificate file instead.
    #[arg(long, conflicts_with_all = ["condition", "curve", "t0"])]
    replay: Option<String>,
}

#[derive(Args)]
struct MestreArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<String>,
    /// Rank of E_g(t0)(Q), computed elsewhere.
    #[arg(long, requires_all = ["t0", "rank_source"])]
    specialized_rank: Option<u32>,
    /// Where the specialized rank comes from.
    #[arg(long, requires = "specialized_rank")]
    rank_source: Option<String>,
    /// Source for injectivity at t0 when no certificate over Q exists.
    #[arg(long, requires = "specialized_rank")]
    declared_injectivity: Option<String>,
}

/// Outcome of a subcommand: `true` for pass.
type Outcome = Result<bool, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Factor { poly } => factor(poly, cli.json),
        Command::Check(args) => run_check(args, cli.json),
        Command::FindT0 {
            condition,
            curve,
            budget,
            max_height,
        } => run_find(*condition, curve, *budget, *max_height, cli.json),
        Command::Specialize { curve, point, t0 } => run_specialize(curve, point, t0, cli.json),
        Command::Mestre(args) => run_mestre(args, cli.json),
        Command::VerifyPaper => verify_paper(cli.json),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invariant(_) => 3,
                Error::Certificate(_) | Error::BudgetExhausted(_) => 1,
                _ => 2,
            })
        }
    }
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON value"));
}

fn read_curve(arg: &str) -> Result<IntegralModel, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {arg}: {e}")))?;
        parse_curve(text.trim())
    } else {
        parse_curve(arg)
    }
}

fn factor(text: &str, json: bool) -> Outcome {
    let p = parse_poly(text)?;
    let fac = p.factor()?;
    if json {
        emit(&json!({
            "poly": p.to_string(),
            "unit": fac.unit,
            "content_primes": fac.content_primes.iter().map(|(q, e)| json!([q.to_string(), e])).collect::<Vec<_>>(),
            "factors": fac.poly_factors.iter().map(|(f, m)| json!({"factor": f.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        }));
    } else {
        println!("unit: {}", fac.unit);
        let content: Vec<String> = fac
            .content_primes
            .iter()
            .map(|(q, e)| if *e == 1 { q.to_string() } else { format!("{q}^{e}") })
            .collect();
        println!("content: {}", if content.is_empty() { "1".into() } else { content.join(" * ") });
        for (f, m) in &fac.poly_factors {
            println!("factor: ({f})^{m}");
        }
    }
    Ok(true)
}

fn report_json(rep: &ConditionReport) -> Value {
    json!({
        "condition": rep.condition.name(),
        "t0": format_rat(&rep.t0),
        "passed": rep.passed,
        "certifying": rep.certifying,
        "discriminant_at_t0": format_rat(&rep.discriminant_value),
        "constant_reading": rep.constant_reading,
        "irreducible_at_t0": rep.irreducible_at_t0,
        "groups": rep.groups.iter().map(|g| json!({
            "label": g.label,
            "target": g.target.to_string(),
            "divisors": g.checks.iter().map(|c| json!({
                "h": c.h.to_string(),
                "value": format_rat(&c.value),
                "square": c.square,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn print_report(rep: &ConditionReport) {
    let verdict = if rep.passed { "PASS" } else { "FAIL" };
    let note = if rep.condition.is_certifying() { "" } else { " (not certifying)" };
    println!("condition {} at t0 = {}: {verdict}{note}", rep.condition, format_rat(&rep.t0));
    if !rep.nonsingular() {
        println!("  D(t0) = 0");
    }
    for (label, c) in rep.witnesses() {
        println!("  witness [{label}]: h = {}, h(t0) = {} is a square", c.h, format_rat(&c.value));
    }
    if rep.irreducible_at_t0 == Some(false) {
        println!("  the specialized cubic has a rational root");
    }
    if let (Some(constant), true) = (rep.constant_reading, rep.condition == Condition::ScriptA) {
        if constant != rep.divisors_pass {
            println!("  constant divisors change the verdict to {constant}");
        }
    }
}

fn run_check(args: &CheckArgs, json: bool) -> Outcome {
    if let Some(file) = &args.replay {
        let text = std::fs::read_to_string(file)
            .map_err(|e| Error::Invalid(format!("cannot read {file}: {e}")))?;
        let cert = InjectivityCertificate::from_json(&text)?;
        let rep = verify_certificate(&cert)?;
        if json {
            emit(&json!({"replay": "ok", "report": report_json(&rep)}));
        } else {
            println!("certificate re-verified");
            print_report(&rep);
        }
        return Ok(rep.passed);
    }
    let condition = args.condition.expect("required by clap");
    let model = read_curve(args.curve.as_deref().expect("required by clap"))?;
    let t0 = parse_rat(args.t0.as_deref().expect("required by clap"))?;
    let prepared = PreparedCondition::new(&model, condition)?;
    let rep = prepared.evaluate(&t0);
    let cert = (rep.passed && rep.certifying)
        .then(|| prepared.certificate(&t0))
        .transpose()?;
    if let (Some(path), Some(cert)) = (&args.certificate_out, &cert) {
        std::fs::write(path, cert.to_json() + "\n")
            .map_err(|e| Error::Invalid(format!("cannot write {path}: {e}")))?;
    }
    if json {
        let mut out = report_json(&rep);
        if let Some(cert) = &cert {
            out["certificate"] = serde_json::to_value(cert).expect("certificate serializes");
        }
        emit(&out);
    } else {
        print_report(&rep);
    }
    Ok(rep.passed)
}

fn run_find(condition: Condition, curve: &str, max_int: u64, max_height: u64, json: bool) -> Outcome {
    let model = read_curve(curve)?;
    let budget = SearchBudget { max_int, max_height };
    let (t0, rep) = find_t0(&model, condition, budget)?;
    if json {
        emit(&json!({"t0": format_rat(&t0), "report": report_json(&rep)}));
    } else {
        println!("t0 = {}", format_rat(&t0));
        print_report(&rep);
    }
    Ok(true)
}

fn equation(e: &Curve<BigRat>) -> String {
    format!(
        "y^2 = x^3 + ({})*x^2 + ({})*x + ({})",
        format_rat(e.a()),
        format_rat(e.b()),
        format_rat(e.c())
    )
}

fn point_text(p: &Point<BigRat>) -> String {
    match p {
        Point::O => "O".into(),
        Point::Affine(x, y) => format!("({}, {})", format_rat(x), format_rat(y)),
    }
}

fn run_specialize(curve: &str, point: &str, t0: &str, json: bool) -> Outcome {
    let model = read_curve(curve)?;
    let t0 = parse_rat(t0)?;
    let source = model.curve()?;
    let p = match parse_point(point)? {
        None => Point::O,
        Some((x, y)) => source.point(x, y)?,
    };
    let s = Specialization::new(&source, &t0)?;
    let image = s.apply(&p)?;
    if json {
        emit(&json!({
            "t0": format_rat(&t0),
            "curve": equation(&s.target),
            "point": point_text(&image),
        }));
    } else {
        println!("E(t0): {}", equation(&s.target));
        println!("sigma(P) = {}", point_text(&image));
    }
    Ok(true)
}

fn run_mestre(args: &MestreArgs, json: bool) -> Outcome {
    let inst = MestreInstance::build(&parse_rat(&args.a)?, &parse_rat(&args.b)?)?;
    let degrees = inst.degree_table();
    let t0 = args.t0.as_deref().map(parse_rat).transpose()?;
    let mut out = json!({
        "a": format_rat(&inst.a),
        "b": format_rat(&inst.b),
        "g": inst.g.to_string(),
        "scale": inst.scale.to_string(),
        "model": inst.model.to_string(),
        "P": inst.p.to_string(),
        "Q": inst.q.to_string(),
        "degrees": serde_json::to_value(&degrees).expect("serializes"),
        "small_degree_exclusion": inst.small_degree_exclusion(),
    });
    let mut ok = true;
    if let Some(t0) = &t0 {
        let e = inst.specialized_curve(t0)?;
        let [p, q] = inst.specialized_points(t0)?;
        out["t0"] = json!(format_rat(t0));
        out["specialized_curve"] = json!(equation(&e));
        out["specialized_points"] = json!([point_text(&p), point_text(&q)]);
        match inst.injectivity_certificate(t0) {
            Ok(cert) => out["certificate"] = serde_json::to_value(&cert).expect("serializes"),
            Err(err) => out["certificate_unavailable"] = json!(err.to_string()),
        }
    }
    if let (Some(t0), Some(value)) = (&t0, args.specialized_rank) {
        let rank = ExternalRank {
            value,
            source: args.rank_source.clone().expect("required by clap"),
        };
        let record = inst.generator_certificate(t0, &rank, args.declared_injectivity.as_deref())?;
        ok = record.free_generators;
        out["conclusion"] = serde_json::to_value(&record).expect("serializes");
    }
    if json {
        emit(&out);
        return Ok(ok);
    }
    println!("g = {}", inst.g);
    println!("model: {}", inst.model);
    println!("P = {}", inst.p);
    println!("Q = {}", inst.q);
    println!(
        "deg P = {}, deg Q = {}, deg(P + Q) = {}, deg(P - Q) = {}, <P, Q> = {}",
        degrees.p, degrees.q, degrees.p_plus_q, degrees.p_minus_q, degrees.pairing_pq
    );
    println!("no point of degree 1 or 2: {}", inst.small_degree_exclusion());
    if let Some(t0) = &t0 {
        println!("E_g({}): {}", format_rat(t0), out["specialized_curve"].as_str().unwrap_or(""));
        match (&out["certificate"], &out["certificate_unavailable"]) {
            (Value::Object(c), _) => println!("injectivity certified by condition {}", c["condition"]),
            (_, Value::String(why)) => println!("no certificate over Q: {why}"),
            _ => {}
        }
    }
    if let Value::Object(rec) = &out["conclusion"] {
        println!("conclusion: {}", rec["conclusion"].as_str().unwrap_or(""));
        if rec["machine_checked"] == json!(false) {
            println!("  injectivity declared, not machine-checked");
        }
    }
    Ok(ok)
}

fn verify_paper(json: bool) -> Outcome {
    let rows = golden::run();
    let all = rows.iter().all(|r| r.passed);
    if json {
        emit(&json!({"rows": rows, "passed": all}));
    } else {
        let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
        for r in &rows {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            println!("{verdict}  {:width$}  {}", r.label, r.detail);
        }
        println!("{} of {} rows pass", rows.iter().filter(|r| r.passed).count(), rows.len());
    }
    Ok(all)
}
