use std::path::Path;

use minusord::field::Field;
use minusord::io::{parse_any, AnyMatrix};
use minusord::orders::{decide, Relation};
use minusord::preservers::{
    decompose_preserver, jordan_check, jordan_triple_check, parse_map, preserves_minus_sampled, preserves_space_sampled,
    AnyMap, Decomposition, MatrixLinearMap, Verdict,
};
use minusord::ringlab::{self, Mode, Proposition, Status};
use minusord::{geninv, orders, structure, Error, Matrix, Result};

use crate::report::RunReport;
use crate::{Cli, Command, InverseKind, OracleAction, OrderAction, PreserverAction, Sampling};

/// Errors caused by the input rather than by the mathematics.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::FieldMismatch(..)
            | Error::NotSquare { .. }
            | Error::InvalidField(_)
            | Error::UnknownRing(_)
            | Error::UnknownProposition(_)
            | Error::RingAxiom(_)
    )
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path, tol: f64) -> Result<AnyMatrix> {
    parse_any(&read(path)?, tol)
}

macro_rules! with_matrix {
    ($m:expr, |$x:ident| $body:expr) => {
        match $m {
            AnyMatrix::Q($x) => $body,
            AnyMatrix::Fp($x) => $body,
            AnyMatrix::C($x) => $body,
        }
    };
}

macro_rules! with_pair {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (AnyMatrix::Q($x), AnyMatrix::Q($y)) => $body,
            (AnyMatrix::Fp($x), AnyMatrix::Fp($y)) => $body,
            (AnyMatrix::C($x), AnyMatrix::C($y)) => $body,
            (a, b) => Err(Error::FieldMismatch(field_name(&a), field_name(&b))),
        }
    };
}

fn field_name(m: &AnyMatrix) -> String {
    with_matrix!(m, |x| x.field().kind().to_string())
}

pub fn run(cli: &Cli, report: &mut RunReport) -> Result<i32> {
    let tol = cli.tol;
    let outcome = match &cli.command {
        Command::Order { action: OrderAction::Check { relation, a, b } } => {
            let relation: Relation = relation.parse()?;
            with_pair!(load(a, tol)?, load(b, tol)?, |x, y| order_check(relation, &x, &y, report))
        }
        Command::Geninv { kind, matrix } => with_matrix!(load(matrix, tol)?, |x| inverse(*kind, &x, report)),
        Command::ComboInverse { a, b, c1, c2 } => {
            with_pair!(load(a, tol)?, load(b, tol)?, |x, y| combo(&x, &y, c1, c2, report))
        }
        Command::MinimalBelow { matrix } => with_matrix!(load(matrix, tol)?, |x| minimal_below(&x, report)),
        Command::Maximal { matrix } => with_matrix!(load(matrix, tol)?, |x| maximal(&x, report)),
        Command::Preserver { action, map, sampling } => match parse_map(&read(map)?, tol)? {
            AnyMap::Q(phi) => preserver(*action, &phi, *sampling, report),
            AnyMap::Fp(phi) => preserver(*action, &phi, *sampling, report),
            AnyMap::C(phi) => preserver(*action, &phi, *sampling, report),
        },
        Command::Oracle { action: OracleAction::Run { ring, prop } } => oracle(ring, prop, report),
    };
    match outcome {
        Err(e) if !is_input_error(&e) => Ok(report.finish(format!("failed: {e}"), 1)),
        other => other,
    }
}

fn order_check<F: Field>(relation: Relation, a: &Matrix<F>, b: &Matrix<F>, report: &mut RunReport) -> Result<i32> {
    report.set_field(a.field());
    let r = decide(relation, a, b)?;
    for m in &r.methods {
        report.fact(&format!("method {}", m.method), m.holds);
    }
    if r.ill_conditioned {
        report.fact("ill-conditioned", "cross-check skipped");
    }
    if let Some(w) = &r.witness {
        report.witness("p", &w.p);
        report.witness("q", &w.q);
        report.witness("a_inner", &w.a_inner);
        report.witness("b_inner", &w.b_inner);
    }
    let name = format!("{relation:?}").to_lowercase();
    Ok(if r.holds { report.finish(format!("a ≤ b holds ({name})"), 0) } else { report.finish(format!("a ≤ b fails ({name})"), 1) })
}

fn inverse<F: Field>(kind: InverseKind, a: &Matrix<F>, report: &mut RunReport) -> Result<i32> {
    report.set_field(a.field());
    match kind {
        InverseKind::Mp => report.witness("moore_penrose", &geninv::moore_penrose(a)?),
        InverseKind::Inner => report.witness("inner_inverse", &geninv::inner_inverse(a)),
        InverseKind::Reflexive => {
            let g = geninv::reflexive_inverse(a, &geninv::inner_inverse(a))?;
            report.witness("reflexive_inverse", &g);
        }
        InverseKind::Family => {
            let fam = geninv::g1_family(a);
            report.fact("dimension", fam.dimension());
            report.witness("base", &fam.base);
            for (k, d) in fam.d1_basis.iter().enumerate() {
                report.witness(&format!("d1_basis_{k:03}"), d);
            }
        }
    }
    Ok(report.finish("ok", 0))
}

fn combo<F: Field>(a: &Matrix<F>, b: &Matrix<F>, c1: &str, c2: &str, report: &mut RunReport) -> Result<i32> {
    let f = a.field();
    report.set_field(f);
    let (c1, c2) = (f.parse_elem(c1)?, f.parse_elem(c2)?);
    let inv = orders::combo_inverse(a, b, &c1, &c2)?;
    report.witness("inverse", &inv);
    Ok(report.finish("ok", 0))
}

fn minimal_below<F: Field>(a: &Matrix<F>, report: &mut RunReport) -> Result<i32> {
    let f = a.field();
    report.set_field(f);
    let u = structure::minimal_below(a)?;
    report.fact("tau", f.format_elem(&u.tau));
    report.witness("u", &u.value);
    report.witness("left_factor", &u.left);
    report.witness("right_factor", &u.right);
    Ok(report.finish("rank-one u ≤⁻ a found", 0))
}

fn maximal<F: Field>(a: &Matrix<F>, report: &mut RunReport) -> Result<i32> {
    report.set_field(a.field());
    let r = structure::is_maximal(a)?;
    if let Some(b) = &r.witness {
        report.witness("extension", b);
    }
    Ok(if r.extremal { report.finish("maximal", 0) } else { report.finish("not maximal", 1) })
}

fn refutation<F: Field>(v: &Verdict<F>, prefix: &str, report: &mut RunReport) {
    match v {
        Verdict::Passed { .. } => {}
        Verdict::Refuted { a, b } => {
            report.witness(&format!("{prefix}a"), a);
            report.witness(&format!("{prefix}b"), b);
        }
        Verdict::InvertibilityLost { a } => report.witness(&format!("{prefix}invertible"), a),
    }
}

fn verdict_name<F: Field>(v: &Verdict<F>) -> String {
    match v {
        Verdict::Passed { trials } => format!("passed ({trials} trials)"),
        Verdict::Refuted { .. } => "refuted".into(),
        Verdict::InvertibilityLost { .. } => "refuted (invertibility lost)".into(),
    }
}

fn preserver<F: Field>(action: PreserverAction, phi: &MatrixLinearMap<F>, s: Sampling, report: &mut RunReport) -> Result<i32> {
    let f = phi.field();
    report.set_field(f);
    report.fact("n", phi.n());
    report.fact("bijective", phi.is_bijective());
    match action {
        PreserverAction::Check => {
            let minus = preserves_minus_sampled(phi, s.trials, s.seed)?;
            let space = preserves_space_sampled(phi, s.trials, s.seed)?;
            report.fact("minus order", verdict_name(&minus));
            report.fact("space order", verdict_name(&space));
            if f.characteristic() != 2 {
                report.fact("jordan", jordan_check(phi)?);
                let t = jordan_triple_check(phi, s.trials, s.seed)?;
                let scope = if t.exhaustive { "exhaustive" } else { "random" };
                report.fact("jordan triple", format!("{} ({} {scope} triples)", t.holds, t.checked));
            }
            refutation(&minus, "minus_", report);
            refutation(&space, "space_", report);
            Ok(if minus.passed() && space.passed() {
                report.finish("preserves both orders on all samples", 0)
            } else {
                report.finish("refuted", 1)
            })
        }
        PreserverAction::Decompose => match decompose_preserver(phi, s.trials, s.seed)? {
            Decomposition::Canonical(form) => {
                let kind = serde_json::to_value(form.kind).expect("kind serializes");
                report.fact("kind", kind.as_str().unwrap_or_default());
                report.witness("t", &form.t);
                report.witness("s", &form.s);
                Ok(report.finish("canonical form found", 0))
            }
            Decomposition::Refuted { inverse_direction, a, b } => {
                report.fact("direction", if inverse_direction { "inverse map" } else { "map" });
                report.witness("a", &a);
                report.witness("b", &b);
                Ok(report.finish("refuted: not a bidirectional minus-order preserver", 1))
            }
        },
    }
}

fn oracle(ring: &str, prop: &str, report: &mut RunReport) -> Result<i32> {
    let prop = if prop == "all" { None } else { Some(prop.parse::<Proposition>()?) };
    let reports = ringlab::verify(ring, prop, Mode::Strict)?;
    report.lines = reports.iter().map(ToString::to_string).collect();
    report.data = Some(serde_json::to_value(&reports).expect("reports serialize"));
    let failed = reports.iter().any(|r| matches!(r.status, Status::Counterexample { .. }));
    Ok(if failed { report.finish("counterexample found", 1) } else { report.finish("no counterexample", 0) })
}
