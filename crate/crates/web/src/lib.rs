//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes matrices in the plain-text matrix format and returns a
//! JSON string; failures come back as `{"error": "..."}`.

use minusord::field::Field;
use minusord::io::{parse_any, write_matrix, AnyMatrix};
use minusord::orders::{decide, Relation};
use minusord::{geninv, structure, Error, Matrix};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

macro_rules! with_matrix {
    ($m:expr, |$x:ident| $body:expr) => {
        match $m {
            AnyMatrix::Q($x) => $body,
            AnyMatrix::Fp($x) => $body,
            AnyMatrix::C($x) => $body,
        }
    };
}

fn respond(result: Result<Value, Error>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn text<F: Field>(m: &Matrix<F>) -> String {
    write_matrix(m)
}

/// Decide `a ≤ b` for `relation` in `minus`, `space`, `star`.
#[wasm_bindgen]
pub fn order_check(relation: &str, a: &str, b: &str, tol: f64) -> String {
    respond(order_check_value(relation, a, b, tol))
}

pub fn order_check_value(relation: &str, a: &str, b: &str, tol: f64) -> Result<Value, Error> {
    let relation: Relation = relation.parse()?;
    match (parse_any(a, tol)?, parse_any(b, tol)?) {
        (AnyMatrix::Q(x), AnyMatrix::Q(y)) => order_json(relation, &x, &y),
        (AnyMatrix::Fp(x), AnyMatrix::Fp(y)) => order_json(relation, &x, &y),
        (AnyMatrix::C(x), AnyMatrix::C(y)) => order_json(relation, &x, &y),
        (x, y) => Err(Error::FieldMismatch(field_label(&x), field_label(&y))),
    }
}

fn field_label(m: &AnyMatrix) -> String {
    with_matrix!(m, |x| x.field().kind().to_string())
}

fn order_json<F: Field>(relation: Relation, a: &Matrix<F>, b: &Matrix<F>) -> Result<Value, Error> {
    let r = decide(relation, a, b)?;
    let methods: Vec<Value> = r.methods.iter().map(|m| json!({ "method": m.method, "holds": m.holds })).collect();
    let witness = r.witness.as_ref().map(|w| {
        json!({ "p": text(&w.p), "q": text(&w.q), "a_inner": text(&w.a_inner), "b_inner": text(&w.b_inner) })
    });
    Ok(json!({
        "holds": r.holds,
        "methods": methods,
        "ill_conditioned": r.ill_conditioned,
        "witness": witness,
    }))
}

/// Inner, reflexive and (where defined) Moore-Penrose inverses of `a`, with
/// the dimension of its inner-inverse family.
#[wasm_bindgen]
pub fn inverses(a: &str, tol: f64) -> String {
    respond(inverses_value(a, tol))
}

pub fn inverses_value(a: &str, tol: f64) -> Result<Value, Error> {
    with_matrix!(parse_any(a, tol)?, |m| inverses_json(&m))
}

fn inverses_json<F: Field>(a: &Matrix<F>) -> Result<Value, Error> {
    let g = geninv::inner_inverse(a);
    let reflexive = geninv::reflexive_inverse(a, &g)?;
    let mp = match geninv::moore_penrose(a) {
        Ok(m) => Value::String(text(&m)),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(json!({
        "inner": text(&g),
        "reflexive": text(&reflexive),
        "moore_penrose": mp,
        "family_dimension": geninv::g1_family(a).dimension(),
    }))
}

/// A rank-one element below `a` and whether `a` is maximal, with the
/// extension witness when it is not.
#[wasm_bindgen]
pub fn extremes(a: &str, tol: f64) -> String {
    respond(extremes_value(a, tol))
}

pub fn extremes_value(a: &str, tol: f64) -> Result<Value, Error> {
    with_matrix!(parse_any(a, tol)?, |m| extremes_json(&m))
}

fn extremes_json<F: Field>(a: &Matrix<F>) -> Result<Value, Error> {
    let minimal = match structure::minimal_below(a) {
        Ok(u) => json!({ "u": text(&u.value), "tau": a.field().format_elem(&u.tau) }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let maximal = structure::is_maximal(a)?;
    Ok(json!({
        "minimal_below": minimal,
        "maximal": maximal.extremal,
        "extension": maximal.witness.as_ref().map(text),
    }))
}
