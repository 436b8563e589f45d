//! Deciding the minus partial order, the space pre-order and the star order
//! on square matrices.
//!
//! Every decision runs a primary method built from one fixed inner inverse
//! and, where it is numerically safe, an independent cross-check. On exact
//! fields both always run; a disagreement is reported as an internal error
//! rather than resolved silently.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geninv::inner_inverse;
use crate::linalg::{self, rank};
use crate::matrix::Matrix;
use crate::random::{random_matrix_of_rank_with, rng_from_seed};

/// Rank decisions closer than this factor to the threshold are fragile.
const SAFE_MARGIN: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Minus,
    Space,
    Star,
}

impl std::str::FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" => Ok(Relation::Minus),
            "space" => Ok(Relation::Space),
            "star" => Ok(Relation::Star),
            _ => Err(Error::Parse(format!("unknown relation `{s}`"))),
        }
    }
}

/// Idempotents and inner inverses certifying `a ≤⁻ b`.
///
/// `p = a·b⁻`, `q = b⁻·a` and `a⁻ = q·x·p` for an arbitrary inner inverse
/// `x` of `a`.
#[derive(Clone, Debug)]
pub struct OrderWitness<F: Field> {
    pub p: Matrix<F>,
    pub q: Matrix<F>,
    pub a_inner: Matrix<F>,
    pub b_inner: Matrix<F>,
}

impl<F: Field> OrderWitness<F> {
    /// Re-check every identity the witness is supposed to satisfy.
    pub fn verify(&self, a: &Matrix<F>, b: &Matrix<F>) -> bool {
        let (p, q, ai, bi) = (&self.p, &self.q, &self.a_inner, &self.b_inner);
        (p * p).same_as(p)
            && (q * q).same_as(q)
            && (p * a).same_as(&(p * b))
            && (a * q).same_as(&(b * q))
            && (&(a * ai) * a).same_as(a)
            && (ai * a).same_as(&(ai * b))
            && (a * ai).same_as(&(b * ai))
            && (&(a * bi) * b).same_as(a)
            && (&(b * bi) * a).same_as(a)
            && (&(a * bi) * a).same_as(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodVerdict {
    pub method: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct OrderReport<F: Field> {
    pub relation: Relation,
    pub holds: bool,
    pub witness: Option<OrderWitness<F>>,
    pub methods: Vec<MethodVerdict>,
    /// Set on the float path when some rank decision sat within a factor of
    /// ten of the threshold; the cross-check is skipped in that case.
    pub ill_conditioned: bool,
}

fn check_pair<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<()> {
    a.check_same_shape("order comparison", b)?;
    a.check_square("order comparison")
}

fn margins_safe<F: Field>(ms: &[&Matrix<F>]) -> bool {
    ms.iter().all(|m| m.field().rank_margin(m) > SAFE_MARGIN)
}

fn finish<F: Field>(
    relation: Relation,
    methods: Vec<MethodVerdict>,
    ill_conditioned: bool,
    witness: impl FnOnce() -> Option<OrderWitness<F>>,
) -> Result<OrderReport<F>> {
    let holds = methods[0].holds;
    if methods.iter().any(|m| m.holds != holds) {
        let detail = methods
            .iter()
            .map(|m| format!("{}={}", m.method, m.holds))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::MethodDisagreement(format!("{relation:?}: {detail}")));
    }
    let witness = if holds { witness() } else { None };
    Ok(OrderReport { relation, holds, witness, methods, ill_conditioned })
}

/// `a ≤⁻ b`: `a = a·b⁻·b = b·b⁻·a = a·b⁻·a` for one (equivalently every)
/// inner inverse `b⁻`, cross-checked by rank subtractivity
/// `rank(b − a) = rank(b) − rank(a)`.
pub fn minus_leq<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<OrderReport<F>> {
    check_pair(a, b)?;
    let bi = inner_inverse(b);
    let abi = a * &bi;
    let primary = (&abi * b).same_as(a) && (&(b * &bi) * a).same_as(a) && (&abi * a).same_as(a);
    let mut methods = vec![MethodVerdict { method: "inner-inverse identities", holds: primary }];

    let diff = b - a;
    let safe = margins_safe(&[a, b, &diff]);
    if safe {
        let (ra, rb, rd) = (rank(a), rank(b), rank(&diff));
        methods.push(MethodVerdict { method: "rank subtractivity", holds: rb >= ra && rd == rb - ra });
    }
    finish(Relation::Minus, methods, !safe, || {
        let p = a * &bi;
        let q = &bi * a;
        let a_inner = &(&q * &inner_inverse(a)) * &p;
        Some(OrderWitness { p, q, a_inner, b_inner: bi.clone() })
    })
}

/// `a ≤ₛ b`: `a = b·b⁻·a = a·b⁻·b`, cross-checked by column- and row-space
/// inclusion through ranks of the stacked matrices.
pub fn space_leq<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<OrderReport<F>> {
    check_pair(a, b)?;
    let bi = inner_inverse(b);
    let primary = (&(b * &bi) * a).same_as(a) && (&(a * &bi) * b).same_as(a);
    let mut methods = vec![MethodVerdict { method: "inner-inverse identities", holds: primary }];

    let side = b.hstack(a)?;
    let stacked = b.vstack(a)?;
    let safe = margins_safe(&[b, &side, &stacked]);
    if safe {
        let rb = rank(b);
        methods.push(MethodVerdict {
            method: "column/row space inclusion",
            holds: rank(&side) == rb && rank(&stacked) == rb,
        });
    }
    finish(Relation::Space, methods, !safe, || None)
}

/// `a ≤* b`: `a*·a = a*·b` and `a·a* = b·a*`, cross-checked through the
/// Moore-Penrose form `a†·a = a†·b`, `a·a† = b·a†`.
pub fn star_leq<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<OrderReport<F>> {
    check_pair(a, b)?;
    if a.field().characteristic() != 0 {
        return Err(Error::StarUndefined);
    }
    let adj = a.adjoint();
    let primary = (&adj * a).same_as(&(&adj * b)) && (a * &adj).same_as(&(b * &adj));
    let mut methods = vec![MethodVerdict { method: "adjoint identities", holds: primary }];
    let safe = margins_safe(&[a]);
    if safe {
        let mp = a.field().moore_penrose(a)?;
        methods.push(MethodVerdict {
            method: "Moore-Penrose identities",
            holds: (&mp * a).same_as(&(&mp * b)) && (a * &mp).same_as(&(b * &mp)),
        });
    }
    finish(Relation::Star, methods, !safe, || None)
}

pub fn decide<F: Field>(relation: Relation, a: &Matrix<F>, b: &Matrix<F>) -> Result<OrderReport<F>> {
    match relation {
        Relation::Minus => minus_leq(a, b),
        Relation::Space => space_leq(a, b),
        Relation::Star => star_leq(a, b),
    }
}

/// Inverse of `c₁·a + c₂·b` for `a ≤⁻ b` with `b` invertible:
/// `c₂⁻¹·b⁻¹ + ((c₁+c₂)⁻¹ − c₂⁻¹)·b⁻¹·a·b⁻¹`.
pub fn combo_inverse<F: Field>(a: &Matrix<F>, b: &Matrix<F>, c1: &F::Elem, c2: &F::Elem) -> Result<Matrix<F>> {
    check_pair(a, b)?;
    let f = a.field();
    let sum = f.add(c1, c2);
    let (c2_inv, sum_inv) = match (f.inv(c2), f.inv(&sum)) {
        (Some(x), Some(y)) if !f.negligible(c2, 1.0) && !f.negligible(&sum, 1.0) => (x, y),
        _ => return Err(Error::ScalarConstraint),
    };
    let b_inv = linalg::inverse(b).map_err(|_| Error::CombinationNeedsInvertible)?;
    if !minus_leq(a, b)?.holds {
        return Err(Error::NotBelow);
    }
    let sandwich = &(&b_inv * a) * &b_inv;
    let result = &b_inv.scale(&c2_inv) + &sandwich.scale(&f.sub(&sum_inv, &c2_inv));

    let combo = &a.scale(c1) + &b.scale(c2);
    let id = Matrix::identity(f, a.rows());
    if !(&combo * &result).same_as(&id) || !(&result * &combo).same_as(&id) {
        return Err(Error::IdentityFailed("(c₁a + c₂b)·result = I".into()));
    }
    Ok(result)
}

/// A pair `(a, a + c)` with `rank a = rank_a`, `rank c = rank_c` and
/// `rank(a + c) = rank_a + rank_c`, hence `a ≤⁻ a + c`.
pub fn generate_minus_pair<F: Field>(
    field: &F,
    n: usize,
    rank_a: usize,
    rank_c: usize,
    seed: u64,
) -> Result<(Matrix<F>, Matrix<F>)> {
    generate_minus_pair_with(field, n, rank_a, rank_c, &mut rng_from_seed(seed))
}

pub fn generate_minus_pair_with<F: Field>(
    field: &F,
    n: usize,
    rank_a: usize,
    rank_c: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Matrix<F>, Matrix<F>)> {
    if rank_a + rank_c > n {
        return Err(Error::RankOutOfRange { rank: rank_a + rank_c, max: n });
    }
    loop {
        let a = random_matrix_of_rank_with(field, n, n, rank_a, rng)?;
        let c = random_matrix_of_rank_with(field, n, n, rank_c, rng)?;
        let b = &a + &c;
        if rank(&b) == rank_a + rank_c {
            return Ok((a, b));
        }
    }
}
