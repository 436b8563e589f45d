//! Rank-one elements and the extremal elements of the minus order.
//!
//! In a full matrix algebra the nonzero minimal elements of `≤⁻` are the
//! rank-one matrices and the maximal ones are the invertible matrices. This
//! module constructs both kinds of certificates, the rank-one subspaces
//! `L_u = u·A` and `R_u = A·u`, and the rank-one witnesses that characterize
//! invertibility.

use rand_chacha::ChaCha8Rng;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geninv::inner_inverse;
use crate::linalg::{self, rank};
use crate::matrix::Matrix;
use crate::orders::minus_leq;
use crate::random::random_matrix;

/// A rank-one matrix `value = left·right` with `value² = tau·value`.
#[derive(Clone, Debug)]
pub struct RankOneElement<F: Field> {
    pub value: Matrix<F>,
    pub tau: F::Elem,
    /// Column vector spanning the column space.
    pub left: Matrix<F>,
    /// Row vector spanning the row space.
    pub right: Matrix<F>,
}

impl<F: Field> RankOneElement<F> {
    /// `tau⁻¹·value`, the idempotent on the same line, when `tau ≠ 0`.
    pub fn idempotent(&self) -> Option<Matrix<F>> {
        let f = self.value.field();
        if f.negligible(&self.tau, 1.0 + self.value.frobenius_norm().powi(2)) {
            return None;
        }
        f.inv(&self.tau).map(|t| self.value.scale(&t))
    }
}

pub fn rank_one_of<F: Field>(m: &Matrix<F>) -> Result<RankOneElement<F>> {
    let r = rank(m);
    if r != 1 {
        return Err(Error::NotRankOne(r));
    }
    let f = m.field();
    let scale = m.entries().iter().map(|x| f.magnitude(x)).fold(0.0, f64::max);
    // Largest entry on floats, first nonzero on exact fields.
    let mut best = (0, 0);
    let mut best_score = 0.0;
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let s = f.pivot_score(m.get(i, j));
            if s > best_score {
                best = (i, j);
                best_score = s;
            }
        }
        if f.is_exact() && best_score > 0.0 {
            break;
        }
    }
    let (pi, pj) = best;
    debug_assert!(!f.negligible(m.get(pi, pj), scale));
    let left = m.column(pj);
    let inv = f.inv(left.get(pi, 0)).expect("pivot is nonzero");
    let right = m.row(pi).scale(&inv);
    Ok(RankOneElement { tau: m.trace(), value: m.clone(), left, right })
}

/// A rank-one `u ≤⁻ a`: with `w = e_j·e_1ᵗ` for the first nonzero column
/// `j` of `a` and `v = w·(a·w)⁻`, return `u = a·v·a`.
///
/// The shorter `a·v` is an idempotent on the right line but is not below
/// `a` in general (take `a = diag(2, 3)`), so the sandwich is required.
pub fn minimal_below<F: Field>(a: &Matrix<F>) -> Result<RankOneElement<F>> {
    a.check_square("minimal_below")?;
    if a.is_zero() {
        return Err(Error::NoMinimalBelowZero);
    }
    let f = a.field();
    let n = a.rows();
    let scale = a.frobenius_norm();
    let j = (0..n)
        .find(|&j| (0..n).any(|i| !f.negligible(a.get(i, j), scale)))
        .expect("nonzero matrix has a nonzero column");
    let w = Matrix::unit(f, n, n, j, 0);
    let aw = a * &w;
    let v = &w * &inner_inverse(&aw);
    let u = &(a * &v) * a;
    let elem = rank_one_of(&u)?;
    if !minus_leq(&u, a)?.holds {
        return Err(Error::IdentityFailed("u ≤⁻ a".into()));
    }
    Ok(elem)
}

#[derive(Clone, Debug)]
pub struct Extremality<F: Field> {
    pub extremal: bool,
    /// For a non-minimal `u`: some `0 ≠ v ≤⁻ u` with `v ≠ u`. For a
    /// non-maximal `a`: some `b ≠ a` with `a ≤⁻ b`.
    pub witness: Option<Matrix<F>>,
}

/// Nonzero minimality under `≤⁻` is decided by `rank(u) = 1`.
pub fn is_minimal<F: Field>(u: &Matrix<F>) -> Result<Extremality<F>> {
    u.check_square("is_minimal")?;
    match rank(u) {
        0 => Ok(Extremality { extremal: false, witness: None }),
        1 => Ok(Extremality { extremal: true, witness: None }),
        _ => {
            let v = minimal_below(u)?.value;
            debug_assert!(!v.same_as(u));
            Ok(Extremality { extremal: false, witness: Some(v) })
        }
    }
}

/// Random elements below `u`, as `u·w·u` for outer inverses
/// `w = y·(z·u·y)⁻¹·z` of random size `k ≤ rank(u)`. Used to cross-check
/// minimality by sampling.
pub fn sample_below<F: Field>(u: &Matrix<F>, trials: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Matrix<F>>> {
    u.check_square("sample_below")?;
    let f = u.field();
    let n = u.rows();
    let r = rank(u);
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let k = rng.gen_range(0..=r);
        if k == 0 {
            out.push(Matrix::zeros(f, n, n));
            continue;
        }
        let y = random_matrix(f, n, k, rng);
        let z = random_matrix(f, k, n, rng);
        let Ok(core) = linalg::inverse(&(&(&z * u) * &y)) else {
            continue;
        };
        let w = &(&y * &core) * &z;
        out.push(&(u * &w) * u);
    }
    Ok(out)
}

/// Maximality under `≤⁻` is invertibility. A non-invertible `a` gets the
/// strict extension `a + (1 − a·a⁻)·x·(1 − a⁻·a)` for the first matrix unit
/// `x` that makes the correction nonzero.
pub fn is_maximal<F: Field>(a: &Matrix<F>) -> Result<Extremality<F>> {
    a.check_square("is_maximal")?;
    if linalg::is_invertible(a) {
        return Ok(Extremality { extremal: true, witness: None });
    }
    let f = a.field();
    let n = a.rows();
    let ai = inner_inverse(a);
    let id = Matrix::identity(f, n);
    let left = &id - &(a * &ai);
    let right = &id - &(&ai * a);
    for i in 0..n {
        for j in 0..n {
            let corr = &(&left * &Matrix::unit(f, n, n, i, j)) * &right;
            if corr.same_as(&Matrix::zeros(f, n, n)) {
                continue;
            }
            let b = a + &corr;
            if !minus_leq(a, &b)?.holds {
                return Err(Error::IdentityFailed("a ≤⁻ a + (1 − aa⁻)x(1 − a⁻a)".into()));
            }
            return Ok(Extremality { extremal: false, witness: Some(b) });
        }
    }
    Err(Error::IdentityFailed("singular matrix without a strict extension".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `L_u = u·A`: matrices whose column space lies in that of `u`.
    Left,
    /// `R_u = A·u`: matrices whose row space lies in that of `u`.
    Right,
}

#[derive(Clone, Debug)]
pub struct RankOneSubspace<F: Field> {
    pub side: Side,
    pub anchor: RankOneElement<F>,
    pub basis: Vec<Matrix<F>>,
}

impl<F: Field> RankOneSubspace<F> {
    pub fn contains(&self, m: &Matrix<F>) -> bool {
        if m.shape() != self.anchor.value.shape() {
            return false;
        }
        if m.is_zero() {
            return true;
        }
        let stacked = match self.side {
            Side::Left => self.anchor.left.hstack(m),
            Side::Right => self.anchor.right.vstack(m),
        };
        stacked.map(|s| rank(&s) == 1).unwrap_or(false)
    }

    /// Same subspace, compared through spans of the bases.
    pub fn same_span(&self, other: &Self) -> bool {
        let f = self.anchor.value.field();
        linalg::span_contains(f, &self.basis, &other.basis) && linalg::span_contains(f, &other.basis, &self.basis)
    }
}

pub fn rank_one_subspace<F: Field>(u: &RankOneElement<F>, side: Side) -> RankOneSubspace<F> {
    let f = u.value.field();
    let n = u.value.rows();
    let basis = (0..n)
        .map(|k| match side {
            Side::Left => &u.left * &Matrix::unit(f, 1, u.value.cols(), 0, k),
            Side::Right => &Matrix::unit(f, u.value.rows(), 1, k, 0) * &u.right,
        })
        .collect();
    RankOneSubspace { side, anchor: u.clone(), basis }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Alignment {
    /// Shared column space (`v ∈ L_u`).
    pub column: bool,
    /// Shared row space (`v ∈ R_u`).
    pub row: bool,
}

/// For rank-one `u`, `v` whose sum is again rank one, report which of the
/// two rank-one subspaces through `u` contains `v`. At least one does.
pub fn rank_one_sum_check<F: Field>(u: &RankOneElement<F>, v: &RankOneElement<F>) -> Result<Alignment> {
    let sum = u.value.checked_add(&v.value)?;
    if rank(&sum) != 1 {
        return Err(Error::NotRankOneLine);
    }
    Ok(Alignment {
        column: rank(&u.left.hstack(&v.left)?) == 1,
        row: rank(&u.right.vstack(&v.right)?) == 1,
    })
}

#[derive(Clone, Debug)]
pub struct InvertibilityWitness<F: Field> {
    pub u: Matrix<F>,
    /// `u·u⁻·a ∈ L_u`, nonzero and below `a`.
    pub x: Matrix<F>,
    /// `a·u⁻·u ∈ R_u`, nonzero and below `a`.
    pub y: Matrix<F>,
}

/// For invertible `a` and every matrix unit `u = E_ij`, the elements
/// `x = u·u⁻·a ∈ L_u` and `y = a·u⁻·u ∈ R_u`, both verified `≤⁻ a`.
pub fn invertibility_witnesses<F: Field>(a: &Matrix<F>) -> Result<Vec<InvertibilityWitness<F>>> {
    a.check_square("invertibility_witnesses")?;
    if !linalg::is_invertible(a) {
        return Err(Error::NoInvertibilityWitnesses);
    }
    let f = a.field();
    let n = a.rows();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let u = Matrix::unit(f, n, n, i, j);
            let ui = inner_inverse(&u);
            let x = &(&u * &ui) * a;
            let y = &(a * &ui) * &u;
            for (name, m) in [("x", &x), ("y", &y)] {
                if m.is_zero() || !minus_leq(m, a)?.holds {
                    return Err(Error::IdentityFailed(format!("{name} ≤⁻ a for u = E{i}{j}")));
                }
            }
            out.push(InvertibilityWitness { u, x, y });
        }
    }
    Ok(out)
}

/// Search `L_u` (or `R_u`) for a nonzero element below `a`.
///
/// For `u = c·dᵗ`, an element `c·zᵗ` of `L_u` is below `a` exactly when
/// `a·a⁻·c = c`, `zᵗ·(1 − a⁻·a) = 0` and `zᵗ·a⁻·c = 1`; the last two form a
/// linear system in `z`. The right side is symmetric.
pub fn witness_in<F: Field>(u: &RankOneElement<F>, side: Side, a: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    a.check_square("witness_in")?;
    let f = a.field();
    let n = a.rows();
    let ai = inner_inverse(a);
    let id = Matrix::identity(f, n);
    let candidate = match side {
        Side::Left => {
            let c = &u.left;
            if !(&(a * &ai) * c).same_as(c) {
                return Ok(None);
            }
            // rows: (1 − a⁻a)ᵗ z = 0 and (a⁻c)ᵗ z = 1
            let coeffs = (&id - &(&ai * a)).transpose().vstack(&(&ai * c).transpose())?;
            let mut rhs = Matrix::zeros(f, n + 1, 1);
            rhs.set(n, 0, f.one());
            linalg::solve(&coeffs, &rhs)?.map(|z| c * &z.transpose())
        }
        Side::Right => {
            let d = &u.right;
            if !(&(d * &ai) * a).same_as(d) {
                return Ok(None);
            }
            // columns: (1 − aa⁻) w = 0 and (d a⁻) w = 1
            let coeffs = (&id - &(a * &ai)).vstack(&(d * &ai))?;
            let mut rhs = Matrix::zeros(f, n + 1, 1);
            rhs.set(n, 0, f.one());
            linalg::solve(&coeffs, &rhs)?.map(|w| &w * d)
        }
    };
    match candidate {
        Some(x) if !x.is_zero() && minus_leq(&x, a)?.holds => Ok(Some(x)),
        Some(_) => Err(Error::IdentityFailed("solved rank-one witness is not below a".into())),
        None => Ok(None),
    }
}

/// A matrix unit `u` for which `L_u` or `R_u` has no nonzero element below
/// `a`, certifying that `a` is not invertible. `None` when every matrix unit
/// has witnesses on both sides.
pub fn find_missing_witness<F: Field>(a: &Matrix<F>) -> Result<Option<(Matrix<F>, Side)>> {
    a.check_square("find_missing_witness")?;
    let f = a.field();
    let n = a.rows();
    for i in 0..n {
        for j in 0..n {
            let u = rank_one_of(&Matrix::unit(f, n, n, i, j))?;
            for side in [Side::Left, Side::Right] {
                if witness_in(&u, side, a)?.is_none() {
                    return Ok(Some((u.value, side)));
                }
            }
        }
    }
    Ok(None)
}
