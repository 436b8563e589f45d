//! Row reduction and the primitives built on it: rank, null spaces,
//! rank factorizations, inverses and linear solves.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. On floats, pivots are chosen by magnitude and
/// a column is skipped once its best candidate is negligible relative to the
/// largest entry of the input.
pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    rref_limited(m, m.cols())
}

/// Like [`rref`], but only the first `pivot_cols` columns may hold pivots.
/// Used for augmented systems.
pub fn rref_limited<F: Field>(m: &Matrix<F>, pivot_cols: usize) -> Rref<F> {
    let f = m.field().clone();
    let (rows, cols) = m.shape();
    let scale = m.entries().iter().map(|x| f.magnitude(x)).fold(0.0, f64::max);
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(cols) {
        if r == rows {
            break;
        }
        let mut best = r;
        let mut best_score = f.pivot_score(a.get(r, c));
        for i in r + 1..rows {
            let s = f.pivot_score(a.get(i, c));
            if s > best_score {
                best = i;
                best_score = s;
            }
        }
        if f.negligible(a.get(best, c), scale) {
            continue;
        }
        if best != r {
            for j in 0..cols {
                let tmp = a.get(r, j).clone();
                a.set(r, j, a.get(best, j).clone());
                a.set(best, j, tmp);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
        for j in 0..cols {
            a.set(r, j, f.mul(&inv, a.get(r, j)));
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in 0..cols {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: a, pivots }
}

/// Rank, dispatched through the field (row reduction on exact fields,
/// singular values on floats).
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    m.field().rank(m)
}

/// `m = F·G` with `F` the pivot columns of `m` and `G` the nonzero rows of
/// its reduced row-echelon form.
pub fn rank_factorization<F: Field>(m: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let Rref { reduced, pivots } = rref(m);
    if pivots.is_empty() {
        return Err(Error::ZeroRankFactorization);
    }
    let r = pivots.len();
    let left = m.select_columns(&pivots);
    let right = reduced.select_rows(&(0..r).collect::<Vec<_>>());
    Ok((left, right))
}

/// Basis of `{v : m·v = 0}` as column vectors.
pub fn null_space_basis<F: Field>(m: &Matrix<F>) -> Vec<Matrix<F>> {
    m.field().null_space(m)
}

pub(crate) fn null_space_rref<F: Field>(m: &Matrix<F>) -> Vec<Matrix<F>> {
    let f = m.field();
    let Rref { reduced, pivots } = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = Matrix::zeros(f, cols, 1);
            v.set(free, 0, f.one());
            for (k, &p) in pivots.iter().enumerate() {
                v.set(p, 0, f.neg(reduced.get(k, free)));
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    m.check_square("inverse")?;
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(m.field(), n))?;
    let Rref { reduced, pivots } = rref_limited(&aug, n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(m.field(), n, n, |i, j| reduced.get(i, n + j).clone()))
}

pub fn is_invertible<F: Field>(m: &Matrix<F>) -> bool {
    m.is_square() && rank(m) == m.rows()
}

/// One solution of `a·x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    let aug = a.hstack(b)?;
    let n = a.cols();
    let Rref { reduced, pivots } = rref_limited(&aug, n);
    let f = a.field();
    let r = pivots.len();
    // Rows below the pivots must vanish on the right-hand side.
    let scale = aug.entries().iter().map(|x| f.magnitude(x)).fold(0.0, f64::max);
    for i in r..a.rows() {
        for j in 0..b.cols() {
            if !f.negligible(reduced.get(i, n + j), scale) {
                return Ok(None);
            }
        }
    }
    let mut x = Matrix::zeros(f, n, b.cols());
    for (k, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, reduced.get(k, n + j).clone());
        }
    }
    Ok(Some(x))
}

/// Moore-Penrose inverse through a full-rank factorization:
/// `G*(G G*)⁻¹(F* F)⁻¹F*`.
pub(crate) fn moore_penrose_exact<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    if m.is_zero() {
        return Ok(Matrix::zeros(m.field(), m.cols(), m.rows()));
    }
    let (left, right) = rank_factorization(m)?;
    let ls = left.adjoint();
    let rs = right.adjoint();
    let ff = inverse(&(&ls * &left)).map_err(|_| Error::MoorePenroseUndefined)?;
    let gg = inverse(&(&right * &rs)).map_err(|_| Error::MoorePenroseUndefined)?;
    Ok(&(&(&rs * &gg) * &ff) * &ls)
}

/// True when the span of `sub` is contained in the span of `sup`, both
/// given as lists of equally shaped matrices (compared through `vec`).
pub fn span_contains<F: Field>(field: &F, sup: &[Matrix<F>], sub: &[Matrix<F>]) -> bool {
    if sub.is_empty() {
        return true;
    }
    let base = stack_vecs(field, sup);
    let r0 = base.as_ref().map_or(0, rank);
    let all: Vec<Matrix<F>> = sup.iter().chain(sub).cloned().collect();
    let r1 = stack_vecs(field, &all).as_ref().map_or(0, rank);
    r0 == r1
}

/// Matrix whose columns are the vectorizations of `ms`.
pub fn stack_vecs<F: Field>(field: &F, ms: &[Matrix<F>]) -> Option<Matrix<F>> {
    let first = ms.first()?;
    let len = first.rows() * first.cols();
    let cols: Vec<Vec<F::Elem>> = ms.iter().map(|m| m.vec()).collect();
    Some(Matrix::from_fn(field, len, ms.len(), |i, j| cols[j][i].clone()))
}
