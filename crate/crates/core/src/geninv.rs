//! Inner ({1}-), reflexive ({1,2}-) and Moore-Penrose inverses, the
//! difference space `D₁(a) = {x : a·x·a = 0}` and the intertwining family
//! `G₁ᵇ(a)`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, rref, Rref};
use crate::matrix::Matrix;
use crate::orders;

/// The full affine set of inner inverses of `subject`:
/// `base + span(d1_basis)`.
#[derive(Clone, Debug)]
pub struct InverseFamily<F: Field> {
    pub subject: Matrix<F>,
    pub base: Matrix<F>,
    pub d1_basis: Vec<Matrix<F>>,
}

impl<F: Field> InverseFamily<F> {
    pub fn dimension(&self) -> usize {
        self.d1_basis.len()
    }

    /// `base + Σ coeffs[i]·d1_basis[i]`.
    pub fn member(&self, coeffs: &[F::Elem]) -> Matrix<F> {
        assert_eq!(coeffs.len(), self.d1_basis.len(), "one coefficient per basis element");
        self.d1_basis
            .iter()
            .zip(coeffs)
            .fold(self.base.clone(), |acc, (b, c)| &acc + &b.scale(c))
    }

    /// Whether `x` is in the family, by membership of `x - base` in the span.
    pub fn contains(&self, x: &Matrix<F>) -> bool {
        if x.shape() != self.base.shape() {
            return false;
        }
        let diff = x - &self.base;
        linalg::span_contains(self.base.field(), &self.d1_basis, &[diff])
    }
}

/// Some `g` with `a·g·a = a`. Uses the Moore-Penrose inverse where it exists
/// and otherwise a reflexive inverse built from a rank factorization.
pub fn inner_inverse<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    if a.is_zero() {
        return Matrix::zeros(a.field(), a.cols(), a.rows());
    }
    match a.field().moore_penrose(a) {
        Ok(g) => g,
        Err(_) => inner_inverse_by_factorization(a),
    }
}

/// With `a = F·G` (pivot columns times reduced rows), `G` has an identity
/// block at the pivot columns and `F` has an invertible `r×r` row
/// selection, which give one-sided inverses of both factors.
pub fn inner_inverse_by_factorization<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    let f = a.field();
    if a.is_zero() {
        return Matrix::zeros(f, a.cols(), a.rows());
    }
    let Rref { pivots, .. } = rref(a);
    let r = pivots.len();
    let left = a.select_columns(&pivots);
    let row_sel = rref(&left.transpose()).pivots;
    let block = linalg::inverse(&left.select_rows(&row_sel)).expect("pivot rows are independent");
    // g = E_P · block · S_I
    let mut g = Matrix::zeros(f, a.cols(), a.rows());
    for k in 0..r {
        for l in 0..r {
            g.set(pivots[k], row_sel[l], block.get(k, l).clone());
        }
    }
    g
}

/// `g·a·g` for an inner inverse `g`; a {1,2}-inverse.
pub fn reflexive_inverse<F: Field>(a: &Matrix<F>, g: &Matrix<F>) -> Result<Matrix<F>> {
    if !g1_contains(a, g)? {
        return Err(Error::NotInnerInverse);
    }
    Ok(&(g * a) * g)
}

pub fn moore_penrose<F: Field>(a: &Matrix<F>) -> Result<Matrix<F>> {
    a.field().moore_penrose(a)
}

/// Coefficient matrix of `x ↦ a·x·a` acting on column-major vectorizations:
/// `vec(a·x·a) = (aᵗ ⊗ a)·vec(x)`.
pub fn sandwich_operator<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    a.transpose().kron(a)
}

/// Basis of `D₁(a) = {x : a·x·a = 0}`, of dimension `rows·cols − rank²`.
pub fn d1_basis<F: Field>(a: &Matrix<F>) -> Vec<Matrix<F>> {
    let (m, n) = a.shape();
    linalg::null_space_basis(&sandwich_operator(a))
        .into_iter()
        .map(|v| Matrix::unvec(a.field(), n, m, v.entries()))
        .collect()
}

pub fn g1_family<F: Field>(a: &Matrix<F>) -> InverseFamily<F> {
    InverseFamily {
        subject: a.clone(),
        base: inner_inverse(a),
        d1_basis: d1_basis(a),
    }
}

fn check_inverse_shape<F: Field>(a: &Matrix<F>, x: &Matrix<F>) -> Result<()> {
    a.check_field(x)?;
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::DimensionMismatch { op: "inner inverse", left: a.shape(), right: x.shape() });
    }
    Ok(())
}

/// `a·x·a = a`
pub fn g1_contains<F: Field>(a: &Matrix<F>, x: &Matrix<F>) -> Result<bool> {
    check_inverse_shape(a, x)?;
    Ok((&(a * x) * a).same_as(a))
}

/// Solve `a·x·a = a` directly as a linear system in `vec(x)`.
pub fn solve_inner_inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let (m, n) = a.shape();
    let rhs = Matrix::unvec(a.field(), m * n, 1, &a.vec());
    let x = linalg::solve(&sandwich_operator(a), &rhs).ok()??;
    Some(Matrix::unvec(a.field(), n, m, x.entries()))
}

/// A common inner inverse of `a` and `b`, from the stacked system
/// `a·x·a = a`, `b·x·b = b`.
pub fn common_inner_inverse<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    a.check_same_shape("common inner inverse", b)?;
    let (m, n) = a.shape();
    let f = a.field();
    let coeffs = sandwich_operator(a).vstack(&sandwich_operator(b))?;
    let rhs: Vec<F::Elem> = a.vec().into_iter().chain(b.vec()).collect();
    let rhs = Matrix::unvec(f, 2 * m * n, 1, &rhs);
    Ok(linalg::solve(&coeffs, &rhs)?.map(|x| Matrix::unvec(f, n, m, x.entries())))
}

/// `a·x·a = a`, `a·x = b·x` and `x·a = x·b`.
pub fn g1b_check<F: Field>(a: &Matrix<F>, b: &Matrix<F>, x: &Matrix<F>) -> Result<bool> {
    a.check_same_shape("g1b", b)?;
    check_inverse_shape(a, x)?;
    Ok((&(a * x) * a).same_as(a) && (a * x).same_as(&(b * x)) && (x * a).same_as(&(x * b)))
}

/// The member `b⁻ − b⁻(b−a)b⁻` of `G₁ᵇ(a)` attached to an inner inverse
/// `b⁻` of `b`, for `a ≤⁻ b`.
pub fn g1b_member<F: Field>(a: &Matrix<F>, b: &Matrix<F>, b_inner: &Matrix<F>) -> Result<Matrix<F>> {
    if !g1_contains(b, b_inner)? {
        return Err(Error::IdentityFailed("b·b⁻·b = b".into()));
    }
    if !orders::minus_leq(a, b)?.holds {
        return Err(Error::NotBelow);
    }
    let x = b_inner - &(&(b_inner * &(b - a)) * b_inner);
    let checks: [(&str, bool); 5] = [
        ("a·a⁻·a = a", (&(a * &x) * a).same_as(a)),
        ("a·a⁻ = b·a⁻", (a * &x).same_as(&(b * &x))),
        ("a⁻·a = a⁻·b", (&x * a).same_as(&(&x * b))),
        ("b⁻·a = a⁻·a", (b_inner * a).same_as(&(&x * a))),
        ("a·b⁻ = a·a⁻", (a * b_inner).same_as(&(a * &x))),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::IdentityFailed((*name).into()));
    }
    Ok(x)
}
