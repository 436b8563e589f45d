//! Complex singular value decomposition by one-sided (Hestenes) Jacobi
//! rotations, and the numerical rank, null space and pseudoinverse built on
//! it.
//!
//! One-sided Jacobi orthogonalizes the columns of `A` directly, which
//! implicitly diagonalizes `A*A` without ever forming it. Small singular
//! values therefore keep their accuracy relative to `σ_max`.

use num_complex::Complex64;

use crate::field::{ComplexFloat, Field};
use crate::matrix::Matrix;

const CONVERGENCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 80;

/// Thin SVD `A = U·diag(σ)·V*` with `σ` sorted in decreasing order.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Matrix<ComplexFloat>,
    pub sigma: Vec<f64>,
    pub v: Matrix<ComplexFloat>,
}

pub fn svd(a: &Matrix<ComplexFloat>) -> Svd {
    let field = *a.field();
    let (m, n) = a.shape();
    // Columns of the working copy, stored column-major for the rotations.
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| (0..m).map(|i| *a.get(i, j)).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();

    let frob2: f64 = w.iter().flatten().map(|z| z.norm_sqr()).sum();
    for _ in 0..MAX_SWEEPS {
        let mut off2 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let alpha: f64 = w[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = w[i].iter().zip(&w[j]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                off2 += 2.0 * g * g;
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                // Rotate column j by the phase of gamma so the pair's Gram
                // matrix becomes real symmetric, then apply a real rotation.
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, i, j, phase, c, s);
                rotate(&mut v, i, j, phase, c, s);
            }
        }
        if off2.sqrt() <= CONVERGENCE * frob2.max(f64::MIN_POSITIVE) {
            break;
        }
    }

    let mut order: Vec<(f64, usize)> = w
        .iter()
        .enumerate()
        .map(|(j, col)| (col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(), j))
        .collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));

    let sigma: Vec<f64> = order.iter().map(|&(s, _)| s).collect();
    let u = Matrix::from_fn(&field, m, n, |i, k| {
        let (s, j) = order[k];
        if s > 0.0 {
            w[j][i] / s
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let vm = Matrix::from_fn(&field, n, n, |i, k| v[order[k].1][i]);
    Svd { u, sigma, v: vm }
}

fn rotate(cols: &mut [Vec<Complex64>], i: usize, j: usize, phase: Complex64, c: f64, s: f64) {
    let pc = phase.conj();
    for k in 0..cols[i].len() {
        let x = cols[i][k];
        let y = cols[j][k] * pc;
        cols[i][k] = x * c - y * s;
        cols[j][k] = x * s + y * c;
    }
}

fn threshold(field: &ComplexFloat, sigma: &[f64]) -> f64 {
    let tol = field.tolerance().unwrap_or(0.0);
    tol * sigma.first().copied().unwrap_or(0.0)
}

/// Count of singular values above `tol · σ_max`.
pub fn numerical_rank(a: &Matrix<ComplexFloat>) -> usize {
    let s = svd(a);
    let th = threshold(a.field(), &s.sigma);
    s.sigma.iter().filter(|&&x| x > th && x > 0.0).count()
}

/// Singular values plus the rank decision's safety margin: the ratio between
/// the threshold and the nearest singular value on either side of it.
/// Values near 1 mean the rank decision is fragile.
pub fn rank_margin(a: &Matrix<ComplexFloat>) -> (usize, f64) {
    let s = svd(a);
    let th = threshold(a.field(), &s.sigma);
    if th == 0.0 {
        return (0, f64::INFINITY);
    }
    let rank = s.sigma.iter().filter(|&&x| x > th).count();
    let above = s.sigma.get(rank.wrapping_sub(1)).map_or(f64::INFINITY, |&x| x / th);
    let below = s.sigma.get(rank).map_or(f64::INFINITY, |&x| if x > 0.0 { th / x } else { f64::INFINITY });
    (rank, above.min(below))
}

pub fn null_space(a: &Matrix<ComplexFloat>) -> Vec<Matrix<ComplexFloat>> {
    let s = svd(a);
    let th = threshold(a.field(), &s.sigma);
    let r = s.sigma.iter().filter(|&&x| x > th && x > 0.0).count();
    (r..a.cols()).map(|k| s.v.column(k)).collect()
}

pub fn pseudo_inverse(a: &Matrix<ComplexFloat>) -> Matrix<ComplexFloat> {
    let field = *a.field();
    let s = svd(a);
    let th = threshold(&field, &s.sigma);
    let (m, n) = a.shape();
    Matrix::from_fn(&field, n, m, |i, j| {
        s.sigma
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > th && x > 0.0)
            .map(|(k, &x)| s.v.get(i, k) * s.u.get(j, k).conj() / x)
            .sum()
    })
}
