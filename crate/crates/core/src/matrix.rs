//! Dense row-major matrices over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Parse(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// The matrix unit `E_ij` (zero-based indices).
    pub fn unit(field: &F, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        m.set(i, j, field.one());
        m
    }

    /// Convenience constructor from small integers, mostly for tests.
    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| field.from_i64(v))).collect();
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, f: impl Fn(usize, usize) -> F::Elem) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn diag(field: &F, entries: &[F::Elem]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Equality in the field's sense: exact, or within tolerance on floats.
    pub fn same_as(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.field.entries_eq(&self.data, &other.data)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose; plain transpose on fields with trivial involution.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.field.conj(self.get(j, i)))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|x| self.field.mul(s, x)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> F::Elem {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| {
                let m = self.field.magnitude(x);
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(&self.field, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn row(&self, i: usize) -> Self {
        Self::from_fn(&self.field, 1, self.cols, |_, j| self.get(i, j).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(self.mismatch("hstack", other));
        }
        let c = self.cols;
        Ok(Self::from_fn(&self.field, self.rows, c + other.cols, |i, j| {
            if j < c {
                self.get(i, j).clone()
            } else {
                other.get(i, j - c).clone()
            }
        }))
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(self.mismatch("vstack", other));
        }
        let r = self.rows;
        Ok(Self::from_fn(&self.field, r + other.rows, self.cols, |i, j| {
            if i < r {
                self.get(i, j).clone()
            } else {
                other.get(i - r, j).clone()
            }
        }))
    }

    /// Column-major vectorization (columns stacked top to bottom).
    pub fn vec(&self) -> Vec<F::Elem> {
        (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| self.get(i, j).clone()))
            .collect()
    }

    /// Inverse of [`Matrix::vec`].
    pub fn unvec(field: &F, rows: usize, cols: usize, v: &[F::Elem]) -> Self {
        assert_eq!(v.len(), rows * cols);
        Self::from_fn(field, rows, cols, |i, j| v[j * rows + i].clone())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = other.shape();
        Self::from_fn(&self.field, self.rows * p, self.cols * q, |i, j| {
            self.field.mul(self.get(i / p, j / q), other.get(i % p, j % q))
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape("add", other)?;
        Ok(self.zip_with(other, |f, a, b| f.add(a, b)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape("sub", other)?;
        Ok(self.zip_with(other, |f, a, b| f.sub(a, b)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(self.mismatch("mul", other));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                format!("{:?}", self.field.kind()),
                format!("{:?}", other.field.kind()),
            ));
        }
        Ok(())
    }

    pub(crate) fn check_same_shape(&self, op: &'static str, other: &Self) -> Result<()> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(self.mismatch(op, other));
        }
        Ok(())
    }

    pub(crate) fn check_square(&self, op: &'static str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { op, rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    fn mismatch(&self, op: &'static str, other: &Self) -> Error {
        Error::DimensionMismatch { op, left: self.shape(), right: other.shape() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(&self.field, a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }
}

// Operator impls panic on shape or field mismatch, like ndarray. Public entry
// points validate their inputs first and use these internally.

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: Self) -> Matrix<F> {
        self.checked_add(rhs).expect("matrix add")
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: Self) -> Matrix<F> {
        self.checked_sub(rhs).expect("matrix sub")
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: Self) -> Matrix<F> {
        self.checked_mul(rhs).expect("matrix mul")
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        let data = self.data.iter().map(|x| self.field.neg(x)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.field.format_elem(self.get(i, j))).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field.kind(), self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.field.format_elem(self.get(i, j))).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
