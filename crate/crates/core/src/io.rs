//! Plain-text matrix format.
//!
//! ```text
//! 2 2 Q
//! 1 1/2
//! 0 -3
//! ```
//!
//! The header is `rows cols field` with field one of `Q`, `GF <p>` or `C`.
//! Rational entries are `num/den` or `num`, complex entries `re,im`. Blank
//! lines and lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::field::{ComplexFloat, Field, PrimeField, Rationals};
use crate::matrix::Matrix;

/// A matrix whose field is only known at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Q(Matrix<Rationals>),
    Fp(Matrix<PrimeField>),
    C(Matrix<ComplexFloat>),
}

impl AnyMatrix {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Q(m) => m.shape(),
            AnyMatrix::Fp(m) => m.shape(),
            AnyMatrix::C(m) => m.shape(),
        }
    }
}

impl std::fmt::Display for AnyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyMatrix::Q(m) => f.write_str(&write_matrix(m)),
            AnyMatrix::Fp(m) => f.write_str(&write_matrix(m)),
            AnyMatrix::C(m) => f.write_str(&write_matrix(m)),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parse a matrix in any of the three fields. `tolerance` configures the
/// complex field and is ignored otherwise.
pub fn parse_any(text: &str, tolerance: f64) -> Result<AnyMatrix> {
    let header = content_lines(text).next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    match toks.get(2..) {
        Some(["Q"]) => parse_matrix(&Rationals, text).map(AnyMatrix::Q),
        Some(["GF", p]) => {
            let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad modulus `{p}`")))?;
            parse_matrix(&PrimeField::new(p)?, text).map(AnyMatrix::Fp)
        }
        Some(["C"]) => parse_matrix(&ComplexFloat::new(tolerance)?, text).map(AnyMatrix::C),
        _ => Err(Error::Parse(format!("bad header `{header}`"))),
    }
}

/// Parse a matrix whose header must name `field`.
pub fn parse_matrix<F: Field>(field: &F, text: &str) -> Result<Matrix<F>> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 3 {
        return Err(Error::Parse(format!("bad header `{header}`")));
    }
    let dim = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension `{s}`")));
    let rows = dim(toks[0])?;
    let cols = dim(toks[1])?;
    let declared = toks[2..].join(" ");
    let expected = header_field(field);
    if declared != expected {
        return Err(Error::Parse(format!("header declares field `{declared}`, expected `{expected}`")));
    }
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for line in lines {
        seen += 1;
        if seen > rows {
            return Err(Error::Parse(format!("more than {rows} rows")));
        }
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != cols {
            return Err(Error::Parse(format!("row {seen} has {} entries, expected {cols}", entries.len())));
        }
        for e in entries {
            data.push(field.parse_elem(e)?);
        }
    }
    if seen != rows {
        return Err(Error::Parse(format!("expected {rows} rows, found {seen}")));
    }
    Matrix::from_vec(field.clone(), rows, cols, data)
}

fn header_field<F: Field>(field: &F) -> String {
    field.kind().to_string()
}

pub fn write_matrix<F: Field>(m: &Matrix<F>) -> String {
    format!("{} {} {}\n{}", m.rows(), m.cols(), header_field(m.field()), m)
}
