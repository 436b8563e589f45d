//! Scalar fields the matrix algebra is built over.
//!
//! A field is a small context value ([`Rationals`], [`PrimeField`],
//! [`ComplexFloat`]) that knows how to do arithmetic on its element type.
//! Matrices carry their field, and every binary operation checks that both
//! operands agree on it.
//!
//! The linear-algebra hooks at the bottom of [`Field`] (`rank`, `null_space`,
//! `moore_penrose`, ...) default to exact row reduction; the floating-point
//! field overrides them with SVD-based versions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::svd;

/// Default relative tolerance for the floating-point path.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Runtime description of a field, as written in matrix file headers.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldKind {
    Rationals,
    PrimeField { p: u64 },
    ComplexFloat { tolerance: f64 },
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField { p } => write!(f, "GF {p}"),
            FieldKind::ComplexFloat { .. } => write!(f, "C"),
        }
    }
}

pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + Sized + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn kind(&self) -> FieldKind;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero (or a float below tolerance).
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// The involution used for `A*`. Trivial except on the complex path.
    fn conj(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    /// Exact zero test. For floats this is literal `== 0`; use
    /// [`Field::negligible`] for tolerance-aware decisions.
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// True when `a` should be treated as zero relative to `scale`.
    fn negligible(&self, a: &Self::Elem, _scale: f64) -> bool {
        self.is_zero(a)
    }

    /// Pivot preference score: larger is better. Exact fields only care
    /// about nonzero-ness, so they take the first nonzero pivot.
    fn pivot_score(&self, a: &Self::Elem) -> f64 {
        if self.is_zero(a) {
            0.0
        } else {
            1.0
        }
    }

    fn magnitude(&self, a: &Self::Elem) -> f64;

    /// 0 for fields of characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_exact(&self) -> bool {
        true
    }

    /// Relative tolerance of the float path, `None` on exact fields.
    fn tolerance(&self) -> Option<f64> {
        None
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Matrix equality: exact on exact fields, relative Frobenius residual
    /// on floats.
    fn entries_eq(&self, a: &[Self::Elem], b: &[Self::Elem]) -> bool {
        a == b
    }

    fn rank(&self, m: &Matrix<Self>) -> usize {
        linalg::rref(m).pivots.len()
    }

    fn null_space(&self, m: &Matrix<Self>) -> Vec<Matrix<Self>> {
        linalg::null_space_rref(m)
    }

    fn moore_penrose(&self, m: &Matrix<Self>) -> Result<Matrix<Self>> {
        linalg::moore_penrose_exact(m)
    }

    /// How far the rank decision for `m` is from the threshold, as a ratio
    /// (see [`svd::rank_margin`]). Infinite on exact fields.
    fn rank_margin(&self, _m: &Matrix<Self>) -> f64 {
        f64::INFINITY
    }
}

// ---------------------------------------------------------------------------

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn magnitude(&self, a: &BigRational) -> f64 {
        a.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> BigRational {
        self.from_i64(rng.gen_range(-4..=4))
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("invalid rational entry `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n).map_err(|_| bad())?;
                let d = BigInt::from_str(d).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(
                BigInt::from_str(s).map_err(|_| bad())?,
            )),
        }
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

// ---------------------------------------------------------------------------

/// GF(p) for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::PrimeField { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn magnitude(&self, a: &u64) -> f64 {
        *a as f64
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let v = i64::from_str(s).map_err(|_| Error::Parse(format!("invalid GF({}) entry `{s}`", self.p)))?;
        Ok(self.from_i64(v))
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------

/// Complex numbers in double precision with a relative tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexFloat {
    tol: f64,
}

impl Default for ComplexFloat {
    fn default() -> Self {
        ComplexFloat { tol: DEFAULT_TOLERANCE }
    }
}

impl ComplexFloat {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidField(format!("tolerance must be positive, got {tol}")));
        }
        Ok(ComplexFloat { tol })
    }
}

impl Field for ComplexFloat {
    type Elem = Complex64;

    fn kind(&self) -> FieldKind {
        FieldKind::ComplexFloat { tolerance: self.tol }
    }
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(&self, v: i64) -> Complex64 {
        Complex64::new(v as f64, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn inv(&self, a: &Complex64) -> Option<Complex64> {
        (a.norm() > 0.0).then(|| a.inv())
    }
    fn conj(&self, a: &Complex64) -> Complex64 {
        a.conj()
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn negligible(&self, a: &Complex64, scale: f64) -> bool {
        a.norm() <= self.tol * scale
    }
    fn pivot_score(&self, a: &Complex64) -> f64 {
        a.norm()
    }
    fn magnitude(&self, a: &Complex64) -> f64 {
        a.norm()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn tolerance(&self) -> Option<f64> {
        Some(self.tol)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }
    fn parse_elem(&self, s: &str) -> Result<Complex64> {
        let bad = || Error::Parse(format!("invalid complex entry `{s}`"));
        let (re, im) = s.split_once(',').unwrap_or((s, "0"));
        let re = f64::from_str(re).map_err(|_| bad())?;
        let im = f64::from_str(im).map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    }
    fn format_elem(&self, a: &Complex64) -> String {
        // `{:?}` on f64 is the shortest representation that round-trips.
        format!("{:?},{:?}", a.re, a.im)
    }
    fn entries_eq(&self, a: &[Complex64], b: &[Complex64]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        let na: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        diff <= self.tol * (1.0 + na.max(nb))
    }
    fn rank(&self, m: &Matrix<Self>) -> usize {
        svd::numerical_rank(m)
    }
    fn null_space(&self, m: &Matrix<Self>) -> Vec<Matrix<Self>> {
        svd::null_space(m)
    }
    fn moore_penrose(&self, m: &Matrix<Self>) -> Result<Matrix<Self>> {
        Ok(svd::pseudo_inverse(m))
    }
    fn rank_margin(&self, m: &Matrix<Self>) -> f64 {
        svd::rank_margin(m).1
    }
}
