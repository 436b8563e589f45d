//! Linear maps on square matrices and the minus-order preserver problem.
//!
//! A map `Φ: Mₙ → Mₙ` is stored as the `n²×n²` matrix acting on column-major
//! vectorizations. Bijective maps preserving `≤⁻` in both directions have
//! the form `X ↦ T·X·S` or `X ↦ T·Xᵗ·S`; [`decompose_preserver`] recovers
//! `T` and `S` from the images of the matrix units.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ComplexFloat, Field, PrimeField, Rationals};
use crate::io::{self, AnyMatrix};
use crate::linalg;
use crate::matrix::Matrix;
use crate::orders::{generate_minus_pair_with, minus_leq, space_leq};
use crate::random::{random_invertible, random_matrix, random_matrix_of_rank_with, rng_from_seed};

/// Trial budget used by [`decompose_preserver`] for each direction.
pub const DEFAULT_TRIALS: usize = 64;

/// Largest size for which [`jordan_triple_check`] enumerates all basis
/// triples.
pub const EXHAUSTIVE_TRIPLE_LIMIT: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLinearMap<F: Field> {
    n: usize,
    coeffs: Matrix<F>,
}

impl<F: Field> MatrixLinearMap<F> {
    pub fn new(n: usize, coeffs: Matrix<F>) -> Result<Self> {
        if n == 0 || coeffs.shape() != (n * n, n * n) {
            return Err(Error::DimensionMismatch { op: "linear map", left: (n * n, n * n), right: coeffs.shape() });
        }
        Ok(Self { n, coeffs })
    }

    /// Tabulate `f` on the matrix units.
    pub fn from_fn(field: &F, n: usize, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        let nn = n * n;
        let mut coeffs = Matrix::zeros(field, nn, nn);
        for k in 0..nn {
            let image = f(&Matrix::unit(field, n, n, k % n, k / n)).vec();
            for (r, v) in image.into_iter().enumerate() {
                coeffs.set(r, k, v);
            }
        }
        Self { n, coeffs }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Self { n, coeffs: Matrix::identity(field, n * n) }
    }

    pub fn transpose(field: &F, n: usize) -> Self {
        Self::from_fn(field, n, Matrix::transpose)
    }

    /// `X ↦ T·X·S`, with coefficients `Sᵗ ⊗ T`.
    pub fn two_sided(t: &Matrix<F>, s: &Matrix<F>) -> Result<Self> {
        t.check_square("two-sided map")?;
        t.check_same_shape("two-sided map", s)?;
        Ok(Self { n: t.rows(), coeffs: s.transpose().kron(t) })
    }

    /// `X ↦ T·Xᵗ·S`.
    pub fn anti(t: &Matrix<F>, s: &Matrix<F>) -> Result<Self> {
        let base = Self::two_sided(t, s)?;
        Ok(base.compose(&Self::transpose(t.field(), t.rows())))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        self.coeffs.field()
    }

    pub fn coeffs(&self) -> &Matrix<F> {
        &self.coeffs
    }

    pub fn apply(&self, x: &Matrix<F>) -> Result<Matrix<F>> {
        self.coeffs.check_field(x)?;
        if x.shape() != (self.n, self.n) {
            return Err(Error::DimensionMismatch { op: "apply map", left: (self.n, self.n), right: x.shape() });
        }
        let v = Matrix::from_vec(self.field().clone(), self.n * self.n, 1, x.vec())?;
        Ok(Matrix::unvec(self.field(), self.n, self.n, (&self.coeffs * &v).entries()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { n: self.n, coeffs: &self.coeffs * &other.coeffs }
    }

    /// `X ↦ M·self(X)`.
    pub fn left_multiply(&self, m: &Matrix<F>) -> Self {
        let lift = Matrix::identity(self.field(), self.n).kron(m);
        Self { n: self.n, coeffs: &lift * &self.coeffs }
    }

    pub fn is_bijective(&self) -> bool {
        linalg::is_invertible(&self.coeffs)
    }

    pub fn inverse(&self) -> Result<Self> {
        let coeffs = linalg::inverse(&self.coeffs).map_err(|_| Error::NotBijective)?;
        Ok(Self { n: self.n, coeffs })
    }

    /// Images of the matrix units in column-major order.
    pub fn basis_images(&self) -> Vec<Matrix<F>> {
        let nn = self.n * self.n;
        (0..nn)
            .map(|k| Matrix::unvec(self.field(), self.n, self.n, self.coeffs.column(k).entries()))
            .collect()
    }
}

fn require_odd_characteristic<F: Field>(f: &F) -> Result<()> {
    if f.characteristic() == 2 {
        Err(Error::CharacteristicTwo)
    } else {
        Ok(())
    }
}

/// `Φ(x·y + y·x) = Φ(x)·Φ(y) + Φ(y)·Φ(x)` on all pairs of matrix units,
/// which decides the Jordan property by bilinearity.
pub fn jordan_check<F: Field>(phi: &MatrixLinearMap<F>) -> Result<bool> {
    let f = phi.field();
    require_odd_characteristic(f)?;
    let n = phi.n;
    let images = phi.basis_images();
    let units: Vec<Matrix<F>> = (0..n * n).map(|k| Matrix::unit(f, n, n, k % n, k / n)).collect();
    for a in 0..n * n {
        for b in a..n * n {
            let (x, y) = (&units[a], &units[b]);
            let lhs = phi.apply(&(&(x * y) + &(y * x)))?;
            let (px, py) = (&images[a], &images[b]);
            if !lhs.same_as(&(&(px * py) + &(py * px))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct TripleVerdict<F: Field> {
    pub holds: bool,
    /// All basis triples were checked; otherwise `checked` random triples.
    pub exhaustive: bool,
    pub checked: usize,
    pub counterexample: Option<[Matrix<F>; 3]>,
}

/// `Φ(abc + cba) = Φ(a)Φ(b)Φ(c) + Φ(c)Φ(b)Φ(a)`.
///
/// Up to [`EXHAUSTIVE_TRIPLE_LIMIT`] this runs over all triples of matrix
/// units, where `E_ij·E_kl·E_mn` is a unit or zero so the left side is a
/// lookup. Larger maps are checked on `random_trials` random triples.
pub fn jordan_triple_check<F: Field>(phi: &MatrixLinearMap<F>, random_trials: usize, seed: u64) -> Result<TripleVerdict<F>> {
    let f = phi.field();
    require_odd_characteristic(f)?;
    let n = phi.n;
    let nn = n * n;
    let images = phi.basis_images();
    let zero = Matrix::zeros(f, n, n);
    let agrees = |a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>, pa: &Matrix<F>, pb: &Matrix<F>, pc: &Matrix<F>| -> Result<bool> {
        let lhs = phi.apply(&(&(&(a * b) * c) + &(&(c * b) * a)))?;
        Ok(lhs.same_as(&(&(&(pa * pb) * pc) + &(&(pc * pb) * pa))))
    };

    if n <= EXHAUSTIVE_TRIPLE_LIMIT {
        // unit k is E_{k % n, k / n}
        let prod = |a: usize, b: usize, c: usize| -> Option<usize> {
            (a / n == b % n && b / n == c % n).then_some(a % n + n * (c / n))
        };
        let pairs: Vec<Matrix<F>> = (0..nn * nn).map(|ab| &images[ab / nn] * &images[ab % nn]).collect();
        let mut checked = 0;
        for a in 0..nn {
            for b in 0..nn {
                for c in a..nn {
                    checked += 1;
                    let mut lhs = zero.clone();
                    for k in [prod(a, b, c), prod(c, b, a)].into_iter().flatten() {
                        lhs = &lhs + &images[k];
                    }
                    let rhs = &(&pairs[a * nn + b] * &images[c]) + &(&pairs[c * nn + b] * &images[a]);
                    if !lhs.same_as(&rhs) {
                        let unit = |k: usize| Matrix::unit(f, n, n, k % n, k / n);
                        return Ok(TripleVerdict {
                            holds: false,
                            exhaustive: true,
                            checked,
                            counterexample: Some([unit(a), unit(b), unit(c)]),
                        });
                    }
                }
            }
        }
        return Ok(TripleVerdict { holds: true, exhaustive: true, checked, counterexample: None });
    }

    let mut rng = rng_from_seed(seed);
    for t in 0..random_trials {
        let [a, b, c] = [(); 3].map(|_| random_matrix(f, n, n, &mut rng));
        let (pa, pb, pc) = (phi.apply(&a)?, phi.apply(&b)?, phi.apply(&c)?);
        if !agrees(&a, &b, &c, &pa, &pb, &pc)? {
            return Ok(TripleVerdict { holds: false, exhaustive: false, checked: t + 1, counterexample: Some([a, b, c]) });
        }
    }
    Ok(TripleVerdict { holds: true, exhaustive: false, checked: random_trials, counterexample: None })
}

#[derive(Clone, Debug)]
pub enum Verdict<F: Field> {
    Passed { trials: usize },
    /// `a` is below `b` but `Φ(a)` is not below `Φ(b)`.
    Refuted { a: Matrix<F>, b: Matrix<F> },
    /// A surjective map sent the invertible `a` to a singular matrix.
    InvertibilityLost { a: Matrix<F> },
}

impl<F: Field> Verdict<F> {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Passed { .. })
    }
}

/// All `(rank a, rank c)` with `rank a + rank c ≤ n`.
fn rank_splits(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|ra| (0..=n - ra).map(move |rc| (ra, rc))).collect()
}

/// Sampled test of `a ≤⁻ b ⇒ Φ(a) ≤⁻ Φ(b)` over pairs stratified by rank.
/// A refutation is a certificate; passing is evidence only.
pub fn preserves_minus_sampled<F: Field>(phi: &MatrixLinearMap<F>, trials: usize, seed: u64) -> Result<Verdict<F>> {
    let mut rng = rng_from_seed(seed);
    let splits = rank_splits(phi.n);
    for t in 0..trials {
        let (ra, rc) = splits[t % splits.len()];
        let (a, b) = generate_minus_pair_with(phi.field(), phi.n, ra, rc, &mut rng)?;
        if !minus_leq(&phi.apply(&a)?, &phi.apply(&b)?)?.holds {
            return Ok(Verdict::Refuted { a, b });
        }
    }
    Ok(Verdict::Passed { trials })
}

/// Sampled test of `a ≤ₛ b ⇒ Φ(a) ≤ₛ Φ(b)`. Pairs are `(b·m·b, b)` and
/// minus pairs. For a surjective map, sampled invertibles must stay
/// invertible.
pub fn preserves_space_sampled<F: Field>(phi: &MatrixLinearMap<F>, trials: usize, seed: u64) -> Result<Verdict<F>> {
    let f = phi.field();
    let n = phi.n;
    let mut rng = rng_from_seed(seed);
    let splits = rank_splits(n);
    for t in 0..trials {
        let (a, b) = if t % 2 == 0 {
            let rb = rng.gen_range(0..=n);
            let b = random_matrix_of_rank_with(f, n, n, rb, &mut rng)?;
            let m = random_matrix(f, n, n, &mut rng);
            (&(&b * &m) * &b, b)
        } else {
            let (ra, rc) = splits[(t / 2) % splits.len()];
            generate_minus_pair_with(f, n, ra, rc, &mut rng)?
        };
        if !space_leq(&phi.apply(&a)?, &phi.apply(&b)?)?.holds {
            return Ok(Verdict::Refuted { a, b });
        }
    }
    if phi.is_bijective() {
        for _ in 0..trials {
            let g = random_invertible(f, n, &mut rng);
            if !linalg::is_invertible(&phi.apply(&g)?) {
                return Ok(Verdict::InvertibilityLost { a: g });
            }
        }
    }
    Ok(Verdict::Passed { trials })
}

fn require_idempotent_unit<F: Field>(phi: &MatrixLinearMap<F>) -> Result<Matrix<F>> {
    let unit = phi.apply(&Matrix::identity(phi.field(), phi.n))?;
    if !(&unit * &unit).same_as(&unit) {
        return Err(Error::UnitNotIdempotent);
    }
    Ok(unit)
}

/// Random idempotent `U·D·U⁻¹` with `D` a 0/1 diagonal.
pub fn random_idempotent<F: Field>(field: &F, n: usize, rng: &mut ChaCha8Rng) -> Matrix<F> {
    let d: Vec<F::Elem> = (0..n).map(|_| if rng.gen_bool(0.5) { field.one() } else { field.zero() }).collect();
    let u = random_invertible(field, n, rng);
    let ui = linalg::inverse(&u).expect("random_invertible returns an invertible matrix");
    &(&u * &Matrix::diag(field, &d)) * &ui
}

/// `Φ(p)² = Φ(p)` on `samples` random idempotents `p`. Requires `Φ(I)`
/// idempotent.
pub fn idempotent_preservation_check<F: Field>(phi: &MatrixLinearMap<F>, samples: usize, seed: u64) -> Result<bool> {
    require_idempotent_unit(phi)?;
    let mut rng = rng_from_seed(seed);
    for _ in 0..samples {
        let p = random_idempotent(phi.field(), phi.n, &mut rng);
        let q = phi.apply(&p)?;
        if !(&q * &q).same_as(&q) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct JordanPipeline<F: Field> {
    pub order: Verdict<F>,
    pub idempotents_preserved: bool,
    pub jordan: bool,
}

impl<F: Field> JordanPipeline<F> {
    /// Order preservation implies both conclusions.
    pub fn consistent(&self) -> bool {
        !self.order.passed() || (self.idempotents_preserved && self.jordan)
    }
}

/// For `Φ` with `Φ(I)` idempotent: sampled order preservation, then
/// idempotent preservation and the Jordan identity.
pub fn jordan_pipeline<F: Field>(phi: &MatrixLinearMap<F>, trials: usize, seed: u64) -> Result<JordanPipeline<F>> {
    require_idempotent_unit(phi)?;
    Ok(JordanPipeline {
        order: preserves_minus_sampled(phi, trials, seed)?,
        idempotents_preserved: idempotent_preservation_check(phi, trials, seed.wrapping_add(1))?,
        jordan: jordan_check(phi)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PreserverKind {
    /// `X ↦ T·X·S`
    Isomorphism,
    /// `X ↦ T·Xᵗ·S`
    AntiIsomorphism,
}

#[derive(Clone, Debug)]
pub struct CanonicalForm<F: Field> {
    pub kind: PreserverKind,
    pub t: Matrix<F>,
    pub s: Matrix<F>,
}

impl<F: Field> CanonicalForm<F> {
    pub fn to_map(&self) -> MatrixLinearMap<F> {
        match self.kind {
            PreserverKind::Isomorphism => MatrixLinearMap::two_sided(&self.t, &self.s),
            PreserverKind::AntiIsomorphism => MatrixLinearMap::anti(&self.t, &self.s),
        }
        .expect("canonical factors are square and of equal size")
    }
}

#[derive(Clone, Debug)]
pub enum Decomposition<F: Field> {
    Canonical(CanonicalForm<F>),
    /// Sampling found `a ≤⁻ b` with the images out of order, for `Φ` or
    /// for `Φ⁻¹` when `inverse_direction` is set.
    Refuted { inverse_direction: bool, a: Matrix<F>, b: Matrix<F> },
}

/// Write a bijective minus-order preserver as `T·X·S` or `T·Xᵗ·S`.
///
/// With `Ψ = Φ(I)⁻¹·Φ`, the orientation follows from whether
/// `Ψ(E₁₂)·Ψ(E₂₁)` or `Ψ(E₂₁)·Ψ(E₁₂)` equals `Ψ(E₁₁)`. The similarity
/// `U` has columns `uᵢ = Ψ(E_i1)·u₁` (`Ψ(E_1i)·u₁` in the anti case) for a
/// nonzero column `u₁` of `Ψ(E₁₁)`; then `T = Φ(I)·U` and `S = U⁻¹`, scaled
/// so the first nonzero entry of `T` is 1.
pub fn decompose_preserver<F: Field>(phi: &MatrixLinearMap<F>, trials: usize, seed: u64) -> Result<Decomposition<F>> {
    let inv = phi.inverse()?;
    for (inverse_direction, map) in [(false, phi), (true, &inv)] {
        if let Verdict::Refuted { a, b } = preserves_minus_sampled(map, trials, seed)? {
            return Ok(Decomposition::Refuted { inverse_direction, a, b });
        }
    }

    let f = phi.field();
    let n = phi.n;
    let unit = phi.apply(&Matrix::identity(f, n))?;
    let unit_inv = linalg::inverse(&unit).map_err(|_| Error::UnitImageSingular)?;
    let psi = phi.left_multiply(&unit_inv);
    let e = |i: usize, j: usize| Matrix::unit(f, n, n, i, j);

    let kind = if n == 1 {
        PreserverKind::Isomorphism
    } else {
        let p11 = psi.apply(&e(0, 0))?;
        let (p12, p21) = (psi.apply(&e(0, 1))?, psi.apply(&e(1, 0))?);
        match ((&p12 * &p21).same_as(&p11), (&p21 * &p12).same_as(&p11)) {
            (true, false) => PreserverKind::Isomorphism,
            (false, true) => PreserverKind::AntiIsomorphism,
            _ => return Err(Error::NotCanonical),
        }
    };

    let p = psi.apply(&e(0, 0))?;
    let scale = p.frobenius_norm();
    let mut nonzero = (0..n).map(|j| p.column(j)).filter(|c| c.entries().iter().any(|x| !f.negligible(x, scale)));
    let col = if f.is_exact() {
        nonzero.next()
    } else {
        nonzero.max_by(|x, y| x.frobenius_norm().total_cmp(&y.frobenius_norm()))
    };
    let u1 = col.ok_or(Error::NotCanonical)?;
    let mut u = Matrix::zeros(f, n, n);
    for i in 0..n {
        let step = match kind {
            PreserverKind::Isomorphism => e(i, 0),
            PreserverKind::AntiIsomorphism => e(0, i),
        };
        let ui = &psi.apply(&step)? * &u1;
        for r in 0..n {
            u.set(r, i, ui.get(r, 0).clone());
        }
    }
    let s = linalg::inverse(&u).map_err(|_| Error::NotCanonical)?;
    let mut t = &unit * &u;

    let tscale = t.frobenius_norm();
    let lead = t.entries().iter().find(|x| !f.negligible(x, tscale)).cloned().ok_or(Error::NotCanonical)?;
    let lead_inv = f.inv(&lead).ok_or(Error::NotCanonical)?;
    t = t.scale(&lead_inv);
    let s = s.scale(&lead);

    let form = CanonicalForm { kind, t, s };
    if !form.to_map().coeffs().same_as(phi.coeffs()) {
        return Err(Error::NotCanonical);
    }
    Ok(Decomposition::Canonical(form))
}

/// A map whose field is only known at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMap {
    Q(MatrixLinearMap<Rationals>),
    Fp(MatrixLinearMap<PrimeField>),
    C(MatrixLinearMap<ComplexFloat>),
}

const MAP_HEADER: &str = "vec column-major n=";

/// Map file: a `vec column-major n=<n>` line followed by the coefficient
/// matrix in the plain-text matrix format.
pub fn parse_map(text: &str, tolerance: f64) -> Result<AnyMap> {
    let mut lines = text.lines();
    let header = lines
        .by_ref()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Parse("empty map file".into()))?;
    let n: usize = header
        .strip_prefix(MAP_HEADER)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad map header `{header}`")))?;
    let rest: Vec<&str> = lines.collect();
    Ok(match io::parse_any(&rest.join("\n"), tolerance)? {
        AnyMatrix::Q(m) => AnyMap::Q(MatrixLinearMap::new(n, m)?),
        AnyMatrix::Fp(m) => AnyMap::Fp(MatrixLinearMap::new(n, m)?),
        AnyMatrix::C(m) => AnyMap::C(MatrixLinearMap::new(n, m)?),
    })
}

pub fn write_map<F: Field>(phi: &MatrixLinearMap<F>) -> String {
    format!("{MAP_HEADER}{}\n{}", phi.n, io::write_matrix(&phi.coeffs))
}
