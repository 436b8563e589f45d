//! Property tests across modules. Each check compares a library routine with
//! a second computation written here, or with an identity it must satisfy.

use minusord::field::{ComplexFloat, Field, PrimeField, Rationals};
use minusord::geninv::{self, d1_basis, g1_contains, g1_family, g1b_check, g1b_member, inner_inverse, moore_penrose};
use minusord::linalg::{self, rank, rank_factorization, rref};
use minusord::orders::{generate_minus_pair_with, minus_leq, space_leq, star_leq};
use minusord::preservers::{decompose_preserver, parse_map, write_map, AnyMap, Decomposition, MatrixLinearMap, PreserverKind};
use minusord::random::{random_invertible, random_matrix, random_matrix_of_rank_with, rng_from_seed};
use minusord::ringlab::{self, explore_maximal, FiniteRing, Mode, Oracle, Proposition};
use minusord::structure::{
    find_missing_witness, rank_one_of, rank_one_subspace, rank_one_sum_check, sample_below, witness_in, Side,
};
use minusord::svd::svd;
use minusord::Matrix;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const Q: Rationals = Rationals;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn of_rank(rows: usize, cols: usize, r: usize, rng: &mut ChaCha8Rng) -> Matrix<Rationals> {
    random_matrix_of_rank_with(&Q, rows, cols, r, rng).unwrap()
}

fn random_member<F: Field>(b: &Matrix<F>, rng: &mut ChaCha8Rng) -> Matrix<F> {
    let fam = g1_family(b);
    let coeffs: Vec<_> = (0..fam.dimension()).map(|_| b.field().random(rng)).collect();
    fam.member(&coeffs)
}

/// `a† = Gᴴ(GGᴴ)⁻¹(FᴴF)⁻¹Fᴴ` from a rank factorization of `aᴴ`, so that it
/// shares no factorization with the library.
fn pseudo_inverse_via_adjoint<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    let f = a.field();
    if rank(a) == 0 {
        return Matrix::zeros(f, a.cols(), a.rows());
    }
    let (p, q) = rank_factorization(&a.adjoint()).unwrap();
    let (left, right) = (q.adjoint(), p.adjoint());
    let inner = linalg::inverse(&(&right * &right.adjoint())).unwrap();
    let outer = linalg::inverse(&(&left.adjoint() * &left)).unwrap();
    &(&(&right.adjoint() * &inner) * &outer) * &left.adjoint()
}

/// `G₁(b) ⊆ G₁(a)`, checked on the affine generators of `G₁(b)`.
fn inner_inclusion<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    let fam = g1_family(b);
    g1_contains(a, &fam.base).unwrap() && fam.d1_basis.iter().all(|d| (&(a * d) * a).is_zero())
}

/// `D₁(b) ⊆ D₁(a)`.
fn d1_inclusion<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    d1_basis(b).iter().all(|d| (&(a * d) * a).is_zero())
}

fn all_gf(p: u64, n: usize) -> Vec<Matrix<PrimeField>> {
    let f = PrimeField::new(p).unwrap();
    let size = (p as usize).pow((n * n) as u32);
    (0..size)
        .map(|x| Matrix::from_fn(&f, n, n, |i, j| ((x / (p as usize).pow((i * n + j) as u32)) % p as usize) as u64))
        .collect()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rank_of_product_is_bounded(seed: u64, m in 1usize..6, k in 1usize..6, n in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let ra = rng.gen_range(0..=m.min(k));
        let rb = rng.gen_range(0..=k.min(n));
        let a = of_rank(m, k, ra, &mut rng);
        let b = of_rank(k, n, rb, &mut rng);
        prop_assert_eq!(rank(&a), ra);
        prop_assert!(rank(&(&a * &b)) <= ra.min(rb));
    }

    #[test]
    fn rank_factorization_reproduces(seed: u64, m in 1usize..7, n in 1usize..7) {
        let mut rng = rng_from_seed(seed);
        let r = rng.gen_range(1..=m.min(n));
        let a = of_rank(m, n, r, &mut rng);
        let (f, g) = rank_factorization(&a).unwrap();
        prop_assert_eq!(f.cols(), r);
        prop_assert_eq!(g.rows(), r);
        prop_assert_eq!(&(&f * &g), &a);
        prop_assert_eq!(rref(&a).pivots.len(), r);
    }

    #[test]
    fn moore_penrose_agrees_with_adjoint_factorization(seed: u64, m in 1usize..6, n in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let r = rng.gen_range(0..=m.min(n));
        let a = of_rank(m, n, r, &mut rng);
        prop_assert_eq!(moore_penrose(&a).unwrap(), pseudo_inverse_via_adjoint(&a));
    }

    #[test]
    fn every_inner_inverse_is_in_the_family(seed: u64, n in 1usize..6) {
        // g + z − g·a·z·a·g runs over G₁(a) as z varies.
        let mut rng = rng_from_seed(seed);
        let r = rng.gen_range(0..=n);
        let a = of_rank(n, n, r, &mut rng);
        let g = inner_inverse(&a);
        let z = random_matrix(&Q, n, n, &mut rng);
        let x = &(&g + &z) - &(&(&(&(&g * &a) * &z) * &a) * &g);
        prop_assert_eq!(&(&(&a * &x) * &a), &a);
        let fam = g1_family(&a);
        prop_assert!(fam.contains(&x));
        prop_assert_eq!(fam.dimension(), n * n - r * r);
        prop_assert!(g1_contains(&a, &random_member(&a, &mut rng)).unwrap());
    }

    #[test]
    fn compatible_inverses_are_reached(seed: u64, ra in 0usize..3, rc in 0usize..3) {
        // Every x with x ∈ G₁(a), ax = bx, xa = xb arises as b⁻ − b⁻(b − a)b⁻:
        // take b⁻ = x + d⁺ with d⁺ a reflexive inverse of d = b − a built from
        // the witness of d ≤⁻ b.
        let mut rng = rng_from_seed(seed);
        let (a, b) = generate_minus_pair_with(&Q, 4, ra, rc, &mut rng).unwrap();
        let d = &b - &a;
        let x = g1b_member(&a, &b, &random_member(&b, &mut rng)).unwrap();
        prop_assert!(g1b_check(&a, &b, &x).unwrap());
        let w = minus_leq(&d, &b).unwrap().witness.unwrap().a_inner;
        let d_plus = &(&w * &d) * &w;
        let bi = &x + &d_plus;
        prop_assert!(g1_contains(&b, &bi).unwrap());
        prop_assert_eq!(&bi - &(&(&bi * &d) * &bi), x);
    }

    #[test]
    fn minus_characterizations_agree(seed: u64, n in 1usize..5) {
        let mut rng = rng_from_seed(seed);
        let (a, b) = if rng.gen_bool(0.5) {
            let ra = rng.gen_range(0..=n);
            let rc = rng.gen_range(0..=n - ra);
            generate_minus_pair_with(&Q, n, ra, rc, &mut rng).unwrap()
        } else {
            let ra = rng.gen_range(0..=n);
            let rb = rng.gen_range(0..=n);
            (of_rank(n, n, ra, &mut rng), of_rank(n, n, rb, &mut rng))
        };
        let holds = minus_leq(&a, &b).unwrap().holds;
        let by_rank = rank(&b) == rank(&a) + rank(&(&b - &a));
        prop_assert_eq!(holds, by_rank);
        prop_assert_eq!(holds, inner_inclusion(&a, &b));
        let common = geninv::common_inner_inverse(&a, &b).unwrap().is_some();
        prop_assert_eq!(holds, common && d1_inclusion(&a, &b));
        let space = space_leq(&a, &b).unwrap().holds;
        prop_assert_eq!(holds, space && common);
        if holds {
            prop_assert!(space);
        }
    }

    #[test]
    fn space_order_is_d1_inclusion(seed: u64, n in 1usize..5) {
        let mut rng = rng_from_seed(seed);
        let rb = rng.gen_range(0..=n);
        let b = of_rank(n, n, rb, &mut rng);
        let a = if rng.gen_bool(0.5) {
            &(&b * &random_matrix(&Q, n, n, &mut rng)) * &b
        } else {
            random_matrix(&Q, n, n, &mut rng)
        };
        prop_assert_eq!(space_leq(&a, &b).unwrap().holds, d1_inclusion(&a, &b));
    }

    #[test]
    fn units_preserve_minus_order(seed: u64, n in 1usize..5) {
        let mut rng = rng_from_seed(seed);
        let ra = rng.gen_range(0..=n);
        let (a, b) = if rng.gen_bool(0.5) {
            generate_minus_pair_with(&Q, n, ra, rng.gen_range(0..=n - ra), &mut rng).unwrap()
        } else {
            (of_rank(n, n, ra, &mut rng), random_matrix(&Q, n, n, &mut rng))
        };
        let (u, v) = (random_invertible(&Q, n, &mut rng), random_invertible(&Q, n, &mut rng));
        let moved = minus_leq(&(&(&u * &a) * &v), &(&(&u * &b) * &v)).unwrap().holds;
        prop_assert_eq!(minus_leq(&a, &b).unwrap().holds, moved);
    }

    #[test]
    fn below_an_idempotent_only_idempotents(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let n = 3;
        let r = rng.gen_range(0..=n);
        let (f, g) = {
            let p = of_rank(n, n, r, &mut rng);
            if r == 0 { (Matrix::zeros(&Q, n, 0), Matrix::zeros(&Q, 0, n)) } else { rank_factorization(&p).unwrap() }
        };
        // e = f·(g·f)⁻¹·g is idempotent whenever g·f is invertible.
        prop_assume!(r == 0 || linalg::is_invertible(&(&g * &f)));
        let e = if r == 0 { Matrix::zeros(&Q, n, n) } else { &(&f * &linalg::inverse(&(&g * &f)).unwrap()) * &g };
        prop_assert_eq!(&(&e * &e), &e);
        let pq = &(&e * &random_matrix(&Q, n, n, &mut rng)) * &e;
        for a in [pq.clone(), &e - &pq, minus_leq(&pq, &e).unwrap().witness.map(|w| w.p).unwrap_or(pq.clone())] {
            if minus_leq(&a, &e).unwrap().holds {
                prop_assert_eq!(&(&a * &a), &a);
                prop_assert_eq!(&(&a * &e), &a);
                prop_assert_eq!(&(&e * &a), &a);
            }
        }
    }

    #[test]
    fn star_pairs_from_singular_values_are_minus_pairs(seed: u64, n in 2usize..6) {
        let c = ComplexFloat::default();
        let mut rng = rng_from_seed(seed);
        let base = svd(&random_matrix(&c, n, n, &mut rng));
        let keep: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let sigma: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
        let diag = |mask: &dyn Fn(usize) -> bool| {
            let d: Vec<_> = (0..n).map(|i| if mask(i) { num_complex::Complex64::new(sigma[i], 0.0) } else { c.zero() }).collect();
            &(&base.u * &Matrix::diag(&c, &d)) * &base.v.adjoint()
        };
        let b = diag(&|_| true);
        let a = diag(&|i| keep[i]);
        prop_assert!(star_leq(&a, &b).unwrap().holds);
        prop_assert!(minus_leq(&a, &b).unwrap().holds);
    }

    #[test]
    fn rank_one_squares_to_tau(seed: u64, n in 1usize..5) {
        let mut rng = rng_from_seed(seed);
        let u = rank_one_of(&of_rank(n, n, 1, &mut rng)).unwrap();
        prop_assert_eq!(&(&u.value * &u.value), &u.value.scale(&u.tau));
        prop_assert_eq!(&(&u.left * &u.right), &u.value);
        if let Some(e) = u.idempotent() {
            prop_assert_eq!(&(&e * &e), &e);
            prop_assert_eq!(rank(&e), 1);
        } else {
            prop_assert!(Q.is_zero(&u.tau));
        }
    }

    #[test]
    fn only_zero_and_u_below_rank_one(seed: u64, n in 1usize..5) {
        let mut rng = rng_from_seed(seed);
        let u = of_rank(n, n, 1, &mut rng);
        for v in sample_below(&u, 8, &mut rng).unwrap() {
            prop_assert!(minus_leq(&v, &u).unwrap().holds);
            prop_assert!(v.is_zero() || v == u);
        }
    }

    #[test]
    fn rank_one_sums_share_a_side(seed: u64, n in 2usize..5) {
        let mut rng = rng_from_seed(seed);
        let u = rank_one_of(&of_rank(n, n, 1, &mut rng)).unwrap();
        let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        let sub = rank_one_subspace(&u, side);
        let coeffs: Vec<_> = sub.basis.iter().map(|_| Q.random(&mut rng)).collect();
        let v = sub.basis.iter().zip(&coeffs).fold(Matrix::zeros(&Q, n, n), |acc, (m, c)| &acc + &m.scale(c));
        prop_assume!(!v.is_zero() && rank(&(&u.value + &v)) == 1);
        prop_assert!(sub.contains(&v));
        let aligned = rank_one_sum_check(&u, &rank_one_of(&v).unwrap()).unwrap();
        prop_assert!(aligned.column || aligned.row);
        match side {
            Side::Left => prop_assert!(aligned.column),
            Side::Right => prop_assert!(aligned.row),
        }
    }

    #[test]
    fn scaling_the_factors_leaves_the_map(seed: u64, n in 1usize..4, lambda in 1i64..9) {
        let mut rng = rng_from_seed(seed);
        let (t, s) = (random_invertible(&Q, n, &mut rng), random_invertible(&Q, n, &mut rng));
        let l = Q.from_i64(lambda);
        let scaled = MatrixLinearMap::two_sided(&t.scale(&l), &s.scale(&Q.inv(&l).unwrap())).unwrap();
        prop_assert_eq!(&scaled, &MatrixLinearMap::two_sided(&t, &s).unwrap());
    }

    #[test]
    fn decomposition_recovers_orientation(seed: u64, n in 2usize..4, anti: bool) {
        let mut rng = rng_from_seed(seed);
        let (t, s) = (random_invertible(&Q, n, &mut rng), random_invertible(&Q, n, &mut rng));
        let phi = if anti { MatrixLinearMap::anti(&t, &s) } else { MatrixLinearMap::two_sided(&t, &s) }.unwrap();
        let Decomposition::Canonical(form) = decompose_preserver(&phi, 8, seed).unwrap() else {
            return Err(TestCaseError::fail("canonical map refuted"));
        };
        let expected = if anti { PreserverKind::AntiIsomorphism } else { PreserverKind::Isomorphism };
        prop_assert_eq!(form.kind, expected);
        let lead = form.t.entries().iter().find(|x| !Q.is_zero(x)).unwrap();
        prop_assert_eq!(lead, &Q.one());
        prop_assert_eq!(form.to_map(), phi);
    }

    #[test]
    fn map_files_round_trip(seed: u64, n in 1usize..4) {
        let mut rng = rng_from_seed(seed);
        let phi = MatrixLinearMap::new(n, random_matrix(&Q, n * n, n * n, &mut rng)).unwrap();
        prop_assert_eq!(parse_map(&write_map(&phi), 1e-10).unwrap(), AnyMap::Q(phi));
    }
}

#[test]
fn singular_matrices_lack_a_witness_exhaustively() {
    // Over GF(3) every L_u / R_u is small enough to enumerate: the reported
    // unit must have no nonzero element of its subspace below `a`.
    let mats = all_gf(3, 2);
    for a in mats.iter().filter(|m| !linalg::is_invertible(m)) {
        let (u, side) = find_missing_witness(a).unwrap().expect("singular matrix has a missing witness");
        let sub = rank_one_subspace(&rank_one_of(&u).unwrap(), side);
        for x in mats.iter().filter(|x| !x.is_zero() && sub.contains(x)) {
            assert!(!minus_leq(x, a).unwrap().holds, "{x} below {a}");
        }
    }
    for a in mats.iter().filter(|m| linalg::is_invertible(m)) {
        assert!(find_missing_witness(a).unwrap().is_none());
        let u = rank_one_of(&mats[1]).unwrap();
        assert!(witness_in(&u, Side::Left, a).unwrap().is_some());
    }
}

#[test]
fn idempotent_upper_bound_exhaustive_gf2() {
    let mats = all_gf(2, 2);
    for e in mats.iter().filter(|e| &(*e * *e) == *e) {
        for a in &mats {
            if minus_leq(a, e).unwrap().holds {
                assert_eq!(&(a * a), a);
            }
        }
    }
}

#[test]
fn definition_matches_inner_form_on_semiprime_rings() {
    for spec in ["m2gf2", "z6", "z2+z3", "m2gf2+z2"] {
        let ring = FiniteRing::parse(spec).unwrap();
        let facts = ringlab::RingFacts::new(&ring);
        assert!(facts.semiprime_violation().is_none(), "{spec}");
        for a in facts.regular.ones() {
            for b in facts.regular.ones() {
                assert_eq!(facts.minus_def(a, b).is_some(), facts.minus_inner(a, b).unwrap(), "{spec}");
            }
        }
    }
}

#[test]
fn triangular_ring_is_exploratory_only() {
    let ring = FiniteRing::parse("ut2gf2").unwrap();
    let oracle = Oracle::new(&ring);
    assert!(!oracle.is_semiprime());
    let report = oracle.verify(Proposition::G1Characterization, Mode::Exploratory);
    assert!(report.exploratory);
    let strict = oracle.verify(Proposition::G1Characterization, Mode::Strict);
    assert!(!strict.exploratory);
}

#[test]
fn direct_sum_maximal_exploration() {
    // Prime components: maximal elements are exactly the one-sided
    // invertibles. The sum of two copies is not prime; the comparison is
    // reported rather than asserted.
    let single = explore_maximal(&FiniteRing::parse("m2gf2").unwrap());
    assert_eq!(single.maximal, 6);
    assert!(single.maximal_not_invertible.is_empty() && single.invertible_not_maximal.is_empty());
    let double = explore_maximal(&FiniteRing::parse("m2gf2+m2gf2").unwrap());
    assert_eq!(double.one_sided_invertible, 36);
    assert!(double.maximal >= 36);
}
