//! Seeded generators for test matrices of prescribed rank.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::rank;
use crate::matrix::Matrix;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<F: Field>(field: &F, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<F> {
    let data = (0..rows * cols).map(|_| field.random(rng)).collect();
    Matrix::from_vec(field.clone(), rows, cols, data).expect("shape")
}

/// A `rows×cols` matrix of rank exactly `r`, deterministic in `seed`.
pub fn random_matrix_of_rank<F: Field>(field: &F, rows: usize, cols: usize, r: usize, seed: u64) -> Result<Matrix<F>> {
    random_matrix_of_rank_with(field, rows, cols, r, &mut rng_from_seed(seed))
}

pub fn random_matrix_of_rank_with<F: Field>(
    field: &F,
    rows: usize,
    cols: usize,
    r: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Matrix<F>> {
    let max = rows.min(cols);
    if r > max {
        return Err(Error::RankOutOfRange { rank: r, max });
    }
    if r == 0 {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    loop {
        let left = random_matrix(field, rows, r, rng);
        let right = random_matrix(field, r, cols, rng);
        if rank(&left) == r && rank(&right) == r {
            return Ok(&left * &right);
        }
    }
}

pub fn random_invertible<F: Field>(field: &F, n: usize, rng: &mut ChaCha8Rng) -> Matrix<F> {
    random_matrix_of_rank_with(field, n, n, n, rng).expect("rank n fits in n x n")
}
