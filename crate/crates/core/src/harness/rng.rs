//! Per-trial random streams and the random matrices built from them.
//!
//! Trial `i` of a campaign with seed `s` draws from `ChaCha8Rng::seed_from_u64(h)` where
//! `h = splitmix64(s ^ splitmix64(i))`. Streams are independent of scheduling, so trials
//! can run in any order or in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix_core::{orthogonal_factor, DenseMatrix, SymmetricMatrix};

pub type TrialRng = ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(seed: u64, trial_index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(trial_index))
}

pub fn trial_rng(seed: u64, trial_index: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, trial_index))
}

/// Matrix with independent standard normal entries, filled row by row.
pub fn gaussian_matrix(rng: &mut TrialRng, rows: usize, cols: usize) -> DenseMatrix<f64> {
    DenseMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(rng))
}

/// Haar-distributed `n×n` orthogonal matrix: QR of a Gaussian matrix with `R`'s diagonal
/// signs folded into `Q`.
pub fn haar_orthogonal(rng: &mut TrialRng, n: usize) -> DenseMatrix<f64> {
    orthogonal_factor(&gaussian_matrix(rng, n, n)).expect("square Gaussian matrix")
}

/// Uniformly distributed `p×d` frame: the first `d` columns of a Haar matrix.
pub fn random_frame(rng: &mut TrialRng, p: usize, d: usize) -> DenseMatrix<f64> {
    haar_orthogonal(rng, p).column_block(0, d)
}

/// `(G + Gᵀ)/√2`: off-diagonal variance 1, diagonal variance 2.
pub fn symmetric_noise(rng: &mut TrialRng, p: usize) -> SymmetricMatrix<f64> {
    let g = gaussian_matrix(rng, p, p);
    let w = DenseMatrix::from_fn(p, p, |i, j| {
        (g[(i, j)] + g[(j, i)]) * std::f64::consts::FRAC_1_SQRT_2
    });
    SymmetricMatrix::new(w).expect("exactly symmetric")
}
