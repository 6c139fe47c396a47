//! Seeded random states and isometries.
//!
//! Every sampler is a pure function of its seed: a ChaCha8 stream seeded with
//! `seed_from_u64`, so results are bit-identical across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{check_dims, linalg, DensityOperator, PureState};
use crate::{CMatrix, CVector, Error, Result, C64};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent child seed (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    // fill row by row so the stream order is independent of storage order
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Haar-distributed `rows x cols` isometry (`rows >= cols`).
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    assert!(rows >= cols, "isometry must be tall");
    loop {
        let g = gaussian_matrix(rng, rows, cols);
        // Gram-Schmidt of a Gaussian matrix is Haar (the R factor has a
        // positive diagonal by construction).
        if let Some(q) = linalg::orthonormalize_columns(&g) {
            return q;
        }
    }
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    random_isometry(rng, n, n)
}

/// Normalized complex-Gaussian vector: Haar-random pure state on `dims`.
pub fn haar_random_pure(dims: &[usize], seed: u64) -> Result<PureState> {
    haar_pure_with(dims, &mut rng_from_seed(seed))
}

pub fn haar_pure_with<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<PureState> {
    let total = check_dims(dims)?;
    let v = CVector::from_iterator(total, (0..total).map(|_| complex_gaussian(rng)));
    PureState::normalized(dims.to_vec(), v)
}

/// `G G† / tr(G G†)` with `G` a complex-Gaussian `d x rank` matrix.
pub fn ginibre_random_density(dims: &[usize], rank: usize, seed: u64) -> Result<DensityOperator> {
    ginibre_with(dims, rank, &mut rng_from_seed(seed))
}

pub fn ginibre_with<R: Rng + ?Sized>(dims: &[usize], rank: usize, rng: &mut R) -> Result<DensityOperator> {
    let total = check_dims(dims)?;
    if rank == 0 || rank > total {
        return Err(Error::arg(format!("rank {rank} outside 1..={total}")));
    }
    let g = gaussian_matrix(rng, total, rank);
    let m = &g * g.adjoint();
    let tr = linalg::trace(&m).re;
    Ok(DensityOperator::from_parts_unchecked(dims.to_vec(), linalg::hermitize(&m.unscale(tr))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_is_normalized_and_deterministic() {
        for seed in 0..20 {
            let a = haar_random_pure(&[2, 3], seed).unwrap();
            let b = haar_random_pure(&[2, 3], seed).unwrap();
            assert!((a.amplitudes().norm_squared() - 1.0).abs() < 1e-12);
            assert_eq!(a.amplitudes().as_slice(), b.amplitudes().as_slice());
        }
        assert_ne!(haar_random_pure(&[2, 2], 1).unwrap(), haar_random_pure(&[2, 2], 2).unwrap());
    }

    #[test]
    fn ginibre_ranks() {
        let r1 = ginibre_random_density(&[2, 2], 1, 3).unwrap();
        assert!(r1.as_pure(1e-10).is_some());
        assert_eq!(r1.rank(1e-10), 1);
        let full = ginibre_random_density(&[2, 2], 4, 3).unwrap();
        assert!(*full.spectrum().unwrap().last().unwrap() > 0.0);
        assert_eq!(full.rank(1e-12), 4);
        assert_eq!(full, ginibre_random_density(&[2, 2], 4, 3).unwrap());
        // passes full validation
        DensityOperator::new(full.dims().to_vec(), full.matrix().clone()).unwrap();
    }

    #[test]
    fn ginibre_rank_out_of_range() {
        assert!(ginibre_random_density(&[2, 2], 0, 1).is_err());
        assert!(ginibre_random_density(&[2, 2], 5, 1).is_err());
    }

    #[test]
    fn isometries_are_isometric() {
        let mut rng = rng_from_seed(5);
        for (m, r) in [(4, 4), (8, 3), (2, 1)] {
            assert!(linalg::isometry_defect(&random_isometry(&mut rng, m, r)) < 1e-12);
        }
    }

    #[test]
    fn derived_seeds_differ() {
        let s: std::collections::HashSet<u64> = (0..100).map(|k| derive_seed(7, k)).collect();
        assert_eq!(s.len(), 100);
    }
}
