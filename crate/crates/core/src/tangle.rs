//! Tangle, concurrence and entanglement of formation.
//!
//! The pure-state tangle across a cut is the linear entropy of either
//! marginal and works in any dimension. For two-qubit mixed states the tangle
//! is the square of the Wootters concurrence `max(0, λ1 - λ2 - λ3 - λ4)`,
//! with `λ_i` the decreasing eigenvalues of `sqrt(sqrt(ρ) ρ̃ sqrt(ρ))`.

use crate::entropy::binary_entropy;
use crate::qcore::{linalg, Bipartition, DensityOperator, IndexSplit, PureState};
use crate::{CMatrix, Error, Result, C64};

/// Eigenvalues of ρ at or below this are dropped from its square-root factor.
const FACTOR_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TangleValue {
    pub value: f64,
    pub cut: Bipartition,
}

impl TangleValue {
    fn new(value: f64, cut: Bipartition) -> Self {
        Self { value: if (-1e-9..0.0).contains(&value) { 0.0 } else { value }, cut }
    }
}

/// Purity of the reduced state on `side`, computed on whichever side of the
/// cut is smaller (both marginals share their nonzero spectrum).
pub fn marginal_purity(amps: &[C64], dims: &[usize], cut: &Bipartition) -> f64 {
    let da: usize = cut.side_a().iter().map(|&k| dims[k]).product();
    let db: usize = cut.side_b().iter().map(|&k| dims[k]).product();
    let side = if da <= db { cut.side_a() } else { cut.side_b() };
    let split = IndexSplit::new(dims, side);
    linalg::hermitian_square_trace(&split.reduce_amplitudes(amps))
}

/// `τ(ψ) = 2 (1 - tr ρ_A²)` across `cut`.
pub fn pure_tangle(psi: &PureState, cut: &Bipartition) -> Result<TangleValue> {
    cut.check_parties(psi.parties())?;
    let p = marginal_purity(psi.amplitudes().as_slice(), psi.dims(), cut);
    Ok(TangleValue::new(2.0 * (1.0 - p), cut.clone()))
}

fn check_two_qubit(rho: &DensityOperator) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::dims(format!("two-qubit state required, got dims {:?}", rho.dims())));
    }
    Ok(())
}

/// `σ_y ⊗ σ_y` in the standard basis.
fn sigma_yy() -> CMatrix {
    let one = C64::new(1.0, 0.0);
    let mut y = CMatrix::zeros(4, 4);
    y[(0, 3)] = -one;
    y[(1, 2)] = one;
    y[(2, 1)] = one;
    y[(3, 0)] = -one;
    y
}

/// `ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)`.
pub fn spin_flip(rho: &DensityOperator) -> Result<DensityOperator> {
    check_two_qubit(rho)?;
    let y = sigma_yy();
    let flipped = &y * rho.matrix().conjugate() * &y;
    Ok(DensityOperator::from_parts_unchecked(vec![2, 2], flipped))
}

/// The four `λ_i`, descending.
///
/// Computed as the singular values of `Xᵀ (σ_y ⊗ σ_y) X` where `ρ = X X†`
/// is the eigen-factorization restricted to the support of `ρ`. Those are
/// the eigenvalues of `sqrt(sqrt(ρ) ρ̃ sqrt(ρ))` without forming either
/// square root, so zero `λ`s come out at machine precision rather than at
/// the square root of it.
pub fn wootters_lambdas(rho: &DensityOperator) -> Result<[f64; 4]> {
    check_two_qubit(rho)?;
    let mut eig = linalg::eigh(rho.matrix());
    linalg::clip_spectrum(&mut eig.values)?;
    let support: Vec<usize> = (0..4).filter(|&k| eig.values[k] > FACTOR_CUTOFF).collect();
    let mut lambdas = [0.0; 4];
    if support.is_empty() {
        return Ok(lambdas);
    }
    let x = CMatrix::from_fn(4, support.len(), |i, j| {
        let k = support[j];
        eig.vectors[(i, k)] * eig.values[k].sqrt()
    });
    let tau = x.transpose() * sigma_yy() * &x;
    for (slot, s) in lambdas.iter_mut().zip(linalg::singular_values(&tau)) {
        *slot = s;
    }
    Ok(lambdas)
}

/// Reference route: eigenvalues of `sqrt(ρ) ρ̃ sqrt(ρ)` via two PSD square roots.
pub fn wootters_lambdas_via_sqrt(rho: &DensityOperator) -> Result<[f64; 4]> {
    check_two_qubit(rho)?;
    let root = linalg::psd_sqrt(rho.matrix())?;
    let inner = &root * spin_flip(rho)?.matrix() * &root;
    let mut values = linalg::eigvalsh(&inner);
    linalg::clip_spectrum(&mut values)?;
    let mut lambdas = [0.0; 4];
    for (slot, v) in lambdas.iter_mut().zip(values) {
        *slot = v.sqrt();
    }
    Ok(lambdas)
}

/// `max(0, λ1 - λ2 - λ3 - λ4)`.
pub fn concurrence(rho: &DensityOperator) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Closed-form two-qubit tangle, the square of the concurrence.
pub fn two_qubit_tangle(rho: &DensityOperator) -> Result<TangleValue> {
    let c = concurrence(rho)?;
    Ok(TangleValue::new(c * c, Bipartition::new(&[0], &[1], 2)?))
}

/// Entanglement of formation `h((1 + sqrt(1 - C²)) / 2)` in bits.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0)
}

pub fn eof_two_qubit(rho: &DensityOperator) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::random::{random_unitary, rng_from_seed};
    use crate::qcore::{ginibre_random_density, haar_random_pure};
    use crate::states::{basis_state, bell, ghz, w_state, BellKind};
    use approx::assert_abs_diff_eq;

    fn cut_ab() -> Bipartition {
        Bipartition::new(&[0], &[1], 2).unwrap()
    }

    fn singlet() -> DensityOperator {
        bell(BellKind::PsiMinus).density()
    }

    fn w_pair() -> DensityOperator {
        w_state(3).unwrap().reduce(&[0, 1]).unwrap()
    }

    #[test]
    fn pure_tangle_examples() {
        assert_abs_diff_eq!(pure_tangle(&bell(BellKind::PsiMinus), &cut_ab()).unwrap().value, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            pure_tangle(&basis_state(&[2, 2], &[0, 0]).unwrap(), &cut_ab()).unwrap().value,
            0.0,
            epsilon = 1e-12
        );
        let a_bc = Bipartition::new(&[0], &[1, 2], 3).unwrap();
        assert_abs_diff_eq!(pure_tangle(&ghz(3).unwrap(), &a_bc).unwrap().value, 1.0, epsilon = 1e-12);
        assert!(pure_tangle(&ghz(3).unwrap(), &cut_ab()).is_err());
    }

    #[test]
    fn pure_tangle_is_side_symmetric() {
        for seed in 0..20 {
            let psi = haar_random_pure(&[2, 3, 2], seed).unwrap();
            let cut = Bipartition::new(&[1], &[0, 2], 3).unwrap();
            let a = pure_tangle(&psi, &cut).unwrap().value;
            let b = pure_tangle(&psi, &cut.swapped()).unwrap().value;
            assert_abs_diff_eq!(a, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn spin_flip_examples() {
        let s = singlet();
        assert!(linalg::max_abs_diff(spin_flip(&s).unwrap().matrix(), s.matrix()) < 1e-15);
        let zero = basis_state(&[2, 2], &[0, 0]).unwrap().density();
        let one = basis_state(&[2, 2], &[1, 1]).unwrap().density();
        assert!(linalg::max_abs_diff(spin_flip(&zero).unwrap().matrix(), one.matrix()) < 1e-15);
        for seed in 0..10 {
            let rho = ginibre_random_density(&[2, 2], 3, seed).unwrap();
            let twice = spin_flip(&spin_flip(&rho).unwrap()).unwrap();
            assert!(linalg::max_abs_diff(twice.matrix(), rho.matrix()) < 1e-15);
        }
        assert!(spin_flip(&DensityOperator::maximally_mixed(vec![4]).unwrap()).is_err());
    }

    #[test]
    fn lambda_examples() {
        let l = wootters_lambdas(&singlet()).unwrap();
        assert_abs_diff_eq!(l[0], 1.0, epsilon = 1e-12);
        assert!(l[1..].iter().all(|&x| x.abs() < 1e-12));
        let q = wootters_lambdas(&DensityOperator::maximally_mixed(vec![2, 2]).unwrap()).unwrap();
        assert!(q.iter().all(|&x| (x - 0.25).abs() < 1e-12));
        let z = wootters_lambdas(&basis_state(&[2, 2], &[0, 0]).unwrap().density()).unwrap();
        assert!(z.iter().all(|&x| x.abs() < 1e-12));
    }

    #[test]
    fn lambda_routes_agree() {
        for seed in 0..100 {
            let rho = ginibre_random_density(&[2, 2], 4, seed).unwrap();
            let a = wootters_lambdas(&rho).unwrap();
            let b = wootters_lambdas_via_sqrt(&rho).unwrap();
            for (x, y) in a.iter().zip(b.iter()) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn tangle_examples() {
        assert_abs_diff_eq!(two_qubit_tangle(&singlet()).unwrap().value, 1.0, epsilon = 1e-12);
        let quarter = DensityOperator::maximally_mixed(vec![2, 2]).unwrap();
        assert_eq!(two_qubit_tangle(&quarter).unwrap().value, 0.0);
        assert_abs_diff_eq!(two_qubit_tangle(&w_pair()).unwrap().value, 4.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn concurrence_examples() {
        assert_abs_diff_eq!(concurrence(&singlet()).unwrap(), 1.0, epsilon = 1e-12);
        let sep = DensityOperator::mixture(&[
            (0.5, basis_state(&[2, 2], &[0, 0]).unwrap()),
            (0.5, basis_state(&[2, 2], &[1, 1]).unwrap()),
        ])
        .unwrap();
        assert_abs_diff_eq!(concurrence(&sep).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(concurrence(&w_pair()).unwrap(), 2.0 / 3.0, epsilon = 1e-12);
        for seed in 0..20 {
            let rho = ginibre_random_density(&[2, 2], 2, seed).unwrap();
            let c = concurrence(&rho).unwrap();
            assert_abs_diff_eq!(c * c, two_qubit_tangle(&rho).unwrap().value, epsilon = 1e-9);
        }
    }

    #[test]
    fn eof_examples() {
        assert_abs_diff_eq!(eof_two_qubit(&singlet()).unwrap(), 1.0, epsilon = 1e-12);
        let sep = basis_state(&[2, 2], &[0, 1]).unwrap().density();
        assert_abs_diff_eq!(eof_two_qubit(&sep).unwrap(), 0.0, epsilon = 1e-12);
        // h((1 + √5/3)/2) with p = (3 + √5)/6
        let p: f64 = (3.0 + 5f64.sqrt()) / 6.0;
        let oracle = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert_abs_diff_eq!(oracle, 0.55005, epsilon = 1e-4);
        assert_abs_diff_eq!(eof_two_qubit(&w_pair()).unwrap(), oracle, epsilon = 1e-10);
    }

    #[test]
    fn eof_monotone_in_concurrence() {
        let grid: Vec<f64> = (0..=100).map(|k| eof_from_concurrence(k as f64 / 100.0)).collect();
        for w in grid.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn analytic_tangle_matches_pure_tangle() {
        for seed in 0..100 {
            let psi = haar_random_pure(&[2, 2], seed).unwrap();
            let a = two_qubit_tangle(&psi.density()).unwrap().value;
            let b = pure_tangle(&psi, &cut_ab()).unwrap().value;
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn local_unitary_invariance() {
        let mut rng = rng_from_seed(3);
        for seed in 0..100 {
            let rho = ginibre_random_density(&[2, 2], 1 + seed as usize % 4, seed).unwrap();
            let u = linalg::kron(&random_unitary(&mut rng, 2), &random_unitary(&mut rng, 2));
            let rotated = DensityOperator::new(vec![2, 2], &u * rho.matrix() * u.adjoint()).unwrap();
            let a = two_qubit_tangle(&rho).unwrap().value;
            let b = two_qubit_tangle(&rotated).unwrap().value;
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn discarding_does_not_increase_tangle() {
        let cut = Bipartition::new(&[0], &[1, 2], 3).unwrap();
        for seed in 0..100 {
            let psi = haar_random_pure(&[2, 2, 2], seed).unwrap();
            let whole = pure_tangle(&psi, &cut).unwrap().value;
            let pair = two_qubit_tangle(&psi.reduce(&[0, 1]).unwrap()).unwrap().value;
            assert!(whole >= pair - 1e-8);
        }
    }

    #[test]
    fn wrong_dims_rejected() {
        let rho = DensityOperator::maximally_mixed(vec![2, 3]).unwrap();
        assert!(wootters_lambdas(&rho).is_err());
        assert!(two_qubit_tangle(&rho).is_err());
        assert!(concurrence(&rho).is_err());
        assert!(eof_two_qubit(&rho).is_err());
    }
}
