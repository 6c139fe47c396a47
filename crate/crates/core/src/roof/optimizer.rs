//! Derivative-free local search over ensemble decompositions.
//!
//! A decomposition of `ρ = Φ Φ†` is stored as the matrix `Φ` whose columns are
//! the unnormalized members `√p_i |ψ_i>`. Any `Φ U` with `U` unitary is again
//! a decomposition, so the search moves by two-column Givens rotations
//!
//! ```text
//! ψ_i' =  cos θ ψ_i − e^{iφ} sin θ ψ_k
//! ψ_k' = e^{−iφ} sin θ ψ_i + cos θ ψ_k
//! ```
//!
//! which are exponentials of anti-Hermitian generators supported on two
//! members. The objective is a sum of per-column costs, so each trial only
//! re-evaluates the two touched columns.

use std::f64::consts::FRAC_PI_2;

use crate::{CMatrix, C64};

const INITIAL_STEP: f64 = 0.4;
const MAX_EXPANSIONS: usize = 6;

#[derive(Debug, Clone, Copy)]
pub(crate) struct SearchParams {
    pub max_sweeps: usize,
    /// A sweep that gains less than this halves the step.
    pub tolerance: f64,
    pub min_step: f64,
}

impl SearchParams {
    pub fn new(max_sweeps: usize, tolerance: f64) -> Self {
        Self { max_sweeps, tolerance, min_step: (tolerance.sqrt() * 0.1).max(1e-8) }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SearchOutcome {
    pub columns: CMatrix,
    /// Sum of column costs (in the minimized orientation).
    pub value: f64,
    pub converged: bool,
}

fn rotate(a: &[C64], b: &[C64], theta: f64, phase: f64) -> (Vec<C64>, Vec<C64>) {
    let (s, c) = theta.sin_cos();
    let e = C64::from_polar(1.0, phase);
    let ea = e * s;
    let eb = e.conj() * s;
    let new_a = a.iter().zip(b).map(|(&x, &y)| x * c - ea * y).collect();
    let new_b = a.iter().zip(b).map(|(&x, &y)| eb * x + y * c).collect();
    (new_a, new_b)
}

/// Minimize `Σ_i cost(column_i)` over `columns · U`, `U` unitary.
pub(crate) fn refine<F>(start: CMatrix, cost: &F, params: &SearchParams) -> SearchOutcome
where
    F: Fn(&[C64]) -> f64,
{
    let mut phi = start;
    let m = phi.ncols();
    let mut costs: Vec<f64> = (0..m).map(|i| cost(phi.column(i).as_slice())).collect();
    if m < 2 {
        return SearchOutcome { value: costs.iter().sum(), columns: phi, converged: true };
    }

    let mut step = INITIAL_STEP;
    let mut converged = false;
    for _sweep in 0..params.max_sweeps {
        let mut gain = 0.0;
        for i in 0..m {
            for k in (i + 1)..m {
                gain += improve_pair(&mut phi, &mut costs, i, k, step, cost);
            }
        }
        if gain < params.tolerance {
            step *= 0.5;
            if step < params.min_step {
                converged = true;
                break;
            }
        }
    }
    SearchOutcome { value: costs.iter().sum(), columns: phi, converged }
}

/// Pattern search on the (θ cos φ, θ sin φ) plane of one column pair, with
/// step expansion along an improving direction. Returns the gain.
fn improve_pair<F>(phi: &mut CMatrix, costs: &mut [f64], i: usize, k: usize, step: f64, cost: &F) -> f64
where
    F: Fn(&[C64]) -> f64,
{
    let before = costs[i] + costs[k];
    let mut best = before;
    // (theta, phase, new column i, new column k, cost i, cost k)
    type Move = (f64, f64, Vec<C64>, Vec<C64>, f64, f64);
    let mut best_move: Option<Move> = None;
    {
        let a = phi.column(i);
        let b = phi.column(k);
        if a.norm_squared() + b.norm_squared() < 1e-300 {
            return 0.0;
        }
        for (theta, phase) in [(step, 0.0), (-step, 0.0), (step, FRAC_PI_2), (-step, FRAC_PI_2)] {
            let (na, nb) = rotate(a.as_slice(), b.as_slice(), theta, phase);
            let (ca, cb) = (cost(&na), cost(&nb));
            if ca + cb < best - 1e-15 {
                best = ca + cb;
                best_move = Some((theta, phase, na, nb, ca, cb));
            }
        }
    }
    let Some((theta, phase, mut na, mut nb, mut ca, mut cb)) = best_move else {
        return 0.0;
    };
    // keep going in the same direction while it pays
    for _ in 0..MAX_EXPANSIONS {
        let (ta, tb) = rotate(&na, &nb, theta, phase);
        let (xa, xb) = (cost(&ta), cost(&tb));
        if xa + xb < ca + cb - 1e-15 {
            na = ta;
            nb = tb;
            ca = xa;
            cb = xb;
        } else {
            break;
        }
    }
    phi.column_mut(i).copy_from_slice(&na);
    phi.column_mut(k).copy_from_slice(&nb);
    costs[i] = ca;
    costs[k] = cb;
    before - (ca + cb)
}
