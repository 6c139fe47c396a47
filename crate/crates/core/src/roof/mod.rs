//! Convex-roof minimization and its dual maximization over pure-state
//! decompositions of a mixed state.
//!
//! Every cardinality-`m` decomposition of a rank-`r` state `ρ = Σ_j λ_j
//! |v_j><v_j|` is `√p_i |ψ_i> = Σ_j U_ij √λ_j |v_j>` for an `m x r` matrix
//! `U` with orthonormal columns. The optimizer searches that set from
//! several starts (the eigen-ensemble plus seeded random isometries) and
//! returns the best decomposition it reached. Minima are therefore upper
//! bounds on the true roof and maxima lower bounds on the assisted value;
//! only the two-qubit tangle has an exact closed form to compare against.

mod measure;
mod optimizer;

use rayon::prelude::*;
use serde::Serialize;

use crate::qcore::random::{derive_seed, random_isometry, rng_from_seed};
use crate::qcore::{linalg, Bipartition, DensityOperator, PureState};
use crate::{CMatrix, Error, Result, C64};

pub use measure::{CutContext, MarginalEntropy, PureMeasure};
use optimizer::{refine, SearchParams};

/// Eigenvalues at or below this are outside the support of a state.
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Largest automatic ensemble size.
pub const MAX_AUTO_CARDINALITY: usize = 8;

/// Probability-weighted pure states sharing one set of dims.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    dims: Vec<usize>,
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let dims = members.first().ok_or_else(|| Error::arg("empty ensemble"))?.1.dims().to_vec();
        if members.iter().any(|(p, s)| !(*p > 0.0 && *p <= 1.0 + 1e-12) || s.dims() != dims.as_slice()) {
            return Err(Error::arg("ensemble probabilities must lie in (0, 1] and dims must agree"));
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::arg(format!("ensemble probabilities sum to {total}")));
        }
        Ok(Self { dims, members })
    }

    /// Members `√p_i |ψ_i>` given as matrix columns; near-empty columns are dropped.
    fn from_columns(dims: &[usize], columns: &CMatrix) -> Result<Self> {
        let mut members = Vec::new();
        for col in columns.column_iter() {
            let p = col.norm_squared();
            if p > 1e-15 {
                members.push((p, PureState::normalized(dims.to_vec(), col.into_owned())?));
            }
        }
        // rounding in Σ p_i is ~1e-16 per member; keep the stored weights exact sums
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        for (p, _) in members.iter_mut() {
            *p /= total;
        }
        Self::new(members)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `Σ p_i |ψ_i><ψ_i|`.
    pub fn density(&self) -> DensityOperator {
        DensityOperator::mixture(&self.members).expect("ensembles are nonempty with valid weights")
    }
}

/// Optimizer controls. `cardinality: None` picks `max(r, min(r², 8))` for a
/// rank-`r` target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoofConfig {
    pub cardinality: Option<usize>,
    pub restarts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for RoofConfig {
    fn default() -> Self {
        Self { cardinality: None, restarts: 16, max_iterations: 2000, tolerance: 1e-6, seed: 0 }
    }
}

impl RoofConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    /// Four times the restarts and twice the cardinality of `self`, for
    /// confirming a surprising result.
    pub fn refined(&self, rank: usize) -> Self {
        Self {
            cardinality: Some(2 * self.cardinality_for(rank)),
            restarts: 4 * self.restarts,
            seed: derive_seed(self.seed, 0x5EED),
            ..self.clone()
        }
    }

    pub fn cardinality_for(&self, rank: usize) -> usize {
        self.cardinality.unwrap_or_else(|| rank.max((rank * rank).min(MAX_AUTO_CARDINALITY)))
    }

    fn validate(&self, rank: usize) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::arg("restarts must be at least 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::arg("tolerance must be positive"));
        }
        if self.cardinality_for(rank) < rank {
            return Err(Error::arg(format!(
                "cardinality {} is below the rank {rank} of the state",
                self.cardinality_for(rank)
            )));
        }
        Ok(())
    }
}

/// Outcome of a roof search.
#[derive(Debug, Clone)]
pub struct RoofResult {
    /// Average measure of `witness`.
    pub value: f64,
    pub witness: Ensemble,
    /// True when every restart stopped on the step-size criterion rather
    /// than the iteration cap.
    pub converged: bool,
}

/// Support of a state: `ρ = Σ_j λ_j |v_j><v_j|` with `λ_j > SUPPORT_CUTOFF`, descending.
#[derive(Debug, Clone)]
pub struct Factor {
    pub dims: Vec<usize>,
    pub values: Vec<f64>,
    /// `d x r`, column `j` is `|v_j>`.
    pub vectors: CMatrix,
}

impl Factor {
    pub fn of(rho: &DensityOperator) -> Result<Self> {
        let mut eig = linalg::eigh(rho.matrix());
        linalg::clip_spectrum(&mut eig.values)?;
        let keep: Vec<usize> = (0..eig.values.len()).filter(|&k| eig.values[k] > SUPPORT_CUTOFF).collect();
        if keep.is_empty() {
            return Err(Error::state("state has empty support"));
        }
        let vectors = CMatrix::from_fn(rho.dim(), keep.len(), |i, j| eig.vectors[(i, keep[j])]);
        Ok(Self { dims: rho.dims().to_vec(), values: keep.iter().map(|&k| eig.values[k]).collect(), vectors })
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// `W` with columns `√λ_j |v_j>`.
    pub fn weighted(&self) -> CMatrix {
        let mut w = self.vectors.clone();
        for (j, &l) in self.values.iter().enumerate() {
            w.column_mut(j).scale_mut(l.sqrt());
        }
        w
    }

    /// Member columns `W Uᵀ` for an `m x r` isometry `U`.
    pub fn columns(&self, mix: &CMatrix) -> CMatrix {
        self.weighted() * mix.transpose()
    }

    /// Recover the isometry `U_ij = √p_i <v_j|ψ_i> / √λ_j` behind an ensemble of this state.
    pub fn isometry_of(&self, ensemble: &Ensemble) -> CMatrix {
        let r = self.rank();
        CMatrix::from_fn(ensemble.len(), r, |i, j| {
            let (p, psi) = &ensemble.members()[i];
            self.vectors.column(j).dotc(psi.amplitudes()) * (p / self.values[j]).sqrt()
        })
    }
}

/// Ensemble `√p_i |ψ_i> = Σ_j mix_ij √λ_j |v_j>` over the eigen-support of `rho`.
pub fn ensemble_from_isometry(rho: &DensityOperator, mix: &CMatrix) -> Result<Ensemble> {
    let factor = Factor::of(rho)?;
    if mix.ncols() != factor.rank() {
        return Err(Error::dims(format!("mix has {} columns, state rank is {}", mix.ncols(), factor.rank())));
    }
    let defect = linalg::isometry_defect(mix);
    if defect > 1e-9 {
        return Err(Error::arg(format!("mix columns are not orthonormal (defect {defect:e})")));
    }
    Ensemble::from_columns(rho.dims(), &factor.columns(mix))
}

/// `Σ p_i μ(ψ_i)`.
pub fn average_measure(e: &Ensemble, mu: &dyn PureMeasure, cut: &Bipartition) -> Result<f64> {
    let ctx = CutContext::new(e.dims(), cut)?;
    Ok(e.members().iter().map(|(p, psi)| p * mu.evaluate_amplitudes(psi.amplitudes().as_slice(), &ctx)).sum())
}

/// `‖v‖² μ(v / ‖v‖)`, zero for a vanishing column.
fn weighted_cost(v: &[C64], mu: &dyn PureMeasure, ctx: &CutContext) -> f64 {
    let n2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if n2 < 1e-300 {
        return 0.0;
    }
    let inv = 1.0 / n2.sqrt();
    let unit: Vec<C64> = v.iter().map(|z| z * inv).collect();
    n2 * mu.evaluate_amplitudes(&unit, ctx)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sense {
    Minimize,
    Maximize,
}

fn optimize(
    rho: &DensityOperator,
    mu: &dyn PureMeasure,
    cut: &Bipartition,
    cfg: &RoofConfig,
    sense: Sense,
    extra_starts: &[CMatrix],
) -> Result<RoofResult> {
    let ctx = CutContext::new(rho.dims(), cut)?;
    let factor = Factor::of(rho)?;
    let r = factor.rank();
    cfg.validate(r)?;
    let m = cfg.cardinality_for(r);
    for s in extra_starts {
        if s.ncols() != r || linalg::isometry_defect(s) > 1e-9 {
            return Err(Error::arg("starting isometry does not match the state"));
        }
    }

    let sign = if sense == Sense::Minimize { 1.0 } else { -1.0 };
    let cost = |v: &[C64]| sign * weighted_cost(v, mu, &ctx);
    let params = SearchParams::new(cfg.max_iterations, cfg.tolerance);

    // start 0 is the eigen-ensemble, padded with empty members
    let mut starts: Vec<CMatrix> = Vec::with_capacity(cfg.restarts + extra_starts.len());
    starts.push(CMatrix::identity(m, r));
    for k in 1..cfg.restarts {
        let mut rng = rng_from_seed(derive_seed(cfg.seed, k as u64));
        starts.push(random_isometry(&mut rng, m, r));
    }
    starts.extend(extra_starts.iter().cloned());

    let outcomes: Vec<_> = starts.into_par_iter().map(|mix| refine(factor.columns(&mix), &cost, &params)).collect();
    let converged = outcomes.iter().all(|o| o.converged);
    let best = outcomes
        .into_iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.value.total_cmp(&b.value).then(ia.cmp(ib)))
        .map(|(_, o)| o)
        .expect("at least one start");

    let witness = Ensemble::from_columns(rho.dims(), &best.columns)?;
    let value = average_measure(&witness, mu, cut)?;
    Ok(RoofResult { value: value.max(0.0), witness, converged })
}

/// Smallest average of `mu` found over decompositions of `rho` (an upper
/// bound on the convex roof).
pub fn roof_minimize(
    rho: &DensityOperator,
    mu: &dyn PureMeasure,
    cut: &Bipartition,
    cfg: &RoofConfig,
) -> Result<RoofResult> {
    optimize(rho, mu, cut, cfg, Sense::Minimize, &[])
}

/// [`roof_minimize`] with additional `m x r` starting isometries.
pub fn roof_minimize_from(
    rho: &DensityOperator,
    mu: &dyn PureMeasure,
    cut: &Bipartition,
    cfg: &RoofConfig,
    starts: &[CMatrix],
) -> Result<RoofResult> {
    optimize(rho, mu, cut, cfg, Sense::Minimize, starts)
}

/// Largest average of `mu` found over decompositions of `rho` (a lower
/// bound on the assisted value).
pub fn roof_maximize(
    rho: &DensityOperator,
    mu: &dyn PureMeasure,
    cut: &Bipartition,
    cfg: &RoofConfig,
) -> Result<RoofResult> {
    optimize(rho, mu, cut, cfg, Sense::Maximize, &[])
}

/// Lower bound on the entanglement of assistance: the roof maximum of the
/// entanglement entropy.
pub fn assisted_entanglement(rho: &DensityOperator, cut: &Bipartition, cfg: &RoofConfig) -> Result<RoofResult> {
    roof_maximize(rho, &MarginalEntropy::ENTANGLEMENT_ENTROPY, cut, cfg)
}

/// Lower bound on the tangle of assistance.
pub fn tangle_of_assistance(rho: &DensityOperator, cut: &Bipartition, cfg: &RoofConfig) -> Result<RoofResult> {
    roof_maximize(rho, &MarginalEntropy::TANGLE, cut, cfg)
}

/// Upper bound on the mixed-state tangle (exact for pure inputs).
pub fn roof_tangle(rho: &DensityOperator, cut: &Bipartition, cfg: &RoofConfig) -> Result<RoofResult> {
    roof_minimize(rho, &MarginalEntropy::TANGLE, cut, cfg)
}

/// Upper bound on the entanglement of formation.
pub fn roof_formation(rho: &DensityOperator, cut: &Bipartition, cfg: &RoofConfig) -> Result<RoofResult> {
    roof_minimize(rho, &MarginalEntropy::ENTANGLEMENT_ENTROPY, cut, cfg)
}

/// `|Σ_i p_i |ψ_i><ψ_i| − ρ|_max`.
pub fn reconstruction_residue(e: &Ensemble, rho: &DensityOperator) -> f64 {
    linalg::max_abs_diff(e.density().matrix(), rho.matrix())
}
