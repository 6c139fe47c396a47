//! Monogamy and polygamy of the tangle and of the entanglement entropy.
//!
//! A [`MonogamyReport`] compares the entanglement of a focus subsystem with
//! the rest against a sum of pairwise terms. Terms computed by the roof
//! optimizer are one-sided bounds, so each report records whether its
//! verdict follows from the bound directions ([`Verdict::Sound`]) or could be
//! an artifact of optimizer slack ([`Verdict::Inconclusive`]).

use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::von_neumann;
use crate::qcore::random::derive_seed;
use crate::qcore::{ginibre_random_density, haar_random_pure, Bipartition, DensityOperator, PureState, State};
use crate::roof::{assisted_entanglement, roof_tangle, tangle_of_assistance, RoofConfig};
use crate::states::antisymmetric_triple;
use crate::tangle::{pure_tangle, two_qubit_tangle};
use crate::{Error, Result};

/// Tolerance on "satisfied" when every term is exact.
pub const ANALYTIC_TOLERANCE: f64 = 1e-8;
/// Tolerance on "satisfied" when a roof bound participates.
pub const ROOF_TOLERANCE: f64 = 1e-4;
/// Residuals below minus this are reported by [`violation_search`].
pub const VIOLATION_THRESHOLD: f64 = 1e-3;

/// How a term was computed and which way it may be off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimate {
    Analytic,
    /// Roof minimum found by the optimizer; at least the true value.
    RoofUpper,
    /// Roof maximum found by the optimizer; at most the true value.
    RoofLower,
}

impl Estimate {
    /// `analytic` or `roof-bound`.
    pub fn tag(self) -> &'static str {
        match self {
            Estimate::Analytic => "analytic",
            _ => "roof-bound",
        }
    }

    /// `exact`, `upper` or `lower`.
    pub fn direction(self) -> &'static str {
        match self {
            Estimate::Analytic => "exact",
            Estimate::RoofUpper => "upper",
            Estimate::RoofLower => "lower",
        }
    }

    fn is_exact(self) -> bool {
        self == Estimate::Analytic
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `lhs >= Σ rhs`.
    Monogamy,
    /// `lhs <= Σ rhs`.
    Polygamy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sound,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonogamyReport {
    pub orientation: Orientation,
    pub measure: String,
    pub focus: usize,
    pub lhs: f64,
    pub lhs_method: Estimate,
    /// Partner subsystem of each rhs term.
    pub partners: Vec<usize>,
    pub rhs_terms: Vec<f64>,
    pub rhs_methods: Vec<Estimate>,
    /// `lhs − Σ rhs_terms` in either orientation.
    pub residual: f64,
    pub tolerance: f64,
    pub satisfied: bool,
    pub verdict: Verdict,
    /// Set when the roof terms were recomputed with a refined configuration.
    pub refined: bool,
}

impl MonogamyReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        orientation: Orientation,
        measure: &str,
        focus: usize,
        lhs: f64,
        lhs_method: Estimate,
        partners: Vec<usize>,
        rhs_terms: Vec<f64>,
        rhs_methods: Vec<Estimate>,
    ) -> Self {
        let residual = lhs - rhs_terms.iter().sum::<f64>();
        let exact = lhs_method.is_exact() && rhs_methods.iter().all(|m| m.is_exact());
        let tolerance = if exact { ANALYTIC_TOLERANCE } else { ROOF_TOLERANCE };
        let satisfied = match orientation {
            Orientation::Monogamy => residual >= -tolerance,
            Orientation::Polygamy => residual <= tolerance,
        };
        // the computed residual errs low when lhs is a lower bound and the
        // rhs are upper bounds, and high in the opposite case
        let errs_low =
            !matches!(lhs_method, Estimate::RoofUpper) && rhs_methods.iter().all(|m| *m != Estimate::RoofLower);
        let errs_high =
            !matches!(lhs_method, Estimate::RoofLower) && rhs_methods.iter().all(|m| *m != Estimate::RoofUpper);
        // a claim "residual ≥ x" survives if the residual errs low, "≤ x" if it errs high
        let claims_lower_bound =
            matches!((orientation, satisfied), (Orientation::Monogamy, true) | (Orientation::Polygamy, false));
        let sound = if claims_lower_bound { errs_low } else { errs_high };
        Self {
            orientation,
            measure: measure.to_string(),
            focus,
            lhs,
            lhs_method,
            partners,
            rhs_terms,
            rhs_methods,
            residual,
            tolerance,
            satisfied,
            verdict: if sound { Verdict::Sound } else { Verdict::Inconclusive },
            refined: false,
        }
    }

    pub fn rhs_sum(&self) -> f64 {
        self.rhs_terms.iter().sum()
    }

    /// `lhs=<tag>;rhs=<tag>,<tag>,…`
    pub fn method_tags(&self) -> String {
        let rhs: Vec<&str> = self.rhs_methods.iter().map(|m| m.tag()).collect();
        format!("lhs={};rhs={}", self.lhs_method.tag(), rhs.join(","))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

impl fmt::Display for MonogamyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.orientation {
            Orientation::Monogamy => ">=",
            Orientation::Polygamy => "<=",
        };
        writeln!(f, "{} {:?} focus {}", self.measure, self.orientation, self.focus)?;
        writeln!(f, "  lhs        {:.12} ({})", self.lhs, self.lhs_method.direction())?;
        for ((p, v), m) in self.partners.iter().zip(&self.rhs_terms).zip(&self.rhs_methods) {
            writeln!(f, "  rhs[{}]     {:.12} ({})", p, v, m.direction())?;
        }
        writeln!(f, "  residual   {:.12}", self.residual)?;
        write!(
            f,
            "  lhs {op} sum: {} at tolerance {:e} ({:?})",
            if self.satisfied { "satisfied" } else { "violated" },
            self.tolerance,
            self.verdict
        )
    }
}

fn check_three_qubits(dims: &[usize]) -> Result<()> {
    if dims != [2, 2, 2] {
        return Err(Error::dims(format!("three-qubit state required, got dims {dims:?}")));
    }
    Ok(())
}

fn check_qubits(dims: &[usize]) -> Result<()> {
    if dims.len() < 3 || dims.iter().any(|&d| d != 2) {
        return Err(Error::dims(format!("the CKW form needs at least three qubits, got dims {dims:?}")));
    }
    Ok(())
}

fn check_focus(focus: usize, parties: usize) -> Result<()> {
    if focus >= parties {
        return Err(Error::arg(format!("focus {focus} out of range for {parties} parties")));
    }
    Ok(())
}

fn partners(focus: usize, parties: usize) -> Vec<usize> {
    (0..parties).filter(|&k| k != focus).collect()
}

fn pair(a: usize, b: usize) -> [usize; 2] {
    [a.min(b), a.max(b)]
}

fn ab() -> Bipartition {
    Bipartition::new(&[0], &[1], 2).expect("valid cut")
}

fn focus_tangle(psi: &PureState, focus: usize) -> Result<f64> {
    Ok(pure_tangle(psi, &Bipartition::split(&[focus], psi.parties())?)?.value)
}

/// Mean of the three one-versus-rest tangles of a three-qubit pure state.
pub fn tau1(psi: &PureState) -> Result<f64> {
    check_three_qubits(psi.dims())?;
    Ok((0..3).map(|k| focus_tangle(psi, k)).sum::<Result<f64>>()? / 3.0)
}

/// Mean of the three pairwise two-qubit tangles of a three-qubit pure state.
pub fn tau2(psi: &PureState) -> Result<f64> {
    check_three_qubits(psi.dims())?;
    let mut total = 0.0;
    for keep in [[0, 1], [1, 2], [0, 2]] {
        total += two_qubit_tangle(&psi.reduce(&keep)?)?.value;
    }
    Ok(total / 3.0)
}

fn pairwise_tangles(rho: &DensityOperator, focus: usize) -> Result<Vec<f64>> {
    partners(focus, rho.parties())
        .into_iter()
        .map(|j| Ok(two_qubit_tangle(&rho.partial_trace(&pair(focus, j))?)?.value))
        .collect()
}

fn pure_pairwise_tangles(psi: &PureState, focus: usize) -> Result<Vec<f64>> {
    partners(focus, psi.parties())
        .into_iter()
        .map(|j| Ok(two_qubit_tangle(&psi.reduce(&pair(focus, j))?)?.value))
        .collect()
}

fn analytic_report(focus: usize, parties: usize, lhs: f64, lhs_method: Estimate, rhs: Vec<f64>) -> MonogamyReport {
    let n = rhs.len();
    MonogamyReport::new(
        Orientation::Monogamy,
        "tangle",
        focus,
        lhs,
        lhs_method,
        partners(focus, parties),
        rhs,
        vec![Estimate::Analytic; n],
    )
}

/// `τ_focus|rest ≥ Σ_j τ_focus,j` for a three-qubit pure state.
pub fn ckw_check_pure(psi: &PureState, focus: usize) -> Result<MonogamyReport> {
    check_three_qubits(psi.dims())?;
    check_focus(focus, 3)?;
    let lhs = focus_tangle(psi, focus)?;
    Ok(analytic_report(focus, 3, lhs, Estimate::Analytic, pure_pairwise_tangles(psi, focus)?))
}

/// Three-qubit mixed version; the lhs is a roof upper bound.
pub fn ckw_check_mixed(rho: &DensityOperator, focus: usize, cfg: &RoofConfig) -> Result<MonogamyReport> {
    check_three_qubits(rho.dims())?;
    check_focus(focus, 3)?;
    let lhs = roof_tangle(rho, &Bipartition::split(&[focus], 3)?, cfg)?.value;
    Ok(analytic_report(focus, 3, lhs, Estimate::RoofUpper, pairwise_tangles(rho, focus)?))
}

/// CKW inequality on `n >= 3` qubits, pure or mixed.
pub fn n_qubit_monogamy(state: &State, focus: usize, cfg: &RoofConfig) -> Result<MonogamyReport> {
    check_qubits(state.dims())?;
    let n = state.parties();
    check_focus(focus, n)?;
    match state {
        State::Pure(psi) => {
            let lhs = focus_tangle(psi, focus)?;
            Ok(analytic_report(focus, n, lhs, Estimate::Analytic, pure_pairwise_tangles(psi, focus)?))
        }
        State::Mixed(rho) => {
            let lhs = roof_tangle(rho, &Bipartition::split(&[focus], n)?, cfg)?.value;
            Ok(analytic_report(focus, n, lhs, Estimate::RoofUpper, pairwise_tangles(rho, focus)?))
        }
    }
}

/// `τ_focus|rest ≤ Σ_j τᵃ_focus,j` on `n >= 3` qubits, with tangle-of-assistance
/// lower bounds on the right.
pub fn polygamy_tangle(psi: &PureState, focus: usize, cfg: &RoofConfig) -> Result<MonogamyReport> {
    check_qubits(psi.dims())?;
    let n = psi.parties();
    check_focus(focus, n)?;
    let lhs = focus_tangle(psi, focus)?;
    let others = partners(focus, n);
    let rhs = others
        .iter()
        .enumerate()
        .map(|(k, &j)| {
            let c = RoofConfig { seed: derive_seed(cfg.seed, k as u64), ..cfg.clone() };
            Ok(tangle_of_assistance(&psi.reduce(&pair(focus, j))?, &ab(), &c)?.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(MonogamyReport::new(
        Orientation::Polygamy,
        "tangle",
        focus,
        lhs,
        Estimate::Analytic,
        others,
        rhs,
        vec![Estimate::RoofLower; n - 1],
    ))
}

/// `S(ρ_A) ≤ Eᵃ(ρ_AB) + Eᵃ(ρ_AC)` for a tripartite pure state of any dims.
pub fn polygamy_vn(psi: &PureState, cfg: &RoofConfig) -> Result<MonogamyReport> {
    polygamy_vn_at(psi, 0, cfg)
}

/// [`polygamy_vn`] with an arbitrary focus subsystem.
pub fn polygamy_vn_at(psi: &PureState, focus: usize, cfg: &RoofConfig) -> Result<MonogamyReport> {
    if psi.parties() != 3 {
        return Err(Error::dims(format!("tripartite state required, got {} parties", psi.parties())));
    }
    check_focus(focus, 3)?;
    let lhs = von_neumann(&psi.reduce(&[focus])?)?;
    let others = partners(focus, 3);
    let rhs = others
        .iter()
        .enumerate()
        .map(|(k, &j)| {
            let c = RoofConfig { seed: derive_seed(cfg.seed, k as u64), ..cfg.clone() };
            // keep the focus on the first side of the cut
            let keep = pair(focus, j);
            let cut = if keep[0] == focus { ab() } else { ab().swapped() };
            Ok(assisted_entanglement(&psi.reduce(&keep)?, &cut, &c)?.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(MonogamyReport::new(
        Orientation::Polygamy,
        "entanglement-entropy",
        focus,
        lhs,
        Estimate::Analytic,
        others,
        rhs,
        vec![Estimate::RoofLower; 2],
    ))
}

/// Tangle of a pairwise reduction: closed form for two qubits, roof upper
/// bound otherwise.
fn pair_tangle(rho: &DensityOperator, cfg: &RoofConfig) -> Result<(f64, Estimate)> {
    if rho.dims() == [2, 2] {
        Ok((two_qubit_tangle(rho)?.value, Estimate::Analytic))
    } else {
        Ok((roof_tangle(rho, &ab(), cfg)?.value, Estimate::RoofUpper))
    }
}

/// All pairwise tangles of a tripartite pure state, indexed by
/// `[(0,1), (0,2), (1,2)]`.
fn tripartite_pairs(psi: &PureState, cfg: &RoofConfig) -> Result<[(f64, Estimate); 3]> {
    let mut out = [(0.0, Estimate::Analytic); 3];
    for (k, keep) in [[0, 1], [0, 2], [1, 2]].iter().enumerate() {
        let c = RoofConfig { seed: derive_seed(cfg.seed, k as u64), ..cfg.clone() };
        out[k] = pair_tangle(&psi.reduce(keep)?, &c)?;
    }
    Ok(out)
}

fn pair_slot(a: usize, b: usize) -> usize {
    match pair(a, b) {
        [0, 1] => 0,
        [0, 2] => 1,
        _ => 2,
    }
}

fn tripartite_report(psi: &PureState, focus: usize, pairs: &[(f64, Estimate); 3]) -> Result<MonogamyReport> {
    let lhs = focus_tangle(psi, focus)?;
    let others = partners(focus, 3);
    let (rhs, methods) = others.iter().map(|&j| pairs[pair_slot(focus, j)]).unzip();
    Ok(MonogamyReport::new(Orientation::Monogamy, "tangle", focus, lhs, Estimate::Analytic, others, rhs, methods))
}

/// Tangle monogamy report for any state the module can handle: qubit
/// states of three or more parties (via [`n_qubit_monogamy`]) and tripartite
/// pure states of any dims (pairwise terms by roof minimization).
pub fn monogamy_report(state: &State, focus: usize, cfg: &RoofConfig) -> Result<MonogamyReport> {
    if check_qubits(state.dims()).is_ok() {
        return n_qubit_monogamy(state, focus, cfg);
    }
    match state {
        State::Pure(psi) if psi.parties() == 3 => {
            check_focus(focus, 3)?;
            tripartite_report(psi, focus, &tripartite_pairs(psi, cfg)?)
        }
        _ => Err(Error::dims(format!(
            "no tangle monogamy form for a {} state with dims {:?}",
            state.kind(),
            state.dims()
        ))),
    }
}

/// A report whose residual stayed below `-threshold` after refinement.
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    /// Position in the trial list.
    pub trial: usize,
    /// `antisymmetric` or `haar`.
    pub family: String,
    /// Seed of [`haar_random_pure`] for Haar trials.
    pub state_seed: Option<u64>,
    pub report: MonogamyReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationSearch {
    pub dims: Vec<usize>,
    pub threshold: f64,
    pub trials: usize,
    /// Number of (trial, focus) reports computed.
    pub reports: usize,
    /// Reports below threshold whose refinement lifted them back above it.
    pub discarded: usize,
    pub candidates: Vec<Candidate>,
}

/// Search tripartite pure states for violations of the tangle CKW form
/// `τ_A|BC ≥ τ_AB + τ_AC` with [`VIOLATION_THRESHOLD`].
pub fn violation_search(dims: &[usize], samples: usize, cfg: &RoofConfig, seed: u64) -> Result<ViolationSearch> {
    violation_search_at(dims, samples, cfg, seed, VIOLATION_THRESHOLD)
}

/// [`violation_search`] with an explicit threshold.
///
/// Trials are `samples` states: the totally antisymmetric state first when
/// all three dims are equal and at least 3, then Haar-random states with
/// seeds `derive_seed(seed, k)`. Pairwise terms of qudit reductions are roof
/// minima, i.e. upper bounds, so a negative residual is only reported after
/// the roof terms are recomputed with [`RoofConfig::refined`] and the
/// residual stays below `-threshold`.
pub fn violation_search_at(
    dims: &[usize],
    samples: usize,
    cfg: &RoofConfig,
    seed: u64,
    threshold: f64,
) -> Result<ViolationSearch> {
    if dims.len() != 3 || dims.iter().any(|&d| d < 2) {
        return Err(Error::dims(format!("three subsystems of dimension >= 2 required, got {dims:?}")));
    }
    if !(threshold >= 0.0) {
        return Err(Error::arg("threshold must be non-negative"));
    }
    let structured = dims[0] >= 3 && dims.iter().all(|&d| d == dims[0]);

    let trial = |k: usize| -> Result<(Vec<Candidate>, usize)> {
        let (family, state_seed, psi) = if structured && k == 0 {
            ("antisymmetric", None, antisymmetric_triple(dims[0])?)
        } else {
            let s = derive_seed(seed, k as u64);
            ("haar", Some(s), haar_random_pure(dims, s)?)
        };
        let trial_cfg = RoofConfig { seed: derive_seed(cfg.seed, k as u64), ..cfg.clone() };
        let pairs = tripartite_pairs(&psi, &trial_cfg)?;
        let mut refined: Option<[(f64, Estimate); 3]> = None;
        let mut found = Vec::new();
        let mut discarded = 0;
        for focus in 0..3 {
            let report = tripartite_report(&psi, focus, &pairs)?;
            if report.residual >= -threshold {
                continue;
            }
            if refined.is_none() {
                refined = Some(refine_pairs(&psi, &pairs, &trial_cfg)?);
            }
            let mut second = tripartite_report(&psi, focus, refined.as_ref().unwrap())?;
            second.refined = true;
            if second.residual < -threshold {
                found.push(Candidate { trial: k, family: family.into(), state_seed, report: second });
            } else {
                discarded += 1;
            }
        }
        Ok((found, discarded))
    };

    let per_trial = (0..samples).into_par_iter().map(trial).collect::<Result<Vec<_>>>()?;
    let mut out = ViolationSearch {
        dims: dims.to_vec(),
        threshold,
        trials: samples,
        reports: 3 * samples,
        discarded: 0,
        candidates: Vec::new(),
    };
    for (found, discarded) in per_trial {
        out.candidates.extend(found);
        out.discarded += discarded;
    }
    Ok(out)
}

/// Recompute roof-bound pair terms with the refined configuration, keeping
/// the smaller of the two upper bounds.
fn refine_pairs(psi: &PureState, pairs: &[(f64, Estimate); 3], cfg: &RoofConfig) -> Result<[(f64, Estimate); 3]> {
    let mut out = *pairs;
    for (k, keep) in [[0, 1], [0, 2], [1, 2]].iter().enumerate() {
        if out[k].1 != Estimate::RoofUpper {
            continue;
        }
        let rho = psi.reduce(keep)?;
        let rank = rho.rank(crate::roof::SUPPORT_CUTOFF);
        let c = RoofConfig { seed: derive_seed(cfg.seed, 0x100 + k as u64), ..cfg.clone() }.refined(rank);
        out[k].0 = out[k].0.min(roof_tangle(&rho, &ab(), &c)?.value);
    }
    Ok(out)
}

/// Random state family for [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Haar,
    /// Ginibre mixed states of the given rank (full rank when `None`).
    Ginibre(Option<usize>),
}

/// Which focus subsystems a sweep reports on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FocusSelection {
    One(usize),
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub state_seed: u64,
    pub report: MonogamyReport,
    /// Only for three-qubit pure samples.
    pub tau1: Option<f64>,
    pub tau2: Option<f64>,
}

/// Monogamy reports for `samples` random states. Sample `k` is generated
/// from `state_seed = seed + k` and reports are returned in sample order.
pub fn sweep(
    kind: SweepKind,
    dims: &[usize],
    samples: usize,
    seed: u64,
    focus: FocusSelection,
    cfg: &RoofConfig,
) -> Result<Vec<SweepRow>> {
    if samples == 0 {
        return Err(Error::arg("a sweep needs at least one sample"));
    }
    let foci: Vec<usize> = match focus {
        FocusSelection::One(f) => {
            check_focus(f, dims.len())?;
            vec![f]
        }
        FocusSelection::All => (0..dims.len()).collect(),
    };
    let per_sample = (0..samples)
        .into_par_iter()
        .map(|k| -> Result<Vec<SweepRow>> {
            let state_seed = seed.wrapping_add(k as u64);
            let state = match kind {
                SweepKind::Haar => State::Pure(haar_random_pure(dims, state_seed)?),
                SweepKind::Ginibre(rank) => {
                    let full: usize = dims.iter().product();
                    State::Mixed(ginibre_random_density(dims, rank.unwrap_or(full), state_seed)?)
                }
            };
            let (tau1, tau2) = match &state {
                State::Pure(psi) if dims == [2, 2, 2] => (Some(tau1(psi)?), Some(tau2(psi)?)),
                _ => (None, None),
            };
            let c = RoofConfig { seed: derive_seed(cfg.seed, state_seed), ..cfg.clone() };
            foci.iter()
                .map(|&f| Ok(SweepRow { state_seed, report: monogamy_report(&state, f, &c)?, tau1, tau2 }))
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_sample.into_iter().flatten().collect())
}

/// Columns: `state_seed, focus, lhs, rhs_1..rhs_k, residual, satisfied,
/// tau1, tau2, method_tags`, with `k = parties − 1`. Numbers use the
/// shortest representation that parses back to the same `f64`; `tau1` and
/// `tau2` are empty unless the samples are three-qubit pure states.
pub fn sweep_header(parties: usize) -> Vec<String> {
    let mut h: Vec<String> = vec!["state_seed".into(), "focus".into(), "lhs".into()];
    h.extend((1..parties).map(|k| format!("rhs_{k}")));
    h.extend(["residual", "satisfied", "tau1", "tau2", "method_tags"].map(String::from));
    h
}

pub fn write_sweep_csv<W: Write>(out: W, parties: usize, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(sweep_header(parties)).map_err(io)?;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for row in rows {
        let r = &row.report;
        let mut rec = vec![row.state_seed.to_string(), r.focus.to_string(), r.lhs.to_string()];
        rec.extend(r.rhs_terms.iter().map(|v| v.to_string()));
        rec.extend([r.residual.to_string(), r.satisfied.to_string(), opt(row.tau1), opt(row.tau2), r.method_tags()]);
        w.write_record(&rec).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::random::rng_from_seed;
    use crate::states::{basis_state, bell, ghz, w_class, w_state, BellKind};
    use crate::C64;
    use rand::Rng;

    fn product3() -> PureState {
        basis_state(&[2, 2, 2], &[0, 0, 0]).unwrap()
    }

    fn random_w_class(rng: &mut impl Rng) -> PureState {
        let mut z = || C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        w_class(z(), z(), z(), true).unwrap()
    }

    #[test]
    fn tau_values() {
        let g = ghz(3).unwrap();
        let w = w_state(3).unwrap();
        assert!((tau1(&g).unwrap() - 1.0).abs() < 1e-12);
        assert!(tau2(&g).unwrap().abs() < 1e-12);
        assert!((tau1(&w).unwrap() - 8.0 / 9.0).abs() < 1e-12);
        assert!((tau2(&w).unwrap() - 4.0 / 9.0).abs() < 1e-12);
        assert_eq!(tau1(&product3()).unwrap(), 0.0);
        assert_eq!(tau2(&product3()).unwrap(), 0.0);
        assert!(tau1(&bell(BellKind::PsiMinus)).is_err());
        assert!(tau2(&ghz(4).unwrap()).is_err());
    }

    #[test]
    fn ckw_pure_examples() {
        let r = ckw_check_pure(&ghz(3).unwrap(), 0).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && r.rhs_terms.iter().all(|t| t.abs() < 1e-12));
        assert!((r.residual - 1.0).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Sound);
        let r = ckw_check_pure(&w_state(3).unwrap(), 0).unwrap();
        assert!(r.residual.abs() < 1e-8);
        assert!(r.satisfied);
        let mut rng = rng_from_seed(3);
        for _ in 0..50 {
            let psi = random_w_class(&mut rng);
            for f in 0..3 {
                assert!(ckw_check_pure(&psi, f).unwrap().residual.abs() < 1e-7);
            }
        }
        assert!(ckw_check_pure(&ghz(3).unwrap(), 3).is_err());
        assert!(ckw_check_pure(&ghz(4).unwrap(), 0).is_err());
    }

    #[test]
    fn ckw_pure_relabeling_symmetry() {
        for seed in 0..50 {
            let psi = haar_random_pure(&[2, 2, 2], seed).unwrap();
            let swapped = psi.permute(&[0, 2, 1]).unwrap();
            let a = ckw_check_pure(&psi, 0).unwrap();
            let b = ckw_check_pure(&swapped, 0).unwrap();
            assert!((a.residual - b.residual).abs() < 1e-10);
            assert!((a.rhs_terms[0] - b.rhs_terms[1]).abs() < 1e-10);
            assert!((a.rhs_terms[1] - b.rhs_terms[0]).abs() < 1e-10);
        }
    }

    #[test]
    fn ckw_mixed_examples() {
        let cfg = RoofConfig::with_seed(1);
        let psi = haar_random_pure(&[2, 2, 2], 9).unwrap();
        let pure = ckw_check_pure(&psi, 1).unwrap();
        let mixed = ckw_check_mixed(&psi.density(), 1, &cfg).unwrap();
        assert!((pure.residual - mixed.residual).abs() < 1e-6);
        assert_eq!(mixed.lhs_method, Estimate::RoofUpper);

        let rho = DensityOperator::mixture(&[(0.5, ghz(3).unwrap()), (0.5, product3())]).unwrap();
        let r = ckw_check_mixed(&rho, 0, &cfg).unwrap();
        assert!(r.residual >= -1e-6, "{}", r.residual);

        let sep = DensityOperator::mixture(&[(0.3, product3()), (0.7, basis_state(&[2, 2, 2], &[1, 0, 1]).unwrap())])
            .unwrap();
        let r = ckw_check_mixed(&sep, 0, &cfg).unwrap();
        assert!(r.lhs <= 1e-6 && r.rhs_terms.iter().all(|t| *t <= 1e-9));
    }

    #[test]
    fn n_qubit_examples() {
        let cfg = RoofConfig::default();
        let r = n_qubit_monogamy(&State::Pure(w_state(4).unwrap()), 0, &cfg).unwrap();
        assert!((r.lhs - 0.75).abs() < 1e-12);
        for t in &r.rhs_terms {
            assert!((t - 0.25).abs() < 1e-9);
        }
        assert!(r.residual.abs() < 1e-8);
        let r = n_qubit_monogamy(&State::Pure(ghz(4).unwrap()), 2, &cfg).unwrap();
        assert!((r.residual - 1.0).abs() < 1e-12);
        assert_eq!(r.partners, vec![0, 1, 3]);
        let zero = basis_state(&[2; 4], &[0; 4]).unwrap();
        let r = n_qubit_monogamy(&State::Pure(zero), 0, &cfg).unwrap();
        assert!(r.lhs == 0.0 && r.rhs_terms.iter().all(|t| *t == 0.0));
        let qutrit = haar_random_pure(&[3, 2, 2], 1).unwrap();
        assert!(n_qubit_monogamy(&State::Pure(qutrit), 0, &cfg).is_err());
        assert!(n_qubit_monogamy(&State::Pure(bell(BellKind::PhiPlus)), 0, &cfg).is_err());
    }

    #[test]
    fn polygamy_examples() {
        let cfg = RoofConfig { restarts: 6, ..RoofConfig::with_seed(2) };
        let r = polygamy_tangle(&ghz(3).unwrap(), 0, &cfg).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!(r.rhs_terms.iter().all(|t| *t >= 1.0 - 1e-3));
        assert!(r.satisfied && r.verdict == Verdict::Sound);
        let r = polygamy_tangle(&w_state(3).unwrap(), 0, &cfg).unwrap();
        assert!(r.rhs_terms.iter().all(|t| *t >= 4.0 / 9.0));
        assert!(r.satisfied);
        let r = polygamy_tangle(&product3(), 1, &cfg).unwrap();
        assert!(r.lhs == 0.0 && r.rhs_terms.iter().all(|t| t.abs() < 1e-9) && r.satisfied);

        let r = polygamy_vn(&w_state(3).unwrap(), &cfg).unwrap();
        assert!((r.lhs - crate::entropy::binary_entropy(1.0 / 3.0)).abs() < 1e-12);
        assert!(r.satisfied && r.verdict == Verdict::Sound);
        let r = polygamy_vn(&ghz(3).unwrap(), &cfg).unwrap();
        assert!(r.rhs_terms.iter().all(|t| *t >= 1.0 - 1e-3));
        let r = polygamy_vn(&product3(), &cfg).unwrap();
        assert!(r.lhs == 0.0 && r.satisfied);
        assert!(polygamy_vn(&ghz(4).unwrap(), &cfg).is_err());
    }

    #[test]
    fn verdict_follows_bound_directions() {
        use Estimate::*;
        let m = |lhs, l, rhs: Vec<f64>, r: Vec<Estimate>| {
            MonogamyReport::new(Orientation::Monogamy, "t", 0, lhs, l, vec![1, 2], rhs, r)
        };
        assert_eq!(m(1.0, RoofUpper, vec![0.2, 0.2], vec![Analytic; 2]).verdict, Verdict::Inconclusive);
        assert_eq!(m(0.1, RoofUpper, vec![0.2, 0.2], vec![Analytic; 2]).verdict, Verdict::Sound);
        assert_eq!(m(1.0, Analytic, vec![0.2, 0.2], vec![RoofUpper; 2]).verdict, Verdict::Sound);
        assert_eq!(m(0.1, Analytic, vec![0.2, 0.2], vec![RoofUpper; 2]).verdict, Verdict::Inconclusive);
        let p = |lhs, rhs: Vec<f64>| {
            MonogamyReport::new(Orientation::Polygamy, "t", 0, lhs, Analytic, vec![1, 2], rhs, vec![RoofLower; 2])
        };
        assert_eq!(p(1.0, vec![1.0, 1.0]).verdict, Verdict::Sound);
        let v = p(3.0, vec![1.0, 1.0]);
        assert!(!v.satisfied && v.verdict == Verdict::Inconclusive);
        assert_eq!(v.residual, 3.0 - (1.0 + 1.0));
        assert_eq!(v.tolerance, ROOF_TOLERANCE);
    }

    #[test]
    fn qubit_search_is_empty() {
        let s = violation_search(&[2, 2, 2], 100, &RoofConfig::default(), 4).unwrap();
        assert!(s.candidates.is_empty() && s.discarded == 0);
        assert_eq!(s.reports, 300);
        let s = violation_search(&[3, 3, 3], 0, &RoofConfig::default(), 4).unwrap();
        assert!(s.candidates.is_empty() && s.trials == 0);
        assert!(violation_search(&[2, 2], 1, &RoofConfig::default(), 4).is_err());
    }

    #[test]
    fn antisymmetric_trial_is_a_candidate() {
        let cfg = RoofConfig { restarts: 4, ..RoofConfig::with_seed(5) };
        let s = violation_search(&[3, 3, 3], 1, &cfg, 5).unwrap();
        assert_eq!(s.candidates.len(), 3);
        for c in &s.candidates {
            assert_eq!(c.family, "antisymmetric");
            assert!(c.report.refined);
            assert!((c.report.lhs - 4.0 / 3.0).abs() < 1e-12);
            for t in &c.report.rhs_terms {
                assert!((t - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sweep_rows_and_csv() {
        let cfg = RoofConfig::default();
        let rows = sweep(SweepKind::Haar, &[2, 2, 2], 20, 7, FocusSelection::All, &cfg).unwrap();
        assert_eq!(rows.len(), 60);
        assert_eq!(rows[3].state_seed, 8);
        let again = sweep(SweepKind::Haar, &[2, 2, 2], 20, 7, FocusSelection::All, &cfg).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_sweep_csv(&mut a, 3, &rows).unwrap();
        write_sweep_csv(&mut b, 3, &again).unwrap();
        assert_eq!(a, b);
        let mut reader = csv::Reader::from_reader(a.as_slice());
        assert_eq!(reader.headers().unwrap().len(), 10);
        let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
        assert_eq!(records.len(), 60);
        for rec in &records {
            let residual: f64 = rec[5].parse().unwrap();
            assert!(residual >= -1e-8);
            let t2: f64 = rec[8].parse().unwrap();
            assert!(t2 <= 4.0 / 9.0 + 1e-8);
        }
        assert!(sweep(SweepKind::Haar, &[2, 2, 2], 0, 7, FocusSelection::All, &cfg).is_err());
    }
}
