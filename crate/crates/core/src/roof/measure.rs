use crate::entropy::EntropyKind;
use crate::qcore::{linalg, Bipartition, IndexSplit, PureState};
use crate::{Error, Result, C64};

/// Precomputed index layout for evaluating a pure-state measure across one cut.
///
/// The marginal is always taken on the smaller side of the cut.
#[derive(Debug, Clone)]
pub struct CutContext {
    dims: Vec<usize>,
    cut: Bipartition,
    split: IndexSplit,
}

impl CutContext {
    pub fn new(dims: &[usize], cut: &Bipartition) -> Result<Self> {
        cut.check_parties(dims.len())?;
        let da: usize = cut.side_a().iter().map(|&k| dims[k]).product();
        let db: usize = cut.side_b().iter().map(|&k| dims[k]).product();
        let side = if da <= db { cut.side_a() } else { cut.side_b() };
        Ok(Self { dims: dims.to_vec(), cut: cut.clone(), split: IndexSplit::new(dims, side) })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cut(&self) -> &Bipartition {
        &self.cut
    }

    pub fn total_dim(&self) -> usize {
        self.split.kept_dim() * self.split.traced_dim()
    }

    /// Spectrum of the (smaller) marginal of unit-norm amplitudes.
    pub fn marginal_spectrum(&self, amps: &[C64]) -> Vec<f64> {
        let mut v = linalg::eigvalsh(&self.split.reduce_amplitudes(amps));
        for x in v.iter_mut() {
            *x = x.max(0.0);
        }
        v
    }

    pub fn marginal_purity(&self, amps: &[C64]) -> f64 {
        linalg::hermitian_square_trace(&self.split.reduce_amplitudes(amps))
    }
}

/// Real-valued function of a pure state across a cut, continuous and zero on
/// product states. Implementations must be free of side effects because the
/// optimizers evaluate them from several threads.
pub trait PureMeasure: Sync {
    fn name(&self) -> String;

    /// Value on unit-norm amplitudes laid out as `ctx.dims()`.
    fn evaluate_amplitudes(&self, amps: &[C64], ctx: &CutContext) -> f64;

    fn evaluate(&self, psi: &PureState, cut: &Bipartition) -> Result<f64> {
        let ctx = CutContext::new(psi.dims(), cut)?;
        let v = self.evaluate_amplitudes(psi.amplitudes().as_slice(), &ctx);
        if !v.is_finite() {
            return Err(Error::Numerical(format!("{} is not finite", self.name())));
        }
        Ok(v)
    }
}

/// An entropy of the reduced state: the tangle is the linear entropy, the
/// entanglement entropy is the von Neumann entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalEntropy(pub EntropyKind);

impl MarginalEntropy {
    pub const TANGLE: MarginalEntropy = MarginalEntropy(EntropyKind::Linear);
    pub const ENTANGLEMENT_ENTROPY: MarginalEntropy = MarginalEntropy(EntropyKind::VonNeumann);
}

impl PureMeasure for MarginalEntropy {
    fn name(&self) -> String {
        match self.0 {
            EntropyKind::Linear => "tangle".into(),
            EntropyKind::VonNeumann => "entanglement-entropy".into(),
            other => format!("marginal-{other}"),
        }
    }

    fn evaluate_amplitudes(&self, amps: &[C64], ctx: &CutContext) -> f64 {
        match self.0 {
            EntropyKind::Linear => (2.0 * (1.0 - ctx.marginal_purity(amps))).max(0.0),
            kind => kind.of_spectrum(&ctx.marginal_spectrum(amps)).unwrap_or(f64::NAN),
        }
    }
}
