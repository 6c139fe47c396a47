use super::{linalg, normalize_keep, DensityOperator, PureState, State, WitnessOperator};
use crate::{CMatrix, CVector, Error, Result, C64};

/// Eigenvalues at or below this are dropped from a purification's environment.
pub const PURIFY_CUTOFF: f64 = 1e-12;

/// Index bookkeeping for splitting a multi-index into an ordered "kept" group
/// and the remaining "traced" group.
///
/// `table()[k * traced_dim + t]` is the full row-major index whose kept digits
/// (in the order given) form `k` and whose other digits form `t`.
#[derive(Debug, Clone)]
pub struct IndexSplit {
    kept_dim: usize,
    traced_dim: usize,
    table: Vec<usize>,
}

impl IndexSplit {
    /// `keep` must list distinct, in-range subsystem indices; its order is the
    /// digit order of the kept index.
    pub fn new(dims: &[usize], keep: &[usize]) -> Self {
        let n = dims.len();
        let traced: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
        let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
        let traced_dim: usize = traced.iter().map(|&k| dims[k]).product();
        let total = kept_dim * traced_dim;

        let mut strides = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        let group_strides = |group: &[usize]| -> Vec<usize> {
            let mut s = vec![1usize; group.len()];
            for i in (0..group.len().saturating_sub(1)).rev() {
                s[i] = s[i + 1] * dims[group[i + 1]];
            }
            s
        };
        let keep_strides = group_strides(keep);
        let trace_strides = group_strides(&traced);

        let mut table = vec![0usize; total];
        for full in 0..total {
            let mut k_idx = 0;
            let mut t_idx = 0;
            for (pos, &sub) in keep.iter().enumerate() {
                k_idx += (full / strides[sub]) % dims[sub] * keep_strides[pos];
            }
            for (pos, &sub) in traced.iter().enumerate() {
                t_idx += (full / strides[sub]) % dims[sub] * trace_strides[pos];
            }
            table[k_idx * traced_dim + t_idx] = full;
        }
        Self { kept_dim, traced_dim, table }
    }

    pub fn kept_dim(&self) -> usize {
        self.kept_dim
    }

    pub fn traced_dim(&self) -> usize {
        self.traced_dim
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Amplitudes rearranged into `kept x traced` order (flattened row-major).
    pub fn gather(&self, amps: &[C64]) -> Vec<C64> {
        self.table.iter().map(|&i| amps[i]).collect()
    }

    /// `M M†` where `M[k, t] = ψ[table(k, t)]`.
    pub fn reduce_amplitudes(&self, amps: &[C64]) -> CMatrix {
        let (dk, dt) = (self.kept_dim, self.traced_dim);
        let mut out = CMatrix::zeros(dk, dk);
        for i in 0..dk {
            for j in i..dk {
                let mut acc = C64::new(0.0, 0.0);
                for t in 0..dt {
                    acc += amps[self.table[i * dt + t]] * amps[self.table[j * dt + t]].conj();
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
        out
    }

    /// Partial trace of a full matrix onto the kept group.
    pub fn reduce_matrix(&self, m: &CMatrix) -> CMatrix {
        let (dk, dt) = (self.kept_dim, self.traced_dim);
        let mut out = CMatrix::zeros(dk, dk);
        for i in 0..dk {
            for j in 0..dk {
                let mut acc = C64::new(0.0, 0.0);
                for t in 0..dt {
                    acc += m[(self.table[i * dt + t], self.table[j * dt + t])];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

/// Kronecker product of two states of the same kind; dims are concatenated.
pub fn tensor_product(a: &State, b: &State) -> Result<State> {
    match (a, b) {
        (State::Pure(x), State::Pure(y)) => Ok(State::Pure(x.tensor(y))),
        (State::Mixed(x), State::Mixed(y)) => Ok(State::Mixed(x.tensor(y))),
        _ => Err(Error::arg("tensor product of a pure and a mixed state; convert explicitly")),
    }
}

/// Trace out every subsystem not in `keep`; kept subsystems stay in order.
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let keep = normalize_keep(keep, rho.parties())?;
    let split = IndexSplit::new(rho.dims(), &keep);
    let dims = keep.iter().map(|&k| rho.dims()[k]).collect();
    Ok(DensityOperator::from_parts_unchecked(dims, split.reduce_matrix(rho.matrix())))
}

/// Minimal purification `Σ_k √λ_k |v_k> ⊗ |k>` with an appended environment
/// of dimension equal to the numerical rank.
pub fn purify(rho: &DensityOperator) -> Result<PureState> {
    let mut eig = linalg::eigh(rho.matrix());
    linalg::clip_spectrum(&mut eig.values)?;
    let kept: Vec<usize> = (0..eig.values.len()).filter(|&k| eig.values[k] > PURIFY_CUTOFF).collect();
    if kept.is_empty() {
        return Err(Error::state("cannot purify a zero matrix"));
    }
    let r = kept.len();
    let d = rho.dim();
    let mut amps = CVector::zeros(d * r);
    for (env, &k) in kept.iter().enumerate() {
        let w = eig.values[k].sqrt();
        for i in 0..d {
            amps[i * r + env] = eig.vectors[(i, k)] * w;
        }
    }
    let mut dims = rho.dims().to_vec();
    dims.push(r);
    PureState::normalized(dims, amps)
}

/// `Tr(ρ W)`; negative values certify entanglement for a valid witness.
pub fn witness_expectation(rho: &DensityOperator, w: &WitnessOperator) -> Result<f64> {
    if rho.dims() != w.dims() {
        return Err(Error::dims(format!("state dims {:?} vs witness dims {:?}", rho.dims(), w.dims())));
    }
    let value = linalg::trace_of_product(rho.matrix(), w.matrix());
    if value.im.abs() > 1e-6 {
        return Err(Error::Numerical(format!("Tr(ρW) has imaginary part {:e}", value.im)));
    }
    Ok(value.re)
}
