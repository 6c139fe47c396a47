//! Multi-qudit states and the primitives every measure is built on.
//!
//! Subsystem ordering is row-major: the leftmost subsystem is the most
//! significant digit of a basis index, so `|e1 e2 e3>` has index
//! `e1*d2*d3 + e2*d3 + e3`.

pub mod format;
pub mod linalg;
mod ops;
pub mod random;

use std::collections::BTreeSet;
use std::fmt;

use crate::{CMatrix, CVector, Error, Result, C64};

pub use ops::{partial_trace, purify, tensor_product, witness_expectation, IndexSplit};
pub use random::{ginibre_random_density, haar_random_pure};

/// Norm tolerance for [`PureState`].
pub const NORM_TOL: f64 = 1e-12;
/// Trace and Hermiticity tolerance for [`DensityOperator`].
pub const STATE_TOL: f64 = 1e-9;

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::dims("at least one subsystem is required"));
    }
    if let Some(d) = dims.iter().find(|&&d| d == 0) {
        return Err(Error::dims(format!("subsystem dimension {d} is not allowed")));
    }
    dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).ok_or_else(|| Error::dims("total dimension overflows"))
}

/// Unit-norm amplitude vector over a tensor product of subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: CVector,
}

impl PureState {
    /// Validating constructor: the vector must already have unit norm.
    pub fn new(dims: Vec<usize>, amplitudes: CVector) -> Result<Self> {
        let total = check_dims(&dims)?;
        if amplitudes.len() != total {
            return Err(Error::dims(format!("{} amplitudes for total dimension {total}", amplitudes.len())));
        }
        let n2 = amplitudes.norm_squared();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::state(format!("squared norm {n2} is not 1")));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Rescale to unit norm; fails only for the zero vector.
    pub fn normalized(dims: Vec<usize>, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::state("cannot normalize a zero or non-finite vector"));
        }
        if (norm - 1.0).abs() <= f64::EPSILON {
            return Self::new(dims, amplitudes);
        }
        Self::new(dims, amplitudes.unscale(norm))
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, amplitudes: CVector) -> Self {
        Self { dims, amplitudes }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `|ψ><ψ|`.
    pub fn density(&self) -> DensityOperator {
        DensityOperator::from_pure(self)
    }

    /// Reduced state on `keep`, computed directly from the amplitudes.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityOperator> {
        let keep = normalize_keep(keep, self.parties())?;
        let split = IndexSplit::new(&self.dims, &keep);
        let dims = keep.iter().map(|&k| self.dims[k]).collect();
        Ok(DensityOperator::from_parts_unchecked(dims, split.reduce_amplitudes(self.amplitudes.as_slice())))
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Reorder subsystems so that new subsystem `k` is old subsystem `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.parties())?;
        let split = IndexSplit::new(&self.dims, order);
        let amps = split.gather(self.amplitudes.as_slice());
        let dims = order.iter().map(|&k| self.dims[k]).collect();
        Ok(Self::from_parts_unchecked(dims, CVector::from_vec(amps)))
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::from_parts_unchecked(dims, linalg::kron_vec(&self.amplitudes, &other.amplitudes))
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix over a tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    dims: Vec<usize>,
    matrix: CMatrix,
}

impl DensityOperator {
    /// Validating constructor; the stored matrix is symmetrized.
    pub fn new(dims: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        let total = check_dims(&dims)?;
        if matrix.nrows() != total || matrix.ncols() != total {
            return Err(Error::dims(format!(
                "{}x{} matrix for total dimension {total}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::state("matrix has non-finite entries"));
        }
        let defect = linalg::hermiticity_defect(&matrix);
        if defect > STATE_TOL {
            return Err(Error::state(format!("not Hermitian (defect {defect:e})")));
        }
        let tr = linalg::trace(&matrix).re;
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::state(format!("trace {tr} is not 1")));
        }
        let matrix = linalg::hermitize(&matrix);
        let min = linalg::eigvalsh(&matrix).last().copied().unwrap_or(0.0);
        if min < -linalg::CLIP_TOL {
            return Err(Error::state(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { dims, matrix })
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, matrix: CMatrix) -> Self {
        Self { dims, matrix }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = psi.amplitudes();
        Self::from_parts_unchecked(psi.dims.clone(), a * a.adjoint())
    }

    /// `I / d` on the given subsystems.
    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        Ok(Self::from_parts_unchecked(dims, CMatrix::identity(total, total).unscale(total as f64)))
    }

    /// `Σ p_i |ψ_i><ψ_i|`; weights are renormalized.
    pub fn mixture(parts: &[(f64, PureState)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::arg("empty mixture"))?;
        let dims = first.1.dims.clone();
        let total_weight: f64 = parts.iter().map(|(p, _)| *p).sum();
        if parts.iter().any(|(p, _)| *p < 0.0) || !(total_weight > 0.0) {
            return Err(Error::arg("mixture weights must be non-negative with positive sum"));
        }
        let d = first.1.dim();
        let mut m = CMatrix::zeros(d, d);
        for (p, psi) in parts {
            if psi.dims != dims {
                return Err(Error::dims("mixture members have different dims"));
            }
            let a = psi.amplitudes();
            m += (a * a.adjoint()).scale(*p / total_weight);
        }
        Ok(Self::from_parts_unchecked(dims, m))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.matrix).re
    }

    /// Eigenvalues, descending, with drift in `[-1e-9, 0)` clipped to zero.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let mut v = linalg::eigvalsh(&self.matrix);
        linalg::clip_spectrum(&mut v)?;
        Ok(v)
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        linalg::eigvalsh(&self.matrix).iter().filter(|&&v| v > tol).count()
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator> {
        partial_trace(self, keep)
    }

    /// Reorder subsystems so that new subsystem `k` is old subsystem `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.parties())?;
        let split = IndexSplit::new(&self.dims, order);
        let perm = split.table();
        let d = self.dim();
        let m = CMatrix::from_fn(d, d, |i, j| self.matrix[(perm[i], perm[j])]);
        let dims = order.iter().map(|&k| self.dims[k]).collect();
        Ok(Self::from_parts_unchecked(dims, m))
    }

    /// Collapse to two parties `[side A, side B]`, dropping nothing.
    pub fn regroup(&self, cut: &Bipartition) -> Result<Self> {
        cut.check_parties(self.parties())?;
        let order: Vec<usize> = cut.side_a().iter().chain(cut.side_b()).copied().collect();
        let permuted = self.permute(&order)?;
        let da = cut.side_a().iter().map(|&k| self.dims[k]).product();
        let db = cut.side_b().iter().map(|&k| self.dims[k]).product();
        Ok(Self::from_parts_unchecked(vec![da, db], permuted.matrix))
    }

    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::from_parts_unchecked(dims, linalg::kron(&self.matrix, &other.matrix))
    }

    /// Rank-one states are returned as their eigenvector (up to global phase).
    pub fn as_pure(&self, tol: f64) -> Option<PureState> {
        let eig = linalg::eigh(&self.matrix);
        if eig.values.len() > 1 && eig.values[1] > tol {
            return None;
        }
        let v = eig.vectors.column(0).into_owned();
        PureState::normalized(self.dims.clone(), v).ok()
    }
}

/// Either kind of state, as stored in state files.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Mixed(DensityOperator),
}

impl State {
    pub fn dims(&self) -> &[usize] {
        match self {
            State::Pure(p) => p.dims(),
            State::Mixed(m) => m.dims(),
        }
    }

    pub fn parties(&self) -> usize {
        self.dims().len()
    }

    pub fn density(&self) -> DensityOperator {
        match self {
            State::Pure(p) => p.density(),
            State::Mixed(m) => m.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            State::Pure(_) => "pure",
            State::Mixed(_) => "mixed",
        }
    }
}

impl From<PureState> for State {
    fn from(p: PureState) -> Self {
        State::Pure(p)
    }
}

impl From<DensityOperator> for State {
    fn from(m: DensityOperator) -> Self {
        State::Mixed(m)
    }
}

/// Split of subsystem indices into two disjoint, nonempty, covering sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(side_a: &[usize], side_b: &[usize], parties: usize) -> Result<Self> {
        let cut = Self::partial(side_a, side_b)?;
        cut.check_parties(parties)?;
        Ok(cut)
    }

    /// Sides that need not cover every subsystem (used before a reduction).
    pub fn partial(side_a: &[usize], side_b: &[usize]) -> Result<Self> {
        let a: BTreeSet<usize> = side_a.iter().copied().collect();
        let b: BTreeSet<usize> = side_b.iter().copied().collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::cut("both sides must be nonempty"));
        }
        if a.len() != side_a.len() || b.len() != side_b.len() {
            return Err(Error::cut("repeated subsystem index"));
        }
        if !a.is_disjoint(&b) {
            return Err(Error::cut("sides overlap"));
        }
        Ok(Self { side_a: a.into_iter().collect(), side_b: b.into_iter().collect() })
    }

    /// `side_a` against everything else.
    pub fn split(side_a: &[usize], parties: usize) -> Result<Self> {
        let a: BTreeSet<usize> = side_a.iter().copied().collect();
        let b: Vec<usize> = (0..parties).filter(|k| !a.contains(k)).collect();
        Self::new(side_a, &b, parties)
    }

    /// Parse `0|1,2` style cuts (zero-based, `|` between sides).
    pub fn parse(text: &str) -> Result<Self> {
        let (a, b) = text.split_once('|').ok_or_else(|| Error::cut(format!("`{text}` has no `|` separator")))?;
        let side = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| Error::cut(format!("bad subsystem index `{t}` in `{text}`")))
                })
                .collect()
        };
        Self::partial(&side(a)?, &side(b)?)
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    /// Union of both sides, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.side_a.iter().chain(&self.side_b).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn covers(&self, parties: usize) -> bool {
        self.support() == (0..parties).collect::<Vec<_>>()
    }

    pub fn check_parties(&self, parties: usize) -> Result<()> {
        if let Some(&k) = self.support().iter().find(|&&k| k >= parties) {
            return Err(Error::cut(format!("subsystem {k} out of range for {parties} parties")));
        }
        if !self.covers(parties) {
            return Err(Error::cut(format!("cut {self} does not cover all {parties} subsystems")));
        }
        Ok(())
    }

    /// Relabel onto the kept subsystems after reducing to `support()`.
    pub fn compacted(&self) -> Bipartition {
        let support = self.support();
        let pos = |k: &usize| support.iter().position(|s| s == k).unwrap();
        Bipartition { side_a: self.side_a.iter().map(pos).collect(), side_b: self.side_b.iter().map(pos).collect() }
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition { side_a: self.side_b.clone(), side_b: self.side_a.clone() }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[usize]| s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.side_a), join(&self.side_b))
    }
}

/// Hermitian observable whose expectation certifies entanglement when negative.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessOperator {
    dims: Vec<usize>,
    matrix: CMatrix,
}

impl WitnessOperator {
    pub fn new(dims: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        let total = check_dims(&dims)?;
        if matrix.nrows() != total || matrix.ncols() != total {
            return Err(Error::dims("witness matrix does not match dims"));
        }
        if !linalg::is_hermitian(&matrix, STATE_TOL) {
            return Err(Error::arg("witness is not Hermitian"));
        }
        Ok(Self { dims, matrix })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

pub(crate) fn normalize_keep(keep: &[usize], parties: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::arg("keep set is empty"));
    }
    let set: BTreeSet<usize> = keep.iter().copied().collect();
    if let Some(&k) = set.iter().find(|&&k| k >= parties) {
        return Err(Error::arg(format!("subsystem {k} out of range for {parties} parties")));
    }
    Ok(set.into_iter().collect())
}

fn check_permutation(order: &[usize], parties: usize) -> Result<()> {
    let mut seen = vec![false; parties];
    if order.len() != parties {
        return Err(Error::arg("permutation has the wrong length"));
    }
    for &k in order {
        if k >= parties || std::mem::replace(&mut seen[k], true) {
            return Err(Error::arg("not a permutation of the subsystems"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_parsing() {
        let cut = Bipartition::parse("0|1,2").unwrap();
        assert_eq!(cut.side_a(), &[0]);
        assert_eq!(cut.side_b(), &[1, 2]);
        assert!(cut.covers(3));
        assert_eq!(cut.to_string(), "0|1,2");
        assert!(Bipartition::parse("0,1").is_err());
        assert!(Bipartition::parse("0|0").is_err());
        assert!(Bipartition::parse("|1").is_err());
        assert!(Bipartition::parse("0|x").is_err());
    }

    #[test]
    fn cut_must_cover() {
        assert!(Bipartition::new(&[0], &[1], 3).is_err());
        assert!(Bipartition::new(&[0], &[1, 3], 3).is_err());
        assert!(Bipartition::new(&[2], &[0, 1], 3).is_ok());
        let partial = Bipartition::parse("0|2").unwrap();
        assert_eq!(partial.compacted(), Bipartition::new(&[0], &[1], 2).unwrap());
    }

    #[test]
    fn density_validation() {
        let dims = vec![2];
        let bad_trace = CMatrix::identity(2, 2);
        assert!(DensityOperator::new(dims.clone(), bad_trace).is_err());
        let negative = CMatrix::from_diagonal(&CVector::from_vec(vec![C64::new(1.1, 0.0), C64::new(-0.1, 0.0)]));
        assert!(DensityOperator::new(dims.clone(), negative).is_err());
        let mut nonherm = CMatrix::identity(2, 2).scale(0.5);
        nonherm[(0, 1)] = C64::new(0.1, 0.0);
        assert!(DensityOperator::new(dims, nonherm).is_err());
    }

    #[test]
    fn pure_state_norm_checked() {
        let v = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        assert!(PureState::new(vec![2], v.clone()).is_err());
        let p = PureState::normalized(vec![2], v).unwrap();
        assert!((p.amplitudes().norm_squared() - 1.0).abs() < NORM_TOL);
        assert!(PureState::normalized(vec![2], CVector::zeros(2)).is_err());
    }

    #[test]
    fn regroup_orders_sides() {
        // |0>_A |1>_B |0>_C grouped as B | AC
        let mut v = CVector::zeros(8);
        v[0b010] = C64::new(1.0, 0.0);
        let rho = PureState::new(vec![2, 2, 2], v).unwrap().density();
        let cut = Bipartition::new(&[1], &[0, 2], 3).unwrap();
        let g = rho.regroup(&cut).unwrap();
        assert_eq!(g.dims(), &[2, 4]);
        // B=1, (A,C)=(0,0) -> index 1*4 + 0
        assert!((g.matrix()[(4, 4)].re - 1.0).abs() < 1e-15);
    }
}
