//! Spectral entropies of a density operator.
//!
//! Logarithms are base 2 (bits), except for the Tsallis family which is a
//! polynomial in the spectrum and therefore base-free; its `q -> 1` limit is
//! the von Neumann entropy in nats.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use crate::qcore::DensityOperator;
use crate::{Error, Result};

/// Eigenvalues at or below this count as exact zeros inside logarithms.
pub const ZERO_EIGENVALUE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyKind {
    Linear,
    VonNeumann,
    Renyi(f64),
    Tsallis(f64),
}

impl EntropyKind {
    pub fn evaluate(&self, rho: &DensityOperator) -> Result<f64> {
        let spectrum = rho.spectrum()?;
        self.of_spectrum(&spectrum)
    }

    /// Evaluate on a (clipped, non-negative) eigenvalue list.
    pub fn of_spectrum(&self, spectrum: &[f64]) -> Result<f64> {
        match *self {
            EntropyKind::Linear => Ok(2.0 * (1.0 - spectrum.iter().map(|l| l * l).sum::<f64>())),
            EntropyKind::VonNeumann => Ok(shannon_bits(spectrum)),
            EntropyKind::Renyi(alpha) => renyi_of_spectrum(spectrum, alpha),
            EntropyKind::Tsallis(q) => tsallis_of_spectrum(spectrum, q),
        }
    }
}

impl FromStr for EntropyKind {
    type Err = Error;

    /// `linear`, `vn`, `renyi:α`, `tsallis:q`.
    fn from_str(s: &str) -> Result<Self> {
        let param = |p: &str| -> Result<f64> {
            let v: f64 = p.parse().map_err(|_| Error::arg(format!("bad entropy parameter `{p}`")))?;
            if !(v > 0.0) {
                return Err(Error::arg(format!("entropy parameter must be positive, got {v}")));
            }
            Ok(v)
        };
        match s.split_once(':') {
            None if s == "linear" => Ok(EntropyKind::Linear),
            None if s == "vn" || s == "von_neumann" => Ok(EntropyKind::VonNeumann),
            Some(("renyi", p)) => Ok(EntropyKind::Renyi(param(p)?)),
            Some(("tsallis", p)) => Ok(EntropyKind::Tsallis(param(p)?)),
            _ => Err(Error::arg(format!("unknown entropy `{s}` (linear | vn | renyi:α | tsallis:q)"))),
        }
    }
}

impl fmt::Display for EntropyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyKind::Linear => write!(f, "linear"),
            EntropyKind::VonNeumann => write!(f, "vn"),
            EntropyKind::Renyi(a) => write!(f, "renyi:{a}"),
            EntropyKind::Tsallis(q) => write!(f, "tsallis:{q}"),
        }
    }
}

/// `-Σ λ log₂ λ` over eigenvalues above [`ZERO_EIGENVALUE`].
pub fn shannon_bits(spectrum: &[f64]) -> f64 {
    let h: f64 = spectrum.iter().filter(|&&l| l > ZERO_EIGENVALUE).map(|&l| -l * l.log2()).sum();
    h.max(0.0)
}

fn power_trace(spectrum: &[f64], p: f64) -> f64 {
    spectrum.iter().filter(|&&l| l > ZERO_EIGENVALUE).map(|&l| l.powf(p)).sum()
}

fn renyi_of_spectrum(spectrum: &[f64], alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::arg(format!("Rényi order must be positive, got {alpha}")));
    }
    if alpha == 1.0 {
        return Ok(shannon_bits(spectrum));
    }
    Ok((power_trace(spectrum, alpha).log2() / (1.0 - alpha)).max(0.0))
}

fn tsallis_of_spectrum(spectrum: &[f64], q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::arg(format!("Tsallis index must be positive, got {q}")));
    }
    if q == 1.0 {
        return Ok(shannon_bits(spectrum) * LN_2);
    }
    Ok(((1.0 - power_trace(spectrum, q)) / (q - 1.0)).max(0.0))
}

/// `tr ρ²`.
pub fn purity(rho: &DensityOperator) -> f64 {
    crate::qcore::linalg::hermitian_square_trace(rho.matrix())
}

fn purity_deficit(rho: &DensityOperator) -> f64 {
    (1.0 - purity(rho)).max(0.0)
}

/// `2 (1 - tr ρ²)`.
pub fn linear_entropy(rho: &DensityOperator) -> f64 {
    2.0 * purity_deficit(rho)
}

pub fn von_neumann(rho: &DensityOperator) -> Result<f64> {
    Ok(shannon_bits(&rho.spectrum()?))
}

/// `log₂(tr ρ^α) / (1 - α)`; the von Neumann entropy at `α = 1`.
pub fn renyi(rho: &DensityOperator, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::arg(format!("Rényi order must be positive, got {alpha}")));
    }
    renyi_of_spectrum(&rho.spectrum()?, alpha)
}

/// `(1 - tr ρ^q) / (q - 1)`; at `q = 1` the von Neumann entropy in nats
/// (`von_neumann(ρ) · ln 2`).
pub fn tsallis(rho: &DensityOperator, q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::arg(format!("Tsallis index must be positive, got {q}")));
    }
    if q == 2.0 {
        return Ok(purity_deficit(rho));
    }
    tsallis_of_spectrum(&rho.spectrum()?, q)
}

/// Binary entropy `h(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_bits(&[p, 1.0 - p])
}
