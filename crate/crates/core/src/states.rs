//! Canonical multi-qubit states: Bell, GHZ, W, W-class and basis kets.
//!
//! Every constructor returns a normalized state.

use std::f64::consts::FRAC_1_SQRT_2;
use std::str::FromStr;

use crate::qcore::PureState;
use crate::{CVector, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psi+" | "psi-plus" => Ok(BellKind::PsiPlus),
            "psi-" | "psi-minus" | "singlet" => Ok(BellKind::PsiMinus),
            "phi+" | "phi-plus" => Ok(BellKind::PhiPlus),
            "phi-" | "phi-minus" => Ok(BellKind::PhiMinus),
            other => Err(Error::arg(format!("unknown Bell state `{other}`"))),
        }
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn from_terms(dims: Vec<usize>, terms: &[(usize, C64)]) -> PureState {
    let mut v = CVector::zeros(dims.iter().product());
    for &(i, a) in terms {
        v[i] += a;
    }
    PureState::normalized(dims, v).expect("canonical states are nonzero")
}

/// `Ψ± = (|01> ± |10>)/√2`, `Φ± = (|00> ± |11>)/√2`.
pub fn bell(kind: BellKind) -> PureState {
    let h = FRAC_1_SQRT_2;
    let terms = match kind {
        BellKind::PsiPlus => [(1, real(h)), (2, real(h))],
        BellKind::PsiMinus => [(1, real(h)), (2, real(-h))],
        BellKind::PhiPlus => [(0, real(h)), (3, real(h))],
        BellKind::PhiMinus => [(0, real(h)), (3, real(-h))],
    };
    from_terms(vec![2, 2], &terms)
}

/// `(|0…0> + |1…1>)/√2` on `n >= 2` qubits.
pub fn ghz(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::arg(format!("GHZ needs at least 2 parties, got {n}")));
    }
    let last = (1usize << n) - 1;
    Ok(from_terms(vec![2; n], &[(0, real(FRAC_1_SQRT_2)), (last, real(FRAC_1_SQRT_2))]))
}

/// Equal superposition of the `n` weight-one basis states.
pub fn w_state(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::arg(format!("W needs at least 2 parties, got {n}")));
    }
    let a = real((1.0 / n as f64).sqrt());
    let terms: Vec<(usize, C64)> = (0..n).map(|k| (1usize << k, a)).collect();
    Ok(from_terms(vec![2; n], &terms))
}

/// `a|100> + b|010> + c|001>`.
///
/// Without `auto_normalize` the amplitudes must already satisfy
/// `|a|²+|b|²+|c|² = 1` within 1e-9.
pub fn w_class(a: C64, b: C64, c: C64, auto_normalize: bool) -> Result<PureState> {
    let n2 = a.norm_sqr() + b.norm_sqr() + c.norm_sqr();
    if n2 == 0.0 {
        return Err(Error::arg("W-class amplitudes are all zero"));
    }
    if !auto_normalize && (n2 - 1.0).abs() > 1e-9 {
        return Err(Error::arg(format!("|a|²+|b|²+|c|² = {n2}, expected 1")));
    }
    Ok(from_terms(vec![2, 2, 2], &[(0b100, a), (0b010, b), (0b001, c)]))
}

/// Computational basis ket `|digits>`.
pub fn basis_state(dims: &[usize], digits: &[usize]) -> Result<PureState> {
    if dims.len() != digits.len() {
        return Err(Error::dims(format!("{} digits for {} subsystems", digits.len(), dims.len())));
    }
    let mut index = 0;
    for (&d, &x) in dims.iter().zip(digits) {
        if x >= d {
            return Err(Error::arg(format!("digit {x} out of range for dimension {d}")));
        }
        index = index * d + x;
    }
    let mut v = CVector::zeros(dims.iter().product());
    v[index] = real(1.0);
    PureState::new(dims.to_vec(), v)
}

/// Totally antisymmetric state `Σ sgn(π) |π(0) π(1) π(2)> / √6` of three
/// `d`-level systems (`d >= 3`), using the levels 0, 1, 2.
pub fn antisymmetric_triple(d: usize) -> Result<PureState> {
    if d < 3 {
        return Err(Error::arg("antisymmetric three-party state needs d >= 3"));
    }
    let perms: [([usize; 3], f64); 6] =
        [([0, 1, 2], 1.0), ([1, 2, 0], 1.0), ([2, 0, 1], 1.0), ([0, 2, 1], -1.0), ([2, 1, 0], -1.0), ([1, 0, 2], -1.0)];
    let terms: Vec<(usize, C64)> = perms.iter().map(|(p, s)| ((p[0] * d + p[1]) * d + p[2], real(*s))).collect();
    Ok(from_terms(vec![d; 3], &terms))
}

/// Resolve the CLI state names: `ghz`, `w`, `bell:<kind>`, `wclass:a,b,c`,
/// `basis:<digits>`, `antisym`.
///
/// `parties` sizes `ghz`/`w`; `dims` applies to `basis` (default all qubits)
/// and `antisym` (default qutrits).
pub fn named_state(name: &str, parties: Option<usize>, dims: Option<&[usize]>, normalize: bool) -> Result<PureState> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head.to_ascii_lowercase().as_str(), arg) {
        ("ghz", None) => ghz(parties.unwrap_or(3)),
        ("w", None) => w_state(parties.unwrap_or(3)),
        ("bell", Some(kind)) => Ok(bell(kind.parse()?)),
        ("wclass", Some(list)) => {
            let amps = list.split(',').map(|t| parse_complex(t.trim())).collect::<Result<Vec<_>>>()?;
            let [a, b, c] = amps[..] else {
                return Err(Error::arg("wclass needs exactly three amplitudes"));
            };
            w_class(a, b, c, normalize)
        }
        ("basis", Some(digits)) => {
            let digits = parse_digits(digits).ok_or_else(|| Error::arg(format!("bad basis digits `{digits}`")))?;
            let default = vec![2; digits.len()];
            basis_state(dims.unwrap_or(&default), &digits)
        }
        ("antisym", None) => antisymmetric_triple(dims.and_then(|d| d.first().copied()).unwrap_or(3)),
        _ => Err(Error::arg(format!("unknown state name `{name}`"))),
    }
}

/// `100` (one character per digit) or `2,10,1` (comma separated).
fn parse_digits(text: &str) -> Option<Vec<usize>> {
    if text.contains(',') {
        text.split(',').map(|t| t.trim().parse().ok()).collect()
    } else {
        text.chars().map(|c| c.to_digit(36).map(|d| d as usize)).collect()
    }
}

/// `1.5`, `-0.2i`, `0.3+0.4i`, `0.3-0.4i`.
fn parse_complex(t: &str) -> Result<C64> {
    let bad = || Error::arg(format!("bad complex number `{t}`"));
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not a leading sign or an exponent sign
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        return match split {
            Some(k) => {
                let re: f64 = body[..k].parse().map_err(|_| bad())?;
                let im: f64 = body[k..].parse().map_err(|_| bad())?;
                Ok(C64::new(re, im))
            }
            None => Ok(C64::new(0.0, body.parse().map_err(|_| bad())?)),
        };
    }
    Ok(C64::new(t.parse().map_err(|_| bad())?, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::max_abs_diff;
    use crate::CMatrix;

    fn amp(p: &PureState, i: usize) -> C64 {
        p.amplitudes()[i]
    }

    #[test]
    fn bell_states() {
        let h = FRAC_1_SQRT_2;
        let s = bell(BellKind::PsiMinus);
        assert_eq!((amp(&s, 1).re, amp(&s, 2).re), (h, -h));
        let p = bell(BellKind::PhiPlus);
        assert_eq!((amp(&p, 0).re, amp(&p, 3).re), (h, h));
        let all = [BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus].map(bell);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((all[i].inner(&all[j]).norm() - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn ghz_and_w_small_cases() {
        assert_eq!(ghz(2).unwrap(), bell(BellKind::PhiPlus));
        assert_eq!(w_state(2).unwrap(), bell(BellKind::PsiPlus));
        let g = ghz(3).unwrap();
        assert!((amp(&g, 0).re - FRAC_1_SQRT_2).abs() < 1e-15 && (amp(&g, 7).re - FRAC_1_SQRT_2).abs() < 1e-15);
        let w = w_state(3).unwrap();
        for i in [1, 2, 4] {
            assert!((amp(&w, i).re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        assert!(ghz(1).is_err());
        assert!(w_state(0).is_err());
    }

    #[test]
    fn ghz_single_qubit_marginals_are_maximally_mixed() {
        for n in 2..6 {
            let g = ghz(n).unwrap();
            for k in 0..n {
                let r = g.reduce(&[k]).unwrap();
                assert!(max_abs_diff(r.matrix(), &CMatrix::identity(2, 2).scale(0.5)) < 1e-15);
            }
        }
    }

    #[test]
    fn w_is_permutation_symmetric() {
        let w = w_state(4).unwrap();
        for order in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1], [0, 3, 1, 2]] {
            assert_eq!(w.permute(&order).unwrap(), w);
        }
    }

    #[test]
    fn w_class_cases() {
        let t = real(1.0 / 3f64.sqrt());
        let w = w_class(t, t, t, false).unwrap();
        assert!((w.inner(&w_state(3).unwrap()).norm() - 1.0).abs() < 1e-12);
        let prod = w_class(real(1.0), real(0.0), real(0.0), false).unwrap();
        assert_eq!(prod, basis_state(&[2, 2, 2], &[1, 0, 0]).unwrap());
        let h = real(FRAC_1_SQRT_2);
        let two = w_class(h, h, real(0.0), false).unwrap();
        let expected = bell(BellKind::PsiPlus).tensor(&basis_state(&[2], &[0]).unwrap());
        assert!((two.inner(&expected).norm() - 1.0).abs() < 1e-12);
        assert!(w_class(real(1.0), real(1.0), real(0.0), false).is_err());
        assert!(w_class(real(1.0), real(1.0), real(0.0), true).is_ok());
        assert!(w_class(real(0.0), real(0.0), real(0.0), true).is_err());
    }

    #[test]
    fn basis_states() {
        assert_eq!(amp(&basis_state(&[2, 2, 2], &[0, 0, 0]).unwrap(), 0).re, 1.0);
        assert_eq!(amp(&basis_state(&[2, 2, 2], &[1, 0, 0]).unwrap(), 4).re, 1.0);
        assert_eq!(amp(&basis_state(&[3, 3], &[2, 1]).unwrap(), 7).re, 1.0);
        assert!(basis_state(&[2, 2], &[2, 0]).is_err());
        assert!(basis_state(&[2, 2], &[0]).is_err());
    }

    #[test]
    fn antisymmetric_marginal_is_maximally_mixed() {
        let s = antisymmetric_triple(3).unwrap();
        let a = s.reduce(&[0]).unwrap();
        assert!(max_abs_diff(a.matrix(), &CMatrix::identity(3, 3).unscale(3.0)) < 1e-15);
    }

    #[test]
    fn named_states() {
        assert_eq!(named_state("ghz", Some(4), None, false).unwrap(), ghz(4).unwrap());
        assert_eq!(named_state("w", None, None, false).unwrap(), w_state(3).unwrap());
        assert_eq!(named_state("bell:psi-", None, None, false).unwrap(), bell(BellKind::PsiMinus));
        assert_eq!(named_state("bell:phi+", None, None, false).unwrap(), bell(BellKind::PhiPlus));
        assert_eq!(named_state("basis:100", None, None, false).unwrap(), basis_state(&[2, 2, 2], &[1, 0, 0]).unwrap());
        assert_eq!(
            named_state("basis:2,1", None, Some(&[3, 3]), false).unwrap(),
            basis_state(&[3, 3], &[2, 1]).unwrap()
        );
        let wc = named_state("wclass:1,1,0", None, None, true).unwrap();
        assert!((amp(&wc, 4).re - FRAC_1_SQRT_2).abs() < 1e-15);
        let wc = named_state("wclass:0.6,0+0.8i,0", None, None, false).unwrap();
        assert!((amp(&wc, 2).im - 0.8).abs() < 1e-15);
        assert!(named_state("cluster", None, None, false).is_err());
        assert!(named_state("bell:xyz", None, None, false).is_err());
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("-0.2i").unwrap(), C64::new(0.0, -0.2));
        assert_eq!(parse_complex("0.3-0.4i").unwrap(), C64::new(0.3, -0.4));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), C64::new(1e-3, 0.2));
        assert!(parse_complex("abc").is_err());
    }
}
