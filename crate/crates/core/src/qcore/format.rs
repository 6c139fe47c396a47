//! JSON state files.
//!
//! ```json
//! { "dims": [2, 2], "kind": "pure",  "data": [[re, im], ...] }
//! { "dims": [2],    "kind": "mixed", "data": [[[re, im], ...], ...] }
//! ```
//!
//! Mixed data is a row-major square matrix. Numbers are written with the
//! shortest representation that parses back to the identical `f64`, so a
//! write/read cycle is bit-exact.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DensityOperator, PureState, State, NORM_TOL};
use crate::roof::Ensemble;
use crate::{CMatrix, CVector, Error, Result, C64};

/// Loaded pure states may be off by this much in squared norm; they are
/// renormalized.
const LOAD_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Record {
    Pure { dims: Vec<usize>, data: Vec<[f64; 2]> },
    Mixed { dims: Vec<usize>, data: Vec<Vec<[f64; 2]>> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MemberRecord {
    probability: f64,
    #[serde(flatten)]
    state: Record,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EnsembleRecord {
    dims: Vec<usize>,
    kind: String,
    members: Vec<MemberRecord>,
}

fn pair(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

fn to_record(state: &State) -> Record {
    match state {
        State::Pure(p) => Record::Pure { dims: p.dims().to_vec(), data: p.amplitudes().iter().map(pair).collect() },
        State::Mixed(m) => {
            let mat = m.matrix();
            Record::Mixed {
                dims: m.dims().to_vec(),
                data: (0..mat.nrows()).map(|i| (0..mat.ncols()).map(|j| pair(&mat[(i, j)])).collect()).collect(),
            }
        }
    }
}

fn from_record(rec: Record) -> Result<State> {
    match rec {
        Record::Pure { dims, data } => {
            let v = CVector::from_iterator(data.len(), data.iter().map(|&[re, im]| C64::new(re, im)));
            let n2 = v.norm_squared();
            if (n2 - 1.0).abs() > LOAD_NORM_TOL {
                return Err(Error::state(format!("pure state has squared norm {n2}")));
            }
            let p =
                if (n2 - 1.0).abs() > NORM_TOL { PureState::normalized(dims, v)? } else { PureState::new(dims, v)? };
            Ok(State::Pure(p))
        }
        Record::Mixed { dims, data } => {
            let n = data.len();
            if data.iter().any(|row| row.len() != n) {
                return Err(Error::Format("mixed-state data is not a square matrix".into()));
            }
            let m = CMatrix::from_fn(n, n, |i, j| C64::new(data[i][j][0], data[i][j][1]));
            Ok(State::Mixed(DensityOperator::new(dims, m)?))
        }
    }
}

pub fn state_to_json(state: &State) -> String {
    serde_json::to_string(&to_record(state)).expect("state records always serialize")
}

pub fn state_from_json(text: &str) -> Result<State> {
    let rec: Record = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    from_record(rec)
}

pub fn write_state(path: impl AsRef<Path>, state: &State) -> Result<()> {
    std::fs::write(path, state_to_json(state) + "\n")?;
    Ok(())
}

pub fn read_state(path: impl AsRef<Path>) -> Result<State> {
    state_from_json(&std::fs::read_to_string(path)?)
}

/// Ensemble as a list of pure-state records each carrying a `probability`.
pub fn ensemble_to_json(e: &Ensemble) -> String {
    let rec = EnsembleRecord {
        dims: e.dims().to_vec(),
        kind: "ensemble".into(),
        members: e
            .members()
            .iter()
            .map(|(p, psi)| MemberRecord { probability: *p, state: to_record(&State::Pure(psi.clone())) })
            .collect(),
    };
    serde_json::to_string(&rec).expect("ensemble records always serialize")
}

pub fn ensemble_from_json(text: &str) -> Result<Ensemble> {
    let rec: EnsembleRecord = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if rec.kind != "ensemble" {
        return Err(Error::Format(format!("expected kind \"ensemble\", got \"{}\"", rec.kind)));
    }
    let members = rec
        .members
        .into_iter()
        .map(|m| match from_record(m.state)? {
            State::Pure(p) => Ok((m.probability, p)),
            State::Mixed(_) => Err(Error::Format("ensemble members must be pure".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(members)
}
