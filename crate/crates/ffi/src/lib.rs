//! C interface to `monogamy-core`.
//!
//! States live behind the opaque [`MonoState`] handle. Every fallible call
//! returns a [`MonoStatus`] and writes its result through an out-pointer;
//! on failure [`mono_last_error`] describes what went wrong on the calling
//! thread. Strings handed out by the library are released with
//! [`mono_string_free`], states with [`mono_state_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use monogamy_core::entropy::EntropyKind;
use monogamy_core::monogamy::{monogamy_report, tau1, tau2};
use monogamy_core::qcore::format::{state_from_json, state_to_json};
use monogamy_core::qcore::{ginibre_random_density, haar_random_pure};
use monogamy_core::roof::RoofConfig;
use monogamy_core::squashed::squashed_upper_bound;
use monogamy_core::states::{bell, ghz, w_state, BellKind};
use monogamy_core::tangle::{concurrence, eof_two_qubit, pure_tangle, two_qubit_tangle};
use monogamy_core::{Bipartition, Error, PureState, State};

/// Opaque quantum state, pure or mixed.
pub struct MonoState(State);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidState = 3,
    DimensionMismatch = 4,
    InvalidCut = 5,
    InvalidArgument = 6,
    Numerical = 7,
    Io = 8,
    Format = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoBell {
    PsiPlus = 0,
    PsiMinus = 1,
    PhiPlus = 2,
    PhiMinus = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoEntropy {
    Linear = 0,
    VonNeumann = 1,
    /// Uses the `parameter` argument as the order α.
    Renyi = 2,
    /// Uses the `parameter` argument as the index q.
    Tsallis = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(MonoStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidState(_) => MonoStatus::InvalidState,
            Error::DimensionMismatch(_) => MonoStatus::DimensionMismatch,
            Error::InvalidCut(_) => MonoStatus::InvalidCut,
            Error::InvalidArgument(_) => MonoStatus::InvalidArgument,
            Error::Numerical(_) => MonoStatus::Numerical,
            Error::Io(_) => MonoStatus::Io,
            Error::Format(_) => MonoStatus::Format,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MonoStatus::NullPointer, format!("{what} is null"))
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MonoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MonoStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MonoStatus::Panic
        }
    }
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn state_ref<'a>(state: *const MonoState) -> Result<&'a State, Failure> {
    state.as_ref().map(|s| &s.0).ok_or_else(|| null("state"))
}

unsafe fn index_slice<'a>(data: *const usize, len: usize) -> Result<&'a [usize], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("index array"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn put_state(out: *mut *mut MonoState, state: State) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(MonoState(state))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(text).map_err(|_| Failure(MonoStatus::InvalidUtf8, "string contains NUL".into()))?;
    out.write(c.into_raw());
    Ok(())
}

fn as_pure(state: &State) -> Result<PureState, Failure> {
    match state {
        State::Pure(p) => Ok(p.clone()),
        State::Mixed(m) => {
            m.as_pure(1e-10).ok_or_else(|| Failure(MonoStatus::InvalidState, "a pure state is required".into()))
        }
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mono_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mono_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `state` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mono_state_free(state: *mut MonoState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_ghz(n: usize, out: *mut *mut MonoState) -> MonoStatus {
    guard(|| put_state(out, State::Pure(ghz(n)?)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_w(n: usize, out: *mut *mut MonoState) -> MonoStatus {
    guard(|| put_state(out, State::Pure(w_state(n)?)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_bell(kind: MonoBell, out: *mut *mut MonoState) -> MonoStatus {
    let kind = match kind {
        MonoBell::PsiPlus => BellKind::PsiPlus,
        MonoBell::PsiMinus => BellKind::PsiMinus,
        MonoBell::PhiPlus => BellKind::PhiPlus,
        MonoBell::PhiMinus => BellKind::PhiMinus,
    };
    guard(|| put_state(out, State::Pure(bell(kind))))
}

/// Haar-random pure state on subsystems of dimensions `dims[0..len]`.
///
/// # Safety
/// `dims` must point to `len` readable values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_haar(
    dims: *const usize,
    len: usize,
    seed: u64,
    out: *mut *mut MonoState,
) -> MonoStatus {
    guard(|| {
        let dims = index_slice(dims, len)?;
        put_state(out, State::Pure(haar_random_pure(dims, seed)?))
    })
}

/// Ginibre-random mixed state of the given rank.
///
/// # Safety
/// `dims` must point to `len` readable values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_ginibre(
    dims: *const usize,
    len: usize,
    rank: usize,
    seed: u64,
    out: *mut *mut MonoState,
) -> MonoStatus {
    guard(|| {
        let dims = index_slice(dims, len)?;
        put_state(out, State::Mixed(ginibre_random_density(dims, rank, seed)?))
    })
}

/// Parse the JSON state format used by the command-line tool.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_from_json(json: *const c_char, out: *mut *mut MonoState) -> MonoStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text =
            CStr::from_ptr(json).to_str().map_err(|_| Failure(MonoStatus::InvalidUtf8, "json is not UTF-8".into()))?;
        put_state(out, state_from_json(text)?)
    })
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes. The string
/// written to `out` is released with [`mono_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mono_state_to_json(state: *const MonoState, out: *mut *mut c_char) -> MonoStatus {
    guard(|| put_string(out, state_to_json(state_ref(state)?)))
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_parties(state: *const MonoState, out: *mut usize) -> MonoStatus {
    guard(|| put(out, state_ref(state)?.parties()))
}

/// 1 for a pure handle, 0 for a mixed one.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_is_pure(state: *const MonoState, out: *mut i32) -> MonoStatus {
    guard(|| put(out, matches!(state_ref(state)?, State::Pure(_)) as i32))
}

/// Partial trace onto the subsystems `keep[0..len]`, in that order.
///
/// # Safety
/// `state` must be a live handle, `keep` must point to `len` readable values
/// and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_state_reduce(
    state: *const MonoState,
    keep: *const usize,
    len: usize,
    out: *mut *mut MonoState,
) -> MonoStatus {
    guard(|| {
        let keep = index_slice(keep, len)?;
        let reduced = match state_ref(state)? {
            State::Pure(p) => p.reduce(keep)?,
            State::Mixed(m) => m.partial_trace(keep)?,
        };
        put_state(out, State::Mixed(reduced))
    })
}

/// Tangle of a pure state across `side_a` versus the remaining subsystems.
///
/// # Safety
/// `state` must be a live handle, `side_a` must point to `len` readable
/// values and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_pure_tangle(
    state: *const MonoState,
    side_a: *const usize,
    len: usize,
    out: *mut f64,
) -> MonoStatus {
    guard(|| {
        let psi = as_pure(state_ref(state)?)?;
        let cut = Bipartition::split(index_slice(side_a, len)?, psi.parties())?;
        put(out, pure_tangle(&psi, &cut)?.value)
    })
}

/// Closed-form tangle of a two-qubit state.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_two_qubit_tangle(state: *const MonoState, out: *mut f64) -> MonoStatus {
    guard(|| put(out, two_qubit_tangle(&state_ref(state)?.density())?.value))
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_concurrence(state: *const MonoState, out: *mut f64) -> MonoStatus {
    guard(|| put(out, concurrence(&state_ref(state)?.density())?))
}

/// Entanglement of formation of a two-qubit state, in bits.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_eof_two_qubit(state: *const MonoState, out: *mut f64) -> MonoStatus {
    guard(|| put(out, eof_two_qubit(&state_ref(state)?.density())?))
}

/// Entropy of the whole state. `parameter` is read only for Rényi and Tsallis.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_entropy(
    state: *const MonoState,
    kind: MonoEntropy,
    parameter: f64,
    out: *mut f64,
) -> MonoStatus {
    guard(|| {
        let kind = match kind {
            MonoEntropy::Linear => EntropyKind::Linear,
            MonoEntropy::VonNeumann => EntropyKind::VonNeumann,
            MonoEntropy::Renyi => EntropyKind::Renyi(parameter),
            MonoEntropy::Tsallis => EntropyKind::Tsallis(parameter),
        };
        put(out, kind.evaluate(&state_ref(state)?.density())?)
    })
}

/// Mean one-versus-rest tangle of a three-qubit pure state.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_tau1(state: *const MonoState, out: *mut f64) -> MonoStatus {
    guard(|| put(out, tau1(&as_pure(state_ref(state)?)?)?))
}

/// Mean pairwise tangle of a three-qubit pure state.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_tau2(state: *const MonoState, out: *mut f64) -> MonoStatus {
    guard(|| put(out, tau2(&as_pure(state_ref(state)?)?)?))
}

/// Tangle monogamy report for subsystem `focus`, as JSON. Roof terms use
/// the default optimizer settings with the given seed.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes. The string
/// written to `out` is released with [`mono_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mono_monogamy_report(
    state: *const MonoState,
    focus: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> MonoStatus {
    guard(|| {
        let report = monogamy_report(state_ref(state)?, focus, &RoofConfig::with_seed(seed))?;
        put_string(out, report.to_json())
    })
}

/// Upper bound on the squashed entanglement of a bipartite state using
/// extensions of dimension up to `d_e`.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mono_squashed_bound(
    state: *const MonoState,
    d_e: usize,
    seed: u64,
    out: *mut f64,
) -> MonoStatus {
    guard(|| put(out, squashed_upper_bound(&state_ref(state)?.density(), d_e, &RoofConfig::with_seed(seed))?.value))
}
