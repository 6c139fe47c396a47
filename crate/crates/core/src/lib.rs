//! Entanglement measures for finite-dimensional quantum states and checks of
//! the monogamy and polygamy inequalities that constrain how entanglement is
//! distributed among several parties.
//!
//! Modules, bottom-up:
//!
//! - [`qcore`]: state types, partial traces, purification, sampling.
//! - [`states`]: GHZ, W, Bell and W-class constructors.
//! - [`entropy`]: linear, von Neumann, Rényi and Tsallis entropies.
//! - [`tangle`]: pure-state tangle and the closed-form two-qubit tangle.
//! - [`roof`]: numeric convex-roof minimization and maximization.
//! - [`monogamy`]: CKW monogamy, polygamy and violation searches.
//! - [`squashed`]: conditional mutual information and squashed-entanglement
//!   upper bounds.
//!
//! All logarithms are base 2, so one Bell pair carries one unit of
//! entanglement. The Tsallis family is the exception, see [`entropy::tsallis`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod entropy;
mod error;
pub mod monogamy;
pub mod qcore;
pub mod roof;
pub mod squashed;
pub mod states;
pub mod tangle;

pub use error::{Error, Result};
pub use qcore::{Bipartition, DensityOperator, PureState, State, WitnessOperator};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
