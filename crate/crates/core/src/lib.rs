//! Rigged paths at level `t = p'/p`, their graded characters, the particle
//! bijection between levels `t` and `t - 1`, and the Virasoro minimal-model
//! character formulas, all checked in exact truncated q-series arithmetic.

pub mod error;
pub mod characters;
pub mod cli;
pub mod exactq;
pub mod minimal_model;
pub mod particle_moves;
pub mod path_comb;

pub use error::{Error, Result};
pub use exactq::{ExactRational, ExtInt, QSeries, Trunc};
pub use minimal_model::ModelParams;
