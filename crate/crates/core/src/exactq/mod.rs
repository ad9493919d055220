//! Exact arithmetic kernel: rationals, the extended-integer sentinel, and
//! truncated q-series with the q-Pochhammer family built on top.

mod ext_int;
mod pochhammer;
mod rational;
mod series;

pub use ext_int::ExtInt;
pub use pochhammer::{euler_inverse, gauss_binom, inv_poch, poch};
pub(crate) use pochhammer::{div_one_minus, gauss_binom_dense};
pub use rational::{rat, ExactRational};
pub use series::{Difference, QSeries, SeriesJson, Trunc};
