//! Virasoro characters: the bosonic alternating sum, the fermionic sum over
//! the quadratic form `Q^(k)`, the per-length partial sums, and exact checks
//! of the identities relating them.

mod bosonic;
mod fermionic;
mod identities;
mod recurrence;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::exactq::{Difference, ExactRational, QSeries};

pub use bosonic::char_bosonic;
pub use fermionic::{char_fermionic, char_partial, kostka_poly, q_form_eval, QForm};
pub use identities::{f_k_series, verify_fk_identity, verify_gauss_identity};
pub use recurrence::{verify_char_recurrence, verify_main_theorem, verify_path_recurrence};

/// Outcome of a coefficient-wise comparison up to some bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    /// Smallest exponent with differing coefficients, with both values.
    pub first_diff: Option<Difference>,
}

impl Verdict {
    pub(crate) fn compare(left: &QSeries, right: &QSeries, n: &ExactRational) -> Result<Verdict> {
        let first_diff = left.first_difference(right, n)?;
        Ok(Verdict { ok: first_diff.is_none(), first_diff })
    }
}

/// Number of integer-spaced slots `e, e+1, ...` that stay `<= n`.
pub(crate) fn slots(e: &ExactRational, n: &ExactRational) -> usize {
    if e > n {
        0
    } else {
        (n - e).floor_i64() as usize + 1
    }
}

/// `acc[shift + i] += sign * src[i]` for every slot that exists in `acc`.
pub(crate) fn add_into(acc: &mut [BigInt], src: &[BigInt], shift: usize, negate: bool) {
    for (i, c) in src.iter().enumerate() {
        let Some(slot) = acc.get_mut(shift + i) else { break };
        if c.is_zero() {
            continue;
        }
        if negate {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
}
