use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{add_into, slots};
use crate::error::{Error, Result};
use crate::exactq::{div_one_minus, ExactRational, QSeries, Trunc};
use crate::minimal_model::ModelParams;

/// Signed theta sum `sum_n q^{pp' n^2 + (p'r - ps) n} - sum_n q^{pp' n^2 + (p'r + ps) n + rs}`
/// as dense coefficients of `q^0 .. q^{len-1}`.
fn theta(params: &ModelParams, r: i64, s: i64, len: usize) -> Result<Vec<BigInt>> {
    let (p, pp) = (params.p(), params.pp());
    let a = p * pp;
    let top = len as i64 - 1;
    let mut c = vec![BigInt::zero(); len];
    let one = [BigInt::one()];
    let terms = [(pp * r - p * s, 0, false), (pp * r + p * s, r * s, true)];
    let widest = pp * r + p * s;
    let mut n = 0i64;
    // Both exponents are at least a n^2 - widest |n|, increasing once |n|
    // passes the vertex.
    while a * n * n - widest * n <= top + r * s || 2 * a * n <= widest {
        for sign in if n == 0 { vec![0] } else { vec![n, -n] } {
            for &(b, shift, negate) in &terms {
                let e = a * sign * sign + b * sign + shift;
                if e < 0 {
                    return Err(Error::Internal(format!("theta exponent {e} < 0 at n = {sign}")));
                }
                if e <= top {
                    add_into(&mut c, &one, e as usize, negate);
                }
            }
        }
        n += 1;
    }
    Ok(c)
}

/// `chi_{r,s}` from the alternating theta sums over `(q)_inf`, truncated at `n`.
pub fn char_bosonic(params: &ModelParams, r: i64, s: i64, n: &ExactRational) -> Result<QSeries> {
    let delta = params.conformal_dim(r, s)?;
    let len = slots(&delta, n);
    let mut c = theta(params, r, s, len)?;
    for j in 1..len {
        div_one_minus(&mut c, j);
    }
    Ok(QSeries::from_dense(&delta, c, Trunc::at(n.clone())))
}
