//! q-Pochhammer symbols and Gaussian binomials.
//!
//! All of these have integer exponents, so they are built densely and only
//! converted to [`QSeries`] at the end.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::ExactRational;
use super::series::{QSeries, Trunc};

/// Number of dense slots needed for a bound `n`: exponents `0..=floor(n)`.
fn dense_len(n: &ExactRational) -> usize {
    if n.is_negative() {
        0
    } else {
        n.floor_i64() as usize + 1
    }
}

/// Multiplies `c` in place by `1 - q^j`, discarding anything past `c.len()`.
pub(crate) fn mul_one_minus(c: &mut [BigInt], j: usize) {
    for i in (j..c.len()).rev() {
        if !c[i - j].is_zero() {
            let t = c[i - j].clone();
            c[i] -= t;
        }
    }
}

/// Multiplies `c` in place by `1 / (1 - q^j)` as a power series, truncated to
/// `c.len()` slots. Also serves as exact division when `(1 - q^j)` divides.
pub(crate) fn div_one_minus(c: &mut [BigInt], j: usize) {
    for i in j..c.len() {
        if !c[i - j].is_zero() {
            let t = c[i - j].clone();
            c[i] += t;
        }
    }
}

/// Dense `1/(q)_n` with `len` coefficients; all zero for `n < 0`.
pub(crate) fn inv_poch_dense(n: i64, len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    if n < 0 || len == 0 {
        return c;
    }
    c[0] = BigInt::one();
    for j in 1..=(n as usize).min(len.saturating_sub(1)) {
        div_one_minus(&mut c, j);
    }
    c
}

/// Dense Gaussian binomial, exactly, as the coefficient list of degree
/// `n (m - n)`. Empty (the zero polynomial) outside `0 <= n <= m`.
pub(crate) fn gauss_binom_dense(m: i64, n: i64) -> Vec<BigInt> {
    if m < 0 || n < 0 || n > m {
        return Vec::new();
    }
    let n = n.min(m - n);
    let deg = (n * (m - n)) as usize;
    // Alternate numerator factors and exact divisions so that every
    // intermediate value is itself a Gaussian binomial [m - n + i, i].
    let mut c = vec![BigInt::zero(); deg + 1];
    c[0] = BigInt::one();
    for i in 1..=n {
        mul_one_minus(&mut c, (m - n + i) as usize);
        div_one_minus(&mut c, i as usize);
    }
    c
}

/// `(q)_n = prod_{j=1}^{n} (1 - q^j)`, truncated at `trunc`.
pub fn poch(n: u32, trunc: &ExactRational) -> QSeries {
    let len = dense_len(trunc);
    let mut c = vec![BigInt::zero(); len];
    if len > 0 {
        c[0] = BigInt::one();
    }
    for j in 1..=(n as usize).min(len.saturating_sub(1)) {
        mul_one_minus(&mut c, j);
    }
    QSeries::from_dense(&ExactRational::zero(), c, Trunc::at(trunc.clone()))
}

/// `1/(q)_n` as a power series truncated at `trunc`; the zero series for
/// `n < 0`.
pub fn inv_poch(n: i64, trunc: &ExactRational) -> QSeries {
    let c = inv_poch_dense(n, dense_len(trunc));
    QSeries::from_dense(&ExactRational::zero(), c, Trunc::at(trunc.clone()))
}

/// `1/(q)_inf`, the partition generating function, truncated at `trunc`.
pub fn euler_inverse(trunc: &ExactRational) -> QSeries {
    let len = dense_len(trunc);
    inv_poch(len as i64 - 1, trunc)
}

/// Gaussian binomial `[m, n] = (q)_m / ((q)_n (q)_{m-n})` as an exact
/// polynomial; zero when `n < 0`, `n > m` or `m < 0`.
pub fn gauss_binom(m: i64, n: i64) -> QSeries {
    QSeries::from_dense(&ExactRational::zero(), gauss_binom_dense(m, n), Trunc::Exact)
}
