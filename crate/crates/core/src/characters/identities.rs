//! Truncated checks of the q-Gauss multi-sum for `1/(q)_inf` and of the
//! `F_k` identity used to match the fermionic and bosonic sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{add_into, slots, Verdict};
use crate::error::{Error, Result};
use crate::exactq::{div_one_minus, euler_inverse, ExactRational, QSeries, Trunc};

/// `sum q^{N_0(N_0 + mu) + sum_{j>=1} N_j(N_j + tail)}` over
/// `(q)_{N_0+mu} (q)_{N_0} (q)_{N_1-N_0} ... (q)_{N_{vars-1} - N_{vars-2}}`,
/// dense from `q^0` with `len` slots. Only `N_0 <= N_1 <= ...` with
/// `N_0 + mu >= 0` contribute, and then every summand exponent is
/// nonnegative and strictly increasing in each `N_j`.
fn chain_sum(vars: usize, mu: i64, tail: i64, len: usize) -> Vec<BigInt> {
    struct Walk {
        vars: usize,
        mu: i64,
        tail: i64,
        top: i64,
        ns: Vec<i64>,
        acc: Vec<BigInt>,
    }
    impl Walk {
        fn emit(&mut self, e: i64) {
            let room = (self.top - e + 1) as usize;
            let mut c = vec![BigInt::zero(); room];
            c[0] = BigInt::one();
            let mut dens = vec![self.ns[0] + self.mu, self.ns[0]];
            dens.extend(self.ns.windows(2).map(|w| w[1] - w[0]));
            for d in dens {
                for i in 1..=(d as usize).min(room - 1) {
                    div_one_minus(&mut c, i);
                }
            }
            add_into(&mut self.acc, &c, e as usize, false);
        }

        fn go(&mut self, e: i64) {
            let j = self.ns.len();
            if j == self.vars {
                self.emit(e);
                return;
            }
            let (mut x, lin) = if j == 0 { ((-self.mu).max(0), self.mu) } else { (self.ns[j - 1], self.tail) };
            loop {
                let ej = e + x * (x + lin);
                if ej > self.top {
                    break;
                }
                self.ns.push(x);
                self.go(ej);
                self.ns.pop();
                x += 1;
            }
        }
    }
    let mut w = Walk { vars, mu, tail, top: len as i64 - 1, ns: Vec::with_capacity(vars), acc: vec![BigInt::zero(); len] };
    if len > 0 {
        w.go(0);
    }
    w.acc
}

fn dense_series(c: Vec<BigInt>, n: &ExactRational) -> QSeries {
    QSeries::from_dense(&ExactRational::zero(), c, Trunc::at(n.clone()))
}

/// `F_k(mu)`, truncated at `n`.
pub fn f_k_series(k: i64, mu: i64, n: &ExactRational) -> Result<QSeries> {
    if k < 1 {
        return Err(Error::OutOfRange(format!("k = {k} must be at least 1")));
    }
    let len = slots(&ExactRational::zero(), n);
    Ok(dense_series(chain_sum(k as usize, mu, mu + 1, len), n))
}

/// The `(l+1)`-fold sum against `1/(q)_inf`, compared up to `n`.
pub fn verify_gauss_identity(l: i64, mu: i64, n: &ExactRational) -> Result<Verdict> {
    if l < 0 {
        return Err(Error::OutOfRange(format!("l = {l} must be nonnegative")));
    }
    let len = slots(&ExactRational::zero(), n);
    let sum = dense_series(chain_sum(l as usize + 1, mu, mu, len), n);
    Verdict::compare(&sum, &euler_inverse(n), n)
}

/// `F_k(mu - 1) - q^mu F_k(-mu - 1)` against `(1 - q^mu) / (q)_inf` up to `n`.
pub fn verify_fk_identity(k: i64, mu: i64, n: &ExactRational) -> Result<Verdict> {
    let shifted = n - mu;
    let qmu = ExactRational::from(mu);
    let left = &f_k_series(k, mu - 1, n)? - &f_k_series(k, -mu - 1, &shifted)?.shift(&qmu);
    let right = &euler_inverse(n) - &euler_inverse(&shifted).shift(&qmu);
    Verdict::compare(&left, &right, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{inv_poch, rat};

    #[test]
    fn f1_at_zero_counts_partitions() {
        let f = f_k_series(1, 0, &rat(4, 1)).unwrap();
        assert_eq!(f.to_string(), "1 + q + 2q^2 + 3q^3 + 5q^4 + O(q^(4))");
    }

    #[test]
    fn negative_mu_kills_the_corner() {
        let f = f_k_series(2, -1, &rat(6, 1)).unwrap();
        assert_eq!(f.coeff(&rat(0, 1)).unwrap(), BigInt::zero());
    }

    #[test]
    fn f2_against_a_direct_double_sum() {
        let n = rat(3, 1);
        let mu = 1;
        let mut want = QSeries::zero(Trunc::at(n.clone()));
        for n0 in 0..4i64 {
            for n1 in n0..4i64 {
                let e = n0 * n0 + n1 * n1 + mu * n0 + (mu + 1) * n1;
                let den = &(&inv_poch(n0 + mu, &n) * &inv_poch(n0, &n)) * &inv_poch(n1 - n0, &n);
                want = &want + &den.shift(&rat(e, 1)).truncate(&n);
            }
        }
        assert!(f_k_series(2, mu, &n).unwrap().eq_up_to(&want, &n).unwrap());
    }

    #[test]
    fn identity_examples() {
        assert!(verify_gauss_identity(0, 0, &rat(10, 1)).unwrap().ok);
        assert!(verify_gauss_identity(2, 3, &rat(12, 1)).unwrap().ok);
        assert!(verify_gauss_identity(1, -2, &rat(10, 1)).unwrap().ok);
        assert!(verify_fk_identity(1, 1, &rat(10, 1)).unwrap().ok);
        assert!(verify_fk_identity(2, 0, &rat(10, 1)).unwrap().ok);
        assert!(verify_fk_identity(3, 2, &rat(8, 1)).unwrap().ok);
    }
}
