use num_bigint::BigInt;
use num_traits::Zero;

use super::{add_into, slots};
use crate::error::{Error, Result};
use crate::exactq::{div_one_minus, gauss_binom_dense, ExactRational, QSeries, Trunc};
use crate::minimal_model::ModelParams;

/// The quadratic form `Q^(k)(m_0, ..., m_{k-1})`, stored as integer
/// coefficients of `4 Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QForm {
    k: usize,
    /// `quad[i][j]` (i <= j) multiplies `m_i m_j`.
    quad: Vec<Vec<i64>>,
    lin: Vec<i64>,
}

impl QForm {
    pub fn new(k: i64) -> Result<QForm> {
        if k < 1 {
            return Err(Error::OutOfRange(format!("k = {k} must be at least 1")));
        }
        let ku = k as usize;
        let mut quad = vec![vec![0; ku]; ku];
        let mut lin = vec![0; ku];
        quad[0][0] = k - 1;
        lin[0] = 2 * (k - 1);
        for j in 1..ku {
            let kj = 4 * (k - j as i64);
            quad[j][j] = kj;
            quad[0][j] = kj;
            lin[j] = kj;
            for (jj, c) in quad[j].iter_mut().enumerate().skip(j + 1) {
                *c = 8 * (k - jj as i64);
            }
        }
        Ok(QForm { k: ku, quad, lin })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `4 Q(m)`; `m` must have length `k`.
    pub(crate) fn eval4(&self, m: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.k {
            acc += self.lin[i] * m[i];
            for j in i..self.k {
                acc += self.quad[i][j] * m[i] * m[j];
            }
        }
        acc
    }

    pub fn eval(&self, m: &[i64]) -> Result<ExactRational> {
        if m.len() != self.k {
            return Err(Error::OutOfRange(format!("Q^({}) takes {} arguments, got {}", self.k, self.k, m.len())));
        }
        Ok(ExactRational::ratio(self.eval4(m), 4))
    }
}

pub fn q_form_eval(k: i64, m: &[i64]) -> Result<ExactRational> {
    QForm::new(k)?.eval(m)
}

/// The alternating binomial sum of `K_{m,r}` without its `q^{(m^2 - (r-1)^2)/4}`
/// prefactor, dense from `q^0`, cut to `len` slots if given. `None` when the
/// parity of `m` and `r - 1` differ.
fn kostka_inner(p: i64, pbar: i64, m: i64, r: i64, len: Option<usize>) -> Option<Vec<BigInt>> {
    if m < 0 || (m - r + 1).rem_euclid(2) != 0 {
        return None;
    }
    let lo = (m - r + 1) / 2;
    let hi = (m + r + 1) / 2;
    // Both binomials vanish once |p n| exceeds m + r.
    let reach = (m + r) / p + 1;
    let mut parts = Vec::new();
    for n in -reach..=reach {
        let e = p * pbar * n * n + pbar * n * r;
        for (bottom, negate) in [(lo - p * n, false), (hi + p * n, true)] {
            let b = gauss_binom_dense(m, bottom);
            if !b.is_empty() {
                parts.push((e as usize, b, negate));
            }
        }
    }
    let full = parts.iter().map(|(e, b, _)| e + b.len()).max().unwrap_or(0);
    let mut c = vec![BigInt::zero(); len.unwrap_or(full)];
    for (e, b, negate) in &parts {
        add_into(&mut c, b, *e, *negate);
    }
    Some(c)
}

/// `K^{(p, pbar)}_{m,r}`, an exact finite Laurent polynomial in `q^{1/4}`.
/// Zero when `m` and `r - 1` have different parity.
pub fn kostka_poly(p: i64, pbar: i64, m: i64, r: i64) -> QSeries {
    match kostka_inner(p, pbar, m, r, None) {
        Some(c) => QSeries::from_dense(&ExactRational::ratio(m * m - (r - 1) * (r - 1), 4), c, Trunc::Exact),
        None => QSeries::zero(Trunc::Exact),
    }
}

/// Shared data of one fermionic sum.
struct Fermionic<'a> {
    params: &'a ModelParams,
    r: i64,
    n: &'a ExactRational,
    form: QForm,
    pbar: i64,
    /// `Delta_{r,1} - (k-1)(r^2-1)/4 - (r-1)^2/4`: the exponent of the
    /// `m = 0` corner before `Q` and `m_0^2 / 4` are added.
    base: ExactRational,
}

impl<'a> Fermionic<'a> {
    fn new(params: &'a ModelParams, r: i64, n: &'a ExactRational) -> Result<Fermionic<'a>> {
        if !(1..params.p()).contains(&r) {
            return Err(Error::OutOfRange(format!("r = {r} outside 1..{}", params.p() - 1)));
        }
        let k = params.k();
        let pbar = params.pp() - k * params.p();
        // gcd(p, p') = 1 keeps t off the integers.
        if k < 1 || pbar <= 0 {
            return Err(Error::Internal(format!("(p, p') = ({}, {}) gives k = {k}, p' - kp = {pbar}", params.p(), params.pp())));
        }
        let base = params.delta_r1(r) - ExactRational::ratio((k - 1) * (r * r - 1) + (r - 1) * (r - 1), 4);
        Ok(Fermionic { params, r, n, form: QForm::new(k)?, pbar, base })
    }

    /// Exponent of the leading prefactor of the term at `m`.
    fn offset(&self, m: &[i64]) -> ExactRational {
        &self.base + ExactRational::ratio(self.form.eval4(m) + m[0] * m[0], 4)
    }

    fn term(&self, m: &[i64]) -> Option<QSeries> {
        let e = self.offset(m);
        let len = slots(&e, self.n);
        if len == 0 {
            return None;
        }
        let mut c = kostka_inner(self.params.p(), self.pbar, m[0], self.r, Some(len))?;
        for &mj in m {
            for i in 1..=(mj as usize).min(len - 1) {
                div_one_minus(&mut c, i);
            }
        }
        Some(QSeries::from_dense(&e, c, Trunc::at(self.n.clone())))
    }

    fn add(&self, acc: QSeries, m: &[i64]) -> QSeries {
        match self.term(m) {
            Some(t) => &acc + &t,
            None => acc,
        }
    }
}

/// Calls `f` on every vector of `k` nonnegative entries summing to `s`.
fn compositions(k: usize, s: i64, f: &mut impl FnMut(&[i64])) {
    fn go(cur: &mut Vec<i64>, k: usize, left: i64, f: &mut impl FnMut(&[i64])) {
        if cur.len() + 1 == k {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(cur, k, left - x, f);
            cur.pop();
        }
    }
    go(&mut Vec::with_capacity(k), k, s, f);
}

/// `chi_{r,1}` from the fermionic sum over `m_0, ..., m_{k-1} >= 0` with
/// `m_0 = r - 1 mod 2`, truncated at `n`.
pub fn char_fermionic(params: &ModelParams, r: i64, n: &ExactRational) -> Result<QSeries> {
    let f = Fermionic::new(params, r, n)?;
    let k = f.form.k();
    let mut acc = QSeries::zero(Trunc::at(n.clone()));
    // Every variable carries a square coefficient of at least 1/4 in
    // Q + m_0^2/4 and the rest is nonnegative, so a shell of total s starts
    // no lower than base + s^2 / 4k.
    let mut s = 0i64;
    while &f.base + ExactRational::ratio(s * s, 4 * k as i64) <= *n {
        compositions(k, s, &mut |m| {
            if (m[0] - r + 1).rem_euclid(2) == 0 {
                acc = f.add(std::mem::replace(&mut acc, QSeries::zero(Trunc::Exact)), m);
            }
        });
        s += 1;
    }
    Ok(acc)
}

/// `chi_{r,1;L}`: the fermionic sum restricted to `m_0 + 2(m_1 + ... + m_{k-1}) = L`.
pub fn char_partial(params: &ModelParams, r: i64, len: usize, n: &ExactRational) -> Result<QSeries> {
    let f = Fermionic::new(params, r, n)?;
    let k = f.form.k();
    let l = len as i64;
    let mut acc = QSeries::zero(Trunc::at(n.clone()));
    if (l - r + 1).rem_euclid(2) != 0 {
        return Ok(acc);
    }
    for half in 0..=l / 2 {
        if k == 1 && half > 0 {
            break;
        }
        let mut m = vec![l - 2 * half];
        let mut each = |rest: &[i64]| {
            m.truncate(1);
            m.extend_from_slice(rest);
            acc = f.add(std::mem::replace(&mut acc, QSeries::zero(Trunc::Exact)), &m);
        };
        if k == 1 {
            each(&[]);
        } else {
            compositions(k - 1, half, &mut each);
        }
    }
    Ok(acc)
}
