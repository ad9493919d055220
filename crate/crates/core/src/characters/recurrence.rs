use super::{char_bosonic, char_partial, Verdict};
use crate::error::{Error, Result};
use crate::exactq::{inv_poch, ExactRational, QSeries, Trunc};
use crate::minimal_model::ModelParams;
use crate::path_comb::{char_paths, char_paths_total};

/// The model `(p, p' - p)`, required to be a minimal model with `t - 1 > 1`.
fn reduced(params: &ModelParams) -> Result<ModelParams> {
    let (p, pp) = (params.p(), params.pp());
    if pp - p <= p {
        return Err(Error::InvalidModel(format!("({p}, {pp}) reduces to ({p}, {}), which needs p' - p > p", pp - p)));
    }
    ModelParams::new(p, pp - p)
}

/// `sum_{m=0}^{L/2} q^{L^2/4 + L/2} / (q)_m * lower(L - 2m)` truncated at `n`.
fn recurrence_rhs(len: usize, n: &ExactRational, lower: impl Fn(usize, &ExactRational) -> Result<QSeries>) -> Result<QSeries> {
    let l = len as i64;
    let pref = ExactRational::ratio(l * l + 2 * l, 4);
    let mut acc = QSeries::zero(Trunc::at(n.clone()));
    if pref > *n {
        return Ok(acc);
    }
    let room = n - &pref;
    for m in 0..=len / 2 {
        let term = &inv_poch(m as i64, &room) * &lower(len - 2 * m, &room)?;
        acc = &acc + &term.shift(&pref).truncate(n);
    }
    Ok(acc)
}

/// Checks the per-length character recurrence from `(p, p')` to `(p, p' - p)`
/// up to `n`.
pub fn verify_char_recurrence(params: &ModelParams, r: i64, len: usize, n: &ExactRational) -> Result<Verdict> {
    let lower = reduced(params)?;
    let lhs = char_partial(params, r, len, n)?;
    let rhs = recurrence_rhs(len, n, |l, room| char_partial(&lower, r, l, room))?;
    Verdict::compare(&lhs, &rhs, n)
}

/// The same recurrence on path characters at levels `t` and `t - 1`.
pub fn verify_path_recurrence(params: &ModelParams, r: i64, len: usize, n: &ExactRational) -> Result<Verdict> {
    let lower = reduced(params)?;
    if !(1..params.p()).contains(&r) {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..{}", params.p() - 1)));
    }
    let lhs = char_paths(params, len, r, n);
    let rhs = recurrence_rhs(len, n, |l, room| Ok(char_paths(&lower, l, r, room)))?;
    Verdict::compare(&lhs, &rhs, n)
}

/// `sum_L ch C_{L,r}` against the bosonic `chi_{r,1}` up to `n`. Running out
/// of lengths below `l_cap` is an error, not a mismatch.
pub fn verify_main_theorem(params: &ModelParams, r: i64, n: &ExactRational, l_cap: usize) -> Result<Verdict> {
    let chi = char_bosonic(params, r, 1, n)?;
    let paths = char_paths_total(params, r, n, l_cap);
    if paths.cap_reached {
        return Err(Error::CapReached(format!(
            "lengths up to {l_cap} did not exhaust degree {n} for ({}, {}), r = {r}",
            params.p(),
            params.pp()
        )));
    }
    Verdict::compare(&paths.series, &chi, n)
}
