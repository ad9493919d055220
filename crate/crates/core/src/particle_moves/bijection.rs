//! The maps `iota_0` and `iota_m` from level `t - 1` to level `t`, and
//! their inverse.

use super::blocks::blocks_unchecked;
use super::moves::{apply_move_unchecked, Dir};
use super::rigging::{rigging_unchecked, Partition};
use crate::error::{Error, Result};
use crate::exactq::ExactRational;
use crate::minimal_model::ModelParams;
use crate::path_comb::{first_violation, require_admissible, RiggedPath, Rules};

/// `1/2 + w^{(t-1)}(a, b, c) - w^{(t)}(a, b, c)`: 0 on monotone triples, 1
/// on interior turns, 2 on the boundary turns.
fn shift(lower: &ModelParams, upper: &ModelParams, a: i64, b: i64, c: i64) -> Result<i64> {
    let s = ExactRational::ratio(1, 2) + lower.w(a, b, c) - upper.w(a, b, c);
    let s = s
        .to_i64()
        .ok_or_else(|| Error::Internal(format!("rigging shift at ({a},{b},{c}) is {s}")))?;
    let p = upper.p();
    let expected = if a != c {
        0
    } else if a == 1 || a == p - 1 {
        2
    } else {
        1
    };
    if s != expected {
        return Err(Error::Internal(format!("rigging shift at ({a},{b},{c}) is {s}, expected {expected}")));
    }
    Ok(s)
}

fn shifts(lower: &ModelParams, upper: &ModelParams, path: &RiggedPath) -> Result<Vec<i64>> {
    let mut out = vec![0; path.len()];
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = shift(lower, upper, path.r(i + 1), path.r(i), path.r(i - 1))?;
    }
    Ok(out)
}

/// `iota_0`: shifts the riggings of a level-`t - 1` path to level `t`.
/// The image is particle-free.
pub fn iota0(params: &ModelParams, pbar: &RiggedPath) -> Result<RiggedPath> {
    let lower = params.lower_level()?;
    require_admissible(&lower, pbar)?;
    let sh = shifts(&lower, params, pbar)?;
    let sigma: Vec<i64> = pbar.riggings().iter().zip(&sh).map(|(s, d)| s + d).collect();
    let out = RiggedPath::from_indexed(pbar.heights().to_vec(), sigma)?;
    if let Some(v) = first_violation(params, &out, Rules::default()) {
        return Err(Error::Internal(format!("iota_0({pbar}) = {out} is inadmissible: {v}")));
    }
    if !blocks_unchecked(params, &out)?.is_empty() {
        return Err(Error::Internal(format!("iota_0({pbar}) = {out} has particles")));
    }
    Ok(out)
}

/// `P_(m)`: `2m` alternating columns `1, 2` with riggings `0, 0, v, 0, v, ...`
/// from index 0, followed by `p0` shifted up by `2m` (its `sigma_0` raised by
/// `v(1)`).
fn ground_pattern(params: &ModelParams, p0: &RiggedPath, m: usize) -> Result<RiggedPath> {
    let v1 = params.v(1);
    let mut r = Vec::with_capacity(p0.len() + 2 * m + 1);
    let mut sigma = Vec::with_capacity(p0.len() + 2 * m);
    for i in 0..2 * m {
        r.push(if i % 2 == 0 { 1 } else { 2 });
        sigma.push(if i % 2 == 0 && i > 0 { v1 } else { 0 });
    }
    r.extend_from_slice(p0.heights());
    for (k, &s) in p0.riggings().iter().enumerate() {
        sigma.push(if k == 0 { s + v1 } else { s });
    }
    let out = RiggedPath::from_indexed(r, sigma)?;
    if let Some(v) = first_violation(params, &out, Rules::default()) {
        return Err(Error::Internal(format!("ground pattern {out} is inadmissible: {v}")));
    }
    Ok(out)
}

fn strip_ground_pattern(params: &ModelParams, path: &RiggedPath, m: usize) -> Result<RiggedPath> {
    let v1 = params.v(1);
    let bad = || Error::Internal(format!("{path} with zero rigging is not a ground pattern for m = {m}"));
    if path.len() < 2 * m {
        return Err(bad());
    }
    for i in 0..2 * m {
        let r = if i % 2 == 0 { 1 } else { 2 };
        let s = if i % 2 == 0 && i > 0 { v1 } else { 0 };
        if path.r(i) != r || path.sigma(i) != s {
            return Err(bad());
        }
    }
    let r = path.heights()[2 * m..].to_vec();
    let mut sigma = path.riggings()[2 * m..].to_vec();
    if m > 0 {
        if let Some(s0) = sigma.first_mut() {
            *s0 -= v1;
        }
    }
    RiggedPath::from_indexed(r, sigma).map_err(|_| bad())
}

/// `iota_m(Pbar, lambda) = (M^+_m)^{lambda_m} ... (M^+_1)^{lambda_1} P_(m)`.
pub fn iota(params: &ModelParams, pbar: &RiggedPath, lam: &Partition) -> Result<RiggedPath> {
    let p0 = iota0(params, pbar)?;
    let m = lam.len();
    if m == 0 {
        return Ok(p0);
    }
    let mut cur = ground_pattern(params, &p0, m)?;
    for j in 1..=m {
        for _ in 0..lam.get(j) {
            cur = apply_move_unchecked(params, &cur, j, Dir::Plus)?.ok_or_else(|| {
                Error::Internal(format!("M+_{j} undefined on {cur} while building iota{lam}"))
            })?;
        }
    }
    Ok(cur)
}

/// The preimage `(Pbar, lambda)` of `path` under `iota`.
pub fn iota_inverse(params: &ModelParams, path: &RiggedPath) -> Result<(RiggedPath, Partition)> {
    let lower = params.lower_level()?;
    require_admissible(params, path)?;
    let lam = rigging_unchecked(params, path)?;
    let m = lam.len();
    let mut parts = lam.parts().to_vec();
    let mut cur = path.clone();
    loop {
        let next = |j: usize| parts.get(j).copied().unwrap_or(0);
        let Some(j) = (1..=m).rev().find(|&j| parts[j - 1] > next(j)) else {
            break;
        };
        cur = apply_move_unchecked(params, &cur, j, Dir::Minus)?
            .ok_or_else(|| Error::Internal(format!("M-_{j} undefined on {cur} although lambda = {parts:?}")))?;
        parts[j - 1] -= 1;
    }
    let p0 = strip_ground_pattern(params, &cur, m)?;
    let sh = shifts(&lower, params, &p0)?;
    let sigma: Vec<i64> = p0.riggings().iter().zip(&sh).map(|(s, d)| s - d).collect();
    let pbar = RiggedPath::from_indexed(p0.heights().to_vec(), sigma)?;
    if let Some(v) = first_violation(&lower, &pbar, Rules::default()) {
        return Err(Error::Internal(format!("preimage {pbar} of {path} is inadmissible at t - 1: {v}")));
    }
    Ok((pbar, lam))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path_comb::path_degree;

    fn path(r: &[i64], s: &[i64]) -> RiggedPath {
        RiggedPath::new(r, s).unwrap()
    }

    fn lam(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn iota0_examples() {
        let m = ModelParams::new(3, 7).unwrap();
        assert_eq!(iota0(&m, &RiggedPath::empty()).unwrap(), RiggedPath::empty());
        assert_eq!(iota0(&m, &path(&[1, 2, 1], &[0, 0])).unwrap(), path(&[1, 2, 1], &[2, 0]));
        assert_eq!(iota0(&m, &path(&[2, 1], &[3])).unwrap(), path(&[2, 1], &[3]));
    }

    #[test]
    fn iota_examples() {
        let m = ModelParams::new(3, 7).unwrap();
        let e = RiggedPath::empty();
        let p = iota(&m, &e, &lam(&[0])).unwrap();
        assert_eq!(p, path(&[1, 2, 1], &[0, 0]));
        assert_eq!(path_degree(&m, &p).unwrap(), ExactRational::from(2));
        assert_eq!(iota(&m, &e, &lam(&[0, 0])).unwrap(), path(&[1, 2, 1, 2, 1], &[0, 2, 0, 0]));
        let pbar = path(&[2, 1], &[3]);
        assert_eq!(iota(&m, &pbar, &Partition::default()).unwrap(), iota0(&m, &pbar).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let m = ModelParams::new(3, 7).unwrap();
        let (pb, l) = iota_inverse(&m, &path(&[1, 2, 1], &[0, 0])).unwrap();
        assert_eq!((pb, l), (RiggedPath::empty(), lam(&[0])));
        let (pb, l) = iota_inverse(&m, &path(&[2, 1], &[3])).unwrap();
        assert_eq!((pb, l), (path(&[2, 1], &[3]), Partition::default()));
        let (pb, l) = iota_inverse(&m, &path(&[1, 2, 1], &[0, 1])).unwrap();
        assert_eq!((pb, l), (RiggedPath::empty(), lam(&[2])));
    }
}
