use std::fmt;

use serde::Serialize;

use super::admissible::{check_structure, require_admissible, window_ladder};
use super::path::RiggedPath;
use crate::error::{Error, Result};
use crate::exactq::ExactRational;
use crate::minimal_model::ModelParams;

/// Exponents `n_1, ..., n_L` of a monomial together with its heights
/// `r_0, ..., r_L`. Stored by index; `n[i - 1] = n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialExponents {
    n: Vec<ExactRational>,
    r: Vec<i64>,
}

impl MonomialExponents {
    /// Rows given top index first: `n_desc = (n_L, ..., n_1)` and
    /// `r_desc = (r_L, ..., r_0)`. Only the lengths are checked here.
    pub fn new(n_desc: &[ExactRational], r_desc: &[i64]) -> Result<MonomialExponents> {
        if r_desc.len() != n_desc.len() + 1 {
            return Err(Error::MalformedPath(format!(
                "{} heights for {} exponents",
                r_desc.len(),
                n_desc.len()
            )));
        }
        Ok(MonomialExponents {
            n: n_desc.iter().rev().cloned().collect(),
            r: r_desc.iter().rev().copied().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    /// `n_i` for `1 <= i <= L`.
    pub fn n(&self, i: usize) -> &ExactRational {
        &self.n[i - 1]
    }

    pub fn heights(&self) -> &[i64] {
        &self.r
    }

    pub fn n_desc(&self) -> Vec<ExactRational> {
        self.n.iter().rev().cloned().collect()
    }

    pub fn r_desc(&self) -> Vec<i64> {
        self.r.iter().rev().copied().collect()
    }
}

/// The first condition an exponent list fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExponentViolation {
    /// `n_i` is off the lattice `Z + Delta_{r_i,1} - Delta_{r_{i-1},1}`.
    Coset { index: usize },
    /// `n_1 < Delta_{2,1}`.
    HighestWeight,
    /// `n_{i+1} - n_i < w(r_{i+1}, r_i, r_{i-1})`.
    Weight { index: usize },
    /// `n_{i+2} - n_i < 1` on a ladder window.
    Adjacent { index: usize },
}

impl fmt::Display for ExponentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentViolation::Coset { index } => write!(f, "n_{index} is off its lattice"),
            ExponentViolation::HighestWeight => write!(f, "highest-weight condition n_1 >= Delta_{{2,1}} fails"),
            ExponentViolation::Weight { index } => {
                write!(f, "weight condition n_{} - n_{index} >= w fails", index + 1)
            }
            ExponentViolation::Adjacent { index } => {
                write!(f, "adjacency condition n_{} - n_{index} >= 1 fails", index + 2)
            }
        }
    }
}

/// `n_1 = Delta_{2,1} + sigma_0` and `n_{i+1} = n_i + w(r_{i+1}, r_i, r_{i-1}) + sigma_i`.
pub fn exponents_from_path(params: &ModelParams, path: &RiggedPath) -> Result<MonomialExponents> {
    require_admissible(params, path)?;
    let mut n = Vec::with_capacity(path.len());
    if !path.is_empty() {
        n.push(params.delta21() + path.sigma(0));
    }
    for i in 1..path.len() {
        let next = &n[i - 1] + params.w(path.r(i + 1), path.r(i), path.r(i - 1)) + path.sigma(i);
        n.push(next);
    }
    Ok(MonomialExponents { n, r: path.heights().to_vec() })
}

/// The riggings implied by the exponents, before any sign or window check.
fn raw_sigma(params: &ModelParams, m: &MonomialExponents) -> std::result::Result<Vec<i64>, ExponentViolation> {
    let mut sigma = Vec::with_capacity(m.len());
    for i in 0..m.len() {
        let s = if i == 0 {
            m.n(1) - params.delta21()
        } else {
            m.n(i + 1) - m.n(i) - params.w(m.r[i + 1], m.r[i], m.r[i - 1])
        };
        sigma.push(s.to_i64().ok_or(ExponentViolation::Coset { index: i + 1 })?);
    }
    Ok(sigma)
}

fn structural_path(params: &ModelParams, m: &MonomialExponents) -> Result<RiggedPath> {
    let shape = RiggedPath::from_indexed(m.r.clone(), vec![0; m.len()])?;
    check_structure(params, &shape)?;
    Ok(shape)
}

/// `Ok(None)` iff the exponents satisfy the highest-weight, weight and
/// adjacency conditions. Malformed heights are an `Err`.
pub fn monomial_violation(params: &ModelParams, m: &MonomialExponents) -> Result<Option<ExponentViolation>> {
    structural_path(params, m)?;
    let sigma = match raw_sigma(params, m) {
        Ok(s) => s,
        Err(v) => return Ok(Some(v)),
    };
    if let Some(i) = sigma.iter().position(|&s| s < 0) {
        return Ok(Some(if i == 0 {
            ExponentViolation::HighestWeight
        } else {
            ExponentViolation::Weight { index: i }
        }));
    }
    for i in 1..m.len().saturating_sub(1) {
        if window_ladder(&m.r, i).is_some() && m.n(i + 2) - m.n(i) < ExactRational::one() {
            return Ok(Some(ExponentViolation::Adjacent { index: i }));
        }
    }
    Ok(None)
}

/// Inverse of [`exponents_from_path`].
pub fn path_from_exponents(params: &ModelParams, m: &MonomialExponents) -> Result<RiggedPath> {
    if let Some(v) = monomial_violation(params, m)? {
        return Err(Error::InadmissibleExponents(v.to_string()));
    }
    let sigma = raw_sigma(params, m).map_err(|v| Error::InadmissibleExponents(v.to_string()))?;
    let path = RiggedPath::from_indexed(m.r.clone(), sigma)?;
    // The two condition sets are meant to coincide; a disagreement is a bug.
    require_admissible(params, &path).map_err(|e| Error::Internal(format!("exponents admissible but path not: {e}")))?;
    Ok(path)
}

/// The `p = 3` form of admissibility stated directly on exponents:
/// `n_1 in Z_{>=0} + Delta_{2,1}`, `n_{i+1} - n_i >= 3 - p'/2` and
/// `n_{i+2} - n_i >= 1`.
///
/// Exponents off the lattice `n_i in Z - (-1)^i Delta_{2,1}` are reported as
/// not admissible, matching the generic check.
pub fn p3_admissible(pprime: i64, m: &MonomialExponents) -> Result<bool> {
    let params = ModelParams::new(3, pprime)?;
    structural_path(&params, m)?;
    let d = params.delta21();
    for i in 1..=m.len() {
        let lattice = if i % 2 == 1 { m.n(i) - d } else { m.n(i) + d };
        if !lattice.is_integer() {
            return Ok(false);
        }
    }
    if m.is_empty() {
        return Ok(true);
    }
    if (m.n(1) - d).is_negative() {
        return Ok(false);
    }
    let gap = ExactRational::ratio(6 - pprime, 2);
    for i in 1..m.len() {
        if m.n(i + 1) - m.n(i) < gap {
            return Ok(false);
        }
    }
    for i in 1..m.len().saturating_sub(1) {
        if m.n(i + 2) - m.n(i) < ExactRational::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `lam = (lambda_L, ..., lambda_1)` with `lambda_L >= ... >= lambda_1 >= 1`
/// and `lambda_{i+2} - lambda_i >= p' - 2`.
pub fn w3_monomial_admissible(pprime: i64, lam: &[i64]) -> bool {
    let up: Vec<i64> = lam.iter().rev().copied().collect();
    up.iter().all(|&x| x >= 1)
        && up.windows(2).all(|w| w[1] >= w[0])
        && up.windows(3).all(|w| w[2] - w[0] >= pprime - 2)
}
