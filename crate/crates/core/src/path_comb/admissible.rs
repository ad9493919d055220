use std::fmt;

use serde::Serialize;

use super::path::RiggedPath;
use crate::error::{Error, Result};
use crate::exactq::ExactRational;
use crate::minimal_model::ModelParams;

/// The first rigging constraint a path fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `sigma_index < 0`.
    NegativeRigging { index: usize, value: i64 },
    /// `sigma_index + sigma_{index+1} < v(ladder)` on a window inside
    /// `{ladder, ladder + 1}`.
    Window { index: usize, ladder: i64, required: i64, actual: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeRigging { index, value } => {
                write!(f, "sigma_{index} = {value} is negative")
            }
            Violation::Window { index, ladder, required, actual } => write!(
                f,
                "sigma_{index} + sigma_{} = {actual} < v({ladder}) = {required}",
                index + 1
            ),
        }
    }
}

/// Which constraints a level-`t` path must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rules {
    /// Enforce `sigma_i + sigma_{i+1} >= v(r)` on ladder windows.
    pub window: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { window: true }
    }
}

/// If `r_{i-1}, r_i, r_{i+1}, r_{i+2}` all lie in one ladder `{r, r + 1}`,
/// returns `r`. Only meaningful for `1 <= i <= L - 2`.
pub(crate) fn window_ladder(heights: &[i64], i: usize) -> Option<i64> {
    if i == 0 || i + 2 >= heights.len() {
        return None;
    }
    let (a, b, c, d) = (heights[i - 1], heights[i], heights[i + 1], heights[i + 2]);
    (a == c && b == d).then(|| a.min(b))
}

/// Shape checks that depend on the model: all heights within `1..=p-1`.
pub fn check_structure(params: &ModelParams, path: &RiggedPath) -> Result<()> {
    if let Some(i) = path.heights().iter().position(|&x| x > params.p() - 1) {
        return Err(Error::MalformedPath(format!(
            "r_{i} = {} exceeds p - 1 = {}",
            path.r(i),
            params.p() - 1
        )));
    }
    Ok(())
}

pub fn first_violation(params: &ModelParams, path: &RiggedPath, rules: Rules) -> Option<Violation> {
    let l = path.len();
    for i in 0..l {
        if path.sigma(i) < 0 {
            return Some(Violation::NegativeRigging { index: i, value: path.sigma(i) });
        }
    }
    if rules.window {
        for i in 1..l.saturating_sub(1) {
            if let Some(r) = window_ladder(path.heights(), i) {
                let need = params.v(r);
                let have = path.sigma(i) + path.sigma(i + 1);
                if have < need {
                    return Some(Violation::Window { index: i, ladder: r, required: need, actual: have });
                }
            }
        }
    }
    None
}

/// `Ok(None)` iff the path is admissible at level `t`; otherwise the first
/// violated constraint. Structural problems are an `Err`.
pub fn path_admissible(params: &ModelParams, path: &RiggedPath) -> Result<Option<Violation>> {
    check_structure(params, path)?;
    Ok(first_violation(params, path, Rules::default()))
}

pub fn is_admissible(params: &ModelParams, path: &RiggedPath) -> bool {
    matches!(path_admissible(params, path), Ok(None))
}

pub(crate) fn require_admissible(params: &ModelParams, path: &RiggedPath) -> Result<()> {
    match path_admissible(params, path)? {
        None => Ok(()),
        Some(v) => Err(Error::Inadmissible(v)),
    }
}

/// The degree scaled by `4p`, from the heights and riggings alone.
pub(crate) fn degree_scaled(params: &ModelParams, path: &RiggedPath) -> i64 {
    let l = path.len() as i64;
    let mut d = l * params.delta21_scaled();
    let s = params.degree_scale();
    for i in 1..path.len() {
        d += (l - i as i64) * params.w_scaled(path.r(i + 1), path.r(i), path.r(i - 1));
    }
    for i in 0..path.len() {
        d += (l - i as i64) * path.sigma(i) * s;
    }
    d
}

pub(crate) fn unscale(params: &ModelParams, scaled: i64) -> ExactRational {
    ExactRational::ratio(scaled, params.degree_scale())
}

/// `d(P) = L Delta_{2,1} + sum_{i=1}^{L-1} (L-i) w(r_{i+1}, r_i, r_{i-1})
///        + sum_{i=0}^{L-1} (L-i) sigma_i`.
pub fn path_degree(params: &ModelParams, path: &RiggedPath) -> Result<ExactRational> {
    require_admissible(params, path)?;
    let l = path.len() as i64;
    let mut d = params.delta21() * l;
    for i in 1..path.len() {
        d = d + params.w(path.r(i + 1), path.r(i), path.r(i - 1)) * (l - i as i64);
    }
    for i in 0..path.len() {
        d = d + ExactRational::from((l - i as i64) * path.sigma(i));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn path(r: &[i64], s: &[i64]) -> RiggedPath {
        RiggedPath::new(r, s).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let m = ModelParams::new(3, 7).unwrap();
        assert_eq!(path_admissible(&m, &path(&[1, 2, 1], &[0, 0])).unwrap(), None);
        // v(1) = 2 at t = 7/3; the window at i = 2 sums sigma_2 + sigma_3 = 1.
        let bad = path_admissible(&m, &path(&[1, 2, 1, 2, 1], &[0, 1, 0, 0])).unwrap();
        assert!(matches!(bad, Some(Violation::Window { required: 2, actual: 1, .. })), "{bad:?}");
        assert_eq!(path_admissible(&m, &path(&[1, 2, 1, 2, 1], &[0, 2, 0, 0])).unwrap(), None);
        let neg = path_admissible(&m, &path(&[2, 1], &[-1])).unwrap();
        assert_eq!(neg, Some(Violation::NegativeRigging { index: 0, value: -1 }));
    }

    #[test]
    fn structural_error_is_distinct() {
        let m = ModelParams::new(3, 7).unwrap();
        let p = path(&[3, 2, 1], &[0, 0]);
        assert!(matches!(path_admissible(&m, &p), Err(Error::MalformedPath(_))));
    }

    #[test]
    fn degree_examples() {
        let m = ModelParams::new(3, 7).unwrap();
        assert_eq!(path_degree(&m, &RiggedPath::empty()).unwrap(), rat(0, 1));
        assert_eq!(path_degree(&m, &path(&[2, 1], &[3])).unwrap(), rat(17, 4));
        for (p, pp) in [(3, 4), (4, 5), (3, 7), (5, 12)] {
            let m = ModelParams::new(p, pp).unwrap();
            let d = path_degree(&m, &path(&[1, 2, 1], &[0, 0])).unwrap();
            assert_eq!(d, rat(2, 1), "({p},{pp})");
        }
        let inadmissible = path(&[1, 2, 1, 2, 1], &[0, 1, 0, 0]);
        assert!(matches!(path_degree(&m, &inadmissible), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn scaled_degree_agrees() {
        let m = ModelParams::new(5, 12).unwrap();
        let p = path(&[2, 3, 4, 3, 2, 1, 2, 1], &[1, 0, 2, 0, 5, 1, 0]);
        assert_eq!(unscale(&m, degree_scaled(&m, &p)), path_degree(&m, &p).unwrap());
    }
}
