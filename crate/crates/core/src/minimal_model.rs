//! Minimal-model parameters `(p, p')` and the constants derived from them:
//! conformal dimensions, the weights `w` on path triples and the integers `v`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactq::ExactRational;

/// A validated coprime pair `(p, p')` with `t = p'/p`.
///
/// Built by [`ModelParams::new`] for a genuine minimal model (`p >= 3`,
/// `p' > p`), or by [`ModelParams::lower_level`], which steps `p' -> p' - p`
/// and may leave the `t > 1` regime. Lower levels with `t < 1` are only used
/// as the formal source of the particle bijection; every formula here is
/// still well defined for them.
#[derive(Clone)]
pub struct ModelParams {
    p: i64,
    pp: i64,
    t: ExactRational,
    /// `w(a, b, c)` for every valid triple, indexed by [`triple_index`].
    weights: Vec<Option<ExactRational>>,
    /// Same weights scaled by `4p`, all integral.
    weights_scaled: Vec<Option<i64>>,
    /// `v(r)` at index `r`, for `1 <= r <= p - 2`.
    v: Vec<i64>,
    /// `Delta_{r,1}` at index `r`.
    delta_r1: Vec<ExactRational>,
}

fn triple_index(a: i64, b: i64, c: i64) -> usize {
    (b as usize) * 4 + usize::from(a > b) * 2 + usize::from(c > b)
}

fn floor_rat(x: &ExactRational) -> ExactRational {
    ExactRational::from_integer(x.floor())
}

impl ModelParams {
    /// Validates `p >= 3`, `p' > p` and `gcd(p, p') = 1`.
    pub fn new(p: i64, pp: i64) -> Result<ModelParams> {
        if p < 3 {
            return Err(Error::InvalidModel(format!("p = {p} must be at least 3")));
        }
        if pp <= p {
            return Err(Error::InvalidModel(format!("p' = {pp} must exceed p = {p}")));
        }
        ModelParams::build(p, pp)
    }

    /// The model `(p, p' - p)` one level down, at `t - 1`.
    pub fn lower_level(&self) -> Result<ModelParams> {
        let pp = self.pp - self.p;
        if pp < 2 {
            return Err(Error::InvalidModel(format!(
                "({}, {}) has no lower level: p' - p = {pp}",
                self.p, self.pp
            )));
        }
        ModelParams::build(self.p, pp)
    }

    fn build(p: i64, pp: i64) -> Result<ModelParams> {
        if p < 3 || pp < 2 {
            return Err(Error::InvalidModel(format!("({p}, {pp}) out of range")));
        }
        if p.gcd(&pp) != 1 {
            return Err(Error::InvalidModel(format!("gcd({p}, {pp}) != 1")));
        }
        let t = ExactRational::ratio(pp, p);
        let mut m = ModelParams {
            p,
            pp,
            t,
            weights: vec![None; (p as usize + 1) * 4],
            weights_scaled: vec![None; (p as usize + 1) * 4],
            v: vec![0; p as usize],
            delta_r1: vec![ExactRational::zero(); p as usize],
        };
        let scale = 4 * p;
        for b in 1..p {
            for a in [b - 1, b + 1] {
                for c in [b - 1, b + 1] {
                    if (1..p).contains(&a) && (1..p).contains(&c) {
                        let w = m.weight_formula(a, b, c);
                        let ws = &w * scale;
                        let idx = triple_index(a, b, c);
                        m.weights_scaled[idx] = Some(ws.to_i64().ok_or_else(|| {
                            Error::Internal(format!("w({a},{b},{c}) = {w} not in Z/(4p)"))
                        })?);
                        m.weights[idx] = Some(w);
                    }
                }
            }
        }
        for r in 1..p {
            m.delta_r1[r as usize] = m.delta(r, 1);
        }
        for r in 1..=(p - 2) {
            m.v[r as usize] = m.v_from_weights(r)?;
        }
        Ok(m)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn pp(&self) -> i64 {
        self.pp
    }

    pub fn t(&self) -> &ExactRational {
        &self.t
    }

    /// `true` for a genuine minimal model with `t > 1`.
    pub fn is_minimal(&self) -> bool {
        self.pp > self.p
    }

    /// `floor(t)`.
    pub fn k(&self) -> i64 {
        self.pp / self.p
    }

    fn delta(&self, r: i64, s: i64) -> ExactRational {
        let t = &self.t;
        let a = t * r - s;
        let b = t - 1;
        (&a * &a - &b * &b) / (t * 4)
    }

    /// `Delta_{r,s} = ((r t - s)^2 - (t - 1)^2) / 4t`.
    pub fn conformal_dim(&self, r: i64, s: i64) -> Result<ExactRational> {
        if !(1..self.p).contains(&r) || !(1..self.pp).contains(&s) {
            return Err(Error::OutOfRange(format!(
                "(r, s) = ({r}, {s}) outside 1..{} x 1..{}",
                self.p - 1,
                self.pp - 1
            )));
        }
        Ok(self.delta(r, s))
    }

    /// `Delta_{r,1}` without range checks beyond `1 <= r <= p - 1`.
    pub fn delta_r1(&self, r: i64) -> &ExactRational {
        &self.delta_r1[r as usize]
    }

    /// `Delta_{2,1} = (3t - 2)/4`.
    pub fn delta21(&self) -> &ExactRational {
        &self.delta_r1[2]
    }

    /// The raw weight formulas; `(a, b, c)` must be a valid triple.
    fn weight_formula(&self, a: i64, b: i64, c: i64) -> ExactRational {
        let t = &self.t;
        let p = self.p;
        if a != c {
            return t / 2;
        }
        // Boundary turns (1,2,1) and (p-1,p-2,p-1).
        if (a == 1 && b == 2) || (a == p - 1 && b == p - 2) {
            return ExactRational::from(3) - t * 3 / 2;
        }
        let r = a;
        let rt = t * r;
        if b == r + 1 {
            ExactRational::from(2) - t / 2 + floor_rat(&rt) - &rt
        } else {
            ExactRational::from(1) - t / 2 - floor_rat(&rt) + &rt
        }
    }

    fn check_triple(&self, a: i64, b: i64, c: i64) -> Result<usize> {
        let inside = |x: i64| (1..self.p).contains(&x);
        if !(inside(a) && inside(b) && inside(c)) || (a - b).abs() != 1 || (b - c).abs() != 1 {
            return Err(Error::OutOfRange(format!("({a}, {b}, {c}) is not a path triple")));
        }
        Ok(triple_index(a, b, c))
    }

    /// `w(a, b, c)` for a path triple `|a - b| = |b - c| = 1`.
    pub fn weight_w(&self, a: i64, b: i64, c: i64) -> Result<ExactRational> {
        let idx = self.check_triple(a, b, c)?;
        Ok(self.weights[idx].clone().expect("weight table covers valid triples"))
    }

    /// `w(a, b, c)` for a triple already known to be valid.
    pub(crate) fn w(&self, a: i64, b: i64, c: i64) -> &ExactRational {
        self.weights[triple_index(a, b, c)].as_ref().expect("valid triple")
    }

    /// `4p * w(a, b, c)` for a triple already known to be valid.
    pub(crate) fn w_scaled(&self, a: i64, b: i64, c: i64) -> i64 {
        self.weights_scaled[triple_index(a, b, c)].expect("valid triple")
    }

    /// Denominator shared by every path degree of this model: `4p`.
    pub(crate) fn degree_scale(&self) -> i64 {
        4 * self.p
    }

    pub(crate) fn delta21_scaled(&self) -> i64 {
        (self.delta21() * self.degree_scale())
            .to_i64()
            .expect("Delta_{2,1} lies in Z/(4p)")
    }

    fn v_from_weights(&self, r: i64) -> Result<i64> {
        let v = ExactRational::one() - self.w(r, r + 1, r) - self.w(r + 1, r, r + 1);
        let v = v
            .to_i64()
            .ok_or_else(|| Error::Internal(format!("v({r}) = {v} is not an integer")))?;
        let t = &self.t;
        let p = self.p;
        let closed = if p == 3 {
            self.pp - 5
        } else if r == 1 || r == p - 2 {
            (t * 2 - 3).floor_i64()
        } else {
            (t * (r + 1)).floor_i64() - (t * r).floor_i64() - 2
        };
        if closed != v {
            return Err(Error::Internal(format!(
                "v({r}) = {v} from the weights but {closed} from the closed form"
            )));
        }
        Ok(v)
    }

    /// `v(r) = 1 - w(r, r+1, r) - w(r+1, r, r+1)` for `1 <= r <= p - 2`.
    pub fn v_int(&self, r: i64) -> Result<i64> {
        if !(1..=self.p - 2).contains(&r) {
            return Err(Error::OutOfRange(format!("v({r}) needs 1 <= r <= {}", self.p - 2)));
        }
        Ok(self.v[r as usize])
    }

    pub(crate) fn v(&self, r: i64) -> i64 {
        self.v[r as usize]
    }

    /// `max(0, max_r v(r))`.
    pub(crate) fn v_cap(&self) -> i64 {
        (1..=self.p - 2).map(|r| self.v(r)).max().unwrap_or(0).max(0)
    }
}

impl fmt::Debug for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModelParams({}, {})", self.p, self.pp)
    }
}

impl PartialEq for ModelParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.pp == other.pp
    }
}

impl Eq for ModelParams {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn m(p: i64, pp: i64) -> ModelParams {
        ModelParams::new(p, pp).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ModelParams::new(2, 5).is_err());
        assert!(ModelParams::new(4, 6).is_err());
        assert!(ModelParams::new(5, 4).is_err());
        assert!(ModelParams::new(3, 4).is_ok());
    }

    #[test]
    fn conformal_dims() {
        assert_eq!(m(3, 4).conformal_dim(1, 1).unwrap(), rat(0, 1));
        assert_eq!(m(3, 5).conformal_dim(2, 1).unwrap(), rat(3, 4));
        assert_eq!(m(4, 5).conformal_dim(3, 1).unwrap(), rat(3, 2));
        assert!(m(3, 5).conformal_dim(3, 1).is_err());
        assert!(m(3, 5).conformal_dim(1, 5).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(m(4, 5).weight_w(1, 2, 3).unwrap(), rat(5, 8));
        assert_eq!(m(3, 7).weight_w(1, 2, 1).unwrap(), rat(-1, 2));
        // 2 - t/2 + floor(2t) - 2t at t = 7/5, evaluated by hand.
        assert_eq!(m(5, 7).weight_w(2, 3, 2).unwrap(), rat(1, 2));
        assert!(m(4, 5).weight_w(1, 3, 1).is_err());
        assert!(m(4, 5).weight_w(0, 1, 2).is_err());
    }

    #[test]
    fn v_values() {
        assert_eq!(m(3, 7).v_int(1).unwrap(), 2);
        assert_eq!(m(5, 7).v_int(1).unwrap(), -1);
        assert_eq!(m(4, 9).v_int(2).unwrap(), 1);
        assert!(m(4, 9).v_int(3).is_err());
    }

    const GRID: &[(i64, i64)] = &[
        (3, 4), (3, 5), (4, 5), (3, 7), (5, 7), (3, 8), (4, 7), (5, 8), (4, 9), (3, 10),
        (5, 12), (7, 9), (6, 13), (7, 17),
    ];

    #[test]
    fn weight_symmetries() {
        for &(p, pp) in GRID {
            let mp = m(p, pp);
            for b in 1..p {
                for a in [b - 1, b + 1] {
                    for c in [b - 1, b + 1] {
                        let Ok(w) = mp.weight_w(a, b, c) else { continue };
                        assert_eq!(w, mp.weight_w(c, b, a).unwrap());
                        assert_eq!(w, mp.weight_w(p - a, p - b, p - c).unwrap(), "({p},{pp}) ({a},{b},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn v_symmetry_and_sign() {
        for &(p, pp) in GRID {
            let mp = m(p, pp);
            let vs: Vec<i64> = (1..=p - 2).map(|r| mp.v_int(r).unwrap()).collect();
            for r in 1..=p - 2 {
                assert_eq!(mp.v_int(r).unwrap(), mp.v_int(p - 1 - r).unwrap());
            }
            if pp < 2 * p {
                assert!(vs.iter().all(|&v| v <= 0), "({p},{pp}) {vs:?}");
            } else {
                assert!(vs.iter().all(|&v| v >= 0), "({p},{pp}) {vs:?}");
                assert!(vs[0] >= 1);
            }
        }
    }

    #[test]
    fn delta_minimum_at_r_one() {
        for &(p, pp) in GRID {
            let mp = m(p, pp);
            assert!(mp.conformal_dim(1, 1).unwrap().is_zero());
            for r in 2..p {
                assert!(mp.conformal_dim(r, 1).unwrap() > ExactRational::zero());
            }
            assert_eq!(mp.delta21(), &((mp.t() * 3 - 2) / 4));
        }
    }

    #[test]
    fn lower_level() {
        let low = m(3, 7).lower_level().unwrap();
        assert_eq!((low.p(), low.pp()), (3, 4));
        let formal = m(5, 7).lower_level().unwrap();
        assert!(!formal.is_minimal());
        assert!(m(3, 4).lower_level().is_err());
    }
}
