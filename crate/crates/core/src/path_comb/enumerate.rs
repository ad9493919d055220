use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::admissible::Rules;
use super::degree_bound::{DegreeBound, State};
use super::path::RiggedPath;
use crate::exactq::{ExactRational, QSeries, Trunc};
use crate::minimal_model::ModelParams;

/// Default hard cap on the path length summed over in [`char_paths_total`].
pub const DEFAULT_L_CAP: usize = 64;

fn in_range(params: &ModelParams, r: i64) -> bool {
    (1..params.p()).contains(&r)
}

fn scaled_bound(params: &ModelParams, max_degree: &ExactRational) -> i64 {
    (max_degree * params.degree_scale()).floor_i64()
}

/// Minimum of `d(P)` over `C_{L,r}`, or `None` when the set is empty.
pub fn min_degree(params: &ModelParams, len: usize, r: i64) -> Option<ExactRational> {
    min_degree_scaled(params, len, r, Rules::default()).map(|d| super::unscale(params, d))
}

fn min_degree_scaled(params: &ModelParams, len: usize, r: i64, rules: Rules) -> Option<i64> {
    if !in_range(params, r) {
        return None;
    }
    DegreeBound::new(params, len, r, rules).min_total()
}

struct Search<'a, F> {
    bound: DegreeBound<'a>,
    len: usize,
    limit: i64,
    base: i64,
    r: Vec<i64>,
    sigma: Vec<i64>,
    visit: F,
}

impl<F: FnMut(&[i64], &[i64], i64)> Search<'_, F> {
    fn run(&mut self, j: usize, st: State, acc: i64) {
        if j == self.len {
            (self.visit)(&self.r, &self.sigma, acc + self.base);
            return;
        }
        let steps: Vec<_> = self.bound.steps(j, st).collect();
        for step in steps {
            let d = step.next_r;
            let mut x = step.lo;
            loop {
                let next = self.bound.next_state(st, d, x);
                let here = acc + self.bound.step_cost(j, st, d, x);
                let saturated = x >= self.bound.cap();
                match self.bound.remaining(j + 1, next) {
                    Some(rest) if here + rest <= self.limit => {
                        self.r.push(d);
                        self.sigma.push(x);
                        self.run(j + 1, next, here);
                        self.r.pop();
                        self.sigma.pop();
                    }
                    // Past the cap the state no longer changes and the cost
                    // only grows, so nothing further can fit.
                    _ if saturated => break,
                    _ => {}
                }
                x += 1;
            }
        }
    }
}

/// Calls `visit(r, sigma, scaled_degree)` for every path in `C_{L,r}` with
/// scaled degree at most `limit`, in depth-first order from index 0.
fn search<F: FnMut(&[i64], &[i64], i64)>(params: &ModelParams, len: usize, r: i64, limit: i64, rules: Rules, visit: F) {
    if !in_range(params, r) {
        return;
    }
    let bound = DegreeBound::new(params, len, r, rules);
    let base = len as i64 * params.delta21_scaled();
    if bound.min_total().is_none_or(|m| m > limit) {
        return;
    }
    let mut s = Search { bound, len, limit: limit - base, base, r: vec![1], sigma: Vec::new(), visit };
    s.run(0, State::start(), 0);
}

/// Paths of `C_{L,r}` with `d(P) <= max_degree` paired with their scaled
/// degrees, sorted by `(r_L, ..., r_0)` and then `(sigma_{L-1}, ..., sigma_0)`.
pub(crate) fn enumerate_scaled(
    params: &ModelParams,
    len: usize,
    r: i64,
    max_degree: &ExactRational,
    rules: Rules,
) -> Vec<(RiggedPath, i64)> {
    let mut out = Vec::new();
    search(params, len, r, scaled_bound(params, max_degree), rules, |rs, ss, d| {
        out.push((RiggedPath::from_parts_unchecked(rs.to_vec(), ss.to_vec()), d));
    });
    out.sort_by_cached_key(|(p, _)| (p.heights_desc(), p.riggings_desc()));
    out
}

pub fn enumerate_paths_with(
    params: &ModelParams,
    len: usize,
    r: i64,
    max_degree: &ExactRational,
    rules: Rules,
) -> Vec<RiggedPath> {
    enumerate_scaled(params, len, r, max_degree, rules).into_iter().map(|(p, _)| p).collect()
}

/// All admissible paths in `C_{L,r}` of degree at most `max_degree`, in
/// lexicographic order of the descending height row, then the descending
/// rigging row.
pub fn enumerate_paths(params: &ModelParams, len: usize, r: i64, max_degree: &ExactRational) -> Vec<RiggedPath> {
    enumerate_paths_with(params, len, r, max_degree, Rules::default())
}

pub fn enumerate_with_degrees(
    params: &ModelParams,
    len: usize,
    r: i64,
    max_degree: &ExactRational,
) -> Vec<(RiggedPath, ExactRational)> {
    enumerate_scaled(params, len, r, max_degree, Rules::default())
        .into_iter()
        .map(|(p, d)| (p, super::unscale(params, d)))
        .collect()
}

fn series_from_counts(params: &ModelParams, counts: BTreeMap<i64, u64>, n: &ExactRational) -> QSeries {
    QSeries::from_terms(
        counts.into_iter().map(|(d, c)| (super::unscale(params, d), BigInt::from(c))),
        Trunc::at(n.clone()),
    )
}

pub fn char_paths_with(params: &ModelParams, len: usize, r: i64, n: &ExactRational, rules: Rules) -> QSeries {
    let mut counts = BTreeMap::new();
    search(params, len, r, scaled_bound(params, n), rules, |_, _, d| {
        *counts.entry(d).or_insert(0u64) += 1;
    });
    series_from_counts(params, counts, n)
}

/// `sum_{P in C_{L,r}} q^{d(P)}` truncated at `n`.
pub fn char_paths(params: &ModelParams, len: usize, r: i64, n: &ExactRational) -> QSeries {
    char_paths_with(params, len, r, n, Rules::default())
}

/// The sum of [`char_paths`] over all lengths, with a record of which
/// lengths contributed and whether the length cap stopped the scan.
#[derive(Clone, Debug)]
pub struct PathCharacter {
    pub series: QSeries,
    /// Lengths of the right parity that were scanned, in order.
    pub lengths: Vec<usize>,
    /// `true` if the scan hit `l_cap` before two consecutive lengths had
    /// minimal degree above the truncation.
    pub cap_reached: bool,
}

/// `sum_L ch C_{L,r}` truncated at `n`. Lengths `L = r-1, r+1, ...` are
/// scanned until two consecutive ones have `min_degree > n`, or `L` would
/// exceed `l_cap`.
pub fn char_paths_total(params: &ModelParams, r: i64, n: &ExactRational, l_cap: usize) -> PathCharacter {
    let mut series = QSeries::zero(Trunc::at(n.clone()));
    let mut lengths = Vec::new();
    if !in_range(params, r) {
        return PathCharacter { series, lengths, cap_reached: false };
    }
    let limit = scaled_bound(params, n);
    let mut above = 0;
    let mut len = (r - 1) as usize;
    while above < 2 {
        if len > l_cap {
            return PathCharacter { series, lengths, cap_reached: true };
        }
        lengths.push(len);
        match min_degree_scaled(params, len, r, Rules::default()) {
            Some(m) if m <= limit => {
                above = 0;
                series = &series + &char_paths(params, len, r, n);
            }
            _ => above += 1,
        }
        len += 2;
    }
    PathCharacter { series, lengths, cap_reached: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;
    use crate::path_comb::{is_admissible, path_degree};

    fn m37() -> ModelParams {
        ModelParams::new(3, 7).unwrap()
    }

    #[test]
    fn min_degree_examples() {
        let m = m37();
        assert_eq!(min_degree(&m, 0, 1), Some(rat(0, 1)));
        assert_eq!(min_degree(&m, 2, 2), None);
        assert_eq!(min_degree(&m, 2, 1), Some(rat(2, 1)));
        assert_eq!(min_degree(&m, 1, 2), Some(rat(5, 4)));
    }

    #[test]
    fn enumeration_examples() {
        let m = m37();
        let ps = enumerate_paths(&m, 2, 1, &rat(4, 1));
        assert_eq!(ps.len(), 4);
        let sig: Vec<Vec<i64>> = ps.iter().map(|p| p.riggings_desc()).collect();
        assert_eq!(sig, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![2, 0]]);
        assert!(enumerate_paths(&m, 1, 1, &rat(100, 1)).is_empty());
        let one = enumerate_paths(&m, 1, 2, &rat(5, 4));
        assert_eq!(one, vec![RiggedPath::new(&[2, 1], &[0]).unwrap()]);
    }

    #[test]
    fn character_examples() {
        let m = m37();
        assert_eq!(char_paths(&m, 0, 1, &rat(10, 1)).to_string(), "1 + O(q^(10))");
        let c = char_paths(&m, 2, 1, &rat(6, 1));
        assert_eq!(c.to_string(), "q^2 + q^3 + 2q^4 + 2q^5 + 3q^6 + O(q^(6))");
        let c = char_paths(&m, 1, 2, &rat(13, 4));
        assert_eq!(c.to_string(), "q^(5/4) + q^(9/4) + q^(13/4) + O(q^(13/4))");
    }

    #[test]
    fn enumerated_paths_are_admissible_with_integral_offset() {
        for (p, pp) in [(3, 7), (4, 9), (5, 12), (3, 10)] {
            let m = ModelParams::new(p, pp).unwrap();
            for len in 0..=6 {
                for r in 1..p {
                    for (path, d) in enumerate_with_degrees(&m, len, r, &rat(10, 1)) {
                        assert!(is_admissible(&m, &path), "{path}");
                        assert_eq!(path_degree(&m, &path).unwrap(), d);
                        let off = &d - m.delta_r1(r);
                        assert!(off.is_integer() && !off.is_negative(), "{path}: {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn total_reports_lengths() {
        let m = m37();
        let t = char_paths_total(&m, 1, &rat(6, 1), DEFAULT_L_CAP);
        assert!(!t.cap_reached);
        assert_eq!(t.lengths.first(), Some(&0));
        let capped = char_paths_total(&m, 1, &rat(30, 1), 2);
        assert!(capped.cap_reached);
    }
}
