//! Exhaustive checks of the move lemmas and of the bijection `iota` over all
//! admissible paths below a length and degree cutoff.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::bijection::{iota, iota_inverse};
use super::blocks::blocks_unchecked;
use super::moves::{apply_move_unchecked, Dir};
use super::rigging::{rigging_unchecked, Partition};
use crate::error::Result;
use crate::exactq::ExactRational;
use crate::minimal_model::ModelParams;
use crate::path_comb::{degree_scaled, enumerate_scaled, is_admissible, unscale, RiggedPath, Rules};

/// Failure messages kept per report; the count is always exact.
const KEPT_FAILURES: usize = 20;

/// Instance counts per checked statement plus the failures seen. An
/// implication whose premise fails counts as checked and also as vacuous.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub checked: BTreeMap<String, u64>,
    pub vacuous: BTreeMap<String, u64>,
    pub failure_count: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn total(&self) -> u64 {
        self.checked.values().sum()
    }

    /// Checked instances whose premise held.
    pub fn applicable(&self) -> u64 {
        self.total() - self.vacuous.values().sum::<u64>()
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checked.entry(name.to_string()).or_insert(0) += 1;
        if !ok {
            self.fail(format!("{name}: {}", detail()));
        }
    }

    fn vacuous(&mut self, name: &str) {
        *self.checked.entry(name.to_string()).or_insert(0) += 1;
        *self.vacuous.entry(name.to_string()).or_insert(0) += 1;
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.vacuous {
            *self.vacuous.entry(k).or_insert(0) += v;
        }
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

/// Every `(L, r)` with `L <= max_len`, in a fixed order.
fn cases(params: &ModelParams, max_len: usize) -> Vec<(usize, i64)> {
    (0..=max_len).flat_map(|l| (1..params.p()).map(move |r| (l, r))).collect()
}

fn run_cases<F>(params: &ModelParams, max_len: usize, f: F) -> SuiteReport
where
    F: Fn(usize, i64) -> SuiteReport + Sync,
{
    let parts: Vec<SuiteReport> = cases(params, max_len).into_par_iter().map(|(l, r)| f(l, r)).collect();
    let mut out = SuiteReport::default();
    for p in parts {
        out.merge(p);
    }
    out
}

/// Moves on one path, memoized.
struct Moves<'a> {
    params: &'a ModelParams,
    memo: HashMap<(RiggedPath, usize, Dir), Option<RiggedPath>>,
    errors: Vec<String>,
}

impl<'a> Moves<'a> {
    fn new(params: &'a ModelParams) -> Self {
        Moves { params, memo: HashMap::new(), errors: Vec::new() }
    }

    fn apply(&mut self, p: &RiggedPath, j: usize, dir: Dir) -> Option<RiggedPath> {
        let key = (p.clone(), j, dir);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = match apply_move_unchecked(self.params, p, j, dir) {
            Ok(v) => v,
            Err(e) => {
                self.errors.push(e.to_string());
                None
            }
        };
        self.memo.insert(key, v.clone());
        v
    }

    fn then(&mut self, p: Option<RiggedPath>, j: usize, dir: Dir) -> Option<RiggedPath> {
        p.and_then(|p| self.apply(&p, j, dir))
    }

    fn power(&mut self, p: &RiggedPath, j: usize, dir: Dir, l: usize) -> Option<RiggedPath> {
        let mut cur = Some(p.clone());
        for _ in 0..l {
            cur = self.then(cur, j, dir);
        }
        cur
    }
}

fn particles(params: &ModelParams, p: &RiggedPath) -> Option<usize> {
    blocks_unchecked(params, p).ok().map(|b| b.iter().map(|b| b.particles).sum())
}

fn check_path(params: &ModelParams, p: &RiggedPath, rep: &mut SuiteReport) {
    let scale = params.degree_scale();
    let m = match particles(params, p) {
        Some(m) => m,
        None => {
            rep.fail(format!("blocks of {p} are inconsistent"));
            return;
        }
    };
    rep.check("particle_bound", m <= p.len() / 2, || format!("m({p}) = {m}"));
    let d = degree_scaled(params, p);
    let mut mv = Moves::new(params);
    let dirs = [Dir::Plus, Dir::Minus];

    for dir in dirs {
        for j in [0, m + 1] {
            rep.check("out_of_range_undefined", mv.apply(p, j, dir).is_none(), || format!("{dir}{j} on {p}"));
        }
    }

    // Membership, particle number and degree shift; and the inverse move.
    for dir in dirs {
        for j in 1..=m {
            let Some(q) = mv.apply(p, j, dir) else {
                rep.vacuous("inverse");
                continue;
            };
            let admissible = is_admissible(params, &q);
            rep.check("move_admissible", admissible, || format!("{dir}{j}: {p} -> {q}"));
            rep.check("move_shape", q.len() == p.len() && q.end() == p.end(), || format!("{dir}{j}: {p} -> {q}"));
            let mq = if admissible { particles(params, &q) } else { None };
            rep.check("move_particles", mq == Some(m), || format!("{dir}{j}: {p} -> {q} has {mq:?}"));
            let want = d + if dir == Dir::Plus { scale } else { -scale };
            rep.check("move_degree", degree_scaled(params, &q) == want, || format!("{dir}{j}: {p} -> {q}"));
            let back = mv.apply(&q, j, dir.opposite());
            rep.check("inverse", back.as_ref() == Some(p), || format!("{dir}{j} then back on {p}: {back:?}"));
        }
    }

    // Same-direction commutation. The excluded neighbour is j + 1 for M^+
    // and j - 1 for M^-.
    for dir in dirs {
        for i in 1..=m {
            for j in 1..=m {
                let excluded = match dir {
                    Dir::Plus => i == j + 1,
                    Dir::Minus => i + 1 == j,
                };
                if excluded || i == j {
                    continue;
                }
                let first = mv.apply(p, j, dir);
                let ij = mv.then(first, i, dir);
                if let Some(ij) = ij {
                    let second = mv.apply(p, i, dir);
                    let ji = mv.then(second, j, dir);
                    rep.check("commute_same", ji.as_ref() == Some(&ij), || {
                        format!("{dir}{i}{dir}{j} vs {dir}{j}{dir}{i} on {p}")
                    });
                } else {
                    rep.vacuous("commute_same");
                }
            }
        }
    }

    // Opposite-direction commutation for i != j.
    for dir in dirs {
        for i in 1..=m {
            for j in 1..=m {
                if i == j {
                    continue;
                }
                let first = mv.apply(p, j, dir.opposite());
                let ij = mv.then(first, i, dir);
                if let Some(ij) = ij {
                    let second = mv.apply(p, i, dir);
                    let ji = mv.then(second, j, dir.opposite());
                    rep.check("commute_opposite", ji.as_ref() == Some(&ij), || {
                        format!("{dir}{i} after {}{j} on {p}", dir.opposite())
                    });
                } else {
                    rep.vacuous("commute_opposite");
                }
            }
        }
    }

    // Neighbouring particles.
    for j in 1..m {
        let plus = mv.apply(p, j + 1, Dir::Plus);
        let minus = mv.apply(p, j, Dir::Minus);
        rep.check("neighbor_domain", plus.is_some() == minus.is_some(), || format!("+{} vs -{j} on {p}", j + 1));
        let a = mv.then(minus.clone(), j + 1, Dir::Plus);
        let b = mv.then(plus.clone(), j, Dir::Minus);
        rep.check("neighbor_commute", a == b, || format!("+{}-{j} vs -{j}+{} on {p}", j + 1, j + 1));
        for l in 1..=5 {
            let a = mv.power(p, j + 1, Dir::Plus, l).is_some();
            let b = mv.power(p, j, Dir::Minus, l).is_some();
            rep.check("neighbor_powers", a == b, || format!("(+{})^{l} vs (-{j})^{l} on {p}", j + 1));
            if !a && !b {
                break;
            }
        }
    }

    // Moves act on the rigging as unit vectors.
    let lam = match rigging_unchecked(params, p) {
        Ok(l) => l,
        Err(e) => {
            rep.fail(format!("rigging of {p}: {e}"));
            return;
        }
    };
    rep.check("rigging_length", lam.len() == m, || format!("{lam} on {p}"));
    for j in 1..=m {
        let up_ok = j == 1 || lam.get(j) < lam.get(j - 1);
        let down_ok = lam.get(j) > lam.get(j + 1);
        for (dir, allowed, delta) in [(Dir::Plus, up_ok, 1), (Dir::Minus, down_ok, -1)] {
            let q = mv.apply(p, j, dir);
            rep.check("rigging_domain", q.is_some() == allowed, || format!("{dir}{j} on {p} with {lam}"));
            if let Some(q) = q {
                let mut want = lam.parts().to_vec();
                want[j - 1] += delta;
                let got = rigging_unchecked(params, &q).ok();
                rep.check("rigging_change", got.as_ref().map(Partition::parts) == Some(&want[..]), || {
                    format!("{dir}{j}: {p} -> {q}, rigging {got:?}")
                });
            }
        }
    }

    for e in mv.errors {
        rep.fail(format!("move error: {e}"));
    }
}

/// Runs every move statement on every admissible path with `L <= max_len`
/// and degree at most `Delta_{r,1} + extra`.
pub fn move_lemma_suite(params: &ModelParams, max_len: usize, extra: &ExactRational) -> SuiteReport {
    run_cases(params, max_len, |l, r| {
        let mut rep = SuiteReport::default();
        let cutoff = params.delta_r1(r) + extra;
        for (p, _) in enumerate_scaled(params, l, r, &cutoff, Rules::default()) {
            check_path(params, &p, &mut rep);
        }
        rep
    })
}

/// Checks that `iota` and [`iota_inverse`] are mutually inverse on the
/// cutoff, that the image of `iota_m` is the `m`-particle stratum, and that
/// `d(iota_m(Pbar, lambda)) = d(Pbar) + |lambda| + L^2/4 + L/2`.
pub fn bijection_suite(params: &ModelParams, max_len: usize, extra: &ExactRational) -> Result<SuiteReport> {
    let lower = params.lower_level()?;
    Ok(run_cases(params, max_len, |l, r| {
        let mut rep = SuiteReport::default();
        let cutoff = params.delta_r1(r) + extra;
        let len = l as i64;
        let offset = ExactRational::ratio(len * len + 2 * len, 4);
        let targets: HashMap<RiggedPath, i64> =
            enumerate_scaled(params, l, r, &cutoff, Rules::default()).into_iter().collect();
        let mut seen: HashSet<RiggedPath> = HashSet::new();
        let budget = &cutoff - &offset;
        for m in 0..=l / 2 {
            for (pbar, dbar) in enumerate_scaled(&lower, l - 2 * m, r, &budget, Rules::default()) {
                let dbar = unscale(&lower, dbar);
                let room = (&budget - &dbar).floor_i64();
                for lam in Partition::all_bounded(m, room) {
                    let p = match iota(params, &pbar, &lam) {
                        Ok(p) => p,
                        Err(e) => {
                            rep.fail(format!("iota({pbar}, {lam}): {e}"));
                            continue;
                        }
                    };
                    let want = &dbar + lam.size() + &offset;
                    let got = targets.get(&p).map(|&d| unscale(params, d));
                    rep.check("image_in_target", got.is_some(), || format!("iota({pbar}, {lam}) = {p}"));
                    rep.check("degree_relation", got.as_ref().is_none_or(|d| *d == want), || {
                        format!("d(iota({pbar}, {lam})) = {got:?}, expected {want}")
                    });
                    rep.check("particle_stratum", particles(params, &p) == Some(m), || {
                        format!("iota_{m}({pbar}, {lam}) = {p}")
                    });
                    let back = iota_inverse(params, &p);
                    let ok = matches!(&back, Ok((b, bl)) if *b == pbar && *bl == lam);
                    rep.check("roundtrip_forward", ok, || format!("iota_inverse({p}) = {back:?}, expected ({pbar}, {lam})"));
                    rep.check("injective", seen.insert(p.clone()), || format!("{p} hit twice"));
                }
            }
        }
        let mut ordered: Vec<&RiggedPath> = targets.keys().collect();
        ordered.sort();
        for p in ordered {
            rep.check("surjective", seen.contains(p), || format!("{p} not in the image"));
            let ok = match iota_inverse(params, p) {
                Ok((pbar, lam)) => iota(params, &pbar, &lam).ok().as_ref() == Some(p),
                Err(_) => false,
            };
            rep.check("roundtrip_backward", ok, || format!("iota(iota_inverse({p})) differs"));
        }
        rep
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    #[test]
    fn small_move_suite_is_clean() {
        let m = ModelParams::new(4, 9).unwrap();
        let rep = move_lemma_suite(&m, 4, &rat(6, 1));
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.total() > 100);
    }

    #[test]
    fn small_bijection_suite_is_clean() {
        let m = ModelParams::new(3, 7).unwrap();
        let rep = bijection_suite(&m, 4, &rat(6, 1)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}
