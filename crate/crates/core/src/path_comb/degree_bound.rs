//! Minimum completion cost for partially built paths.
//!
//! A path is built from index 0 upward: step `j` picks `sigma_j` and
//! `r_{j+1}`. The state before step `j` is `(r_{j-2}, r_{j-1}, r_j,
//! sigma_{j-1})`, which is all the window constraint at `j - 1` looks at.
//! Riggings enter the state clipped to `[0, max(0, max_r v(r))]`: a larger
//! value can never make a later window tighter.

use std::cell::RefCell;
use std::collections::HashMap;

use super::admissible::Rules;
use crate::minimal_model::ModelParams;

/// Heights use 0 for "no such index yet".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct State {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub s: i64,
}

impl State {
    pub fn start() -> State {
        State { a: 0, b: 0, c: 1, s: 0 }
    }
}

/// One possible step out of a state.
pub(crate) struct Step {
    pub next_r: i64,
    /// Smallest allowed `sigma_j`.
    pub lo: i64,
}

pub(crate) struct DegreeBound<'a> {
    params: &'a ModelParams,
    len: usize,
    target: i64,
    rules: Rules,
    cap: i64,
    memo: RefCell<HashMap<(usize, State), Option<i64>>>,
}

impl<'a> DegreeBound<'a> {
    pub fn new(params: &'a ModelParams, len: usize, target: i64, rules: Rules) -> Self {
        let cap = if rules.window { params.v_cap() } else { 0 };
        DegreeBound { params, len, target, rules, cap, memo: RefCell::new(HashMap::new()) }
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn clip(&self, sigma: i64) -> i64 {
        sigma.min(self.cap)
    }

    /// Steps available at index `j` from state `st`.
    pub fn steps(&self, j: usize, st: State) -> impl Iterator<Item = Step> + '_ {
        let p = self.params.p();
        [st.c - 1, st.c + 1]
            .into_iter()
            .filter(move |&d| d >= 1 && d < p)
            .map(move |d| {
                let window = self.rules.window && j >= 2 && st.a == st.c && st.b == d;
                let lo = if window {
                    (self.params.v(st.b.min(st.c)) - st.s).max(0)
                } else {
                    0
                };
                Step { next_r: d, lo }
            })
    }

    /// Scaled cost of step `j` choosing `sigma_j = x` and `r_{j+1} = d`.
    pub fn step_cost(&self, j: usize, st: State, d: i64, x: i64) -> i64 {
        let weight = (self.len - j) as i64;
        let mut cost = weight * x * self.params.degree_scale();
        if j >= 1 {
            cost += weight * self.params.w_scaled(d, st.c, st.b);
        }
        cost
    }

    pub fn next_state(&self, st: State, d: i64, x: i64) -> State {
        State { a: st.b, b: st.c, c: d, s: self.clip(x) }
    }

    /// Minimal scaled cost of steps `j..L`, or `None` if no completion ends
    /// at the target height.
    pub fn remaining(&self, j: usize, st: State) -> Option<i64> {
        if j == self.len {
            return (st.c == self.target).then_some(0);
        }
        // Parity and distance reachability.
        let left = (self.len - j) as i64;
        if (self.target - st.c).abs() > left || (self.target - st.c - left) % 2 != 0 {
            return None;
        }
        if let Some(v) = self.memo.borrow().get(&(j, st)) {
            return *v;
        }
        let mut best: Option<i64> = None;
        for step in self.steps(j, st) {
            let hi = step.lo.max(self.cap);
            for x in step.lo..=hi {
                let here = self.step_cost(j, st, step.next_r, x);
                if let Some(rest) = self.remaining(j + 1, self.next_state(st, step.next_r, x)) {
                    let total = here + rest;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
            }
        }
        self.memo.borrow_mut().insert((j, st), best);
        best
    }

    /// Minimal scaled degree over all admissible paths of this length ending
    /// at the target height.
    pub fn min_total(&self) -> Option<i64> {
        let base = self.len as i64 * self.params.delta21_scaled();
        self.remaining(0, State::start()).map(|c| c + base)
    }
}
