//! Reference implementations used only by the tests. They work from the
//! definitions in small-integer rational arithmetic and share no code with
//! the library beyond the path type.

#![allow(dead_code)]

use num_rational::Rational64 as Q;
use num_traits::{ToPrimitive, Zero};
use virapath::exactq::{ExactRational, QSeries};
use virapath::path_comb::RiggedPath;

pub const GRID: [(i64, i64); 10] =
    [(3, 4), (3, 5), (4, 5), (3, 7), (5, 7), (3, 8), (4, 7), (5, 8), (4, 9), (3, 10)];

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn to_exact(x: Q) -> ExactRational {
    ExactRational::ratio(*x.numer(), *x.denom())
}

pub fn from_exact(x: &ExactRational) -> Q {
    Q::new(x.numer().to_i64().unwrap(), x.denom().to_i64().unwrap())
}

/// Level data recomputed from scratch.
#[derive(Clone, Debug)]
pub struct Level {
    pub p: i64,
    pub pp: i64,
    pub t: Q,
}

impl Level {
    pub fn new(p: i64, pp: i64) -> Level {
        Level { p, pp, t: q(pp, p) }
    }

    pub fn delta(&self, r: i64, s: i64) -> Q {
        let t = self.t;
        let a = t * r - s;
        let b = t - 1;
        (a * a - b * b) / (t * 4)
    }

    /// The weight of a path triple, read off the four defining cases after
    /// the reflections `(a,b,c) -> (c,b,a)` and `x -> p - x`.
    pub fn w(&self, a: i64, b: i64, c: i64) -> Q {
        assert!((a - b).abs() == 1 && (b - c).abs() == 1, "({a},{b},{c})");
        let t = self.t;
        let p = self.p;
        if a != c {
            return t / 2;
        }
        if (a, b) == (1, 2) || (a, b) == (p - 1, p - 2) {
            return q(3, 1) - t * 3 / 2;
        }
        let rt = t * a;
        if b == a + 1 {
            q(2, 1) - t / 2 + rt.floor() - rt
        } else {
            q(1, 1) - t / 2 - rt.floor() + rt
        }
    }

    pub fn v(&self, r: i64) -> i64 {
        let v = q(1, 1) - self.w(r, r + 1, r) - self.w(r + 1, r, r + 1);
        assert!(v.is_integer(), "v({r}) = {v}");
        v.to_integer()
    }

    /// The tabulated closed form of `v`.
    pub fn v_closed(&self, r: i64) -> i64 {
        let t = self.t;
        if self.p == 3 {
            self.pp - 5
        } else if r == 1 || r == self.p - 2 {
            (t * 2 - 3).floor().to_integer()
        } else {
            (t * (r + 1)).floor().to_integer() - (t * r).floor().to_integer() - 2
        }
    }

    /// The ladder `r` if `r_{i-1}, r_i, r_{i+1}, r_{i+2}` all lie in `{r, r+1}`.
    fn window(&self, h: &[i64], i: usize) -> Option<i64> {
        let four = &h[i - 1..=i + 2];
        let lo = *four.iter().min().unwrap();
        let hi = *four.iter().max().unwrap();
        (hi == lo + 1 && lo >= 1 && lo <= self.p - 2).then_some(lo)
    }

    pub fn admissible(&self, h: &[i64], s: &[i64], window: bool) -> bool {
        let len = s.len();
        if h.len() != len + 1 || h[0] != 1 {
            return false;
        }
        if h.iter().any(|&x| x < 1 || x > self.p - 1) || h.windows(2).any(|x| (x[1] - x[0]).abs() != 1) {
            return false;
        }
        if s.iter().any(|&x| x < 0) {
            return false;
        }
        if window {
            for i in 1..len.saturating_sub(1) {
                if let Some(r) = self.window(h, i) {
                    if s[i] + s[i + 1] < self.v(r) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `L Delta_{2,1} + sum (L-i) w(r_{i+1}, r_i, r_{i-1})`.
    pub fn base_degree(&self, h: &[i64]) -> Q {
        let len = h.len() as i64 - 1;
        let mut d = self.delta(2, 1) * len;
        for i in 1..h.len() - 1 {
            d += self.w(h[i + 1], h[i], h[i - 1]) * (len - i as i64);
        }
        d
    }

    pub fn degree(&self, h: &[i64], s: &[i64]) -> Q {
        let len = s.len() as i64;
        let mut d = self.base_degree(h);
        for (i, &x) in s.iter().enumerate() {
            d += Q::from(x * (len - i as i64));
        }
        d
    }

    /// The exponents `n_1, ..., n_L` of the monomial attached to a rigged
    /// path, ascending.
    pub fn exponents(&self, h: &[i64], s: &[i64]) -> Vec<Q> {
        let mut n: Vec<Q> = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let next = if i == 0 {
                self.delta(2, 1) + s[0]
            } else {
                n[i - 1] + self.w(h[i + 1], h[i], h[i - 1]) + s[i]
            };
            n.push(next);
        }
        n
    }

    /// Every height sequence `1 = r_0, ..., r_L = r` inside `1..=p-1`.
    pub fn height_rows(&self, len: usize, r: i64) -> Vec<Vec<i64>> {
        fn go(lv: &Level, len: usize, r: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if cur.len() == len + 1 {
                if *cur.last().unwrap() == r {
                    out.push(cur.clone());
                }
                return;
            }
            let last = *cur.last().unwrap();
            for next in [last - 1, last + 1] {
                if next >= 1 && next < lv.p {
                    cur.push(next);
                    go(lv, len, r, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, len, r, &mut vec![1], &mut out);
        out
    }

    /// All paths of length `len` ending at `r` with degree at most `cap`,
    /// found by filtering the whole box of riggings each degree allows,
    /// with their degrees, sorted by descending rows.
    pub fn brute_force(&self, len: usize, r: i64, cap: Q, window: bool) -> Vec<(RiggedPath, Q)> {
        let mut out = Vec::new();
        for h in self.height_rows(len, r) {
            let room = cap - self.base_degree(&h);
            if room < Q::zero() {
                continue;
            }
            // Each rigging alone may use at most the whole budget.
            let bounds: Vec<i64> = (0..len).map(|i| (room / (len - i) as i64).floor().to_integer()).collect();
            let mut s = vec![0i64; len];
            loop {
                let d = self.degree(&h, &s);
                if d <= cap && self.admissible(&h, &s, window) {
                    out.push((RiggedPath::from_indexed(h.clone(), s.clone()).unwrap(), d));
                }
                let mut i = 0;
                while i < len && s[i] == bounds[i] {
                    s[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
                s[i] += 1;
            }
        }
        out.sort_by_key(|(p, _)| (p.heights_desc(), p.riggings_desc()));
        out
    }
}

/// Partition numbers `p(0..=n)` by Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Vec<i128> {
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc = 0i128;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * p[m - g2];
            }
            k += 1;
        }
        p[m] = acc;
    }
    p
}

/// Coefficients of `q^{Delta + j}`, `0 <= j <= n`, of the theta-sum
/// character, in machine integers.
pub fn bosonic_coeffs(p: i64, pp: i64, r: i64, s: i64, n: usize) -> Vec<i128> {
    let mut theta = vec![0i128; n + 1];
    let range = 4 * (n as i64 + 1);
    for k in -range..=range {
        let a = p * pp * k * k + (pp * r - p * s) * k;
        let b = p * pp * k * k + (pp * r + p * s) * k + r * s;
        if (0..=n as i64).contains(&a) {
            theta[a as usize] += 1;
        }
        if (0..=n as i64).contains(&b) {
            theta[b as usize] -= 1;
        }
    }
    let part = partition_numbers(n);
    (0..=n).map(|j| (0..=j).map(|i| theta[i] * part[j - i]).sum()).collect()
}

/// The coefficient of `q^e` in `f`, zero if absent.
pub fn coeff_at(f: &QSeries, e: Q) -> i128 {
    f.coeff(&to_exact(e)).map(|c| c.to_i128().unwrap()).unwrap_or(0)
}
