use std::fmt;

use serde::Serialize;

use super::blocks::blocks_unchecked;
use super::moves::{apply_move_unchecked, Dir};
use crate::error::{Error, Result};
use crate::minimal_model::ModelParams;
use crate::path_comb::{require_admissible, RiggedPath};

/// A weakly decreasing sequence of nonnegative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Partition> {
        if parts.iter().any(|&x| x < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfRange(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn zeros(m: usize) -> Partition {
        Partition(vec![0; m])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// The number of parts `m`, zeros included.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `lambda_j` for `1 <= j <= m`; `0` past the end.
    pub fn get(&self, j: usize) -> i64 {
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All partitions with exactly `m` parts and size at most `max_size`,
    /// in lexicographic order.
    pub fn all_bounded(m: usize, max_size: i64) -> Vec<Partition> {
        fn go(m: usize, cap: i64, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if cur.len() == m {
                out.push(Partition(cur.clone()));
                return;
            }
            for x in 0..=cap.min(budget) {
                cur.push(x);
                go(m, x, budget - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if max_size >= 0 {
            go(m, max_size, max_size, &mut Vec::with_capacity(m), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// How many times `M^-_j` can be applied in a row starting from `path`.
fn minus_run(params: &ModelParams, path: &RiggedPath, j: usize) -> Result<i64> {
    let mut cur = path.clone();
    let mut l = 0;
    while let Some(next) = apply_move_unchecked(params, &cur, j, Dir::Minus)? {
        cur = next;
        l += 1;
    }
    Ok(l)
}

pub(crate) fn rigging_unchecked(params: &ModelParams, path: &RiggedPath) -> Result<Partition> {
    let m: usize = blocks_unchecked(params, path)?.iter().map(|b| b.particles).sum();
    let mut parts = vec![0; m];
    let mut above = 0;
    for j in (1..=m).rev() {
        above += minus_run(params, path, j)?;
        parts[j - 1] = above;
    }
    Ok(Partition(parts))
}

/// `lambda(P)`: from `j = m(P)` down, `lambda_j - lambda_{j+1}` is the
/// longest run of `M^-_j` defined on `P`.
pub fn rigging(params: &ModelParams, path: &RiggedPath) -> Result<Partition> {
    require_admissible(params, path)?;
    rigging_unchecked(params, path)
}
