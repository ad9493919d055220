use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::minimal_model::ModelParams;
use crate::path_comb::{require_admissible, window_ladder, RiggedPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BlockKind {
    /// At least two connected positions.
    Multi,
    /// `{x}` with `sigma_x = 1` on `(1, 2, 1)` or `(p-1, p-2, p-1)`.
    SingleSigma1Boundary,
    /// `{x}` with `sigma_x = 0` and `r_{x+1} = r_{x-1}`.
    SingleSigma0,
}

/// A block of particles: an interval `min..=max` of positions in
/// `1..=L-1` carrying `particles` particles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub min: usize,
    pub max: usize,
    pub kind: BlockKind,
    pub particles: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.max - self.min + 1
    }
}

/// `r_{x+1} = r_{x-1}` for a position inside a block.
pub(crate) fn r_prime(path: &RiggedPath, x: usize) -> i64 {
    path.r(x + 1)
}

fn is_edge(params: &ModelParams, r: i64) -> bool {
    r == 1 || r == params.p() - 1
}

/// Positions `x` and `x - 1` (`2 <= x <= L-1`) are connected when they sit
/// on a ladder window and the window constraint is tight.
fn connected(params: &ModelParams, path: &RiggedPath, x: usize) -> bool {
    match window_ladder(path.heights(), x - 1) {
        Some(r) => path.sigma(x) + path.sigma(x - 1) == params.v(r),
        None => false,
    }
}

fn classify(params: &ModelParams, path: &RiggedPath, min: usize, max: usize) -> Option<BlockKind> {
    if max > min {
        return Some(BlockKind::Multi);
    }
    let x = min;
    let (a, b, c) = (path.r(x + 1), path.r(x), path.r(x - 1));
    let p = params.p();
    let boundary = (a, b, c) == (1, 2, 1) || (a, b, c) == (p - 1, p - 2, p - 1);
    match path.sigma(x) {
        1 if boundary => Some(BlockKind::SingleSigma1Boundary),
        0 if a == c => Some(BlockKind::SingleSigma0),
        _ => None,
    }
}

fn particles(params: &ModelParams, path: &RiggedPath, min: usize, max: usize) -> usize {
    let size = max - min + 1;
    let s = path.sigma(max);
    let edge = is_edge(params, r_prime(path, max));
    if s >= 2 || (s == 1 && !edge) {
        size / 2
    } else {
        size.div_ceil(2)
    }
}

/// Blocks of an admissible path, highest positions first. No admissibility
/// check; callers guarantee it.
pub(crate) fn blocks_unchecked(params: &ModelParams, path: &RiggedPath) -> Result<Vec<Block>> {
    let l = path.len();
    let mut out = Vec::new();
    if l < 2 {
        return Ok(out);
    }
    let mut min = 1;
    for x in 2..=l {
        if x < l && connected(params, path, x) {
            continue;
        }
        let max = x - 1;
        if let Some(kind) = classify(params, path, min, max) {
            let size = max - min + 1;
            if size % 2 == 1 && path.sigma(min) != path.sigma(max) {
                return Err(Error::Internal(format!(
                    "odd block {min}..={max} of {path} has sigma_min != sigma_max"
                )));
            }
            out.push(Block { min, max, kind, particles: particles(params, path, min, max) });
        }
        min = x;
    }
    out.reverse();
    Ok(out)
}

/// The blocks of `path`, ordered from the highest positions down.
pub fn find_blocks(params: &ModelParams, path: &RiggedPath) -> Result<Vec<Block>> {
    require_admissible(params, path)?;
    blocks_unchecked(params, path)
}

/// `m(P)`, the total number of particles.
pub fn particle_count(params: &ModelParams, path: &RiggedPath) -> Result<usize> {
    Ok(find_blocks(params, path)?.iter().map(|b| b.particles).sum())
}

/// Where the moves `M^+_j` and `M^-_j` act: particle index `j` mapped to its
/// position `x^+_P(j)` or `x^-_P(j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveDomains {
    pub plus: BTreeMap<usize, usize>,
    pub minus: BTreeMap<usize, usize>,
}

impl MoveDomains {
    pub fn plus_indices(&self) -> Vec<usize> {
        self.plus.keys().copied().collect()
    }

    pub fn minus_indices(&self) -> Vec<usize> {
        self.minus.keys().copied().collect()
    }
}

pub(crate) fn domains_from_blocks(path: &RiggedPath, blocks: &[Block]) -> MoveDomains {
    let mut d = MoveDomains::default();
    let pinned = path.len() >= 2 && path.sigma(0) == 0 && path.sigma(1) == 0;
    let mut before = 0;
    for b in blocks {
        d.plus.insert(before + 1, b.max);
        before += b.particles;
        if !(pinned && b.min == 1) {
            d.minus.insert(before, b.min);
        }
    }
    d
}

pub fn move_domains(params: &ModelParams, path: &RiggedPath) -> Result<MoveDomains> {
    let blocks = find_blocks(params, path)?;
    Ok(domains_from_blocks(path, &blocks))
}
