use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::blocks::{blocks_unchecked, domains_from_blocks, r_prime};
use crate::error::{Error, Result};
use crate::minimal_model::ModelParams;
use crate::path_comb::{first_violation, require_admissible, RiggedPath, Rules};

/// `Plus` moves a particle towards higher positions (raising the degree by
/// one), `Minus` back down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dir {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Dir {
    pub fn opposite(self) -> Dir {
        match self {
            Dir::Plus => Dir::Minus,
            Dir::Minus => Dir::Plus,
        }
    }

    /// `+1` or `-1`.
    fn sign(self) -> i64 {
        match self {
            Dir::Plus => 1,
            Dir::Minus => -1,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Plus => "+",
            Dir::Minus => "-",
        })
    }
}

/// One step of a move word, e.g. `+1` or `-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub dir: Dir,
    pub j: usize,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.dir, self.j)
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Move> {
        let s = s.trim();
        let (dir, rest) = match s.chars().next() {
            Some('+') => (Dir::Plus, &s[1..]),
            Some('-') => (Dir::Minus, &s[1..]),
            _ => return Err(Error::Parse(format!("move {s:?} must start with + or -"))),
        };
        let j = rest
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad particle index in {s:?}")))?;
        Ok(Move { dir, j })
    }
}

/// A comma-separated word such as `+1,+1,-2`; the empty string is the empty word.
pub fn parse_move_word(s: &str) -> Result<Vec<Move>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Adds `delta` to `sigma_i`; index `L` is the infinite sentinel and absorbs it.
fn bump(sigma: &mut [i64], i: usize, delta: i64) {
    if let Some(s) = sigma.get_mut(i) {
        *s += delta;
    }
}

fn offset(x: usize, d: i64) -> usize {
    (x as i64 + d) as usize
}

/// Applies the move at position `x` without any domain check.
fn move_at(params: &ModelParams, path: &RiggedPath, x: usize, dir: Dir) -> Result<RiggedPath> {
    let l = path.len();
    let e = dir.sign();
    let mut r = path.heights().to_vec();
    let mut sigma = path.riggings().to_vec();
    let rp = r_prime(path, x);
    if path.sigma(x) != 0 {
        sigma[x] -= 1;
        bump(&mut sigma, offset(x, -e), 1);
    } else if rp == 1 || rp == params.p() - 1 {
        sigma[x] = 1;
        bump(&mut sigma, offset(x, e), -1);
    } else {
        if x < 2 {
            return Err(Error::Internal(format!("reflection at x = {x} in {path}")));
        }
        let rx = path.r(x);
        let low = rx.min(rp);
        let eps = rp - rx;
        r[x] = 2 * rp - rx;
        // r_{x+2} beyond r_L only feeds the sentinel, so either branch is fine.
        let same = |i: usize| i > l || path.r(i) == rx;
        let ahead = offset(x, e);
        let behind = offset(x, -e);
        let d_ahead = if same(offset(x, 2 * e)) { -params.v(low) - 1 } else { params.v(low + eps) };
        let d_behind = if same(offset(x, -2 * e)) { -params.v(low) } else { params.v(low + eps) + 1 };
        bump(&mut sigma, ahead, d_ahead);
        bump(&mut sigma, behind, d_behind);
    }
    let out = RiggedPath::from_indexed(r, sigma)
        .map_err(|e| Error::Internal(format!("move at {x} on {path} broke the path shape: {e}")))?;
    if let Some(v) = first_violation(params, &out, Rules::default()) {
        return Err(Error::Internal(format!("move {dir} at x = {x} on {path} gave {out}, which violates {v}")));
    }
    Ok(out)
}

/// `M^dir_j P` on a path already known to be admissible.
pub(crate) fn apply_move_unchecked(
    params: &ModelParams,
    path: &RiggedPath,
    j: usize,
    dir: Dir,
) -> Result<Option<RiggedPath>> {
    let blocks = blocks_unchecked(params, path)?;
    let domains = domains_from_blocks(path, &blocks);
    let table = match dir {
        Dir::Plus => &domains.plus,
        Dir::Minus => &domains.minus,
    };
    match table.get(&j) {
        Some(&x) => move_at(params, path, x, dir).map(Some),
        None => Ok(None),
    }
}

/// `M^dir_j P`, or `Ok(None)` where the move is undefined (including any
/// `j` outside `1..=m(P)`).
pub fn apply_move(params: &ModelParams, path: &RiggedPath, j: usize, dir: Dir) -> Result<Option<RiggedPath>> {
    require_admissible(params, path)?;
    apply_move_unchecked(params, path, j, dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(r: &[i64], s: &[i64]) -> RiggedPath {
        RiggedPath::new(r, s).unwrap()
    }

    fn plus(m: &ModelParams, p: &RiggedPath) -> RiggedPath {
        apply_move(m, p, 1, Dir::Plus).unwrap().unwrap()
    }

    #[test]
    fn first_chain() {
        let m = ModelParams::new(3, 7).unwrap();
        let p = path(&[1, 2, 1], &[0, 0]);
        let p1 = plus(&m, &p);
        assert_eq!(p1, path(&[1, 2, 1], &[1, 0]));
        let p2 = plus(&m, &p1);
        assert_eq!(p2, path(&[1, 2, 1], &[0, 1]));
        assert_eq!(plus(&m, &p2), path(&[1, 2, 1], &[1, 1]));
        assert_eq!(apply_move(&m, &p, 1, Dir::Minus).unwrap(), None);
        assert_eq!(apply_move(&m, &p, 2, Dir::Plus).unwrap(), None);
    }

    #[test]
    fn reflection_chain() {
        // v(1) = 1 at t = 9/4.
        let m = ModelParams::new(4, 9).unwrap();
        let p = path(&[2, 1, 2, 1], &[0, 1, 0]);
        let q = plus(&m, &p);
        assert_eq!(q, path(&[2, 3, 2, 1], &[0, 0, 0]));
        assert_eq!(plus(&m, &q), path(&[2, 1, 2, 1], &[0, 2, 0]));
        assert_eq!(apply_move(&m, &q, 1, Dir::Minus).unwrap(), Some(p));
    }

    #[test]
    fn p3_reads_boundary_at_two() {
        // With p = 3 the middle column sits at r' = 2 = p - 1, so no reflection.
        let m = ModelParams::new(3, 7).unwrap();
        let q = plus(&m, &path(&[2, 1, 2, 1], &[0, 2, 0]));
        assert_eq!(q, path(&[2, 1, 2, 1], &[1, 2, 0]));
    }

    #[test]
    fn move_words() {
        let w = parse_move_word("+1,+1,-2").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w[2], Move { dir: Dir::Minus, j: 2 });
        assert!(parse_move_word("").unwrap().is_empty());
        assert!(parse_move_word("1").is_err());
        assert_eq!(w[0].to_string(), "+1");
    }
}
