use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::ExtInt;

/// A rigged path of length `L`: heights `r_0, ..., r_L` with `r_0 = 1` and
/// unit steps, decorated by riggings `sigma_0, ..., sigma_{L-1}`.
///
/// Stored by index (`r[i] = r_i`). The text and JSON forms list both rows
/// from the top index down, `r_L, ..., r_0` and `sigma_{L-1}, ..., sigma_0`,
/// the way paths are usually written out.
///
/// Construction only checks the shape; the upper bound `r_i <= p - 1` and
/// the rigging constraints depend on the model and are checked by
/// [`path_admissible`](super::path_admissible).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RiggedPath {
    r: Vec<i64>,
    sigma: Vec<i64>,
}

impl RiggedPath {
    /// Both rows given top index first, e.g. `new(&[1, 2, 1], &[0, 0])`.
    pub fn new(r_desc: &[i64], sigma_desc: &[i64]) -> Result<RiggedPath> {
        let r = r_desc.iter().rev().copied().collect();
        let sigma = sigma_desc.iter().rev().copied().collect();
        RiggedPath::from_indexed(r, sigma)
    }

    /// Both rows indexed from 0: `r[i] = r_i`, `sigma[i] = sigma_i`.
    pub fn from_indexed(r: Vec<i64>, sigma: Vec<i64>) -> Result<RiggedPath> {
        if r.len() != sigma.len() + 1 {
            return Err(Error::MalformedPath(format!(
                "{} heights but {} riggings",
                r.len(),
                sigma.len()
            )));
        }
        if r[0] != 1 {
            return Err(Error::MalformedPath(format!("r_0 = {} but must be 1", r[0])));
        }
        for i in 0..sigma.len() {
            if (r[i + 1] - r[i]).abs() != 1 {
                return Err(Error::MalformedPath(format!(
                    "step r_{} - r_{} = {} is not +-1",
                    i + 1,
                    i,
                    r[i + 1] - r[i]
                )));
            }
        }
        if let Some(i) = r.iter().position(|&x| x < 1) {
            return Err(Error::MalformedPath(format!("r_{i} = {} < 1", r[i])));
        }
        Ok(RiggedPath { r, sigma })
    }

    pub(crate) fn from_parts_unchecked(r: Vec<i64>, sigma: Vec<i64>) -> RiggedPath {
        debug_assert_eq!(r.len(), sigma.len() + 1);
        RiggedPath { r, sigma }
    }

    /// The empty path (`L = 0`).
    pub fn empty() -> RiggedPath {
        RiggedPath { r: vec![1], sigma: Vec::new() }
    }

    /// `L`.
    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn r(&self, i: usize) -> i64 {
        self.r[i]
    }

    pub fn sigma(&self, i: usize) -> i64 {
        self.sigma[i]
    }

    /// `sigma_i` with the convention `sigma_L = Infinity`.
    pub fn sigma_ext(&self, i: usize) -> ExtInt {
        if i == self.len() {
            ExtInt::Infinity
        } else {
            ExtInt::Finite(self.sigma[i])
        }
    }

    /// `r_L`.
    pub fn end(&self) -> i64 {
        self.r[self.len()]
    }

    pub fn heights(&self) -> &[i64] {
        &self.r
    }

    pub fn riggings(&self) -> &[i64] {
        &self.sigma
    }

    pub fn heights_desc(&self) -> Vec<i64> {
        self.r.iter().rev().copied().collect()
    }

    pub fn riggings_desc(&self) -> Vec<i64> {
        self.sigma.iter().rev().copied().collect()
    }

    /// `r_L,...,r_0;s_{L-1},...,s_0`; the empty path is `1;`.
    pub fn to_text(&self) -> String {
        let join = |v: Vec<i64>| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        format!("{};{}", join(self.heights_desc()), join(self.riggings_desc()))
    }

    pub fn to_json(&self) -> PathJson {
        PathJson { r: self.heights_desc(), sigma: self.riggings_desc() }
    }

    pub fn from_json(json: &PathJson) -> Result<RiggedPath> {
        if json.r.is_empty() {
            return Err(Error::MalformedPath("no heights".into()));
        }
        RiggedPath::new(&json.r, &json.sigma)
    }
}

/// `{"r": [r_L, ..., r_0], "sigma": [sigma_{L-1}, ..., sigma_0]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub r: Vec<i64>,
    pub sigma: Vec<i64>,
}

impl FromStr for RiggedPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<RiggedPath> {
        let (rs, ss) = s
            .trim()
            .split_once(';')
            .ok_or_else(|| Error::MalformedPath(format!("missing ';' in {s:?}")))?;
        let parse_list = |part: &str| -> Result<Vec<i64>> {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::MalformedPath(format!("not an integer: {x:?}")))
                })
                .collect()
        };
        let r = parse_list(rs)?;
        if r.is_empty() {
            return Err(Error::MalformedPath("no heights".into()));
        }
        RiggedPath::new(&r, &parse_list(ss)?)
    }
}

impl fmt::Display for RiggedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RiggedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RiggedPath({})", self.to_text())
    }
}

impl Serialize for RiggedPath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RiggedPath {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = PathJson::deserialize(deserializer)?;
        RiggedPath::from_json(&json).map_err(serde::de::Error::custom)
    }
}
