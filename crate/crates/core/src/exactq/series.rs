use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::ExactRational;
use crate::error::{Error, Result};

/// Truncation bound of a [`QSeries`].
///
/// `Finite(n)`: coefficients at exponents `<= n` are exact, everything above
/// is unknown. `Exact`: the series is a finite Laurent polynomial in rational
/// powers of `q`, known in full.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Trunc {
    Finite(ExactRational),
    Exact,
}

impl Trunc {
    pub fn at(n: ExactRational) -> Trunc {
        Trunc::Finite(n)
    }

    pub fn admits(&self, e: &ExactRational) -> bool {
        match self {
            Trunc::Finite(n) => e <= n,
            Trunc::Exact => true,
        }
    }

    pub fn finite(&self) -> Option<&ExactRational> {
        match self {
            Trunc::Finite(n) => Some(n),
            Trunc::Exact => None,
        }
    }

    pub fn min(&self, other: &Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Exact, t) | (t, Trunc::Exact) => t.clone(),
            (Trunc::Finite(a), Trunc::Finite(b)) => Trunc::Finite(a.clone().min(b.clone())),
        }
    }

    fn shifted(&self, e: &ExactRational) -> Trunc {
        match self {
            Trunc::Finite(n) => Trunc::Finite(n + e),
            Trunc::Exact => Trunc::Exact,
        }
    }

    fn wire(&self) -> String {
        match self {
            Trunc::Finite(n) => n.to_fraction_string(),
            Trunc::Exact => "inf".to_string(),
        }
    }
}

impl From<ExactRational> for Trunc {
    fn from(n: ExactRational) -> Self {
        Trunc::Finite(n)
    }
}

/// First exponent at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Difference {
    pub exponent: ExactRational,
    pub left: String,
    pub right: String,
}

/// Truncated formal power series in rational powers of `q` with
/// arbitrary-precision integer coefficients.
///
/// No zero coefficient is ever stored and every stored exponent is admitted by
/// the truncation bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<ExactRational, BigInt>,
    trunc: Trunc,
}

/// Terms of one residue class `frac + Z`, stored densely from `start`.
struct Coset {
    frac: ExactRational,
    start: i64,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(trunc: Trunc) -> QSeries {
        QSeries { terms: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: Trunc) -> QSeries {
        QSeries::monomial(ExactRational::zero(), BigInt::one(), trunc)
    }

    pub fn monomial(exp: ExactRational, coeff: BigInt, trunc: Trunc) -> QSeries {
        QSeries::from_terms([(exp, coeff)], trunc)
    }

    /// Sums repeated exponents; drops zero coefficients and exponents above
    /// the bound.
    pub fn from_terms<I>(terms: I, trunc: Trunc) -> QSeries
    where
        I: IntoIterator<Item = (ExactRational, BigInt)>,
    {
        let mut map: BTreeMap<ExactRational, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if !trunc.admits(&e) || c.is_zero() {
                continue;
            }
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        QSeries { terms: map, trunc }
    }

    /// Dense integer-spaced coefficients `coeffs[i]` at exponent `offset + i`.
    pub fn from_dense(offset: &ExactRational, coeffs: Vec<BigInt>, trunc: Trunc) -> QSeries {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| (offset + i as i64, c));
        QSeries::from_terms(terms, trunc)
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExactRational, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `e`, or `None` if `e` lies above the truncation bound.
    pub fn coeff(&self, e: &ExactRational) -> Option<BigInt> {
        if !self.trunc.admits(e) {
            return None;
        }
        Some(self.terms.get(e).cloned().unwrap_or_else(BigInt::zero))
    }

    pub fn valuation(&self) -> Option<&ExactRational> {
        self.terms.keys().next()
    }

    /// Lowers the truncation bound to `min(self.trunc, n)`.
    pub fn truncate(&self, n: &ExactRational) -> QSeries {
        let trunc = self.trunc.min(&Trunc::Finite(n.clone()));
        let terms = self
            .terms
            .range(..=n.clone())
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        QSeries { terms, trunc }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: &ExactRational) -> QSeries {
        QSeries {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
            trunc: self.trunc.shifted(e),
        }
    }

    pub fn scale(&self, c: &BigInt) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.trunc.clone());
        }
        QSeries {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    /// Sum of all stored coefficients (the value at `q = 1` for an exact
    /// polynomial).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc == Trunc::Exact
    }

    /// Compares coefficients at every exponent `<= n`.
    ///
    /// Both truncation bounds must admit `n`. Returns the smallest exponent at
    /// which the coefficients differ, if any.
    pub fn first_difference(&self, other: &QSeries, n: &ExactRational) -> Result<Option<Difference>> {
        for (name, s) in [("left", self), ("right", other)] {
            if !s.trunc.admits(n) {
                return Err(Error::Truncation(format!(
                    "{name} series is truncated at {} which is below the comparison bound {n}",
                    s.trunc.wire()
                )));
            }
        }
        let mut a = self.terms.range(..=n.clone()).peekable();
        let mut b = other.terms.range(..=n.clone()).peekable();
        loop {
            let diff = match (a.peek(), b.peek()) {
                (None, None) => return Ok(None),
                (Some((ea, _)), None) => ((*ea).clone(), true, false),
                (None, Some((eb, _))) => ((*eb).clone(), false, true),
                (Some((ea, ca)), Some((eb, cb))) => {
                    if ea == eb {
                        if ca != cb {
                            ((*ea).clone(), true, true)
                        } else {
                            a.next();
                            b.next();
                            continue;
                        }
                    } else if ea < eb {
                        ((*ea).clone(), true, false)
                    } else {
                        ((*eb).clone(), false, true)
                    }
                }
            };
            let (exponent, in_a, in_b) = diff;
            let left = if in_a { self.terms[&exponent].to_string() } else { "0".into() };
            let right = if in_b { other.terms[&exponent].to_string() } else { "0".into() };
            return Ok(Some(Difference { exponent, left, right }));
        }
    }

    /// `true` iff the coefficient maps agree at every exponent `<= n`.
    pub fn eq_up_to(&self, other: &QSeries, n: &ExactRational) -> Result<bool> {
        Ok(self.first_difference(other, n)?.is_none())
    }

    /// A lower bound for the exponents that can carry a nonzero coefficient,
    /// `None` for the exact zero series.
    fn support_floor(&self) -> Option<ExactRational> {
        match (self.valuation(), &self.trunc) {
            (Some(v), _) => Some(v.clone()),
            (None, Trunc::Finite(n)) => Some(n.clone()),
            (None, Trunc::Exact) => None,
        }
    }

    fn product_trunc(&self, other: &QSeries) -> Option<Trunc> {
        let (la, lb) = (self.support_floor()?, other.support_floor()?);
        Some(match (&self.trunc, &other.trunc) {
            (Trunc::Exact, Trunc::Exact) => Trunc::Exact,
            (Trunc::Finite(na), Trunc::Exact) => Trunc::Finite(na + &lb),
            (Trunc::Exact, Trunc::Finite(nb)) => Trunc::Finite(nb + &la),
            (Trunc::Finite(na), Trunc::Finite(nb)) => Trunc::Finite((na + &lb).min(nb + &la)),
        })
    }

    fn cosets(&self) -> Vec<Coset> {
        let mut groups: BTreeMap<ExactRational, Vec<(i64, &BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let fl = e.floor().to_i64().expect("exponent out of i64 range");
            groups.entry(e.fract()).or_default().push((fl, c));
        }
        groups
            .into_iter()
            .map(|(frac, items)| {
                let start = items[0].0;
                let end = items[items.len() - 1].0;
                let mut coeffs = vec![BigInt::zero(); (end - start + 1) as usize];
                for (i, c) in items {
                    coeffs[(i - start) as usize] = c.clone();
                }
                Coset { frac, start, coeffs }
            })
            .collect()
    }

    fn multiply(&self, other: &QSeries) -> QSeries {
        let Some(trunc) = self.product_trunc(other) else {
            return QSeries::zero(Trunc::Exact);
        };
        let mut out: BTreeMap<ExactRational, BigInt> = BTreeMap::new();
        let (ca, cb) = (self.cosets(), other.cosets());
        for a in &ca {
            for b in &cb {
                let base = &a.frac + &b.frac + (a.start + b.start);
                // Largest index i + j that is still admitted.
                let limit = match &trunc {
                    Trunc::Exact => a.coeffs.len() + b.coeffs.len() - 2,
                    Trunc::Finite(n) => {
                        let room = (n - &base).floor();
                        if room.is_negative() {
                            continue;
                        }
                        room.to_usize()
                            .unwrap_or(usize::MAX)
                            .min(a.coeffs.len() + b.coeffs.len() - 2)
                    }
                };
                let mut acc = vec![BigInt::zero(); limit + 1];
                for (i, x) in a.coeffs.iter().enumerate().take(limit + 1) {
                    if x.is_zero() {
                        continue;
                    }
                    let jmax = (limit - i).min(b.coeffs.len() - 1);
                    for (j, y) in b.coeffs[..=jmax].iter().enumerate() {
                        if !y.is_zero() {
                            acc[i + j] += x * y;
                        }
                    }
                }
                for (k, c) in acc.into_iter().enumerate() {
                    if !c.is_zero() {
                        *out.entry(&base + k as i64).or_insert_with(BigInt::zero) += c;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        QSeries { terms: out, trunc }
    }

    fn combine(&self, other: &QSeries, sign: i32) -> QSeries {
        let trunc = self.trunc.min(&other.trunc);
        let a = self.terms.iter().map(|(e, c)| (e.clone(), c.clone()));
        let b = other.terms.iter().map(|(e, c)| {
            (e.clone(), if sign < 0 { -c } else { c.clone() })
        });
        QSeries::from_terms(a.chain(b), trunc)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            trunc: self.trunc.wire(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.to_fraction_string(), c.to_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<QSeries> {
        let trunc = if json.trunc == "inf" {
            Trunc::Exact
        } else {
            Trunc::Finite(json.trunc.parse()?)
        };
        let mut terms = Vec::with_capacity(json.terms.len());
        for (e, c) in &json.terms {
            let e: ExactRational = e.parse()?;
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            if !trunc.admits(&e) {
                return Err(Error::Parse(format!("exponent {e} exceeds truncation bound")));
            }
            terms.push((e, c));
        }
        Ok(QSeries::from_terms(terms, trunc))
    }
}

/// Wire form: `{"trunc": "num/den", "terms": [["num/den", "coeff"], ...]}`,
/// terms ascending by exponent. Exact polynomials use `"trunc": "inf"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub trunc: String,
    pub terms: Vec<(String, String)>,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = SeriesJson::deserialize(deserializer)?;
        QSeries::from_json(&json).map_err(serde::de::Error::custom)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, 1)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, -1)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.multiply(rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for QSeries {
    /// Human-readable form such as `1 + q^2 - 3q^(5/4) + O(q^(21/4))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}")?;
            }
            if e.is_integer() && !e.is_negative() {
                if *e == ExactRational::one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            } else {
                write!(f, "q^({e})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Trunc::Finite(n) = &self.trunc {
            write!(f, " + O(q^({n}))")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn series(terms: &[(i64, i64, i64)], trunc: Trunc) -> QSeries {
        QSeries::from_terms(
            terms.iter().map(|&(n, d, c)| (rat(n, d), BigInt::from(c))),
            trunc,
        )
    }

    #[test]
    fn product_bound_accounts_for_valuations() {
        // (q^2 + O(q^5)) * (q^(1/2) + O(q^3)): known up to min(5 + 1/2, 3 + 2).
        let a = series(&[(2, 1, 1)], Trunc::at(rat(5, 1)));
        let b = series(&[(1, 2, 1)], Trunc::at(rat(3, 1)));
        let p = &a * &b;
        assert_eq!(p.trunc(), &Trunc::at(rat(5, 1)));
        assert_eq!(p.coeff(&rat(5, 2)), Some(BigInt::from(1)));
    }

    #[test]
    fn mixed_cosets_multiply() {
        let a = series(&[(0, 1, 1), (1, 4, 2)], Trunc::Exact);
        let b = series(&[(0, 1, 1), (3, 4, -1)], Trunc::Exact);
        let p = &a * &b;
        let expected = series(&[(0, 1, 1), (1, 4, 2), (3, 4, -1), (1, 1, -2)], Trunc::Exact);
        assert_eq!(p, expected);
    }

    #[test]
    fn comparison_needs_bound() {
        let a = series(&[(0, 1, 1)], Trunc::at(rat(3, 1)));
        let b = series(&[(0, 1, 1), (4, 1, 9)], Trunc::Exact);
        assert!(a.eq_up_to(&b, &rat(3, 1)).unwrap());
        assert!(a.eq_up_to(&b, &rat(4, 1)).is_err());
        let c = series(&[(0, 1, 1), (2, 1, 1)], Trunc::Exact);
        let d = a.first_difference(&c, &rat(3, 1)).unwrap().unwrap();
        assert_eq!(d.exponent, rat(2, 1));
        assert_eq!((d.left.as_str(), d.right.as_str()), ("0", "1"));
    }

    #[test]
    fn exact_zero_annihilates() {
        let z = QSeries::zero(Trunc::Exact);
        let a = series(&[(1, 1, 3)], Trunc::at(rat(2, 1)));
        assert!((&z * &a).is_exact_zero());
    }

    #[test]
    fn json_wire_format() {
        let a = series(&[(5, 4, 1), (0, 1, -2)], Trunc::at(rat(13, 4)));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"trunc":"13/4","terms":[["0/1","-2"],["5/4","1"]]}"#);
        let back: QSeries = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn display() {
        let a = series(&[(0, 1, 1), (1, 1, -1), (5, 4, 3)], Trunc::at(rat(2, 1)));
        assert_eq!(a.to_string(), "1 - q + 3q^(5/4) + O(q^(2))");
    }
}
