//! Exact rational scalars and fixed-length rational vectors.
//!
//! Text formats: a scalar is `p/q` in lowest terms, with `/q` omitted when
//! `q = 1`; a vector is a comma-separated list of scalars. Whitespace around
//! tokens is ignored.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exact fraction with an arbitrary-precision numerator and positive,
/// coprime denominator.
pub type Rational = num_rational::BigRational;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(token: &str) -> Result<Rational> {
    let t = token.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational token".into()));
    }
    Rational::from_str(t).map_err(|e| Error::Parse(format!("bad rational {t:?}: {e}")))
}

/// Serde adapter that stores rationals as their canonical strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_rational`] for lists.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Vector of `n` exact rationals, `1 <= n <= 16`.
///
/// Used for weight vectors `a`, certificate vectors `R`, convex combinations
/// `L` and their differences. Row and column vectors are not distinguished.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowVector(Vec<Rational>);

impl RowVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        check_dim(entries.len())?;
        Ok(RowVector(entries))
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![Rational::zero(); n])
    }

    /// `(nums[0], ..., nums[n-1]) / den`.
    pub fn from_ints(nums: &[i64], den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Self::new(nums.iter().map(|&p| frac(p, den)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn same_len(&self, other: &RowVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &RowVector) -> Result<Rational> {
        self.same_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (x, y)| acc + x * y))
    }

    /// `RR'`; norms are always handled squared.
    pub fn norm_sq(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x * x)
    }

    pub fn try_add(&self, other: &RowVector) -> Result<RowVector> {
        self.same_len(other)?;
        Ok(RowVector(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect()))
    }

    pub fn try_sub(&self, other: &RowVector) -> Result<RowVector> {
        self.same_len(other)?;
        Ok(RowVector(self.0.iter().zip(&other.0).map(|(x, y)| x - y).collect()))
    }

    pub fn scale(&self, c: &Rational) -> RowVector {
        RowVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: &Rational, other: &RowVector) -> Result<()> {
        self.same_len(other)?;
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x += c * y;
        }
        Ok(())
    }

    /// All entries are `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

impl Index<usize> for RowVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a RowVector {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

// The panicking operators are for internal use where lengths already agree.
impl Add for &RowVector {
    type Output = RowVector;

    fn add(self, rhs: &RowVector) -> RowVector {
        self.try_add(rhs).expect("length mismatch in RowVector add")
    }
}

impl Sub for &RowVector {
    type Output = RowVector;

    fn sub(self, rhs: &RowVector) -> RowVector {
        self.try_sub(rhs).expect("length mismatch in RowVector sub")
    }
}

impl Neg for &RowVector {
    type Output = RowVector;

    fn neg(self) -> RowVector {
        RowVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for RowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for RowVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        RowVector::new(entries)
    }
}

impl Serialize for RowVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rational_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for RowVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_rational_vec::deserialize(d)?;
        RowVector::new(v).map_err(serde::de::Error::custom)
    }
}

/// Parses exactly `n` comma-separated `p/q` or integer tokens.
pub fn parse_vector(text: &str, n: usize) -> Result<RowVector> {
    let v: RowVector = text.parse()?;
    if v.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} entries, found {}",
            v.len()
        )));
    }
    Ok(v)
}

pub fn dot(v: &RowVector, w: &RowVector) -> Result<Rational> {
    v.dot(w)
}
