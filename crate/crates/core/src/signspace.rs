//! Sign vectors `ε ∈ {+1,-1}^n` and their canonical indices.
//!
//! Coordinate `c` (1-based) of `ε_i` is `-1` exactly when bit `n - c` of `i`
//! is set, so the last coordinate is the least significant bit and the
//! positive half `S⁺` (first coordinate `+1`) is the index range
//! `0..2^(n-1)`.

use std::fmt;

use crate::exactnum::{check_dim, int, Rational, RowVector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    n: usize,
    index: usize,
}

impl SignVector {
    pub fn from_index(index: usize, n: usize) -> Result<Self> {
        check_dim(n)?;
        if index >= 1 << n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(SignVector { n, index })
    }

    /// Builds a sign vector from `±1` entries.
    pub fn from_coords(coords: &[i8]) -> Result<Self> {
        let n = coords.len();
        check_dim(n)?;
        let mut index = 0;
        for (c, &s) in coords.iter().enumerate() {
            match s {
                1 => {}
                -1 => index |= 1 << (n - 1 - c),
                _ => return Err(Error::Invalid(format!("sign entry {s} is not ±1"))),
            }
        }
        Ok(SignVector { n, index })
    }

    /// Inverse of [`RowVector`] conversion; fails unless every entry is `±1`.
    pub fn from_row_vector(v: &RowVector) -> Result<Self> {
        let one = int(1);
        let minus = int(-1);
        let coords = v
            .iter()
            .map(|x| {
                if *x == one {
                    Ok(1)
                } else if *x == minus {
                    Ok(-1)
                } else {
                    Err(Error::Invalid(format!("entry {x} is not ±1")))
                }
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::from_coords(&coords)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Coordinate `c` counted from 0.
    pub fn coord(&self, c: usize) -> i8 {
        if (self.index >> (self.n - 1 - c)) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn coords(&self) -> Vec<i8> {
        (0..self.n).map(|c| self.coord(c)).collect()
    }

    pub fn in_positive_half(&self) -> bool {
        self.index < 1 << (self.n - 1)
    }

    pub fn to_row_vector(&self) -> RowVector {
        RowVector::new(self.coords().into_iter().map(|s| int(s as i64)).collect())
            .expect("dimension already validated")
    }

    pub fn negate(&self) -> SignVector {
        SignVector {
            n: self.n,
            index: self.index ^ ((1 << self.n) - 1),
        }
    }

    /// Coordinatewise product.
    pub fn product(&self, other: &SignVector) -> Result<SignVector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(SignVector {
            n: self.n,
            index: self.index ^ other.index,
        })
    }

    /// `εa = Σ εⁱaᵢ`.
    pub fn eval(&self, a: &RowVector) -> Result<Rational> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: a.len(),
            });
        }
        Ok(a.iter()
            .enumerate()
            .fold(int(0), |acc, (c, x)| if self.coord(c) == 1 { acc + x } else { acc - x }))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε{}=(", self.index)?;
        for c in 0..self.n {
            if c > 0 {
                f.write_str(",")?;
            }
            f.write_str(if self.coord(c) == 1 { "+" } else { "-" })?;
        }
        f.write_str(")")
    }
}

pub fn signvec_of_index(i: usize, n: usize) -> Result<SignVector> {
    SignVector::from_index(i, n)
}

pub fn index_of(e: &SignVector) -> usize {
    e.index()
}

/// Number of elements of `S⁺`.
pub fn half_size(n: usize) -> usize {
    1 << (n - 1)
}

/// `2^(n-1) - 1 - i`: the partner of `i` in its conjugate pair.
pub fn conjugate_index(i: usize, n: usize) -> Result<usize> {
    check_dim(n)?;
    if i >= half_size(n) {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(half_size(n) - 1 - i)
}

/// Index of `ε_i * ε_j`; the group is `(Z/2)^n` so this is XOR.
pub fn group_product(i: usize, j: usize) -> usize {
    i ^ j
}

pub fn eval_product(e: &SignVector, a: &RowVector) -> Result<Rational> {
    e.eval(a)
}

/// All of `S`, in index order.
pub fn all(n: usize) -> impl Iterator<Item = SignVector> {
    (0..1usize << n).map(move |index| SignVector { n, index })
}

/// `S⁺`, in index order.
pub fn positive_half(n: usize) -> impl Iterator<Item = SignVector> {
    (0..half_size(n)).map(move |index| SignVector { n, index })
}
