//! The sorted cone `Q = {x : x₁ ≥ x₂ ≥ … ≥ xₙ ≥ 0}`, its dual `Q*`, and the
//! lattice on row vectors induced by cumulative sums.
//!
//! `V ∈ Q*` iff every cumulative partial sum of `V` is non-negative, and
//! `V ⊆ W` (i.e. `Va ≤ Wa` for all `a ∈ Q`) iff `W - V ∈ Q*`. Join and meet
//! take pointwise max / min of cumulative vectors.

use num_traits::Signed;

use crate::exactnum::{Rational, RowVector};
use crate::signspace::SignVector;
use crate::{Error, Result};

/// Running sums `(V¹, V¹+V², …, V¹+…+Vⁿ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulativeVector(Vec<Rational>);

impl CumulativeVector {
    pub fn partials(&self) -> &[Rational] {
        &self.0
    }

    /// Recovers the source vector by differencing.
    pub fn to_row_vector(&self) -> RowVector {
        let mut out = Vec::with_capacity(self.0.len());
        let mut prev = Rational::default();
        for p in &self.0 {
            out.push(p - &prev);
            prev = p.clone();
        }
        RowVector::new(out).expect("length preserved from a valid RowVector")
    }

    pub fn min(&self) -> &Rational {
        self.0.iter().min().expect("non-empty")
    }

    fn zip_with(&self, other: &CumulativeVector, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        CumulativeVector(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }
}

pub fn cumsum(v: &RowVector) -> CumulativeVector {
    let mut acc = Rational::default();
    CumulativeVector(
        v.iter()
            .map(|x| {
                acc += x;
                acc.clone()
            })
            .collect(),
    )
}

pub fn in_q(a: &RowVector) -> bool {
    let e = a.entries();
    e.windows(2).all(|w| w[0] >= w[1]) && !e[e.len() - 1].is_negative()
}

pub fn in_qstar(v: &RowVector) -> bool {
    first_negative_partial(v).is_none()
}

/// Position (0-based) of the first negative cumulative partial, if any.
pub fn first_negative_partial(v: &RowVector) -> Option<usize> {
    cumsum(v).0.iter().position(Signed::is_negative)
}

/// `V ⊆ W`: every cumulative partial of `V` is at most that of `W`.
pub fn cumulative_le(v: &RowVector, w: &RowVector) -> Result<bool> {
    Ok(in_qstar(&w.try_sub(v)?))
}

/// Least upper bound in the cumulative order.
pub fn join(v: &RowVector, w: &RowVector) -> Result<RowVector> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch {
            left: v.len(),
            right: w.len(),
        });
    }
    Ok(cumsum(v)
        .zip_with(&cumsum(w), |a, b| a.max(b).clone())
        .to_row_vector())
}

/// Greatest lower bound; equals `-join(-V, -W)`.
pub fn meet(v: &RowVector, w: &RowVector) -> Result<RowVector> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch {
            left: v.len(),
            right: w.len(),
        });
    }
    Ok(cumsum(v)
        .zip_with(&cumsum(w), |a, b| a.min(b).clone())
        .to_row_vector())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOp {
    Join,
    Meet,
}

impl LatticeOp {
    pub fn apply(self, v: &RowVector, w: &RowVector) -> Result<RowVector> {
        match self {
            LatticeOp::Join => join(v, w),
            LatticeOp::Meet => meet(v, w),
        }
    }
}

/// Folds `op` over the given sign vectors. The result is again a sign vector
/// because `S` is closed under join and meet.
pub fn fold_signs(op: LatticeOp, items: impl IntoIterator<Item = SignVector>) -> Result<SignVector> {
    let mut it = items.into_iter();
    let first = it.next().ok_or(Error::EmptySelection)?;
    let mut acc = first.to_row_vector();
    for e in it {
        acc = op.apply(&acc, &e.to_row_vector())?;
    }
    SignVector::from_row_vector(&acc)
}

/// Greatest lower bound of `{ε ∈ S⁺ : pred(ε)}`.
pub fn glb_filter(n: usize, pred: impl Fn(&SignVector) -> bool) -> Result<SignVector> {
    fold_signs(
        LatticeOp::Meet,
        crate::signspace::positive_half(n).filter(|e| pred(e)),
    )
}

/// Least upper bound of `{ε ∈ S⁺ : pred(ε)}`.
pub fn lub_filter(n: usize, pred: impl Fn(&SignVector) -> bool) -> Result<SignVector> {
    fold_signs(
        LatticeOp::Join,
        crate::signspace::positive_half(n).filter(|e| pred(e)),
    )
}

/// The `n` generators `(1,…,1,0,…,0)` of `Q`.
pub fn q_generators(n: usize) -> Vec<RowVector> {
    (1..=n)
        .map(|m| {
            let nums: Vec<i64> = (0..n).map(|i| i64::from(i < m)).collect();
            RowVector::from_ints(&nums, 1).expect("valid dimension")
        })
        .collect()
}
