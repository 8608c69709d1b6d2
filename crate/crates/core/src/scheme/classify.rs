//! Splitting the conjugate pairs of `S⁺` into twins and non-twins.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certify::Witness;
use crate::cone::in_qstar;
use crate::library;
use crate::signspace::{conjugate_index, half_size, SignVector};
use crate::solve::{decide_leg, TwinLegDecision};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonTwin {
    /// `(i, j)` with `i < j`.
    pub pair: (usize, usize),
    /// One witness per refuted leg.
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: usize,
    /// Per-leg results, indexed by leg.
    pub decisions: Vec<TwinLegDecision>,
    pub twins: Vec<(usize, usize)>,
    pub non_twins: Vec<NonTwin>,
}

impl Classification {
    /// Groups per-leg decisions (in any order) into pairs.
    pub fn from_decisions(n: usize, mut decisions: Vec<TwinLegDecision>) -> Result<Self> {
        decisions.sort_by_key(|d| d.leg);
        if decisions.len() != half_size(n) || decisions.iter().enumerate().any(|(i, d)| d.leg != i) {
            return Err(Error::Invalid("classification needs exactly one decision per leg".into()));
        }
        let mut twins = Vec::new();
        let mut non_twins = Vec::new();
        for i in 0..half_size(n) / 2 {
            let j = conjugate_index(i, n)?;
            let witnesses: Vec<Witness> = [i, j].iter().filter_map(|&l| decisions[l].witness()).collect();
            if witnesses.is_empty() {
                twins.push((i, j));
            } else {
                non_twins.push(NonTwin { pair: (i, j), witnesses });
            }
        }
        Ok(Classification {
            n,
            decisions,
            twins,
            non_twins,
        })
    }

    pub fn is_twin(&self, pair: (usize, usize)) -> bool {
        let key = (pair.0.min(pair.1), pair.0.max(pair.1));
        self.twins.binary_search(&key).is_ok()
    }

    /// Legs whose single-leg program is refuted.
    pub fn refuted_legs(&self) -> Vec<usize> {
        self.decisions.iter().filter(|d| !d.is_certified()).map(|d| d.leg).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "twins": self.twins.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "non_twins": self.non_twins.iter().map(|t| [t.pair.0, t.pair.1]).collect::<Vec<_>>(),
        })
    }
}

/// Runs [`decide_leg`] on the given legs in parallel, preserving order.
pub fn classify_legs(n: usize, legs: &[usize]) -> Result<Vec<TwinLegDecision>> {
    legs.par_iter().map(|&l| decide_leg(l, n)).collect()
}

/// A pair is a non-twin iff at least one of its legs is refuted.
pub fn classify_pairs(n: usize) -> Result<Classification> {
    let legs: Vec<usize> = (0..half_size(n)).collect();
    Classification::from_decisions(n, classify_legs(n, &legs)?)
}

/// Legs `j` of twin pairs with `R₁ - ε_j ∈ Q*` and `R₂ + ε_j ∈ Q*` or
/// `R₃ + ε_j ∈ Q*`: such a leg is good at every `a ∈ Q`. Only defined for
/// `n = 9`, the dimension of the fixed vectors.
pub fn special_twins(classification: &Classification) -> Result<Vec<usize>> {
    if classification.n != 9 {
        return Err(Error::InvalidDimension(classification.n));
    }
    let (r1, r2, r3) = (library::r1(), library::r2(), library::r3());
    let mut out = Vec::new();
    for j in 0..half_size(9) {
        let e = SignVector::from_index(j, 9)?.to_row_vector();
        if in_qstar(&(&r1 - &e)) && (in_qstar(&(&r2 + &e)) || in_qstar(&(&r3 + &e))) {
            let pair = (j, conjugate_index(j, 9)?);
            if !classification.is_twin(pair) {
                return Err(Error::Invalid(format!("leg {j} passes the cone tests but its pair is not a twin")));
            }
            out.push(j);
        }
    }
    Ok(out)
}

/// For each non-twin pair, the legs lying in `Q*`.
pub fn qstar_legs_of_non_twins(classification: &Classification) -> Result<Vec<((usize, usize), Vec<usize>)>> {
    classification
        .non_twins
        .iter()
        .map(|t| {
            let (i, j) = t.pair;
            let mut legs = Vec::new();
            for l in [i, j] {
                if in_qstar(&SignVector::from_index(l, classification.n)?.to_row_vector()) {
                    legs.push(l);
                }
            }
            Ok((t.pair, legs))
        })
        .collect()
}
