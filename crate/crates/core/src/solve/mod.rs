//! Exact search for certificates.
//!
//! * [`lp_max_margin`]: for a fixed `R`, the weights `λ` maximizing the
//!   smallest cumulative partial of `R - L`.
//! * [`qp_min_norm`]: the minimum of `½RR'` over feasible `(R, λ)`. A single
//!   active leg is solved in closed form (taut string); several legs go
//!   through an exact Lemke solve of the KKT system.
//!
//! Nothing produced by a search routine is trusted: every [`QpResult`] has
//! passed [`check_sqp_optimality`] and [`dual_from_primal`].

pub mod lemke;
pub mod simplex;
pub mod taut;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::certify::{
    active_legs, build_l, check_sqp_optimality, dual_from_primal, CasePattern, Certificate, DualWitness, Optimality,
    Slot, TupleSpec, Witness,
};
use crate::cone::cumsum;
use crate::exactnum::{Rational, RowVector};
use crate::signspace::conjugate_index;
use crate::{Error, Result};

use simplex::{Lp, RowKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub lambda: Vec<Rational>,
    /// Smallest cumulative partial of `R - L` at `lambda`.
    pub margin: Rational,
}

/// Maximizes `x` subject to `cumsum(L(λ))_i + x ≤ cumsum(R)_i`, `Σλ = 1`,
/// `λ ⪰ 0`, with wildcard slots pinned to zero.
pub fn lp_max_margin(r: &RowVector, tuple: &TupleSpec, pattern: &CasePattern) -> Result<LpResult> {
    if r.len() != tuple.n() {
        return Err(Error::DimensionMismatch {
            left: r.len(),
            right: tuple.n(),
        });
    }
    let legs = active_legs(tuple, pattern)?;
    if legs.is_empty() {
        return Err(Error::Invalid(format!("case {pattern} has no active slot")));
    }
    let n = tuple.n();
    let a = legs.len();
    let leg_partials: Vec<Vec<Rational>> = legs.iter().map(|(_, e)| cumsum(e).partials().to_vec()).collect();
    let r_partials = cumsum(r);
    // variables: λ (a), x⁺, x⁻
    let mut lp = Lp {
        rows: Vec::with_capacity(n + 1),
        objective: vec![Rational::zero(); a + 2],
    };
    lp.objective[a] = Rational::one();
    lp.objective[a + 1] = -Rational::one();
    for i in 0..n {
        let mut row: Vec<Rational> = leg_partials.iter().map(|p| p[i].clone()).collect();
        row.push(Rational::one());
        row.push(-Rational::one());
        lp.rows.push((row, RowKind::Le, r_partials.partials()[i].clone()));
    }
    let mut sum_row = vec![Rational::one(); a];
    sum_row.extend([Rational::zero(), Rational::zero()]);
    lp.rows.push((sum_row, RowKind::Eq, Rational::one()));
    let sol = lp.maximize()?;

    let mut lambda = vec![Rational::zero(); pattern.k()];
    for ((slot, _), w) in legs.iter().zip(&sol.y) {
        lambda[*slot] = w.clone();
    }
    let l = build_l(tuple, pattern, &lambda)?;
    let margin = cumsum(&(r - &l)).min().clone();
    if margin != sol.value {
        return Err(Error::Solver(format!("LP value {} differs from margin {margin}", sol.value)));
    }
    Ok(LpResult { lambda, margin })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum QpStatus {
    /// `RR' ≤ 1`: the pair `(R, λ)` is a certificate.
    #[serde(rename = "CERT")]
    Cert,
    /// `RR' > 1`: no certificate exists for this case.
    #[serde(rename = "REFUTE")]
    Refute,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpResult {
    pub tuple: TupleSpec,
    pub pattern: CasePattern,
    pub r: RowVector,
    pub lambda: Vec<Rational>,
    pub value: Rational,
    pub status: QpStatus,
    pub dual: DualWitness,
}

impl QpResult {
    pub fn to_certificate(&self) -> Option<Certificate> {
        (self.status == QpStatus::Cert).then(|| {
            Certificate::new(self.tuple.clone(), self.pattern.clone(), self.r.clone(), self.lambda.clone())
                .expect("validated result")
        })
    }

    /// A witness for the leg in slot 1, available for refuted single-leg cases.
    pub fn to_witness(&self) -> Option<Witness> {
        if self.status != QpStatus::Refute || self.pattern.k() != 1 {
            return None;
        }
        let Slot::Leg(p) = self.pattern.slots()[0] else {
            return None;
        };
        Witness::new(self.tuple.leg(p), self.r.clone()).ok()
    }

    /// Certificate or witness JSON, extended by `value`, `status` and a
    /// `dual` block `{u, v, w}`.
    pub fn to_json(&self) -> Value {
        let mut v = match (self.to_certificate(), self.to_witness()) {
            (Some(c), _) => serde_json::to_value(c),
            (None, Some(w)) => serde_json::to_value(w),
            (None, None) => serde_json::to_value(json!({
                "tuple": self.tuple.pairs().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
                "case": self.pattern.tokens(),
                "R": self.r,
                "lambda": self.lambda.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })),
        }
        .expect("plain data serializes");
        let obj = v.as_object_mut().expect("object");
        obj.insert("value".into(), Value::String(self.value.to_string()));
        obj.insert("status".into(), serde_json::to_value(self.status).expect("enum"));
        obj.insert("dual".into(), serde_json::to_value(&self.dual).expect("dual"));
        v
    }
}

/// Minimum-norm feasible `(R, λ)` for one case, validated exactly.
pub fn qp_min_norm(tuple: &TupleSpec, pattern: &CasePattern) -> Result<QpResult> {
    let legs = active_legs(tuple, pattern)?;
    if legs.len() == 1 {
        let mut lambda = vec![Rational::zero(); pattern.k()];
        lambda[legs[0].0] = Rational::one();
        let r = taut::min_norm_dominating(&legs[0].1);
        if let Ok(res) = validate(tuple, pattern, r, lambda) {
            return Ok(res);
        }
    }
    qp_min_norm_lemke(tuple, pattern)
}

/// The Lemke route alone, for any number of active legs.
///
/// Variables are `x = (λ, μ) ⪰ 0` with `R = Σ λ_a e_a + Σ μ_m d_m`, where
/// `d_m = δ_m - δ_{m+1}` (and `d_n = δ_n`) so that `μ = cumsum(R - L)`. The
/// simplex constraint is relaxed to `Σλ ≥ 1`, which is tight at any optimum
/// with `RR' > 0`; at `RR' = 0` the weights are rescaled.
pub fn qp_min_norm_lemke(tuple: &TupleSpec, pattern: &CasePattern) -> Result<QpResult> {
    let legs = active_legs(tuple, pattern)?;
    if legs.is_empty() {
        return Err(Error::Invalid(format!("case {pattern} has no active slot")));
    }
    let n = tuple.n();
    let a = legs.len();
    let mut rows: Vec<RowVector> = legs.iter().map(|(_, e)| e.clone()).collect();
    for m in 0..n {
        let mut d = vec![Rational::zero(); n];
        d[m] = Rational::one();
        if m + 1 < n {
            d[m + 1] = -Rational::one();
        }
        rows.push(RowVector::new(d)?);
    }
    let size = rows.len() + 1;
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            mat[i][j] = rows[i].dot(&rows[j])?;
        }
    }
    for i in 0..a {
        mat[i][size - 1] = -Rational::one();
        mat[size - 1][i] = Rational::one();
    }
    let mut q = vec![Rational::zero(); size];
    q[size - 1] = -Rational::one();
    let z = lemke::solve_lcp(&mat, &q)?;

    let mut r = RowVector::zeros(n)?;
    for (row, x) in rows.iter().zip(&z) {
        if !x.is_zero() {
            r.add_scaled(x, row)?;
        }
    }
    let total: Rational = z[..a].iter().sum();
    let mut lambda = vec![Rational::zero(); pattern.k()];
    for ((slot, _), x) in legs.iter().zip(&z) {
        lambda[*slot] = x / &total;
    }
    validate(tuple, pattern, r, lambda)
}

fn validate(tuple: &TupleSpec, pattern: &CasePattern, r: RowVector, lambda: Vec<Rational>) -> Result<QpResult> {
    match check_sqp_optimality(&r, &lambda, tuple, pattern)? {
        Optimality::Optimal => {}
        Optimality::NotOptimal(c) => return Err(Error::Solver(format!("search result not optimal: {c}"))),
    }
    let dual = dual_from_primal(&r, &lambda, tuple, pattern)?;
    let value = r.norm_sq();
    let status = if value <= Rational::one() {
        QpStatus::Cert
    } else {
        QpStatus::Refute
    };
    Ok(QpResult {
        tuple: tuple.clone(),
        pattern: pattern.clone(),
        r,
        lambda,
        value,
        status,
        dual,
    })
}

/// Certificate for one case found without shipped data: the QP supplies
/// `R`, the LP re-derives `λ` for that `R`. `None` when the case has no
/// certificate (`RR' > 1` at the optimum).
pub fn derive_certificate(tuple: &TupleSpec, pattern: &CasePattern) -> Result<Option<Certificate>> {
    let qp = qp_min_norm(tuple, pattern)?;
    if qp.status == QpStatus::Refute {
        return Ok(None);
    }
    let lp = lp_max_margin(&qp.r, tuple, pattern)?;
    if lp.margin.is_negative() {
        return Err(Error::Solver(format!("LP margin {} < 0 at the QP optimum", lp.margin)));
    }
    Ok(Some(Certificate::new(tuple.clone(), pattern.clone(), qp.r, lp.lambda)?))
}

/// Outcome of the single-leg program on `-ε_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinLegDecision {
    pub leg: usize,
    pub result: QpResult,
}

impl TwinLegDecision {
    /// The leg can never be the bad leg of a failing pair.
    pub fn is_certified(&self) -> bool {
        self.result.status == QpStatus::Cert
    }

    pub fn certificate(&self) -> Option<Certificate> {
        self.result.to_certificate()
    }

    pub fn witness(&self) -> Option<Witness> {
        self.result.to_witness()
    }
}

/// Runs the single-leg program with `e₁ = -ε_ℓ`.
pub fn decide_leg(leg: usize, n: usize) -> Result<TwinLegDecision> {
    let tuple = TupleSpec::new(n, vec![(leg, conjugate_index(leg, n)?)])?;
    let pattern = CasePattern::new(vec![Slot::Leg(1)])?;
    Ok(TwinLegDecision {
        leg,
        result: qp_min_norm(&tuple, &pattern)?,
    })
}
