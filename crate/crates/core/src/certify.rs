//! Certificate data and the exact checks that turn them into proofs.
//!
//! A [`Certificate`] `(tuple, case, R, λ)` proves one case of a `2k`-tuple:
//! with `L = λ¹(-e_{s₁}) + Σ_{ℓ≥2} λ^ℓ e_{s_ℓ}`, the conditions `λ ⪰ 0`,
//! `Σλ = 1`, `RR' ≤ 1` and `R - L ∈ Q*` imply that for every `a ∈ Q` whose
//! signs match the case, some selected leg satisfies `|ea| ≤ ‖a‖`.
//!
//! A [`Witness`] `(ℓ, R)` with `R ∈ Q`, `RR' > 1` and `-ε_ℓ R ≥ RR'` shows
//! that `a = R` breaks the twin property on leg `ℓ`.
//!
//! The quadratic program `min ½RR'` over feasible `(R, λ)` has a closed-form
//! optimality test: `R ∈ Q` and `e_i R ≥ RR'` for every active leg. The dual
//! point `(u, v, w)` is read off from `R` directly.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{cumsum, first_negative_partial, in_q};
use crate::exactnum::{check_dim, int, parse_rational, serde_rational, serde_rational_vec, Rational, RowVector};
use crate::signspace::{half_size, SignVector};
use crate::{Error, Result};

/// A `2k`-tuple `(e₁, e₂, (e₃, e₄), …)` of `k` conjugate pairs in `S⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TupleSpec {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl TupleSpec {
    pub const MAX_PAIRS: usize = 4;

    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        check_dim(n)?;
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        if pairs.is_empty() || pairs.len() > Self::MAX_PAIRS {
            return Err(Error::Invalid(format!(
                "tuple has {} pairs (expected 1..={})",
                pairs.len(),
                Self::MAX_PAIRS
            )));
        }
        let top = half_size(n) - 1;
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j) in &pairs {
            for x in [i, j] {
                if x > top {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
                if !seen.insert(x) {
                    return Err(Error::Invalid(format!("duplicate {x}")));
                }
            }
            if i + j != top {
                return Err(Error::Invalid(format!("({i}, {j}) not conjugate")));
            }
        }
        Ok(TupleSpec { n, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of pairs.
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Flattened `(e₁, …, e_{2k})`.
    pub fn legs(&self) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(i, j)| [i, j]).collect()
    }

    /// Sign-vector index at 1-based `position`.
    pub fn leg(&self, position: usize) -> usize {
        let (i, j) = self.pairs[(position - 1) / 2];
        if position % 2 == 1 {
            i
        } else {
            j
        }
    }
}

impl fmt::Display for TupleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.pairs[0];
        write!(f, "({i},{j}")?;
        for (a, b) in &self.pairs[1..] {
            write!(f, ",({a},{b})")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    /// 1-based position in the flattened tuple.
    Leg(usize),
    Wild,
}

/// One choice of leg per pair (`s_ℓ ∈ {2ℓ-1, 2ℓ}`), or `*` where the weight
/// is zero. Slot 1 carries sign `-1`, all others `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CasePattern {
    slots: Vec<Slot>,
}

impl CasePattern {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        if slots.is_empty() || slots.len() > TupleSpec::MAX_PAIRS {
            return Err(Error::Invalid(format!("case has {} slots", slots.len())));
        }
        for (l, s) in slots.iter().enumerate() {
            if let Slot::Leg(p) = *s {
                if p != 2 * l + 1 && p != 2 * l + 2 {
                    return Err(Error::Invalid(format!(
                        "slot {} position {p} not in {{{}, {}}}",
                        l + 1,
                        2 * l + 1,
                        2 * l + 2
                    )));
                }
            }
        }
        Ok(CasePattern { slots })
    }

    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let slots = tokens
            .iter()
            .map(|t| {
                let t = t.as_ref().trim();
                if t == "*" {
                    Ok(Slot::Wild)
                } else {
                    t.parse::<usize>()
                        .map(Slot::Leg)
                        .map_err(|_| Error::Parse(format!("bad case token {t:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(slots)
    }

    pub fn k(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn is_concrete(&self) -> bool {
        self.slots.iter().all(|s| matches!(s, Slot::Leg(_)))
    }

    /// `σ^ℓ` for 0-based slot `l`.
    pub fn sign(l: usize) -> i64 {
        if l == 0 {
            -1
        } else {
            1
        }
    }

    pub fn tokens(&self) -> Vec<String> {
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Leg(p) => p.to_string(),
                Slot::Wild => "*".to_string(),
            })
            .collect()
    }
}

impl fmt::Display for CasePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.tokens().join(", "))
    }
}

fn check_arity(tuple: &TupleSpec, pattern: &CasePattern) -> Result<()> {
    if tuple.k() != pattern.k() {
        return Err(Error::Invalid(format!(
            "case {pattern} has {} slots but tuple {tuple} has {} pairs",
            pattern.k(),
            tuple.k()
        )));
    }
    Ok(())
}

/// The signed legs `e_ℓ = σ^ℓ ε_{s_ℓ}` of every non-wildcard slot, tagged with
/// their 0-based slot number.
pub fn active_legs(tuple: &TupleSpec, pattern: &CasePattern) -> Result<Vec<(usize, RowVector)>> {
    check_arity(tuple, pattern)?;
    let mut out = Vec::new();
    for (l, s) in pattern.slots().iter().enumerate() {
        if let Slot::Leg(p) = *s {
            let e = SignVector::from_index(tuple.leg(p), tuple.n())?.to_row_vector();
            let e = if CasePattern::sign(l) < 0 { -&e } else { e };
            out.push((l, e));
        }
    }
    Ok(out)
}

/// `L = Σ λ^ℓ σ^ℓ ε_{s_ℓ}`.
pub fn build_l(tuple: &TupleSpec, pattern: &CasePattern, lambda: &[Rational]) -> Result<RowVector> {
    check_arity(tuple, pattern)?;
    if lambda.len() != pattern.k() {
        return Err(Error::Invalid(format!(
            "lambda has {} entries, case has {} slots",
            lambda.len(),
            pattern.k()
        )));
    }
    for (l, s) in pattern.slots().iter().enumerate() {
        if *s == Slot::Wild && !lambda[l].is_zero() {
            return Err(Error::Invalid(format!("wildcard slot {} has weight {}", l + 1, lambda[l])));
        }
    }
    let mut acc = RowVector::zeros(tuple.n())?;
    for (l, e) in active_legs(tuple, pattern)? {
        acc.add_scaled(&lambda[l], &e)?;
    }
    Ok(acc)
}

/// The clause a rejected certificate, witness or optimality claim violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clause {
    NegativeWeight { slot: usize },
    WildcardWeight { slot: usize },
    WeightSum { sum: Rational },
    NormExceedsOne { norm_sq: Rational },
    NotInDualCone { position: usize, partial: Rational },
    NotSorted,
    NormNotAboveOne { norm_sq: Rational },
    LegBelowNorm { slot: usize, value: Rational, norm_sq: Rational },
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::NegativeWeight { slot } => write!(f, "lambda[{slot}] < 0"),
            Clause::WildcardWeight { slot } => write!(f, "lambda[{slot}] != 0 on wildcard slot"),
            Clause::WeightSum { sum } => write!(f, "sum of lambda is {sum}, not 1"),
            Clause::NormExceedsOne { norm_sq } => write!(f, "RR' = {norm_sq} > 1"),
            Clause::NotInDualCone { position, partial } => {
                write!(f, "R - L not in Q*: partial sum {position} is {partial}")
            }
            Clause::NotSorted => f.write_str("R not in Q (not sorted non-negative)"),
            Clause::NormNotAboveOne { norm_sq } => write!(f, "RR' = {norm_sq} is not > 1"),
            Clause::LegBelowNorm { slot, value, norm_sq } => {
                write!(f, "e_{slot} R' = {value} < RR' = {norm_sq}")
            }
        }
    }
}

impl std::error::Error for Clause {}

/// Checks `λ ⪰ 0`, zero weight on wildcards and `Σλ = 1`; slots are reported
/// 1-based.
fn check_weights(pattern: &CasePattern, lambda: &[Rational]) -> Result<(), Clause> {
    for (l, x) in lambda.iter().enumerate() {
        if x.is_negative() {
            return Err(Clause::NegativeWeight { slot: l + 1 });
        }
        if pattern.slots()[l] == Slot::Wild && !x.is_zero() {
            return Err(Clause::WildcardWeight { slot: l + 1 });
        }
    }
    let sum: Rational = lambda.iter().sum();
    if !sum.is_one() {
        return Err(Clause::WeightSum { sum });
    }
    Ok(())
}

fn check_dual_cone(r: &RowVector, l: &RowVector) -> Result<(), Clause> {
    let diff = r - l;
    if let Some(p) = first_negative_partial(&diff) {
        return Err(Clause::NotInDualCone {
            position: p + 1,
            partial: cumsum(&diff).partials()[p].clone(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CertificateRecord {
    tuple: Vec<[usize; 2]>,
    case: Vec<String>,
    #[serde(rename = "R")]
    r: RowVector,
    #[serde(with = "serde_rational_vec")]
    lambda: Vec<Rational>,
}

/// `(tuple, case, R, λ)`; serialized as
/// `{"tuple": [[i,j],…], "case": [...], "R": [...], "lambda": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateRecord", into = "CertificateRecord")]
pub struct Certificate {
    pub tuple: TupleSpec,
    pub pattern: CasePattern,
    pub r: RowVector,
    pub lambda: Vec<Rational>,
}

impl Certificate {
    /// Structural validation only; the proof obligations are checked by
    /// [`check_lemma2`].
    pub fn new(tuple: TupleSpec, pattern: CasePattern, r: RowVector, lambda: Vec<Rational>) -> Result<Self> {
        check_arity(&tuple, &pattern)?;
        if lambda.len() != tuple.k() {
            return Err(Error::Invalid(format!(
                "lambda has {} entries, tuple has {} pairs",
                lambda.len(),
                tuple.k()
            )));
        }
        if r.len() != tuple.n() {
            return Err(Error::DimensionMismatch {
                left: r.len(),
                right: tuple.n(),
            });
        }
        Ok(Certificate { tuple, pattern, r, lambda })
    }

    pub fn l(&self) -> RowVector {
        build_l(&self.tuple, &self.pattern, &self.lambda).expect("arity validated on construction")
    }

    /// The leg (sign-vector index) chosen in each slot, `None` for `*`.
    pub fn chosen_legs(&self) -> Vec<Option<usize>> {
        self.pattern
            .slots()
            .iter()
            .map(|s| match *s {
                Slot::Leg(p) => Some(self.tuple.leg(p)),
                Slot::Wild => None,
            })
            .collect()
    }
}

impl TryFrom<CertificateRecord> for Certificate {
    type Error = Error;

    fn try_from(rec: CertificateRecord) -> Result<Self> {
        let tuple = TupleSpec::new(rec.r.len(), rec.tuple.iter().map(|p| (p[0], p[1])).collect())?;
        let pattern = CasePattern::parse(&rec.case)?;
        Certificate::new(tuple, pattern, rec.r, rec.lambda)
    }
}

impl From<Certificate> for CertificateRecord {
    fn from(c: Certificate) -> Self {
        CertificateRecord {
            tuple: c.tuple.pairs().iter().map(|&(i, j)| [i, j]).collect(),
            case: c.pattern.tokens(),
            r: c.r,
            lambda: c.lambda,
        }
    }
}

/// Accepts iff `λ ⪰ 0`, `Σλ = 1`, `RR' ≤ 1` and `R - L ∈ Q*`.
pub fn check_lemma2(cert: &Certificate) -> Result<(), Clause> {
    check_weights(&cert.pattern, &cert.lambda)?;
    let norm_sq = cert.r.norm_sq();
    if norm_sq > Rational::one() {
        return Err(Clause::NormExceedsOne { norm_sq });
    }
    check_dual_cone(&cert.r, &cert.l())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct WitnessRecord {
    leg: usize,
    #[serde(rename = "R")]
    r: RowVector,
}

/// `(ℓ, R)` refuting `[ε_ℓ a < 0 ⇒ |ε_ℓ a| ≤ ‖a‖]` at `a = R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WitnessRecord", into = "WitnessRecord")]
pub struct Witness {
    pub leg: SignVector,
    pub r: RowVector,
}

impl Witness {
    pub fn new(leg: usize, r: RowVector) -> Result<Self> {
        let leg = SignVector::from_index(leg, r.len())?;
        if !leg.in_positive_half() {
            return Err(Error::IndexOutOfRange {
                index: leg.index(),
                n: leg.n(),
            });
        }
        Ok(Witness { leg, r })
    }
}

impl TryFrom<WitnessRecord> for Witness {
    type Error = Error;

    fn try_from(rec: WitnessRecord) -> Result<Self> {
        Witness::new(rec.leg, rec.r)
    }
}

impl From<Witness> for WitnessRecord {
    fn from(w: Witness) -> Self {
        WitnessRecord {
            leg: w.leg.index(),
            r: w.r,
        }
    }
}

/// Accepts iff `R ∈ Q`, `RR' > 1` and `-ε_ℓ R ≥ RR'`; returns `RR'`.
pub fn check_witness(w: &Witness) -> Result<Rational, Clause> {
    if !in_q(&w.r) {
        return Err(Clause::NotSorted);
    }
    let norm_sq = w.r.norm_sq();
    if norm_sq <= Rational::one() {
        return Err(Clause::NormNotAboveOne { norm_sq });
    }
    let value = -w.leg.eval(&w.r).expect("dimension matched on construction");
    if value < norm_sq {
        return Err(Clause::LegBelowNorm { slot: 1, value, norm_sq });
    }
    Ok(norm_sq)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimality {
    Optimal,
    NotOptimal(Clause),
}

fn check_feasible(r: &RowVector, lambda: &[Rational], tuple: &TupleSpec, pattern: &CasePattern) -> Result<RowVector> {
    let l = build_l(tuple, pattern, lambda)?;
    if r.len() != tuple.n() {
        return Err(Error::DimensionMismatch {
            left: r.len(),
            right: tuple.n(),
        });
    }
    check_weights(pattern, lambda)
        .and_then(|_| check_dual_cone(r, &l))
        .map_err(|c| Error::Infeasible(c.to_string()))?;
    Ok(l)
}

/// Exact optimality test for the minimum-norm program over feasible
/// `(R, λ)`. Feasibility is a precondition and is checked.
pub fn check_sqp_optimality(
    r: &RowVector,
    lambda: &[Rational],
    tuple: &TupleSpec,
    pattern: &CasePattern,
) -> Result<Optimality> {
    check_feasible(r, lambda, tuple, pattern)?;
    if !in_q(r) {
        return Ok(Optimality::NotOptimal(Clause::NotSorted));
    }
    let norm_sq = r.norm_sq();
    for (l, e) in active_legs(tuple, pattern)? {
        let value = e.dot(r)?;
        if value < norm_sq {
            return Ok(Optimality::NotOptimal(Clause::LegBelowNorm {
                slot: l + 1,
                value,
                norm_sq,
            }));
        }
    }
    Ok(Optimality::Optimal)
}

/// `(Qx)_i = -x_i + x_{i+1}`, with `x_{n+1} = 0`.
pub fn q_apply(x: &RowVector) -> RowVector {
    let e = x.entries();
    let out = (0..e.len())
        .map(|i| e.get(i + 1).cloned().unwrap_or_default() - &e[i])
        .collect();
    RowVector::new(out).expect("length preserved")
}

/// `(Q⁻¹u)_i = -Σ_{j≥i} u_j`.
pub fn q_inv_apply(u: &RowVector) -> RowVector {
    let mut acc = Rational::zero();
    let mut out: Vec<Rational> = u
        .iter()
        .rev()
        .map(|x| {
            acc -= x;
            acc.clone()
        })
        .collect();
    out.reverse();
    RowVector::new(out).expect("length preserved")
}

/// Dual point `(u, v, w)` of the minimum-norm program. `v` has one entry per
/// active (non-wildcard) slot, in slot order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualWitness {
    pub u: RowVector,
    #[serde(with = "serde_rational_vec")]
    pub v: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub w: Rational,
}

impl DualWitness {
    /// `g(u, v, w) = -½‖Q⁻¹u‖² - w`.
    pub fn objective(&self) -> Rational {
        -(q_inv_apply(&self.u).norm_sq() / int(2)) - &self.w
    }

    /// Re-derives every dual identity against a primal pair.
    pub fn verify(&self, r: &RowVector, lambda: &[Rational], tuple: &TupleSpec, pattern: &CasePattern) -> Result<()> {
        let legs = active_legs(tuple, pattern)?;
        let fail = |m: String| Err(Error::NotOptimal(m));
        if !self.u.is_nonnegative() {
            return fail("u has a negative entry".into());
        }
        if self.v.len() != legs.len() || self.v.iter().any(Signed::is_negative) {
            return fail("v has a negative entry".into());
        }
        let norm_sq = r.norm_sq();
        if self.w != -norm_sq.clone() {
            return fail("w != -RR'".into());
        }
        // stationarity in R: R' + Q⁻¹u = 0
        if !(r + &q_inv_apply(&self.u)).is_zero() {
            return fail("R' + Q^-1 u != 0".into());
        }
        // stationarity in λ: -E Q⁻¹u - v + 1w = 0
        let qiu = q_inv_apply(&self.u);
        for ((_, e), v) in legs.iter().zip(&self.v) {
            if -e.dot(&qiu)? - v + &self.w != Rational::zero() {
                return fail("-E Q^-1 u - v + 1 w != 0".into());
            }
        }
        let l = build_l(tuple, pattern, lambda)?;
        if !cumsum(&(r - &l)).partials().iter().zip(self.u.iter()).map(|(p, x)| p * x).sum::<Rational>().is_zero() {
            return fail("complementary slackness (R - L) vs u".into());
        }
        let lv: Rational = legs.iter().zip(&self.v).map(|((l, _), v)| &lambda[*l] * v).sum();
        if !lv.is_zero() {
            return fail("complementary slackness lambda vs v".into());
        }
        if self.objective() != norm_sq / int(2) {
            return fail("dual objective differs from primal".into());
        }
        Ok(())
    }
}

/// Builds the dual point from an optimal primal pair and checks all dual
/// sign conditions and complementary slackness.
pub fn dual_from_primal(
    r: &RowVector,
    lambda: &[Rational],
    tuple: &TupleSpec,
    pattern: &CasePattern,
) -> Result<DualWitness> {
    check_feasible(r, lambda, tuple, pattern)?;
    let u = -&q_apply(r);
    if let Some(i) = u.iter().position(Signed::is_negative) {
        return Err(Error::NotOptimal(format!("u[{}] = {} < 0", i + 1, u[i])));
    }
    let norm_sq = r.norm_sq();
    let mut v = Vec::new();
    for (l, e) in active_legs(tuple, pattern)? {
        let vi = e.dot(r)? - &norm_sq;
        if vi.is_negative() {
            return Err(Error::NotOptimal(format!("v[{}] = {vi} < 0", l + 1)));
        }
        v.push(vi);
    }
    let dual = DualWitness { u, v, w: -norm_sq };
    dual.verify(r, lambda, tuple, pattern)?;
    Ok(dual)
}

/// Evaluates the implication a certificate proves at one integer point `a`:
/// `None` if `a` violates the case's sign conditions, otherwise whether some
/// active leg satisfies `(e a)² ≤ aa'`.
pub fn lemma2_conclusion_at(cert: &Certificate, a: &[i128]) -> Option<bool> {
    let aa: i128 = a.iter().map(|x| x * x).sum();
    let mut best: Option<i128> = None;
    for (_, e) in active_legs(&cert.tuple, &cert.pattern).ok()? {
        let v: i128 = e.iter().zip(a).map(|(s, x)| if s.is_negative() { -x } else { *x }).sum();
        if v < 0 {
            return None;
        }
        best = Some(best.map_or(v * v, |b| b.min(v * v)));
    }
    best.map(|b| b <= aa)
}

/// Parses a JSON array of certificates.
pub fn parse_certificates(json: &str) -> Result<Vec<Certificate>> {
    Ok(serde_json::from_str(json)?)
}

/// Parses a JSON array of witnesses.
pub fn parse_witnesses(json: &str) -> Result<Vec<Witness>> {
    Ok(serde_json::from_str(json)?)
}

/// Parses a comma-separated list of rationals of any length.
pub fn parse_weights(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}
