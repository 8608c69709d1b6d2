//! Case expansion, coverage and the end-to-end verdict.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::certify::{check_lemma2, check_witness, CasePattern, Certificate, Slot, TupleSpec, Witness};
use crate::scheme::{Classification, ProofScheme};
use crate::signspace::half_size;
use crate::solve::QpStatus;

/// The `2ᵏ` concrete cases of a tuple in lexicographic order.
pub fn expand_cases(t: &TupleSpec) -> Vec<CasePattern> {
    let k = t.k();
    (0..1usize << k)
        .map(|bits| {
            let slots = (0..k)
                .map(|l| Slot::Leg(2 * l + 1 + (bits >> (k - 1 - l) & 1)))
                .collect();
            CasePattern::new(slots).expect("positions lie in their slots")
        })
        .collect()
}

/// The certificate's case rewritten in `t`'s orientation, if the certificate
/// is about `t`. Pairs must appear in the same order; each pair may be
/// listed either way round.
fn oriented_pattern(t: &TupleSpec, cert: &Certificate) -> Option<CasePattern> {
    if cert.tuple.n() != t.n() || cert.tuple.k() != t.k() {
        return None;
    }
    let mut slots = Vec::with_capacity(t.k());
    for ((a, b), (&(c, d), s)) in t.pairs().iter().zip(cert.tuple.pairs().iter().zip(cert.pattern.slots())) {
        let flipped = if (*a, *b) == (c, d) {
            false
        } else if (*a, *b) == (d, c) {
            true
        } else {
            return None;
        };
        slots.push(match *s {
            Slot::Leg(p) if flipped => Slot::Leg(if p % 2 == 1 { p + 1 } else { p - 1 }),
            other => other,
        });
    }
    CasePattern::new(slots).ok()
}

fn covers(pattern: &CasePattern, case: &CasePattern) -> bool {
    pattern
        .slots()
        .iter()
        .zip(case.slots())
        .all(|(p, c)| *p == Slot::Wild || p == c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    /// Every concrete case with the indices of the certificates covering it.
    pub cases: Vec<(CasePattern, Vec<usize>)>,
    pub uncovered: Vec<CasePattern>,
}

impl Coverage {
    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Matches every concrete case of `t` against the certificates about `t`;
/// a wildcard covers both legs of its pair.
pub fn check_coverage(t: &TupleSpec, certs: &[Certificate]) -> Coverage {
    let oriented: Vec<(usize, CasePattern)> = certs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| oriented_pattern(t, c).map(|p| (i, p)))
        .collect();
    let cases: Vec<(CasePattern, Vec<usize>)> = expand_cases(t)
        .into_iter()
        .map(|case| {
            let ids = oriented.iter().filter(|(_, p)| covers(p, &case)).map(|(i, _)| *i).collect();
            (case, ids)
        })
        .collect();
    let uncovered = cases.iter().filter(|(_, ids)| ids.is_empty()).map(|(c, _)| c.clone()).collect();
    Coverage { cases, uncovered }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseVerdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "UNCOVERED")]
    Uncovered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    #[serde(serialize_with = "ser_pattern")]
    pub pattern: CasePattern,
    pub certificate_id: Option<usize>,
    pub verdict: CaseVerdict,
}

fn ser_pattern<S: serde::Serializer>(p: &CasePattern, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.tokens())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleReport {
    pub pairs: Vec<[usize; 2]>,
    pub cases: Vec<CaseOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: &'static str,
    pub detail: String,
}

impl Failure {
    fn new(check: &'static str, detail: impl Into<String>) -> Self {
        Failure {
            check,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub n: usize,
    pub tuples: Vec<TupleReport>,
    pub classification: Value,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn absorb(&mut self, failures: Vec<Failure>) {
        self.failures.extend(failures);
        self.verdict = if self.failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks, in order:
/// (a) the tuples and implied twins partition `S⁺`;
/// (b) every non-leading pair of every tuple is a classified twin;
/// (c) every implied twin is a classified twin;
/// (d) every case of every tuple, and both cases of every twin, is covered;
/// (e) every certificate passes [`check_lemma2`].
pub fn verify_all(scheme: &ProofScheme, certs: &[Certificate], classification: &Classification) -> VerificationReport {
    let mut failures = Vec::new();

    for d in scheme.partition_defects() {
        failures.push(Failure::new("partition", d));
    }
    if classification.n != scheme.n {
        failures.push(Failure::new(
            "classification",
            format!("classification is for n = {}, scheme for n = {}", classification.n, scheme.n),
        ));
    }

    let mut twin_obligations = BTreeSet::new();
    for t in scheme.tuples() {
        for &(i, j) in &t.spec.pairs()[1..] {
            if !classification.is_twin((i, j)) {
                failures.push(Failure::new(
                    "twin-classification",
                    format!("tuple {t}: pair ({i}, {j}) is not a twin"),
                ));
            }
            twin_obligations.insert((i.min(j), i.max(j)));
        }
    }
    for &(i, j) in &scheme.implied_twins {
        if !classification.is_twin((i, j)) {
            failures.push(Failure::new("implied-twin", format!("implied pair ({i}, {j}) is not a twin")));
        }
        twin_obligations.insert((i, j));
    }

    let verdicts: Vec<Result<(), String>> = certs
        .par_iter()
        .map(|c| check_lemma2(c).map_err(|clause| clause.to_string()))
        .collect();
    for (id, (c, v)) in certs.iter().zip(&verdicts).enumerate() {
        if let Err(clause) = v {
            failures.push(Failure::new(
                "certificate",
                format!("certificate #{id} {} case {}: {clause}", c.tuple, c.pattern),
            ));
        }
    }

    let mut obligations: Vec<TupleSpec> = scheme.tuples().map(|t| t.spec.clone()).collect();
    for (i, j) in twin_obligations {
        match TupleSpec::new(scheme.n, vec![(i, j)]) {
            Ok(t) => obligations.push(t),
            Err(e) => failures.push(Failure::new("partition", format!("pair ({i}, {j}): {e}"))),
        }
    }
    let mut tuples = Vec::with_capacity(obligations.len());
    for t in &obligations {
        let cov = check_coverage(t, certs);
        let cases = cov
            .cases
            .into_iter()
            .map(|(pattern, ids)| {
                let good = ids.iter().copied().find(|&i| verdicts[i].is_ok());
                let (certificate_id, verdict) = match (good, ids.first()) {
                    (Some(i), _) => (Some(i), CaseVerdict::Pass),
                    (None, Some(&i)) => (Some(i), CaseVerdict::Fail),
                    (None, None) => (None, CaseVerdict::Uncovered),
                };
                if verdict != CaseVerdict::Pass {
                    failures.push(Failure::new(
                        "coverage",
                        format!("tuple {t} case {pattern}: {}", if good.is_none() && !ids.is_empty() {
                            "only failing certificates"
                        } else {
                            "no certificate"
                        }),
                    ));
                }
                CaseOutcome {
                    pattern,
                    certificate_id,
                    verdict,
                }
            })
            .collect();
        tuples.push(TupleReport {
            pairs: t.pairs().iter().map(|&(i, j)| [i, j]).collect(),
            cases,
        });
    }

    let mut report = VerificationReport {
        verdict: Verdict::Pass,
        n: scheme.n,
        tuples,
        classification: classification.to_json(),
        failures: Vec::new(),
    };
    report.absorb(failures);
    report
}

/// Cross-checks shipped single-leg data against a classification: each
/// certificate `[[ℓ, ·]]`, case `[1]`, must pass and sit on a certified leg;
/// each witness must pass and sit on a refuted leg; every leg needs one of
/// the two.
pub fn verify_leg_data(classification: &Classification, leg_certs: &[Certificate], witnesses: &[Witness]) -> Vec<Failure> {
    let n = classification.n;
    let mut failures = Vec::new();
    let mut seen = vec![false; half_size(n)];
    for (id, c) in leg_certs.iter().enumerate() {
        let leg = match c.chosen_legs()[..] {
            [Some(leg)] if c.pattern.slots() == [Slot::Leg(1)] => leg,
            _ => {
                failures.push(Failure::new(
                    "leg-data",
                    format!("leg certificate #{id} is not a single-leg case [1]"),
                ));
                continue;
            }
        };
        if let Err(clause) = check_lemma2(c) {
            failures.push(Failure::new("leg-data", format!("leg certificate #{id} (leg {leg}): {clause}")));
            continue;
        }
        if classification.decisions[leg].result.status != QpStatus::Cert {
            failures.push(Failure::new("leg-data", format!("leg {leg} certified but classified refuted")));
        }
        seen[leg] = true;
    }
    for w in witnesses {
        let leg = w.leg.index();
        if let Err(clause) = check_witness(w) {
            failures.push(Failure::new("leg-data", format!("witness for leg {leg}: {clause}")));
            continue;
        }
        if classification.decisions[leg].result.status != QpStatus::Refute {
            failures.push(Failure::new("leg-data", format!("leg {leg} refuted but classified certified")));
        }
        if seen[leg] {
            failures.push(Failure::new("leg-data", format!("leg {leg} has both a certificate and a witness")));
        }
        seen[leg] = true;
    }
    for (leg, ok) in seen.iter().enumerate() {
        if !ok {
            failures.push(Failure::new("leg-data", format!("leg {leg} has neither certificate nor witness")));
        }
    }
    failures
}
