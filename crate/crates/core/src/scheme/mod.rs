//! Proof schemes: which tuples of conjugate pairs are shown to be tuplets,
//! plus the pipeline that checks a scheme end to end.
//!
//! Text format, one row per line:
//!
//! ```text
//! # comment
//! n = 9
//! (0 255 (94 161) (105 150) (109 146))
//! (10 245 (87 168)) (100 155) ((53 202) (73 182)- 34 221)
//! ```
//!
//! Each parenthesized group is a tuple. Its two bare numbers are the leading
//! pair, nested groups are twins, and a trailing `-` marks a twin that is not
//! needed. The JSON form is `{"n": 9, "tuples": [[[i, j], …], …]}` with one
//! tuple per row.

mod classify;
mod reduce;
mod verify;

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::certify::TupleSpec;
use crate::exactnum::check_dim;
use crate::signspace::half_size;
use crate::{Error, Result};

pub use classify::{classify_pairs, classify_legs, qstar_legs_of_non_twins, special_twins, Classification, NonTwin};
pub use reduce::reduce_even_rows;
pub use verify::{
    check_coverage, expand_cases, verify_all, verify_leg_data, CaseOutcome, CaseVerdict, Coverage, Failure,
    TupleReport, VerificationReport, Verdict,
};

/// A tuple inside a scheme, with a flag per pair marking twins that the
/// scheme declares unnecessary. The leading pair is never flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeTuple {
    pub spec: TupleSpec,
    pub not_needed: Vec<bool>,
}

impl SchemeTuple {
    pub fn new(spec: TupleSpec) -> Self {
        let not_needed = vec![false; spec.k()];
        SchemeTuple { spec, not_needed }
    }
}

impl fmt::Display for SchemeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.spec.pairs();
        write!(f, "({} {}", pairs[0].0, pairs[0].1)?;
        for (p, skip) in pairs[1..].iter().zip(&self.not_needed[1..]) {
            write!(f, " ({} {}){}", p.0, p.1, if *skip { "-" } else { "" })?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeRow {
    pub tuples: Vec<SchemeTuple>,
}

impl SchemeRow {
    /// First index of the row's first leading pair.
    pub fn lead(&self) -> usize {
        self.tuples[0].spec.pairs()[0].0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScheme {
    pub n: usize,
    pub rows: Vec<SchemeRow>,
    /// Conjugate pairs `(i, j)`, `i < j`, not mentioned by any tuple.
    pub implied_twins: Vec<(usize, usize)>,
}

impl ProofScheme {
    /// Rejects any index used twice; the remaining pairs become implied twins.
    pub fn new(n: usize, rows: Vec<SchemeRow>) -> Result<Self> {
        check_dim(n)?;
        let mut seen = BTreeSet::new();
        for t in rows.iter().flat_map(|r| &r.tuples) {
            if t.spec.n() != n {
                return Err(Error::Scheme(format!("tuple {t} has dimension {}", t.spec.n())));
            }
            for x in t.spec.legs() {
                if !seen.insert(x) {
                    return Err(Error::Scheme(format!("tuple {t}: duplicate {x}")));
                }
            }
        }
        let top = half_size(n) - 1;
        let implied_twins = (0..half_size(n) / 2)
            .filter(|i| !seen.contains(i))
            .map(|i| (i, top - i))
            .collect();
        Ok(ProofScheme { n, rows, implied_twins })
    }

    pub fn tuples(&self) -> impl Iterator<Item = &SchemeTuple> {
        self.rows.iter().flat_map(|r| &r.tuples)
    }

    /// Indices of `S⁺` not covered exactly once by tuples and implied twins.
    pub fn partition_defects(&self) -> Vec<String> {
        let mut count = vec![0usize; half_size(self.n)];
        let explicit = self.tuples().flat_map(|t| t.spec.legs());
        let implied = self.implied_twins.iter().flat_map(|&(i, j)| [i, j]);
        for x in explicit.chain(implied) {
            if x < count.len() {
                count[x] += 1;
            }
        }
        count
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 1)
            .map(|(i, c)| format!("index {i} appears {c} times"))
            .collect()
    }

    /// Table-style text that [`parse_scheme`] reads back.
    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}\n", self.n);
        for row in &self.rows {
            let groups: Vec<String> = row.tuples.iter().map(ToString::to_string).collect();
            out.push_str(&groups.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let tuples: Vec<Value> = self
            .tuples()
            .map(|t| json!(t.spec.pairs().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>()))
            .collect();
        json!({ "version": 1, "n": self.n, "tuples": tuples })
    }
}

#[derive(Deserialize)]
struct SchemeJson {
    n: usize,
    tuples: Vec<Vec<[usize; 2]>>,
}

/// Parses either the JSON or the parenthesized text form.
pub fn parse_scheme(text: &str) -> Result<ProofScheme> {
    if text.trim_start().starts_with('{') {
        let raw: SchemeJson = serde_json::from_str(text)?;
        let rows = raw
            .tuples
            .iter()
            .map(|pairs| {
                let spec = TupleSpec::new(raw.n, pairs.iter().map(|p| (p[0], p[1])).collect())
                    .map_err(|e| Error::Scheme(format!("tuple {pairs:?}: {e}")))?;
                Ok(SchemeRow {
                    tuples: vec![SchemeTuple::new(spec)],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return ProofScheme::new(raw.n, rows);
    }
    parse_text(text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Dash,
    Num(usize),
}

fn tokenize(line: &str, ln: usize) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            '-' => out.push(Tok::Dash),
            c if c.is_whitespace() || c == ',' => {}
            c if c.is_ascii_digit() => {
                let mut v = 0usize;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as usize))
                        .ok_or_else(|| Error::Parse(format!("line {ln}: index too large")))?;
                    chars.next();
                }
                out.push(Tok::Num(v));
                continue;
            }
            other => return Err(Error::Parse(format!("line {ln}: unexpected character {other:?}"))),
        }
        chars.next();
    }
    Ok(out)
}

fn parse_text(text: &str) -> Result<ProofScheme> {
    let mut n: Option<usize> = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('n') {
            let value = rest.trim_start().strip_prefix('=').map(str::trim);
            match value.and_then(|v| v.parse::<usize>().ok()) {
                Some(v) if n.is_none() => {
                    check_dim(v)?;
                    n = Some(v);
                    continue;
                }
                Some(_) => return Err(Error::Parse(format!("line {ln}: repeated dimension header"))),
                None => return Err(Error::Parse(format!("line {ln}: bad dimension header {line:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse(format!("line {ln}: tuple before the `n = …` header")))?;
        rows.push(parse_row(line, ln, n)?);
    }
    let n = n.ok_or_else(|| Error::Parse("missing `n = …` header".into()))?;
    ProofScheme::new(n, rows)
}

fn parse_row(line: &str, ln: usize, n: usize) -> Result<SchemeRow> {
    let toks = tokenize(line, ln)?;
    let bad = |m: &str| Error::Parse(format!("line {ln}: {m}"));
    let mut tuples = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i] != Tok::Open {
            return Err(bad("expected '('"));
        }
        i += 1;
        let mut bare = Vec::new();
        let mut twins: Vec<((usize, usize), bool)> = Vec::new();
        loop {
            match toks.get(i) {
                Some(Tok::Num(v)) => {
                    bare.push(*v);
                    i += 1;
                }
                Some(Tok::Open) => match toks.get(i + 1..i + 4) {
                    Some([Tok::Num(a), Tok::Num(b), Tok::Close]) => {
                        i += 4;
                        let skip = toks.get(i) == Some(&Tok::Dash);
                        if skip {
                            i += 1;
                        }
                        twins.push(((*a, *b), skip));
                    }
                    _ => return Err(bad("a nested group must hold exactly two indices")),
                },
                Some(Tok::Close) => {
                    i += 1;
                    break;
                }
                Some(Tok::Dash) => return Err(bad("'-' must follow a nested group")),
                None => return Err(bad("unbalanced parentheses")),
            }
        }
        let [a, b] = bare[..] else {
            return Err(bad(&format!("a tuple needs exactly two leading indices, found {}", bare.len())));
        };
        let mut pairs = vec![(a, b)];
        let mut not_needed = vec![false];
        for (p, skip) in twins {
            pairs.push(p);
            not_needed.push(skip);
        }
        let text = render_pairs(&pairs);
        let spec = TupleSpec::new(n, pairs).map_err(|e| Error::Scheme(format!("line {ln}: tuple {text}: {e}")))?;
        tuples.push(SchemeTuple { spec, not_needed });
    }
    if tuples.is_empty() {
        return Err(bad("empty row"));
    }
    Ok(SchemeRow { tuples })
}

/// One tuple in text form, e.g. `(0 255 (94 161))`; the outer parentheses
/// may be omitted.
pub fn parse_tuple(text: &str, n: usize) -> Result<TupleSpec> {
    let t = text.trim();
    let row = parse_row(t, 1, n).or_else(|e| parse_row(&format!("({t})"), 1, n).map_err(|_| e))?;
    match &row.tuples[..] {
        [one] => Ok(one.spec.clone()),
        _ => Err(Error::Parse(format!("expected a single tuple, found {}", row.tuples.len()))),
    }
}

fn render_pairs(pairs: &[(usize, usize)]) -> String {
    let mut s = format!("({} {}", pairs[0].0, pairs[0].1);
    for (a, b) in &pairs[1..] {
        s.push_str(&format!(" ({a} {b})"));
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn table1_shape() {
        let s = data::table1().unwrap();
        assert_eq!(s.n, 9);
        assert_eq!(s.tuples().count(), 34);
        assert!(s.partition_defects().is_empty());
        let explicit: usize = s.tuples().map(|t| t.spec.legs().len()).sum();
        assert_eq!(explicit + 2 * s.implied_twins.len(), 256);
        assert_eq!(s.tuples().next().unwrap().spec.pairs(), &[(0, 255), (94, 161), (105, 150), (109, 146)]);
    }

    #[test]
    fn text_and_json_agree() {
        let a = parse_scheme(data::TABLE1_TEXT).unwrap();
        let b = parse_scheme(data::TABLE1_JSON).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_scheme(&a.to_text()).unwrap(), a);
        assert_eq!(parse_scheme(&a.to_json().to_string()).unwrap(), a);
    }

    #[test]
    fn table2_structure() {
        let s = data::table2().unwrap();
        assert_eq!(s.rows.len(), 16);
        assert!(s.implied_twins.is_empty());
        assert!(s.partition_defects().is_empty());
        let flagged: Vec<String> = s
            .tuples()
            .filter(|t| t.not_needed.iter().any(|x| *x))
            .map(ToString::to_string)
            .collect();
        assert_eq!(flagged.len(), 4);
        assert!(flagged.contains(&"(34 221 (53 202) (73 182)-)".to_string()));
        assert_eq!(parse_scheme(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        let err = parse_scheme("n = 9\n(0 255 (94 161))\n(1 254 (94 161))\n").unwrap_err();
        assert!(err.to_string().contains("duplicate 94"), "{err}");
        let err = parse_scheme("n = 9\n(0 254)\n").unwrap_err();
        assert!(err.to_string().contains("not conjugate"), "{err}");
        let err = parse_scheme("n = 9\n(0 255 (1 254) (2 253) (3 252) (4 251))\n").unwrap_err();
        assert!(err.to_string().contains("(0 255 (1 254) (2 253) (3 252) (4 251))"), "{err}");
        assert!(parse_scheme("(0 255)\n").is_err());
        assert!(parse_scheme("n = 9\n(0 255\n").is_err());
        assert!(parse_scheme("n = 9\n(0 255 (1 254 3))\n").is_err());
        assert!(parse_scheme(r#"{"n": 9, "tuples": [[[0, 255]], [[255, 0]]]}"#).is_err());
    }
}
