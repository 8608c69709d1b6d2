//! Dimension reduction of row-structured schemes.

use crate::certify::TupleSpec;
use crate::scheme::{ProofScheme, SchemeRow, SchemeTuple};
use crate::{Error, Result};

/// Keeps the rows whose leading index is odd and halves every index, giving
/// a scheme for `n - 1`. Only structure is checked: the result must again
/// cover `S⁺` with explicit tuples, each index exactly once.
pub fn reduce_even_rows(scheme: &ProofScheme) -> Result<ProofScheme> {
    if scheme.n < 3 {
        return Err(Error::InvalidDimension(scheme.n));
    }
    if !scheme.implied_twins.is_empty() {
        return Err(Error::Scheme("reduction needs a scheme listing every pair explicitly".into()));
    }
    let n = scheme.n - 1;
    let rows = scheme
        .rows
        .iter()
        .filter(|r| r.lead() % 2 == 1)
        .map(|r| {
            let tuples = r
                .tuples
                .iter()
                .map(|t| {
                    let pairs = t.spec.pairs().iter().map(|&(i, j)| (i / 2, j / 2)).collect();
                    let spec = TupleSpec::new(n, pairs).map_err(|e| Error::Scheme(format!("reducing {t}: {e}")))?;
                    Ok(SchemeTuple {
                        spec,
                        not_needed: t.not_needed.clone(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SchemeRow { tuples })
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Scheme("no row has an odd leading index".into()));
    }
    let reduced = ProofScheme::new(n, rows)?;
    if !reduced.implied_twins.is_empty() {
        let (i, j) = reduced.implied_twins[0];
        return Err(Error::Scheme(format!(
            "reduced scheme misses {} pairs, first ({i}, {j})",
            reduced.implied_twins.len()
        )));
    }
    Ok(reduced)
}
