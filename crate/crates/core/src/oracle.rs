//! Exhaustive counting over all `2ⁿ` sign vectors.
//!
//! The vector is scaled to integers by the lcm of its denominators, then the
//! signs are walked in Gray-code order so each step updates `εa` by a single
//! `±2aᵢ`. Counts use `(εa)² ≤ aa'` (good) and `(εa)² < aa'` (strict).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{serde_rational, Rational, RowVector};
use crate::library;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub n: usize,
    pub total: u64,
    pub count_le: u64,
    pub count_lt: u64,
}

impl CountResult {
    pub fn fraction_le(&self) -> Rational {
        Rational::new(self.count_le.into(), self.total.into())
    }

    pub fn fraction_lt(&self) -> Rational {
        Rational::new(self.count_lt.into(), self.total.into())
    }
}

/// Exact counts for any rational `a` of length `≤ 16`.
pub fn count_good(a: &RowVector) -> CountResult {
    let mut den = BigInt::one();
    for x in a {
        den = den.lcm(x.denom());
    }
    let nums: Vec<BigInt> = a.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let bound: BigInt = BigInt::one() << 56usize;
    if nums.iter().all(|x| x.magnitude() < bound.magnitude()) {
        let small: Vec<i128> = nums.iter().map(|x| x.to_i128().expect("bounded")).collect();
        count_ints(&small)
    } else {
        count_big(&nums)
    }
}

/// Fast path for integer vectors with `|aᵢ| < 2⁵⁶`.
pub fn count_ints(a: &[i128]) -> CountResult {
    let n = a.len();
    let norm: i128 = a.iter().map(|x| x * x).sum();
    let mut s: i128 = a.iter().sum();
    let mut minus = 0usize;
    let (mut le, mut lt) = (0u64, 0u64);
    let tally = |s: i128, le: &mut u64, lt: &mut u64| {
        let sq = s * s;
        if sq <= norm {
            *le += 1;
            if sq < norm {
                *lt += 1;
            }
        }
    };
    tally(s, &mut le, &mut lt);
    for g in 1u64..(1 << n) {
        let bit = g.trailing_zeros() as usize;
        let c = n - 1 - bit;
        if minus >> bit & 1 == 0 {
            s -= 2 * a[c];
        } else {
            s += 2 * a[c];
        }
        minus ^= 1 << bit;
        tally(s, &mut le, &mut lt);
    }
    CountResult {
        n,
        total: 1 << n,
        count_le: le,
        count_lt: lt,
    }
}

fn count_big(a: &[BigInt]) -> CountResult {
    let n = a.len();
    let norm: BigInt = a.iter().map(|x| x * x).sum();
    let mut s: BigInt = a.iter().sum();
    let mut minus = 0usize;
    let (mut le, mut lt) = (0u64, 0u64);
    for g in 0u64..(1 << n) {
        if g > 0 {
            let bit = g.trailing_zeros() as usize;
            let step = &a[n - 1 - bit] * 2;
            if minus >> bit & 1 == 0 {
                s -= step;
            } else {
                s += step;
            }
            minus ^= 1 << bit;
        }
        let sq = &s * &s;
        if sq <= norm {
            le += 1;
            if sq < norm {
                lt += 1;
            }
        }
    }
    CountResult {
        n,
        total: 1 << n,
        count_le: le,
        count_lt: lt,
    }
}

/// One evaluated row of the strict-fraction table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CkEntry {
    /// Number of nonzero coordinates of `a`.
    pub k: usize,
    pub name: &'static str,
    pub a: RowVector,
    #[serde(with = "serde_rational")]
    pub fraction_lt: Rational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub paper_value: Option<Rational>,
    /// `None` when no constant is claimed at this vector.
    pub agrees: Option<bool>,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Strict fractions at every library vector except `R₀`, next to the
/// published constants `c_k`.
pub fn hk_table() -> Vec<CkEntry> {
    let claimed: [(&str, Option<(i64, i64)>); 7] = [
        ("R1", Some((0, 1))),
        ("R2", Some((3, 8))),
        ("R3*", Some((15, 32))),
        ("R4", Some((7, 16))),
        ("R3", Some((63, 128))),
        ("R5", None),
        ("R6", None),
    ];
    let lib = library::named();
    claimed
        .iter()
        .map(|&(name, published)| {
            let a = lib.iter().find(|(n, _)| *n == name).expect("library entry").1.clone();
            let fraction_lt = count_good(&a).fraction_lt();
            let paper_value = published.map(|(p, q)| Rational::new(p.into(), q.into()));
            CkEntry {
                k: a.iter().filter(|x| !x.is_zero()).count(),
                name,
                agrees: paper_value.as_ref().map(|p| *p == fraction_lt),
                a,
                fraction_lt,
                paper_value,
            }
        })
        .collect()
}

/// `k,vector,computed,paper_value,match` with one row per entry.
pub fn hk_table_csv(rows: &[CkEntry]) -> String {
    let mut out = String::from("k,vector,computed,paper_value,match\n");
    for r in rows {
        let published = r.paper_value.as_ref().map(ToString::to_string).unwrap_or_default();
        let agrees = match r.agrees {
            Some(true) => "yes",
            Some(false) => "no",
            None => "",
        };
        out.push_str(&format!("{},{},{},{},{}\n", r.k, r.name, r.fraction_lt, published, agrees));
    }
    out
}

const BATCH: u64 = 1024;

/// A random point of `Q` with common denominator `d ∈ [1, 1000]` and
/// numerators in `[0, d]`, returned as its integer numerators.
pub fn random_cone_point(rng: &mut impl Rng, n: usize) -> Vec<i128> {
    let d: i128 = rng.gen_range(1..=1000);
    let mut v: Vec<i128> = (0..n).map(|_| rng.gen_range(0..=d)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Minimum of `count_le / 2ⁿ` over `samples` random points of `Q`.
///
/// Batch `b` draws from stream `b` of a ChaCha8 generator seeded with `seed`,
/// so the result does not depend on the number of worker threads.
pub fn sample_min_fraction(n: usize, samples: u64, seed: u64) -> Result<Rational> {
    crate::exactnum::check_dim(n)?;
    if n > 9 {
        return Err(crate::Error::InvalidDimension(n));
    }
    let batches = samples.div_ceil(BATCH);
    let best = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = BATCH.min(samples - b * BATCH);
            (0..count)
                .map(|_| count_ints(&random_cone_point(&mut rng, n)).count_le)
                .min()
                .unwrap_or(1 << n)
        })
        .min()
        .unwrap_or(1 << n);
    Ok(Rational::new(best.into(), (1u64 << n).into()))
}
