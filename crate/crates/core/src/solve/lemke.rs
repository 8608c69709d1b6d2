//! Lemke's complementary pivoting for `w = Mz + q`, `w, z ⪰ 0`, `wᵀz = 0`,
//! in exact arithmetic with lexicographic degeneracy resolution.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::exactnum::Rational;
use crate::{Error, Result};

const MAX_PIVOTS: usize = 10_000;

/// Solves the LCP; fails on ray termination, which for a copositive-plus `M`
/// means the problem is infeasible.
pub fn solve_lcp(m: &[Vec<Rational>], q: &[Rational]) -> Result<Vec<Rational>> {
    let n = q.len();
    if q.iter().all(|x| !x.is_negative()) {
        return Ok(vec![Rational::zero(); n]);
    }
    // columns: w_0..w_{n-1}, z_0..z_{n-1}, z0, rhs
    let z0 = 2 * n;
    let rhs = 2 * n + 1;
    let mut t: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = vec![Rational::zero(); 2 * n + 2];
            row[i] = Rational::one();
            for j in 0..n {
                row[n + j] = -&m[i][j];
            }
            row[z0] = -Rational::one();
            row[rhs] = q[i].clone();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..n).collect();

    // z0 enters at the most negative q; ties go to the largest row index,
    // which keeps every row lexicographically positive.
    let mut r = 0;
    for i in 0..n {
        if t[i][rhs] <= t[r][rhs] {
            r = i;
        }
    }
    pivot(&mut t, r, z0);
    let mut leaving = basis[r];
    basis[r] = z0;

    for _ in 0..MAX_PIVOTS {
        let entering = if leaving < n { leaving + n } else { leaving - n };
        let Some(r) = ratio_test(&t, &basis, entering, n) else {
            return Err(Error::Solver("Lemke ray termination".into()));
        };
        pivot(&mut t, r, entering);
        leaving = basis[r];
        basis[r] = entering;
        if leaving == z0 {
            let mut z = vec![Rational::zero(); n];
            for (row, &b) in basis.iter().enumerate() {
                if (n..2 * n).contains(&b) {
                    z[b - n] = t[row][rhs].clone();
                }
            }
            return Ok(z);
        }
    }
    Err(Error::Solver("Lemke pivot limit reached".into()))
}

fn pivot(t: &mut [Vec<Rational>], r: usize, c: usize) {
    let p = t[r][c].clone();
    for x in t[r].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

/// Minimum-ratio row for column `c`; ties prefer the row holding `z0`, then
/// the lexicographically smallest `(rhs, B⁻¹ row) / t[i][c]`.
fn ratio_test(t: &[Vec<Rational>], basis: &[usize], c: usize, n: usize) -> Option<usize> {
    let rhs = 2 * n + 1;
    let z0 = 2 * n;
    let cands: Vec<usize> = (0..t.len()).filter(|&i| t[i][c].is_positive()).collect();
    let cmp_col = |i: usize, j: usize, col: usize| (&t[i][col] * &t[j][c]).cmp(&(&t[j][col] * &t[i][c]));
    let best = cands.iter().copied().reduce(|a, b| if cmp_col(b, a, rhs) == Ordering::Less { b } else { a })?;
    let ties: Vec<usize> = cands.into_iter().filter(|&i| cmp_col(i, best, rhs) == Ordering::Equal).collect();
    if let Some(&i) = ties.iter().find(|&&i| basis[i] == z0) {
        return Some(i);
    }
    ties.into_iter().reduce(|a, b| {
        for col in 0..n {
            match cmp_col(b, a, col) {
                Ordering::Less => return b,
                Ordering::Greater => return a,
                Ordering::Equal => {}
            }
        }
        a
    })
}
