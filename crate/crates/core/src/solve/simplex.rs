//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `max cᵀy` subject to `A_i y ≤ b_i` or `A_i y = b_i` and `y ⪰ 0`.

use num_traits::{One, Signed, Zero};

use crate::exactnum::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Eq,
}

#[derive(Clone, Debug, Default)]
pub struct Lp {
    pub rows: Vec<(Vec<Rational>, RowKind, Rational)>,
    pub objective: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub y: Vec<Rational>,
    pub value: Rational,
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.cols
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for x in self.t[r].iter_mut() {
            *x /= &p;
        }
        let pr = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · y` over the current tableau using Bland's rule;
    /// only columns in `allowed` may enter.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> Result<()> {
        loop {
            // reduced cost of column j: cost_j - Σ cost_{basis_i} t[i][j]
            let reduced = |j: usize| -> Rational {
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.t[i][j].is_zero() {
                        d -= &cost[b] * &self.t[i][j];
                    }
                }
                d
            };
            let Some(enter) = (0..allowed).find(|&j| !self.basis.contains(&j) && reduced(j).is_positive()) else {
                return Ok(());
            };
            let rhs = self.rhs();
            let mut leave: Option<usize> = None;
            for i in 0..self.t.len() {
                if !self.t[i][enter].is_positive() {
                    continue;
                }
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        let a = &self.t[i][rhs] * &self.t[l][enter];
                        let b = &self.t[l][rhs] * &self.t[i][enter];
                        if a < b || (a == b && self.basis[i] < self.basis[l]) {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
            let Some(r) = leave else {
                return Err(Error::Solver("LP is unbounded".into()));
            };
            self.pivot(r, enter);
        }
    }
}

impl Lp {
    pub fn maximize(&self) -> Result<LpSolution> {
        let nv = self.objective.len();
        let m = self.rows.len();
        let slack_count = self.rows.iter().filter(|r| r.1 == RowKind::Le).count();
        // columns: structural, slacks, artificials
        let art0 = nv + slack_count;
        let cols = art0 + m;
        let mut t = Vec::with_capacity(m);
        let mut slack = nv;
        for (i, (a, kind, b)) in self.rows.iter().enumerate() {
            if a.len() != nv {
                return Err(Error::Solver("LP row length mismatch".into()));
            }
            let mut row = vec![Rational::zero(); cols + 1];
            row[..nv].clone_from_slice(a);
            if *kind == RowKind::Le {
                row[slack] = Rational::one();
                slack += 1;
            }
            row[cols] = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            row[art0 + i] = Rational::one();
            t.push(row);
        }
        let mut tab = Tableau {
            t,
            basis: (art0..cols).collect(),
            cols,
        };

        let mut phase1 = vec![Rational::zero(); cols];
        for x in &mut phase1[art0..] {
            *x = -Rational::one();
        }
        tab.optimize(&phase1, cols)?;
        if tab.basis.iter().enumerate().any(|(i, &b)| b >= art0 && !tab.t[i][cols].is_zero()) {
            return Err(Error::Solver("LP is infeasible".into()));
        }
        // drive zero-level artificials out of the basis where possible
        for i in 0..m {
            if tab.basis[i] >= art0 {
                if let Some(j) = (0..art0).find(|&j| !tab.t[i][j].is_zero()) {
                    tab.pivot(i, j);
                }
            }
        }

        let mut phase2 = vec![Rational::zero(); cols];
        phase2[..nv].clone_from_slice(&self.objective);
        tab.optimize(&phase2, art0)?;

        let mut y = vec![Rational::zero(); nv];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < nv {
                y[b] = tab.t[i][cols].clone();
            }
        }
        let value = y.iter().zip(&self.objective).map(|(a, b)| a * b).sum();
        Ok(LpSolution { y, value })
    }
}
