//! Minimum-norm `R` with `R - L ∈ Q*` for a fixed `L`.
//!
//! With `P = cumsum(R)` the problem is `min Σ (P_i - P_{i-1})²` subject to
//! `P_0 = 0` and `P_i ≥ cumsum(L)_i`. Because `P_n` is free, the optimum is the
//! least concave majorant of the running maximum `M_i = max(0, max_{j≤i} L̄_j)`,
//! and `R` is its sequence of slopes.

use num_traits::Zero;

use crate::cone::cumsum;
use crate::exactnum::{Rational, RowVector};

pub fn min_norm_dominating(l: &RowVector) -> RowVector {
    let partials = cumsum(l);
    let mut hull: Vec<(usize, Rational)> = vec![(0, Rational::zero())];
    let mut running = Rational::zero();
    for (i, p) in partials.partials().iter().enumerate() {
        if *p > running {
            running = p.clone();
        }
        let (x3, y3) = (i + 1, running.clone());
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            let lhs = (y2 - y1) * Rational::from_integer((x3 - x1).into());
            let rhs = (&y3 - y1) * Rational::from_integer((x2 - x1).into());
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x3, y3));
    }
    let mut out = Vec::with_capacity(l.len());
    for w in hull.windows(2) {
        let (x1, y1) = &w[0];
        let (x2, y2) = &w[1];
        let slope = (y2 - y1) / Rational::from_integer((x2 - x1).into());
        out.extend(std::iter::repeat_n(slope, x2 - x1));
    }
    RowVector::new(out).expect("length preserved")
}
