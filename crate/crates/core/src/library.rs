//! The fixed vectors `R₀ … R₆` (n = 9) that the shipped certificates use.

use crate::exactnum::RowVector;

fn v(nums: [i64; 9], den: i64) -> RowVector {
    RowVector::from_ints(&nums, den).expect("static data")
}

pub fn r0() -> RowVector {
    v([0; 9], 1)
}

pub fn r1() -> RowVector {
    v([1, 0, 0, 0, 0, 0, 0, 0, 0], 1)
}

pub fn r2() -> RowVector {
    v([1, 1, 1, 1, 0, 0, 0, 0, 0], 2)
}

pub fn r3() -> RowVector {
    v([1; 9], 3)
}

pub fn r3_star() -> RowVector {
    v([2, 1, 1, 1, 1, 1, 0, 0, 0], 3)
}

pub fn r4() -> RowVector {
    v([3, 1, 1, 1, 1, 1, 1, 1, 0], 4)
}

pub fn r5() -> RowVector {
    v([3, 3, 1, 1, 1, 1, 1, 1, 1], 5)
}

pub fn r6() -> RowVector {
    v([4, 2, 2, 2, 2, 1, 1, 1, 1], 6)
}

/// `(name, vector)` for every library entry, in table order.
pub fn named() -> Vec<(&'static str, RowVector)> {
    vec![
        ("R0", r0()),
        ("R1", r1()),
        ("R2", r2()),
        ("R3", r3()),
        ("R3*", r3_star()),
        ("R4", r4()),
        ("R5", r5()),
        ("R6", r6()),
    ]
}

/// `R₁ = (1, 0, …, 0)` in dimension `n`.
pub fn unit_first(n: usize) -> crate::Result<RowVector> {
    let mut nums = vec![0; n];
    if let Some(x) = nums.first_mut() {
        *x = 1;
    }
    RowVector::from_ints(&nums, 1)
}
