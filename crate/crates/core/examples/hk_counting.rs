//! Brute-force fractions of sign vectors with |εa| < ‖a‖ at the named
//! vectors, next to the published constants, plus a seeded random sweep.

use signcert::exactnum::parse_vector;
use signcert::oracle::{count_good, hk_table, hk_table_csv, sample_min_fraction};

fn main() -> signcert::Result<()> {
    print!("{}", hk_table_csv(&hk_table()));

    let a = parse_vector("3,2,2,1", 4)?;
    let c = count_good(&a);
    println!("a = ({a}): {} of {} with |εa| <= ‖a‖, {} strict", c.count_le, c.total, c.count_lt);

    let min = sample_min_fraction(9, 20_000, 42)?;
    println!("smallest fraction over 20000 random a in Q (n = 9, seed 42): {min}");
    Ok(())
}
