//! Splits the 128 conjugate pairs at n = 9 into twins and non-twins and
//! shows a witness for each non-twin.

use signcert::certify::check_witness;
use signcert::scheme::{classify_pairs, qstar_legs_of_non_twins, special_twins};

fn main() -> signcert::Result<()> {
    let c = classify_pairs(9)?;
    println!("{} twins, {} non-twins", c.twins.len(), c.non_twins.len());
    for t in &c.non_twins {
        for w in &t.witnesses {
            let norm_sq = check_witness(w).expect("solver witness must check");
            println!("  ({:3}, {:3})  leg {:3}  RR' = {norm_sq:<6}  R = {}", t.pair.0, t.pair.1, w.leg.index(), w.r);
        }
    }

    let qstar = qstar_legs_of_non_twins(&c)?;
    let single = qstar.iter().filter(|(_, legs)| legs.len() == 1).count();
    println!("non-twins with exactly one leg in Q*: {single}/{}", qstar.len());
    println!("twins certified by the R1/R2/R3 argument: {:?}", special_twins(&c)?);
    Ok(())
}
