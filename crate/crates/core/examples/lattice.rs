//! Join and meet on sign vectors under the cumulative-sum order.

use signcert::cone::{fold_signs, glb_filter, in_qstar, LatticeOp};
use signcert::{library, SignVector};

fn main() -> signcert::Result<()> {
    let e = |i| SignVector::from_index(i, 9);
    let join = fold_signs(LatticeOp::Join, [e(219)?, e(234)?])?;
    let meet = fold_signs(LatticeOp::Meet, [e(219)?, e(234)?])?;
    println!("join(219, 234) = {join}");
    println!("meet(219, 234) = {meet}");

    for (name, r) in [("R2", library::r2()), ("R3", library::r3())] {
        let glb = glb_filter(9, |s| in_qstar(&(&r + &s.to_row_vector())))?;
        println!("glb {{e in S+ : {name} + e in Q*}} = {glb}");
    }
    println!("glb {{e in S+ : e in Q*}} = {}", glb_filter(9, |s| in_qstar(&s.to_row_vector()))?);

    let top = fold_signs(LatticeOp::Join, (240..256).map(e).collect::<signcert::Result<Vec<_>>>()?)?;
    println!("lub {{240..255}} = {top}");
    Ok(())
}
