//! Searches certificates for the two 8-tuples built from three non-twin
//! pairs and one twin, using only the exact QP and LP solvers. A case whose
//! minimum RR' exceeds 1 is refuted by its own optimum: at `a = R` every
//! chosen leg is bad, and the example counts the good legs of the whole
//! tuple there.

use signcert::certify::{check_lemma2, TupleSpec};
use signcert::scheme::expand_cases;
use signcert::solve::{derive_certificate, qp_min_norm, QpStatus};

fn main() -> signcert::Result<()> {
    for pairs in [
        vec![(7, 248), (20, 235), (33, 222), (77, 178)],
        vec![(15, 240), (24, 231), (66, 189), (87, 168)],
    ] {
        let tuple = TupleSpec::new(9, pairs)?;
        println!("{tuple}");
        let mut found = 0;
        for case in expand_cases(&tuple).into_iter().filter(|c| c.is_concrete()) {
            let qp = qp_min_norm(&tuple, &case)?;
            if qp.status == QpStatus::Refute {
                let aa = qp.r.norm_sq();
                let mut good = 0;
                for leg in tuple.legs() {
                    let v = signcert::SignVector::from_index(leg, 9)?.eval(&qp.r)?;
                    good += usize::from(&v * &v <= aa);
                }
                println!("  {case}  RR' = {}  refuted at a = ({}): {good} of 8 legs good", qp.value, qp.r);
                continue;
            }
            let cert = derive_certificate(&tuple, &case)?.expect("certified case");
            check_lemma2(&cert).expect("solver certificate must check");
            found += 1;
            println!("  {case}  RR' = {}  R = ({})", qp.value, cert.r);
        }
        println!("  {found}/16 cases certified");
    }
    Ok(())
}
