//! Solves one case from scratch: minimum-norm R by the exact QP, then the
//! weights λ by the exact LP, then an independent check.

use signcert::certify::{check_lemma2, check_sqp_optimality, CasePattern};
use signcert::scheme::parse_tuple;
use signcert::solve::{lp_max_margin, qp_min_norm};

fn main() -> signcert::Result<()> {
    let tuple = parse_tuple("(0 255 (94 161) (105 150) (109 146))", 9)?;
    let case = CasePattern::parse(&["2", "*", "*", "7"])?;

    let qp = qp_min_norm(&tuple, &case)?;
    println!("{tuple} {case}");
    println!("  R  = ({})  RR' = {}  {:?}", qp.r, qp.value, qp.status);
    println!("  optimality: {:?}", check_sqp_optimality(&qp.r, &qp.lambda, &tuple, &case)?);
    println!("  dual: {}", serde_json::to_string(&qp.dual).expect("serializable"));

    let lp = lp_max_margin(&qp.r, &tuple, &case)?;
    let weights: Vec<String> = lp.lambda.iter().map(|x| x.to_string()).collect();
    println!("  LP lambda = ({})  margin = {}", weights.join(", "), lp.margin);

    if let Some(cert) = qp.to_certificate() {
        println!("  check: {:?}", check_lemma2(&cert));
    }
    Ok(())
}
