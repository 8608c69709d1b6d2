//! The two-leg case (-ε223, ε106) with λ = (2,3)/5 and R = (3,3,1,…,1)/5.

use signcert::certify::{build_l, check_lemma2, CasePattern, Certificate, TupleSpec};
use signcert::cone::{cumsum, cumulative_le};
use signcert::exactnum::frac;
use signcert::library;

fn main() -> signcert::Result<()> {
    let tuple = TupleSpec::new(9, vec![(32, 223), (106, 149)])?;
    let case = CasePattern::parse(&["2", "3"])?;
    let lambda = vec![frac(2, 5), frac(3, 5)];
    let r = library::r5();

    let l = build_l(&tuple, &case, &lambda)?;
    let show = |v: &[signcert::Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    println!("L     = ({l})");
    println!("L-bar = ({})", show(cumsum(&l).partials()));
    println!("R-bar = ({})", show(cumsum(&r).partials()));
    println!("L-bar <= R-bar: {}", cumulative_le(&l, &r)?);
    println!("RR' = {}", r.norm_sq());

    let cert = Certificate::new(tuple, case, r, lambda)?;
    match check_lemma2(&cert) {
        Ok(()) => println!("certificate accepted"),
        Err(clause) => println!("certificate rejected: {clause}"),
    }
    Ok(())
}
