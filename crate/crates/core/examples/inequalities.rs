//! The inequality suite on random graphons, plus the exact beachball
//! algebra.

use num::BigRational;
use ramsey_common::density::suite::random_suite;
use ramsey_common::inequalities::{beachball_h, beachball_p_coefficients, run_suite};

fn main() {
    let reports = run_suite(&random_suite(11, 100));
    let violated: Vec<_> = reports.iter().filter(|r| !r.not_violated()).collect();
    println!("{} checks, {} violated", reports.len(), violated.len());
    for r in reports.iter().take(5) {
        println!("{r}");
    }

    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    for k in 2..=4 {
        println!("h_{{{k},1/7}}(1/4) = {}", beachball_h(k, &q(1, 7), &q(1, 4)).unwrap());
    }
    let (raw, shifted) = beachball_p_coefficients(3);
    println!(
        "p_3 coefficients {:?} == re-expanded {:?}: {}",
        raw.each_ref().map(|c| c.to_string()),
        shifted.each_ref().map(|c| c.to_string()),
        raw == shifted
    );
}
