//! Exact verification of the bundled commonality certificate for the two
//! five-vertex graphs, plus numerical cross-validation of every column.

use ramsey_common::certificate::{conclude_commonality, verify_linear_algebra, Certificate};
use ramsey_common::density::suite::random_suite;

fn main() {
    let cert = Certificate::appendix();
    print!("{}", verify_linear_algebra(&cert));
    let report = conclude_commonality(&cert, &random_suite(1, 100));
    let failures: Vec<_> = report.failures().collect();
    println!("{} checks, {} failed", report.checks.len(), failures.len());
    println!("x_A = {:?}", cert.x_a.iter().map(ToString::to_string).collect::<Vec<_>>());
}
