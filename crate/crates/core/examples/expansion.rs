//! Even-subgraph expansion of m_H: the coefficients, and agreement with the
//! direct density on random graphons.

use ramsey_common::density::suite::random_suite;
use ramsey_common::density::{expansion_value, m};
use ramsey_common::graph::catalog::named;
use ramsey_common::graph::even_expansion;

fn main() {
    let h = named("c4").unwrap();
    println!("m_C4 = 2^-3 * sum over even edge subsets of t_F(2W - 1):");
    for (f, coeff) in even_expansion(&h).unwrap().iter() {
        println!("  {coeff}\t{} vertices, edges {:?}", f.n(), f.edges());
    }

    let suite = random_suite(7, 200);
    for name in ["k3", "c5", "diamond", "h4", "beachball:2", "k:2:2:2"] {
        let h = named(name).unwrap();
        let worst = suite.iter().map(|w| (m(&h, w) - expansion_value(&h, w).unwrap()).abs()).fold(0.0, f64::max);
        println!("{name}\tmax |m - expansion| = {worst:.2e} over {} graphons", suite.len());
    }
}
