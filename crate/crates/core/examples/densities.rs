//! Homomorphism, induced and monochromatic densities on a few graphons,
//! in floating point and exactly.

use num::BigRational;
use ramsey_common::density::{m, t_hom, t_induced, StepGraphon};
use ramsey_common::graph::catalog::named;

fn main() {
    let half = StepGraphon::<f64>::half();
    let bipartite = StepGraphon::<f64>::uniform(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    let exact_half = StepGraphon::<BigRational>::half();

    println!("graph\tt(1/2)\tt(K2 blowup)\tinduced(1/2)\tm(1/2)\tm exact");
    for name in ["k2", "k3", "c4", "c5", "diamond", "k3plus", "h3", "beachball:2"] {
        let h = named(name).unwrap();
        println!(
            "{name}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{}",
            t_hom(&h, &half),
            t_hom(&h, &bipartite),
            t_induced(&h, &half),
            m(&h, &half),
            m(&h, &exact_half),
        );
    }

    // a graph's own block graphon counts homomorphisms into it
    let c5 = named("c5").unwrap();
    let w = StepGraphon::<BigRational>::from_graph(&c5);
    println!("t(C5, W_C5) = {} (10 / 5^5 closed walks)", t_hom(&c5, &w));
}
