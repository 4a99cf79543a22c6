//! Exact finite Ramsey multiplicities by enumerating colourings up to
//! isomorphism.

use ramsey_common::graph::catalog::named;
use ramsey_common::search::{estimate_ramsey_constant, exact_ramsey_multiplicity, graphs_up_to_isomorphism};

fn main() {
    for n in 1..=7 {
        println!("graphs on {n} vertices: {}", graphs_up_to_isomorphism(n, n * n).len());
    }
    for (name, max_n) in [("k3", 8), ("c4", 7), ("k3plus", 7)] {
        let h = named(name).unwrap();
        for n in h.n()..=max_n {
            let count = exact_ramsey_multiplicity(&h, n).unwrap();
            let ratio = estimate_ramsey_constant(&h, n).unwrap();
            println!("{name}\tn={n}\tM={count}\tratio={ratio:.5}");
        }
    }
}
