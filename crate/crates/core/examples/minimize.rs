//! Local search for `min m_H`: the triangle and C4 stay at the random
//! colouring value, while a triangle with a pendant edge dips below it.

use ramsey_common::graph::catalog::named;
use ramsey_common::search::{escalate, minimize_m, two_part_grid_minimum, MinimizeConfig};

fn main() {
    let cfg = MinimizeConfig { parts: 3, restarts: 32, ..Default::default() };
    for name in ["k3", "c4"] {
        let r = minimize_m(&named(name).unwrap(), &cfg);
        println!("{name}\t{}", r.to_tsv());
    }

    let k3plus = named("k3plus").unwrap();
    let (grid_value, grid_best) = two_part_grid_minimum(&k3plus, 16, &[0.5, 0.25, 0.125, 0.0625]);
    println!("k3plus grid oracle\t{grid_value:.12}\n{}", grid_best.to_text());

    let uniform = escalate(&k3plus, &MinimizeConfig { restarts: 32, ..Default::default() }, 4);
    println!("k3plus uniform weights, {} parts\t{}", uniform.best.k(), uniform.to_tsv());
    let free =
        minimize_m(&k3plus, &MinimizeConfig { parts: 2, restarts: 32, optimize_weights: true, ..Default::default() });
    println!("k3plus free weights\t{}\n{}", free.to_tsv(), free.best.to_text());
}
