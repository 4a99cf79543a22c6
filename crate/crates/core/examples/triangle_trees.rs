//! Triangle-tree recognition: phi and kappa, a recovered decomposition,
//! random constructions, and the density chain they imply.

use ramsey_common::decomposition::{find_triangle_decomposition, random_triangle_tree};
use ramsey_common::density::suite::random_suite;
use ramsey_common::graph::catalog::named;
use ramsey_common::inequalities::check_triangle_tree_chain;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    for name in ["k3", "diamond", "jst", "h1", "k:1:1:3", "k4", "c5", "k:2:2:2"] {
        let r = find_triangle_decomposition(&named(name).unwrap());
        let verdict = if r.is_triangle_tree() { "triangle-tree" } else { "not-triangle-tree" };
        println!("{name}\t{verdict}\tphi={}\tkappa={}", r.phi, r.kappa);
    }
    let jst = find_triangle_decomposition(&named("jst").unwrap());
    print!("jst decomposition:\n{}", jst.decomposition.unwrap().to_text());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let suite = random_suite(3, 50);
    for bags in [2, 5, 8] {
        let t = random_triangle_tree(&mut rng, bags);
        let r = find_triangle_decomposition(&t.graph);
        let min_slack = suite
            .iter()
            .flat_map(|w| check_triangle_tree_chain(&t.graph, w).unwrap())
            .map(|rep| rep.slack)
            .fold(f64::INFINITY, f64::min);
        println!(
            "random {bags} bags: v={} e={} recovered {} bags, kappa={}, chain min slack {min_slack:.2e}",
            t.graph.n(),
            t.graph.edge_count(),
            r.decomposition.map_or(0, |d| d.len()),
            r.kappa,
        );
    }
}
