//! Exact Ramsey multiplicity `M(H; n)`: the fewest monochromatic labelled
//! copies of `H` (injective maps) over all red/blue colourings of `K_n`.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::canonical_form;
use crate::Graph;

pub const MAX_RAMSEY_N: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RamseyError {
    #[error("n = {0} is out of reach; exhaustive search stops at n = {MAX_RAMSEY_N}")]
    TooLarge(usize),
    #[error("pattern has {pattern} vertices but the host only {host}")]
    PatternTooLarge { pattern: usize, host: usize },
}

/// Injective adjacency-preserving maps `h -> g`.
pub fn count_injective(h: &Graph, g: &Graph) -> u64 {
    let mut assignment = vec![usize::MAX; h.n()];
    extend(h, g, 0, 0, &mut assignment, true, false)
}

/// Homomorphisms `h -> g`; with `loops`, every vertex of `g` is also
/// adjacent to itself.
pub fn count_homomorphisms(h: &Graph, g: &Graph, loops: bool) -> u64 {
    let mut assignment = vec![usize::MAX; h.n()];
    extend(h, g, 0, 0, &mut assignment, false, loops)
}

fn extend(h: &Graph, g: &Graph, v: usize, used: u16, assignment: &mut [usize], injective: bool, loops: bool) -> u64 {
    if v == h.n() {
        return 1;
    }
    let mut total = 0;
    for x in 0..g.n() {
        if injective && used >> x & 1 == 1 {
            continue;
        }
        let fits = (0..v).filter(|&u| h.has_edge(u, v)).all(|u| {
            let y = assignment[u];
            if y == x {
                loops
            } else {
                g.has_edge(x, y)
            }
        });
        if fits {
            assignment[v] = x;
            total += extend(h, g, v + 1, used | 1 << x, assignment, injective, loops);
        }
    }
    assignment[v] = usize::MAX;
    total
}

/// Homomorphisms into the red graph plus into the blue one. Blue is the
/// complement with loops, which matches the block graphon of `red` whose
/// diagonal blocks are 0 and so 1 in the complementary colour.
pub fn monochromatic_homomorphisms(h: &Graph, red: &Graph) -> u64 {
    count_homomorphisms(h, red, false) + count_homomorphisms(h, &red.complement(), true)
}

/// One representative of every isomorphism class of graphs on `n` vertices
/// with at most `max_edges` edges, grown one edge at a time.
pub fn graphs_up_to_isomorphism(n: usize, max_edges: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(n).expect("n within range")];
    let mut all = level.clone();
    for _ in 0..max_edges.min(n * n.saturating_sub(1) / 2) {
        let next: HashSet<Graph> = level
            .par_iter()
            .flat_map_iter(|g| {
                (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v))).filter(move |&(u, v)| !g.has_edge(u, v)).map(
                    move |(u, v)| {
                        let mut bigger = g.clone();
                        bigger.add_edge(u, v).expect("in range");
                        canonical_form(&bigger)
                    },
                )
            })
            .collect();
        level = next.into_iter().collect();
        level.sort();
        all.extend(level.iter().cloned());
    }
    all
}

/// `M(h; n)` by enumerating red graphs up to isomorphism. Colour swap maps
/// a red graph to its complement, so red graphs with at most half the edges
/// suffice.
pub fn exact_ramsey_multiplicity(h: &Graph, n: usize) -> Result<u64, RamseyError> {
    if n > MAX_RAMSEY_N {
        return Err(RamseyError::TooLarge(n));
    }
    if h.n() > n {
        return Err(RamseyError::PatternTooLarge { pattern: h.n(), host: n });
    }
    let half = n * n.saturating_sub(1) / 4;
    Ok(graphs_up_to_isomorphism(n, half)
        .par_iter()
        .map(|red| count_injective(h, red) + count_injective(h, &red.complement()))
        .min()
        .expect("at least the empty colouring"))
}

/// `M(h; n) / (n (n-1) ... (n - v + 1))`, a finite-n stand-in for the
/// Ramsey multiplicity constant; not a bound on the limit in either
/// direction in general.
pub fn estimate_ramsey_constant(h: &Graph, n: usize) -> Result<f64, RamseyError> {
    let count = exact_ramsey_multiplicity(h, n)?;
    let falling: f64 = (0..h.n()).map(|i| (n - i) as f64).product();
    Ok(count as f64 / falling)
}
