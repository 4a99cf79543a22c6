//! Canonical labelling by individualisation and refinement.
//!
//! The search tree branches on the vertices of the first smallest non-singleton
//! cell of an equitable partition. Twins (vertices with equal neighbourhoods
//! apart from each other) are interchangeable by an automorphism fixing every
//! other vertex, so only one twin per cell is tried.

use super::{Graph, MAX_VERTICES};

type Cells = Vec<Vec<usize>>;

/// Isomorphism-invariant representative: two graphs get equal outputs iff
/// they are isomorphic.
pub fn canonical_form(g: &Graph) -> Graph {
    let mut best: Option<(u128, Vec<usize>)> = None;
    let cells = vec![(0..g.n()).collect::<Vec<_>>()];
    search(g, cells, &mut best);
    let (_, order) = best.expect("search visits at least one leaf");
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    g.relabel(&perm)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// Number of automorphisms, by backtracking over degree-compatible images.
/// Intended for the small graphs (n <= 8) where orbit sizes are needed.
pub fn automorphism_count(g: &Graph) -> u64 {
    let n = g.n();
    let mut image = vec![usize::MAX; n];
    let mut used = 0u16;
    fn extend(g: &Graph, v: usize, image: &mut Vec<usize>, used: &mut u16) -> u64 {
        let n = g.n();
        if v == n {
            return 1;
        }
        let mut total = 0;
        for cand in 0..n {
            if *used >> cand & 1 == 1 || g.degree(cand) != g.degree(v) {
                continue;
            }
            let consistent = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], cand));
            if consistent {
                image[v] = cand;
                *used |= 1 << cand;
                total += extend(g, v + 1, image, used);
                *used &= !(1 << cand);
            }
        }
        total
    }
    extend(g, 0, &mut image, &mut used)
}

fn search(g: &Graph, mut cells: Cells, best: &mut Option<(u128, Vec<usize>)>) {
    refine(g, &mut cells);
    let target =
        cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i);
    let Some(ti) = target else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_for(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = cells[ti].clone();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&w| are_twins(g, v, w)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..ti]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[ti + 1..]);
        search(g, next, best);
    }
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u) & !(1 << v) == g.neighbors(v) & !(1 << u)
}

/// Splits cells until every cell is equitable with respect to every other.
/// New sub-cells are ordered by neighbour count, which keeps the result
/// independent of vertex labels.
fn refine(g: &Graph, cells: &mut Cells) {
    'outer: loop {
        for ti in 0..cells.len() {
            let target = cells[ti].iter().fold(0u16, |m, &v| m | 1 << v);
            for ci in 0..cells.len() {
                if cells[ci].len() < 2 {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cells[ci].iter().map(|&v| ((g.neighbors(v) & target).count_ones(), v)).collect();
                if keyed.iter().all(|(k, _)| *k == keyed[0].0) {
                    continue;
                }
                keyed.sort_by_key(|&(k, _)| k);
                let mut split: Cells = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        split.push(Vec::new());
                        last = Some(k);
                    }
                    split.last_mut().unwrap().push(v);
                }
                cells.splice(ci..=ci, split);
                continue 'outer;
            }
        }
        break;
    }
}

fn code_for(g: &Graph, order: &[usize]) -> u128 {
    let n = order.len();
    debug_assert!(n <= MAX_VERTICES);
    let mut code = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | g.has_edge(order[i], order[j]) as u128;
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::named;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u32..1 << pairs.len()).map(move |mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    }

    #[test]
    fn relabelled_paths_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&named("k3").unwrap()), canonical_form(&named("cherry").unwrap()));
    }

    #[test]
    fn counts_graphs_on_five_vertices() {
        let forms: HashSet<Graph> = all_graphs(5).map(|g| canonical_form(&g)).collect();
        assert_eq!(forms.len(), 34);
        let self_comp = forms.iter().filter(|g| canonical_form(&g.complement()) == **g).count();
        assert_eq!(self_comp, 2);
    }

    #[test]
    fn counts_graphs_on_six_vertices() {
        let forms: HashSet<Graph> = all_graphs(6).map(|g| canonical_form(&g)).collect();
        assert_eq!(forms.len(), 156);
    }

    #[test]
    fn orbit_sizes_sum_to_labelled_count() {
        // sum over classes of n!/|Aut| must be 2^C(n,2)
        let forms: HashSet<Graph> = all_graphs(5).map(|g| canonical_form(&g)).collect();
        let total: u64 = forms.iter().map(|g| 120 / automorphism_count(g)).sum();
        assert_eq!(total, 1024);
        assert_eq!(automorphism_count(&named("c5").unwrap()), 10);
        assert_eq!(automorphism_count(&named("k:2:2:2").unwrap()), 48);
    }

    #[test]
    fn large_symmetric_graphs_are_fast() {
        let e16 = Graph::empty(16).unwrap();
        assert_eq!(canonical_form(&e16), e16);
        let b14 = named("beachball:7").unwrap();
        let perm: Vec<usize> = (0..16).rev().collect();
        assert_eq!(canonical_form(&b14), canonical_form(&b14.relabel(&perm)));
    }

    fn arb_graph() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (2usize..=9).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (proptest::collection::vec(any::<bool>(), pairs), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
                .prop_map(move |(bits, perm)| {
                    let mut g = Graph::empty(n).unwrap();
                    let mut i = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[i] {
                                g.add_edge(u, v).unwrap();
                            }
                            i += 1;
                        }
                    }
                    (g, perm)
                })
        })
    }

    proptest! {
        #[test]
        fn invariant_under_relabelling((g, perm) in arb_graph()) {
            let c = canonical_form(&g);
            prop_assert_eq!(&canonical_form(&g.relabel(&perm)), &c);
            prop_assert_eq!(&canonical_form(&c), &c);
            prop_assert!(is_isomorphic(&g.complement().complement(), &g));
        }
    }
}
