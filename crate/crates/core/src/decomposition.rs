//! Tree decompositions, J-decompositions and triangle-trees.
//!
//! A triangle-tree is built from one triangle by repeatedly gluing a new
//! triangle along a single vertex or a single edge. Recognition runs that
//! construction backwards: a leaf triangle glued along an edge owns one
//! private degree-2 vertex, one glued along a vertex owns two adjacent
//! degree-2 vertices with a common neighbour. Peeling either kind leaves an
//! induced subgraph, so the search memoises failures per vertex mask.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::graph::{catalog, is_isomorphic, pendant_attach, pendant_vertex_map, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("a decomposition needs at least one bag")]
    NoBags,
    #[error("bag {bag} mentions vertex {vertex}, which is not in the graph")]
    UnknownVertex { bag: usize, vertex: usize },
    #[error("tree edges do not form a tree on the bags")]
    NotATree,
    #[error("vertex {0} lies in no bag")]
    VertexUncovered(usize),
    #[error("edge {0}-{1} lies in no bag")]
    EdgeUncovered(usize, usize),
    #[error("bags containing vertex {0} are not connected in the tree")]
    RunningIntersection(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("invalid decomposition: {0}")]
    Invalid(#[from] Violation),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the attached tree must have at least one edge")]
    EmptyTree,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Bags (sorted vertex lists) joined by a tree on bag indices.
#[derive(Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Stores the data as given apart from sorting each bag; call
    /// [`TreeDecomposition::check`] to validate against a graph.
    pub fn new(bags: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, tree_edges }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    fn mask(&self, i: usize) -> u32 {
        self.bags[i].iter().fold(0u32, |m, &v| m | 1 << v)
    }

    /// Tree edges whose two bags share exactly two vertices.
    pub fn edge_intersection_count(&self) -> usize {
        self.tree_edges.iter().filter(|&&(a, b)| (self.mask(a) & self.mask(b)).count_ones() == 2).count()
    }

    /// Checks treeness, vertex cover, edge cover and running intersection,
    /// reporting the first violation found.
    pub fn check(&self, h: &Graph) -> Result<(), Violation> {
        let nb = self.bags.len();
        if nb == 0 {
            return Err(Violation::NoBags);
        }
        for (bag, b) in self.bags.iter().enumerate() {
            if let Some(&vertex) = b.iter().find(|&&v| v >= h.n()) {
                return Err(Violation::UnknownVertex { bag, vertex });
            }
        }
        if self.tree_edges.len() + 1 != nb || self.tree_edges.iter().any(|&(a, b)| a >= nb || b >= nb || a == b) {
            return Err(Violation::NotATree);
        }
        let mut parent: Vec<usize> = (0..nb).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.tree_edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Violation::NotATree);
            }
            parent[ra] = rb;
        }
        let masks: Vec<u32> = (0..nb).map(|i| self.mask(i)).collect();
        for v in 0..h.n() {
            let holding = masks.iter().filter(|m| *m >> v & 1 == 1).count();
            if holding == 0 {
                return Err(Violation::VertexUncovered(v));
            }
            let links = self.tree_edges.iter().filter(|&&(a, b)| (masks[a] & masks[b]) >> v & 1 == 1).count();
            if links + 1 != holding {
                return Err(Violation::RunningIntersection(v));
            }
        }
        for (u, v) in h.edges() {
            if !masks.iter().any(|m| m >> u & 1 == 1 && m >> v & 1 == 1) {
                return Err(Violation::EdgeUncovered(u, v));
            }
        }
        Ok(())
    }

    /// Line 1: bag count; one bag per line; then one tree edge per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.bags.len());
        for b in &self.bags {
            s.push_str(&b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
            s.push('\n');
        }
        for (a, b) in &self.tree_edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

impl FromStr for TreeDecomposition {
    type Err = DecompositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let numbers = |line: usize, text: &str| -> Result<Vec<usize>, DecompositionError> {
            text.split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| DecompositionError::Parse { line, reason: format!("bad integer `{t}`") })
                })
                .collect()
        };
        let (line, first) = lines.next().ok_or(DecompositionError::Parse { line: 1, reason: "empty input".into() })?;
        let count = match numbers(line, first)?.as_slice() {
            [c] => *c,
            _ => return Err(DecompositionError::Parse { line, reason: "expected the bag count".into() }),
        };
        let mut bags = Vec::with_capacity(count);
        for _ in 0..count {
            let (line, text) =
                lines.next().ok_or(DecompositionError::Parse { line: 0, reason: "missing bag lines".into() })?;
            bags.push(numbers(line, text)?);
        }
        let mut edges = Vec::new();
        for (line, text) in lines {
            match numbers(line, text)?.as_slice() {
                [a, b] => edges.push((*a, *b)),
                _ => return Err(DecompositionError::Parse { line, reason: "expected a tree edge `a b`".into() }),
            }
        }
        Ok(TreeDecomposition::new(bags, edges))
    }
}

impl fmt::Debug for TreeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeDecomposition(bags={:?}, tree={:?})", self.bags, self.tree_edges)
    }
}

pub fn validate(h: &Graph, d: &TreeDecomposition) -> bool {
    d.check(h).is_ok()
}

/// Every bag induces a copy of `j`, and every tree edge `XY` admits an
/// isomorphism `H[X] -> H[Y]` fixing `X ∩ Y` pointwise.
pub fn is_j_decomposition(h: &Graph, d: &TreeDecomposition, j: &Graph) -> Result<bool, DecompositionError> {
    d.check(h)?;
    for bag in d.bags() {
        if bag.len() != j.n() || !is_isomorphic(&h.induced_on(bag)?, j) {
            return Ok(false);
        }
    }
    Ok(d.tree_edges().iter().all(|&(a, b)| fixing_isomorphism_exists(h, &d.bags()[a], &d.bags()[b])))
}

fn fixing_isomorphism_exists(h: &Graph, x: &[usize], y: &[usize]) -> bool {
    let shared: Vec<usize> = x.iter().copied().filter(|v| y.contains(v)).collect();
    let from: Vec<usize> = x.iter().copied().filter(|v| !shared.contains(v)).collect();
    let to: Vec<usize> = y.iter().copied().filter(|v| !shared.contains(v)).collect();
    if from.len() != to.len() {
        return false;
    }
    // try every bijection from -> to, extended by the identity on the shared part
    let mut image: Vec<usize> = Vec::with_capacity(from.len());
    let mut used = vec![false; to.len()];
    fn extend(
        h: &Graph,
        x: &[usize],
        shared: &[usize],
        from: &[usize],
        to: &[usize],
        image: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if image.len() == from.len() {
            let map = |v: usize| -> usize { from.iter().position(|&f| f == v).map_or(v, |i| image[i]) };
            return x
                .iter()
                .enumerate()
                .all(|(i, &a)| x[i + 1..].iter().all(|&b| h.has_edge(a, b) == h.has_edge(map(a), map(b))))
                && shared.iter().all(|&s| map(s) == s);
        }
        for t in 0..to.len() {
            if !used[t] {
                used[t] = true;
                image.push(to[t]);
                if extend(h, x, shared, from, to, image, used) {
                    return true;
                }
                image.pop();
                used[t] = false;
            }
        }
        false
    }
    extend(h, x, &shared, &from, &to, &mut image, &mut used)
}

/// `e(h) - v(h) + 1`.
pub fn phi(h: &Graph) -> i64 {
    h.edge_count() as i64 - h.n() as i64 + 1
}

/// `2e(h) - 3v(h) + 3`.
pub fn kappa(h: &Graph) -> i64 {
    2 * h.edge_count() as i64 - 3 * h.n() as i64 + 3
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleTreeReport {
    pub phi: i64,
    pub kappa: i64,
    /// Present iff the graph is a triangle-tree.
    pub decomposition: Option<TreeDecomposition>,
    /// Tree edges of the decomposition whose bags share an edge.
    pub edge_intersection_count: usize,
}

impl TriangleTreeReport {
    pub fn is_triangle_tree(&self) -> bool {
        self.decomposition.is_some()
    }
}

/// Searches for a decomposition of `h` into triangle bags glued along single
/// vertices or edges. Disconnected graphs and graphs failing the counting
/// conditions `0 <= kappa <= phi - 1` are rejected without search.
pub fn find_triangle_decomposition(h: &Graph) -> TriangleTreeReport {
    let (p, k) = (phi(h), kappa(h));
    let absent = TriangleTreeReport { phi: p, kappa: k, decomposition: None, edge_intersection_count: 0 };
    if !h.is_connected() || p < 1 || k < 0 || k > p - 1 || h.edge_count() as i64 != 3 * p - k {
        return absent;
    }
    let mut failed = HashSet::new();
    match peel(h, h.vertex_mask(), &mut failed) {
        Some(d) => {
            debug_assert!(validate(h, &d));
            let count = d.edge_intersection_count();
            TriangleTreeReport { phi: p, kappa: k, decomposition: Some(d), edge_intersection_count: count }
        }
        None => absent,
    }
}

fn peel(h: &Graph, mask: u16, failed: &mut HashSet<u16>) -> Option<TreeDecomposition> {
    let verts: Vec<usize> = (0..h.n()).filter(|&v| mask >> v & 1 == 1).collect();
    let deg = |v: usize| (h.neighbors(v) & mask).count_ones();
    if verts.len() == 3 {
        let [a, b, c] = [verts[0], verts[1], verts[2]];
        return (h.has_edge(a, b) && h.has_edge(b, c) && h.has_edge(a, c))
            .then(|| TreeDecomposition::new(vec![verts.clone()], vec![]));
    }
    if verts.len() < 3 || failed.contains(&mask) {
        return None;
    }
    let two = |m: u16| -> (usize, usize) {
        let a = m.trailing_zeros() as usize;
        let b = (m & !(1 << a)).trailing_zeros() as usize;
        (a, b)
    };
    for &v in &verts {
        if deg(v) != 2 {
            continue;
        }
        let (y, z) = two(h.neighbors(v) & mask);
        if !h.has_edge(y, z) {
            continue;
        }
        // vertex-glued leaf {x, v, w}: v and w both private
        for (w, x) in [(y, z), (z, y)] {
            if w > v && deg(w) == 2 {
                let rest = mask & !(1 << v) & !(1 << w);
                if let Some(d) = peel(h, rest, failed) {
                    return Some(attach(d, vec![v, w, x], &[x]));
                }
            }
        }
        // edge-glued leaf {v, y, z}
        let rest = mask & !(1 << v);
        if let Some(d) = peel(h, rest, failed) {
            return Some(attach(d, vec![v, y, z], &[y, z]));
        }
    }
    failed.insert(mask);
    None
}

fn attach(mut d: TreeDecomposition, bag: Vec<usize>, glue: &[usize]) -> TreeDecomposition {
    let host = d.bags.iter().position(|b| glue.iter().all(|g| b.contains(g))).expect("glue lies in some bag");
    let mut bag = bag;
    bag.sort_unstable();
    d.bags.push(bag);
    d.tree_edges.push((host, d.bags.len() - 1));
    d
}

/// Decomposition of `pendant_attach(t, u, h, v)` from one of `h`: every edge
/// of `t` becomes a two-vertex bag linked to the bag of the edge above it
/// (rooting `t` at `u`); bags of edges at `u` link to the first bag of `d`
/// containing `v`. Adds `e(t)` bags and `e(t)` tree edges.
pub fn extend_with_pendant_tree(
    h: &Graph,
    d: &TreeDecomposition,
    t: &Graph,
    u: usize,
    v: usize,
) -> Result<TreeDecomposition, DecompositionError> {
    let glued = pendant_attach(t, u, h, v)?;
    if t.edge_count() == 0 {
        return Err(DecompositionError::EmptyTree);
    }
    d.check(h)?;
    let map = pendant_vertex_map(t, u, h, v);
    let anchor = d.bags().iter().position(|b| b.contains(&v)).expect("checked decompositions cover every vertex");
    let mut bags = d.bags().to_vec();
    let mut tree_edges = d.tree_edges().to_vec();
    // BFS from u; bag_of[c] is the bag of the edge (parent(c), c)
    let mut bag_of = vec![usize::MAX; t.n()];
    let mut queue = std::collections::VecDeque::from([u]);
    let mut seen = 1u32 << u;
    while let Some(p) = queue.pop_front() {
        for c in 0..t.n() {
            if t.has_edge(p, c) && seen >> c & 1 == 0 {
                seen |= 1 << c;
                bags.push(vec![map[p], map[c]]);
                let idx = bags.len() - 1;
                bag_of[c] = idx;
                tree_edges.push((if p == u { anchor } else { bag_of[p] }, idx));
                queue.push_back(c);
            }
        }
    }
    let out = TreeDecomposition::new(bags, tree_edges);
    debug_assert!(validate(&glued, &out));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Glue {
    Vertex,
    Edge,
}

/// A triangle-tree together with the gluing steps that produced it.
#[derive(Debug, Clone)]
pub struct ConstructedTriangleTree {
    pub graph: Graph,
    /// One entry per triangle after the first.
    pub log: Vec<Glue>,
    pub decomposition: TreeDecomposition,
}

/// Random triangle-tree with `bags` triangles: each new triangle is glued to
/// a uniformly chosen vertex or edge of the current graph. Vertex gluing
/// costs two new vertices, so it is skipped when it would exceed the 16
/// vertex cap; `bags` must be at most 14.
pub fn random_triangle_tree<R: Rng>(rng: &mut R, bags: usize) -> ConstructedTriangleTree {
    assert!((1..=14).contains(&bags), "between 1 and 14 triangles fit in 16 vertices");
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut bag_list = vec![vec![0, 1, 2]];
    let mut tree_edges = Vec::new();
    let mut log = Vec::new();
    let mut n = 3;
    for placed in 1..bags {
        let remaining_after = bags - placed - 1;
        let room_for_vertex = n + 2 + remaining_after <= 16;
        let glue = if room_for_vertex && rng.gen_bool(0.5) { Glue::Vertex } else { Glue::Edge };
        let new_bag = match glue {
            Glue::Vertex => {
                let x = rng.gen_range(0..n);
                edges.extend([(x, n), (x, n + 1), (n, n + 1)]);
                n += 2;
                vec![x, n - 2, n - 1]
            }
            Glue::Edge => {
                let (a, b) = edges[rng.gen_range(0..edges.len())];
                edges.extend([(a, n), (b, n)]);
                n += 1;
                vec![a, b, n - 1]
            }
        };
        let glue_set = &new_bag[..if glue == Glue::Vertex { 1 } else { 2 }];
        let host = bag_list.iter().position(|b| glue_set.iter().all(|g| b.contains(g))).expect("glue in a bag");
        let mut sorted = new_bag.clone();
        sorted.sort_unstable();
        bag_list.push(sorted);
        tree_edges.push((host, bag_list.len() - 1));
        log.push(glue);
    }
    let graph = Graph::from_edges(n, &edges).expect("at most 16 vertices");
    ConstructedTriangleTree { graph, log, decomposition: TreeDecomposition::new(bag_list, tree_edges) }
}

/// Star decomposition of `K_{1,1,t}` as built by the catalog: vertices 0, 1
/// form the spine and each `1 + i` (i >= 1) closes one triangle.
pub fn book_decomposition(t: usize) -> Result<(Graph, TreeDecomposition), GraphError> {
    let g = catalog::named(&format!("k:1:1:{t}"))?;
    let bags = (2..2 + t).map(|x| vec![0, 1, x]).collect();
    let edges = (1..t).map(|i| (0, i)).collect();
    Ok((g, TreeDecomposition::new(bags, edges)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::named;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k3() -> Graph {
        named("k3").unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&k3(), &TreeDecomposition::new(vec![vec![0, 1, 2]], vec![])));
        let (book, d) = book_decomposition(4).unwrap();
        assert!(validate(&book, &d));
        let c4 = named("c4").unwrap();
        let bad = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        assert!(matches!(bad.check(&c4), Err(Violation::EdgeUncovered(..))));
        let cyclic = TreeDecomposition::new(vec![vec![0, 1, 2], vec![0, 2, 3]], vec![(0, 1), (1, 0)]);
        assert_eq!(cyclic.check(&c4), Err(Violation::NotATree));
        let gap =
            TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]], vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(gap.check(&c4), Err(Violation::RunningIntersection(0)));
        let unknown = TreeDecomposition::new(vec![vec![0, 1, 7]], vec![]);
        assert!(matches!(unknown.check(&k3()), Err(Violation::UnknownVertex { .. })));
    }

    #[test]
    fn j_decompositions() {
        let (book, d) = book_decomposition(4).unwrap();
        assert!(is_j_decomposition(&book, &d, &k3()).unwrap());
        let c4 = named("c4").unwrap();
        let whole = TreeDecomposition::new(vec![vec![0, 1, 2, 3]], vec![]);
        assert!(!is_j_decomposition(&c4, &whole, &k3()).unwrap());
        // diamond: degree-3 spine 0-1, triangles {0,1,2} and {0,1,3}
        let diamond = named("diamond").unwrap();
        let d = TreeDecomposition::new(vec![vec![0, 1, 2], vec![0, 1, 3]], vec![(0, 1)]);
        assert!(is_j_decomposition(&diamond, &d, &k3()).unwrap());
        let broken = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        assert!(matches!(is_j_decomposition(&diamond, &broken, &k3()), Err(DecompositionError::Invalid(_))));
        // P3 bags glued at the middle vertex of one and an end of the other:
        // no isomorphism fixes the shared vertex
        let p5 = named("p5").unwrap();
        let d = TreeDecomposition::new(vec![vec![0, 1, 2], vec![2, 3, 4]], vec![(0, 1)]);
        assert!(is_j_decomposition(&p5, &d, &named("p3").unwrap()).unwrap());
        let star = named("star:4").unwrap();
        let d = TreeDecomposition::new(vec![vec![0, 1, 2], vec![0, 3, 4]], vec![(0, 1)]);
        assert!(is_j_decomposition(&star, &d, &named("p3").unwrap()).unwrap());
        let spider = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let d = TreeDecomposition::new(vec![vec![0, 1, 2], vec![2, 3, 4]], vec![(0, 1)]);
        assert!(!is_j_decomposition(&spider, &d, &named("p3").unwrap()).unwrap());
    }

    #[test]
    fn recognises_named_triangle_trees() {
        let r = find_triangle_decomposition(&named("jst").unwrap());
        assert!(r.is_triangle_tree());
        assert_eq!((r.phi, r.kappa, r.edge_intersection_count), (3, 0, 0));
        for a in 1..=8 {
            let r = find_triangle_decomposition(&named(&format!("k:1:1:{a}")).unwrap());
            let d = r.decomposition.as_ref().expect("books are triangle-trees");
            assert_eq!((r.phi, r.kappa, d.len()), (a as i64, a as i64 - 1, a));
            assert_eq!(r.edge_intersection_count, a - 1);
        }
        // D_1 is the diamond; larger D_k have too many edge gluings (kappa > phi - 1)
        assert!(find_triangle_decomposition(&named("dk:1").unwrap()).is_triangle_tree());
        for k in 2..=6 {
            let r = find_triangle_decomposition(&named(&format!("dk:{k}")).unwrap());
            assert!(r.kappa > r.phi - 1 && !r.is_triangle_tree());
        }
    }

    #[test]
    fn rejects_non_triangle_trees() {
        let oct = find_triangle_decomposition(&named("k:2:2:2").unwrap());
        assert_eq!((oct.phi, oct.kappa), (7, 9));
        assert!(!oct.is_triangle_tree());
        for name in ["c5", "k4", "k3plus", "c4", "h1", "h3", "h4", "wheel:5", "k2"] {
            assert!(!find_triangle_decomposition(&named(name).unwrap()).is_triangle_tree(), "{name}");
        }
        let two = named("k3").unwrap().disjoint_union(&named("k3").unwrap()).unwrap();
        assert!(!find_triangle_decomposition(&two).is_triangle_tree());
    }

    #[test]
    fn random_constructions_are_recognised() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for i in 0..300 {
            let bags = 1 + i % 12;
            let t = random_triangle_tree(&mut rng, bags);
            assert!(is_j_decomposition(&t.graph, &t.decomposition, &k3()).unwrap());
            let r = find_triangle_decomposition(&t.graph);
            let d = r.decomposition.as_ref().unwrap_or_else(|| panic!("{:?}", t.graph));
            let edge_glues = t.log.iter().filter(|g| **g == Glue::Edge).count() as i64;
            assert_eq!(d.len() as i64, r.phi);
            assert_eq!(r.phi, bags as i64);
            assert_eq!(r.kappa, edge_glues);
            assert_eq!(r.edge_intersection_count as i64, r.kappa);
            let (e, v) = (t.graph.edge_count() as i64, t.graph.n() as i64);
            assert_eq!(e, 3 * r.phi - r.kappa);
            assert_eq!(v, 2 * r.phi + 1 - r.kappa);
            assert!(r.kappa < r.phi);
            assert!(is_j_decomposition(&t.graph, d, &k3()).unwrap());
        }
    }

    #[test]
    fn pendant_extensions() {
        let k2 = named("k2").unwrap();
        let single = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        let d = extend_with_pendant_tree(&k3(), &single, &k2, 0, 1).unwrap();
        assert_eq!(d.bags(), &[vec![0, 1, 2], vec![1, 3]]);

        let diamond = named("diamond").unwrap();
        let dd = find_triangle_decomposition(&diamond).decomposition.unwrap();
        let p3 = named("p3").unwrap();
        let ext = extend_with_pendant_tree(&diamond, &dd, &p3, 0, 0).unwrap();
        assert_eq!(ext.len(), 4);
        assert!(validate(&pendant_attach(&p3, 0, &diamond, 0).unwrap(), &ext));

        let jst = named("jst").unwrap();
        let dj = find_triangle_decomposition(&jst).decomposition.unwrap();
        let star = named("star:3").unwrap();
        for u in 0..4 {
            for v in 0..7 {
                let ext = extend_with_pendant_tree(&jst, &dj, &star, u, v).unwrap();
                assert_eq!((ext.len(), ext.tree_edges().len()), (6, 5));
                assert!(validate(&pendant_attach(&star, u, &jst, v).unwrap(), &ext));
            }
        }
        assert!(matches!(
            extend_with_pendant_tree(&k3(), &single, &named("c4").unwrap(), 0, 0),
            Err(DecompositionError::Graph(GraphError::NotATree))
        ));
        assert!(matches!(
            extend_with_pendant_tree(&k3(), &single, &Graph::empty(1).unwrap(), 0, 0),
            Err(DecompositionError::EmptyTree)
        ));
    }

    #[test]
    fn text_round_trip() {
        let (_, d) = book_decomposition(3).unwrap();
        let parsed: TreeDecomposition = d.to_text().parse().unwrap();
        assert_eq!(parsed, d);
        assert!(matches!("2\n0 1\n".parse::<TreeDecomposition>(), Err(DecompositionError::Parse { .. })));
    }
}
