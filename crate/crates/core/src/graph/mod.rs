//! Small simple undirected graphs stored as adjacency-row bitsets.
//!
//! A [`Graph`] has between 1 and [`MAX_VERTICES`] vertices. Row `v` of the
//! adjacency matrix is a `u16` whose bit `u` is set iff `uv` is an edge.

mod canon;
pub mod catalog;
mod combination;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use canon::{automorphism_count, canonical_form, is_isomorphic};
pub use combination::{even_expansion, GraphCombination, MAX_EXPANSION_EDGES};

pub const MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have between 1 and {MAX_VERTICES} vertices, got {0}")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has {edges} edges, more than the supported {max}")]
    TooManyEdges { edges: usize, max: usize },
    #[error("expected a tree (connected, e = v - 1)")]
    NotATree,
    #[error("unknown catalog graph `{0}`")]
    UnknownName(String),
    #[error("parameter out of range for `{name}`: {reason}")]
    BadParameter { name: String, reason: String },
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: [u16; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Graph { n, adj: [0; MAX_VERTICES] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u16 {
        ((1u32 << self.n) - 1) as u16
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        let mut g = self.clone();
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & full & !(1 << v);
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph { n: self.n, adj: [0; MAX_VERTICES] };
        for (u, v) in self.edges() {
            g.adj[perm[u]] |= 1 << perm[v];
            g.adj[perm[v]] |= 1 << perm[u];
        }
        g
    }

    /// Subgraph induced on the vertices of `mask`, relabelled in increasing
    /// order. Returns the original labels alongside.
    pub fn induced(&self, mask: u16) -> Result<(Graph, Vec<usize>), GraphError> {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok((g, verts))
    }

    pub fn induced_on(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut mask = 0u16;
        for &v in vertices {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            mask |= 1 << v;
        }
        self.induced(mask).map(|(g, _)| g)
    }

    /// Drops isolated vertices. An edgeless graph becomes `K1`.
    pub fn without_isolated(&self) -> Graph {
        let mask = (0..self.n).filter(|&v| self.adj[v] != 0).fold(0u16, |m, v| m | 1 << v);
        if mask == 0 {
            return Graph { n: 1, adj: [0; MAX_VERTICES] };
        }
        self.induced(mask).expect("nonempty subset").0
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + other.n)?;
        g.adj[..self.n].copy_from_slice(&self.adj[..self.n]);
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n)?;
        }
        Ok(g)
    }

    /// Vertices reachable from `start`, as a bitmask.
    pub fn component_of(&self, start: usize) -> u16 {
        let mut seen = 1u16 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertex_mask()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for u in 0..self.n {
                    if self.has_edge(u, v) {
                        match side[u] {
                            None => {
                                side[u] = Some(!sv);
                                stack.push(u);
                            }
                            Some(su) if su == sv => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    /// Bitmask of common neighbours of all vertices in `mask`.
    pub fn common_neighbors(&self, mask: u16) -> u16 {
        let mut acc = self.vertex_mask();
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            acc &= self.adj[v];
        }
        acc
    }

    /// `H^{+a}`: `a` new pairwise non-adjacent vertices joined to every
    /// vertex of `self`.
    pub fn apex_add(&self, a: usize) -> Result<Graph, GraphError> {
        let n = self.n + a;
        if n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let mut g = Graph::empty(n)?;
        g.adj[..self.n].copy_from_slice(&self.adj[..self.n]);
        for apex in self.n..n {
            for v in 0..self.n {
                g.add_edge(apex, v)?;
            }
        }
        Ok(g)
    }

    /// Text format: first line `n`, then one `u v` pair per line, 0-indexed.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Glues tree `tree` to `host` by identifying `tree`'s vertex `u` with
/// `host`'s vertex `v`.
///
/// Host vertices keep their labels; the remaining tree vertices follow in
/// increasing order of their label in `tree`. Use [`pendant_vertex_map`] to
/// recover the placement.
pub fn pendant_attach(tree: &Graph, u: usize, host: &Graph, v: usize) -> Result<Graph, GraphError> {
    if !tree.is_tree() {
        return Err(GraphError::NotATree);
    }
    if u >= tree.n() {
        return Err(GraphError::VertexOutOfRange { vertex: u, n: tree.n() });
    }
    if v >= host.n() {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: host.n() });
    }
    let map = pendant_vertex_map(tree, u, host, v);
    let mut g = Graph::empty(host.n() + tree.n() - 1)?;
    for (a, b) in host.edges() {
        g.add_edge(a, b)?;
    }
    for (a, b) in tree.edges() {
        g.add_edge(map[a], map[b])?;
    }
    Ok(g)
}

/// Where each vertex of `tree` lands inside `pendant_attach(tree, u, host, v)`.
pub fn pendant_vertex_map(tree: &Graph, u: usize, host: &Graph, v: usize) -> Vec<usize> {
    let mut next = host.n();
    (0..tree.n())
        .map(|t| {
            if t == u {
                v
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(GraphError::Parse { line: 1, reason: "empty input".into() })?;
        let n: usize =
            first.parse().map_err(|_| GraphError::Parse { line, reason: format!("bad vertex count `{first}`") })?;
        let mut g = Graph::empty(n)?;
        for (line, text) in lines {
            let parts: Vec<&str> = text.split_whitespace().collect();
            let parsed: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
            match parsed.as_deref() {
                Some([u, v]) => g.add_edge(*u, *v)?,
                _ => return Err(GraphError::Parse { line, reason: format!("expected `u v`, got `{text}`") }),
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::named;
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, &[(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::empty(17), Err(GraphError::VertexCount(17)));
        assert_eq!(Graph::empty(0), Err(GraphError::VertexCount(0)));
    }

    #[test]
    fn complement_examples() {
        let k5 = named("k5").unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        let c5 = named("c5").unwrap();
        assert!(is_isomorphic(&c5.complement(), &c5));
        let d = named("diamond").unwrap();
        let dc = d.complement();
        assert_eq!(dc.edge_count(), 1);
        assert_eq!((0..4).filter(|&v| dc.degree(v) == 0).count(), 2);
    }

    #[test]
    fn apex_examples() {
        let k2 = named("k2").unwrap();
        assert!(is_isomorphic(&k2.apex_add(1).unwrap(), &named("k3").unwrap()));
        let c4 = named("c4").unwrap();
        let oct = c4.apex_add(2).unwrap();
        assert_eq!(oct.edge_count(), 12);
        assert!(is_isomorphic(&oct, &named("k:2:2:2").unwrap()));
        for a in 1..5 {
            assert!(is_isomorphic(&k2.apex_add(a).unwrap(), &named(&format!("k:1:1:{a}")).unwrap()));
        }
    }

    #[test]
    fn pendant_examples() {
        let k2 = named("k2").unwrap();
        let k3 = named("k3").unwrap();
        let k3p = pendant_attach(&k2, 0, &k3, 0).unwrap();
        assert!(is_isomorphic(&k3p, &named("k3plus").unwrap()));

        // diamond: vertices 0,1 have degree 3, 2,3 have degree 2
        let d = named("diamond").unwrap();
        assert_eq!(d.degree(0), 3);
        assert_eq!(d.degree(2), 2);
        let h1 = pendant_attach(&k2, 0, &d, 2).unwrap();
        assert_eq!((h1.n(), h1.edge_count()), (5, 6));
        assert!(is_isomorphic(&h1, &named("h1").unwrap()));
        let h2 = pendant_attach(&k2, 1, &d, 0).unwrap();
        assert!(is_isomorphic(&h2, &named("h2").unwrap()));
        // a 2-edge path hung from its end at a degree-3 vertex
        let p3 = named("p3").unwrap();
        let g = pendant_attach(&p3, 0, &d, 0).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 7));
        assert!(!is_isomorphic(&g, &named("h2").unwrap()));

        assert_eq!(pendant_attach(&named("c4").unwrap(), 0, &k3, 0), Err(GraphError::NotATree));
    }

    #[test]
    fn text_format_round_trip() {
        let g = named("h4").unwrap();
        let parsed: Graph = g.to_text().parse().unwrap();
        assert_eq!(parsed, g);
        let with_comments: Graph = "# triangle\n3\n0 1\n1 2 # spoke\n\n2 0\n".parse().unwrap();
        assert_eq!(with_comments, named("k3").unwrap());
        assert!(matches!("3\n0 1 2\n".parse::<Graph>(), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn structural_predicates() {
        assert!(named("p5").unwrap().is_tree());
        assert!(!named("c4").unwrap().is_tree());
        assert!(named("c4").unwrap().is_bipartite());
        assert!(!named("c5").unwrap().is_bipartite());
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_k2.is_connected());
        assert_eq!(two_k2.without_isolated(), two_k2);
        assert_eq!(Graph::empty(4).unwrap().without_isolated().n(), 1);
    }
}
