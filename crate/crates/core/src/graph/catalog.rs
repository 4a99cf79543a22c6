//! Named graphs.
//!
//! Identifiers are lowercase. Parameterised families use `:`-separated
//! integers (`k:2:2:2`, `beachball:3`, `dk:2`); the common small cases also
//! have compact spellings (`k3`, `c5`, `p4`).
//!
//! | name | graph |
//! |------|-------|
//! | `k<n>`, `k:<n>` | complete graph |
//! | `k:<r>:<s>`, `k:<r>:<s>:<t>` | complete bipartite / tripartite |
//! | `c<n>`, `c:<n>` | cycle |
//! | `p<n>`, `p:<n>` | path on n vertices |
//! | `e<n>`, `e:<n>` | edgeless graph |
//! | `star:<s>` | `K_{1,s}` |
//! | `cherry` | `K_{1,2}` |
//! | `matching:<m>`, `2k2` | m disjoint edges |
//! | `diamond` | `K_{1,1,2}` |
//! | `k3plus` | triangle plus a pendant edge |
//! | `wheel:<k>` | k-cycle plus a hub |
//! | `dk:<k>` | two non-adjacent apexes over a k-edge path |
//! | `beachball:<k>` | `B_{2k}`: two 2k-wheels glued along their rim |
//! | `h1` .. `h4` | 5-vertex graphs: `h1`, `h2` are diamonds with a pendant edge; `h3`, `h4` carry the bundled certificate |
//! | `jst` | two triangles hung off a central triangle at two of its vertices |
//! | `fork`, `k23minus` | the two less common members of the bipartite list |

use super::{Graph, GraphError};

pub fn named(name: &str) -> Result<Graph, GraphError> {
    let name = name.trim().to_ascii_lowercase();
    let unknown = || GraphError::UnknownName(name.clone());
    let bad = |reason: &str| GraphError::BadParameter { name: name.clone(), reason: reason.into() };

    let mut parts = name.split(':');
    let head = parts.next().unwrap_or_default();
    let params: Vec<usize> = parts.map(|p| p.parse::<usize>().map_err(|_| unknown())).collect::<Result<_, _>>()?;

    // compact spellings: k3, c5, p4, e2
    if params.is_empty() && head.len() >= 2 {
        let (prefix, digits) = head.split_at(1);
        if let Ok(n) = digits.parse::<usize>() {
            match prefix {
                "k" => return complete(n),
                "c" => return cycle(n),
                "p" => return path(n),
                "e" => return Graph::empty(n),
                _ => {}
            }
        }
    }

    match (head, params.as_slice()) {
        ("k", [n]) => complete(*n),
        ("k", parts) if parts.len() >= 2 => complete_multipartite(parts),
        ("c", [n]) => cycle(*n),
        ("p", [n]) => path(*n),
        ("e", [n]) => Graph::empty(*n),
        ("star", [s]) => complete_multipartite(&[1, *s]),
        ("cherry", []) => complete_multipartite(&[1, 2]),
        ("2k2", []) => matching(2),
        ("matching", [m]) => matching(*m),
        ("diamond", []) => complete_multipartite(&[1, 1, 2]),
        ("k3plus", []) => Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]),
        ("wheel", [k]) => wheel(*k),
        ("dk", [k]) => {
            if *k == 0 {
                return Err(bad("k >= 1"));
            }
            path(k + 1)?.apex_add(2)
        }
        ("beachball", [k]) => beachball(*k).map_err(|e| match e {
            GraphError::VertexCount(_) => bad("2 <= k <= 7"),
            e => e,
        }),
        ("h1", []) => Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (3, 4)]),
        ("h2", []) => Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (1, 4)]),
        ("h3", []) => Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 0), (0, 1), (1, 4)]),
        ("h4", []) => Graph::from_edges(5, &[(1, 2), (2, 3), (3, 1), (1, 0), (0, 2), (0, 4), (4, 3)]),
        ("jst", []) => Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 1)]),
        ("fork", []) => Graph::from_edges(5, &[(0, 1), (0, 2), (0, 4), (3, 4)]),
        ("k23minus", []) => Graph::from_edges(5, &[(3, 0), (0, 2), (1, 3), (3, 4), (4, 2)]),
        _ => Err(unknown()),
    }
}

/// The ten connected bipartite graphs on at most five vertices, in the order
/// K2, K_{1,2}, K_{1,3}, P4, C4, K_{1,4}, fork, P5, K_{2,3}^-, K_{2,3}.
pub fn bipartite_apex_bases() -> Vec<(&'static str, Graph)> {
    ["k2", "cherry", "star:3", "p4", "c4", "star:4", "fork", "p5", "k23minus", "k:2:3"]
        .into_iter()
        .map(|n| (n, named(n).expect("catalog entry")))
        .collect()
}

/// Names accepted by [`named`] without parameters, plus one instance of each
/// family; used by the CLI listing and catalog-wide tests.
pub fn listing() -> Vec<&'static str> {
    vec![
        "k2",
        "k3",
        "k4",
        "k5",
        "c4",
        "c5",
        "c6",
        "p3",
        "p4",
        "p5",
        "cherry",
        "2k2",
        "star:3",
        "star:4",
        "diamond",
        "k3plus",
        "wheel:4",
        "wheel:5",
        "dk:1",
        "dk:2",
        "dk:3",
        "beachball:2",
        "beachball:3",
        "k:1:1:3",
        "k:1:2:2",
        "k:2:2:2",
        "k:2:3",
        "k:3:3",
        "h1",
        "h2",
        "h3",
        "h4",
        "jst",
        "fork",
        "k23minus",
    ]
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadParameter { name: format!("c{n}"), reason: "cycles need n >= 3".into() });
    }
    let mut g = Graph::empty(n)?;
    for v in 0..n {
        g.add_edge(v, (v + 1) % n)?;
    }
    Ok(g)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        g.add_edge(v - 1, v)?;
    }
    Ok(g)
}

pub fn matching(m: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(2 * m)?;
    for i in 0..m {
        g.add_edge(2 * i, 2 * i + 1)?;
    }
    Ok(g)
}

pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
    let n: usize = parts.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Cycle on `k` rim vertices 0..k plus hub `k`.
pub fn wheel(k: usize) -> Result<Graph, GraphError> {
    cycle(k)?.apex_add(1)
}

/// `B_{2k}`: a 2k-cycle with two non-adjacent poles joined to every rim vertex.
pub fn beachball(k: usize) -> Result<Graph, GraphError> {
    if k < 2 {
        return Err(GraphError::BadParameter { name: "beachball".into(), reason: "k >= 2".into() });
    }
    cycle(2 * k)?.apex_add(2)
}
