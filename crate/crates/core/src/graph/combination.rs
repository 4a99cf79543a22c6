use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num::{BigInt, BigRational, Zero};

use super::{canonical_form, Graph, GraphError};

/// Largest edge count accepted by [`even_expansion`]; the expansion visits
/// every edge subset.
pub const MAX_EXPANSION_EDGES: usize = 20;

/// Formal linear combination of isomorphism classes with exact rational
/// coefficients. Keys are canonical forms; zero terms are never stored.
///
/// The edgeless class is keyed by `K1`, which every edgeless graph reduces to
/// once isolated vertices are dropped.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GraphCombination {
    terms: BTreeMap<Graph, BigRational>,
}

impl GraphCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(g: &Graph, coeff: BigRational) -> Self {
        let mut c = Self::new();
        c.add_term(g, coeff);
        c
    }

    /// Adds `coeff * [g]`, canonicalising `g` first.
    pub fn add_term(&mut self, g: &Graph, coeff: BigRational) {
        let key = canonical_form(g);
        let slot = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Coefficient of the class of `g` (zero when absent).
    pub fn coefficient(&self, g: &Graph) -> BigRational {
        self.terms.get(&canonical_form(g)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Graph, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        if by.is_zero() {
            return Self::new();
        }
        Self { terms: self.terms.iter().map(|(g, c)| (g.clone(), c * by)).collect() }
    }
}

impl Add for &GraphCombination {
    type Output = GraphCombination;

    fn add(self, rhs: &GraphCombination) -> GraphCombination {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g, c.clone());
        }
        out
    }
}

impl Mul<&BigRational> for &GraphCombination {
    type Output = GraphCombination;

    fn mul(self, rhs: &BigRational) -> GraphCombination {
        self.scale(rhs)
    }
}

impl fmt::Debug for GraphCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(g, c)| (g.edges(), c.to_string()))).finish()
    }
}

/// Groups the even-size edge subsets of `h` by isomorphism class of the
/// spanned subgraph (isolated vertices dropped).
///
/// With `U = 2W - 1`, `m_h(W) = 2^{1-e(h)} * sum_F coeff_F * t_F(U)`; the
/// coefficients sum to `2^{e(h)-1}` and the empty class has coefficient 1.
pub fn even_expansion(h: &Graph) -> Result<GraphCombination, GraphError> {
    let edges = h.edges();
    if edges.len() > MAX_EXPANSION_EDGES {
        return Err(GraphError::TooManyEdges { edges: edges.len(), max: MAX_EXPANSION_EDGES });
    }
    // count per canonical class in machine integers, convert once at the end
    let mut counts: BTreeMap<Graph, u64> = BTreeMap::new();
    let mut memo: std::collections::HashMap<Graph, Graph> = std::collections::HashMap::new();
    for mask in 0u32..1 << edges.len() {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let mut sub = Graph::empty(h.n())?;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sub.add_edge(u, v)?;
            }
        }
        let spanned = sub.without_isolated();
        let key = memo.entry(spanned.clone()).or_insert_with(|| canonical_form(&spanned)).clone();
        *counts.entry(key).or_default() += 1;
    }
    Ok(GraphCombination {
        terms: counts.into_iter().map(|(g, c)| (g, BigRational::from_integer(BigInt::from(c)))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::{self, named};

    /// `2^{e-1}` as a rational (1/2 for e = 0).
    fn half_of_subsets(e: usize) -> BigRational {
        let mut v = <BigRational as num::One>::one();
        for _ in 1..e {
            v *= BigRational::from_integer(BigInt::from(2));
        }
        if e == 0 {
            v / BigRational::from_integer(BigInt::from(2))
        } else {
            v
        }
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn k1() -> Graph {
        Graph::empty(1).unwrap()
    }

    #[test]
    fn triangle() {
        let e = even_expansion(&named("k3").unwrap()).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coefficient(&k1()), q(1));
        assert_eq!(e.coefficient(&named("cherry").unwrap()), q(3));
    }

    #[test]
    fn four_cycle() {
        let e = even_expansion(&named("c4").unwrap()).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(e.coefficient(&k1()), q(1));
        assert_eq!(e.coefficient(&named("2k2").unwrap()), q(2));
        assert_eq!(e.coefficient(&named("cherry").unwrap()), q(4));
        assert_eq!(e.coefficient(&named("c4").unwrap()), q(1));
    }

    #[test]
    fn diamond() {
        let e = even_expansion(&named("diamond").unwrap()).unwrap();
        let expected = [("e1", 1), ("2k2", 2), ("cherry", 8), ("k3plus", 4), ("c4", 1)];
        assert_eq!(e.len(), expected.len());
        for (name, c) in expected {
            let g = if name == "e1" { k1() } else { named(name).unwrap() };
            assert_eq!(e.coefficient(&g), q(c), "{name}");
        }
    }

    #[test]
    fn coefficient_sums() {
        for name in catalog::listing() {
            let h = named(name).unwrap();
            if h.edge_count() > 14 {
                continue;
            }
            let e = even_expansion(&h).unwrap();
            assert_eq!(e.coefficient_sum(), half_of_subsets(h.edge_count()), "{name}");
            assert_eq!(e.coefficient(&k1()), q(1), "{name}");
        }
    }

    #[test]
    fn size_cap() {
        let k7 = named("k7").unwrap();
        assert!(matches!(even_expansion(&k7), Err(GraphError::TooManyEdges { edges: 21, .. })));
    }

    #[test]
    fn arithmetic_cancels_to_empty() {
        let a = even_expansion(&named("c4").unwrap()).unwrap();
        let minus = a.scale(&q(-1));
        assert!((&a + &minus).is_empty());
        assert_eq!(&a * &q(2), &a + &a);
        assert_eq!(GraphCombination::single(&k1(), q(0)).len(), 0);
    }
}
