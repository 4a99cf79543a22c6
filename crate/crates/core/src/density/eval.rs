//! Sum-product evaluation of pattern densities.
//!
//! Every density in this crate has the shape
//! `sum over x: V -> [k] of prod_v a_v(x_v) * prod_{uv} F_uv(x_u, x_v)`
//! for per-vertex weight vectors `a_v` and pairwise factor matrices `F_uv`.
//! Two evaluators compute it: a depth-first enumeration of assignments in
//! lexicographic order, and variable elimination along a min-degree order.
//! The elimination order is a tree decomposition in disguise (each eliminated
//! vertex together with its remaining neighbours forms a bag), so its cost is
//! `k^(bag size)` per bag instead of `k^n`.

use num::BigRational;

use super::{SignedStepGraphon, StepGraphon};
use crate::graph::{even_expansion, Graph, GraphCombination, GraphError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Elimination when it is estimated cheaper than enumeration.
    #[default]
    Auto,
    Brute,
    Elimination,
}

/// Min-degree elimination order for a pattern graph.
#[derive(Debug, Clone)]
pub struct EliminationPlan {
    order: Vec<usize>,
    /// Neighbours of `order[i]` that are still present when it is eliminated.
    scopes: Vec<Vec<usize>>,
}

impl EliminationPlan {
    pub fn for_graph(h: &Graph) -> Self {
        let n = h.n();
        let mut adj: Vec<u16> = (0..n).map(|v| h.neighbors(v)).collect();
        let mut alive: u16 = h.vertex_mask();
        let mut order = Vec::with_capacity(n);
        let mut scopes = Vec::with_capacity(n);
        while alive != 0 {
            // min degree, ties broken by fewest fill edges, then lowest label
            let v = (0..n)
                .filter(|&v| alive >> v & 1 == 1)
                .min_by_key(|&v| {
                    let nb = adj[v] & alive;
                    let mut fill = 0;
                    let mut m = nb;
                    while m != 0 {
                        let u = m.trailing_zeros() as usize;
                        m &= m - 1;
                        fill += (nb & !adj[u] & !(1 << u)).count_ones();
                    }
                    (nb.count_ones(), fill, v)
                })
                .expect("alive is nonempty");
            let nb = adj[v] & alive;
            let mut m = nb;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                adj[u] |= nb & !(1 << u);
            }
            alive &= !(1 << v);
            order.push(v);
            scopes.push((0..n).filter(|&u| nb >> u & 1 == 1).collect());
        }
        EliminationPlan { order, scopes }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.scopes.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Bags `{v} + scope(v)` of the induced tree decomposition.
    pub fn bags(&self) -> Vec<Vec<usize>> {
        self.order
            .iter()
            .zip(&self.scopes)
            .map(|(&v, s)| {
                let mut b = s.clone();
                b.push(v);
                b.sort_unstable();
                b
            })
            .collect()
    }

    /// Number of table entries touched for `k` parts.
    pub fn cost(&self, k: usize) -> f64 {
        self.scopes.iter().map(|s| (k as f64).powi(s.len() as i32 + 1)).sum()
    }
}

/// A pairwise factor: the matrix applied to `(x_u, x_v)`.
pub(crate) type PairFactor<'a, S> = (usize, usize, &'a [Vec<S>]);

/// `sum_x prod_v weights[v][x_v] * prod_{(u,v,F)} F[x_u][x_v]`.
pub(crate) fn sum_product<S: Scalar>(n: usize, weights: &[&[S]], pairs: &[PairFactor<'_, S>], method: Method) -> S {
    let k = weights.first().map_or(1, |w| w.len());
    let structure = || {
        let mut g = Graph::empty(n).expect("pattern size already validated");
        for &(u, v, _) in pairs {
            g.add_edge(u, v).expect("pattern pairs are in range");
        }
        g
    };
    match method {
        Method::Brute => brute(n, weights, pairs),
        Method::Elimination => eliminate(n, k, weights, pairs, &EliminationPlan::for_graph(&structure())),
        Method::Auto => {
            if n <= 3 || k == 1 {
                return brute(n, weights, pairs);
            }
            let plan = EliminationPlan::for_graph(&structure());
            if 2.0 * plan.cost(k) < (k as f64).powi(n as i32) {
                eliminate(n, k, weights, pairs, &plan)
            } else {
                brute(n, weights, pairs)
            }
        }
    }
}

/// Factors whose later endpoint is a given vertex: (earlier endpoint, matrix).
type BackEdges<'a, S> = Vec<(usize, &'a [Vec<S>])>;

fn brute<S: Scalar>(n: usize, weights: &[&[S]], pairs: &[PairFactor<'_, S>]) -> S {
    // back[v]: factors whose later endpoint is v, oriented (earlier, matrix)
    let mut back: Vec<BackEdges<'_, S>> = vec![Vec::new(); n];
    for &(u, v, f) in pairs {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        back[b].push((a, f));
    }
    let mut assignment = vec![0usize; n];
    fn go<S: Scalar>(v: usize, acc: S, weights: &[&[S]], back: &[BackEdges<'_, S>], assignment: &mut [usize]) -> S {
        if v == weights.len() {
            return acc;
        }
        let mut total = S::zero();
        for (i, w) in weights[v].iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let mut p = acc.clone() * w.clone();
            for &(u, f) in &back[v] {
                p = p * f[assignment[u]][i].clone();
                if p.is_zero() {
                    break;
                }
            }
            if p.is_zero() {
                continue;
            }
            assignment[v] = i;
            total = total + go(v + 1, p, weights, back, assignment);
        }
        total
    }
    go(0, S::one(), &weights[..n], &back, &mut assignment)
}

struct Factor<S> {
    scope: Vec<usize>,
    table: Vec<S>,
}

fn eliminate<S: Scalar>(
    n: usize,
    k: usize,
    weights: &[&[S]],
    pairs: &[PairFactor<'_, S>],
    plan: &EliminationPlan,
) -> S {
    let mut factors: Vec<Factor<S>> = pairs
        .iter()
        .map(|&(u, v, f)| {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            // index = x_a + k * x_b
            let mut table = Vec::with_capacity(k * k);
            for xb in 0..k {
                for xa in 0..k {
                    table.push(if u < v { f[xa][xb].clone() } else { f[xb][xa].clone() });
                }
            }
            Factor { scope: vec![a, b], table }
        })
        .collect();
    let mut scalar = S::one();
    for &v in &plan.order {
        debug_assert!(v < n);
        let (mine, rest): (Vec<_>, Vec<_>) = factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        let mut union: Vec<usize> = mine.iter().flat_map(|f| f.scope.iter().copied()).collect();
        union.push(v);
        union.sort_unstable();
        union.dedup();
        let vpos = union.iter().position(|&x| x == v).expect("v is in its own scope");
        let out_scope: Vec<usize> = union.iter().copied().filter(|&x| x != v).collect();
        // strides of each factor's variables within the union odometer
        let locate = |scope: &[usize]| -> Vec<usize> {
            scope.iter().map(|x| union.iter().position(|y| y == x).expect("subset of union")).collect()
        };
        let factor_pos: Vec<Vec<usize>> = mine.iter().map(|f| locate(&f.scope)).collect();
        let out_pos = locate(&out_scope);
        let mut out = vec![S::zero(); k.pow(out_scope.len() as u32)];
        let mut digits = vec![0usize; union.len()];
        let total = k.pow(union.len() as u32);
        for _ in 0..total {
            let w = &weights[v][digits[vpos]];
            if !w.is_zero() {
                let mut p = w.clone();
                for (f, pos) in mine.iter().zip(&factor_pos) {
                    let mut idx = 0;
                    for &q in pos.iter().rev() {
                        idx = idx * k + digits[q];
                    }
                    p = p * f.table[idx].clone();
                    if p.is_zero() {
                        break;
                    }
                }
                if !p.is_zero() {
                    let mut idx = 0;
                    for &q in out_pos.iter().rev() {
                        idx = idx * k + digits[q];
                    }
                    out[idx] = out[idx].clone() + p;
                }
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < k {
                    break;
                }
                *d = 0;
            }
        }
        if out_scope.is_empty() {
            scalar = scalar * out.pop().expect("one entry");
        } else {
            factors.push(Factor { scope: out_scope, table: out });
        }
    }
    debug_assert!(factors.is_empty());
    scalar
}

fn uniform_weights<S: Scalar>(weights: &[S], n: usize) -> Vec<&[S]> {
    vec![weights; n]
}

/// Homomorphism-style density of `h` with per-vertex weights and a single
/// edge matrix. This is the primitive behind gradients, where some vertices
/// are pinned to one part.
pub fn hom_density<S: Scalar>(h: &Graph, weights: &[&[S]], values: &[Vec<S>], method: Method) -> S {
    let pairs: Vec<PairFactor<'_, S>> = h.edges().into_iter().map(|(u, v)| (u, v, values)).collect();
    sum_product(h.n(), weights, &pairs, method)
}

/// `t_h(W) = E[prod_{uv in E(h)} W(x_u, x_v)]`.
pub fn t_hom<S: Scalar>(h: &Graph, w: &StepGraphon<S>) -> S {
    t_hom_with(h, w, Method::Auto)
}

pub fn t_hom_with<S: Scalar>(h: &Graph, w: &StepGraphon<S>, method: Method) -> S {
    hom_density(h, &uniform_weights(w.weights(), h.n()), w.values(), method)
}

/// `t_f(U)` for a signed graphon; the edgeless pattern gives 1.
pub fn t_signed<S: Scalar>(f: &Graph, u: &SignedStepGraphon<S>) -> S {
    hom_density(f, &uniform_weights(u.weights(), f.n()), u.values(), Method::Auto)
}

/// Induced density of the labelled pattern `h`: `W` on edges, `1 - W` on
/// non-edges.
pub fn t_induced<S: Scalar>(h: &Graph, w: &StepGraphon<S>) -> S {
    let complement = w.one_minus();
    let n = h.n();
    let mut pairs: Vec<PairFactor<'_, S>> = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v, if h.has_edge(u, v) { w.values() } else { complement.values() }));
        }
    }
    sum_product(n, &uniform_weights(w.weights(), n), &pairs, Method::Brute)
}

/// `m_h(W) = t_h(W) + t_h(1 - W)`.
pub fn m<S: Scalar>(h: &Graph, w: &StepGraphon<S>) -> S {
    m_with(h, w, Method::Auto)
}

pub fn m_with<S: Scalar>(h: &Graph, w: &StepGraphon<S>, method: Method) -> S {
    t_hom_with(h, w, method) + t_hom_with(h, &w.one_minus(), method)
}

/// `m_h(W)` recomputed through the even-subgraph expansion
/// `2^{1-e(h)} * sum_F coeff_F * t_F(2W - 1)`.
pub fn expansion_value<S: Scalar>(h: &Graph, w: &StepGraphon<S>) -> Result<S, GraphError> {
    let expansion = even_expansion(h)?;
    Ok(expansion_value_of(&expansion, h.edge_count(), w))
}

/// As [`expansion_value`] with a precomputed expansion, for repeated use.
pub fn expansion_value_of<S: Scalar>(expansion: &GraphCombination, edges: usize, w: &StepGraphon<S>) -> S {
    let u = w.to_signed();
    let sum = expansion
        .iter()
        .fold(S::zero(), |acc, (f, c): (&Graph, &BigRational)| acc + S::from_rational(c) * t_signed(f, &u));
    sum * S::pow2(1 - edges as i32)
}

/// `tau_h(W) + tau_{complement h}(W)`.
pub fn symmetrized_induced<S: Scalar>(h: &Graph, w: &StepGraphon<S>) -> S {
    t_induced(h, w) + t_induced(&h.complement(), w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::suite;
    use crate::graph::catalog::{self, named};
    use num::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn block_identity<S: Scalar>() -> StepGraphon<S> {
        StepGraphon::uniform(vec![vec![S::one(), S::zero()], vec![S::zero(), S::one()]]).unwrap()
    }

    #[test]
    fn constant_graphons() {
        let k3 = named("k3").unwrap();
        assert_eq!(t_hom(&k3, &StepGraphon::<BigRational>::half()), q(1, 8));
        let p = q(3, 7);
        let w = StepGraphon::constant(p.clone()).unwrap();
        assert_eq!(t_hom(&named("c4").unwrap(), &w), Scalar::powi(&p, 4));
        assert_eq!(m(&k3, &StepGraphon::<BigRational>::half()), q(1, 4));
        assert_eq!(m(&named("c4").unwrap(), &StepGraphon::<BigRational>::half()), q(1, 8));
        assert_eq!(m(&named("k:2:2:2").unwrap(), &StepGraphon::<BigRational>::half()), q(1, 2048));
    }

    #[test]
    fn two_cliques() {
        let k3 = named("k3").unwrap();
        let w = block_identity::<BigRational>();
        assert_eq!(t_hom(&k3, &w), q(1, 4));
        assert_eq!(t_hom(&k3, &w.one_minus()), q(0, 1));
        assert_eq!(t_induced(&k3, &w), q(1, 4));
    }

    #[test]
    fn signed_basics() {
        let u = StepGraphon::<f64>::half().to_signed();
        assert_eq!(t_signed(&named("k2").unwrap(), &u), 0.0);
        assert_eq!(t_signed(&Graph::empty(1).unwrap(), &u), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let k = rng.gen_range(2..=4);
            let u = suite::random_graphon(&mut rng, k).to_signed();
            let k2 = t_signed(&named("k2").unwrap(), &u);
            let k12 = t_signed(&named("cherry").unwrap(), &u);
            let c4 = t_signed(&named("c4").unwrap(), &u);
            assert!(k12 >= k2 * k2 - 1e-12);
            assert!(c4 >= k12 * k12 - 1e-12);
        }
    }

    #[test]
    fn induced_partition_of_unity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = suite::random_graphon(&mut rng, 3);
        let total: f64 = (0u32..8)
            .map(|mask| {
                let edges: Vec<_> = [(0, 1), (0, 2), (1, 2)]
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e)
                    .collect();
                t_induced(&Graph::from_edges(3, &edges).unwrap(), &w)
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        let half = StepGraphon::<BigRational>::half();
        assert_eq!(t_induced(&named("h3").unwrap(), &half), q(1, 1024));
        assert_eq!(symmetrized_induced(&named("h4").unwrap(), &half), q(1, 512));
    }

    #[test]
    fn symmetrized_induced_symmetries() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c5 = named("c5").unwrap();
        for _ in 0..20 {
            let w = suite::random_graphon(&mut rng, 3);
            let h = named("h1").unwrap();
            assert!((symmetrized_induced(&h, &w) - symmetrized_induced(&h, &w.one_minus())).abs() < 1e-14);
            assert!((symmetrized_induced(&c5, &w) - 2.0 * t_induced(&c5, &w)).abs() < 1e-14);
        }
    }

    #[test]
    fn brute_and_elimination_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for name in catalog::listing() {
            let h = named(name).unwrap();
            if h.n() > 8 {
                continue;
            }
            for k in 1..=4 {
                let w = suite::random_graphon(&mut rng, k);
                let a = t_hom_with(&h, &w, Method::Brute);
                let b = t_hom_with(&h, &w, Method::Elimination);
                assert!((a - b).abs() <= 1e-12, "{name} k={k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn elimination_is_exact() {
        let w = suite::random_rational_graphon(&mut ChaCha8Rng::seed_from_u64(7), 3, 12);
        for name in ["diamond", "h4", "jst", "k:2:2:2", "beachball:3"] {
            let h = named(name).unwrap();
            assert_eq!(t_hom_with(&h, &w, Method::Brute), t_hom_with(&h, &w, Method::Elimination), "{name}");
        }
    }

    #[test]
    fn plan_widths() {
        assert_eq!(EliminationPlan::for_graph(&named("p5").unwrap()).width(), 1);
        assert_eq!(EliminationPlan::for_graph(&named("jst").unwrap()).width(), 2);
        assert_eq!(EliminationPlan::for_graph(&named("k4").unwrap()).width(), 3);
        let b = EliminationPlan::for_graph(&named("beachball:7").unwrap());
        assert!(b.width() <= 4);
        assert!(b.cost(4) < 4f64.powi(16) / 1000.0);
    }

    #[test]
    fn large_beachball_is_tractable() {
        // brute force would need 4^16 assignments
        let w = suite::random_graphon(&mut ChaCha8Rng::seed_from_u64(8), 4);
        let b = named("beachball:7").unwrap();
        let v = m(&b, &w);
        assert!(v > 0.0 && v <= 2.0);
        assert_eq!(m(&b, &StepGraphon::<BigRational>::half()), Scalar::pow2(1 - 42));
    }

    #[test]
    fn multiplicative_over_disjoint_unions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = named("k3").unwrap();
        let b = named("c4").unwrap();
        let ab = a.disjoint_union(&b).unwrap();
        for _ in 0..10 {
            let w = suite::random_graphon(&mut rng, 3);
            assert!((t_hom(&ab, &w) - t_hom(&a, &w) * t_hom(&b, &w)).abs() < 1e-14);
        }
    }

    #[test]
    fn expansion_matches_m() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for p in [q(0, 1), q(1, 3), q(1, 1)] {
            let w = StepGraphon::constant(p.clone()).unwrap();
            let k3 = named("k3").unwrap();
            let u = q(2, 1) * p - q(1, 1);
            let closed = q(1, 4) * (q(1, 1) + q(3, 1) * u.clone() * u);
            assert_eq!(expansion_value(&k3, &w).unwrap(), closed);
            assert_eq!(m(&k3, &w), closed);
        }
        for _ in 0..20 {
            let w = suite::random_graphon(&mut rng, 3);
            let d = named("diamond").unwrap();
            assert!((expansion_value(&d, &w).unwrap() - m(&d, &w)).abs() < 1e-12);
        }
        let w = suite::random_rational_graphon(&mut rng, 2, 5);
        let h = named("h2").unwrap();
        assert_eq!(expansion_value(&h, &w).unwrap(), m(&h, &w));
        assert_eq!(expansion_value(&named("c5").unwrap(), &StepGraphon::<BigRational>::half()).unwrap(), q(1, 16));
    }

    #[test]
    fn m_at_half_and_complement_symmetry() {
        let half = StepGraphon::<BigRational>::half();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in catalog::listing() {
            let h = named(name).unwrap();
            assert_eq!(m(&h, &half), Scalar::pow2(1 - h.edge_count() as i32), "{name}");
            if h.n() <= 8 {
                let w = suite::random_graphon(&mut rng, 2);
                let v = m(&h, &w);
                assert!((v - m(&h, &w.one_minus())).abs() < 1e-14);
                assert!((0.0..=2.0).contains(&v));
            }
        }
    }

    #[test]
    fn jensen_instance_for_book_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for t in 1..=4 {
            let book = named(&format!("k:1:1:{t}")).unwrap();
            for _ in 0..20 {
                let w = suite::random_graphon(&mut rng, 3);
                let k3 = t_hom(&named("k3").unwrap(), &w);
                let k2 = t_hom(&named("k2").unwrap(), &w);
                assert!(t_hom(&book, &w) >= k3.powi(t) / k2.powi(t - 1) - 1e-12);
            }
        }
    }

    #[test]
    fn pinned_vertex_weights() {
        // pinning both ends of an edge to parts (i, j) yields w_i w_j W_ij
        let w = suite::random_graphon(&mut ChaCha8Rng::seed_from_u64(13), 3);
        let k2 = named("k2").unwrap();
        let pin = |i: usize| -> Vec<f64> { (0..3).map(|p| if p == i { w.weights()[i] } else { 0.0 }).collect() };
        let (a, b) = (pin(0), pin(2));
        let v = hom_density(&k2, &[&a, &b], w.values(), Method::Auto);
        assert!((v - w.weights()[0] * w.weights()[2] * w.value(0, 2)).abs() < 1e-15);
    }
}
