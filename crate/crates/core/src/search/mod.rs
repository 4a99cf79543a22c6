//! Local search for graphons with few monochromatic copies, and exact
//! Ramsey multiplicities of small complete graphs.

mod ramsey;

pub use ramsey::{
    count_homomorphisms, count_injective, estimate_ramsey_constant, exact_ramsey_multiplicity,
    graphs_up_to_isomorphism, monochromatic_homomorphisms, RamseyError, MAX_RAMSEY_N,
};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::density::{hom_density, Method, StepGraphon};
use crate::Graph;

/// Distance from `2^(1-e)` below which a minimum counts as "at target".
pub const VERDICT_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeConfig {
    pub parts: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    /// First trial step of the backtracking line search.
    pub initial_step: f64,
    pub seed: u64,
    /// Also move the part weights (projected onto the simplex).
    pub optimize_weights: bool,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            parts: 2,
            restarts: 32,
            max_iterations: 400,
            initial_step: 1.0,
            seed: 0,
            optimize_weights: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AtTarget,
    AboveTarget,
    BelowTarget,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::AtTarget => "at-target",
            Verdict::AboveTarget => "above-target",
            Verdict::BelowTarget => "below-target",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub best: StepGraphon<f64>,
    pub value: f64,
    /// `2^(1 - e(h))`, the value at the constant-1/2 graphon.
    pub target: f64,
    pub verdict: Verdict,
    /// Objective after each accepted step of the winning restart.
    pub trace: Vec<f64>,
    pub restart: usize,
}

impl MinimizeResult {
    /// `value target verdict restart trace_len`, tab separated.
    pub fn to_tsv(&self) -> String {
        format!(
            "{:.12}\t{:.12}\t{}\t{}\t{}",
            self.value,
            self.target,
            self.verdict.as_str(),
            self.restart,
            self.trace.len()
        )
    }
}

pub fn verdict(value: f64, target: f64) -> Verdict {
    if value < target - VERDICT_TOLERANCE {
        Verdict::BelowTarget
    } else if value > target + VERDICT_TOLERANCE {
        Verdict::AboveTarget
    } else {
        Verdict::AtTarget
    }
}

fn complement_values(values: &[Vec<f64>]) -> Vec<Vec<f64>> {
    values.iter().map(|r| r.iter().map(|x| 1.0 - x).collect()).collect()
}

fn m_raw(h: &Graph, weights: &[f64], values: &[Vec<f64>]) -> f64 {
    let per_vertex = vec![weights; h.n()];
    hom_density(h, &per_vertex, values, Method::Auto)
        + hom_density(h, &per_vertex, &complement_values(values), Method::Auto)
}

fn indicator(k: usize, i: usize, weight: f64) -> Vec<f64> {
    let mut v = vec![0.0; k];
    v[i] = weight;
    v
}

/// Partial derivatives of `t_h` in each symmetric entry: the `(i, j)` entry
/// is the derivative in the single variable `W_ij = W_ji`.
fn t_gradient(h: &Graph, weights: &[f64], values: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = weights.len();
    let mut grad = vec![vec![0.0; k]; k];
    for (u, v) in h.edges() {
        let mut rest = h.clone();
        rest.remove_edge(u, v);
        for i in 0..k {
            let pin_i = indicator(k, i, weights[i]);
            for j in i..k {
                let pin_j = indicator(k, j, weights[j]);
                let mut per_vertex: Vec<&[f64]> = vec![weights; h.n()];
                per_vertex[u] = &pin_i;
                per_vertex[v] = &pin_j;
                let mut d = hom_density(&rest, &per_vertex, values, Method::Auto);
                if i != j {
                    per_vertex[u] = &pin_j;
                    per_vertex[v] = &pin_i;
                    d += hom_density(&rest, &per_vertex, values, Method::Auto);
                }
                grad[i][j] += d;
            }
        }
    }
    for i in 0..k {
        for j in 0..i {
            grad[i][j] = grad[j][i];
        }
    }
    grad
}

/// `d m_h / d W_ij` for every entry, off-diagonal pairs being one variable.
pub fn gradient_m(h: &Graph, w: &StepGraphon<f64>) -> Vec<Vec<f64>> {
    let direct = t_gradient(h, w.weights(), w.values());
    let flipped = t_gradient(h, w.weights(), &complement_values(w.values()));
    direct.iter().zip(&flipped).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect()
}

/// `d m_h / d w_i`, treating the part weights as free variables.
pub fn weight_gradient_m(h: &Graph, w: &StepGraphon<f64>) -> Vec<f64> {
    let k = w.k();
    let flipped = complement_values(w.values());
    (0..k)
        .map(|i| {
            let unit = indicator(k, i, 1.0);
            (0..h.n())
                .map(|v| {
                    let mut per_vertex: Vec<&[f64]> = vec![w.weights(); h.n()];
                    per_vertex[v] = &unit;
                    hom_density(h, &per_vertex, w.values(), Method::Auto)
                        + hom_density(h, &per_vertex, &flipped, Method::Auto)
                })
                .sum()
        })
        .collect()
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, x) in sorted.iter().enumerate() {
        cumulative += x;
        let t = (cumulative - 1.0) / (i + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    let mut out: Vec<f64> = v.iter().map(|x| (x - theta).max(0.0)).collect();
    let total: f64 = out.iter().sum();
    for x in &mut out {
        *x /= total;
    }
    out
}

struct Descent {
    weights: Vec<f64>,
    values: Vec<Vec<f64>>,
    value: f64,
    trace: Vec<f64>,
}

fn descend(h: &Graph, mut weights: Vec<f64>, mut values: Vec<Vec<f64>>, cfg: &MinimizeConfig) -> Descent {
    let k = weights.len();
    let mut value = m_raw(h, &weights, &values);
    let mut trace = vec![value];
    let mut step = cfg.initial_step;
    for _ in 0..cfg.max_iterations {
        let current = StepGraphon::new(weights.clone(), values.clone()).expect("iterates stay feasible");
        let grad = gradient_m(h, &current);
        let wgrad = cfg.optimize_weights.then(|| weight_gradient_m(h, &current));
        let mut accepted = false;
        while step > 1e-14 {
            let trial_values: Vec<Vec<f64>> =
                (0..k).map(|i| (0..k).map(|j| (values[i][j] - step * grad[i][j]).clamp(0.0, 1.0)).collect()).collect();
            let trial_weights = match &wgrad {
                Some(g) => project_simplex(&weights.iter().zip(g).map(|(w, d)| w - step * d).collect::<Vec<_>>()),
                None => weights.clone(),
            };
            // directional decrease <grad, x - x'> over the free variables
            let mut decrease = 0.0;
            for i in 0..k {
                for j in i..k {
                    decrease += grad[i][j] * (values[i][j] - trial_values[i][j]);
                }
            }
            if let Some(g) = &wgrad {
                decrease += g.iter().zip(&weights).zip(&trial_weights).map(|((d, a), b)| d * (a - b)).sum::<f64>();
            }
            if decrease <= 1e-16 {
                break;
            }
            let trial = m_raw(h, &trial_weights, &trial_values);
            if trial <= value - 1e-4 * decrease {
                values = trial_values;
                weights = trial_weights;
                value = trial;
                trace.push(value);
                step *= 2.0;
                accepted = true;
                break;
            }
            step /= 2.0;
        }
        if !accepted {
            break;
        }
    }
    Descent { weights, values, value, trace }
}

fn symmetric_random(rng: &mut ChaCha8Rng, k: usize, mut draw: impl FnMut(&mut ChaCha8Rng) -> f64) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let x = draw(rng).clamp(0.0, 1.0);
            out[i][j] = x;
            out[j][i] = x;
        }
    }
    out
}

/// Start number `r`: 0 is the constant 1/2; the rest cycle through small
/// and large perturbations of 1/2, uniform noise and jittered 0/1 blocks.
fn start(r: usize, k: usize, cfg: &MinimizeConfig) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let uniform = vec![1.0 / k as f64; k];
    if r == 0 {
        return (uniform, vec![vec![0.5; k]; k]);
    }
    let values = match r % 4 {
        1 => symmetric_random(&mut rng, k, |g| 0.5 + g.gen_range(-0.1..0.1)),
        2 => symmetric_random(&mut rng, k, |g| g.gen::<f64>()),
        3 => symmetric_random(&mut rng, k, |g| if g.gen_bool(0.5) { 0.95 } else { 0.05 } + g.gen_range(-0.05..0.05)),
        _ => symmetric_random(&mut rng, k, |g| 0.5 + g.gen_range(-0.4..0.4)),
    };
    let weights = if cfg.optimize_weights && r.is_multiple_of(2) {
        let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        raw.iter().map(|x| x / total).collect()
    } else {
        uniform
    };
    (weights, values)
}

/// Multistart projected gradient descent for `min m_h` over `k`-part step
/// graphons. Restarts run in parallel; the minimum wins, ties going to the
/// lowest restart index.
pub fn minimize_m(h: &Graph, cfg: &MinimizeConfig) -> MinimizeResult {
    assert!(cfg.parts >= 1 && cfg.restarts >= 1, "need at least one part and one restart");
    let k = cfg.parts;
    let runs: Vec<(usize, Descent)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let (weights, values) = start(r, k, cfg);
            (r, descend(h, weights, values, cfg))
        })
        .collect();
    let (restart, best) = runs
        .into_iter()
        .min_by(|(ra, a), (rb, b)| a.value.total_cmp(&b.value).then(ra.cmp(rb)))
        .expect("at least one restart");
    let target = 2f64.powi(1 - h.edge_count() as i32);
    MinimizeResult {
        best: StepGraphon::new(best.weights, best.values).expect("feasible"),
        value: best.value,
        target,
        verdict: verdict(best.value, target),
        trace: best.trace,
        restart,
    }
}

/// Runs [`minimize_m`] with `2, 3, ..., max_parts` parts and stops at the
/// first below-target result; returns the last result otherwise.
pub fn escalate(h: &Graph, base: &MinimizeConfig, max_parts: usize) -> MinimizeResult {
    let mut result = None;
    for parts in 2..=max_parts.max(2) {
        let r = minimize_m(h, &MinimizeConfig { parts, ..base.clone() });
        let done = r.verdict == Verdict::BelowTarget;
        result = Some(r);
        if done {
            break;
        }
    }
    result.expect("at least one run")
}

/// Exhaustive minimum of `m_h` over 2-part step graphons with entries in
/// `{0, 1/resolution, ..., 1}` and the first part weight drawn from
/// `first_weights`. An optimizer-free oracle.
pub fn two_part_grid_minimum(h: &Graph, resolution: usize, first_weights: &[f64]) -> (f64, StepGraphon<f64>) {
    let grid: Vec<f64> = (0..=resolution).map(|i| i as f64 / resolution as f64).collect();
    let mut candidates = Vec::with_capacity(grid.len().pow(3));
    for &a in &grid {
        for &b in &grid {
            for &c in &grid {
                candidates.push((a, b, c));
            }
        }
    }
    let (value, p, (a, b, c)) = first_weights
        .iter()
        .flat_map(|&p| candidates.iter().map(move |&abc| (p, abc)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(p, (a, b, c))| (m_raw(h, &[p, 1.0 - p], &[vec![a, b], vec![b, c]]), p, (a, b, c)))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("nonempty grid");
    (value, StepGraphon::new(vec![p, 1.0 - p], vec![vec![a, b], vec![b, c]]).expect("grid point is valid"))
}
