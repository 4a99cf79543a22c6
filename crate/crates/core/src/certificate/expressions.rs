//! Direct evaluation of the 16 certificate expressions on a step graphon.
//!
//! Conditional expectations are unnormalised: `E_T[g]` integrates `g` over
//! vertex tuples weighted by the probability that they induce the pattern
//! `T`, which keeps every expression a linear combination of 5-vertex class
//! densities. `f` is colour symmetrisation, `f(E)(W) = E(W) + E(1 - W)`.

use crate::density::{m, StepGraphon};
use crate::graph::catalog::named;
use crate::Scalar;

use super::CertificateError;

pub const EXPRESSION_COUNT: usize = 16;

/// Which transcription of the expressions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reading {
    /// The transcription consistent with the matrix columns: prefactor 480
    /// for (1), (2); signed neighbourhood differences in (6), (7); a
    /// non-adjacent pair in (16).
    #[default]
    Recovered,
    /// Literal text: prefactor 465, unsigned symmetric differences, an
    /// adjacent pair in (16).
    Printed,
}

pub fn expression_label(idx: usize, reading: Reading) -> &'static str {
    let printed = reading == Reading::Printed;
    match idx {
        1 if printed => "465(m_H1 - 2^-5)",
        1 => "480(m_H1 - 2^-5)",
        2 if printed => "465(m_H2 - 2^-5)",
        2 => "480(m_H2 - 2^-5)",
        3 => "48(m_C5 - 2^-4)",
        4 => "10 f E_T0[(P[all] - P[none])^2]",
        5 => "10 f E_T0[(8 P[none] - 1)^2]",
        6 if printed => "30 f E_Tbc[(2 P[bΔc] + 3 P[bΔc \\ a])^2]",
        6 => "30 f E_Tbc[(5 D_out + 2 D_in)^2]",
        7 if printed => "30 f E_Tbc[(2 P[bΔc] - 7 P[bΔc \\ a])^2]",
        7 => "30 f E_Tbc[(2 D_out - 5 D_in)^2]",
        8 => "30 f E_Tbc[(P[all] - P[none])^2]",
        9 => "30 f E_Tbc[(P[a only] - P[none])^2]",
        10 => "30 f E_Tbc[(P[b,c not a] - P[none])^2]",
        11 => "30 f E_Tbc[(P[bΔc \\ a] - 2 P[none])^2]",
        12 => "30 f E_Tbc[(P[bΔc ∩ a] - 2 P[none])^2]",
        13 => "15 E_a[(E_xy[(2W_xy - 1)(W_xa W_ya - W'_xa W'_ya)])^2]",
        14 => "15 f E_edge ab[(d_a - d_b)^2]",
        15 => "15 E_a[(2 d_a^2 + 2 (1 - d_a)^2 - 1)^2]",
        16 if printed => "30 f E_edge ab[P[N_a ∩ N_b] (2 P[N_a Δ N_b] - 1)^2]",
        16 => "30 f E_nonedge ab[P[N_a ∩ N_b] (2 P[N_a Δ N_b] - 1)^2]",
        _ => "unknown",
    }
}

/// Value of expression `idx` (1-based) at `w`.
pub fn evaluate_expression<S: Scalar>(idx: usize, w: &StepGraphon<S>, reading: Reading) -> Result<S, CertificateError> {
    let both = |g: fn(&Kernel<S>, Reading) -> S| g(&Kernel::new(w), reading) + g(&Kernel::new(&w.one_minus()), reading);
    let commonality = |name: &str, scale: i64, floor: i32| {
        let h = named(name).expect("catalog entry");
        S::from_int(scale) * (m(&h, w) - S::pow2(floor))
    };
    let prefactor = if reading == Reading::Printed { 465 } else { 480 };
    Ok(match idx {
        1 => commonality("h1", prefactor, -5),
        2 => commonality("h2", prefactor, -5),
        3 => commonality("c5", 48, -4),
        4..=12 => both(triple_expression(idx)),
        13 => Kernel::new(w).expression13(),
        14 => both(|k, _| k.expression14()),
        15 => Kernel::new(w).expression15(),
        16 => both(|k, r| k.expression16(r)),
        _ => return Err(CertificateError::UnknownExpression(idx)),
    })
}

fn triple_expression<S: Scalar>(idx: usize) -> fn(&Kernel<S>, Reading) -> S {
    match idx {
        4 => |k, _| k.over_triples(Pattern::Independent, 10, |a| sq(a.all() - a.none())),
        5 => |k, _| k.over_triples(Pattern::Independent, 10, |a| sq(S::from_int(8) * a.none() - S::one())),
        6 => |k, r| match r {
            Reading::Recovered => k.over_triples(Pattern::EdgeBc, 30, |a| {
                sq(S::from_int(5) * a.signed_out() + S::from_int(2) * a.signed_in())
            }),
            Reading::Printed => {
                k.over_triples(Pattern::EdgeBc, 30, |a| sq(S::from_int(2) * a.delta() + S::from_int(3) * a.delta_out()))
            }
        },
        7 => |k, r| match r {
            Reading::Recovered => k.over_triples(Pattern::EdgeBc, 30, |a| {
                sq(S::from_int(2) * a.signed_out() - S::from_int(5) * a.signed_in())
            }),
            Reading::Printed => {
                k.over_triples(Pattern::EdgeBc, 30, |a| sq(S::from_int(2) * a.delta() - S::from_int(7) * a.delta_out()))
            }
        },
        8 => |k, _| k.over_triples(Pattern::EdgeBc, 30, |a| sq(a.all() - a.none())),
        9 => |k, _| k.over_triples(Pattern::EdgeBc, 30, |a| sq(a.get(1, 0, 0) - a.none())),
        10 => |k, _| k.over_triples(Pattern::EdgeBc, 30, |a| sq(a.get(0, 1, 1) - a.none())),
        11 => |k, _| k.over_triples(Pattern::EdgeBc, 30, |a| sq(a.delta_out() - S::from_int(2) * a.none())),
        12 => |k, _| k.over_triples(Pattern::EdgeBc, 30, |a| sq(a.delta_in() - S::from_int(2) * a.none())),
        _ => unreachable!("triple expressions are 4..=12"),
    }
}

fn sq<S: Scalar>(x: S) -> S {
    x.clone() * x
}

#[derive(Clone, Copy)]
enum Pattern {
    /// `a, b, c` pairwise non-adjacent.
    Independent,
    /// Only `bc` adjacent.
    EdgeBc,
}

/// Probabilities, over a fresh vertex `x`, of each adjacency pattern of `x`
/// to the fixed triple `(a, b, c)`; bit order `(a, b, c)`, 1 = adjacent.
struct Atoms<S>([S; 8]);

impl<S: Scalar> Atoms<S> {
    fn get(&self, a: usize, b: usize, c: usize) -> S {
        self.0[a << 2 | b << 1 | c].clone()
    }
    fn all(&self) -> S {
        self.get(1, 1, 1)
    }
    fn none(&self) -> S {
        self.get(0, 0, 0)
    }
    /// `x` in exactly one of `N_b`, `N_c`, and not in `N_a`.
    fn delta_out(&self) -> S {
        self.get(0, 1, 0) + self.get(0, 0, 1)
    }
    fn delta_in(&self) -> S {
        self.get(1, 1, 0) + self.get(1, 0, 1)
    }
    fn delta(&self) -> S {
        self.delta_out() + self.delta_in()
    }
    /// `P[x ∈ N_b \ N_c] - P[x ∈ N_c \ N_b]`, restricted to `x ∉ N_a`.
    fn signed_out(&self) -> S {
        self.get(0, 1, 0) - self.get(0, 0, 1)
    }
    fn signed_in(&self) -> S {
        self.get(1, 1, 0) - self.get(1, 0, 1)
    }
}

struct Kernel<'a, S> {
    w: &'a [S],
    a: &'a [Vec<S>],
    /// `1 - a`
    b: Vec<Vec<S>>,
}

impl<'a, S: Scalar> Kernel<'a, S> {
    fn new(g: &'a StepGraphon<S>) -> Self {
        let b = g.values().iter().map(|r| r.iter().map(|x| S::one() - x.clone()).collect()).collect();
        Kernel { w: g.weights(), a: g.values(), b }
    }

    fn k(&self) -> usize {
        self.w.len()
    }

    fn adj(&self, adjacent: bool) -> &[Vec<S>] {
        if adjacent {
            self.a
        } else {
            &self.b
        }
    }

    fn atoms(&self, t: [usize; 3]) -> Atoms<S> {
        let mut out: [S; 8] = std::array::from_fn(|_| S::zero());
        for x in 0..self.k() {
            for (s, slot) in out.iter_mut().enumerate() {
                let mut p = self.w[x].clone();
                for (bit, &z) in t.iter().enumerate() {
                    p = p * self.adj(s >> (2 - bit) & 1 == 1)[x][z].clone();
                }
                *slot = slot.clone() + p;
            }
        }
        Atoms(out)
    }

    /// `scale * sum over (a,b,c) of P[(a,b,c) induces pattern] * g(atoms)`.
    fn over_triples(&self, pattern: Pattern, scale: i64, g: impl Fn(&Atoms<S>) -> S) -> S {
        let k = self.k();
        let mut total = S::zero();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let bc = match pattern {
                        Pattern::Independent => &self.b[b][c],
                        Pattern::EdgeBc => &self.a[b][c],
                    };
                    let weight = self.w[a].clone()
                        * self.w[b].clone()
                        * self.w[c].clone()
                        * self.b[a][b].clone()
                        * self.b[a][c].clone()
                        * bc.clone();
                    if weight.is_zero() {
                        continue;
                    }
                    total = total + weight * g(&self.atoms([a, b, c]));
                }
            }
        }
        S::from_int(scale) * total
    }

    fn degrees(&self) -> Vec<S> {
        (0..self.k())
            .map(|i| (0..self.k()).fold(S::zero(), |acc, j| acc + self.a[i][j].clone() * self.w[j].clone()))
            .collect()
    }

    fn expression13(&self) -> S {
        let k = self.k();
        let two = S::from_int(2);
        let mut total = S::zero();
        for a in 0..k {
            let mut inner = S::zero();
            for x in 0..k {
                for y in 0..k {
                    let sign = two.clone() * self.a[x][y].clone() - S::one();
                    let agree =
                        self.a[x][a].clone() * self.a[y][a].clone() - self.b[x][a].clone() * self.b[y][a].clone();
                    inner = inner + self.w[x].clone() * self.w[y].clone() * sign * agree;
                }
            }
            total = total + self.w[a].clone() * sq(inner);
        }
        S::from_int(15) * total
    }

    fn expression14(&self) -> S {
        let d = self.degrees();
        let mut total = S::zero();
        for a in 0..self.k() {
            for b in 0..self.k() {
                total = total
                    + self.w[a].clone() * self.w[b].clone() * self.a[a][b].clone() * sq(d[a].clone() - d[b].clone());
            }
        }
        S::from_int(15) * total
    }

    fn expression15(&self) -> S {
        let two = S::from_int(2);
        let total = self.degrees().into_iter().zip(self.w).fold(S::zero(), |acc, (d, w)| {
            let inner = two.clone() * sq(d.clone()) + two.clone() * sq(S::one() - d) - S::one();
            acc + w.clone() * sq(inner)
        });
        S::from_int(15) * total
    }

    fn expression16(&self, reading: Reading) -> S {
        let k = self.k();
        let pair = self.adj(reading == Reading::Printed);
        let mut total = S::zero();
        for a in 0..k {
            for b in 0..k {
                let weight = self.w[a].clone() * self.w[b].clone() * pair[a][b].clone();
                if weight.is_zero() {
                    continue;
                }
                let (mut common, mut split) = (S::zero(), S::zero());
                for x in 0..k {
                    let wx = self.w[x].clone();
                    common = common + wx.clone() * self.a[x][a].clone() * self.a[x][b].clone();
                    split = split
                        + wx * (self.a[x][a].clone() * self.b[x][b].clone()
                            + self.b[x][a].clone() * self.a[x][b].clone());
                }
                total = total + weight * common * sq(S::from_int(2) * split - S::one());
            }
        }
        S::from_int(30) * total
    }
}
