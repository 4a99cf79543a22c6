//! Step graphons and the densities computed over them.
//!
//! A step graphon on `k` parts has part masses `weights` (summing to 1) and a
//! symmetric `k x k` matrix `values`. Every density here is a finite sum over
//! part assignments of the pattern's vertices, so it is a polynomial in the
//! graphon's entries and can be evaluated exactly over the rationals.

mod eval;
pub mod suite;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::scalar::{parse_scalar, Scalar};

pub use eval::{
    expansion_value, expansion_value_of, hom_density, m, m_with, symmetrized_induced, t_hom, t_hom_with, t_induced,
    t_signed, EliminationPlan, Method,
};

/// Weight sums of floating-point graphons may be off by this much.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphonError {
    #[error("a step graphon needs at least one part")]
    NoParts,
    #[error("expected {expected} {what}, found {found}")]
    Shape { what: &'static str, expected: usize, found: usize },
    #[error("part weight {index} is negative")]
    NegativeWeight { index: usize },
    #[error("part weights sum to {sum}, not 1")]
    WeightSum { sum: f64 },
    #[error("entry ({i}, {j}) differs from ({j}, {i})")]
    Asymmetric { i: usize, j: usize },
    #[error("entry ({i}, {j}) = {value} lies outside [{lo}, 1]")]
    OutOfRange { i: usize, j: usize, value: f64, lo: f64 },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Shared storage of [`StepGraphon`] and [`SignedStepGraphon`].
#[derive(Clone, PartialEq)]
struct Kernel<S> {
    weights: Vec<S>,
    values: Vec<Vec<S>>,
}

impl<S: Scalar> Kernel<S> {
    fn checked(weights: Vec<S>, values: Vec<Vec<S>>, lo: S) -> Result<Self, GraphonError> {
        let k = weights.len();
        if k == 0 {
            return Err(GraphonError::NoParts);
        }
        if values.len() != k {
            return Err(GraphonError::Shape { what: "matrix rows", expected: k, found: values.len() });
        }
        for row in &values {
            if row.len() != k {
                return Err(GraphonError::Shape { what: "matrix columns", expected: k, found: row.len() });
            }
        }
        for (index, w) in weights.iter().enumerate() {
            if *w < S::zero() {
                return Err(GraphonError::NegativeWeight { index });
            }
        }
        let sum = weights.iter().fold(S::zero(), |a, w| a + w.clone());
        let off = (sum.clone() - S::one()).abs();
        if (S::EXACT && !off.is_zero()) || off.to_f64() > WEIGHT_TOLERANCE {
            return Err(GraphonError::WeightSum { sum: sum.to_f64() });
        }
        for i in 0..k {
            for j in 0..k {
                let v = &values[i][j];
                if *v != values[j][i] {
                    return Err(GraphonError::Asymmetric { i, j });
                }
                if *v < lo || *v > S::one() {
                    return Err(GraphonError::OutOfRange { i, j, value: v.to_f64(), lo: lo.to_f64() });
                }
            }
        }
        Ok(Kernel { weights, values })
    }

    fn map(&self, f: impl Fn(&S) -> S) -> Kernel<S> {
        Kernel {
            weights: self.weights.clone(),
            values: self.values.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    fn to_text(&self) -> String {
        let line = |xs: &[S]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = format!("{}\n{}\n", self.weights.len(), line(&self.weights));
        for row in &self.values {
            s.push_str(&line(row));
            s.push('\n');
        }
        s
    }

    fn parse(text: &str) -> Result<(Vec<S>, Vec<Vec<S>>), GraphonError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut row = |expected: Option<usize>| -> Result<(usize, Vec<S>), GraphonError> {
            let (line, text) =
                lines.next().ok_or(GraphonError::Parse { line: 0, reason: "unexpected end of input".into() })?;
            let items: Vec<S> = text
                .split_whitespace()
                .map(|t| parse_scalar(t).ok_or(GraphonError::Parse { line, reason: format!("bad number `{t}`") }))
                .collect::<Result<_, _>>()?;
            if let Some(n) = expected {
                if items.len() != n {
                    return Err(GraphonError::Parse {
                        line,
                        reason: format!("expected {n} entries, found {}", items.len()),
                    });
                }
            }
            Ok((line, items))
        };
        let (line, head) = row(Some(1))?;
        let k = head[0].to_f64();
        if k < 1.0 || k.fract() != 0.0 || k > 64.0 {
            return Err(GraphonError::Parse { line, reason: "part count must be a positive integer".into() });
        }
        let k = k as usize;
        let (_, weights) = row(Some(k))?;
        let values = (0..k).map(|_| row(Some(k)).map(|(_, r)| r)).collect::<Result<_, _>>()?;
        Ok((weights, values))
    }
}

/// Graphon `W: [0,1]^2 -> [0,1]` that is constant on the products of `k` parts.
#[derive(Clone, PartialEq)]
pub struct StepGraphon<S = f64> {
    kernel: Kernel<S>,
}

/// As [`StepGraphon`] with entries in `[-1, 1]`; typically `U = 2W - 1`.
#[derive(Clone, PartialEq)]
pub struct SignedStepGraphon<S = f64> {
    kernel: Kernel<S>,
}

impl<S: Scalar> StepGraphon<S> {
    pub fn new(weights: Vec<S>, values: Vec<Vec<S>>) -> Result<Self, GraphonError> {
        Kernel::checked(weights, values, S::zero()).map(|kernel| StepGraphon { kernel })
    }

    /// Equal part masses `1/k`.
    pub fn uniform(values: Vec<Vec<S>>) -> Result<Self, GraphonError> {
        let k = values.len().max(1) as i64;
        Self::new(vec![S::from_ratio(1, k); values.len()], values)
    }

    pub fn constant(p: S) -> Result<Self, GraphonError> {
        Self::new(vec![S::one()], vec![vec![p]])
    }

    /// `W = 1/2`, the random colouring.
    pub fn half() -> Self {
        Self::constant(S::from_ratio(1, 2)).expect("1/2 is a valid entry")
    }

    /// Block graphon `W_G`: one part of mass `1/n` per vertex, 0/1 adjacency
    /// entries (0 on the diagonal).
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let values =
            (0..n).map(|u| (0..n).map(|v| if g.has_edge(u, v) { S::one() } else { S::zero() }).collect()).collect();
        Self::uniform(values).expect("adjacency matrices are valid graphons")
    }

    pub fn k(&self) -> usize {
        self.kernel.weights.len()
    }

    pub fn weights(&self) -> &[S] {
        &self.kernel.weights
    }

    pub fn values(&self) -> &[Vec<S>] {
        &self.kernel.values
    }

    pub fn value(&self, i: usize, j: usize) -> &S {
        &self.kernel.values[i][j]
    }

    /// `1 - W`, the other colour class.
    pub fn one_minus(&self) -> Self {
        StepGraphon { kernel: self.kernel.map(|v| S::one() - v.clone()) }
    }

    /// `U = 2W - 1`.
    pub fn to_signed(&self) -> SignedStepGraphon<S> {
        SignedStepGraphon { kernel: self.kernel.map(|v| S::from_int(2) * v.clone() - S::one()) }
    }

    pub fn to_text(&self) -> String {
        self.kernel.to_text()
    }

    /// Converts every entry with `f`; used to move between backends.
    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StepGraphon<T> {
        StepGraphon {
            kernel: Kernel {
                weights: self.kernel.weights.iter().map(&f).collect(),
                values: self.kernel.values.iter().map(|r| r.iter().map(&f).collect()).collect(),
            },
        }
    }

    pub fn to_f64(&self) -> StepGraphon<f64> {
        self.convert(|x| x.to_f64())
    }
}

impl<S: Scalar> SignedStepGraphon<S> {
    pub fn new(weights: Vec<S>, values: Vec<Vec<S>>) -> Result<Self, GraphonError> {
        Kernel::checked(weights, values, -S::one()).map(|kernel| SignedStepGraphon { kernel })
    }

    pub fn constant(u: S) -> Result<Self, GraphonError> {
        Self::new(vec![S::one()], vec![vec![u]])
    }

    pub fn k(&self) -> usize {
        self.kernel.weights.len()
    }

    pub fn weights(&self) -> &[S] {
        &self.kernel.weights
    }

    pub fn values(&self) -> &[Vec<S>] {
        &self.kernel.values
    }

    pub fn to_text(&self) -> String {
        self.kernel.to_text()
    }
}

impl<S: Scalar> FromStr for StepGraphon<S> {
    type Err = GraphonError;

    /// Line 1: `k`; line 2: the `k` weights; then `k` rows of the matrix.
    /// Entries may be decimals or fractions `p/q`; `#` starts a comment.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (w, v) = Kernel::parse(s)?;
        Self::new(w, v)
    }
}

impl<S: Scalar> FromStr for SignedStepGraphon<S> {
    type Err = GraphonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (w, v) = Kernel::parse(s)?;
        Self::new(w, v)
    }
}

impl<S: Scalar> fmt::Debug for StepGraphon<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepGraphon(w={:?}, W={:?})", self.kernel.weights, self.kernel.values)
    }
}

impl<S: Scalar> fmt::Debug for SignedStepGraphon<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedStepGraphon(w={:?}, U={:?})", self.kernel.weights, self.kernel.values)
    }
}
