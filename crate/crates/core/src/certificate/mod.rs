//! Exact verification of a sum-of-squares certificate proving
//! `m_{H3} >= 2^-5` and `m_{H4} >= 2^-6`.
//!
//! The certificate expresses `v_A = 480 (m_{H3} - 2^-5)` and
//! `v_B = 960 (m_{H4} - 2^-6)`, as vectors over the 18 colour classes of
//! `E(K5)`, as nonnegative combinations of 16 expressions that are
//! nonnegative on every graphon. The linear algebra is checked exactly; the
//! identification of each matrix column with its expression is checked
//! numerically (and exactly, on rational graphons) by evaluating both sides.

mod classes;
mod expressions;
pub mod linalg;

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

pub use classes::{basis_densities, classify, enumerate_partition_classes, PartitionClass};
pub use expressions::{evaluate_expression, expression_label, Reading, EXPRESSION_COUNT};

use crate::density::{m, StepGraphon};
use crate::graph::catalog::named;
use crate::scalar::parse_rational;
use crate::Scalar;

pub const CLASS_COUNT: usize = 18;
/// Column of `M` left out of `M_A` (0-based).
pub const DROPPED_FOR_A: usize = 15;
/// Column of `M` left out of `M_B` (0-based).
pub const DROPPED_FOR_B: usize = 14;
pub const CROSS_VALIDATION_TOLERANCE: f64 = 1e-8;

/// The checked-in transcription.
pub const APPENDIX_CERT: &str = include_str!("../../data/appendix.cert");

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("section [{section}]: {reason}")]
    Shape { section: String, reason: String },
    #[error("row {row}: entries sum to {actual}, checksum says {expected}")]
    Checksum { row: usize, actual: Box<BigRational>, expected: Box<BigRational> },
    #[error("no expression ({0}); expressions are numbered 1..=16")]
    UnknownExpression(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub m: Vec<Vec<BigRational>>,
    pub v_a: Vec<BigRational>,
    pub v_b: Vec<BigRational>,
    pub x_a: Vec<BigRational>,
    pub x_b: Vec<BigRational>,
    /// Written denominators of the `x` sections, when shared by every entry.
    pub x_a_denominator: Option<BigInt>,
    pub x_b_denominator: Option<BigInt>,
}

impl Certificate {
    pub fn appendix() -> Certificate {
        APPENDIX_CERT.parse().expect("bundled certificate parses")
    }

    pub fn m_a(&self) -> Vec<Vec<BigRational>> {
        linalg::drop_column(&self.m, DROPPED_FOR_A)
    }

    pub fn m_b(&self) -> Vec<Vec<BigRational>> {
        linalg::drop_column(&self.m, DROPPED_FOR_B)
    }

    /// Column `idx` (1-based) of `M`.
    pub fn column(&self, idx: usize) -> Vec<BigRational> {
        self.m.iter().map(|row| row[idx - 1].clone()).collect()
    }

    /// Expression numbers (1-based) matching the entries of `x_a`.
    pub fn columns_a() -> Vec<usize> {
        (1..=EXPRESSION_COUNT).filter(|&c| c != DROPPED_FOR_A + 1).collect()
    }

    pub fn columns_b() -> Vec<usize> {
        (1..=EXPRESSION_COUNT).filter(|&c| c != DROPPED_FOR_B + 1).collect()
    }

    pub fn to_text(&self) -> String {
        let line = |v: &[BigRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::from("[M]\n");
        for row in &self.m {
            out += &line(row);
            out.push('\n');
        }
        for (name, v) in [("vA", &self.v_a), ("vB", &self.v_b), ("xA", &self.x_a), ("xB", &self.x_b)] {
            out += &format!("\n[{name}]\n{}\n", line(v));
        }
        let sums: Vec<BigRational> = self.m.iter().map(|r| r.iter().fold(BigRational::zero(), |a, b| a + b)).collect();
        out += &format!("\n[Msum]\n{}\n", line(&sums));
        out
    }
}

/// Parsed row: each entry with its source token.
type Row = Vec<(String, BigRational)>;

impl FromStr for Certificate {
    type Err = CertificateError;

    /// Sections `[M]`, `[vA]`, `[vB]`, `[xA]`, `[xB]` and an optional
    /// `[Msum]` checksum; entries are whitespace separated fractions, `#`
    /// starts a comment.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut sections: Vec<(String, Vec<Row>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                sections.push((name.trim().to_string(), Vec::new()));
                continue;
            }
            let Some((_, rows)) = sections.last_mut() else {
                return Err(CertificateError::Parse { line: i + 1, reason: "data before the first section".into() });
            };
            let row = line
                .split_whitespace()
                .map(|tok| {
                    parse_rational(tok).map(|v| (tok.to_string(), v)).ok_or_else(|| CertificateError::Parse {
                        line: i + 1,
                        reason: format!("not a fraction: {tok}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let take = |name: &str| -> Result<Vec<Row>, CertificateError> {
            sections
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, rows)| rows.clone())
                .ok_or_else(|| CertificateError::Shape { section: name.into(), reason: "missing".into() })
        };
        let shape = |section: &str, reason: String| CertificateError::Shape { section: section.into(), reason };
        let values = |rows: Vec<Vec<(String, BigRational)>>| -> Vec<BigRational> {
            rows.into_iter().flatten().map(|(_, v)| v).collect()
        };

        let m: Vec<Vec<BigRational>> =
            take("M")?.into_iter().map(|r| r.into_iter().map(|(_, v)| v).collect()).collect();
        if m.len() != CLASS_COUNT || m.iter().any(|r| r.len() != EXPRESSION_COUNT) {
            return Err(shape("M", format!("expected {CLASS_COUNT} rows of {EXPRESSION_COUNT} entries")));
        }
        let vector = |name: &str, len: usize| -> Result<(Vec<BigRational>, Option<BigInt>), CertificateError> {
            let rows = take(name)?;
            let denominators: Vec<Option<BigInt>> = rows
                .iter()
                .flatten()
                .map(|(tok, _)| tok.split_once('/').and_then(|(_, d)| d.trim().parse().ok()))
                .collect();
            let shared = match denominators.first() {
                Some(Some(d)) if denominators.iter().all(|x| x.as_ref() == Some(d)) => Some(d.clone()),
                _ => None,
            };
            let v = values(rows);
            if v.len() != len {
                return Err(shape(name, format!("expected {len} entries, found {}", v.len())));
            }
            Ok((v, shared))
        };
        let (v_a, _) = vector("vA", CLASS_COUNT)?;
        let (v_b, _) = vector("vB", CLASS_COUNT)?;
        let (x_a, x_a_denominator) = vector("xA", EXPRESSION_COUNT - 1)?;
        let (x_b, x_b_denominator) = vector("xB", EXPRESSION_COUNT - 1)?;
        if sections.iter().any(|(n, _)| n == "Msum") {
            let (sums, _) = vector("Msum", CLASS_COUNT)?;
            for (row, (r, expected)) in m.iter().zip(sums).enumerate() {
                let actual = r.iter().fold(BigRational::zero(), |a, b| a + b);
                if actual != expected {
                    return Err(CertificateError::Checksum {
                        row: row + 1,
                        actual: actual.into(),
                        expected: expected.into(),
                    });
                }
            }
        }
        Ok(Certificate { m, v_a, v_b, x_a, x_b, x_a_denominator, x_b_denominator })
    }
}

/// One named sub-check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}\t{}\t{}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

/// Rank, exact solution, nonnegativity and uniqueness for both systems.
pub fn verify_linear_algebra(cert: &Certificate) -> Report {
    let mut report = Report::default();
    for (label, matrix, v, x) in [("A", cert.m_a(), &cert.v_a, &cert.x_a), ("B", cert.m_b(), &cert.v_b, &cert.x_b)] {
        let rank = linalg::rank(&matrix);
        let columns = matrix[0].len();
        report.push(Check::new(format!("rank_{label}"), rank == columns, format!("rank {rank} of {columns} columns")));

        let product = linalg::mat_vec(&matrix, x);
        let bad: Vec<String> = product
            .iter()
            .zip(v)
            .enumerate()
            .filter(|(_, (got, want))| got != want)
            .map(|(i, (got, want))| format!("row {}: {got} != {want}", i + 1))
            .collect();
        report.push(Check::new(
            format!("solves_{label}"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("M_{label} x_{label} = v_{label} in all {} rows", product.len())
            } else {
                bad.join("; ")
            },
        ));

        let negative: Vec<String> =
            x.iter().enumerate().filter(|(_, e)| e.is_negative()).map(|(i, e)| format!("x[{}] = {e}", i + 1)).collect();
        let min = x.iter().min().expect("nonempty");
        report.push(Check::new(
            format!("nonnegative_{label}"),
            negative.is_empty(),
            if negative.is_empty() { format!("min entry {min}") } else { negative.join("; ") },
        ));

        let unique = linalg::solve_unique(&matrix, v);
        report.push(Check::new(
            format!("unique_{label}"),
            unique.as_ref() == Some(x),
            match &unique {
                Some(s) if s == x => "the only solution".to_string(),
                Some(_) => "system has a different unique solution".to_string(),
                None => "no unique solution".to_string(),
            },
        ));
    }
    report
}

fn dot<S: Scalar>(coefficients: &[BigRational], q: &[S]) -> S {
    coefficients.iter().zip(q).fold(S::zero(), |acc, (c, x)| acc + S::from_rational(c) * x.clone())
}

/// `<column idx of M, class densities of w>`.
pub fn column_value<S: Scalar>(cert: &Certificate, idx: usize, w: &StepGraphon<S>) -> S {
    dot(&cert.column(idx), &basis_densities(w))
}

/// Per-column agreement between the direct expression and its column in the
/// class basis, worst case over `graphons`.
pub fn cross_validate_columns(
    cert: &Certificate,
    graphons: &[StepGraphon<f64>],
    columns: &[usize],
    reading: Reading,
) -> Result<Report, CertificateError> {
    let bases: Vec<Vec<f64>> = graphons.iter().map(basis_densities).collect();
    let mut report = Report::default();
    for &idx in columns {
        if !(1..=EXPRESSION_COUNT).contains(&idx) {
            return Err(CertificateError::UnknownExpression(idx));
        }
        let column = cert.column(idx);
        let mut worst = 0.0f64;
        for (w, q) in graphons.iter().zip(&bases) {
            let direct = evaluate_expression(idx, w, reading)?;
            worst = worst.max((direct - dot(&column, q)).abs());
        }
        report.push(Check::new(
            format!("column_{idx}"),
            worst <= CROSS_VALIDATION_TOLERANCE,
            format!(
                "{}: max |direct - basis| = {worst:.3e} over {} graphons",
                expression_label(idx, reading),
                graphons.len()
            ),
        ));
    }
    Ok(report)
}

/// `<v_A, q> = 480 (m_{H3} - 2^-5)` and `<v_B, q> = 960 (m_{H4} - 2^-6)`.
pub fn cross_validate_targets(cert: &Certificate, graphons: &[StepGraphon<f64>]) -> Report {
    let mut report = Report::default();
    for (label, v, name, scale, floor) in [("A", &cert.v_a, "h3", 480.0, -5), ("B", &cert.v_b, "h4", 960.0, -6)] {
        let h = named(name).expect("catalog entry");
        let worst = graphons
            .iter()
            .map(|w| (dot(v, &basis_densities(w)) - scale * (m(&h, w) - 2f64.powi(floor))).abs())
            .fold(0.0, f64::max);
        report.push(Check::new(
            format!("target_{label}"),
            worst <= CROSS_VALIDATION_TOLERANCE,
            format!("v_{label} = {scale}(m_{name} - 2^{floor}): max deviation {worst:.3e}"),
        ));
    }
    report
}

/// The full argument: exact linear algebra, column and target
/// identification, pointwise nonnegativity of the square expressions, and
/// the resulting bounds on `suite`.
pub fn conclude_commonality(cert: &Certificate, suite: &[StepGraphon<f64>]) -> Report {
    let mut report = verify_linear_algebra(cert);
    let all: Vec<usize> = (1..=EXPRESSION_COUNT).collect();
    report.extend(cross_validate_columns(cert, suite, &all, Reading::Recovered).expect("valid columns"));
    report.extend(cross_validate_targets(cert, suite));

    let mut worst_square = 0.0f64;
    let mut worst_common = 0.0f64;
    for w in suite {
        for idx in 4..=EXPRESSION_COUNT {
            worst_square = worst_square.min(evaluate_expression(idx, w, Reading::Recovered).expect("valid index"));
        }
        for idx in 1..=3 {
            worst_common = worst_common.min(evaluate_expression(idx, w, Reading::Recovered).expect("valid index"));
        }
    }
    report.push(Check::new(
        "squares_nonnegative",
        worst_square >= -1e-12,
        format!("min over (4)..(16) = {worst_square:.3e}"),
    ));
    report.push(Check::new(
        "commonality_terms_nonnegative",
        worst_common >= -1e-9,
        format!("min over (1)..(3) = {worst_common:.3e}"),
    ));

    let upstream = report.passed();
    for (label, name, floor) in [("A", "h3", -5), ("B", "h4", -6)] {
        let h = named(name).expect("catalog entry");
        let min = suite.iter().map(|w| m(&h, w)).fold(f64::INFINITY, f64::min);
        let bound = 2f64.powi(floor);
        report.push(Check::new(
            format!("bound_{name}"),
            min >= bound - 1e-9,
            format!("min m_{name} = {min:.12} vs 2^{floor} over {} graphons", suite.len()),
        ));
        report.push(Check::new(
            format!("chain_{label}"),
            upstream,
            format!(
                "v_{label} = sum x_i col_i with x_i >= 0 and every column expression >= 0, so m_{name} >= 2^{floor}"
            ),
        ));
    }
    report
}
