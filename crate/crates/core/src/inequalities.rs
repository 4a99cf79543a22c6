//! Numerical checks of the density inequalities behind the commonality
//! results: Goodman's identity, the Hölder transfer from `t` to `m`, tree
//! decomposition bounds, the diamond lemma, the beachball rational function
//! and the apex bounds.
//!
//! Every check returns an [`InequalityReport`] oriented so that the claim is
//! `lhs >= rhs` (or `lhs == rhs` for identities). Chains of inequalities are
//! returned as one report per link.

use std::fmt;

use num::{BigInt, BigRational, One};
use rayon::prelude::*;
use thiserror::Error;

use crate::decomposition::{self, find_triangle_decomposition, is_j_decomposition, TreeDecomposition};
use crate::density::{m, t_hom, t_signed, SignedStepGraphon, StepGraphon};
use crate::graph::catalog::{bipartite_apex_bases, named};
use crate::graph::{is_isomorphic, pendant_attach};
use crate::{Graph, GraphError, Scalar};

pub const INEQUALITY_TOLERANCE: f64 = 1e-9;
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Upper end `(3 - sqrt 5)/4` of the admissible diamond-lemma constants.
pub fn diamond_c_max() -> f64 {
    (3.0 - 5f64.sqrt()) / 4.0
}

/// Exact-mode stand-in for [`diamond_c_max`]: rationals strictly below it.
pub fn diamond_c_max_exact() -> BigRational {
    BigRational::new(19.into(), 100.into())
}

#[derive(Debug, Error)]
pub enum InequalityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomposition(#[from] decomposition::DecompositionError),
    #[error("{0}")]
    Precondition(String),
    #[error("pole: {0}")]
    Pole(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Identity,
    Inequality,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
    /// A hypothesis of the statement failed; nothing is claimed.
    NotApplicable(String),
}

#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub kind: Kind,
    pub outcome: Outcome,
    /// Named auxiliary quantities (hypothesis slacks, factors).
    pub details: Vec<(String, f64)>,
    pub witness: Option<StepGraphon<f64>>,
}

impl InequalityReport {
    fn judged<S: Scalar>(name: impl Into<String>, kind: Kind, lhs: S, rhs: S) -> Self {
        let slack = lhs.clone() - rhs.clone();
        let ok = match (kind, S::EXACT) {
            (Kind::Identity, true) => slack.is_zero(),
            (Kind::Inequality, true) => slack >= S::zero(),
            (Kind::Identity, false) => slack.to_f64().abs() <= IDENTITY_TOLERANCE,
            (Kind::Inequality, false) => slack.to_f64() >= -INEQUALITY_TOLERANCE,
        };
        InequalityReport {
            name: name.into(),
            lhs: lhs.to_f64(),
            rhs: rhs.to_f64(),
            slack: slack.to_f64(),
            kind,
            outcome: if ok { Outcome::Holds } else { Outcome::Violated },
            details: Vec::new(),
            witness: None,
        }
    }

    fn not_applicable(name: impl Into<String>, reason: impl Into<String>) -> Self {
        InequalityReport {
            name: name.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            kind: Kind::Inequality,
            outcome: Outcome::NotApplicable(reason.into()),
            details: Vec::new(),
            witness: None,
        }
    }

    fn with_detail(mut self, key: &str, value: f64) -> Self {
        self.details.push((key.to_string(), value));
        self
    }

    fn with_witness<S: Scalar>(mut self, w: &StepGraphon<S>) -> Self {
        self.witness = Some(w.to_f64());
        self
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    /// True unless the check ran and failed.
    pub fn not_violated(&self) -> bool {
        self.outcome != Outcome::Violated
    }

    /// Re-judges the slack at a caller-chosen tolerance.
    pub fn holds_within(&self, tolerance: f64) -> bool {
        match self.outcome {
            Outcome::NotApplicable(_) => false,
            _ => match self.kind {
                Kind::Identity => self.slack.abs() <= tolerance,
                Kind::Inequality => self.slack >= -tolerance,
            },
        }
    }

    /// `name holds slack lhs rhs`, tab separated.
    pub fn to_tsv(&self) -> String {
        let holds = match &self.outcome {
            Outcome::Holds => "true",
            Outcome::Violated => "false",
            Outcome::NotApplicable(_) => "n/a",
        };
        format!("{}\t{}\t{:.6e}\t{:.12}\t{:.12}", self.name, holds, self.slack, self.lhs, self.rhs)
    }
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())?;
        if let Outcome::NotApplicable(reason) = &self.outcome {
            write!(f, "\t# {reason}")?;
        }
        Ok(())
    }
}

fn g(name: &str) -> Graph {
    named(name).expect("catalog entry")
}

fn two_pow<S: Scalar>(exp: i64) -> S {
    S::pow2(exp as i32)
}

/// `m_{K3} = (3/2) m_{K_{1,2}} - 1/2`.
pub fn check_goodman<S: Scalar>(w: &StepGraphon<S>) -> InequalityReport {
    let lhs = m(&g("k3"), w);
    let rhs = S::from_ratio(3, 2) * m(&g("cherry"), w) - S::from_ratio(1, 2);
    InequalityReport::judged("goodman", Kind::Identity, lhs, rhs).with_witness(w)
}

/// Transfers `t_h >= t_j^l / t_f^(k-1)` (checked on `w` and `1 - w`) to
/// `m_h >= 2^(k-l) m_j^l / m_f^(k-1)`.
pub fn check_holder(
    h: &Graph,
    j: &Graph,
    f: &Graph,
    k: u32,
    l: u32,
    w: &StepGraphon<f64>,
) -> Result<InequalityReport, InequalityError> {
    if k < 1 || l < k {
        return Err(InequalityError::Precondition(format!("need l >= k >= 1, got k={k}, l={l}")));
    }
    let name = format!("holder[{h}|{j}|{f}|k={k}|l={l}]");
    let (k, l) = (k as i32, l as i32);
    let complement = w.one_minus();
    let mut hyp = Vec::new();
    for (label, v) in [("w", w), ("1-w", &complement)] {
        let tf = t_hom(f, v);
        if k > 1 && tf == 0.0 {
            return Ok(InequalityReport::not_applicable(name, format!("t_f({label}) = 0")).with_witness(w));
        }
        hyp.push((label, t_hom(h, v) - t_hom(j, v).powi(l) / tf.powi(k - 1)));
    }
    let mf = m(f, w);
    let rhs = 2f64.powi(k - l) * m(j, w).powi(l) / mf.powi(k - 1);
    let mut report = if hyp.iter().any(|(_, s)| *s < -INEQUALITY_TOLERANCE) {
        InequalityReport::not_applicable(name, "hypothesis fails")
    } else {
        InequalityReport::judged(name, Kind::Inequality, m(h, w), rhs)
    };
    for (label, s) in hyp {
        report = report.with_detail(&format!("hypothesis_slack_{label}"), s);
    }
    Ok(report.with_witness(w))
}

/// `t_h >= t_j^|bags| / prod over tree edges of t_{h[X ∩ Y]}` for a
/// `j`-decomposition `d` of `h`.
pub fn check_jtree_bound(
    h: &Graph,
    d: &TreeDecomposition,
    j: &Graph,
    w: &StepGraphon<f64>,
) -> Result<InequalityReport, InequalityError> {
    if !is_j_decomposition(h, d, j)? {
        return Err(InequalityError::Precondition(format!("not a {j}-decomposition of {h}")));
    }
    let name = format!("jtree[{h}|{j}]");
    if t_hom(&g("k2"), w) == 0.0 {
        return Ok(InequalityReport::not_applicable(name, "zero graphon").with_witness(w));
    }
    let mut denominator = 1.0;
    for &(a, b) in d.tree_edges() {
        let shared: Vec<usize> = d.bags()[a].iter().copied().filter(|v| d.bags()[b].contains(v)).collect();
        denominator *= t_hom(&h.induced_on(&shared)?, w);
    }
    if denominator == 0.0 {
        return Ok(InequalityReport::not_applicable(name, "separator density vanishes").with_witness(w));
    }
    let rhs = t_hom(j, w).powi(d.len() as i32) / denominator;
    Ok(InequalityReport::judged(name, Kind::Inequality, t_hom(h, w), rhs).with_witness(w))
}

/// The triangle-tree chain: `t_h >= t_K3^phi / t_K2^kappa`, then
/// `m_h >= 2^(kappa+1-phi) m_K3^phi >= 2^(1-e(h))`.
pub fn check_triangle_tree_chain(h: &Graph, w: &StepGraphon<f64>) -> Result<Vec<InequalityReport>, InequalityError> {
    let report = find_triangle_decomposition(h);
    if !report.is_triangle_tree() {
        return Err(InequalityError::Precondition(format!("{h} is not a triangle-tree")));
    }
    let (p, k) = (report.phi as i32, report.kappa as i32);
    let (k3, k2) = (g("k3"), g("k2"));
    let t2 = t_hom(&k2, w);
    let density = if t2 == 0.0 {
        InequalityReport::not_applicable("tritree_t", "zero graphon")
    } else {
        InequalityReport::judged("tritree_t", Kind::Inequality, t_hom(h, w), t_hom(&k3, w).powi(p) / t2.powi(k))
    };
    let middle = 2f64.powi(k + 1 - p) * m(&k3, w).powi(p);
    Ok(vec![
        density.with_witness(w),
        InequalityReport::judged("tritree_m", Kind::Inequality, m(h, w), middle).with_witness(w),
        InequalityReport::judged("tritree_common", Kind::Inequality, middle, two_pow(1 - h.edge_count() as i64))
            .with_witness(w),
    ])
}

/// Pendant tree `t` attached at `u` to the triangle-tree `h` at `v`:
/// `t_{T*H} >= t_K3^phi / t_K2^(kappa - e(T))`, then
/// `m_{T*H} >= 2^(kappa+1-e(T)-phi) m_K3^phi >= 2^(1-e(T*H))`.
/// All three links are not-applicable when `e(t) > kappa(h)`.
pub fn check_addtree_bound(
    t: &Graph,
    u: usize,
    h: &Graph,
    v: usize,
    w: &StepGraphon<f64>,
) -> Result<Vec<InequalityReport>, InequalityError> {
    if !t.is_tree() {
        return Err(InequalityError::Graph(GraphError::NotATree));
    }
    let report = find_triangle_decomposition(h);
    if !report.is_triangle_tree() {
        return Err(InequalityError::Precondition(format!("{h} is not a triangle-tree")));
    }
    let names = ["addtree_t", "addtree_m", "addtree_common"];
    let (p, k, et) = (report.phi as i32, report.kappa as i32, t.edge_count() as i32);
    if et > k {
        let reason = format!("e(T) = {et} exceeds kappa(H) = {k}");
        return Ok(names
            .iter()
            .map(|n| InequalityReport::not_applicable(*n, reason.clone()).with_witness(w))
            .collect());
    }
    let glued = pendant_attach(t, u, h, v)?;
    let (k3, k2) = (g("k3"), g("k2"));
    let t2 = t_hom(&k2, w);
    let density = if t2 == 0.0 {
        InequalityReport::not_applicable(names[0], "zero graphon")
    } else {
        InequalityReport::judged(names[0], Kind::Inequality, t_hom(&glued, w), t_hom(&k3, w).powi(p) / t2.powi(k - et))
    };
    let middle = 2f64.powi(k + 1 - et - p) * m(&k3, w).powi(p);
    Ok(vec![
        density.with_witness(w),
        InequalityReport::judged(names[1], Kind::Inequality, m(&glued, w), middle).with_witness(w),
        InequalityReport::judged(names[2], Kind::Inequality, middle, two_pow(1 - glued.edge_count() as i64))
            .with_witness(w),
    ])
}

/// `m_D - 1/16 >= c (m_C4 - 1/8)`.
///
/// In floating point `c` may be anything in `[0, (3 - sqrt 5)/4]`; exact
/// arithmetic cannot represent the irrational endpoint and accepts
/// `0 <= c < 19/100` instead.
pub fn check_diamond_lemma<S: Scalar>(w: &StepGraphon<S>, c: &S) -> Result<InequalityReport, InequalityError> {
    let in_range = *c >= S::zero()
        && if S::EXACT { *c < S::from_rational(&diamond_c_max_exact()) } else { c.to_f64() <= diamond_c_max() };
    if !in_range {
        return Err(InequalityError::Precondition(format!("diamond constant {c} outside the admissible range")));
    }
    let lhs = m(&g("diamond"), w) - S::from_ratio(1, 16);
    let rhs = c.clone() * (m(&g("c4"), w) - S::from_ratio(1, 8));
    Ok(InequalityReport::judged(format!("diamond[c={:.6}]", c.to_f64()), Kind::Inequality, lhs, rhs).with_witness(w))
}

/// Cauchy–Schwarz bound `sqrt(t_{K_{1,2}}(u) t_{C4}(u)) >= |t_{K3+}(u)|`;
/// both radicand factors are reported as details.
pub fn check_k3plus_cs(u: &SignedStepGraphon<f64>) -> InequalityReport {
    let cherry = t_signed(&g("cherry"), u);
    let c4 = t_signed(&g("c4"), u);
    let lhs = (cherry.max(0.0) * c4.max(0.0)).sqrt();
    let rhs = t_signed(&g("k3plus"), u).abs();
    let mut report = InequalityReport::judged("k3plus_cs", Kind::Inequality, lhs, rhs)
        .with_detail("t_cherry", cherry)
        .with_detail("t_c4", c4);
    if cherry < -INEQUALITY_TOLERANCE || c4 < -INEQUALITY_TOLERANCE {
        report.outcome = Outcome::Violated;
    }
    report
}

/// `h_{k,c}(x) = 16 * 3^(2k-2) c x^(4k) / ((2x+1)^(2k-2) (16x^2 - 1 + 2c))`.
pub fn beachball_h<S: Scalar>(k: u32, c: &S, x: &S) -> Result<S, InequalityError> {
    if k < 1 {
        return Err(InequalityError::Precondition("k >= 1".into()));
    }
    let k = k as i32;
    let quadratic = S::from_int(16) * x.clone() * x.clone() - S::one() + S::from_int(2) * c.clone();
    if quadratic <= S::zero() {
        return Err(InequalityError::Pole(format!("16x^2 - 1 + 2c <= 0 at x = {x}, c = {c}")));
    }
    let numerator = S::from_int(16) * S::from_int(3).powi(2 * k - 2) * c.clone() * x.powi(4 * k);
    let linear = S::from_int(2) * x.clone() + S::one();
    Ok(numerator / (linear.powi(2 * k - 2) * quadratic))
}

/// `p_k(x) = 112k x^3 + (112k - 56) x^2 - (5k + 5) x - 5k`, the sign factor of
/// the derivative of `h_{k,1/7}`.
pub fn beachball_p_raw<S: Scalar>(k: i64, x: &S) -> S {
    let coefficients = raw_coefficients(k).map(|c| S::from_rational(&c));
    horner(&coefficients, x)
}

/// `p_k` in powers of `x - 1/4`:
/// `112k y^3 + (196k - 56) y^2 + (72k - 33) y + (10k - 19)/4`.
pub fn beachball_p_shifted<S: Scalar>(k: i64, x: &S) -> S {
    let y = x.clone() - S::from_ratio(1, 4);
    let coefficients = shifted_coefficients(k).map(|c| S::from_rational(&c));
    horner(&coefficients, &y)
}

fn raw_coefficients(k: i64) -> [BigRational; 4] {
    [-5 * k, -(5 * k + 5), 112 * k - 56, 112 * k].map(|c| BigRational::from_integer(c.into()))
}

fn shifted_coefficients(k: i64) -> [BigRational; 4] {
    [
        BigRational::new((10 * k - 19).into(), 4.into()),
        BigRational::from_integer((72 * k - 33).into()),
        BigRational::from_integer((196 * k - 56).into()),
        BigRational::from_integer((112 * k).into()),
    ]
}

/// Coefficients (constant term first) of `p_k` in `x`, both as printed and
/// as obtained by expanding the shifted form around `1/4`.
pub fn beachball_p_coefficients(k: i64) -> ([BigRational; 4], [BigRational; 4]) {
    let shifted = shifted_coefficients(k);
    let quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
    // sum_i s_i (x - 1/4)^i, expanded binomially
    let mut expanded: [BigRational; 4] = Default::default();
    for (i, s) in shifted.iter().enumerate() {
        for (j, slot) in expanded.iter_mut().enumerate().take(i + 1) {
            let binom = BigRational::from_integer(BigInt::from(binomial(i, j)));
            *slot = slot.clone() + s * binom * pow_rational(&quarter, i - j);
        }
    }
    (raw_coefficients(k), expanded)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn pow_rational(r: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * r)
}

fn horner<S: Scalar>(coefficients: &[S], x: &S) -> S {
    coefficients.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// The beachball chain for `B_{2k}`:
/// `m_{D_k} >= m_D^k / m_{K_{1,2}}^(k-1)`, `m_{B_{2k}} >= m_{D_k}^2 / m_C4`,
/// `m_{B_{2k}} >= m_D^(2k) / (m_{K_{1,2}}^(2k-2) m_C4)`,
/// `m_{B_{2k}} >= h_{k,c}(sqrt m_D)` and `h_{k,c}(sqrt m_D) >= 2^(1-6k)`.
/// The last link uses monotonicity of `h`, proved only for `c = 1/7`.
pub fn check_beachball_chain(k: u32, c: f64, w: &StepGraphon<f64>) -> Result<Vec<InequalityReport>, InequalityError> {
    if !(2..=7).contains(&k) {
        return Err(InequalityError::Precondition("beachball needs 2 <= k <= 7".into()));
    }
    if !(0.0..=diamond_c_max()).contains(&c) {
        return Err(InequalityError::Precondition(format!("diamond constant {c} outside the admissible range")));
    }
    let ki = k as i32;
    let md = m(&g("diamond"), w);
    let mdk = m(&named(&format!("dk:{k}"))?, w);
    let mb = m(&named(&format!("beachball:{k}"))?, w);
    let mcherry = m(&g("cherry"), w);
    let mc4 = m(&g("c4"), w);
    let hx = beachball_h(k, &c, &md.sqrt())?;
    let name = |link: &str| format!("beachball[k={k}]_{link}");
    Ok(vec![
        InequalityReport::judged(name("dk"), Kind::Inequality, mdk, md.powi(ki) / mcherry.powi(ki - 1)),
        InequalityReport::judged(name("glue"), Kind::Inequality, mb, mdk * mdk / mc4),
        InequalityReport::judged(
            name("combined"),
            Kind::Inequality,
            mb,
            md.powi(2 * ki) / (mcherry.powi(2 * ki - 2) * mc4),
        ),
        InequalityReport::judged(name("h"), Kind::Inequality, mb, hx),
        InequalityReport::judged(name("common"), Kind::Inequality, hx, 2f64.powi(1 - 6 * ki)),
    ]
    .into_iter()
    .map(|r| r.with_witness(w))
    .collect())
}

fn apex_base(h: &Graph) -> Result<&'static str, InequalityError> {
    bipartite_apex_bases().into_iter().find(|(_, b)| is_isomorphic(b, h)).map(|(name, _)| name).ok_or_else(|| {
        InequalityError::Precondition(format!("{h} is not a connected bipartite graph on <= 5 vertices"))
    })
}

/// `m_{h^{+1}} >= 2^(-v(h)) m_h` for the ten connected bipartite graphs on
/// at most five vertices. A spot check: the lemma itself rests on a flag
/// algebra computation not reproduced here.
pub fn check_apex_lemma(h: &Graph, w: &StepGraphon<f64>) -> Result<InequalityReport, InequalityError> {
    let base = apex_base(h)?;
    let lhs = m(&h.apex_add(1)?, w);
    let rhs = 2f64.powi(-(h.n() as i32)) * m(h, w);
    Ok(InequalityReport::judged(format!("apex[{base}]"), Kind::Inequality, lhs, rhs).with_witness(w))
}

/// `m_{H^{+a}} >= m_{H^{+1}}^a / m_H^(a-1)` and `m_{H^{+a}} >= 2^(1-e(H)-a v(H))`.
pub fn check_apex_chain(h: &Graph, a: u32, w: &StepGraphon<f64>) -> Result<Vec<InequalityReport>, InequalityError> {
    let base = apex_base(h)?;
    if a < 1 {
        return Err(InequalityError::Precondition("a >= 1".into()));
    }
    let names = [format!("apex_chain[{base}+{a}]_holder"), format!("apex_chain[{base}+{a}]_common")];
    let mh = m(h, w);
    let big = m(&h.apex_add(a as usize)?, w);
    let holder = if mh == 0.0 {
        InequalityReport::not_applicable(names[0].clone(), "m_H = 0")
    } else {
        let one = m(&h.apex_add(1)?, w);
        InequalityReport::judged(names[0].clone(), Kind::Inequality, big, one.powi(a as i32) / mh.powi(a as i32 - 1))
    };
    let floor = two_pow(1 - h.edge_count() as i64 - a as i64 * h.n() as i64);
    Ok(vec![
        holder.with_witness(w),
        InequalityReport::judged(names[1].clone(), Kind::Inequality, big, floor).with_witness(w),
    ])
}

/// Every fixed-shape check on one graphon: Goodman, the diamond lemma at
/// `c = 1/7` and at the endpoint, Cauchy–Schwarz for `2w - 1`, the
/// `K_{2,2,2}` and `B_6` chains, the apex lemma for all ten bases and the
/// apex chain with `a = 2`.
pub fn standard_checks(w: &StepGraphon<f64>) -> Vec<InequalityReport> {
    let mut out = vec![
        check_goodman(w),
        check_diamond_lemma(w, &(1.0 / 7.0)).expect("1/7 admissible"),
        check_diamond_lemma(w, &diamond_c_max()).expect("endpoint admissible"),
        check_k3plus_cs(&w.to_signed()).with_witness(w),
    ];
    for k in [2, 3] {
        out.extend(check_beachball_chain(k, 1.0 / 7.0, w).expect("valid beachball"));
    }
    for (_, base) in bipartite_apex_bases() {
        out.push(check_apex_lemma(&base, w).expect("listed base"));
        out.extend(check_apex_chain(&base, 2, w).expect("listed base"));
    }
    out
}

/// [`standard_checks`] over a whole suite, in parallel, order preserved.
pub fn run_suite(suite: &[StepGraphon<f64>]) -> Vec<InequalityReport> {
    suite.par_iter().flat_map_iter(standard_checks).collect()
}
