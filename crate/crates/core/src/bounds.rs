//! Dimension bounds for constant-rank loci of quadratic forms, with a
//! step-by-step replay of the homological argument.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::point::PointQ;
use crate::quadric::{nonsurjectivity_certificate, torsion_certificate, BettiVector};

/// `d <= N - r` for a base of dimension `d` carrying a rank-`N` bundle with a
/// quadratic form of constant rank `r`.
pub fn main_bound(big_n: usize, r: usize) -> Result<usize> {
    check_ranks(big_n, r)?;
    Ok(big_n - r)
}

fn check_ranks(big_n: usize, r: usize) -> Result<()> {
    if r == 0 || r > big_n {
        return Err(Error::Invalid(format!("need 0 < r <= N, got N={big_n}, r={r}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn eval(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub statement: String,
    pub lhs: i64,
    pub rhs: i64,
    pub relation: Relation,
    pub ok: bool,
}

impl Step {
    fn new(statement: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Self {
        Step {
            statement: statement.into(),
            lhs,
            rhs,
            relation,
            ok: relation.eval(lhs, rhs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub r: usize,
    pub d: usize,
    pub n: usize,
    pub steps: Vec<Step>,
    pub consistent: bool,
    pub verdict: String,
}

impl BoundReport {
    /// Index (1-based) of the first failing step.
    pub fn failed_step(&self) -> Option<usize> {
        self.steps.iter().position(|s| !s.ok).map(|i| i + 1)
    }

    /// Re-evaluates every step and the verdict, e.g. after deserializing.
    pub fn revalidate(&self) -> Result<()> {
        for (i, s) in self.steps.iter().enumerate() {
            if s.relation.eval(s.lhs, s.rhs) != s.ok {
                return Err(Error::Invalid(format!("step {} does not re-evaluate", i + 1)));
            }
        }
        if self.consistent != self.failed_step().is_none() || self.verdict != verdict(self) {
            return Err(Error::Invalid("verdict does not match the steps".into()));
        }
        Ok(())
    }
}

fn verdict(report: &BoundReport) -> String {
    match report.failed_step() {
        None => format!("d <= N-r consistent ({} <= {})", report.d, report.big_n - report.r),
        Some(k) => format!(
            "hypotheses contradict at step {k}: X_{} must be nonempty",
            report.r - 1
        ),
    }
}

/// Replays the proof of `d <= N - r`. When `d > N - r` some step fails,
/// which says the constant-rank hypothesis cannot hold.
pub fn replay_main_theorem(
    big_n: usize,
    r: usize,
    d: usize,
    betti: &BettiVector,
) -> Result<BoundReport> {
    check_ranks(big_n, r)?;
    betti.require_for_dim(d)?;
    let (nn, rr, dd) = (big_n as i64, r as i64, d as i64);
    let n = r / 2;
    let ni = n as i64;
    let threshold = nn + dd - 1;

    let mut steps = vec![Step::new(
        format!("H_j(P(W)-Q) = 0 for j > N+d-1 = {threshold}; P(W)-Q is affine over X of dimension N-1+d"),
        threshold,
        Relation::Eq,
        (nn - 1) + dd,
    )];

    if r == 1 {
        // the quadric is empty; the fundamental class survives in degree 2d
        steps.push(Step::new(
            format!("H_{}(P(W)-Q) != 0 since b_{} >= 1", 2 * d, 2 * d),
            betti.top() as i64,
            Relation::Ge,
            1,
        ));
        steps.push(Step::new(
            format!("{} <= N+d-1", 2 * d),
            2 * dd,
            Relation::Le,
            threshold,
        ));
    } else {
        let nonzero_degree = 2 * ni + 2 * dd - 1;
        if r.is_multiple_of(2) {
            let cert = nonsurjectivity_certificate(betti, r, d)?;
            steps.push(Step::new(
                format!(
                    "j*: H_{}(P(V)) -> H_{}(Q) is not onto (dimensions {} < {}), so H_{nonzero_degree}(P(W)-Q) != 0",
                    cert.source_degree,
                    cert.source_degree - 2,
                    cert.dim_source,
                    cert.dim_target
                ),
                cert.dim_source as i64,
                Relation::Lt,
                cert.dim_target as i64,
            ));
        } else {
            let cert = torsion_certificate(betti, r, d)?;
            let order = if cert.holds() { cert.element_order } else { 0 };
            steps.push(Step::new(
                format!(
                    "{}, so H_{nonzero_degree}(P(W)-Q) has nonzero 2-torsion",
                    cert.statement
                ),
                i64::from(order),
                Relation::Eq,
                2,
            ));
        }
        steps.push(Step::new(
            format!("2n+2d-1 = {nonzero_degree} <= N+d-1 = {threshold}"),
            nonzero_degree,
            Relation::Le,
            threshold,
        ));
        if r % 2 == 1 {
            steps.push(Step::new(
                format!(
                    "H_{threshold}(P(W)-Q) is torsion-free, so 2n+2d-1 = {nonzero_degree} != N+d-1"
                ),
                nonzero_degree,
                Relation::Ne,
                threshold,
            ));
        }
    }

    let mut report = BoundReport {
        big_n,
        r,
        d,
        n,
        steps,
        consistent: false,
        verdict: String::new(),
    };
    report.consistent = report.failed_step().is_none();
    report.verdict = verdict(&report);
    debug_assert_eq!(report.consistent, rr <= nn - dd);
    Ok(report)
}

fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryThreshold {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub r: usize,
    /// `C(N-r+1, 2)`.
    pub threshold: u64,
    /// `Σ_{s=r+1}^{N} (N-s+1)`.
    pub telescoped: u64,
    pub holds: bool,
}

/// If `dim X >= C(N-r+1, 2)` then `X_r` is nonempty. Applying the main bound
/// once for each rank from `N` down to `r + 1` gives the same number.
pub fn corollary_threshold(big_n: usize, r: usize) -> Result<CorollaryThreshold> {
    if r >= big_n {
        return Err(Error::Invalid(format!("need 0 <= r < N, got N={big_n}, r={r}")));
    }
    let threshold = choose2((big_n - r + 1) as u64);
    let telescoped = (r + 1..=big_n).map(|s| (big_n - s + 1) as u64).sum();
    Ok(CorollaryThreshold {
        big_n,
        r,
        threshold,
        telescoped,
        holds: threshold == telescoped,
    })
}

/// Dimension of the projectivized locus of symmetric `N × N` matrices of rank
/// at most `r`, stepping down from the full space one codimension at a time.
pub fn sym_stratum_dim(big_n: usize, r: usize) -> Result<u64> {
    check_ranks(big_n, r)?;
    let mut dim = choose2(big_n as u64 + 1) - 1;
    for s in (r + 1..=big_n).rev() {
        // S_{s-1} has codimension N-s+1 in S_s
        dim -= (big_n - s + 1) as u64;
    }
    Ok(dim)
}

/// `v vᵀ`: the Veronese family of rank-one forms, of dimension `N - 1`.
pub fn veronese_witness(v: &PointQ) -> Result<RatMatrix> {
    if v.is_empty() || v.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let c = v.coords();
    Ok(RatMatrix::from_fn(c.len(), c.len(), |i, j| &c[i] * &c[j]))
}

/// A single nondegenerate form, the rank-`N` witness of dimension 0.
pub fn full_rank_witness(big_n: usize) -> RatMatrix {
    RatMatrix::anti_identity(big_n)
}
