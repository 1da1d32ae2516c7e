//! Closed-form bounds on intersecting pairs and deep points, and verdicts
//! that check a measured family against them.
//!
//! Integer and rational bounds are evaluated exactly. The two irrational
//! bounds are evaluated in `f64`; comparisons against integer measurements
//! round them with [`ceil_with_slack`], which only ever loosens the check.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::analytics::{choose2, count_pairs_naive, PairReport};
use crate::constructions::balanced_parts;
use crate::depth::max_depth;
use crate::error::{Error, Result};
use crate::geometry::BoxFamily;
use crate::rational::{serde_str, serde_str_opt, to_f64, Rational};

/// Tolerance subtracted from float bounds before taking the ceiling.
pub const FLOAT_SLACK: f64 = 1e-9;

pub fn ceil_with_slack(bound: f64) -> i64 {
    (bound - FLOAT_SLACK).ceil() as i64
}

fn rat(v: u64) -> Rational {
    Rational::from_integer(v as i128)
}

/// Edge count of the balanced complete `m`-partite graph on `n` vertices.
pub fn turan_edges(n: usize, m: usize) -> Result<u64> {
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!("turan_edges needs 1 <= m <= n, got n={n}, m={m}")));
    }
    Ok(choose2(n) - balanced_parts(n, m).into_iter().map(choose2).sum::<u64>())
}

/// `((d - 1) n^2 + (2k + d) n) / (2d)`, the strict upper bound on the number
/// of intersecting pairs among `n` boxes in dimension `d` of depth at most `k`.
pub fn t_upper_bound(n: usize, k: usize, d: usize) -> Result<Rational> {
    if !(n >= k && k >= d && d >= 1) {
        return Err(Error::ParameterOrder { n, k, d });
    }
    let (n, k, d) = (n as u64, k as u64, d as u64);
    Ok(Rational::new(
        ((d - 1) * n * n + (2 * k + d) * n) as i128,
        (2 * d) as i128,
    ))
}

/// `(k - 1) n - C(k, 2)`, the exact maximum for intervals of depth at most `k`.
pub fn t_exact_1d(n: usize, k: usize) -> Result<u64> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("t_exact_1d needs 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok((k as u64 - 1) * n as u64 - choose2(k))
}

/// `1 - (1 - alpha)^(1 / (d + 1))`, the sharp fraction for convex sets.
pub fn kalai_beta(alpha: f64, d: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if alpha == 1.0 {
        return Ok(1.0);
    }
    // expm1/ln_1p keep full relative precision as alpha -> 0
    Ok(-((-alpha).ln_1p() / (d as f64 + 1.0)).exp_m1())
}

/// `1 - 1/d`: at or below this pair fraction the slab construction has no
/// point of depth `d + 1`.
pub fn example_threshold(d: usize) -> Rational {
    Rational::new(d as i128 - 1, d as i128)
}

/// `d n eps - d/2 + 1`.
pub fn corollary_size(n: usize, d: usize, eps: &Rational) -> Result<Rational> {
    if *eps <= Rational::zero() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    Ok(rat(d as u64) * rat(n as u64) * eps - Rational::new(d as i128, 2) + 1)
}

/// Pair count needed before the corollary applies: `((d-1)/(2d) + eps) n^2`.
pub fn corollary_pair_threshold(n: usize, d: usize, eps: &Rational) -> Rational {
    let n2 = rat(n as u64 * n as u64);
    (Rational::new(d as i128 - 1, 2 * d as i128) + eps) * n2
}

/// `alpha > 1 - 1/d^2`, evaluated exactly.
pub fn thm4_hypothesis(alpha: &Rational, d: usize) -> bool {
    let d2 = (d * d) as i128;
    *alpha > Rational::new(d2 - 1, d2)
}

/// `(1 - d sqrt(1 - alpha)) n` on the domain `alpha in (1 - 1/d^2, 1]`.
pub fn thm4_size(n: usize, d: usize, alpha: f64) -> Result<f64> {
    let lower = 1.0 - 1.0 / (d * d) as f64;
    if d == 0 || !(alpha > lower && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (1 - 1/d^2, 1] = ({lower}, 1], got {alpha}"
        )));
    }
    Ok(thm4_size_unchecked(n, d, alpha))
}

fn thm4_size_unchecked(n: usize, d: usize, alpha: f64) -> f64 {
    (1.0 - d as f64 * (1.0 - alpha).max(0.0).sqrt()) * n as f64
}

/// Float value of the deep-point bound for an exact pair fraction, or `None`
/// when the fraction is outside its hypothesis.
pub fn thm4_size_for(n: usize, d: usize, alpha: &Rational) -> Option<f64> {
    thm4_hypothesis(alpha, d).then(|| thm4_size_unchecked(n, d, to_f64(alpha)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    /// The measured family contradicts a proven statement.
    Fail,
    /// The statement's hypothesis does not hold, so there is nothing to check.
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "VACUOUS",
        })
    }
}

/// Depth parameter the pair bound is evaluated at: the caller's `k`, lowered
/// to `n` and raised to `d` (both keep the hypothesis true), or `None` when
/// `n < d` puts the family outside the bound's domain.
pub fn effective_k(n: usize, k: usize, d: usize) -> Option<usize> {
    (n >= d).then(|| k.min(n).max(d))
}

fn turan_verdict(pairs: u64, n: usize, k: usize, d: usize) -> Result<Verdict> {
    match effective_k(n, k, d) {
        None => Ok(Verdict::Vacuous),
        Some(k) => {
            let bound = t_upper_bound(n, k, d)?;
            Ok(if rat(pairs) < bound { Verdict::Pass } else { Verdict::Fail })
        }
    }
}

/// Checks that the pair count is strictly below the upper bound. `k` is the
/// caller's claim that no `k + 1` boxes share a point; a family deeper than
/// `k` is an error rather than a failure.
pub fn verify_turan_bound(f: &BoxFamily, k: usize) -> Result<Verdict> {
    let depth = if f.is_empty() { 0 } else { max_depth(f)?.depth };
    if depth > k {
        return Err(Error::HypothesisViolated { depth, k });
    }
    turan_verdict(count_pairs_naive(f).pairs, f.len(), k, f.dim())
}

fn corollary_verdict(pairs: u64, depth: usize, n: usize, d: usize, eps: &Rational) -> Result<Verdict> {
    let size = corollary_size(n, d, eps)?;
    if n == 0 || rat(pairs) < corollary_pair_threshold(n, d, eps) {
        return Ok(Verdict::Vacuous);
    }
    Ok(if rat(depth as u64) >= size { Verdict::Pass } else { Verdict::Fail })
}

/// When enough pairs intersect, checks that the deepest point reaches the
/// corollary's size exactly.
pub fn verify_corollary(f: &BoxFamily, eps: &Rational) -> Result<Verdict> {
    let depth = if f.is_empty() { 0 } else { max_depth(f)?.depth };
    corollary_verdict(count_pairs_naive(f).pairs, depth, f.len(), f.dim(), eps)
}

fn thm4_verdict(alpha: Option<&Rational>, depth: usize, n: usize, d: usize) -> Verdict {
    match alpha.and_then(|a| thm4_size_for(n, d, a)) {
        None => Verdict::Vacuous,
        Some(size) if depth as i64 >= ceil_with_slack(size) => Verdict::Pass,
        Some(_) => Verdict::Fail,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub pair_bound: Verdict,
    pub dense_depth: Option<Verdict>,
    pub extraction: Verdict,
}

impl Verdicts {
    pub fn any_fail(&self) -> bool {
        [Some(self.pair_bound), self.dense_depth, Some(self.extraction)].contains(&Some(Verdict::Fail))
    }
}

/// Every bound evaluated for one family, with verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub pairs: u64,
    #[serde(with = "serde_str_opt")]
    pub alpha: Option<Rational>,
    pub depth: usize,
    #[serde(with = "serde_str_opt")]
    pub t_upper: Option<Rational>,
    pub t_exact_1d: Option<u64>,
    pub kalai_beta: Option<f64>,
    #[serde(with = "serde_str_opt")]
    pub eps: Option<Rational>,
    #[serde(with = "serde_str_opt")]
    pub corollary_size: Option<Rational>,
    pub thm4_size: Option<f64>,
    #[serde(with = "serde_str")]
    pub example_threshold: Rational,
    pub verdicts: Verdicts,
}

/// Builds the report. `k` defaults to the measured depth; a `k` below the
/// measured depth is a [`Error::HypothesisViolated`].
pub fn bounds_report(f: &BoxFamily, k: Option<usize>, eps: Option<&Rational>) -> Result<BoundsReport> {
    let report: PairReport = count_pairs_naive(f);
    let depth = if f.is_empty() { 0 } else { max_depth(f)?.depth };
    bounds_report_from(f.len(), f.dim(), &report, depth, k, eps)
}

/// Same as [`bounds_report`] from already measured quantities.
pub fn bounds_report_from(
    n: usize,
    d: usize,
    pairs: &PairReport,
    depth: usize,
    k: Option<usize>,
    eps: Option<&Rational>,
) -> Result<BoundsReport> {
    let k = k.unwrap_or(depth);
    if depth > k {
        return Err(Error::HypothesisViolated { depth, k });
    }
    let alpha = pairs.alpha;
    let t_upper = effective_k(n, k, d).map(|ke| t_upper_bound(n, ke, d)).transpose()?;
    let t_exact = (d == 1 && k >= 1 && k <= n).then(|| t_exact_1d(n, k)).transpose()?;
    let kalai = alpha
        .filter(|a| !a.is_zero())
        .map(|a| kalai_beta(to_f64(&a), d))
        .transpose()?;
    let corollary = eps.map(|e| corollary_size(n, d, e)).transpose()?;
    let corollary_v = eps.map(|e| corollary_verdict(pairs.pairs, depth, n, d, e)).transpose()?;
    Ok(BoundsReport {
        n,
        k,
        d,
        pairs: pairs.pairs,
        alpha,
        depth,
        t_upper,
        t_exact_1d: t_exact,
        kalai_beta: kalai,
        eps: eps.copied(),
        corollary_size: corollary,
        thm4_size: alpha.as_ref().and_then(|a| thm4_size_for(n, d, a)),
        example_threshold: example_threshold(d),
        verdicts: Verdicts {
            pair_bound: turan_verdict(pairs.pairs, n, k, d)?,
            dense_depth: corollary_v,
            extraction: thm4_verdict(alpha.as_ref(), depth, n, d),
        },
    })
}
