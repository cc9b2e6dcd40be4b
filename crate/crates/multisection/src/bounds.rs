//! Evaluable tail bounds, rate functions, threshold curves, and
//! concentration spot-checks.
//!
//! The closed forms are implemented exactly as stated: Chernoff (exact and
//! simplified), Bernstein, Hoeffding, a Bernoulli-sum threshold corollary,
//! the two-sample statistic T(m,p,q,delta), the rate function
//! g(alpha,beta,epsilon), and the recovery threshold curves. The spot-checks
//! evaluate both sides of the spectral and degree concentration inequalities
//! on sampled instances. Explicit numeric constants (3, 30, 2, 28) are part
//! of the inequalities themselves; free constants (c, c_2) are caller
//! parameters because the statements only assert that universal values
//! exist, and any defaults shown in examples are illustrative only.
//!
//! Monte-Carlo routines draw per-trial seeds via [`derive_seed`], so their
//! results are identical no matter how trials are scheduled across threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::subspace_basis;
use crate::degrees::compute_profile;
use crate::error::{Error, Result};
use crate::linalg::max_eigenvalue;
use crate::model::{derive_pq, Instance, SbmParams};
use crate::rng::derive_seed;

/// Largest m for which T(m,p,q,delta) is enumerated exactly (4^m outcomes).
pub const EXACT_ENUM_LIMIT: usize = 6;

/// DomainError unless the condition holds.
fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::DomainError(msg.into()))
    }
}

/// Exact Chernoff upper tail: P(X > (1+delta)mu) < (e^delta/(1+delta)^(1+delta))^mu.
pub fn chernoff_upper(mu: f64, delta: f64) -> Result<f64> {
    require(mu.is_finite() && mu >= 0.0, format!("mu must be >= 0, got {mu}"))?;
    require(
        delta.is_finite() && delta >= 0.0,
        format!("upper tail needs delta >= 0, got {delta}"),
    )?;
    Ok((mu * (delta - (1.0 + delta) * delta.ln_1p())).exp())
}

/// Exact Chernoff lower tail: P(X < (1-delta)mu) < (e^-delta/(1-delta)^(1-delta))^mu.
pub fn chernoff_lower(mu: f64, delta: f64) -> Result<f64> {
    require(mu.is_finite() && mu >= 0.0, format!("mu must be >= 0, got {mu}"))?;
    require(
        delta.is_finite() && (0.0..=1.0).contains(&delta),
        format!("lower tail needs 0 <= delta <= 1, got {delta}"),
    )?;
    // (1-delta)^(1-delta) -> 1 as delta -> 1, so the bound closes at e^-mu.
    if delta == 1.0 {
        return Ok((-mu).exp());
    }
    Ok((mu * (-delta - (1.0 - delta) * (-delta).ln_1p())).exp())
}

/// Simplified Chernoff upper tail e^(-delta^2 mu / 3), valid for delta <= 1.
pub fn chernoff_simplified_upper(mu: f64, delta: f64) -> Result<f64> {
    require(mu.is_finite() && mu >= 0.0, format!("mu must be >= 0, got {mu}"))?;
    require(
        delta.is_finite() && (0.0..=1.0).contains(&delta),
        format!("simplified form needs 0 <= delta <= 1, got {delta}"),
    )?;
    Ok((-delta * delta * mu / 3.0).exp())
}

/// Simplified Chernoff lower tail e^(-delta^2 mu / 2), valid for delta <= 1.
pub fn chernoff_simplified_lower(mu: f64, delta: f64) -> Result<f64> {
    require(mu.is_finite() && mu >= 0.0, format!("mu must be >= 0, got {mu}"))?;
    require(
        delta.is_finite() && (0.0..=1.0).contains(&delta),
        format!("simplified form needs 0 <= delta <= 1, got {delta}"),
    )?;
    Ok((-delta * delta * mu / 2.0).exp())
}

/// Bernstein tail for a sum of independent variables bounded by `m_bound`:
/// P(|X - mu| >= t) <= exp(-(1/2) t^2 / (sum of variances + m_bound t / 3)).
pub fn bernstein_tail(t: f64, sigma_sq_sum: f64, m_bound: f64) -> Result<f64> {
    require(t.is_finite() && t >= 0.0, format!("t must be >= 0, got {t}"))?;
    require(
        sigma_sq_sum.is_finite() && sigma_sq_sum >= 0.0,
        format!("variance sum must be >= 0, got {sigma_sq_sum}"),
    )?;
    require(
        m_bound.is_finite() && m_bound >= 0.0,
        format!("range bound must be >= 0, got {m_bound}"),
    )?;
    if t == 0.0 {
        return Ok(1.0);
    }
    let denom = sigma_sq_sum + m_bound * t / 3.0;
    if denom == 0.0 {
        // Zero variance and zero range: the sum is deterministic.
        return Ok(0.0);
    }
    Ok((-0.5 * t * t / denom).exp())
}

/// Hoeffding tail for the empirical mean of n variables with X_i in [a_i, b_i]:
/// P(|mean - E mean| >= t) <= 2 exp(-2 n^2 t^2 / sum (b_i - a_i)^2).
pub fn hoeffding_tail(n: usize, t: f64, ranges: &[(f64, f64)]) -> Result<f64> {
    require(n >= 1, "need at least one variable")?;
    require(
        ranges.len() == n,
        format!("expected {n} ranges, got {}", ranges.len()),
    )?;
    require(t.is_finite() && t >= 0.0, format!("t must be >= 0, got {t}"))?;
    let mut sum_sq = 0.0;
    for &(a, b) in ranges {
        require(
            a.is_finite() && b.is_finite() && b >= a,
            format!("range [{a}, {b}] is not an interval"),
        )?;
        sum_sq += (b - a) * (b - a);
    }
    if t == 0.0 {
        return Ok(2.0);
    }
    if sum_sq == 0.0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    Ok(2.0 * (-2.0 * nf * nf * t * t / sum_sq).exp())
}

/// Threshold and tail bound for a sum of n i.i.d. Bernoulli(p) variables:
/// P(X >= np + alpha_c sigma sqrt(n ln r) + alpha_c ln r) <= r^(-alpha_c/4)
/// with sigma = sqrt(p(1-p)). Returns (threshold, bound).
pub fn corollary_bound(n: usize, p: f64, alpha_c: f64, r: f64) -> Result<(f64, f64)> {
    require(n >= 1, "need at least one variable")?;
    require(
        p.is_finite() && (0.0..=1.0).contains(&p),
        format!("p must lie in [0, 1], got {p}"),
    )?;
    require(
        alpha_c.is_finite() && alpha_c >= 0.0,
        format!("alpha_c must be >= 0, got {alpha_c}"),
    )?;
    // r < 1 would put a negative number under the square root; the statement
    // is only useful for r >= 1 anyway.
    require(r.is_finite() && r >= 1.0, format!("r must be >= 1, got {r}"))?;
    let nf = n as f64;
    let sigma = (p * (1.0 - p)).sqrt();
    let threshold = nf * p + alpha_c * sigma * (nf * r.ln()).sqrt() + alpha_c * r.ln();
    let bound = (-alpha_c * r.ln() / 4.0).exp();
    Ok((threshold, bound))
}

/// A Monte-Carlo estimate with its binomial standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TStatEstimate {
    /// Fraction of trials where the event occurred.
    pub estimate: f64,
    /// sqrt(estimate (1 - estimate) / trials).
    pub std_error: f64,
    /// Number of trials.
    pub trials: usize,
}

/// Probability of a single 0/1 pattern of m independent Bernoulli(p) draws.
fn pattern_prob(bits: usize, m: usize, p: f64) -> f64 {
    let mut prob = 1.0;
    for i in 0..m {
        prob *= if bits >> i & 1 == 1 { p } else { 1.0 - p };
    }
    prob
}

/// Exact T(m,p,q,delta) = P(sum (Z_i - W_i) >= delta) by enumerating all
/// 4^m outcomes, with Z_i i.i.d. Bernoulli(q) and W_i i.i.d. Bernoulli(p).
///
/// Limited to m <= [`EXACT_ENUM_LIMIT`]; use [`t_statistic_mc`] beyond that.
pub fn t_statistic_exact(m: usize, p: f64, q: f64, delta: f64) -> Result<f64> {
    require(
        m >= 1 && m <= EXACT_ENUM_LIMIT,
        format!("exact enumeration needs 1 <= m <= {EXACT_ENUM_LIMIT}, got {m}"),
    )?;
    require(
        p.is_finite() && (0.0..=1.0).contains(&p),
        format!("p must lie in [0, 1], got {p}"),
    )?;
    require(
        q.is_finite() && (0.0..=1.0).contains(&q),
        format!("q must lie in [0, 1], got {q}"),
    )?;
    require(delta.is_finite(), "delta must be finite")?;
    let size = 1usize << m;
    let z_prob: Vec<f64> = (0..size).map(|bits| pattern_prob(bits, m, q)).collect();
    let w_prob: Vec<f64> = (0..size).map(|bits| pattern_prob(bits, m, p)).collect();
    let mut total = 0.0;
    for (zb, pz) in z_prob.iter().enumerate() {
        let zc = zb.count_ones() as f64;
        for (wb, pw) in w_prob.iter().enumerate() {
            if zc - wb.count_ones() as f64 >= delta {
                total += pz * pw;
            }
        }
    }
    Ok(total)
}

/// Monte-Carlo estimate of T(m,p,q,delta) over seeded trials.
///
/// Trial `i` uses `derive_seed(seed, 0, i)` and draws the m Bernoulli(q)
/// variables first, then the m Bernoulli(p) variables, so the estimate is a
/// pure function of the arguments regardless of thread schedule.
pub fn t_statistic_mc(
    m: usize,
    p: f64,
    q: f64,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<TStatEstimate> {
    require(m >= 1, "m must be >= 1")?;
    require(
        p.is_finite() && (0.0..=1.0).contains(&p),
        format!("p must lie in [0, 1], got {p}"),
    )?;
    require(
        q.is_finite() && (0.0..=1.0).contains(&q),
        format!("q must lie in [0, 1], got {q}"),
    )?;
    require(delta.is_finite(), "delta must be finite")?;
    require(trials >= 1, "trials must be >= 1")?;
    let successes: u64 = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0, trial));
            let mut diff = 0i64;
            for _ in 0..m {
                if rng.gen_bool(q) {
                    diff += 1;
                }
            }
            for _ in 0..m {
                if rng.gen_bool(p) {
                    diff -= 1;
                }
            }
            u64::from(diff as f64 >= delta)
        })
        .sum();
    let estimate = successes as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(TStatEstimate {
        estimate,
        std_error,
        trials,
    })
}

/// A point on the rate function g.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFunctionPoint {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    /// g(alpha, beta, epsilon).
    pub value: f64,
}

impl RateFunctionPoint {
    /// Evaluate g at the given point.
    pub fn evaluate(alpha: f64, beta: f64, epsilon: f64) -> Result<Self> {
        Ok(RateFunctionPoint {
            alpha,
            beta,
            epsilon,
            value: g_function(alpha, beta, epsilon)?,
        })
    }
}

/// The rate function
/// g(a,b,e) = (a + b) - e ln(a) - 2 sqrt((e/2)^2 + ab)
///          + (e/2) ln(ab (s + e/2)/(s - e/2))      with s = sqrt((e/2)^2 + ab).
///
/// Since (s - e/2)(s + e/2) = ab, the last term equals e ln(s + e/2), which
/// is the numerically stable form evaluated here. At e = 0 the function
/// reduces to (sqrt(a) - sqrt(b))^2.
pub fn g_function(alpha: f64, beta: f64, epsilon: f64) -> Result<f64> {
    require(
        alpha.is_finite() && alpha > 0.0,
        format!("alpha must be > 0, got {alpha}"),
    )?;
    require(
        beta.is_finite() && beta > 0.0,
        format!("beta must be > 0, got {beta}"),
    )?;
    require(
        epsilon.is_finite() && epsilon >= 0.0,
        format!("epsilon must be >= 0, got {epsilon}"),
    )?;
    let half = epsilon / 2.0;
    let s = (half * half + alpha * beta).sqrt();
    Ok(alpha + beta - epsilon * alpha.ln() - 2.0 * s + epsilon * (s + half).ln())
}

/// The recovery threshold in beta for a given alpha: sqrt(alpha) - sqrt(beta) > 1
/// holds exactly below beta = (sqrt(alpha) - 1)^2.
pub fn threshold_beta(alpha: f64) -> Result<f64> {
    require(
        alpha.is_finite() && alpha >= 1.0,
        format!("threshold needs alpha >= 1, got {alpha}"),
    )?;
    let root = alpha.sqrt() - 1.0;
    Ok(root * root)
}

/// Margin of the growing-k threshold:
/// (sqrt(alpha) - sqrt(beta)) - sqrt(1 + c sqrt(beta gamma)(1 + ln sqrt(alpha/beta))).
///
/// A positive return value means the condition is satisfied. When
/// beta·gamma = 0 the inner expression is exactly 1, so the margin collapses
/// to (sqrt(alpha) - sqrt(beta)) - 1 without evaluating the logarithm.
pub fn threshold_gamma(alpha: f64, beta: f64, gamma: f64, c: f64) -> Result<f64> {
    require(
        alpha.is_finite() && alpha > 0.0,
        format!("alpha must be > 0, got {alpha}"),
    )?;
    require(
        beta.is_finite() && beta >= 0.0,
        format!("beta must be >= 0, got {beta}"),
    )?;
    require(
        gamma.is_finite() && gamma >= 0.0,
        format!("gamma must be >= 0, got {gamma}"),
    )?;
    require(c.is_finite(), "c must be finite")?;
    let inner = if beta * gamma == 0.0 {
        1.0
    } else {
        1.0 + c * (beta * gamma).sqrt() * (1.0 + (alpha / beta).sqrt().ln())
    };
    require(
        inner >= 0.0,
        format!("inner expression {inner} is negative; no real threshold"),
    )?;
    Ok(alpha.sqrt() - beta.sqrt() - inner.sqrt())
}

/// Both sides of the restricted spectral bound
/// lambda_max(A) <= 3 sqrt(pn/k + qn) + c sqrt(ln n),
/// where lambda_max is taken over the mean-zero-per-cluster subspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaMaxReport {
    /// Largest eigenvalue of the adjacency matrix on the restricted subspace.
    pub empirical: f64,
    /// 3 sqrt(pn/k + qn) + c sqrt(ln n).
    pub bound: f64,
    /// The caller-supplied constant c.
    pub c: f64,
    pub holds: bool,
}

/// Evaluates the restricted spectral bound on a sampled instance.
pub fn lambda_max_check(inst: &Instance, c: f64) -> Result<LambdaMaxReport> {
    if inst.partition.n() != inst.graph.n() {
        return Err(Error::MismatchedPartition(format!(
            "partition covers {} vertices, graph has {}",
            inst.partition.n(),
            inst.graph.n()
        )));
    }
    let (p, q) = derive_pq(&inst.params)?;
    let basis = subspace_basis(&inst.partition);
    let a = inst.graph.adjacency();
    let restricted = basis.transpose().mul(&a).mul(&basis);
    let empirical = max_eigenvalue(&restricted)?;
    let n = inst.graph.n() as f64;
    let k = inst.params.k as f64;
    let bound = 3.0 * (p * n / k + q * n).sqrt() + c * n.ln().sqrt();
    Ok(LambdaMaxReport {
        empirical,
        bound,
        c,
        holds: empirical <= bound,
    })
}

/// Both sides of the two degree-deviation inequalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDeviationReport {
    /// Largest over clusters of sum_{j in P_t} delta_out_max(j) / (n/k).
    pub out_sum_lhs: f64,
    /// qn/k + 30(sqrt(n ln(k) q / k) + ln k
    ///   + sqrt((n/k) ln n) max{q, sqrt(q ln n/(n/k)), ln n/(n/k)}).
    pub out_sum_rhs: f64,
    /// Whether the first inequality (lhs <= rhs) holds for every cluster.
    pub out_sum_holds: bool,
    /// Smallest over ordered cluster pairs t1 != t2 of delta_{t1->t2} / (n/k).
    pub min_pair_lhs: f64,
    /// qn/k - 2 sqrt(q ln n).
    pub min_pair_rhs: f64,
    /// Whether the second inequality (lhs >= rhs) holds.
    pub min_pair_holds: bool,
}

/// Evaluates both degree-deviation inequalities on a sampled instance.
pub fn degree_deviation_check(inst: &Instance) -> Result<DegreeDeviationReport> {
    let (_, q) = derive_pq(&inst.params)?;
    let profile = compute_profile(&inst.graph, &inst.partition)?;
    let n = inst.graph.n() as f64;
    let k = inst.params.k as f64;
    let m = inst.params.m as f64;
    let ln_n = n.ln();

    let mut out_sum_lhs: f64 = 0.0;
    for t in 0..inst.params.k {
        let cluster_sum: i64 = inst
            .partition
            .members(t)
            .iter()
            .map(|&j| profile.delta_out_max()[j])
            .sum();
        out_sum_lhs = out_sum_lhs.max(cluster_sum as f64 / m);
    }
    let max_term = q.max((q * ln_n / m).sqrt()).max(ln_n / m);
    let out_sum_rhs = q * n / k
        + 30.0 * ((n * k.ln() * q / k).sqrt() + k.ln() + (m * ln_n).sqrt() * max_term);

    let min_pair_lhs = profile.min_cross_pair_degree() as f64 / m;
    let min_pair_rhs = q * n / k - 2.0 * (q * ln_n).sqrt();

    Ok(DegreeDeviationReport {
        out_sum_lhs,
        out_sum_rhs,
        out_sum_holds: out_sum_lhs <= out_sum_rhs,
        min_pair_lhs,
        min_pair_rhs,
        min_pair_holds: min_pair_lhs >= min_pair_rhs,
    })
}

/// Monte-Carlo mean of delta_out_max against its expectation bound
/// qn/k + 28(sqrt(n ln(k) q / k) + ln k).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdeltaReport {
    /// Number of sampled instances.
    pub trials: usize,
    /// Mean of delta_out_max over all vertices of all sampled instances.
    pub empirical_mean: f64,
    /// qn/k + 28(sqrt(n ln(k) q / k) + ln k).
    pub bound: f64,
    pub holds: bool,
}

/// Estimates E[delta_out_max] by sampling and compares it with the bound.
///
/// Trial `i` samples an instance with seed `derive_seed(seed, 0, i)`; the
/// per-vertex values are averaged within and across trials (the expectation
/// is the same for every vertex by symmetry).
pub fn edelta_expectation_check(
    params: &SbmParams,
    trials: usize,
    seed: u64,
) -> Result<EdeltaReport> {
    require(trials >= 1, "trials must be >= 1")?;
    params.validate()?;
    let (_, q) = derive_pq(params)?;
    let trial_means: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| -> Result<f64> {
            let mut trial_params = *params;
            trial_params.seed = derive_seed(seed, 0, trial);
            let inst = Instance::sample(trial_params)?;
            let profile = compute_profile(&inst.graph, &inst.partition)?;
            let total: i64 = profile.delta_out_max().iter().sum();
            Ok(total as f64 / inst.graph.n() as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let empirical_mean = trial_means.iter().sum::<f64>() / trials as f64;
    let n = params.n() as f64;
    let k = params.k as f64;
    let bound = q * n / k + 28.0 * ((n * k.ln() * q / k).sqrt() + k.ln());
    Ok(EdeltaReport {
        trials,
        empirical_mean,
        bound,
        holds: empirical_mean <= bound,
    })
}

/// Both sides of the per-vertex degree-gap guarantee at a chosen c_2:
/// min_i (delta_in(i) - delta_out_max(i)) versus
/// c_2 (sqrt(beta gamma) ln n + sqrt(alpha ln n)) with gamma = k / ln m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// min_i (delta_in(i) - delta_out_max(i)).
    pub lhs: f64,
    /// c_2 (sqrt(beta gamma) ln n + sqrt(alpha ln n)).
    pub rhs: f64,
    /// The caller-supplied constant c_2.
    pub c2: f64,
    /// Whether lhs > rhs (strict, as the guarantee states).
    pub holds: bool,
}

/// Evaluates the degree-gap guarantee on a sampled instance.
pub fn optimality_gap_check(inst: &Instance, c2: f64) -> Result<GapReport> {
    require(c2.is_finite(), "c2 must be finite")?;
    let profile = compute_profile(&inst.graph, &inst.partition)?;
    let n = inst.graph.n() as f64;
    let gamma = inst.params.k as f64 / (inst.params.m as f64).ln();
    let rhs = c2
        * ((inst.params.beta * gamma).sqrt() * n.ln() + (inst.params.alpha * n.ln()).sqrt());
    let lhs = profile.min_big_delta() as f64;
    Ok(GapReport {
        lhs,
        rhs,
        c2,
        holds: lhs > rhs,
    })
}
