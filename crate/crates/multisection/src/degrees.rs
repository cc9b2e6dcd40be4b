//! Degree statistics of a partitioned graph and the recovery conditions.
//!
//! For a graph G on n = k·m vertices with a balanced partition {P_1, ..., P_k},
//! this module computes every cluster-degree quantity the recovery analysis is
//! built on:
//!
//! - δ_{i→P_t}: number of neighbours of vertex i inside cluster P_t,
//! - δ_{P_t1→P_t2} = Σ_{i ∈ P_t1} δ_{i→P_t2} (for t1 = t2 this double-counts
//!   within-cluster edges, so the diagonal holds twice the edge count),
//! - δ^in(i) = δ_{i→P(i)} and δ^out_max(i) = max_{t ≠ P(i)} δ_{i→P_t},
//! - Δ(i) = δ^in(i) − δ^out_max(i),
//! - ν(i) = δ^in(i) − max_{u,j: P(u) ≠ P(j)} (δ_{u→P(j)} + δ_{j→P(u)}
//!   − δ_{P(j)→P(u)}/(n/k)), where the max runs over all cross-cluster
//!   ordered vertex pairs and is therefore a single global correction.
//!
//! On top of the profile it evaluates the two sufficiency conditions for exact
//! recovery. Both compare a minimum degree margin against a ĉ-scaled noise
//! level; the constant ĉ is a caller parameter because the analysis leaves it
//! unspecified. Condition reports are advisory diagnostics only, recovery is
//! decided by the solver and the dual certificate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{derive_pq, Graph, Partition, SbmParams};

/// All cluster-degree quantities of one (graph, partition) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    n: usize,
    k: usize,
    m: usize,
    /// Row-major n×k matrix of δ_{i→P_t}.
    delta_to_cluster: Vec<i64>,
    /// δ^in(i) = δ_{i→P(i)}.
    delta_in: Vec<i64>,
    /// δ^out_max(i) = max_{t ≠ P(i)} δ_{i→P_t}; zero when k = 1.
    delta_out_max: Vec<i64>,
    /// Δ(i) = δ^in(i) − δ^out_max(i).
    big_delta: Vec<i64>,
    /// ν(i); real-valued because the subtracted cross term is rational.
    nu: Vec<f64>,
    /// Row-major k×k matrix of δ_{P_t1→P_t2}.
    pair_degree: Vec<i64>,
}

impl DegreeProfile {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of clusters.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Cluster size m = n/k.
    pub fn m(&self) -> usize {
        self.m
    }

    /// δ_{i→P_t}: neighbours of vertex i inside cluster t.
    pub fn delta_to_cluster(&self, i: usize, t: usize) -> i64 {
        self.delta_to_cluster[i * self.k + t]
    }

    /// Row i of the δ_{i→P_t} matrix, one entry per cluster.
    pub fn cluster_degrees(&self, i: usize) -> &[i64] {
        &self.delta_to_cluster[i * self.k..(i + 1) * self.k]
    }

    /// δ^in(i) for every vertex.
    pub fn delta_in(&self) -> &[i64] {
        &self.delta_in
    }

    /// δ^out_max(i) for every vertex.
    pub fn delta_out_max(&self) -> &[i64] {
        &self.delta_out_max
    }

    /// Δ(i) = δ^in(i) − δ^out_max(i) for every vertex.
    pub fn big_delta(&self) -> &[i64] {
        &self.big_delta
    }

    /// ν(i) for every vertex.
    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    /// δ_{P_t1→P_t2}; the diagonal holds twice the within-cluster edge count.
    pub fn pair_degree(&self, t1: usize, t2: usize) -> i64 {
        self.pair_degree[t1 * self.k + t2]
    }

    /// min_i Δ(i).
    pub fn min_big_delta(&self) -> i64 {
        self.big_delta.iter().copied().min().unwrap_or(0)
    }

    /// min_i ν(i).
    pub fn min_nu(&self) -> f64 {
        self.nu.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// min_{t1 ≠ t2} δ_{P_t1→P_t2}; zero when k < 2.
    pub fn min_cross_pair_degree(&self) -> i64 {
        let mut best: Option<i64> = None;
        for t1 in 0..self.k {
            for t2 in 0..self.k {
                if t1 != t2 {
                    let v = self.pair_degree(t1, t2);
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        best.unwrap_or(0)
    }
}

/// Compute the full degree profile of a graph under a balanced partition.
pub fn compute_profile(g: &Graph, p: &Partition) -> Result<DegreeProfile> {
    if g.n() != p.n() {
        return Err(Error::MismatchedPartition(format!(
            "graph has {} vertices but partition covers {}",
            g.n(),
            p.n()
        )));
    }
    let n = g.n();
    let k = p.k();
    let m = p.m();

    let mut delta_to_cluster = vec![0i64; n * k];
    let mut pair_degree = vec![0i64; k * k];
    for &(i, j) in g.edges() {
        let ti = p.cluster_of(i);
        let tj = p.cluster_of(j);
        delta_to_cluster[i * k + tj] += 1;
        delta_to_cluster[j * k + ti] += 1;
        pair_degree[ti * k + tj] += 1;
        pair_degree[tj * k + ti] += 1;
    }

    let mut delta_in = vec![0i64; n];
    let mut delta_out_max = vec![0i64; n];
    let mut big_delta = vec![0i64; n];
    for i in 0..n {
        let home = p.cluster_of(i);
        delta_in[i] = delta_to_cluster[i * k + home];
        let mut out_max = 0i64;
        for t in 0..k {
            if t != home {
                out_max = out_max.max(delta_to_cluster[i * k + t]);
            }
        }
        delta_out_max[i] = out_max;
        big_delta[i] = delta_in[i] - out_max;
    }

    // The ν correction maximizes δ_{u→P(j)} + δ_{j→P(u)} − δ_{P(j)→P(u)}/(n/k)
    // over cross-cluster ordered pairs (u, j). For a fixed cluster pair (s, t)
    // the two vertex choices decouple, so the pairwise max factors into
    // per-cluster maxima of δ_{·→t} and δ_{·→s}.
    let mut best_to = vec![i64::MIN; k * k];
    for i in 0..n {
        let s = p.cluster_of(i);
        for t in 0..k {
            let v = delta_to_cluster[i * k + t];
            if v > best_to[s * k + t] {
                best_to[s * k + t] = v;
            }
        }
    }
    let mut cross_max = f64::NEG_INFINITY;
    for s in 0..k {
        for t in 0..k {
            if s != t {
                let term = (best_to[s * k + t] + best_to[t * k + s]) as f64
                    - pair_degree[t * k + s] as f64 / m as f64;
                cross_max = cross_max.max(term);
            }
        }
    }
    // A single cluster has no cross pairs; the correction vanishes.
    if k < 2 {
        cross_max = 0.0;
    }
    let nu: Vec<f64> = delta_in.iter().map(|&d| d as f64 - cross_max).collect();

    Ok(DegreeProfile {
        n,
        k,
        m,
        delta_to_cluster,
        delta_in,
        delta_out_max,
        big_delta,
        nu,
        pair_degree,
    })
}

/// Outcome of evaluating a recovery condition on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// Minimum degree margin over all vertices (min Δ(i) or min ν(i)).
    pub lhs: f64,
    /// Noise level ĉ·(...) the margin is compared against.
    pub rhs: f64,
    /// Constant ĉ used for the right-hand side.
    pub c_hat: f64,
    /// Whether lhs ≥ rhs.
    pub satisfied: bool,
}

/// Densities for condition evaluation. Reports are advisory, so parameters
/// outside the sampling range are clamped to [0, 1] instead of rejected.
fn edge_probabilities(params: &SbmParams) -> (f64, f64) {
    match derive_pq(params) {
        Ok(pq) => pq,
        Err(_) => {
            let m = params.m as f64;
            let ln_m = m.ln();
            (
                (params.alpha * ln_m / m).clamp(0.0, 1.0),
                (params.beta * ln_m / m).clamp(0.0, 1.0),
            )
        }
    }
}

/// Evaluate the main recovery condition
/// min_i Δ(i) ≥ ĉ·(√(pn/k + qn) + q√((n/k)·ln n) + √(ln n) + ln k).
pub fn check_condition_main(
    profile: &DegreeProfile,
    params: &SbmParams,
    c_hat: f64,
) -> ConditionReport {
    let (p, q) = edge_probabilities(params);
    let n = params.n() as f64;
    let k = params.k as f64;
    let ln_n = n.ln();
    let rhs = c_hat
        * ((p * n / k + q * n).sqrt() + q * (n / k * ln_n).sqrt() + ln_n.sqrt() + k.ln());
    let lhs = profile.min_big_delta() as f64;
    ConditionReport {
        lhs,
        rhs,
        c_hat,
        satisfied: lhs >= rhs,
    }
}

/// Evaluate the weaker relaxation condition
/// min_i ν(i) ≥ ĉ·(√(pn/k + qn) + √(ln n)).
pub fn check_condition_sdp2(
    profile: &DegreeProfile,
    params: &SbmParams,
    c_hat: f64,
) -> ConditionReport {
    let (p, q) = edge_probabilities(params);
    let n = params.n() as f64;
    let k = params.k as f64;
    let ln_n = n.ln();
    let rhs = c_hat * ((p * n / k + q * n).sqrt() + ln_n.sqrt());
    let lhs = profile.min_nu();
    ConditionReport {
        lhs,
        rhs,
        c_hat,
        satisfied: lhs >= rhs,
    }
}
