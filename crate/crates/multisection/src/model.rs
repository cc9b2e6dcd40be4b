//! Stochastic block model instances: parameters, partitions, graphs, and
//! seeded sampling.
//!
//! A planted-multisection instance has `n = k·m` vertices split into `k`
//! clusters of `m` vertices each. Within-cluster vertex pairs receive an edge
//! independently with probability `p = α·ln(m)/m` and cross-cluster pairs
//! with probability `q = β·ln(m)/m`, with `p > q` (homophilic regime).
//! Natural logarithms throughout.
//!
//! Sampling is a pure function of the parameters: the RNG is ChaCha8 seeded
//! from the 64-bit seed, and vertex pairs are visited in a fixed order, so
//! the same parameters always produce byte-identical graphs. The generator
//! name is recorded in serialized instances (`"rng"` key) for cross-machine
//! reproducibility audits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Mat;

/// Name of the pseudo-random generator used by all samplers.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Parameters of the planted-multisection distribution G_{p,q,k}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbmParams {
    /// Within-cluster density coefficient: p = alpha·ln(m)/m.
    pub alpha: f64,
    /// Cross-cluster density coefficient: q = beta·ln(m)/m.
    pub beta: f64,
    /// Number of clusters (≥ 2).
    pub k: usize,
    /// Cluster size (≥ 2).
    pub m: usize,
    /// RNG seed; sampling is a pure function of (params, seed).
    pub seed: u64,
}

impl SbmParams {
    /// Total vertex count n = k·m.
    pub fn n(&self) -> usize {
        self.k * self.m
    }

    /// Check the structural invariants: k ≥ 2, m ≥ 2, alpha > beta ≥ 0,
    /// and derived probabilities 0 ≤ q < p ≤ 1.
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::ParamOutOfRange(format!("k must be ≥ 2, got {}", self.k)));
        }
        if self.m < 2 {
            return Err(Error::ParamOutOfRange(format!("m must be ≥ 2, got {}", self.m)));
        }
        if !self.alpha.is_finite() || !self.beta.is_finite() {
            return Err(Error::ParamOutOfRange("alpha and beta must be finite".into()));
        }
        if self.beta < 0.0 {
            return Err(Error::ParamOutOfRange(format!("beta must be ≥ 0, got {}", self.beta)));
        }
        if self.alpha <= self.beta {
            return Err(Error::ParamOutOfRange(format!(
                "homophilic regime needs alpha > beta, got alpha={} beta={}",
                self.alpha, self.beta
            )));
        }
        derive_pq(self).map(|_| ())
    }
}

/// Derived edge probabilities (p, q) with p = alpha·ln(m)/m, q = beta·ln(m)/m.
///
/// p > 1 is a hard error rather than a clamp: silently capping the density
/// would distort phase diagrams.
pub fn derive_pq(params: &SbmParams) -> Result<(f64, f64)> {
    let m = params.m as f64;
    let ln_m = m.ln();
    let p = params.alpha * ln_m / m;
    let q = params.beta * ln_m / m;
    if q < 0.0 {
        return Err(Error::ParamOutOfRange(format!("derived q = {q} is negative")));
    }
    // Tolerate one-ulp overshoot when alpha = m/ln(m) is meant to give p = 1
    // exactly; anything beyond rounding noise is a real parameter error.
    if p > 1.0 + 1e-12 {
        return Err(Error::ParamOutOfRange(format!(
            "derived p = {p:.6} exceeds 1 (alpha={}, m={})",
            params.alpha, params.m
        )));
    }
    Ok((p.min(1.0), q))
}

/// A balanced assignment of n = k·m vertices to k clusters of size m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
    m: usize,
}

impl Partition {
    /// Validate and wrap an assignment. Every cluster index in [0, k) must
    /// appear exactly n/k times.
    pub fn new(assignment: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::MismatchedPartition("k must be ≥ 1".into()));
        }
        let n = assignment.len();
        if n == 0 || n % k != 0 {
            return Err(Error::MismatchedPartition(format!(
                "cannot split {n} vertices into {k} equal clusters"
            )));
        }
        let m = n / k;
        let mut counts = vec![0usize; k];
        for (v, &t) in assignment.iter().enumerate() {
            if t >= k {
                return Err(Error::MismatchedPartition(format!(
                    "vertex {v} assigned to cluster {t}, but k = {k}"
                )));
            }
            counts[t] += 1;
        }
        if counts.iter().any(|&c| c != m) {
            return Err(Error::MismatchedPartition(format!(
                "unbalanced clusters: sizes {counts:?}, expected {m} each"
            )));
        }
        Ok(Partition { assignment, k, m })
    }

    /// The contiguous blocking: vertices [t·m, (t+1)·m) form cluster t.
    pub fn contiguous(k: usize, m: usize) -> Self {
        let assignment = (0..k * m).map(|v| v / m).collect();
        Partition { assignment, k, m }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Cluster size m = n/k.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// Cluster index of vertex v, written P(v).
    pub fn cluster_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Raw assignment slice.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Members of cluster t in ascending vertex order.
    pub fn members(&self, t: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(v, &c)| (c == t).then_some(v))
            .collect()
    }

    /// 0/1 indicator vector of cluster t (the vector v_t).
    pub fn indicator(&self, t: usize) -> Vec<f64> {
        self.assignment
            .iter()
            .map(|&c| if c == t { 1.0 } else { 0.0 })
            .collect()
    }
}

/// Undirected simple graph with dense adjacency storage.
///
/// The adjacency matrix is symmetric 0/1 with zero diagonal; the edge list
/// mirror is kept sorted lexicographically with i < j in every pair, and the
/// two representations agree by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u8>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Graph with n vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![0; n * n],
            edges: Vec::new(),
        }
    }

    /// Build from an edge list. Pairs may come in any order and orientation;
    /// self-loops, duplicates, and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![0u8; n * n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::BadDimensions(format!(
                    "edge ({a},{b}) out of range for n = {n}"
                )));
            }
            if a == b {
                return Err(Error::BadDimensions(format!("self-loop at vertex {a}")));
            }
            if adj[a * n + b] != 0 {
                return Err(Error::BadDimensions(format!("duplicate edge ({a},{b})")));
            }
            adj[a * n + b] = 1;
            adj[b * n + a] = 1;
        }
        Ok(Graph::from_adj(n, adj))
    }

    /// Build from a dense 0/1 adjacency buffer that is already symmetric
    /// with a zero diagonal. Internal constructor for samplers.
    pub(crate) fn from_adj(n: usize, adj: Vec<u8>) -> Self {
        debug_assert_eq!(adj.len(), n * n);
        let mut edges = Vec::new();
        for i in 0..n {
            debug_assert_eq!(adj[i * n + i], 0, "diagonal must be zero");
            for j in (i + 1)..n {
                debug_assert_eq!(adj[i * n + j], adj[j * n + i], "adjacency must be symmetric");
                if adj[i * n + j] != 0 {
                    edges.push((i, j));
                }
            }
        }
        Graph { n, adj, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j] != 0
    }

    /// Sorted edge list with i < j in every pair.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&x| x as usize)
            .sum()
    }

    /// Dense adjacency matrix A(G) as f64.
    pub fn adjacency(&self) -> Mat {
        Mat::from_fn(self.n, self.n, |i, j| f64::from(self.adj[i * self.n + j]))
    }

    /// Raw adjacency entry as an integer.
    pub fn adj_entry(&self, i: usize, j: usize) -> u8 {
        self.adj[i * self.n + j]
    }
}

/// Sample a graph and its planted partition from G_{p,q,k}.
///
/// The planted partition is the contiguous blocking. Every vertex pair is
/// visited in fixed lexicographic order and sampled i.i.d. Bernoulli(p) or
/// Bernoulli(q), so the output is deterministic per seed.
pub fn sample_graph(params: &SbmParams) -> Result<(Graph, Partition)> {
    params.validate()?;
    let (p, q) = derive_pq(params)?;
    let partition = Partition::contiguous(params.k, params.m);
    let n = params.n();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut adj = vec![0u8; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let prob = if partition.cluster_of(i) == partition.cluster_of(j) {
                p
            } else {
                q
            };
            if rng.gen_bool(prob) {
                adj[i * n + j] = 1;
                adj[j * n + i] = 1;
            }
        }
    }
    Ok((Graph::from_adj(n, adj), partition))
}

/// The integral solution matrix Y* of a partition: Y*[i,j] = 1 when i and j
/// share a cluster, 0 otherwise. Block-diagonal 0/1 with unit diagonal; every
/// row sums to m.
pub fn planted_matrix(p: &Partition) -> Mat {
    let n = p.n();
    Mat::from_fn(n, n, |i, j| {
        if p.cluster_of(i) == p.cluster_of(j) {
            1.0
        } else {
            0.0
        }
    })
}

/// Relabel vertices by a seeded random permutation.
///
/// Sampling always plants the contiguous blocking so fixtures stay readable;
/// this optional shuffle hides the block structure for algorithms that might
/// accidentally exploit vertex order. Returns the permuted graph and the
/// matching permuted partition.
pub fn shuffle_vertices(g: &Graph, p: &Partition, seed: u64) -> (Graph, Partition) {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Fisher-Yates; perm[v] is the new label of old vertex v.
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut adj = vec![0u8; n * n];
    for &(a, b) in g.edges() {
        let (x, y) = (perm[a], perm[b]);
        adj[x * n + y] = 1;
        adj[y * n + x] = 1;
    }
    let mut assignment = vec![0usize; n];
    for v in 0..n {
        assignment[perm[v]] = p.cluster_of(v);
    }
    let graph = Graph::from_adj(n, adj);
    let partition = Partition::new(assignment, p.k()).expect("permutation preserves balance");
    (graph, partition)
}

/// A sampled instance bundling parameters, graph, and planted partition.
///
/// Serializes to the interchange JSON used by the CLI:
/// `{"n", "k", "m", "seed", "alpha", "beta", "edges", "partition", "rng"}`
/// with edges as `[i, j]` pairs, i < j, sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub params: SbmParams,
    pub graph: Graph,
    pub partition: Partition,
}

impl Instance {
    /// Sample an instance from the model.
    pub fn sample(params: SbmParams) -> Result<Self> {
        let (graph, partition) = sample_graph(&params)?;
        Ok(Instance {
            params,
            graph,
            partition,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    n: usize,
    k: usize,
    m: usize,
    seed: u64,
    alpha: f64,
    beta: f64,
    edges: Vec<(usize, usize)>,
    partition: Vec<usize>,
    /// Generator used to sample the instance; absent in hand-written files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rng: Option<String>,
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = InstanceRepr {
            n: self.graph.n(),
            k: self.params.k,
            m: self.params.m,
            seed: self.params.seed,
            alpha: self.params.alpha,
            beta: self.params.beta,
            edges: self.graph.edges().to_vec(),
            partition: self.partition.assignment().to_vec(),
            rng: Some(RNG_ALGORITHM.to_string()),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = InstanceRepr::deserialize(deserializer)?;
        if repr.n != repr.k * repr.m {
            return Err(D::Error::custom(format!(
                "n = {} does not equal k·m = {}·{}",
                repr.n, repr.k, repr.m
            )));
        }
        if repr.partition.len() != repr.n {
            return Err(D::Error::custom(format!(
                "partition length {} does not match n = {}",
                repr.partition.len(),
                repr.n
            )));
        }
        let params = SbmParams {
            alpha: repr.alpha,
            beta: repr.beta,
            k: repr.k,
            m: repr.m,
            seed: repr.seed,
        };
        params.validate().map_err(D::Error::custom)?;
        let graph = Graph::from_edges(repr.n, &repr.edges).map_err(D::Error::custom)?;
        let partition = Partition::new(repr.partition, repr.k).map_err(D::Error::custom)?;
        Ok(Instance {
            params,
            graph,
            partition,
        })
    }
}
