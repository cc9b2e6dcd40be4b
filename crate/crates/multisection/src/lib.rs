//! Planted multisection in the stochastic block model.
//!
//! This crate implements the full pipeline for studying exact recovery of a
//! planted balanced k-partition ("multisection") from a random graph:
//!
//! * [`model`]: seeded samplers for G_{p,q,k} graphs with `n = k·m` vertices
//!   split into `k` clusters of size `m`, where within-cluster pairs are
//!   connected with probability `p = α·ln(m)/m` and cross-cluster pairs with
//!   probability `q = β·ln(m)/m`.
//! * [`degrees`]: per-vertex and per-cluster degree statistics (δ quantities)
//!   and the two sufficiency conditions built from them.
//! * [`sdp`]: a consensus-ADMM solver for semidefinite programs of the form
//!   `max C•Y` over the intersection of the PSD cone, an affine row-sum
//!   block, and elementwise bounds with a pinned diagonal.
//! * [`relax`]: the two SDP relaxations of multisection (a balanced row-sum
//!   form and a Max-k-Cut form), integrality detection, and rounding.
//! * [`certificate`]: an explicit dual certificate that proves optimality
//!   (and uniqueness) of the planted partition for the row-sum relaxation
//!   without solving the SDP.
//! * [`adversary`]: a monotone adversary that adds within-cluster edges and
//!   removes cross-cluster edges, plus the objective-shift identity it obeys.
//! * [`bounds`]: evaluable tail bounds (Chernoff, Bernstein, Hoeffding),
//!   the T-statistic and its rate function, threshold curves, and
//!   concentration spot-checks with Monte-Carlo cross-validation.
//! * [`lift`]: the multireference-alignment lifting `Z ↦ Z^(k)`, its PSD
//!   equivalence, and the change of variables linking the two relaxations.
//! * [`sweep`]: phase-diagram experiments over an (α, β) grid with CSV and
//!   SVG heatmap output.
//! * [`cli`]: the command-line front end (`generate`, `solve`, `certify`,
//!   `adversary`, `bounds`, `sweep`).
//!
//! Numerical kernels (dense symmetric eigendecomposition, projections) live
//! in [`linalg`]. All randomness is seeded and reproducible: samplers are
//! pure functions of their parameters, and parallel sweeps derive per-task
//! seeds so results do not depend on scheduling.

pub mod adversary;
pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod degrees;
pub mod error;
pub mod lift;
pub mod linalg;
pub mod model;
pub mod relax;
pub mod rng;
pub mod sdp;
pub mod sweep;

#[cfg(test)]
pub(crate) mod oracles;

pub use degrees::{
    check_condition_main, check_condition_sdp2, compute_profile, ConditionReport, DegreeProfile,
};
pub use error::{Error, Result};
pub use linalg::{eig_symmetric, Mat};
pub use model::{derive_pq, planted_matrix, sample_graph, Graph, Instance, Partition, SbmParams};
