//! Prove that the planted partition is optimal without solving the SDP.
//!
//! The dual certificate (D*, x*, Z*) is assembled in closed form from degree
//! counts. When its slack matrix M* is PSD on the subspace orthogonal to the
//! cluster indicators, the planted partition matrix is an optimum of the
//! row-sum relaxation; a strictly positive spectrum there makes it unique.
//! Verification costs one eigendecomposition instead of an SDP solve.
//!
//! Run with `cargo run --example certify_optimality`.

use multisection::certificate::{certify, DEFAULT_STRICT_GAP};
use multisection::{compute_profile, Instance, SbmParams};

fn report(label: &str, instance: &Instance) {
    let report = certify(&instance.graph, &instance.partition, DEFAULT_STRICT_GAP)
        .expect("certification runs");
    println!("{label}:");
    println!(
        "  verified = {}, unique = {}",
        report.verified, report.unique
    );
    println!(
        "  smallest orthogonal eigenvalue = {:.6}, smallest Z entry = {:.3}",
        report.min_eig_orthogonal, report.z_min
    );

    let profile = compute_profile(&instance.graph, &instance.partition)
        .expect("partition matches the graph");
    let delta_in_sum: i64 = profile.delta_in().iter().sum();
    println!(
        "  dual objective = {:.6} (sum of in-degrees = {delta_in_sum})",
        report.dual_objective
    );
}

fn main() {
    // Disjoint cliques (p = 1, q = 0): the easiest input. The orthogonal
    // spectrum sits exactly at m.
    let m = 10f64;
    let cliques = Instance::sample(SbmParams {
        alpha: m / m.ln(),
        beta: 0.0,
        k: 3,
        m: 10,
        seed: 1,
    })
    .expect("p = 1 is still in range");
    report("disjoint cliques", &cliques);

    // A noisy instance comfortably inside the recovery regime.
    let noisy = Instance::sample(SbmParams {
        alpha: 5.0,
        beta: 0.5,
        k: 3,
        m: 15,
        seed: 2,
    })
    .expect("parameters are in range");
    report("noisy recoverable instance", &noisy);

    // Almost no signal: alpha barely above beta. The certificate rejects.
    let hard = Instance::sample(SbmParams {
        alpha: 1.3,
        beta: 1.1,
        k: 3,
        m: 15,
        seed: 3,
    })
    .expect("parameters are in range");
    report("near-threshold instance", &hard);
}
