//! Recovery survives an adversary that is only allowed to help... or is it?
//!
//! A monotone adversary may add within-cluster edges and delete cross-cluster
//! edges. Each edit moves the planted partition further ahead of every
//! competitor, so certified recovery is preserved no matter how the edits are
//! chosen; this example applies a random batch of them and re-checks both the
//! certificate and the solver. The objective-shift identity pins down exactly
//! how much the planted objective moved: 2*(added edges).
//!
//! Run with `cargo run --example monotone_adversary`.

use multisection::adversary::{objective_shift_check, random_monotone};
use multisection::certificate::{certify, DEFAULT_STRICT_GAP};
use multisection::model::{Instance, SbmParams};
use multisection::relax::{detect_integrality, RelaxationKind, DEFAULT_TOL_ENTRY};
use multisection::sdp::{solve, SolveSettings};

fn main() {
    let instance = Instance::sample(SbmParams {
        alpha: 4.0,
        beta: 1.0,
        k: 2,
        m: 15,
        seed: 5,
    })
    .expect("parameters are in range");

    let before = certify(&instance.graph, &instance.partition, DEFAULT_STRICT_GAP)
        .expect("certification runs");
    println!(
        "base instance: {} edges, verified = {}, unique = {}",
        instance.graph.edge_count(),
        before.verified,
        before.unique
    );
    assert!(before.unique, "start from a certified-unique instance");

    let (perturbed, log) = random_monotone(&instance.graph, &instance.partition, 0.3, 0.3, 99);
    println!(
        "adversary: added {} within-cluster edges, removed {} cross-cluster edges",
        log.r_plus, log.r_minus
    );
    println!(
        "objective shift identity (2 x additions) holds: {}",
        objective_shift_check(&instance.graph, &perturbed, &log, &instance.partition)
    );

    let after = certify(&perturbed, &instance.partition, DEFAULT_STRICT_GAP)
        .expect("certification runs");
    println!(
        "perturbed instance: {} edges, verified = {}, unique = {}",
        perturbed.edge_count(),
        after.verified,
        after.unique
    );

    let problem = multisection::relax::build(RelaxationKind::BalancedRowSum, &perturbed, 2)
        .expect("k divides n");
    let out = solve(&problem, &SolveSettings::default()).expect("solver runs");
    let verdict = detect_integrality(&out.y, RelaxationKind::BalancedRowSum, 2, DEFAULT_TOL_ENTRY);
    assert_eq!(
        verdict.recovered.as_ref(),
        Some(&instance.partition),
        "the solver still finds the planted partition"
    );
    println!(
        "solver on the perturbed graph recovers the planted partition ({} iterations)",
        out.iterations
    );
}
