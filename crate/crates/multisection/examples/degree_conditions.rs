//! Degree statistics, recovery conditions, and concentration spot-checks.
//!
//! Everything that certifies recovery is built from two per-vertex counts:
//! the in-degree delta_in(i) and the largest out-degree to any other cluster
//! delta_out_max(i). Their margin Delta(i) drives the main recovery
//! condition; concentration checks compare observed spectral and degree
//! quantities against the explicit high-probability bounds they should obey.
//!
//! Run with `cargo run --example degree_conditions`.

use multisection::bounds::{
    degree_deviation_check, edelta_expectation_check, lambda_max_check, optimality_gap_check,
};
use multisection::{check_condition_main, check_condition_sdp2, compute_profile};
use multisection::{Instance, SbmParams};

fn main() {
    let params = SbmParams {
        alpha: 4.0,
        beta: 1.0,
        k: 4,
        m: 50,
        seed: 3,
    };
    let instance = Instance::sample(params).expect("parameters are in range");
    let profile = compute_profile(&instance.graph, &instance.partition)
        .expect("partition matches the graph");
    println!(
        "instance: n = {}, min Delta(i) = {}, min nu(i) = {:.2}",
        instance.graph.n(),
        profile.min_big_delta(),
        profile.min_nu()
    );

    let main = check_condition_main(&profile, &params, 1.0);
    println!(
        "main condition (c = {}): {:.1} >= {:.1} -> {}",
        main.c_hat, main.lhs, main.rhs, main.satisfied
    );
    let weaker = check_condition_sdp2(&profile, &params, 1.0);
    println!(
        "cut-relaxation condition (c = {}): {:.1} >= {:.1} -> {}",
        weaker.c_hat, weaker.lhs, weaker.rhs, weaker.satisfied
    );

    let lam = lambda_max_check(&instance, 2.0).expect("partition matches");
    println!(
        "adjacency spectrum orthogonal to the clusters: {:.2} <= {:.2} -> {}",
        lam.empirical, lam.bound, lam.holds
    );

    let dev = degree_deviation_check(&instance).expect("parameters are in range");
    println!(
        "summed out-degree deviation: {:.2} <= {:.2} -> {}",
        dev.out_sum_lhs, dev.out_sum_rhs, dev.out_sum_holds
    );
    println!(
        "sparsest cluster pair: {:.2} >= {:.2} -> {}",
        dev.min_pair_lhs, dev.min_pair_rhs, dev.min_pair_holds
    );

    let edelta = edelta_expectation_check(&params, 20, 123).expect("parameters are in range");
    println!(
        "mean worst out-degree over {} fresh instances: {:.2} <= {:.2} -> {}",
        edelta.trials, edelta.empirical_mean, edelta.bound, edelta.holds
    );

    let gap = optimality_gap_check(&instance, 0.1).expect("parameters are in range");
    println!(
        "optimality margin (c2 = {}): {:.1} > {:.1} -> {}",
        gap.c2, gap.lhs, gap.rhs, gap.holds
    );
}
