//! Evaluate the closed-form tail bounds and cross-check them by simulation.
//!
//! The bounds module exposes the Chernoff, Bernstein, and Hoeffding tails as
//! plain functions, the two-binomial difference statistic T both by exact
//! enumeration and by seeded Monte Carlo, and the rate function g with the
//! threshold curve it induces.
//!
//! Run with `cargo run --example tail_bounds`.

use multisection::bounds::{
    bernstein_tail, chernoff_simplified_upper, chernoff_upper, g_function, hoeffding_tail,
    t_statistic_exact, t_statistic_mc, threshold_beta,
};

fn main() {
    // P[X >= 2*mu] for X with mean mu = 10: the exact Chernoff form beats
    // the simplified exponent, and both are valid upper bounds.
    let exact = chernoff_upper(10.0, 1.0).expect("delta >= 0");
    let simplified = chernoff_simplified_upper(10.0, 1.0).expect("delta <= 1");
    println!("Chernoff P[X >= 2mu], mu = 10:");
    println!("  exact      {exact:.4e}  ( = (e/4)^10 )");
    println!("  simplified {simplified:.4e}  ( = e^(-10/3) )");
    assert!(exact <= simplified);

    // The same event through Bernstein and Hoeffding for 100 coin flips.
    let bern = bernstein_tail(10.0, 25.0, 1.0).expect("inputs in range");
    let hoef = hoeffding_tail(100, 0.1, &[(0.0, 1.0); 100]).expect("inputs in range");
    println!("100 fair coins, deviation 10 above the mean:");
    println!("  Bernstein  {bern:.4e}");
    println!("  Hoeffding  {hoef:.4e} (two-sided)");

    // T(m, p, q, delta) = P[Bin(m, q) - Bin(m, p) >= delta]: enumeration
    // against Monte Carlo.
    let exact_t = t_statistic_exact(5, 0.6, 0.3, 1.0).expect("m <= 6 enumerates");
    let mc = t_statistic_mc(5, 0.6, 0.3, 1.0, 100_000, 42).expect("inputs in range");
    println!("T(5, 0.6, 0.3, 1):");
    println!("  enumeration {exact_t:.5}");
    println!(
        "  Monte Carlo {:.5} +/- {:.5} ({} trials)",
        mc.estimate, mc.std_error, mc.trials
    );
    assert!((exact_t - mc.estimate).abs() <= 3.0 * mc.std_error);

    // The rate function at epsilon = 0 collapses to (sqrt(alpha)-sqrt(beta))^2,
    // the exponent that separates recovery from failure.
    let g = g_function(4.0, 1.0, 0.0).expect("inputs in range");
    println!("g(4, 1, 0) = {g:.12} (closed form gives 1)");

    println!("threshold curve beta = (sqrt(alpha) - 1)^2:");
    for alpha in [1.0, 2.0, 4.0, 9.0, 16.0] {
        let beta = threshold_beta(alpha).expect("alpha >= 1");
        println!("  alpha = {alpha:>4}: beta = {beta:.4}");
    }
}
