//! Sample a planted-multisection instance and round-trip it through JSON.
//!
//! The model puts n = k*m vertices into k hidden clusters of size m and
//! connects within-cluster pairs with probability p = alpha*ln(m)/m and
//! cross-cluster pairs with probability q = beta*ln(m)/m. Sampling is a pure
//! function of the parameters, so the same seed always gives the same graph.
//!
//! Run with `cargo run --example generate_instance`.

use multisection::{derive_pq, Instance, SbmParams};

fn main() {
    let params = SbmParams {
        alpha: 4.0,
        beta: 1.0,
        k: 3,
        m: 20,
        seed: 7,
    };
    let (p, q) = derive_pq(&params).expect("parameters are in range");
    println!(
        "model: k = {} clusters of m = {} vertices (n = {})",
        params.k,
        params.m,
        params.n()
    );
    println!("densities: p = {p:.4} within, q = {q:.4} across");

    let instance = Instance::sample(params).expect("sampling in-range parameters succeeds");
    let m = params.m as f64;
    let k = params.k as f64;
    let expected = k * m * (m - 1.0) / 2.0 * p + k * (k - 1.0) / 2.0 * m * m * q;
    println!(
        "sampled {} edges (expected about {:.0})",
        instance.graph.edge_count(),
        expected
    );
    for t in 0..params.k {
        println!(
            "cluster {t}: vertices {:?}...",
            &instance.partition.members(t)[..4]
        );
    }

    let again = Instance::sample(params).expect("same parameters");
    assert_eq!(again, instance, "sampling is deterministic per seed");
    let other = Instance::sample(SbmParams { seed: 8, ..params }).expect("same model, new seed");
    assert_ne!(other.graph, instance.graph, "a new seed gives a new graph");
    println!("resampling with the same seed reproduced the instance exactly");

    let json = serde_json::to_string_pretty(&instance).expect("instances serialize");
    let back: Instance = serde_json::from_str(&json).expect("and parse back");
    assert_eq!(back, instance);
    let first_lines: Vec<&str> = json.lines().take(7).collect();
    println!("JSON round trip ok; the file starts with:");
    println!("{}", first_lines.join("\n"));
}
