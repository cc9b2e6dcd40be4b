//! A desk-scale phase diagram: where does the relaxation stay integral?
//!
//! Sweeps a small (alpha, beta) grid, solving a few instances per cell and
//! counting how many were integral (certificate-confirmed, so no solver
//! tolerance is trusted). The text rendering below prints the integral count
//! per cell; the same result is written as `phase_diagram.csv` and as the
//! greyscale heatmap `phase_diagram.svg` with the threshold curve
//! beta = (sqrt(alpha) - 1)^2 overlaid in red.
//!
//! Run with `cargo run --release --example phase_diagram`.

use std::fs;

use multisection::relax::RelaxationKind;
use multisection::sdp::SolveSettings;
use multisection::sweep::{render_svg, run_sweep, write_csv, SweepGrid};

fn main() {
    let grid = SweepGrid {
        alpha_min: 1.0,
        alpha_max: 4.5,
        alpha_steps: 6,
        beta_min: 0.0,
        beta_max: 2.5,
        beta_steps: 6,
        k: 3,
        m: 12,
        trials: 4,
        base_seed: 2024,
        relaxation: RelaxationKind::BalancedRowSum,
    };
    let settings = SolveSettings {
        tol_primal: 1e-5,
        tol_dual: 1e-5,
        max_iter: 3000,
        ..SolveSettings::default()
    };
    println!(
        "sweeping a {}x{} grid at k = {}, m = {}, {} trials per cell...",
        grid.alpha_steps, grid.beta_steps, grid.k, grid.m, grid.trials
    );
    let result = run_sweep(&grid, &settings).expect("grid and settings are valid");

    println!("integral count per cell ('.' = parameters out of range):");
    for bi in (0..grid.beta_steps).rev() {
        let mut row = format!("  beta {:>4.2} | ", grid.beta_value(bi));
        for ai in 0..grid.alpha_steps {
            match result.cell(ai, bi) {
                Some(cell) => row.push_str(&format!("{} ", cell.integral_count)),
                None => row.push_str(". "),
            }
        }
        println!("{row}");
    }
    let labels: Vec<String> = (0..grid.alpha_steps)
        .map(|ai| format!("{:.1}", grid.alpha_value(ai)))
        .collect();
    println!("             alpha = {}", labels.join(", "));

    let mut csv = Vec::new();
    write_csv(&result, &mut csv).expect("writing to memory cannot fail");
    fs::write("phase_diagram.csv", &csv).expect("write the CSV next to the working directory");
    fs::write("phase_diagram.svg", render_svg(&result)).expect("write the SVG");
    println!("wrote phase_diagram.csv and phase_diagram.svg");
}
