//! Phase-diagram sweeps over an (alpha, beta) parameter grid.
//!
//! A sweep fixes k and m, lays an evenly spaced grid over (alpha, beta), and
//! solves `trials` independent instances per cell, reporting the fraction of
//! them on which the relaxation was integral. For the row-sum relaxation a
//! trial counts as integral only when the dual certificate confirms the
//! rounded partition as the unique optimum, so the fraction never rests on
//! solver tolerances alone; the solver is probed periodically and stops as
//! soon as a rounded iterate certifies. The cut relaxation has no
//! certificate, so its counts are entrywise-pattern decisions and the CSV
//! says so in a trailing comment.
//!
//! Cells whose parameters leave the model's range (alpha <= beta, or a
//! within-cluster probability above 1) are recorded as missing rather than
//! failing the sweep. Output is a CSV table and an SVG heatmap in which
//! lighter grey means a higher fraction, missing cells are blue, and the
//! threshold curve beta = (sqrt(alpha) - 1)^2 is drawn in red.
//!
//! Cells and trials run in parallel. Every trial derives its own seed from
//! (base_seed, cell index, trial index), so output is byte-identical across
//! thread schedules.

use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::threshold_beta;
use crate::certificate::{certify, DEFAULT_STRICT_GAP};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::model::{Instance, Partition, SbmParams};
use crate::relax::{
    build, confirm_with_certificate, detect_integrality, round_solution, RelaxationKind,
    DEFAULT_TOL_ENTRY,
};
use crate::rng::derive_seed;
use crate::sdp::{solve, solve_inner, SolveSettings};

/// Default number of independent instances per grid cell.
pub const DEFAULT_TRIALS: usize = 10;

/// How often (in ADMM iterations) a row-sum trial tries to round and certify
/// the current iterate.
const PROBE_PERIOD: usize = 25;

/// An evenly spaced (alpha, beta) grid with fixed k, m and per-cell trials.
///
/// Each axis takes `steps` values from `min` to `max` inclusive (a single
/// step sits at `min`). Cell (ai, bi) pairs the ai-th alpha with the bi-th
/// beta and is stored at index `ai * beta_steps + bi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    /// Smallest alpha value on the axis.
    pub alpha_min: f64,
    /// Largest alpha value on the axis.
    pub alpha_max: f64,
    /// Number of alpha values.
    pub alpha_steps: usize,
    /// Smallest beta value on the axis.
    pub beta_min: f64,
    /// Largest beta value on the axis.
    pub beta_max: f64,
    /// Number of beta values.
    pub beta_steps: usize,
    /// Cluster count.
    pub k: usize,
    /// Cluster size.
    pub m: usize,
    /// Independent instances per cell.
    pub trials: usize,
    /// Seed all per-trial seeds are derived from.
    pub base_seed: u64,
    /// Which relaxation each trial solves.
    pub relaxation: RelaxationKind,
}

/// Value of an evenly spaced axis at one index.
fn axis_value(min: f64, max: f64, steps: usize, idx: usize) -> f64 {
    if steps <= 1 {
        min
    } else {
        min + (max - min) * idx as f64 / (steps - 1) as f64
    }
}

impl SweepGrid {
    /// Check the grid invariants: at least one step per axis, at least one
    /// trial, finite ordered bounds, k >= 2 and m >= 2.
    pub fn validate(&self) -> Result<()> {
        if self.alpha_steps == 0 || self.beta_steps == 0 {
            return Err(Error::ParamOutOfRange(
                "each grid axis needs at least one step".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::ParamOutOfRange("trials must be at least 1".into()));
        }
        let bounds = [self.alpha_min, self.alpha_max, self.beta_min, self.beta_max];
        if bounds.iter().any(|v| !v.is_finite()) {
            return Err(Error::ParamOutOfRange("grid bounds must be finite".into()));
        }
        if self.alpha_max < self.alpha_min || self.beta_max < self.beta_min {
            return Err(Error::ParamOutOfRange(
                "grid maxima must not lie below minima".into(),
            ));
        }
        if self.k < 2 || self.m < 2 {
            return Err(Error::ParamOutOfRange("grids need k >= 2 and m >= 2".into()));
        }
        Ok(())
    }

    /// The ai-th alpha value.
    pub fn alpha_value(&self, ai: usize) -> f64 {
        axis_value(self.alpha_min, self.alpha_max, self.alpha_steps, ai)
    }

    /// The bi-th beta value.
    pub fn beta_value(&self, bi: usize) -> f64 {
        axis_value(self.beta_min, self.beta_max, self.beta_steps, bi)
    }

    /// Storage index of cell (ai, bi): alpha-major order.
    pub fn cell_index(&self, ai: usize, bi: usize) -> usize {
        ai * self.beta_steps + bi
    }

    /// Total number of grid cells.
    pub fn cells(&self) -> usize {
        self.alpha_steps * self.beta_steps
    }
}

/// Aggregated outcome of the trials at one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    /// Within-cluster density parameter of this cell.
    pub alpha: f64,
    /// Cross-cluster density parameter of this cell.
    pub beta: f64,
    /// Number of instances solved.
    pub trials: usize,
    /// How many of them were integral.
    pub integral_count: usize,
    /// integral_count / trials.
    pub fraction: f64,
    /// Mean ADMM iterations across the cell's trials.
    pub mean_solver_iters: f64,
}

/// A completed sweep: the grid and one optional cell per grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// The grid that was swept.
    pub grid: SweepGrid,
    /// Cells in alpha-major order; `None` marks parameter combinations the
    /// model rejects (alpha <= beta, or derived p > 1).
    pub cells: Vec<Option<SweepCell>>,
}

impl SweepResult {
    /// Cell at grid position (ai, bi), if its parameters were in range.
    ///
    /// # Panics
    ///
    /// Panics if ai or bi lies outside the grid.
    pub fn cell(&self, ai: usize, bi: usize) -> Option<&SweepCell> {
        self.cells[self.grid.cell_index(ai, bi)].as_ref()
    }
}

/// What one solved instance contributed to its cell.
struct TrialOutcome {
    integral: bool,
    iterations: usize,
}

/// Solve one instance and decide integrality.
///
/// Row-sum trials ask the solver to stop as soon as the thresholded iterate
/// rounds to a partition whose certificate is verified and unique; if that
/// never happens the final iterate is checked once more after the solve.
/// Either way the integral verdict is certificate-backed. Cut trials solve
/// to convergence and use the entrywise verdict.
fn run_trial(
    grid: &SweepGrid,
    settings: &SolveSettings,
    params: SbmParams,
) -> Result<TrialOutcome> {
    let inst = Instance::sample(params)?;
    let problem = build(grid.relaxation, &inst.graph, grid.k)?;
    match grid.relaxation {
        RelaxationKind::BalancedRowSum => {
            let graph = &inst.graph;
            let k = grid.k;
            let mut certified = false;
            let mut rejected: Option<Partition> = None;
            let mut probe = |y: &Mat, iter: usize| -> bool {
                if iter == 0 || iter % PROBE_PERIOD != 0 {
                    return false;
                }
                let Ok(p) = round_solution(y, RelaxationKind::BalancedRowSum, k) else {
                    return false;
                };
                // Certifying is an eigendecomposition; skip a partition that
                // already failed once.
                if rejected.as_ref() == Some(&p) {
                    return false;
                }
                match certify(graph, &p, DEFAULT_STRICT_GAP) {
                    Ok(report) if report.verified && report.unique => {
                        certified = true;
                        true
                    }
                    _ => {
                        rejected = Some(p);
                        false
                    }
                }
            };
            let out = solve_inner(&problem, settings, Some(&mut probe))?;
            if certified {
                return Ok(TrialOutcome {
                    integral: true,
                    iterations: out.iterations,
                });
            }
            let verdict = detect_integrality(
                &out.y,
                RelaxationKind::BalancedRowSum,
                k,
                DEFAULT_TOL_ENTRY,
            );
            let verdict = confirm_with_certificate(verdict, RelaxationKind::BalancedRowSum, graph)?;
            Ok(TrialOutcome {
                integral: verdict.certificate_confirmed == Some(true),
                iterations: out.iterations,
            })
        }
        RelaxationKind::MaxKCut => {
            let out = solve(&problem, settings)?;
            let verdict = detect_integrality(&out.y, RelaxationKind::MaxKCut, grid.k, DEFAULT_TOL_ENTRY);
            Ok(TrialOutcome {
                integral: verdict.is_integral,
                iterations: out.iterations,
            })
        }
    }
}

/// Run all trials of one cell, or report it missing if its parameters are
/// out of range.
fn run_cell(grid: &SweepGrid, settings: &SolveSettings, idx: usize) -> Result<Option<SweepCell>> {
    let alpha = grid.alpha_value(idx / grid.beta_steps);
    let beta = grid.beta_value(idx % grid.beta_steps);
    let template = SbmParams {
        alpha,
        beta,
        k: grid.k,
        m: grid.m,
        seed: 0,
    };
    if let Err(err) = template.validate() {
        return match err {
            Error::ParamOutOfRange(_) => Ok(None),
            other => Err(other),
        };
    }
    let outcomes = (0..grid.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = derive_seed(grid.base_seed, idx as u64, trial as u64);
            run_trial(grid, settings, SbmParams { seed, ..template })
        })
        .collect::<Result<Vec<_>>>()?;
    let integral_count = outcomes.iter().filter(|o| o.integral).count();
    let iter_sum: usize = outcomes.iter().map(|o| o.iterations).sum();
    Ok(Some(SweepCell {
        alpha,
        beta,
        trials: grid.trials,
        integral_count,
        fraction: integral_count as f64 / grid.trials as f64,
        mean_solver_iters: iter_sum as f64 / grid.trials as f64,
    }))
}

/// Sweep the whole grid, cells and trials in parallel.
pub fn run_sweep(grid: &SweepGrid, settings: &SolveSettings) -> Result<SweepResult> {
    grid.validate()?;
    settings.validate()?;
    let cells = (0..grid.cells())
        .into_par_iter()
        .map(|idx| run_cell(grid, settings, idx))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        grid: grid.clone(),
        cells,
    })
}

/// Write a sweep as CSV with header `alpha,beta,trials,integral_count,fraction`.
///
/// Rows appear in alpha-major grid order; missing cells are omitted. For the
/// cut relaxation a trailing `# certified=false` comment records that its
/// integral counts are entrywise-pattern decisions without a certificate.
pub fn write_csv<W: io::Write>(result: &SweepResult, w: &mut W) -> io::Result<()> {
    writeln!(w, "alpha,beta,trials,integral_count,fraction")?;
    for cell in result.cells.iter().flatten() {
        writeln!(
            w,
            "{},{},{},{},{}",
            cell.alpha, cell.beta, cell.trials, cell.integral_count, cell.fraction
        )?;
    }
    if result.grid.relaxation == RelaxationKind::MaxKCut {
        writeln!(w, "# certified=false")?;
    }
    Ok(())
}

/// Side length of one heatmap cell in pixels.
const CELL_PX: f64 = 40.0;
/// Margins around the plot area (left holds the beta labels, bottom alpha).
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 52.0;
/// Fill for missing cells: blue, so it cannot be read as a grey fraction.
const MISSING_FILL: &str = "rgb(70,110,180)";

/// Greyscale fill for a fraction: black at 0, white at 1, lighter = higher.
fn grey(fraction: f64) -> String {
    let v = (fraction.clamp(0.0, 1.0) * 255.0).round() as u8;
    format!("rgb({v},{v},{v})")
}

/// Horizontal pixel of an alpha value; axis values sit at cell centers.
fn x_pixel(grid: &SweepGrid, alpha: f64) -> f64 {
    let per_cell = if grid.alpha_steps > 1 {
        (grid.alpha_max - grid.alpha_min) / (grid.alpha_steps - 1) as f64
    } else {
        1.0
    };
    MARGIN_LEFT + (0.5 + (alpha - grid.alpha_min) / per_cell) * CELL_PX
}

/// Vertical pixel of a beta value; beta grows upward from the bottom row.
fn y_pixel(grid: &SweepGrid, beta: f64) -> f64 {
    let per_cell = if grid.beta_steps > 1 {
        (grid.beta_max - grid.beta_min) / (grid.beta_steps - 1) as f64
    } else {
        1.0
    };
    let plot_h = grid.beta_steps as f64 * CELL_PX;
    MARGIN_TOP + plot_h - (0.5 + (beta - grid.beta_min) / per_cell) * CELL_PX
}

/// Render a sweep as an SVG heatmap.
///
/// Cell (ai, bi) is a 40 px square; alpha grows to the right and beta grows
/// upward. Present cells are filled with the grey of their fraction (see
/// [`grey`]: lighter = higher), missing cells with blue. The threshold curve
/// beta = (sqrt(alpha) - 1)^2 is drawn in red, split into segments wherever
/// it leaves the plotted beta range.
pub fn render_svg(result: &SweepResult) -> String {
    let grid = &result.grid;
    let plot_w = grid.alpha_steps as f64 * CELL_PX;
    let plot_h = grid.beta_steps as f64 * CELL_PX;
    let width = MARGIN_LEFT + plot_w + MARGIN_RIGHT;
    let height = MARGIN_TOP + plot_h + MARGIN_BOTTOM;
    let font = "font-family=\"sans-serif\"";

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    );
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    let kind = match grid.relaxation {
        RelaxationKind::BalancedRowSum => "balanced_row_sum",
        RelaxationKind::MaxKCut => "max_k_cut",
    };
    svg.push_str(&format!(
        "<text x=\"{MARGIN_LEFT}\" y=\"24\" {font} font-size=\"13\">integral fraction, {kind}, \
         k={}, m={}, trials={}</text>\n",
        grid.k, grid.m, grid.trials
    ));

    for ai in 0..grid.alpha_steps {
        for bi in 0..grid.beta_steps {
            let x = MARGIN_LEFT + ai as f64 * CELL_PX;
            let y = MARGIN_TOP + plot_h - (bi + 1) as f64 * CELL_PX;
            let fill = match result.cell(ai, bi) {
                Some(cell) => grey(cell.fraction),
                None => MISSING_FILL.to_string(),
            };
            svg.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL_PX}\" height=\"{CELL_PX}\" \
                 fill=\"{fill}\" stroke=\"#999\" stroke-width=\"0.5\"/>\n"
            ));
        }
    }

    // The threshold curve, sampled densely across the alpha span of the plot
    // and broken into segments where it exits the plot (or alpha < 1, where
    // it is not defined).
    let alpha_per_cell = if grid.alpha_steps > 1 {
        (grid.alpha_max - grid.alpha_min) / (grid.alpha_steps - 1) as f64
    } else {
        1.0
    };
    let a_lo = grid.alpha_min - 0.5 * alpha_per_cell;
    let a_hi = grid.alpha_max + 0.5 * alpha_per_cell;
    let samples = (grid.alpha_steps * 16).max(64);
    let mut segments: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for s in 0..=samples {
        let a = a_lo + (a_hi - a_lo) * s as f64 / samples as f64;
        let point = threshold_beta(a).ok().and_then(|b| {
            let x = x_pixel(grid, a);
            let y = y_pixel(grid, b);
            let inside = x.is_finite()
                && y.is_finite()
                && (MARGIN_TOP - 1e-9..=MARGIN_TOP + plot_h + 1e-9).contains(&y);
            inside.then_some((x, y))
        });
        match point {
            Some(p) => current.push(p),
            None if current.len() >= 2 => segments.push(std::mem::take(&mut current)),
            None => current.clear(),
        }
    }
    if current.len() >= 2 {
        segments.push(current);
    }
    for segment in &segments {
        let points: Vec<String> = segment.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
    }

    // Axis labels mark the first and last cell centers of each axis.
    let below = MARGIN_TOP + plot_h + 16.0;
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{below}\" {font} font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + 0.5 * CELL_PX,
        grid.alpha_min
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{below}\" {font} font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w - 0.5 * CELL_PX,
        grid.alpha_max
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" {font} font-size=\"11\" text-anchor=\"middle\">alpha</text>\n",
        MARGIN_LEFT + 0.5 * plot_w,
        below + 20.0
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" {font} font-size=\"11\" text-anchor=\"end\">{}</text>\n",
        MARGIN_LEFT - 8.0,
        MARGIN_TOP + plot_h - 0.5 * CELL_PX + 4.0,
        grid.beta_min
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" {font} font-size=\"11\" text-anchor=\"end\">{}</text>\n",
        MARGIN_LEFT - 8.0,
        MARGIN_TOP + 0.5 * CELL_PX + 4.0,
        grid.beta_max
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" {font} font-size=\"11\" text-anchor=\"end\">beta</text>\n",
        MARGIN_LEFT - 8.0,
        MARGIN_TOP + 0.5 * plot_h + 4.0
    ));
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_settings() -> SolveSettings {
        SolveSettings {
            tol_primal: 1e-5,
            tol_dual: 1e-5,
            max_iter: 4000,
            ..SolveSettings::default()
        }
    }

    /// 2x2 grid on a small model where exactly one cell is in range:
    /// (alpha=4, beta) cells derive p > 1 at m = 6, and (alpha=1, beta=2)
    /// has beta > alpha.
    fn tiny_grid(relaxation: RelaxationKind) -> SweepGrid {
        SweepGrid {
            alpha_min: 1.0,
            alpha_max: 4.0,
            alpha_steps: 2,
            beta_min: 0.5,
            beta_max: 2.0,
            beta_steps: 2,
            k: 2,
            m: 6,
            trials: 3,
            base_seed: 7,
            relaxation,
        }
    }

    #[test]
    fn grid_validation_rejects_bad_fields() {
        let good = tiny_grid(RelaxationKind::BalancedRowSum);
        good.validate().unwrap();

        let cases: Vec<(&str, SweepGrid)> = vec![
            ("zero alpha steps", SweepGrid { alpha_steps: 0, ..good.clone() }),
            ("zero beta steps", SweepGrid { beta_steps: 0, ..good.clone() }),
            ("zero trials", SweepGrid { trials: 0, ..good.clone() }),
            ("reversed alpha", SweepGrid { alpha_max: 0.5, ..good.clone() }),
            ("reversed beta", SweepGrid { beta_max: 0.1, ..good.clone() }),
            ("nan bound", SweepGrid { beta_min: f64::NAN, ..good.clone() }),
            ("k too small", SweepGrid { k: 1, ..good.clone() }),
            ("m too small", SweepGrid { m: 1, ..good.clone() }),
        ];
        for (label, grid) in cases {
            match grid.validate() {
                Err(Error::ParamOutOfRange(_)) => {}
                other => panic!("{label}: expected ParamOutOfRange, got {other:?}"),
            }
        }
    }

    #[test]
    fn grid_values_form_an_even_lattice() {
        let grid = SweepGrid {
            alpha_min: 1.0,
            alpha_max: 16.0,
            alpha_steps: 12,
            beta_min: 0.0,
            beta_max: 8.0,
            beta_steps: 12,
            ..tiny_grid(RelaxationKind::BalancedRowSum)
        };
        assert_eq!(grid.alpha_value(0), 1.0);
        assert_eq!(grid.alpha_value(11), 16.0);
        assert_eq!(grid.beta_value(0), 0.0);
        assert_eq!(grid.beta_value(11), 8.0);
        let step = 15.0 / 11.0;
        for ai in 1..12 {
            let gap = grid.alpha_value(ai) - grid.alpha_value(ai - 1);
            assert!((gap - step).abs() < 1e-12, "uneven gap {gap} at {ai}");
        }
        assert_eq!(grid.cell_index(0, 0), 0);
        assert_eq!(grid.cell_index(0, 11), 11);
        assert_eq!(grid.cell_index(1, 0), 12);
        assert_eq!(grid.cells(), 144);

        let single = SweepGrid {
            alpha_steps: 1,
            ..tiny_grid(RelaxationKind::BalancedRowSum)
        };
        assert_eq!(single.alpha_value(0), 1.0);
    }

    #[test]
    fn sweep_marks_out_of_range_cells_missing() {
        let grid = tiny_grid(RelaxationKind::BalancedRowSum);
        let result = run_sweep(&grid, &quick_settings()).unwrap();
        assert_eq!(result.cells.len(), 4);

        let cell = result.cell(0, 0).expect("alpha=1, beta=0.5 is in range");
        assert_eq!(cell.alpha, 1.0);
        assert_eq!(cell.beta, 0.5);
        assert_eq!(cell.trials, 3);
        assert!(cell.integral_count <= 3);
        assert_eq!(cell.fraction, cell.integral_count as f64 / 3.0);
        assert!(cell.mean_solver_iters > 0.0);

        assert!(result.cell(0, 1).is_none(), "beta > alpha must be missing");
        assert!(result.cell(1, 0).is_none(), "p > 1 must be missing");
        assert!(result.cell(1, 1).is_none(), "p > 1 must be missing");
    }

    #[test]
    fn csv_is_deterministic_and_matches_format() {
        let grid = tiny_grid(RelaxationKind::BalancedRowSum);
        let settings = quick_settings();
        let first = run_sweep(&grid, &settings).unwrap();
        let second = run_sweep(&grid, &settings).unwrap();
        assert_eq!(first, second);

        let mut a = Vec::new();
        write_csv(&first, &mut a).unwrap();
        let mut b = Vec::new();
        write_csv(&second, &mut b).unwrap();
        assert_eq!(a, b, "CSV bytes must not depend on the run");

        let text = String::from_utf8(a).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "alpha,beta,trials,integral_count,fraction");
        assert_eq!(lines.len(), 2, "one data row for the one present cell");
        assert!(lines[1].starts_with("1,0.5,3,"), "bad row: {}", lines[1]);
        assert!(!text.contains('#'), "row-sum sweeps carry no comment");
    }

    #[test]
    fn max_k_cut_csv_carries_certified_note() {
        let grid = tiny_grid(RelaxationKind::MaxKCut);
        let result = run_sweep(&grid, &quick_settings()).unwrap();
        let mut out = Vec::new();
        write_csv(&result, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.ends_with("# certified=false\n"), "got: {text}");
        assert!(text.starts_with("alpha,beta,trials,integral_count,fraction\n"));
    }

    #[test]
    fn light_region_cell_is_mostly_integral() {
        let grid = SweepGrid {
            alpha_min: 6.0,
            alpha_max: 6.0,
            alpha_steps: 1,
            beta_min: 0.5,
            beta_max: 0.5,
            beta_steps: 1,
            k: 3,
            m: 20,
            trials: 10,
            base_seed: 1,
            relaxation: RelaxationKind::BalancedRowSum,
        };
        let result = run_sweep(&grid, &quick_settings()).unwrap();
        let cell = result.cell(0, 0).unwrap();
        assert!(
            cell.fraction >= 0.8,
            "deep recovery regime: fraction {} < 0.8",
            cell.fraction
        );
    }

    #[test]
    fn dark_region_cell_is_rarely_integral() {
        let grid = SweepGrid {
            alpha_min: 1.2,
            alpha_max: 1.2,
            alpha_steps: 1,
            beta_min: 1.0,
            beta_max: 1.0,
            beta_steps: 1,
            k: 3,
            m: 20,
            trials: 10,
            base_seed: 2,
            relaxation: RelaxationKind::BalancedRowSum,
        };
        let result = run_sweep(&grid, &quick_settings()).unwrap();
        let cell = result.cell(0, 0).unwrap();
        assert!(
            cell.fraction <= 0.2,
            "below the threshold: fraction {} > 0.2",
            cell.fraction
        );
    }

    #[test]
    fn svg_structure_encodes_fractions_and_missing_cells() {
        let grid = SweepGrid {
            alpha_min: 1.0,
            alpha_max: 9.0,
            alpha_steps: 3,
            beta_min: 0.0,
            beta_max: 4.0,
            beta_steps: 3,
            k: 3,
            m: 20,
            trials: 10,
            base_seed: 0,
            relaxation: RelaxationKind::BalancedRowSum,
        };
        let cell = |ai: usize, bi: usize, count: usize| SweepCell {
            alpha: grid.alpha_value(ai),
            beta: grid.beta_value(bi),
            trials: 10,
            integral_count: count,
            fraction: count as f64 / 10.0,
            mean_solver_iters: 100.0,
        };
        let mut cells: Vec<Option<SweepCell>> = Vec::new();
        for ai in 0..3 {
            for bi in 0..3 {
                cells.push(match (ai, bi) {
                    (0, 2) => None,
                    (0, _) => Some(cell(ai, bi, 0)),
                    (1, _) => Some(cell(ai, bi, 5)),
                    _ => Some(cell(ai, bi, 10)),
                });
            }
        }
        let svg = render_svg(&SweepResult { grid, cells });

        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<rect").count(), 10, "background plus 9 cells");
        assert!(svg.contains("rgb(0,0,0)"), "fraction 0 is black");
        assert!(svg.contains("rgb(128,128,128)"), "fraction 0.5 is mid-grey");
        assert!(svg.contains("rgb(255,255,255)"), "fraction 1 is white");
        assert_eq!(svg.matches(MISSING_FILL).count(), 1, "one missing cell");
        assert!(svg.contains("stroke=\"red\""), "threshold curve is drawn");
        assert!(svg.contains(">alpha</text>") && svg.contains(">beta</text>"));
    }

    #[test]
    fn svg_clips_the_curve_outside_the_plot() {
        let grid = SweepGrid {
            alpha_min: 1.0,
            alpha_max: 2.0,
            alpha_steps: 2,
            beta_min: 10.0,
            beta_max: 20.0,
            beta_steps: 2,
            k: 3,
            m: 20,
            trials: 10,
            base_seed: 0,
            relaxation: RelaxationKind::BalancedRowSum,
        };
        let svg = render_svg(&SweepResult {
            grid,
            cells: vec![None; 4],
        });
        // (sqrt(2) - 1)^2 < 0.2 never reaches the plotted beta range.
        assert!(!svg.contains("stroke=\"red\""), "curve should be clipped away");
    }

    #[test]
    fn sweep_result_serializes_round_trip() {
        let grid = tiny_grid(RelaxationKind::MaxKCut);
        let result = SweepResult {
            cells: vec![
                Some(SweepCell {
                    alpha: 1.0,
                    beta: 0.5,
                    trials: 3,
                    integral_count: 2,
                    fraction: 2.0 / 3.0,
                    mean_solver_iters: 140.5,
                }),
                None,
                None,
                None,
            ],
            grid,
        };
        let json = serde_json::to_string(&result).unwrap();
        assert!(json.contains("\"relaxation\":\"max_k_cut\""));
        let back: SweepResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, result);
    }
}
