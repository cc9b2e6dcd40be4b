//! Block lift of a correlation matrix and the change of variables that
//! carries the lifted program onto the cut relaxation.
//!
//! A symmetric n x n matrix Z lifts to the nk x nk matrix whose k diagonal
//! blocks equal Z and whose off-diagonal blocks equal (J - Z)/(k - 1), J
//! being the all-ones matrix. The lift is positive semidefinite exactly when
//! Z - J/k is, and the affine map Y = (k Z - J)/(k - 1) identifies the
//! constraint set {Z_ii = 1, Z >= 0 entrywise, Z - J/k PSD} with the cut
//! relaxation's {Y_ii = 1, Y_ij >= -1/(k-1), Y PSD}.

use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, Mat};

/// Default eigenvalue tolerance for `psd_equivalence_check`.
pub const DEFAULT_PSD_TOL: f64 = 1e-8;

/// Symmetry tolerance applied to inputs.
const SYMMETRY_TOL: f64 = 1e-9;

/// A symmetric matrix together with its assembled block lift.
#[derive(Debug, Clone)]
pub struct LiftedMatrix {
    base: Mat,
    k: usize,
    lifted: Mat,
}

impl LiftedMatrix {
    /// The original n x n matrix.
    pub fn base(&self) -> &Mat {
        &self.base
    }

    /// The number of blocks per side.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The assembled nk x nk lift.
    pub fn lifted(&self) -> &Mat {
        &self.lifted
    }
}

/// Checks that `z` is a square symmetric matrix and `k >= 2`.
fn validate_inputs(z: &Mat, k: usize) -> Result<()> {
    if !z.is_square() {
        return Err(Error::BadDimensions(format!(
            "lift needs a square matrix, got {}x{}",
            z.rows(),
            z.cols()
        )));
    }
    if !z.is_symmetric(SYMMETRY_TOL) {
        return Err(Error::BadDimensions(
            "lift needs a symmetric matrix".into(),
        ));
    }
    if k < 2 {
        return Err(Error::BadDimensions(format!(
            "lift needs k >= 2, got {k}"
        )));
    }
    Ok(())
}

/// Assembles the nk x nk lift: diagonal blocks Z, off-diagonal blocks
/// (J - Z)/(k - 1).
pub fn build_lifted(z: &Mat, k: usize) -> Result<LiftedMatrix> {
    validate_inputs(z, k)?;
    let n = z.rows();
    let scale = 1.0 / (k as f64 - 1.0);
    let mut lifted = Mat::zeros(n * k, n * k);
    for bi in 0..k {
        for bj in 0..k {
            for i in 0..n {
                for j in 0..n {
                    let v = z[(i, j)];
                    lifted[(bi * n + i, bj * n + j)] =
                        if bi == bj { v } else { (1.0 - v) * scale };
                }
            }
        }
    }
    Ok(LiftedMatrix {
        base: z.clone(),
        k,
        lifted,
    })
}

/// Compares the semidefiniteness of the lift against that of Z - J/k.
///
/// Returns the minimum eigenvalue of the lift, the minimum eigenvalue of
/// Z - J/k, and whether the two verdicts (eigenvalue >= -tol) agree. The two
/// spectra are tied exactly: the lift's spectrum is the union of that of J
/// and k - 1 copies of that of (k/(k-1))(Z - J/k), so disagreement can only
/// occur when a minimum eigenvalue sits within a factor k/(k-1) of -tol.
pub fn psd_equivalence_check(z: &Mat, k: usize, tol: f64) -> Result<(f64, f64, bool)> {
    let lift = build_lifted(z, k)?;
    let lhs = min_eigenvalue(lift.lifted())?;
    let n = z.rows();
    let shift = 1.0 / k as f64;
    let shifted = Mat::from_fn(n, n, |i, j| z[(i, j)] - shift);
    let rhs = min_eigenvalue(&shifted)?;
    Ok((lhs, rhs, (lhs >= -tol) == (rhs >= -tol)))
}

/// Applies the change of variables Y = (k Z - J)/(k - 1).
///
/// Unit diagonals map to unit diagonals and entrywise-nonnegative matrices
/// map to matrices bounded below by -1/(k-1).
///
/// # Panics
///
/// Panics if `k < 2` or `z` is not square.
pub fn change_of_variables(z: &Mat, k: usize) -> Mat {
    assert!(k >= 2, "change of variables needs k >= 2");
    assert!(z.is_square(), "change of variables needs a square matrix");
    let s = 1.0 / (k as f64 - 1.0);
    let kf = k as f64;
    Mat::from_fn(z.rows(), z.rows(), |i, j| kf * s * z[(i, j)] - s)
}

/// Inverts the change of variables: Z = ((k - 1) Y + J)/k.
///
/// # Panics
///
/// Panics if `k < 2` or `y` is not square.
pub fn inverse_change_of_variables(y: &Mat, k: usize) -> Mat {
    assert!(k >= 2, "change of variables needs k >= 2");
    assert!(y.is_square(), "change of variables needs a square matrix");
    let kf = k as f64;
    Mat::from_fn(y.rows(), y.rows(), |i, j| {
        ((kf - 1.0) * y[(i, j)] + 1.0) / kf
    })
}
