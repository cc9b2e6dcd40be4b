//! Test-only reference implementations.
//!
//! These are deliberately independent of the production kernels: simpler
//! algorithms, different code paths, written once and left alone. Tests use
//! them as oracles, so keep them slow-but-obvious.

use crate::linalg::Mat;

/// Cyclic Jacobi eigendecomposition for small symmetric matrices.
///
/// Returns eigenvalues ascending plus the orthonormal eigenvector columns.
/// Quadratically convergent; 100 sweeps is far more than small test matrices
/// ever need.
pub fn jacobi_eig(a: &Mat) -> (Vec<f64>, Mat) {
    assert!(a.is_square());
    let n = a.rows();
    let mut a = a.clone();
    let mut v = Mat::identity(n);
    let scale = 1.0 + a.frob_norm();

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() < 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let vecs = Mat::from_fn(n, n, |i, j| v[(i, order[j])]);
    (vals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_on_known_two_by_two() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let mut m = Mat::zeros(2, 2);
        m[(0, 0)] = 2.0;
        m[(0, 1)] = 1.0;
        m[(1, 0)] = 1.0;
        m[(1, 1)] = 2.0;
        let (vals, vecs) = jacobi_eig(&m);
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
        // Eigenvector for λ=3 is (1,1)/√2 up to sign.
        assert!((vecs[(0, 1)].abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}
