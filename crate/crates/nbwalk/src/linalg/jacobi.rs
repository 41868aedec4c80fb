//! Cyclic Jacobi eigensolver for symmetric matrices. Rotations follow the
//! classical scheme with the tau-form update that keeps cancellation in
//! check; sweeps run until the off-diagonal Frobenius norm is negligible.

use super::{Matrix, Tolerances};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors (columns)
/// of a symmetric matrix. Rejects inputs whose symmetry defect exceeds the
/// tolerance rather than silently symmetrizing.
pub fn symmetric_eigen(m: &Matrix, tol: &Tolerances) -> Result<(Vec<f64>, Matrix)> {
    assert!(m.is_square(), "eigensolver needs a square matrix");
    let defect = m.symmetry_defect();
    if defect > tol.symmetry {
        return Err(Error::NotSymmetric {
            max_asymmetry: defect,
        });
    }

    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let scale = a.max_norm().max(1.0);

    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= 1e-12 * scale {
            return Ok(sorted(a, v));
        }
        let _ = sweep;

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e12 {
                    // Large theta: series form avoids overflow in theta^2.
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;

                a[(p, p)] -= h;
                a[(q, q)] += h;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let g = a[(i, p)];
                    let w = a[(i, q)];
                    a[(i, p)] = g - s * (w + g * tau);
                    a[(p, i)] = a[(i, p)];
                    a[(i, q)] = w + s * (g - w * tau);
                    a[(q, i)] = a[(i, q)];
                }
                for i in 0..n {
                    let g = v[(i, p)];
                    let w = v[(i, q)];
                    v[(i, p)] = g - s * (w + g * tau);
                    v[(i, q)] = w + s * (g - w * tau);
                }
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_SWEEPS,
    })
}

fn sorted(a: Matrix, v: Matrix) -> (Vec<f64>, Matrix) {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).expect("finite"));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    (values, vectors)
}
