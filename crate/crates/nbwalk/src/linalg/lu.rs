//! LU factorization with partial pivoting: determinants, linear solves, and
//! explicit inverses for the small dense systems this crate works with.

use super::Matrix;
use crate::error::{Error, Result};

struct Lu {
    /// Combined L (unit lower, below diagonal) and U (upper) factors.
    lu: Matrix,
    /// Row permutation applied to the input, as a lookup: pivot[i] is the
    /// original row now sitting at position i.
    pivot: Vec<usize>,
    /// Sign of the permutation, +1 or -1.
    sign: f64,
}

fn factor(m: &Matrix) -> Lu {
    assert!(m.is_square(), "LU needs a square matrix");
    let n = m.rows();
    let mut lu = m.clone();
    let mut pivot: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;

    for k in 0..n {
        // Partial pivoting: largest magnitude in column k at or below row k.
        let mut p = k;
        for i in (k + 1)..n {
            if lu[(i, k)].abs() > lu[(p, k)].abs() {
                p = i;
            }
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            pivot.swap(k, p);
            sign = -sign;
        }
        let piv = lu[(k, k)];
        if piv == 0.0 {
            // Exactly singular: leave the zero column, the determinant will
            // come out as 0 and solves will report singularity.
            continue;
        }
        for i in (k + 1)..n {
            let f = lu[(i, k)] / piv;
            lu[(i, k)] = f;
            for j in (k + 1)..n {
                lu[(i, j)] -= f * lu[(k, j)];
            }
        }
    }
    Lu { lu, pivot, sign }
}

/// Determinant via LU with partial pivoting. Exactly singular inputs give 0.
pub fn lu_determinant(m: &Matrix) -> f64 {
    let f = factor(m);
    let mut det = f.sign;
    for k in 0..m.rows() {
        det *= f.lu[(k, k)];
    }
    det
}

/// Solves `m x = b`. Fails when a pivot vanishes.
pub fn solve(m: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(m.rows(), b.len());
    let n = m.rows();
    let f = factor(m);
    for k in 0..n {
        if f.lu[(k, k)] == 0.0 {
            return Err(Error::Singular);
        }
    }
    // Forward substitution with the permuted right-hand side.
    let mut x: Vec<f64> = (0..n).map(|i| b[f.pivot[i]]).collect();
    for i in 1..n {
        for j in 0..i {
            x[i] -= f.lu[(i, j)] * x[j];
        }
    }
    // Back substitution.
    for i in (0..n).rev() {
        for j in (i + 1)..n {
            x[i] -= f.lu[(i, j)] * x[j];
        }
        x[i] /= f.lu[(i, i)];
    }
    Ok(x)
}

/// Explicit inverse, column by column.
pub fn invert(m: &Matrix) -> Result<Matrix> {
    let n = m.rows();
    let mut out = Matrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = solve(m, &e)?;
        e[j] = 0.0;
        for i in 0..n {
            out[(i, j)] = col[i];
        }
    }
    Ok(out)
}
