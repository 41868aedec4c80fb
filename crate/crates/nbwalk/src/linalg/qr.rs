//! Eigenvalues of a general real matrix: Householder reduction to upper
//! Hessenberg form followed by the Francis double-shift QR iteration, the
//! classical EISPACK scheme. Eigenvalues only, no Schur vectors. Signed loop
//! indices mirror the reference algorithm, which counts down past zero.

use super::Matrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Largest matrix the dense eigenvalue path accepts.
pub const MAX_DENSE_DIM: usize = 512;

/// Iterations allowed per eigenvalue before giving up.
const MAX_ITER_PER_ROOT: usize = 100;

/// All eigenvalues of a square real matrix, sorted by (real, imaginary).
/// Complex pairs come out exactly conjugate.
pub fn general_eigenvalues(m: &Matrix) -> Result<Vec<Complex64>> {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    let nn = m.rows();
    if nn > MAX_DENSE_DIM {
        return Err(Error::DimensionOverflow {
            dim: nn,
            limit: MAX_DENSE_DIM,
        });
    }
    let mut h = m.clone();
    hessenberg(&mut h);
    let mut values = hqr(&mut h)?;
    values.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("eigenvalues must be finite")
    });
    Ok(values)
}

/// In-place Householder reduction to upper Hessenberg form. Similarity
/// transformations preserve the spectrum; accumulated vectors are not needed.
fn hessenberg(h: &mut Matrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![0.0f64; n];

    for m in 1..high {
        let mut scale = 0.0;
        for i in m..=high {
            scale += h[(i, m - 1)].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut g2 = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            g2 += ort[i] * ort[i];
        }
        let mut g = g2.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        let divisor = g2 - ort[m] * g;
        ort[m] -= g;

        // Apply (I - u u^T / divisor) from both sides.
        for j in m..n {
            let mut f = 0.0;
            for i in (m..=high).rev() {
                f += ort[i] * h[(i, j)];
            }
            f /= divisor;
            for i in m..=high {
                h[(i, j)] -= f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = 0.0;
            for j in (m..=high).rev() {
                f += ort[j] * h[(i, j)];
            }
            f /= divisor;
            for j in m..=high {
                h[(i, j)] -= f * ort[j];
            }
        }
        ort[m] *= scale;
        h[(m, m - 1)] = scale * g;
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix. Returns the
/// eigenvalues; the matrix is destroyed.
fn hqr(h: &mut Matrix) -> Result<Vec<Complex64>> {
    let nn = h.rows() as i64;
    let at = |h: &Matrix, i: i64, j: i64| h[(i as usize, j as usize)];

    let mut d = vec![0.0f64; nn as usize];
    let mut e = vec![0.0f64; nn as usize];

    let low: i64 = 0;
    let eps = 2.0f64.powi(-52);
    let mut exshift = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let (mut s, mut z, mut x, mut y, mut w): (f64, f64, f64, f64, f64);

    let mut norm = 0.0;
    for i in 0..nn {
        for j in (i - 1).max(0)..nn {
            norm += at(h, i, j).abs();
        }
    }

    let mut n = nn - 1;
    let mut iter = 0usize;
    while n >= low {
        // Look for a single small subdiagonal element.
        let mut l = n;
        while l > low {
            s = at(h, l - 1, l - 1).abs() + at(h, l, l).abs();
            if s == 0.0 {
                s = norm;
            }
            if at(h, l, l - 1).abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // One real root found.
            let v = at(h, n, n) + exshift;
            h[(n as usize, n as usize)] = v;
            d[n as usize] = v;
            e[n as usize] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // A 2x2 block deflates: real pair or complex conjugate pair.
            w = at(h, n, n - 1) * at(h, n - 1, n);
            p = (at(h, n - 1, n - 1) - at(h, n, n)) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            h[(n as usize, n as usize)] += exshift;
            h[((n - 1) as usize, (n - 1) as usize)] += exshift;
            x = at(h, n, n);

            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                d[(n - 1) as usize] = x + z;
                d[n as usize] = if z != 0.0 { x - w / z } else { x + z };
                e[(n - 1) as usize] = 0.0;
                e[n as usize] = 0.0;
                // Rotate the pair into triangular position so the trailing
                // block stays consistent for the remaining iterations.
                x = at(h, n, n - 1);
                s = x.abs() + z.abs();
                p = x / s;
                q = z / s;
                r = (p * p + q * q).sqrt();
                p /= r;
                q /= r;
                for j in (n - 1)..nn {
                    z = at(h, n - 1, j);
                    h[((n - 1) as usize, j as usize)] = q * z + p * at(h, n, j);
                    h[(n as usize, j as usize)] = q * at(h, n, j) - p * z;
                }
                for i in 0..=n {
                    z = at(h, i, n - 1);
                    h[(i as usize, (n - 1) as usize)] = q * z + p * at(h, i, n);
                    h[(i as usize, n as usize)] = q * at(h, i, n) - p * z;
                }
            } else {
                d[(n - 1) as usize] = x + p;
                d[n as usize] = x + p;
                e[(n - 1) as usize] = z;
                e[n as usize] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            // No convergence yet: form a shift and run one double QR step.
            x = at(h, n, n);
            y = 0.0;
            w = 0.0;
            if l < n {
                y = at(h, n - 1, n - 1);
                w = at(h, n, n - 1) * at(h, n - 1, n);
            }

            // Exceptional shifts break persistent cycles.
            if iter == 10 {
                exshift += x;
                for i in low..=n {
                    h[(i as usize, i as usize)] -= x;
                }
                s = at(h, n, n - 1).abs() + at(h, n - 1, n - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=n {
                        h[(i as usize, i as usize)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = 0.964;
                    w = 0.964;
                }
            }

            iter += 1;
            if iter > MAX_ITER_PER_ROOT {
                return Err(Error::NoConvergence {
                    iterations: MAX_ITER_PER_ROOT,
                });
            }

            // Look for two consecutive small subdiagonal elements.
            let mut m = n - 2;
            while m >= l {
                z = at(h, m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / at(h, m + 1, m) + at(h, m, m + 1);
                q = at(h, m + 1, m + 1) - z - r - s;
                r = at(h, m + 2, m + 1);
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if at(h, m, m - 1).abs() * (q.abs() + r.abs())
                    < eps
                        * (p.abs()
                            * (at(h, m - 1, m - 1).abs() + z.abs() + at(h, m + 1, m + 1).abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=n {
                h[(i as usize, (i - 2) as usize)] = 0.0;
                if i > m + 2 {
                    h[(i as usize, (i - 3) as usize)] = 0.0;
                }
            }

            // Double QR step on rows l..=n, columns m..=n.
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = at(h, k, k - 1);
                    q = at(h, k + 1, k - 1);
                    r = if notlast { at(h, k + 2, k - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        h[(k as usize, (k - 1) as usize)] = -s * x;
                    } else if l != m {
                        let v = at(h, k, k - 1);
                        h[(k as usize, (k - 1) as usize)] = -v;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    for j in k..nn {
                        p = at(h, k, j) + q * at(h, k + 1, j);
                        if notlast {
                            p += r * at(h, k + 2, j);
                            h[((k + 2) as usize, j as usize)] -= p * z;
                        }
                        h[(k as usize, j as usize)] -= p * x;
                        h[((k + 1) as usize, j as usize)] -= p * y;
                    }
                    let upper = n.min(k + 3);
                    for i in 0..=upper {
                        p = x * at(h, i, k) + y * at(h, i, k + 1);
                        if notlast {
                            p += z * at(h, i, k + 2);
                            h[(i as usize, (k + 2) as usize)] -= p * r;
                        }
                        h[(i as usize, k as usize)] -= p;
                        h[(i as usize, (k + 1) as usize)] -= p * q;
                    }
                }
            }
        }
    }

    Ok(d
        .into_iter()
        .zip(e)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}
