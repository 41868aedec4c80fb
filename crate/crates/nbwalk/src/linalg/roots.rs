//! Closed-form roots of the low-degree polynomials that appear in spectral
//! factorizations: monic quadratics, and even quartics via the quadratic in
//! the squared variable.

use num_complex::Complex64;

/// Both roots of `u^2 + b u + c = 0`. Real-discriminant cases use the
/// cancellation-free form (the larger root by magnitude first, the other as
/// c over it), so tiny roots next to huge ones stay accurate.
pub fn quadratic_roots(b: f64, c: f64) -> (Complex64, Complex64) {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        // q = -(b + sign(b) sqrt(disc)) / 2 avoids subtracting like signs.
        let q = if b >= 0.0 { -(b + sq) / 2.0 } else { -(b - sq) / 2.0 };
        if q == 0.0 {
            return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        }
        (Complex64::new(q, 0.0), Complex64::new(c / q, 0.0))
    } else {
        let re = -b / 2.0;
        let im = (-disc).sqrt() / 2.0;
        (Complex64::new(re, im), Complex64::new(re, -im))
    }
}

/// All four roots of `u^4 + p u^2 + q = 0`: solve the quadratic in u^2 and
/// take both complex square roots of each solution.
pub fn quartic_even_roots(p: f64, q: f64) -> [Complex64; 4] {
    let (v1, v2) = quadratic_roots(p, q);
    let r1 = v1.sqrt();
    let r2 = v2.sqrt();
    [r1, -r1, r2, -r2]
}
