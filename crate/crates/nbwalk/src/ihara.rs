//! Numerical verification of the determinant identities linking the
//! edge-space operators to vertex-space matrices: the unweighted identity
//! det(I - uB) = (1 - u^2)^(m-n) det(I - uA + u^2(D - I)), its weighted
//! generalization, and the block decomposition behind it. Both sides are
//! polynomials in u, so agreement on more samples than the degree is
//! conclusive rather than anecdotal.

use crate::edgespace::{build_edge_space, op_b, op_weighted, EdgeOperatorSet, WeightAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{invert, lu_determinant, null_complement_basis, Matrix, Tolerances};

/// One sampled comparison of the two sides of an identity.
#[derive(Debug, Clone, Copy)]
pub struct IharaSample {
    pub u: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// |lhs - rhs| / max(1, |lhs|, |rhs|); the floor of 1 keeps samples near
    /// polynomial roots from blowing up the quotient.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct IharaReport {
    pub samples: Vec<IharaSample>,
    pub max_residual: f64,
    pub pass: bool,
}

fn sample(u: f64, lhs: f64, rhs: f64) -> IharaSample {
    let residual = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
    IharaSample {
        u,
        lhs,
        rhs,
        residual,
    }
}

fn report_from(samples: Vec<IharaSample>, tol: &Tolerances) -> IharaReport {
    let max_residual = samples.iter().fold(0.0f64, |acc, s| acc.max(s.residual));
    IharaReport {
        pass: max_residual < tol.identity_residual,
        samples,
        max_residual,
    }
}

/// Checks det(I - uB) = (1 - u^2)^(m-n) det(I - uA + u^2(D - I)) at each
/// sample. Minimum degree 2 forces m >= n, so the exponent is never
/// negative and u = +-1 evaluates cleanly on both sides.
pub fn unweighted_check(g: &Graph, u_samples: &[f64], tol: &Tolerances) -> IharaReport {
    let es = build_edge_space(g);
    let b = op_b(&es);
    let a = g.adjacency_matrix();
    let d = g.degree_matrix();
    let n = g.vertex_count();
    let k = es.len();
    let excess = (g.edge_count() - n) as i32;

    let eye_k = Matrix::identity(k);
    let eye_n = Matrix::identity(n);
    let d_minus_i = &d - &eye_n;

    let samples = u_samples
        .iter()
        .map(|&u| {
            let lhs = lu_determinant(&(&eye_k - &b.scale(u)));
            let vertex = &(&eye_n - &a.scale(u)) + &d_minus_i.scale(u * u);
            let rhs = (1.0 - u * u).powi(excess) * lu_determinant(&vertex);
            sample(u, lhs, rhs)
        })
        .collect();
    report_from(samples, tol)
}

/// Checks det((I - uP~)(I - u tau~) + u^2 tau~^2) = det(I - uA~ + u^2 D~)
/// on a prebuilt operator set.
pub fn weighted_check_with_ops(
    ops: &EdgeOperatorSet,
    u_samples: &[f64],
    tol: &Tolerances,
) -> IharaReport {
    let k = ops.p_tilde.rows();
    let n = ops.a_tilde.rows();
    let eye_k = Matrix::identity(k);
    let eye_n = Matrix::identity(n);
    let tau_sq = &ops.tau_tilde * &ops.tau_tilde;

    let samples = u_samples
        .iter()
        .map(|&u| {
            let left = &eye_k - &ops.p_tilde.scale(u);
            let right = &eye_k - &ops.tau_tilde.scale(u);
            let lhs = lu_determinant(&(&(&left * &right) + &tau_sq.scale(u * u)));
            let vertex = &(&eye_n - &ops.a_tilde.scale(u)) + &ops.d_tilde.scale(u * u);
            let rhs = lu_determinant(&vertex);
            sample(u, lhs, rhs)
        })
        .collect();
    report_from(samples, tol)
}

/// Weighted identity check for a graph and weight assignment.
pub fn weighted_check(
    g: &Graph,
    w: &WeightAssignment,
    u_samples: &[f64],
    tol: &Tolerances,
) -> IharaReport {
    let es = build_edge_space(g);
    let ops = op_weighted(&es, w);
    weighted_check_with_ops(&ops, u_samples, tol)
}

/// Residuals of the change-of-basis decomposition at one value of u.
#[derive(Debug, Clone, Copy)]
pub struct DecompositionReport {
    pub u: f64,
    /// Max-norm of the lower-left block, which should vanish.
    pub lower_left_norm: f64,
    /// Max-norm deviation of the lower-right block from the identity.
    pub lower_right_deviation: f64,
    /// Max-norm deviation of the upper-left block from I - uA~ + u^2 D~.
    pub upper_left_deviation: f64,
    /// Max-norm deviation of the upper-right block from -uT~R + u^2 T~ tau~ R.
    pub upper_right_deviation: f64,
    /// Residual of the explicit stacked-inverse formula applied to M.
    pub inverse_formula_residual: f64,
    pub pass: bool,
}

/// Conjugates Q(u) = (I - uP~)(I - u tau~) + u^2 tau~^2 by M = [S~ R] and
/// measures each block against its predicted value. R is an orthonormal
/// basis of the kernel of S~ transposed; M itself is inverted directly,
/// while the explicit formula [(S~^T S~)^-1 S~^T ; (R^T R)^-1 R^T] is
/// verified separately as M's inverse.
pub fn decomposition_check(
    g: &Graph,
    w: &WeightAssignment,
    u: f64,
    tol: &Tolerances,
) -> Result<DecompositionReport> {
    let es = build_edge_space(g);
    let ops = op_weighted(&es, w);
    let k = es.len();
    let n = g.vertex_count();

    let r = match null_complement_basis(&ops.s_tilde, tol) {
        Ok(r) => r,
        Err(Error::RankDeficient { .. }) => return Err(Error::SingularChangeOfBasis),
        Err(e) => return Err(e),
    };
    let m = ops.s_tilde.concat_cols(&r);
    let m_inv = match invert(&m) {
        Ok(inv) => inv,
        Err(Error::Singular) => return Err(Error::SingularChangeOfBasis),
        Err(e) => return Err(e),
    };

    let eye_k = Matrix::identity(k);
    let q = {
        let left = &eye_k - &ops.p_tilde.scale(u);
        let right = &eye_k - &ops.tau_tilde.scale(u);
        let tau_sq = &ops.tau_tilde * &ops.tau_tilde;
        &(&left * &right) + &tau_sq.scale(u * u)
    };
    let conjugated = &(&m_inv * &q) * &m;

    let upper_left = conjugated.submatrix(0, n, 0, n);
    let upper_right = conjugated.submatrix(0, n, n, k);
    let lower_left = conjugated.submatrix(n, k, 0, n);
    let lower_right = conjugated.submatrix(n, k, n, k);

    let vertex = &(&Matrix::identity(n) - &ops.a_tilde.scale(u)) + &ops.d_tilde.scale(u * u);
    let tr = &ops.t_tilde * &r;
    let t_tau_r = &(&ops.t_tilde * &ops.tau_tilde) * &r;
    let predicted_upper_right = &t_tau_r.scale(u * u) - &tr.scale(u);

    // Explicit inverse of M: stack the two pseudo-inverse rows.
    let sts = &ops.s_tilde.transpose() * &ops.s_tilde;
    let top = &invert(&sts)? * &ops.s_tilde.transpose();
    let rtr = &r.transpose() * &r;
    let bottom = &invert(&rtr)? * &r.transpose();
    let stacked = top.transpose().concat_cols(&bottom.transpose()).transpose();
    let inverse_formula_residual = (&(&stacked * &m) - &eye_k).max_norm();

    let upper_left_deviation = (&upper_left - &vertex).max_norm();
    let upper_right_deviation = (&upper_right - &predicted_upper_right).max_norm();
    let lower_left_norm = lower_left.max_norm();
    let lower_right_deviation = (&lower_right - &Matrix::identity(k - n)).max_norm();
    let worst = upper_left_deviation
        .max(upper_right_deviation)
        .max(lower_left_norm)
        .max(lower_right_deviation)
        .max(inverse_formula_residual);

    Ok(DecompositionReport {
        u,
        lower_left_norm,
        lower_right_deviation,
        upper_left_deviation,
        upper_right_deviation,
        inverse_formula_residual,
        pass: worst < tol.identity_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgespace::{default_u_grid, u_grid};
    use crate::graph::parse_edge_list;

    const DIAMOND: &str = "0 1\n0 2\n1 2\n1 3\n2 3\n";
    const TRIANGLE: &str = "0 1\n1 2\n2 0\n";
    const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

    #[test]
    fn triangle_sides_equal_the_cycle_polynomial() {
        // B of a triangle is two directed 3-cycles, so det(I - uB) has the
        // closed form (1 - u^3)^2.
        let g = parse_edge_list(TRIANGLE).unwrap();
        let tol = Tolerances::default();
        for u in [-0.9, -0.3, 0.0, 0.2, 0.7] {
            let report = unweighted_check(&g, &[u], &tol);
            let s = report.samples[0];
            let expected = (1.0 - u.powi(3)).powi(2);
            assert!((s.lhs - expected).abs() < 1e-12, "lhs at u={u}");
            assert!((s.rhs - expected).abs() < 1e-12, "rhs at u={u}");
            assert!(report.pass);
        }
    }

    #[test]
    fn both_sides_are_one_at_u_zero() {
        let g = parse_edge_list(DIAMOND).unwrap();
        let tol = Tolerances::default();
        let unweighted = unweighted_check(&g, &[0.0], &tol);
        assert_eq!(unweighted.samples[0].lhs, 1.0);
        assert_eq!(unweighted.samples[0].rhs, 1.0);
        let w = WeightAssignment::from_values(&g, vec![1.2, 0.8, 1.7, 0.6]).unwrap();
        let weighted = weighted_check(&g, &w, &[0.0], &tol);
        assert_eq!(weighted.samples[0].lhs, 1.0);
        assert_eq!(weighted.samples[0].rhs, 1.0);
    }

    #[test]
    fn unweighted_holds_on_the_grid_and_at_the_guarded_endpoints() {
        let tol = Tolerances::default();
        for text in [TRIANGLE, DIAMOND, K4] {
            let g = parse_edge_list(text).unwrap();
            let mut grid = default_u_grid();
            grid.extend([1.0, -1.0, 0.4]);
            let report = unweighted_check(&g, &grid, &tol);
            assert!(report.pass, "max residual {}", report.max_residual);
        }
    }

    #[test]
    fn sampled_agreement_exceeds_polynomial_degree() {
        // Both sides are degree-2m polynomials; agreement on 2m + 5 points
        // pins the identity itself.
        let g = parse_edge_list(DIAMOND).unwrap();
        let grid = u_grid(-0.6, 0.6, 2 * g.edge_count() + 5);
        let report = unweighted_check(&g, &grid, &Tolerances::default());
        assert!(report.pass, "max residual {}", report.max_residual);
    }

    #[test]
    fn weighted_holds_for_unit_degree_and_random_weights() {
        let tol = Tolerances::default();
        let grid = default_u_grid();
        for text in [TRIANGLE, DIAMOND, K4] {
            let g = parse_edge_list(text).unwrap();
            let mut assignments = vec![
                WeightAssignment::unit(&g),
                WeightAssignment::degree_based(&g),
            ];
            for offset in 0..5 {
                let values = (0..g.vertex_count())
                    .map(|v| 0.4 + 0.3 * ((v + offset) % 5) as f64)
                    .collect();
                assignments.push(WeightAssignment::from_values(&g, values).unwrap());
            }
            for w in &assignments {
                let report = weighted_check(&g, w, &grid, &tol);
                assert!(
                    report.pass,
                    "max residual {} on {text:?}",
                    report.max_residual
                );
            }
        }
    }

    #[test]
    fn decomposition_blocks_match_predictions() {
        let tol = Tolerances::default();
        let g = parse_edge_list(DIAMOND).unwrap();
        let w = WeightAssignment::degree_based(&g);
        let report = decomposition_check(&g, &w, 0.3, &tol).unwrap();
        assert!(report.pass, "{report:?}");

        let k4 = parse_edge_list(K4).unwrap();
        let w = WeightAssignment::from_values(&k4, vec![0.9, 1.4, 0.3, 2.2]).unwrap();
        let report = decomposition_check(&k4, &w, -0.2, &tol).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn decomposition_at_u_zero_is_the_identity() {
        let g = parse_edge_list(K4).unwrap();
        let w = WeightAssignment::unit(&g);
        let report = decomposition_check(&g, &w, 0.0, &Tolerances::default()).unwrap();
        assert!(report.lower_left_norm < 1e-12);
        assert!(report.lower_right_deviation < 1e-12);
        assert!(report.upper_left_deviation < 1e-12);
        assert!(report.upper_right_deviation < 1e-12);
    }

    #[test]
    fn corrupted_operator_fails_the_weighted_check() {
        let g = parse_edge_list(DIAMOND).unwrap();
        let es = crate::edgespace::build_edge_space(&g);
        let mut ops = op_weighted(&es, &WeightAssignment::unit(&g));
        ops.p_tilde[(0, 3)] += 0.05;
        let report = weighted_check_with_ops(&ops, &default_u_grid(), &Tolerances::default());
        assert!(!report.pass);
    }
}
