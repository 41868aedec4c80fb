//! Normalized vertex Laplacian, the symmetrized directed-edge Laplacian of
//! the non-backtracking chain, Rayleigh quotients, and the spectral-gap
//! comparison between the two.

use crate::edgespace::{build_edge_space, op_p_tilde, DirectedEdgeSpace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{symmetric_eigen, Matrix, Tolerances};

/// Both Laplacians of a graph with their spectral gaps and the mixing-time
/// bound 2 ln(vol G) / lambda_1 derived from the directed gap.
#[derive(Debug, Clone)]
pub struct LaplacianPair {
    pub vertex_laplacian: Matrix,
    pub edge_laplacian: Matrix,
    /// Second-smallest eigenvalue of the vertex Laplacian.
    pub lambda1_vertex: f64,
    /// Second-smallest eigenvalue of the edge Laplacian.
    pub lambda1_edge: f64,
    pub chung_bound: f64,
    /// lambda_1 of the edge chain never exceeds the vertex gap.
    pub inequality_ok: bool,
}

/// Normalized Laplacian I - D^{-1/2} A D^{-1/2}. Symmetric, PSD, and its
/// kernel contains D^{1/2} 1.
pub fn normalized_laplacian(g: &Graph) -> Matrix {
    let n = g.vertex_count();
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    Matrix::from_fn(n, n, |i, j| {
        let coupling = if g.neighbors(i).contains(&j) {
            -inv_sqrt[i] * inv_sqrt[j]
        } else {
            0.0
        };
        if i == j {
            1.0 + coupling
        } else {
            coupling
        }
    })
}

/// Directed-edge Laplacian I - (P~ + P~^T)/2 of the non-backtracking chain.
/// The chain's Perron vector is constant, so the usual measure conjugation
/// collapses to the plain symmetrization. Symmetric with zero row sums.
pub fn nb_directed_laplacian(g: &Graph) -> Matrix {
    let es = build_edge_space(g);
    let p = op_p_tilde(&es);
    let k = es.len();
    Matrix::from_fn(k, k, |i, j| {
        let sym = 0.5 * (p[(i, j)] + p[(j, i)]);
        if i == j {
            1.0 - sym
        } else {
            -sym
        }
    })
}

/// Quadratic-form Rayleigh quotient f^T M f / f^T f.
pub fn rayleigh(m: &Matrix, f: &[f64]) -> Result<f64> {
    assert_eq!(m.rows(), f.len(), "dimension mismatch");
    let norm_sq: f64 = f.iter().map(|x| x * x).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mf = m.mul_vec(f);
    let quad: f64 = f.iter().zip(&mf).map(|(x, y)| x * y).sum();
    Ok(quad / norm_sq)
}

/// The same quotient for the edge Laplacian written as the explicit sum
/// (1/2) sum over consecutive arc pairs of (f(u,v) - f(v,w))^2 P~((u,v),(v,w))
/// divided by sum f(u,v)^2.
pub fn rayleigh_edge_form(g: &Graph, f: &[f64]) -> Result<f64> {
    let es = build_edge_space(g);
    assert_eq!(f.len(), es.len(), "dimension mismatch");
    let norm_sq: f64 = f.iter().map(|x| x * x).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut total = 0.0;
    for i in 0..es.len() {
        let (_, v) = es.arc(i);
        let range = es.out_range(v);
        let prob = 1.0 / (range.len() - 1) as f64;
        let rev = es.reverse(i);
        for j in range {
            if j != rev {
                total += (f[i] - f[j]).powi(2) * prob;
            }
        }
    }
    Ok(0.5 * total / norm_sq)
}

/// Vertex Rayleigh quotient sum over edges of (f(u) - f(v))^2 divided by
/// the degree-weighted norm sum f(v)^2 d_v. Its minimum over f orthogonal
/// to D1 is lambda_1 of the normalized Laplacian.
pub fn vertex_rayleigh(g: &Graph, f: &[f64]) -> Result<f64> {
    assert_eq!(f.len(), g.vertex_count(), "dimension mismatch");
    let weighted: f64 = f
        .iter()
        .enumerate()
        .map(|(v, x)| x * x * g.degree(v) as f64)
        .sum();
    if weighted == 0.0 {
        return Err(Error::ZeroVector);
    }
    let total: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| (f[u] - f[v]).powi(2))
        .sum();
    Ok(total / weighted)
}

/// Copy a vertex function onto directed edges by source, f'(u,v) = f(u).
pub fn lift_vertex_function(es: &DirectedEdgeSpace, f: &[f64]) -> Vec<f64> {
    assert_eq!(f.len(), es.vertex_count(), "dimension mismatch");
    es.arcs().iter().map(|&(u, _)| f[u]).collect()
}

/// Compute both spectral gaps and check lambda_1(edge) <= lambda_1(vertex).
pub fn compare_lambda1(g: &Graph, tol: &Tolerances) -> Result<LaplacianPair> {
    let vertex_laplacian = normalized_laplacian(g);
    let edge_laplacian = nb_directed_laplacian(g);
    let (vertex_values, _) = symmetric_eigen(&vertex_laplacian, tol)?;
    let (edge_values, _) = symmetric_eigen(&edge_laplacian, tol)?;
    let lambda1_vertex = vertex_values[1];
    let lambda1_edge = edge_values[1];
    let vol = g.volume() as f64;
    let chung_bound = if lambda1_edge > tol.identity_residual {
        2.0 * vol.ln() / lambda1_edge
    } else {
        f64::INFINITY
    };
    let inequality_ok = lambda1_edge <= lambda1_vertex + tol.identity_residual;
    Ok(LaplacianPair {
        vertex_laplacian,
        edge_laplacian,
        lambda1_vertex,
        lambda1_edge,
        chung_bound,
        inequality_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_test_graph, Graph, GraphProfile};
    use crate::rng::SplitMix64;

    fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn complete_graph_normalized_spectrum() {
        let tol = Tolerances::default();
        let (values, _) = symmetric_eigen(&normalized_laplacian(&k4()), &tol).unwrap();
        let expected = [0.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0];
        for (got, want) in values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn sqrt_degree_vector_spans_the_kernel() {
        for g in [diamond(), k4(), triangle()] {
            let lap = normalized_laplacian(&g);
            let kernel: Vec<f64> = (0..g.vertex_count())
                .map(|v| (g.degree(v) as f64).sqrt())
                .collect();
            let image = lap.mul_vec(&kernel);
            assert!(image.iter().all(|x| x.abs() < 1e-14));
        }
    }

    #[test]
    fn diamond_vertex_gap_is_one() {
        let pair = compare_lambda1(&diamond(), &Tolerances::default()).unwrap();
        assert!((pair.lambda1_vertex - 1.0).abs() < 1e-12);
        assert!((pair.lambda1_edge - 0.25).abs() < 1e-12);
        assert!(pair.inequality_ok);
        let expected_bound = 2.0 * (10.0f64).ln() / 0.25;
        assert!((pair.chung_bound - expected_bound).abs() < 1e-9);
    }

    #[test]
    fn triangle_edge_laplacian_is_a_symmetrized_pair_of_cycles() {
        let tol = Tolerances::default();
        let lap = nb_directed_laplacian(&triangle());
        let (values, _) = symmetric_eigen(&lap, &tol).unwrap();
        let expected = [0.0, 0.0, 1.5, 1.5, 1.5, 1.5];
        for (got, want) in values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_laplacian_is_symmetric_psd_with_zero_row_sums() {
        for g in [diamond(), k4(), triangle()] {
            let lap = nb_directed_laplacian(&g);
            assert!(lap.symmetry_defect() < 1e-14);
            for i in 0..lap.rows() {
                let sum: f64 = lap.row(i).iter().sum();
                assert!(sum.abs() < 1e-12, "row sums must vanish");
            }
            let (values, _) = symmetric_eigen(&lap, &Tolerances::default()).unwrap();
            assert!(values[0].abs() < 1e-10, "smallest eigenvalue must be 0");
            assert!(*values.last().unwrap() <= 2.0 + 1e-9);
            assert!(values.iter().all(|&x| x >= -1e-9));
        }
    }

    #[test]
    fn constant_functions_have_zero_rayleigh_quotient() {
        let g = diamond();
        let lap = nb_directed_laplacian(&g);
        let f = vec![1.0; lap.rows()];
        assert!(rayleigh(&lap, &f).unwrap().abs() < 1e-14);
        assert!(rayleigh_edge_form(&g, &f).unwrap().abs() < 1e-14);
    }

    #[test]
    fn zero_vectors_are_rejected() {
        let g = diamond();
        let lap = normalized_laplacian(&g);
        assert!(matches!(rayleigh(&lap, &[0.0; 4]).unwrap_err(), Error::ZeroVector));
        assert!(matches!(
            rayleigh_edge_form(&g, &[0.0; 10]).unwrap_err(),
            Error::ZeroVector
        ));
        assert!(matches!(
            vertex_rayleigh(&g, &[0.0; 4]).unwrap_err(),
            Error::ZeroVector
        ));
    }

    #[test]
    fn explicit_sum_matches_the_matrix_quotient() {
        let g = diamond();
        let lap = nb_directed_laplacian(&g);
        let mut rng = SplitMix64::new(99);
        for _ in 0..5 {
            let f: Vec<f64> = (0..10).map(|_| rng.next_f64() - 0.5).collect();
            let via_matrix = rayleigh(&lap, &f).unwrap();
            let via_sum = rayleigh_edge_form(&g, &f).unwrap();
            assert!((via_matrix - via_sum).abs() < 1e-10);
        }
    }

    #[test]
    fn lifted_minimizer_recovers_the_vertex_gap() {
        let g = diamond();
        let tol = Tolerances::default();
        let lap = normalized_laplacian(&g);
        let (values, vectors) = symmetric_eigen(&lap, &tol).unwrap();
        // f = D^{-1/2} g_1 minimizes the vertex quotient subject to f perp D1.
        let f: Vec<f64> = (0..4)
            .map(|v| vectors[(v, 1)] / (g.degree(v) as f64).sqrt())
            .collect();
        let weighted_sum: f64 = (0..4).map(|v| f[v] * g.degree(v) as f64).sum();
        assert!(weighted_sum.abs() < 1e-10, "minimizer must be orthogonal to D1");
        assert!((vertex_rayleigh(&g, &f).unwrap() - values[1]).abs() < 1e-10);
        let es = build_edge_space(&g);
        let lifted = lift_vertex_function(&es, &f);
        let quotient = rayleigh_edge_form(&g, &lifted).unwrap();
        assert!((quotient - values[1]).abs() < 1e-9);
    }

    #[test]
    fn complete_graph_gap_comparison_is_strict() {
        let pair = compare_lambda1(&k4(), &Tolerances::default()).unwrap();
        assert!((pair.lambda1_vertex - 4.0 / 3.0).abs() < 1e-12);
        assert!((pair.lambda1_edge - 0.5).abs() < 1e-12);
        assert!(pair.inequality_ok);
        assert!(pair.lambda1_vertex - pair.lambda1_edge > 0.5);
    }

    #[test]
    fn gap_inequality_holds_on_generated_graphs() {
        let tol = Tolerances::default();
        let profiles = [
            GraphProfile::Regular { d: 3, n: 8 },
            GraphProfile::Regular { d: 4, n: 9 },
            GraphProfile::Biregular { c: 2, d: 3, r: 6, s: 4 },
            GraphProfile::GnpLike { n: 9, p: 0.5 },
        ];
        for (k, profile) in profiles.iter().enumerate() {
            let g = generate_test_graph(profile, 900 + k as u64).unwrap();
            let pair = compare_lambda1(&g, &tol).unwrap();
            assert!(pair.inequality_ok, "gap comparison failed for {profile:?}");
            assert!(pair.lambda1_vertex >= 0.0 && pair.lambda1_edge >= 0.0);
        }
    }
}
