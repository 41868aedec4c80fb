//! Closed-form spectra of the non-backtracking transition matrix for
//! regular and biregular graphs, the dense brute-force oracle, and the
//! mixing-rate case analysis comparing the walk to the usual random walk.

use num_complex::Complex64;

use crate::edgespace::{build_edge_space, op_p_tilde};
use crate::error::{Error, Result};
use crate::graph::{DegreeKind, Graph};
use crate::linalg::{
    general_eigenvalues, quadratic_roots, quartic_even_roots, symmetric_eigen, ComplexMultiset,
    Tolerances,
};

/// Spectrum of the transition matrix for a d-regular graph: +-1/(d-1) with
/// multiplicity m-n each, plus per adjacency eigenvalue lambda the two roots
/// of u^2 - (lambda/(d-1))u + 1/(d-1).
pub fn nb_spectrum_regular(g: &Graph, tol: &Tolerances) -> Result<ComplexMultiset> {
    let DegreeKind::Regular { d } = g.classify().kind else {
        return Err(Error::NotRegular);
    };
    let (lambdas, _) = symmetric_eigen(&g.adjacency_matrix(), tol)?;
    let excess = g.edge_count() - g.vertex_count();
    let scale = (d - 1) as f64;

    let mut values = Vec::with_capacity(2 * g.edge_count());
    for _ in 0..excess {
        values.push(Complex64::new(1.0 / scale, 0.0));
        values.push(Complex64::new(-1.0 / scale, 0.0));
    }
    for &lambda in &lambdas {
        let (r1, r2) = quadratic_roots(-lambda / scale, 1.0 / scale);
        values.push(r1);
        values.push(r2);
    }
    debug_assert_eq!(values.len(), 2 * g.edge_count());
    Ok(ComplexMultiset::from_values(&values, tol.eigen_cluster))
}

/// Spectrum of the transition matrix for a (c,d)-biregular graph with parts
/// of sizes r >= s: +-((c-1)(d-1))^(-1/2) with multiplicity m-n each,
/// +-i(d-1)^(-1/2) with multiplicity r-s each, plus per lambda over the s
/// largest adjacency eigenvalues the four roots of
/// u^4 + (1/(c-1) + 1/(d-1) - lambda^2/((c-1)(d-1)))u^2 + 1/((c-1)(d-1)).
pub fn nb_spectrum_biregular(g: &Graph, tol: &Tolerances) -> Result<ComplexMultiset> {
    let DegreeKind::Biregular { c, d, r, s } = g.classify().kind else {
        return Err(Error::NotBiregular);
    };
    let (lambdas, _) = symmetric_eigen(&g.adjacency_matrix(), tol)?;
    let m = g.edge_count();
    let n = g.vertex_count();
    let cd = ((c - 1) * (d - 1)) as f64;

    let mut values = Vec::with_capacity(2 * m);
    for _ in 0..(m - n) {
        values.push(Complex64::new(1.0 / cd.sqrt(), 0.0));
        values.push(Complex64::new(-1.0 / cd.sqrt(), 0.0));
    }
    for _ in 0..(r - s) {
        let im = 1.0 / ((d - 1) as f64).sqrt();
        values.push(Complex64::new(0.0, im));
        values.push(Complex64::new(0.0, -im));
    }
    // The s largest adjacency eigenvalues, zeros included: the squared
    // singular values of the bipartite block.
    for &lambda in lambdas.iter().rev().take(s) {
        let p = 1.0 / (c - 1) as f64 + 1.0 / (d - 1) as f64 - lambda * lambda / cd;
        values.extend(quartic_even_roots(p, 1.0 / cd));
    }
    debug_assert_eq!(values.len(), 2 * m);
    Ok(ComplexMultiset::from_values(&values, tol.eigen_cluster))
}

/// Brute-force spectrum of the transition matrix; the oracle the closed
/// forms are checked against.
pub fn nb_spectrum_dense(g: &Graph, tol: &Tolerances) -> Result<ComplexMultiset> {
    let es = build_edge_space(g);
    let values = general_eigenvalues(&op_p_tilde(&es))?;
    Ok(ComplexMultiset::from_values(&values, tol.eigen_cluster))
}

/// Closed form chosen by classification; errors when neither case applies.
pub fn nb_spectrum_closed_form(g: &Graph, tol: &Tolerances) -> Result<ComplexMultiset> {
    match g.classify().kind {
        DegreeKind::Regular { .. } => nb_spectrum_regular(g, tol),
        DegreeKind::Biregular { .. } => nb_spectrum_biregular(g, tol),
        DegreeKind::General => Err(Error::NoClosedForm),
    }
}

/// Removes one copy of the Perron eigenvalue 1 and returns the remaining
/// eigenvalue of largest modulus (canonically first on ties) with that
/// modulus.
pub fn second_eigenvalue_modulus(
    spectrum: &ComplexMultiset,
    tol: &Tolerances,
) -> Result<(Complex64, f64)> {
    let one = Complex64::new(1.0, 0.0);
    let mut rest = spectrum.expanded();
    let perron = rest
        .iter()
        .position(|z| (z - one).norm() <= tol.identity_residual)
        .ok_or(Error::MissingPerron {
            tolerance: tol.identity_residual,
        })?;
    rest.remove(perron);
    let mut best = rest[0];
    for &z in &rest[1..] {
        if z.norm() > best.norm() {
            best = z;
        }
    }
    Ok((best, best.norm()))
}

/// Combined closed-form / brute-force spectrum comparison.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub classification: String,
    pub closed_form: Option<ComplexMultiset>,
    pub brute_force: Option<ComplexMultiset>,
    /// Greedy matching distance between the two, when both are present.
    pub matching_distance: Option<f64>,
    pub second: Option<(Complex64, f64)>,
}

/// Which spectra to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    ClosedForm,
    Dense,
    Both,
}

pub fn spectrum_report(g: &Graph, method: SpectrumMethod, tol: &Tolerances) -> Result<SpectrumReport> {
    let classification = g.classify().to_string();
    let closed_form = match method {
        SpectrumMethod::ClosedForm | SpectrumMethod::Both => {
            Some(nb_spectrum_closed_form(g, tol)?)
        }
        SpectrumMethod::Dense => None,
    };
    let brute_force = match method {
        SpectrumMethod::Dense | SpectrumMethod::Both => Some(nb_spectrum_dense(g, tol)?),
        SpectrumMethod::ClosedForm => None,
    };
    let matching_distance = match (&closed_form, &brute_force) {
        (Some(a), Some(b)) => Some(a.matching_distance(b)),
        _ => None,
    };
    let reference = brute_force.as_ref().or(closed_form.as_ref()).unwrap();
    let second = second_eigenvalue_modulus(reference, tol).ok();
    Ok(SpectrumReport {
        classification,
        closed_form,
        brute_force,
        matching_distance,
        second,
    })
}

/// Case analysis for one adjacency eigenvalue of a d-regular graph.
#[derive(Debug, Clone, Copy)]
pub enum RegularMixingCase {
    /// |lambda| > 2 sqrt(d-1): both roots real; the dominant one mu
    /// satisfies |lambda|/(2(d-1)) < |mu| <= |lambda|/d.
    Real { mu: f64, lower: f64, upper: f64, bounds_hold: bool },
    /// lambda = 2 sqrt(d-1): double root exactly at lambda/(2(d-1)); the
    /// strict lower bound degenerates to equality here.
    Boundary { mu: f64 },
    /// lambda < 2 sqrt(d-1): complex pair of modulus exactly 1/sqrt(d-1).
    Complex { modulus: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct RegularMixingReport {
    pub d: usize,
    pub lambda: f64,
    pub case: RegularMixingCase,
    /// One-step rate of the usual random walk for this eigenvalue.
    pub usual_rate: f64,
}

/// Compares the walk eigenvalue arising from adjacency eigenvalue lambda
/// against the usual walk's lambda/d, for a d-regular graph. The comparison
/// needs d >= 3: at d = 2 the walk is deterministic and every eigenvalue
/// sits on the unit circle. Negating lambda negates both roots, so the
/// analysis runs on |lambda| and mu carries lambda's sign; the Real bounds
/// are therefore stated for moduli.
pub fn regular_mixing_comparison(d: usize, lambda: f64) -> Result<RegularMixingReport> {
    if d < 3 {
        return Err(Error::DegreeTooSmall { degree: d });
    }
    assert!(
        lambda.abs() <= d as f64,
        "adjacency eigenvalue magnitude cannot exceed d"
    );
    let scale = (d - 1) as f64;
    let magnitude = lambda.abs();
    let sign = if lambda < 0.0 { -1.0 } else { 1.0 };
    let disc = lambda * lambda - 4.0 * scale;
    let case = if disc.abs() <= 1e-12 * 4.0 * scale {
        RegularMixingCase::Boundary {
            mu: lambda / (2.0 * scale),
        }
    } else if disc > 0.0 {
        let mu = sign * (magnitude + disc.sqrt()) / (2.0 * scale);
        let lower = magnitude / (2.0 * scale);
        let upper = magnitude / d as f64;
        RegularMixingCase::Real {
            mu,
            lower,
            upper,
            bounds_hold: lower < mu.abs() && mu.abs() <= upper + 1e-12,
        }
    } else {
        RegularMixingCase::Complex {
            modulus: 1.0 / scale.sqrt(),
        }
    };
    Ok(RegularMixingReport {
        d,
        lambda,
        case,
        usual_rate: lambda / d as f64,
    })
}

/// Case analysis for one adjacency eigenvalue of a (c,d)-biregular graph.
#[derive(Debug, Clone)]
pub struct BiregularMixingReport {
    pub c: usize,
    pub d: usize,
    pub lambda: f64,
    pub roots: [Complex64; 4],
    /// Discriminant of the quadratic in u^2.
    pub discriminant: f64,
    /// Strict window (sqrt(c-1) - sqrt(d-1))^2 < lambda^2 <
    /// (sqrt(c-1) + sqrt(d-1))^2, equivalent to a negative discriminant.
    pub inside_window: bool,
    /// Whether all four roots share modulus ((c-1)(d-1))^(-1/4).
    pub uniform_modulus: bool,
    /// The single-modulus claim checked both ways: uniform modulus holds
    /// exactly when the discriminant is nonpositive. (At discriminant zero
    /// the double root still has the common modulus, so the strict window
    /// understates by the boundary alone.)
    pub claim_verified: bool,
    /// Squared-eigenvalue rate of the usual walk, lambda^2/(cd).
    pub usual_rate: f64,
}

pub fn biregular_mixing_comparison(c: usize, d: usize, lambda: f64) -> BiregularMixingReport {
    assert!(c >= 2 && d >= 2, "biregular degrees are at least 2");
    let cd = ((c - 1) * (d - 1)) as f64;
    assert!(
        (0.0..=((c * d) as f64).sqrt() + 1e-12).contains(&lambda),
        "adjacency eigenvalue magnitude cannot exceed sqrt(cd)"
    );
    let p = 1.0 / (c - 1) as f64 + 1.0 / (d - 1) as f64 - lambda * lambda / cd;
    let q = 1.0 / cd;
    let roots = quartic_even_roots(p, q);
    let discriminant = p * p - 4.0 * q;
    let inside_window = discriminant < 0.0;

    let common = cd.powf(-0.25);
    let uniform_modulus = roots.iter().all(|z| (z.norm() - common).abs() < 1e-10);
    let boundary = discriminant.abs() <= 1e-12 * 4.0 * q;
    let claim_verified = if boundary {
        uniform_modulus
    } else {
        inside_window == uniform_modulus
    };

    BiregularMixingReport {
        c,
        d,
        lambda,
        roots,
        discriminant,
        inside_window,
        uniform_modulus,
        claim_verified,
        usual_rate: lambda * lambda / (c * d) as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_test_graph, parse_edge_list, GraphProfile};

    const DIAMOND: &str = "0 1\n0 2\n1 2\n1 3\n2 3\n";
    const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
    const K23: &str = "0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n";
    const BOWTIE: &str = "0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n";
    const C4: &str = "0 1\n1 2\n2 3\n3 0\n";

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn k4_closed_form_matches_the_hand_computation() {
        // d = 3, adjacency spectrum {3, -1, -1, -1}:
        // lambda = 3 gives {1, 1/2}; lambda = -1 gives (-1 +- i sqrt(7))/4;
        // excess m - n = 2 contributes +-1/2 twice each.
        let g = parse_edge_list(K4).unwrap();
        let spectrum = nb_spectrum_regular(&g, &tol()).unwrap();
        let s7 = 7.0f64.sqrt();
        let mut expected = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(-0.5, 0.0),
            Complex64::new(-0.5, 0.0),
        ];
        for _ in 0..3 {
            expected.push(Complex64::new(-0.25, s7 / 4.0));
            expected.push(Complex64::new(-0.25, -s7 / 4.0));
        }
        let want = ComplexMultiset::from_values(&expected, 1e-8);
        assert_eq!(spectrum.total_multiplicity(), 12);
        assert!(spectrum.matching_distance(&want) < 1e-9);

        let dense = nb_spectrum_dense(&g, &tol()).unwrap();
        assert!(spectrum.matching_distance(&dense) < 1e-6);
    }

    #[test]
    fn perron_root_is_one_for_every_degree() {
        for d in 3..=10 {
            let scale = (d - 1) as f64;
            let (r1, r2) = quadratic_roots(-(d as f64) / scale, 1.0 / scale);
            let closest = if (r1 - Complex64::new(1.0, 0.0)).norm()
                < (r2 - Complex64::new(1.0, 0.0)).norm()
            {
                r1
            } else {
                r2
            };
            assert!((closest - Complex64::new(1.0, 0.0)).norm() < 1e-12, "d={d}");
        }
    }

    #[test]
    fn cycle_spectrum_sits_on_the_unit_circle() {
        let g = parse_edge_list(C4).unwrap();
        let spectrum = nb_spectrum_regular(&g, &tol()).unwrap();
        assert_eq!(spectrum.total_multiplicity(), 8);
        // The double roots at lambda = +-2 amplify eigenvalue roundoff by a
        // square root, so the circle is only hit to ~1e-8 here.
        for &(z, _) in spectrum.entries() {
            assert!((z.norm() - 1.0).abs() < 1e-7, "|z| = {}", z.norm());
        }
        let dense = nb_spectrum_dense(&g, &tol()).unwrap();
        assert!(spectrum.matching_distance(&dense) < 1e-6);
    }

    #[test]
    fn k23_closed_form_matches_the_hand_computation() {
        let g = parse_edge_list(K23).unwrap();
        let spectrum = nb_spectrum_biregular(&g, &tol()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [
            // excess m - n = 1.
            Complex64::new(h, 0.0),
            Complex64::new(-h, 0.0),
            // r - s = 1.
            Complex64::new(0.0, h),
            Complex64::new(0.0, -h),
            // lambda = sqrt(6): (u^2 - 1)(u^2 - 1/2).
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(-h, 0.0),
            // lambda = 0: (u^2 + 1)(u^2 + 1/2).
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, h),
            Complex64::new(0.0, -h),
        ];
        let want = ComplexMultiset::from_values(&expected, 1e-8);
        assert_eq!(spectrum.total_multiplicity(), 12);
        assert!(spectrum.matching_distance(&want) < 1e-9);

        let dense = nb_spectrum_dense(&g, &tol()).unwrap();
        assert!(spectrum.matching_distance(&dense) < 1e-6);
    }

    #[test]
    fn biregular_perron_root_is_one() {
        let report = biregular_mixing_comparison(2, 3, 6.0f64.sqrt());
        let hit = report
            .roots
            .iter()
            .any(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(hit, "roots {:?}", report.roots);
    }

    #[test]
    fn closed_form_multiplicity_identity() {
        // 2(m-n) + 2(r-s) + 4s = 2m whenever n = r+s and m = rc = sd.
        for (c, d, r, s) in [(2usize, 3usize, 3usize, 2usize), (3, 4, 8, 6), (2, 4, 6, 3)] {
            let m = r * c;
            assert_eq!(m, s * d);
            let n = r + s;
            assert_eq!(2 * (m - n) + 2 * (r - s) + 4 * s, 2 * m);
        }
    }

    #[test]
    fn dense_diamond_spectrum_frozen_values() {
        // Eigenvalues of the diamond transition matrix, frozen from an
        // independent diagonalization. The conjugate pair of largest
        // non-Perron modulus is -0.29488 +- 0.87227i (modulus 0.92077).
        let g = parse_edge_list(DIAMOND).unwrap();
        let dense = nb_spectrum_dense(&g, &tol()).unwrap();
        let expected = ComplexMultiset::from_values(
            &[
                Complex64::new(-0.7071067811865476, 0.0),
                Complex64::new(-0.5, -0.5),
                Complex64::new(-0.5, 0.5),
                Complex64::new(-0.2948772562383851, -0.8722716255387898),
                Complex64::new(-0.2948772562383851, 0.8722716255387898),
                Complex64::new(0.0, -0.7071067811865476),
                Complex64::new(0.0, 0.7071067811865476),
                Complex64::new(0.5897545124767702, 0.0),
                Complex64::new(0.7071067811865476, 0.0),
                Complex64::new(1.0, 0.0),
            ],
            1e-8,
        );
        assert!(dense.matching_distance(&expected) < 1e-9);

        let (second, modulus) = second_eigenvalue_modulus(&dense, &tol()).unwrap();
        assert!((modulus - 0.9207661944241909).abs() < 1e-9, "got {second}");
    }

    #[test]
    fn bowtie_contains_a_unit_modulus_pair() {
        let g = parse_edge_list(BOWTIE).unwrap();
        let dense = nb_spectrum_dense(&g, &tol()).unwrap();
        let target = Complex64::new(-0.5, 3.0f64.sqrt() / 2.0);
        let hit = dense
            .expanded()
            .iter()
            .any(|z| (z - target).norm() < 1e-9);
        assert!(hit);
        let (_, modulus) = second_eigenvalue_modulus(&dense, &tol()).unwrap();
        assert!((modulus - 1.0).abs() < 1e-9, "periodic chain keeps modulus 1");
    }

    #[test]
    fn triangle_dense_spectrum_is_two_cycles() {
        let g = parse_edge_list("0 1\n1 2\n2 0\n").unwrap();
        let dense = nb_spectrum_dense(&g, &tol()).unwrap();
        let w = Complex64::new(-0.5, 3.0f64.sqrt() / 2.0);
        let expected = ComplexMultiset::from_values(
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                w,
                w,
                w.conj(),
                w.conj(),
            ],
            1e-8,
        );
        assert!(dense.matching_distance(&expected) < 1e-9);
    }

    #[test]
    fn closed_forms_match_dense_on_generated_graphs() {
        let t = tol();
        for (d, n, seed) in [(3usize, 8usize, 11u64), (4, 10, 12), (5, 12, 13)] {
            let g = generate_test_graph(&GraphProfile::Regular { d, n }, seed).unwrap();
            let closed = nb_spectrum_regular(&g, &t).unwrap();
            let dense = nb_spectrum_dense(&g, &t).unwrap();
            assert!(
                closed.matching_distance(&dense) < 1e-6,
                "regular d={d} n={n}"
            );
        }
        for (c, d, r, s, seed) in [(2usize, 3usize, 3usize, 2usize, 5u64), (3, 4, 4, 3, 6), (2, 4, 6, 3, 7)] {
            let g = generate_test_graph(&GraphProfile::Biregular { c, d, r, s }, seed).unwrap();
            let closed = nb_spectrum_biregular(&g, &t).unwrap();
            let dense = nb_spectrum_dense(&g, &t).unwrap();
            assert!(
                closed.matching_distance(&dense) < 1e-6,
                "biregular ({c},{d},{r},{s})"
            );
        }
    }

    #[test]
    fn wrong_classification_is_rejected() {
        let g = parse_edge_list(DIAMOND).unwrap();
        assert!(matches!(
            nb_spectrum_regular(&g, &tol()),
            Err(Error::NotRegular)
        ));
        assert!(matches!(
            nb_spectrum_biregular(&g, &tol()),
            Err(Error::NotBiregular)
        ));
        assert!(matches!(
            nb_spectrum_closed_form(&g, &tol()),
            Err(Error::NoClosedForm)
        ));
    }

    #[test]
    fn missing_perron_is_detected() {
        let ms = ComplexMultiset::from_values(
            &[Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0)],
            1e-8,
        );
        assert!(matches!(
            second_eigenvalue_modulus(&ms, &tol()),
            Err(Error::MissingPerron { .. })
        ));
    }

    #[test]
    fn regular_mixing_cases() {
        // Petersen case: lambda = 2 < 2 sqrt(2), complex pair.
        let r = regular_mixing_comparison(3, 2.0).unwrap();
        match r.case {
            RegularMixingCase::Complex { modulus } => {
                assert!((modulus - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
            }
            other => panic!("expected complex case, got {other:?}"),
        }
        assert!((r.usual_rate - 2.0 / 3.0).abs() < 1e-15);

        // Discriminant zero: double root at lambda / (2(d-1)).
        let r = regular_mixing_comparison(3, 2.0 * 2.0f64.sqrt()).unwrap();
        match r.case {
            RegularMixingCase::Boundary { mu } => {
                assert!((mu - 2.0f64.sqrt() / 2.0).abs() < 1e-12);
            }
            other => panic!("expected boundary case, got {other:?}"),
        }

        // Perron: mu = 1, right bound tight.
        let r = regular_mixing_comparison(3, 3.0).unwrap();
        match r.case {
            RegularMixingCase::Real { mu, bounds_hold, .. } => {
                assert!((mu - 1.0).abs() < 1e-12);
                assert!(bounds_hold);
            }
            other => panic!("expected real case, got {other:?}"),
        }

        assert!(matches!(
            regular_mixing_comparison(2, 1.0),
            Err(Error::DegreeTooSmall { degree: 2 })
        ));
    }

    #[test]
    fn real_case_bounds_hold_across_degrees() {
        for d in 3..=10usize {
            let low = 2.0 * ((d - 1) as f64).sqrt();
            for i in 1..=40 {
                let lambda = low + (d as f64 - low) * i as f64 / 40.0;
                let r = regular_mixing_comparison(d, lambda).unwrap();
                match r.case {
                    RegularMixingCase::Real { bounds_hold, .. } => {
                        assert!(bounds_hold, "d={d}, lambda={lambda}")
                    }
                    RegularMixingCase::Boundary { .. } => {}
                    RegularMixingCase::Complex { .. } => {
                        panic!("lambda={lambda} is above the boundary for d={d}")
                    }
                }
            }
        }
    }

    #[test]
    fn complex_case_modulus_is_exact() {
        for d in 3..=10usize {
            let edge = 2.0 * ((d - 1) as f64).sqrt();
            for i in 0..40 {
                let lambda = edge * i as f64 / 41.0;
                let r = regular_mixing_comparison(d, lambda).unwrap();
                if let RegularMixingCase::Complex { modulus } = r.case {
                    assert!(
                        (modulus * modulus - 1.0 / (d - 1) as f64).abs() <= 1e-12,
                        "d={d}, lambda={lambda}"
                    );
                } else {
                    panic!("expected complex case at lambda={lambda}, d={d}");
                }
            }
        }
    }

    #[test]
    fn biregular_window_and_moduli() {
        // Below the window: two distinct moduli.
        let r = biregular_mixing_comparison(2, 3, 0.0);
        assert!(!r.inside_window);
        assert!(!r.uniform_modulus);
        assert!(r.claim_verified);
        let mut moduli: Vec<f64> = r.roots.iter().map(|z| z.norm()).collect();
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((moduli[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((moduli[3] - 1.0).abs() < 1e-12);

        // Inside the window: all four share ((c-1)(d-1))^(-1/4).
        let r = biregular_mixing_comparison(3, 3, 1.0);
        assert!(r.inside_window);
        assert!(r.uniform_modulus);
        assert!(r.claim_verified);
        for z in r.roots {
            assert!((z.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn biregular_root_product_is_the_constant_term() {
        for (c, d) in [(2usize, 3usize), (3, 4), (2, 4), (5, 6)] {
            let top = ((c * d) as f64).sqrt();
            for i in 0..=20 {
                let lambda = top * i as f64 / 20.0;
                let r = biregular_mixing_comparison(c, d, lambda);
                let product = r.roots.iter().fold(Complex64::new(1.0, 0.0), |acc, z| acc * z);
                let expected = 1.0 / ((c - 1) * (d - 1)) as f64;
                assert!(
                    (product - Complex64::new(expected, 0.0)).norm() < 1e-10,
                    "c={c}, d={d}, lambda={lambda}"
                );
                assert!(r.claim_verified, "c={c}, d={d}, lambda={lambda}");
            }
        }
    }

    #[test]
    fn spectrum_report_carries_both_sides() {
        let g = parse_edge_list(K4).unwrap();
        let report = spectrum_report(&g, SpectrumMethod::Both, &tol()).unwrap();
        assert!(report.matching_distance.unwrap() < 1e-6);
        assert_eq!(report.classification, "regular(d=3)");
        let (_, modulus) = report.second.unwrap();
        assert!((modulus - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
    }
}
