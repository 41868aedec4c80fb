//! Check both determinant identities numerically: the classical one relating
//! det(I - uB) to a vertex-space determinant, and its weighted analogue for
//! the transition matrix, on every fixture and several weight choices.

use nbwalk::edgespace::{default_u_grid, WeightAssignment};
use nbwalk::graph::{parse_edge_list, Graph};
use nbwalk::ihara::{unweighted_check, weighted_check};
use nbwalk::linalg::Tolerances;
use nbwalk::rng::SplitMix64;

fn fixture(name: &str) -> Graph {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    let text = std::fs::read_to_string(path).expect("fixture exists");
    parse_edge_list(&text).expect("fixture parses")
}

fn random_weights(g: &Graph, seed: u64) -> WeightAssignment {
    let mut rng = SplitMix64::new(seed);
    let values = (0..g.vertex_count()).map(|_| 0.5 + rng.next_f64()).collect();
    WeightAssignment::from_values(g, values).expect("positive weights")
}

fn main() {
    let tol = Tolerances::default();
    let grid = default_u_grid();
    println!("21 samples of u in [-0.5, 0.5], residuals are relative\n");
    println!(
        "{:<24} {:>14} {:>14} {:>14} {:>14}",
        "fixture", "unweighted", "unit", "degree", "random"
    );
    for name in [
        "triangle.edges",
        "diamond.edges",
        "bowtie.edges",
        "pendant_triangle.edges",
        "k4.edges",
        "petersen.edges",
        "k23.edges",
    ] {
        let g = fixture(name);
        let unweighted = unweighted_check(&g, &grid, &tol);
        let unit = weighted_check(&g, &WeightAssignment::unit(&g), &grid, &tol);
        let degree = weighted_check(&g, &WeightAssignment::degree_based(&g), &grid, &tol);
        let random = weighted_check(&g, &random_weights(&g, 7), &grid, &tol);
        for report in [&unweighted, &unit, &degree, &random] {
            assert!(report.pass, "identity failed on {name}");
        }
        println!(
            "{:<24} {:>14.3e} {:>14.3e} {:>14.3e} {:>14.3e}",
            name,
            unweighted.max_residual,
            unit.max_residual,
            degree.max_residual,
            random.max_residual
        );
    }
    println!("\nall identities hold to 1e-9");
}
