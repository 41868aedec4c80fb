//! Simulate non-backtracking walks step by step, then check the Monte
//! Carlo endpoint histogram against exact sparse propagation of the chain.

use nbwalk::graph::{parse_edge_list, Graph};
use nbwalk::walks::{
    monte_carlo_distribution, propagate_exact, simulate, stationary_vertex, Distribution, Domain,
};

fn fixture(name: &str) -> Graph {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    let text = std::fs::read_to_string(path).expect("fixture exists");
    parse_edge_list(&text).expect("fixture parses")
}

fn main() {
    let g = fixture("diamond.edges");

    println!("three walks on the diamond, 12 steps each:");
    for seed in [1, 2, 3] {
        let labels: Vec<&str> = simulate(&g, 0, 12, seed).iter().map(|&v| g.label(v)).collect();
        println!("  seed {seed}: {}", labels.join(" -> "));
    }

    let steps = 6;
    let walkers = 200_000;
    let empirical = monte_carlo_distribution(&g, 0, steps, walkers, 42);
    let start = Distribution::delta(Domain::Vertices, g.vertex_count(), 0);
    let exact = propagate_exact(&g, &start, steps).vertex;
    println!("\n{walkers} walkers, {steps} steps, started at vertex 0:");
    println!("{:>8} {:>12} {:>12} {:>12}", "vertex", "empirical", "exact", "error");
    for v in 0..g.vertex_count() {
        println!(
            "{:>8} {:>12.6} {:>12.6} {:>12.2e}",
            g.label(v),
            empirical.mass[v],
            exact.mass[v],
            (empirical.mass[v] - exact.mass[v]).abs()
        );
    }
    let deviation = empirical.max_distance(&exact);
    assert!(deviation < 0.005, "Monte Carlo should sit within 0.005 of exact");
    println!("max deviation {deviation:.2e}");

    let long_run = propagate_exact(&g, &start, 200).vertex;
    let pi = stationary_vertex(&g);
    println!(
        "\nafter 200 exact steps the walk is stationary: max |f - pi| = {:.2e}",
        long_run.max_distance(&pi)
    );
    println!("pi = {:?}", pi.mass);
}
