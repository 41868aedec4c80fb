//! Load each bundled fixture and report its shape, degree classification,
//! and the ergodicity of its non-backtracking chain.

use nbwalk::edgespace::build_edge_space;
use nbwalk::graph::{parse_edge_list, Graph};
use nbwalk::walks::ergodicity_check;

fn fixture(name: &str) -> Graph {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    let text = std::fs::read_to_string(path).expect("fixture exists");
    parse_edge_list(&text).expect("fixture parses")
}

fn main() {
    let names = [
        "triangle.edges",
        "diamond.edges",
        "bowtie.edges",
        "pendant_triangle.edges",
        "k4.edges",
        "petersen.edges",
        "c4.edges",
        "k23.edges",
    ];
    println!(
        "{:<24} {:>3} {:>3} {:>5} classification         chain",
        "fixture", "n", "m", "arcs"
    );
    for name in names {
        let g = fixture(name);
        let es = build_edge_space(&g);
        let report = ergodicity_check(&g);
        let chain = format!(
            "{}, period {}",
            if report.irreducible { "irreducible" } else { "reducible" },
            report.period
        );
        println!(
            "{:<24} {:>3} {:>3} {:>5} {:<22} {}",
            name,
            g.vertex_count(),
            g.edge_count(),
            es.len(),
            g.classify().to_string(),
            chain
        );
    }
}
