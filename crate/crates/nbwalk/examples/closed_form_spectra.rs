//! Compute the full eigenvalue multiset of the non-backtracking transition
//! matrix two ways: from the closed forms available for regular and
//! biregular graphs, and by dense QR iteration on the 2m x 2m matrix.

use nbwalk::graph::{parse_edge_list, Graph};
use nbwalk::linalg::Tolerances;
use nbwalk::spectra::{spectrum_report, SpectrumMethod};

fn fixture(name: &str) -> Graph {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    let text = std::fs::read_to_string(path).expect("fixture exists");
    parse_edge_list(&text).expect("fixture parses")
}

fn main() {
    let tol = Tolerances::default();
    for name in ["triangle.edges", "k4.edges", "petersen.edges", "k23.edges", "c4.edges"] {
        let g = fixture(name);
        let report = spectrum_report(&g, SpectrumMethod::Both, &tol)
            .expect("fixtures are regular or biregular");
        println!("{name} ({}):", report.classification);
        let closed = report.closed_form.expect("closed form requested");
        for (value, count) in closed.entries() {
            println!("  {:>24}  x{count}", format!("{:.6}{:+.6}i", value.re, value.im));
        }
        println!(
            "  matching distance vs dense: {:.3e}",
            report.matching_distance.expect("both methods requested")
        );
        if let Some((second, modulus)) = report.second {
            println!(
                "  second eigenvalue {:.6}{:+.6}i, modulus {:.6}",
                second.re, second.im, modulus
            );
        }
        println!();
    }

    // The diamond is neither regular nor biregular, so only the dense
    // method applies; its slowest mode has modulus well above 1/sqrt(2).
    let diamond = fixture("diamond.edges");
    let report = spectrum_report(&diamond, SpectrumMethod::Dense, &tol).unwrap();
    let dense = report.brute_force.expect("dense requested");
    println!("diamond.edges ({}):", report.classification);
    for (value, count) in dense.entries() {
        println!("  {:>24}  x{count}", format!("{:.6}{:+.6}i", value.re, value.im));
    }
    let (second, modulus) = report.second.expect("chain is ergodic");
    println!(
        "  second eigenvalue {:.6}{:+.6}i, modulus {:.6}",
        second.re, second.im, modulus
    );
}
