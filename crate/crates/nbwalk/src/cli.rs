//! Command-line frontend: argument grammar, CSV emission, exit codes.
//!
//! Exit code 0 means every requested check passed, 1 means the input or
//! arguments were unusable, 2 means a mathematical check failed.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::edgespace::{build_edge_space, parse_weight_file, FallbackWeight, WeightAssignment};
use crate::error::Result;
use crate::graph::{parse_edge_list, Graph};
use crate::ihara;
use crate::laplacian;
use crate::linalg::Tolerances;
use crate::spectra::{self, SpectrumMethod};
use crate::walks::{self, Distribution, Domain, StartMode};

const GRAMMAR: &str = "usage: nbwalk <info|ihara-check|decomp-check|spectrum|mix|simulate|laplacian-compare> [flags] <graph-file>";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Parser)]
#[command(name = "nbwalk", about = "Non-backtracking walk toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph statistics, degree classification, and chain ergodicity.
    Info {
        graph: PathBuf,
    },
    /// Verify the determinant identities on a grid of u values.
    IharaCheck {
        /// unit | degree | path to a weight file
        #[arg(long, default_value = "unit")]
        weights: String,
        /// Sample grid a:b:count for u
        #[arg(long, value_parser = parse_u_grid, allow_hyphen_values = true)]
        u_grid: Option<UGrid>,
        /// Override the pass/fail residual threshold
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Verify the change-of-basis block decomposition on a grid of u values.
    DecompCheck {
        #[arg(long, default_value = "unit")]
        weights: String,
        #[arg(long, value_parser = parse_u_grid, allow_hyphen_values = true)]
        u_grid: Option<UGrid>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Eigenvalues of the transition matrix, closed form and/or dense.
    Spectrum {
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Chi-squared convergence series of the chain.
    Mix {
        #[arg(long, default_value_t = 60)]
        steps: usize,
        /// edge: maximize over directed-edge starts; vertex: over lifted vertices
        #[arg(long, value_enum, default_value_t = StartArg::Edge)]
        starts: StartArg,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Monte Carlo endpoint histogram against exact propagation.
    Simulate {
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 10_000)]
        walkers: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Start vertex label; defaults to the first vertex
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Spectral gaps of both Laplacians and the comparison inequality.
    LaplacianCompare {
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Dense,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartArg {
    Edge,
    Vertex,
}

/// An inclusive evenly spaced sample grid, parsed from "a:b:count".
#[derive(Clone)]
struct UGrid(Vec<f64>);

fn parse_u_grid(text: &str) -> std::result::Result<UGrid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected a:b:count, got '{text}'"));
    }
    let a: f64 = parts[0].parse().map_err(|e| format!("bad grid start: {e}"))?;
    let b: f64 = parts[1].parse().map_err(|e| format!("bad grid end: {e}"))?;
    let count: usize = parts[2].parse().map_err(|e| format!("bad grid count: {e}"))?;
    if count < 2 || !a.is_finite() || !b.is_finite() || a >= b {
        return Err(format!("grid needs a < b and count >= 2, got '{text}'"));
    }
    let grid = crate::edgespace::u_grid(a, b, count);
    // At u = +-1 the factor (1 - u^2)^(m-n) collapses the unweighted
    // identity to 0 = 0, a vacuous pass, so such samples are refused.
    if grid.iter().any(|u| (u.abs() - 1.0).abs() < 1e-9) {
        return Err(format!("grid '{text}' contains u = +-1, where the identity is degenerate"));
    }
    Ok(UGrid(grid))
}

/// Twelve significant digits, locale-free.
fn fmt(x: f64) -> String {
    format!("{x:.11e}")
}

fn check_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}

fn load_weights(g: &Graph, spec: &str) -> Result<WeightAssignment> {
    match spec {
        "unit" => Ok(WeightAssignment::unit(g)),
        "degree" => Ok(WeightAssignment::degree_based(g)),
        path => {
            let text = std::fs::read_to_string(path)?;
            parse_weight_file(g, &text, FallbackWeight::Unit)
        }
    }
}

fn tolerances_with(tol: Option<f64>) -> Tolerances {
    let mut t = Tolerances::default();
    if let Some(x) = tol {
        t.identity_residual = x;
        t.spectrum_match = x;
    }
    t
}

/// Buffers output so a partially written file never appears on error paths.
struct Sink {
    buffer: Vec<u8>,
    target: Option<PathBuf>,
}

impl Sink {
    fn new(target: Option<PathBuf>) -> Sink {
        Sink { buffer: Vec::new(), target }
    }

    fn line(&mut self, text: impl Display) {
        writeln!(self.buffer, "{text}").expect("vector writes cannot fail");
    }

    fn flush(self, out: &mut dyn Write) -> std::io::Result<()> {
        match self.target {
            Some(path) => std::fs::write(path, self.buffer),
            None => out.write_all(&self.buffer),
        }
    }
}

/// Run the CLI against `args` (argv[0] included), writing primary output to
/// `out` unless redirected by --out. Returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render();
            // Help and version requests are successful terminations.
            if err.use_stderr() {
                eprintln!("{rendered}");
                eprintln!("{GRAMMAR}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Info { graph } => cmd_info(&graph, out),
        Command::IharaCheck { weights, u_grid, tol, out: target, graph } => {
            cmd_ihara(&graph, &weights, u_grid, tol, target, out)
        }
        Command::DecompCheck { weights, u_grid, tol, out: target, graph } => {
            cmd_decomp(&graph, &weights, u_grid, tol, target, out)
        }
        Command::Spectrum { method, tol, out: target, graph } => {
            cmd_spectrum(&graph, method, tol, target, out)
        }
        Command::Mix { steps, starts, out: target, graph } => {
            cmd_mix(&graph, steps, starts, target, out)
        }
        Command::Simulate { steps, walkers, seed, start, out: target, graph } => {
            cmd_simulate(&graph, steps, walkers, seed, start, target, out)
        }
        Command::LaplacianCompare { tol, out: target, graph } => {
            cmd_laplacian(&graph, tol, target, out)
        }
    }
}

fn cmd_info(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let g = load_graph(path)?;
    let es = build_edge_space(&g);
    let ergodicity = walks::ergodicity_check(&g);
    let mut sink = Sink::new(None);
    sink.line(format!("n={}", g.vertex_count()));
    sink.line(format!("m={}", g.edge_count()));
    sink.line(format!("volume={}", g.volume()));
    sink.line(format!("directed_edges={}", es.len()));
    sink.line(format!("classification={}", g.classify()));
    sink.line(format!("irreducible={}", ergodicity.irreducible));
    sink.line(format!("period={}", ergodicity.period));
    sink.line(format!("aperiodic={}", ergodicity.aperiodic()));
    sink.line(format!("ergodic={}", ergodicity.ergodic()));
    sink.flush(out)?;
    Ok(EXIT_OK)
}

fn cmd_ihara(
    path: &Path,
    weights: &str,
    u_grid: Option<UGrid>,
    tol: Option<f64>,
    target: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = load_graph(path)?;
    let w = load_weights(&g, weights)?;
    let grid = u_grid.map(|g| g.0).unwrap_or_else(crate::edgespace::default_u_grid);
    let tolerances = tolerances_with(tol);
    let unweighted = ihara::unweighted_check(&g, &grid, &tolerances);
    let weighted = ihara::weighted_check(&g, &w, &grid, &tolerances);
    let mut sink = Sink::new(target);
    sink.line("u,identity,lhs,rhs,residual,check");
    for sample in &unweighted.samples {
        sink.line(format!(
            "{},unweighted,{},{},{},{}",
            fmt(sample.u),
            fmt(sample.lhs),
            fmt(sample.rhs),
            fmt(sample.residual),
            check_word(sample.residual <= tolerances.identity_residual),
        ));
    }
    for sample in &weighted.samples {
        sink.line(format!(
            "{},weighted,{},{},{},{}",
            fmt(sample.u),
            fmt(sample.lhs),
            fmt(sample.rhs),
            fmt(sample.residual),
            check_word(sample.residual <= tolerances.identity_residual),
        ));
    }
    sink.line(format!(
        "# max_residual={} pass={}",
        fmt(unweighted.max_residual.max(weighted.max_residual)),
        unweighted.pass && weighted.pass,
    ));
    sink.flush(out)?;
    Ok(if unweighted.pass && weighted.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_decomp(
    path: &Path,
    weights: &str,
    u_grid: Option<UGrid>,
    tol: Option<f64>,
    target: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = load_graph(path)?;
    let w = load_weights(&g, weights)?;
    let grid = u_grid.map(|g| g.0).unwrap_or_else(crate::edgespace::default_u_grid);
    let tolerances = tolerances_with(tol);
    let mut sink = Sink::new(target);
    sink.line("u,lower_left_norm,lower_right_deviation,upper_left_deviation,upper_right_deviation,inverse_formula_residual,check");
    let mut all_pass = true;
    for &u in &grid {
        let report = ihara::decomposition_check(&g, &w, u, &tolerances)?;
        all_pass &= report.pass;
        sink.line(format!(
            "{},{},{},{},{},{},{}",
            fmt(report.u),
            fmt(report.lower_left_norm),
            fmt(report.lower_right_deviation),
            fmt(report.upper_left_deviation),
            fmt(report.upper_right_deviation),
            fmt(report.inverse_formula_residual),
            check_word(report.pass),
        ));
    }
    sink.flush(out)?;
    Ok(if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_spectrum(
    path: &Path,
    method: MethodArg,
    tol: Option<f64>,
    target: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = load_graph(path)?;
    let tolerances = tolerances_with(tol);
    let method = match method {
        MethodArg::ClosedForm => SpectrumMethod::ClosedForm,
        MethodArg::Dense => SpectrumMethod::Dense,
        MethodArg::Both => SpectrumMethod::Both,
    };
    let report = spectra::spectrum_report(&g, method, &tolerances)?;
    let mut sink = Sink::new(target);
    sink.line("re,im,multiplicity,source");
    if let Some(multiset) = &report.closed_form {
        for (value, count) in multiset.entries() {
            sink.line(format!("{},{},{count},closed-form", fmt(value.re), fmt(value.im)));
        }
    }
    if let Some(multiset) = &report.brute_force {
        for (value, count) in multiset.entries() {
            sink.line(format!("{},{},{count},dense", fmt(value.re), fmt(value.im)));
        }
    }
    sink.line(format!("# classification={}", report.classification));
    if let Some((second, modulus)) = &report.second {
        let sign = if second.im < 0.0 { '-' } else { '+' };
        sink.line(format!(
            "# second_eigenvalue={}{sign}{}i modulus={}",
            fmt(second.re),
            fmt(second.im.abs()),
            fmt(*modulus),
        ));
    }
    let code = match report.matching_distance {
        Some(distance) => {
            let ok = distance <= tolerances.spectrum_match;
            sink.line(format!(
                "# matching_distance={} check={}",
                fmt(distance),
                check_word(ok),
            ));
            if ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        None => EXIT_OK,
    };
    sink.flush(out)?;
    Ok(code)
}

fn cmd_mix(
    path: &Path,
    steps: usize,
    starts: StartArg,
    target: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = load_graph(path)?;
    let mode = match starts {
        StartArg::Edge => StartMode::EdgeIndicators,
        StartArg::Vertex => StartMode::VertexLifted,
    };
    let series = walks::chi_squared_series(&g, steps, mode);
    let mut sink = Sink::new(target);
    sink.line("t,chi_squared,max_norm,rate_estimate");
    for point in &series.points {
        sink.line(format!(
            "{},{},{},{}",
            point.t,
            fmt(point.delta),
            fmt(point.max_norm),
            fmt(point.root),
        ));
    }
    sink.line(format!("# tail_rate={}", fmt(series.tail_rate)));
    sink.flush(out)?;
    Ok(EXIT_OK)
}

fn cmd_simulate(
    path: &Path,
    steps: usize,
    walkers: u64,
    seed: u64,
    start: Option<String>,
    target: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = load_graph(path)?;
    let start_id = match &start {
        Some(label) => g.vertex_id(label)?,
        None => 0,
    };
    let empirical = walks::monte_carlo_distribution(&g, start_id, steps, walkers, seed);
    let delta = Distribution::delta(Domain::Vertices, g.vertex_count(), start_id);
    let exact = walks::propagate_exact(&g, &delta, steps).vertex;
    let mut sink = Sink::new(target);
    sink.line("vertex,empirical,exact,abs_error");
    let mut max_error = 0.0f64;
    for v in 0..g.vertex_count() {
        let error = (empirical.mass[v] - exact.mass[v]).abs();
        max_error = max_error.max(error);
        sink.line(format!(
            "{},{},{},{}",
            g.label(v),
            fmt(empirical.mass[v]),
            fmt(exact.mass[v]),
            fmt(error),
        ));
    }
    sink.line(format!(
        "# start={} steps={steps} walkers={walkers} seed={seed} max_abs_error={}",
        g.label(start_id),
        fmt(max_error),
    ));
    sink.flush(out)?;
    Ok(EXIT_OK)
}

fn cmd_laplacian(
    path: &Path,
    tol: Option<f64>,
    target: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = load_graph(path)?;
    let tolerances = tolerances_with(tol);
    let pair = laplacian::compare_lambda1(&g, &tolerances)?;
    let mut sink = Sink::new(target);
    sink.line("lambda1_vertex,lambda1_edge,chung_bound,inequality");
    sink.line(format!(
        "{},{},{},{}",
        fmt(pair.lambda1_vertex),
        fmt(pair.lambda1_edge),
        fmt(pair.chung_bound),
        check_word(pair.inequality_ok),
    ));
    sink.flush(out)?;
    Ok(if pair.inequality_ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parser_accepts_the_documented_form() {
        let grid = parse_u_grid("-0.5:0.5:21").unwrap().0;
        assert_eq!(grid.len(), 21);
        assert!((grid[0] + 0.5).abs() < 1e-15);
        assert!((grid[20] - 0.5).abs() < 1e-15);
        assert!(parse_u_grid("0.5").is_err());
        assert!(parse_u_grid("1:0:5").is_err());
        assert!(parse_u_grid("0:1:1").is_err());
    }

    #[test]
    fn grid_parser_refuses_degenerate_samples() {
        assert!(parse_u_grid("0:1:3").is_err());
        assert!(parse_u_grid("-1:0.5:4").is_err());
        assert!(parse_u_grid("-0.999:0.999:21").is_ok());
    }

    #[test]
    fn float_format_has_twelve_significant_digits() {
        assert_eq!(fmt(1.0), "1.00000000000e0");
        assert_eq!(fmt(-0.25), "-2.50000000000e-1");
    }
}
