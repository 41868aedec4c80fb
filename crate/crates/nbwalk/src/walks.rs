//! Exact propagation, simulation, and convergence diagnostics for the
//! non-backtracking walk, plus the plain-walk kernel it is compared against.

use crate::edgespace::{build_edge_space, op_p_tilde, DirectedEdgeSpace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{Matrix, Tolerances};
use crate::rng::{mix, SplitMix64};

/// Index set a probability vector lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Vertices,
    DirectedEdges,
}

/// Probability vector tagged with its domain. Entries are nonnegative and
/// sum to 1 within `Tolerances::distribution_mass`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub domain: Domain,
    pub mass: Vec<f64>,
}

impl Distribution {
    /// Validating constructor for externally supplied vectors.
    pub fn new(domain: Domain, mass: Vec<f64>, tol: &Tolerances) -> Result<Distribution> {
        let dist = Distribution { domain, mass };
        let defect = dist.defect();
        if defect > tol.distribution_mass {
            return Err(Error::NotADistribution { defect });
        }
        Ok(dist)
    }

    /// Point mass at `index` in a domain of size `len`.
    pub fn delta(domain: Domain, len: usize, index: usize) -> Distribution {
        assert!(index < len, "delta index out of range");
        let mut mass = vec![0.0; len];
        mass[index] = 1.0;
        Distribution { domain, mass }
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    /// Worst violation of nonnegativity or unit total mass.
    pub fn defect(&self) -> f64 {
        let sum: f64 = self.mass.iter().sum();
        let worst_negative = self
            .mass
            .iter()
            .fold(0.0f64, |acc, &x| if x < 0.0 { acc.max(-x) } else { acc });
        (sum - 1.0).abs().max(worst_negative)
    }

    /// Max-norm distance to another vector on the same domain.
    pub fn max_distance(&self, other: &Distribution) -> f64 {
        assert_eq!(self.domain, other.domain, "domain mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
        self.mass
            .iter()
            .zip(&other.mass)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

/// Stationary vertex distribution of the simple walk, pi(v) = d_v / vol(G).
pub fn stationary_vertex(g: &Graph) -> Distribution {
    let vol = g.volume() as f64;
    let mass = (0..g.vertex_count()).map(|v| g.degree(v) as f64 / vol).collect();
    Distribution { domain: Domain::Vertices, mass }
}

/// Stationary distribution of the non-backtracking walk on directed edges,
/// uniform because the transition matrix is doubly stochastic.
pub fn stationary_edge(es: &DirectedEdgeSpace) -> Distribution {
    let share = 1.0 / es.len() as f64;
    Distribution { domain: Domain::DirectedEdges, mass: vec![share; es.len()] }
}

/// Lift a vertex distribution to directed edges: each vertex splits its mass
/// evenly over its outgoing edges. Preserves total mass.
pub fn lift(es: &DirectedEdgeSpace, f: &Distribution) -> Distribution {
    assert_eq!(f.domain, Domain::Vertices, "lift expects a vertex distribution");
    assert_eq!(f.len(), es.vertex_count(), "length mismatch");
    let mut mass = vec![0.0; es.len()];
    for v in 0..es.vertex_count() {
        let range = es.out_range(v);
        let share = f.mass[v] / range.len() as f64;
        for i in range {
            mass[i] = share;
        }
    }
    Distribution { domain: Domain::DirectedEdges, mass }
}

/// Project an edge distribution back to vertices by summing each vertex's
/// outgoing edges. Left inverse of `lift`.
pub fn project(es: &DirectedEdgeSpace, f: &Distribution) -> Distribution {
    assert_eq!(f.domain, Domain::DirectedEdges, "project expects an edge distribution");
    assert_eq!(f.len(), es.len(), "length mismatch");
    let mut mass = vec![0.0; es.vertex_count()];
    for v in 0..es.vertex_count() {
        mass[v] = es.out_range(v).map(|i| f.mass[i]).sum();
    }
    Distribution { domain: Domain::Vertices, mass }
}

/// One exact transition of the edge chain: mass on arc (u,v) splits evenly
/// over arcs (v,y) with y != u. Costs O(vol(G)) per step.
fn step_edge(es: &DirectedEdgeSpace, f: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for i in 0..es.len() {
        let p = f[i];
        if p == 0.0 {
            continue;
        }
        let (_, v) = es.arc(i);
        let range = es.out_range(v);
        let share = p / (range.len() - 1) as f64;
        let rev = es.reverse(i);
        for j in range {
            if j != rev {
                out[j] += share;
            }
        }
    }
}

/// Vertex and edge marginals after exact propagation.
#[derive(Debug, Clone)]
pub struct PropagationResult {
    pub vertex: Distribution,
    pub edge: Distribution,
}

/// Propagate a vertex distribution `steps` times through the edge chain:
/// lift, apply the transition `steps` times by sparse row products, project.
pub fn propagate_exact(g: &Graph, f0: &Distribution, steps: usize) -> PropagationResult {
    let es = build_edge_space(g);
    let lifted = lift(&es, f0);
    let mut cur = lifted.mass;
    let mut next = vec![0.0; cur.len()];
    for _ in 0..steps {
        step_edge(&es, &cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    let edge = Distribution { domain: Domain::DirectedEdges, mass: cur };
    let vertex = project(&es, &edge);
    PropagationResult { vertex, edge }
}

/// k-step non-backtracking kernel on vertices: row u is the vertex marginal
/// of a walk started at u. Row-stochastic; k = 1 recovers the simple walk.
pub fn nb_kernel(g: &Graph, k: usize) -> Matrix {
    let n = g.vertex_count();
    let mut kernel = Matrix::zeros(n, n);
    for u in 0..n {
        let delta = Distribution::delta(Domain::Vertices, n, u);
        let result = propagate_exact(g, &delta, k);
        for v in 0..n {
            kernel[(u, v)] = result.vertex.mass[v];
        }
    }
    kernel
}

/// Uniform choice among the targets of `v`'s outgoing arcs, excluding
/// `exclude` when given. The arc layout lists targets in sorted order.
fn random_neighbor(
    es: &DirectedEdgeSpace,
    rng: &mut SplitMix64,
    v: usize,
    exclude: Option<usize>,
) -> usize {
    let range = es.out_range(v);
    match exclude {
        None => es.arc(range.start + rng.index_below(range.len())).1,
        Some(prev) => {
            let pick = rng.index_below(range.len() - 1);
            let mut seen = 0;
            for i in range {
                let y = es.arc(i).1;
                if y == prev {
                    continue;
                }
                if seen == pick {
                    return y;
                }
                seen += 1;
            }
            unreachable!("exclusion must leave d - 1 candidates");
        }
    }
}

/// Simulate one non-backtracking walk. The first step is uniform over all
/// d(start) neighbors, matching the lifted point mass; later steps are
/// uniform over the d - 1 neighbors other than the previous vertex.
/// Returns the trajectory including the start, so `steps + 1` vertices.
pub fn simulate(g: &Graph, start: usize, steps: usize, seed: u64) -> Vec<usize> {
    assert!(start < g.vertex_count(), "start vertex out of range");
    let es = build_edge_space(g);
    let mut rng = SplitMix64::new(seed);
    let mut trajectory = Vec::with_capacity(steps + 1);
    trajectory.push(start);
    if steps == 0 {
        return trajectory;
    }
    let mut prev = start;
    let mut cur = random_neighbor(&es, &mut rng, start, None);
    trajectory.push(cur);
    for _ in 1..steps {
        let next = random_neighbor(&es, &mut rng, cur, Some(prev));
        prev = cur;
        cur = next;
        trajectory.push(cur);
    }
    trajectory
}

/// Empirical endpoint distribution over `walkers` independent walks.
/// Walker w uses the derived seed `seed ^ mix(w)`, so the result is
/// reproducible and independent of iteration order.
pub fn monte_carlo_distribution(
    g: &Graph,
    start: usize,
    steps: usize,
    walkers: u64,
    seed: u64,
) -> Distribution {
    assert!(start < g.vertex_count(), "start vertex out of range");
    assert!(walkers > 0, "need at least one walker");
    let es = build_edge_space(g);
    let mut counts = vec![0u64; g.vertex_count()];
    for w in 0..walkers {
        let mut rng = SplitMix64::new(seed ^ mix(w));
        let mut prev = start;
        let mut cur = start;
        if steps > 0 {
            cur = random_neighbor(&es, &mut rng, start, None);
            for _ in 1..steps {
                let next = random_neighbor(&es, &mut rng, cur, Some(prev));
                prev = cur;
                cur = next;
            }
        }
        counts[cur] += 1;
    }
    let total = walkers as f64;
    let mass = counts.iter().map(|&c| c as f64 / total).collect();
    Distribution { domain: Domain::Vertices, mass }
}

/// Which family of starting states the chi-squared maximum ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartMode {
    /// Point masses on single directed edges (the default).
    EdgeIndicators,
    /// Lifted point masses on single vertices.
    VertexLifted,
}

/// Convergence measurements at one step count.
#[derive(Debug, Clone, Copy)]
pub struct SeriesPoint {
    pub t: usize,
    /// Chi-squared distance maximized over starting states.
    pub delta: f64,
    /// Max-norm distance of the projected vertex marginal to pi,
    /// maximized over the same starting states.
    pub max_norm: f64,
    /// Per-step geometric average delta^(1/t).
    pub root: f64,
}

/// Chi-squared convergence series with a fitted tail decay rate.
#[derive(Debug, Clone)]
pub struct ConvergenceSeries {
    pub mode: StartMode,
    /// Distance at t = 0, sqrt(2m - 1) for edge indicators.
    pub delta0: f64,
    /// Measurements for t = 0..=steps; the t = 0 entry has a NaN root.
    pub points: Vec<SeriesPoint>,
    /// exp(slope) of a least-squares line through ln delta over the tail
    /// half of the series; NaN when too few points sit above noise.
    pub tail_rate: f64,
}

/// Distances below this are treated as converged noise and excluded from
/// the tail fit.
const RATE_FLOOR: f64 = 1e-13;

fn chi_squared_of_rows(
    rows: &Matrix,
    es: &DirectedEdgeSpace,
    pi_edge: f64,
    pi_vertex: &[f64],
) -> (f64, f64) {
    let mut worst_chi = 0.0f64;
    let mut worst_max = 0.0f64;
    for y in 0..rows.rows() {
        let row = rows.row(y);
        let chi: f64 = row.iter().map(|&p| (p - pi_edge).powi(2) / pi_edge).sum();
        worst_chi = worst_chi.max(chi.sqrt());
        for v in 0..es.vertex_count() {
            let marginal: f64 = es.out_range(v).map(|i| row[i]).sum();
            worst_max = worst_max.max((marginal - pi_vertex[v]).abs());
        }
    }
    (worst_chi, worst_max)
}

/// Track the chi-squared distance of the edge chain to stationarity for
/// t = 0..=steps, maximizing over the chosen family of starting states.
pub fn chi_squared_series(g: &Graph, steps: usize, mode: StartMode) -> ConvergenceSeries {
    let es = build_edge_space(g);
    let p = op_p_tilde(&es);
    let pi_edge = 1.0 / es.len() as f64;
    let pi_vertex = stationary_vertex(g).mass;
    let mut rows = match mode {
        StartMode::EdgeIndicators => Matrix::identity(es.len()),
        StartMode::VertexLifted => {
            let n = g.vertex_count();
            let mut m = Matrix::zeros(n, es.len());
            for v in 0..n {
                let lifted = lift(&es, &Distribution::delta(Domain::Vertices, n, v));
                for i in 0..es.len() {
                    m[(v, i)] = lifted.mass[i];
                }
            }
            m
        }
    };
    let (delta0, max_norm0) = chi_squared_of_rows(&rows, &es, pi_edge, &pi_vertex);
    let mut points = Vec::with_capacity(steps + 1);
    points.push(SeriesPoint { t: 0, delta: delta0, max_norm: max_norm0, root: f64::NAN });
    for t in 1..=steps {
        rows = &rows * &p;
        let (delta, max_norm) = chi_squared_of_rows(&rows, &es, pi_edge, &pi_vertex);
        let root = delta.powf(1.0 / t as f64);
        points.push(SeriesPoint { t, delta, max_norm, root });
    }
    let tail_rate = fit_tail_rate(&points, steps);
    ConvergenceSeries { mode, delta0, points, tail_rate }
}

/// Least-squares slope of ln delta over the tail half of the series,
/// exponentiated back to a per-step rate.
fn fit_tail_rate(points: &[SeriesPoint], steps: usize) -> f64 {
    let cut = (steps / 2).max(1);
    let sample: Vec<(f64, f64)> = points
        .iter()
        .filter(|pt| pt.t >= cut && pt.delta > RATE_FLOOR)
        .map(|pt| (pt.t as f64, pt.delta.ln()))
        .collect();
    if sample.len() < 2 {
        return f64::NAN;
    }
    let k = sample.len() as f64;
    let (sx, sy): (f64, f64) = sample.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (sxx, sxy): (f64, f64) = sample
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x * x, b + x * y));
    let slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    slope.exp()
}

/// Structural summary of the edge chain: whether every directed edge reaches
/// every other, and the period of the chain's reference component.
#[derive(Debug, Clone, Copy)]
pub struct ErgodicityReport {
    pub irreducible: bool,
    /// Period of the strongly connected component containing the reference
    /// edge (the lowest-index directed edge).
    pub period: usize,
    pub reference_arc: usize,
    /// Size of that component.
    pub component_size: usize,
}

impl ErgodicityReport {
    pub fn aperiodic(&self) -> bool {
        self.period == 1
    }

    pub fn ergodic(&self) -> bool {
        self.irreducible && self.period == 1
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Forward BFS over the edge chain from `from`, recording levels.
fn bfs_levels(es: &DirectedEdgeSpace, from: usize) -> Vec<Option<usize>> {
    let mut level = vec![None; es.len()];
    level[from] = Some(0);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(i) = queue.pop_front() {
        let depth = level[i].unwrap();
        let (_, v) = es.arc(i);
        let rev = es.reverse(i);
        for j in es.out_range(v) {
            if j != rev && level[j].is_none() {
                level[j] = Some(depth + 1);
                queue.push_back(j);
            }
        }
    }
    level
}

/// Backward reachability: arcs that can reach `to` in the edge chain.
/// The predecessors of arc j are the reversals of the other arcs leaving
/// j's source.
fn bfs_reaches(es: &DirectedEdgeSpace, to: usize) -> Vec<bool> {
    let mut seen = vec![false; es.len()];
    seen[to] = true;
    let mut queue = std::collections::VecDeque::from([to]);
    while let Some(j) = queue.pop_front() {
        let (u, _) = es.arc(j);
        for k in es.out_range(u) {
            if k == j {
                continue;
            }
            let pred = es.reverse(k);
            if !seen[pred] {
                seen[pred] = true;
                queue.push_back(pred);
            }
        }
    }
    seen
}

/// Decide irreducibility of the edge chain and compute the period of the
/// reference edge's strongly connected component as the gcd of
/// level(x) + 1 - level(y) over all chain arcs x -> y inside the component.
pub fn ergodicity_check(g: &Graph) -> ErgodicityReport {
    let es = build_edge_space(g);
    let reference = 0;
    let forward = bfs_levels(&es, reference);
    let backward = bfs_reaches(&es, reference);
    let irreducible =
        forward.iter().all(|l| l.is_some()) && backward.iter().all(|&b| b);
    let in_component: Vec<bool> = (0..es.len())
        .map(|i| forward[i].is_some() && backward[i])
        .collect();
    let component_size = in_component.iter().filter(|&&b| b).count();
    let level = bfs_levels(&es, reference);
    let mut g_acc = 0usize;
    for x in 0..es.len() {
        if !in_component[x] {
            continue;
        }
        let (_, v) = es.arc(x);
        let rev = es.reverse(x);
        for y in es.out_range(v) {
            if y == rev || !in_component[y] {
                continue;
            }
            let diff = (level[x].unwrap() as i64 + 1 - level[y].unwrap() as i64).unsigned_abs();
            g_acc = gcd(g_acc, diff as usize);
        }
    }
    ErgodicityReport {
        irreducible,
        period: g_acc.max(1),
        reference_arc: reference,
        component_size,
    }
}
