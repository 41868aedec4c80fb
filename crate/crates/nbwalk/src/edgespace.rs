//! Directed-edge state space and the operator algebra over it: the
//! non-backtracking adjacency B, the transition matrix, incidence and
//! reversal operators, their weighted versions, and numerical verification
//! of the identities tying them together.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{lu_determinant, Matrix, Tolerances};

/// State space of the non-backtracking walk: every undirected edge in both
/// orientations. Arcs are ordered canonically by (source id, target id);
/// all matrices and CSV outputs use this indexing.
#[derive(Debug, Clone)]
pub struct DirectedEdgeSpace {
    n: usize,
    /// (source, target), sorted ascending.
    arcs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// reversal[i] is the index of the opposite orientation of arc i.
    reversal: Vec<usize>,
    /// Arcs out of vertex v occupy out_start[v]..out_start[v+1].
    out_start: Vec<usize>,
}

impl DirectedEdgeSpace {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, i: usize) -> (usize, usize) {
        self.arcs[i]
    }

    pub fn index_of(&self, source: usize, target: usize) -> Option<usize> {
        self.index.get(&(source, target)).copied()
    }

    pub fn reverse(&self, i: usize) -> usize {
        self.reversal[i]
    }

    /// Indices of arcs leaving v, contiguous by construction.
    pub fn out_range(&self, v: usize) -> std::ops::Range<usize> {
        self.out_start[v]..self.out_start[v + 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_start[v + 1] - self.out_start[v]
    }
}

/// Builds the directed-edge space in canonical order.
pub fn build_edge_space(g: &Graph) -> DirectedEdgeSpace {
    let n = g.vertex_count();
    let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(g.volume());
    for u in 0..n {
        for &v in g.neighbors(u) {
            arcs.push((u, v));
        }
    }
    // Neighbor lists are sorted, so arcs are already in (source, target)
    // order; out-ranges fall out of the degree prefix sums.
    let index: HashMap<(usize, usize), usize> =
        arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let reversal: Vec<usize> = arcs.iter().map(|&(u, v)| index[&(v, u)]).collect();
    let mut out_start = Vec::with_capacity(n + 1);
    out_start.push(0);
    for v in 0..n {
        out_start.push(out_start[v] + g.degree(v));
    }
    DirectedEdgeSpace {
        n,
        arcs,
        index,
        reversal,
        out_start,
    }
}

/// Positive per-vertex weights. The squared weights are stored separately
/// so that rule-based assignments can keep them exact (degree weights store
/// w^2 = 1/(d-1) rather than a rounded square).
#[derive(Debug, Clone)]
pub struct WeightAssignment {
    w: Vec<f64>,
    w_sq: Vec<f64>,
}

/// Rule used for vertices that a weight file does not mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FallbackWeight {
    Unit,
    DegreeBased,
}

impl WeightAssignment {
    pub fn unit(g: &Graph) -> Self {
        let n = g.vertex_count();
        WeightAssignment {
            w: vec![1.0; n],
            w_sq: vec![1.0; n],
        }
    }

    /// w(x) = 1/sqrt(d_x - 1), the choice that turns the weighted operator
    /// into the walk's transition matrix.
    pub fn degree_based(g: &Graph) -> Self {
        let n = g.vertex_count();
        let w_sq: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) - 1) as f64).collect();
        let w: Vec<f64> = w_sq.iter().map(|x| x.sqrt()).collect();
        WeightAssignment { w, w_sq }
    }

    /// Explicit weights per vertex id; all must be positive and finite.
    pub fn from_values(g: &Graph, values: Vec<f64>) -> Result<Self> {
        assert_eq!(values.len(), g.vertex_count());
        for (v, &x) in values.iter().enumerate() {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::NonPositiveWeight {
                    label: g.label(v).to_string(),
                    value: x,
                });
            }
        }
        let w_sq = values.iter().map(|x| x * x).collect();
        Ok(WeightAssignment { w: values, w_sq })
    }

    pub fn get(&self, v: usize) -> f64 {
        self.w[v]
    }

    pub fn squared(&self, v: usize) -> f64 {
        self.w_sq[v]
    }

    /// Diagonal W.
    pub fn matrix(&self) -> Matrix {
        let n = self.w.len();
        let mut m = Matrix::zeros(n, n);
        for v in 0..n {
            m[(v, v)] = self.w[v];
        }
        m
    }
}

/// Parses a weight file: lines "<vertex-label> <positive-real>", '#'
/// comments and blank lines ignored, later lines override earlier ones.
/// Vertices the file does not mention fall back to the given rule.
pub fn parse_weight_file(
    g: &Graph,
    text: &str,
    fallback: FallbackWeight,
) -> Result<WeightAssignment> {
    let mut base = match fallback {
        FallbackWeight::Unit => WeightAssignment::unit(g),
        FallbackWeight::DegreeBased => WeightAssignment::degree_based(g),
    };
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let value = if tokens.len() == 2 {
            tokens[1].parse::<f64>().ok()
        } else {
            None
        };
        let Some(value) = value else {
            return Err(Error::MalformedLine {
                line: lineno,
                text: content.trim().to_string(),
            });
        };
        let v = g.vertex_id(tokens[0])?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveWeight {
                label: g.label(v).to_string(),
                value,
            });
        }
        base.w[v] = value;
        base.w_sq[v] = value * value;
    }
    Ok(base)
}

/// Non-backtracking edge adjacency: B((u,v),(x,y)) = 1 iff v = x and y != u.
pub fn op_b(es: &DirectedEdgeSpace) -> Matrix {
    let k = es.len();
    let mut b = Matrix::zeros(k, k);
    for i in 0..k {
        let (u, v) = es.arc(i);
        for j in es.out_range(v) {
            let (_, y) = es.arc(j);
            if y != u {
                b[(i, j)] = 1.0;
            }
        }
    }
    b
}

/// Transition matrix of the non-backtracking walk: each feasible successor
/// of (u,v) gets probability 1/(d_v - 1).
pub fn op_p_tilde(es: &DirectedEdgeSpace) -> Matrix {
    let k = es.len();
    let mut p = Matrix::zeros(k, k);
    for i in 0..k {
        let (u, v) = es.arc(i);
        let step = 1.0 / (es.degree(v) - 1) as f64;
        for j in es.out_range(v) {
            let (_, y) = es.arc(j);
            if y != u {
                p[(i, j)] = step;
            }
        }
    }
    p
}

/// Endpoint incidence: S((u,v),x) = 1 iff v = x.
pub fn op_s(es: &DirectedEdgeSpace) -> Matrix {
    let mut s = Matrix::zeros(es.len(), es.vertex_count());
    for i in 0..es.len() {
        let (_, v) = es.arc(i);
        s[(i, v)] = 1.0;
    }
    s
}

/// Starting-point incidence: T(x,(u,v)) = 1 iff u = x.
pub fn op_t(es: &DirectedEdgeSpace) -> Matrix {
    let mut t = Matrix::zeros(es.vertex_count(), es.len());
    for i in 0..es.len() {
        let (u, _) = es.arc(i);
        t[(u, i)] = 1.0;
    }
    t
}

/// Reversal: swaps each arc with its opposite orientation.
pub fn op_tau(es: &DirectedEdgeSpace) -> Matrix {
    let k = es.len();
    let mut tau = Matrix::zeros(k, k);
    for i in 0..k {
        tau[(i, es.reverse(i))] = 1.0;
    }
    tau
}

/// The full weighted operator family over one edge space.
#[derive(Debug, Clone)]
pub struct EdgeOperatorSet {
    pub b: Matrix,
    pub p_tilde: Matrix,
    pub tau: Matrix,
    pub tau_tilde: Matrix,
    pub s: Matrix,
    pub t: Matrix,
    pub s_tilde: Matrix,
    pub t_tilde: Matrix,
    pub a_tilde: Matrix,
    pub d_tilde: Matrix,
}

/// Builds every operator. The weighted reversal puts w(b)^2 on the arc pair
/// ((a,b),(b,a)), exactly as defined; it is deliberately not symmetric when
/// weights differ across an edge.
pub fn op_weighted(es: &DirectedEdgeSpace, w: &WeightAssignment) -> EdgeOperatorSet {
    let k = es.len();
    let n = es.vertex_count();

    let b = op_b(es);
    let tau = op_tau(es);
    let s = op_s(es);
    let t = op_t(es);

    let mut p_tilde = Matrix::zeros(k, k);
    let mut tau_tilde = Matrix::zeros(k, k);
    for i in 0..k {
        let (u, v) = es.arc(i);
        let weight = w.squared(v);
        tau_tilde[(i, es.reverse(i))] = weight;
        for j in es.out_range(v) {
            let (_, y) = es.arc(j);
            if y != u {
                p_tilde[(i, j)] = weight;
            }
        }
    }

    let mut s_tilde = s.clone();
    for i in 0..k {
        let (_, v) = es.arc(i);
        s_tilde[(i, v)] = w.get(v);
    }
    let mut t_tilde = t.clone();
    for i in 0..k {
        let (u, _) = es.arc(i);
        t_tilde[(u, i)] = w.get(u);
    }

    let mut a_tilde = Matrix::zeros(n, n);
    for i in 0..k {
        let (u, v) = es.arc(i);
        a_tilde[(u, v)] = w.get(u) * w.get(v);
    }
    let mut d_tilde = Matrix::zeros(n, n);
    for x in 0..n {
        let mut sum = 0.0;
        for j in es.out_range(x) {
            let (_, v) = es.arc(j);
            sum += w.squared(x) * w.squared(v);
        }
        d_tilde[(x, x)] = sum;
    }

    EdgeOperatorSet {
        b,
        p_tilde,
        tau,
        tau_tilde,
        s,
        t,
        s_tilde,
        t_tilde,
        a_tilde,
        d_tilde,
    }
}

/// Evenly spaced sample grid, inclusive of both ends.
pub fn u_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "grid needs at least two points");
    (0..count)
        .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
        .collect()
}

/// The fixed grid used by identity checks: 21 points in [-0.5, 0.5].
pub fn default_u_grid() -> Vec<f64> {
    u_grid(-0.5, 0.5, 21)
}

/// Max-norm residual of one named operator identity.
#[derive(Debug, Clone)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub residual: f64,
}

/// Residual report for the whole identity family.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub entries: Vec<IdentityResidual>,
    /// Grid points skipped because I + u tau~ was numerically singular.
    pub skipped_u: Vec<f64>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Checks the operator identities numerically: the structural equations
/// (B = ST - tau and friends), their weighted counterparts, and the
/// u-dependent expansion and intertwining relations sampled on a grid.
/// These hold for all u as polynomial identities, so sampled agreement on
/// more points than the polynomial degree is conclusive.
pub fn verify_identities(
    es: &DirectedEdgeSpace,
    w: &WeightAssignment,
    u_samples: &[f64],
    tol: &Tolerances,
) -> IdentityReport {
    let ops = op_weighted(es, w);
    let k = es.len();
    let n = es.vertex_count();
    let eye_k = Matrix::identity(k);

    // Unweighted vertex matrices derived straight from the arc structure.
    let mut a = Matrix::zeros(n, n);
    for &(u, v) in es.arcs() {
        a[(u, v)] = 1.0;
    }
    let mut d = Matrix::zeros(n, n);
    for v in 0..n {
        d[(v, v)] = es.degree(v) as f64;
    }

    let mut entries = Vec::new();
    let mut push = |name: &'static str, residual: f64| {
        entries.push(IdentityResidual { name, residual });
    };

    push("B = ST - tau", (&ops.b - &(&(&ops.s * &ops.t) - &ops.tau)).max_norm());
    push("A = TS", (&a - &(&ops.t * &ops.s)).max_norm());
    push("D = T tau S", (&d - &(&(&ops.t * &ops.tau) * &ops.s)).max_norm());
    push(
        "P~ = S~T~ - tau~",
        (&ops.p_tilde - &(&(&ops.s_tilde * &ops.t_tilde) - &ops.tau_tilde)).max_norm(),
    );
    push(
        "T~S~ = WAW",
        (&(&ops.t_tilde * &ops.s_tilde) - &ops.a_tilde).max_norm(),
    );
    push(
        "T~ tau~ S~ = D~",
        (&(&(&ops.t_tilde * &ops.tau_tilde) * &ops.s_tilde) - &ops.d_tilde).max_norm(),
    );

    // u-dependent identities, worst residual over the surviving grid.
    let st = &ops.s_tilde * &ops.t_tilde;
    let st_tau = &st * &ops.tau_tilde;
    let tau_sq = &ops.tau_tilde * &ops.tau_tilde;
    let mut skipped_u = Vec::new();
    let mut expansion = 0.0f64;
    let mut inter_s = 0.0f64;
    let mut inter_t = 0.0f64;
    for &u in u_samples {
        let gate = &eye_k + &ops.tau_tilde.scale(u);
        if lu_determinant(&gate).abs() < 1e-8 {
            skipped_u.push(u);
            continue;
        }
        let left = &eye_k - &ops.p_tilde.scale(u);
        let right = &eye_k - &ops.tau_tilde.scale(u);
        let product = &left * &right;

        // (I - uP~)(I - u tau~) = I - u S~T~ + u^2 S~T~ tau~ - u^2 tau~^2.
        let expanded = &(&(&eye_k - &st.scale(u)) + &st_tau.scale(u * u)) - &tau_sq.scale(u * u);
        expansion = expansion.max((&product - &expanded).max_norm());

        let core = &product + &tau_sq.scale(u * u);
        let vertex_core = &(&Matrix::identity(n) - &ops.a_tilde.scale(u)) + &ops.d_tilde.scale(u * u);
        inter_s = inter_s.max((&(&core * &ops.s_tilde) - &(&ops.s_tilde * &vertex_core)).max_norm());

        let core_flipped = &(&right * &left) + &tau_sq.scale(u * u);
        inter_t = inter_t
            .max((&(&ops.t_tilde * &core_flipped) - &(&vertex_core * &ops.t_tilde)).max_norm());
    }
    push("expand (I-uP~)(I-u tau~)", expansion);
    push("intertwine S~", inter_s);
    push("intertwine T~", inter_t);

    let max_residual = entries
        .iter()
        .fold(0.0f64, |acc, e| acc.max(e.residual));
    IdentityReport {
        pass: max_residual < tol.operator_identity,
        entries,
        skipped_u,
        max_residual,
    }
}
