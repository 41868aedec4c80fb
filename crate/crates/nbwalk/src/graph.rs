//! Graph ingestion, validation, degree classification, and the vertex-space
//! matrices A and D. Graphs are simple, undirected, with minimum degree 2;
//! every downstream operator divides by d_v - 1, so the floor is enforced at
//! construction, not lazily.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::SplitMix64;

/// Immutable simple undirected graph. Labels are arbitrary strings
/// externally and dense 0-based ids internally; the mapping is kept for
/// reports.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
    /// Edges as id pairs with u < v, sorted ascending.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from pre-assigned ids. `positions` carries the input
    /// position of each edge (file line or slice index) for error messages.
    fn build(labels: Vec<String>, raw: &[(usize, usize)], positions: &[usize]) -> Result<Graph> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::TooFewVertices { found: n });
        }
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(raw.len());
        let mut seen: HashMap<(usize, usize), ()> = HashMap::with_capacity(raw.len());
        for (k, &(a, b)) in raw.iter().enumerate() {
            if a == b {
                return Err(Error::SelfLoop {
                    line: positions[k],
                    label: labels[a].clone(),
                });
            }
            let e = (a.min(b), a.max(b));
            if seen.insert(e, ()).is_some() {
                return Err(Error::DuplicateEdge {
                    line: positions[k],
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                });
            }
            edges.push(e);
        }
        edges.sort_unstable();

        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        for (v, list) in adj.iter().enumerate() {
            if list.len() < 2 {
                return Err(Error::MinDegreeViolation {
                    label: labels[v].clone(),
                    degree: list.len(),
                });
            }
        }
        Ok(Graph { labels, adj, edges })
    }

    /// Builds from explicit id pairs on vertices `0..n` with decimal labels.
    pub fn from_edges(n: usize, raw: &[(usize, usize)]) -> Result<Graph> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let positions: Vec<usize> = (1..=raw.len()).collect();
        Graph::build(labels, raw, &positions)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sum of all degrees, always 2m.
    pub fn volume(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_id(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex {
                label: label.to_string(),
            })
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        let n = self.vertex_count();
        let mut a = Matrix::zeros(n, n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    pub fn degree_matrix(&self) -> Matrix {
        let n = self.vertex_count();
        let mut d = Matrix::zeros(n, n);
        for v in 0..n {
            d[(v, v)] = self.degree(v) as f64;
        }
        d
    }

    /// Canonical serialization: one edge per line, sorted by (min-id,
    /// max-id), smaller id's label first.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[v]);
        }
        out
    }

    /// Degree classification. Regular takes precedence over Biregular when
    /// both apply (regular bipartite graphs report Regular).
    pub fn classify(&self) -> DegreeProfile {
        let n = self.vertex_count();
        let (bipartite, part_sizes) = self.two_color();

        let degrees: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut distinct: Vec<usize> = degrees.clone();
        distinct.sort_unstable();
        distinct.dedup();

        let kind = if distinct.len() == 1 {
            DegreeKind::Regular { d: distinct[0] }
        } else if distinct.len() == 2 {
            // Biregular needs every edge to join the two degree classes;
            // that makes the degree classes a proper 2-coloring, so no
            // separate bipartiteness test is required here.
            let (c, d) = (distinct[0], distinct[1]);
            let split = self
                .edges
                .iter()
                .all(|&(u, v)| degrees[u] != degrees[v]);
            if split {
                let r = degrees.iter().filter(|&&x| x == c).count();
                let s = n - r;
                DegreeKind::Biregular { c, d, r, s }
            } else {
                DegreeKind::General
            }
        } else {
            DegreeKind::General
        };

        DegreeProfile {
            kind,
            bipartite,
            part_sizes: if bipartite { Some(part_sizes) } else { None },
        }
    }

    /// BFS 2-coloring over all components; colors chosen so the smallest id
    /// in each component gets color 0. Returns (is_bipartite, (larger part,
    /// smaller part)).
    fn two_color(&self) -> (bool, (usize, usize)) {
        let n = self.vertex_count();
        let mut color = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if color[start] != usize::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == usize::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return (false, (0, 0));
                    }
                }
            }
        }
        let zeros = color.iter().filter(|&&c| c == 0).count();
        let ones = n - zeros;
        (true, (zeros.max(ones), zeros.min(ones)))
    }
}

impl PartialEq for Graph {
    /// Label-structural equality: same vertex labels and the same edges as
    /// label pairs. Internal id assignment is allowed to differ.
    fn eq(&self, other: &Graph) -> bool {
        let mut la: Vec<&String> = self.labels.iter().collect();
        let mut lb: Vec<&String> = other.labels.iter().collect();
        la.sort();
        lb.sort();
        if la != lb {
            return false;
        }
        let key = |g: &Graph| {
            let mut k: Vec<(String, String)> = g
                .edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (&g.labels[u], &g.labels[v]);
                    if a <= b {
                        (a.clone(), b.clone())
                    } else {
                        (b.clone(), a.clone())
                    }
                })
                .collect();
            k.sort();
            k
        };
        key(self) == key(other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeKind {
    Regular { d: usize },
    /// Bipartite with degree c on the part of size r and degree d on the
    /// part of size s; oriented so r >= s, which forces c <= d.
    Biregular { c: usize, d: usize, r: usize, s: usize },
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub kind: DegreeKind,
    pub bipartite: bool,
    /// (larger, smaller) when bipartite.
    pub part_sizes: Option<(usize, usize)>,
}

impl std::fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            DegreeKind::Regular { d } => write!(f, "regular(d={d})"),
            DegreeKind::Biregular { c, d, r, s } => {
                write!(f, "biregular(c={c},d={d},r={r},s={s})")
            }
            DegreeKind::General => write!(f, "general"),
        }
    }
}

/// Parses a UTF-8 edge list: one edge per line as two whitespace-separated
/// labels, '#' starts a comment, blank lines ignored. Labels map to dense
/// 0-based ids in first-appearance order.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut raw: Vec<(usize, usize)> = Vec::new();
    let mut positions: Vec<usize> = Vec::new();

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
        if tokens.len() != 2 {
            return Err(Error::MalformedLine {
                line: lineno,
                text: content.trim().to_string(),
            });
        }
        let mut id = |t: &str| -> usize {
            *index.entry(t.to_string()).or_insert_with(|| {
                labels.push(t.to_string());
                labels.len() - 1
            })
        };
        let a = id(tokens[0]);
        let b = id(tokens[1]);
        raw.push((a, b));
        positions.push(lineno);
    }
    Graph::build(labels, &raw, &positions)
}

/// Shape requested from the test-graph generator.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphProfile {
    Regular { d: usize, n: usize },
    Biregular { c: usize, d: usize, r: usize, s: usize },
    /// Erdos-Renyi-style edge sampling, rejected until min degree >= 2.
    GnpLike { n: usize, p: f64 },
}

const GENERATION_ATTEMPTS: usize = 500;

/// Deterministic random graph for a fixed seed: configuration-model pairing
/// with rejection of loops and parallel edges, bounded retries.
pub fn generate_test_graph(profile: &GraphProfile, seed: u64) -> Result<Graph> {
    let mut rng = SplitMix64::new(seed);
    match *profile {
        GraphProfile::Regular { d, n } => {
            if d < 2 {
                return Err(Error::InfeasibleProfile {
                    reason: format!("regular degree {d} is below the minimum degree 2"),
                });
            }
            if d >= n {
                return Err(Error::InfeasibleProfile {
                    reason: format!("regular degree {d} needs at least {} vertices", d + 1),
                });
            }
            if (n * d) % 2 != 0 {
                return Err(Error::InfeasibleProfile {
                    reason: format!("n*d = {} is odd", n * d),
                });
            }
            for _ in 0..GENERATION_ATTEMPTS {
                let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
                rng.shuffle(&mut stubs);
                if let Some(edges) = pair_stubs(&stubs, &mut rng) {
                    return Graph::from_edges(n, &edges);
                }
            }
            Err(Error::GenerationExhausted {
                attempts: GENERATION_ATTEMPTS,
            })
        }
        GraphProfile::Biregular { c, d, r, s } => {
            if c < 2 || d < 2 {
                return Err(Error::InfeasibleProfile {
                    reason: format!("biregular degrees ({c},{d}) must both be at least 2"),
                });
            }
            if r * c != s * d {
                return Err(Error::InfeasibleProfile {
                    reason: format!("stub counts differ: r*c = {} but s*d = {}", r * c, s * d),
                });
            }
            if c > s || d > r {
                return Err(Error::InfeasibleProfile {
                    reason: format!(
                        "simple biregular graph needs c <= s and d <= r, got c={c}, s={s}, d={d}, r={r}"
                    ),
                });
            }
            // Left part: ids 0..r with degree c; right part: ids r..r+s with
            // degree d. Loops cannot occur across parts, only multi-edges.
            for _ in 0..GENERATION_ATTEMPTS {
                let left: Vec<usize> = (0..r).flat_map(|v| std::iter::repeat(v).take(c)).collect();
                let mut right: Vec<usize> = (0..s)
                    .flat_map(|v| std::iter::repeat(r + v).take(d))
                    .collect();
                rng.shuffle(&mut right);
                let edges: Vec<(usize, usize)> =
                    left.iter().zip(&right).map(|(&a, &b)| (a, b)).collect();
                let mut dedup = edges.clone();
                dedup.sort_unstable();
                dedup.dedup();
                if dedup.len() == edges.len() {
                    return Graph::from_edges(r + s, &edges);
                }
            }
            Err(Error::GenerationExhausted {
                attempts: GENERATION_ATTEMPTS,
            })
        }
        GraphProfile::GnpLike { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InfeasibleProfile {
                    reason: format!("edge probability {p} outside [0, 1]"),
                });
            }
            if n < 3 {
                return Err(Error::InfeasibleProfile {
                    reason: format!("{n} vertices cannot all reach degree 2 in a simple graph"),
                });
            }
            for _ in 0..GENERATION_ATTEMPTS {
                let mut edges: Vec<(usize, usize)> = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if rng.next_f64() < p {
                            edges.push((u, v));
                        }
                    }
                }
                if let Ok(g) = Graph::from_edges(n, &edges) {
                    return Ok(g);
                }
            }
            Err(Error::GenerationExhausted {
                attempts: GENERATION_ATTEMPTS,
            })
        }
    }
}

/// Pairs consecutive stubs into edges; None when a loop or parallel edge
/// shows up and the sample must be rejected.
/// Pair stubs into simple edges, choosing each partner uniformly among the
/// compatible remaining stubs. Greedy repair keeps the per-attempt success
/// probability high even at degree 6, where blind consecutive pairing almost
/// always collides; endgame bias is irrelevant for a test corpus. Fails only
/// when the remaining stubs force a loop or duplicate.
fn pair_stubs(stubs: &[usize], rng: &mut SplitMix64) -> Option<Vec<(usize, usize)>> {
    let mut pool = stubs.to_vec();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(pool.len() / 2);
    let mut seen = std::collections::HashSet::with_capacity(pool.len() / 2);
    while let Some(a) = pool.pop() {
        let candidates: Vec<usize> = (0..pool.len())
            .filter(|&i| {
                let b = pool[i];
                b != a && !seen.contains(&(a.min(b), a.max(b)))
            })
            .collect();
        if candidates.is_empty() {
            return None;
        }
        let j = candidates[rng.index_below(candidates.len())];
        let b = pool.swap_remove(j);
        seen.insert((a.min(b), a.max(b)));
        edges.push((a, b));
    }
    Some(edges)
}
