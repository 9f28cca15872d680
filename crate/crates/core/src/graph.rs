//! Directed 0/1 networks over a shared node set.
//!
//! Rumors travel along one network and the truth along another; both are
//! stored densely since every workload here has at most a few hundred
//! nodes. The spreading code only ever needs in-neighbour lists, which
//! [`DirectedGraph::in_neighbors`] hands out in ascending order.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Adjacency structure with `adj[i][j] = 1` iff the arc `(i, j)` exists,
/// i.e. node `i` can pass information to node `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphJson", try_from = "GraphJson")]
pub struct DirectedGraph {
    n: usize,
    adj: Vec<bool>,
    label: Option<String>,
}

impl DirectedGraph {
    /// Graph on `n` nodes with no arcs.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a graph needs at least one node"));
        }
        Ok(Self {
            n,
            adj: vec![false; n * n],
            label: None,
        })
    }

    /// Builds a graph from arcs. With `symmetric` every arc is mirrored.
    pub fn from_edges<I>(n: usize, edges: I, symmetric: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_arc(u, v)?;
            if symmetric {
                g.add_arc(v, u)?;
            }
        }
        Ok(g)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.adj[from * self.n + to]
    }

    pub fn add_arc(&mut self, from: usize, to: usize) -> Result<()> {
        if from >= self.n || to >= self.n {
            return Err(Error::domain(format!(
                "arc ({from}, {to}) out of bounds for {} nodes",
                self.n
            )));
        }
        if from == to {
            return Err(Error::domain(format!("self-loop at node {from}")));
        }
        self.adj[from * self.n + to] = true;
        Ok(())
    }

    fn remove_arc(&mut self, from: usize, to: usize) {
        self.adj[from * self.n + to] = false;
    }

    /// All arcs in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).filter(move |&j| self.has_arc(i, j)).map(move |j| (i, j)))
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count()
    }

    /// Number of unordered pairs joined by at least one arc.
    pub fn undirected_edge_count(&self) -> usize {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_arc(i, j) || self.has_arc(j, i))
            .count()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(i, j)| self.has_arc(j, i))
    }

    /// Nodes `j` with an arc `(j, i)`, ascending.
    pub fn in_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.has_arc(j, i)).collect()
    }

    /// Number of distinct neighbours of `i` ignoring direction.
    pub fn degree(&self, i: usize) -> usize {
        (0..self.n)
            .filter(|&j| self.has_arc(i, j) || self.has_arc(j, i))
            .count()
    }

    /// Weak connectivity by breadth-first search.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in 0..self.n {
                if !seen[v] && (self.has_arc(u, v) || self.has_arc(v, u)) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Serializes to the edge-list text format. Symmetric graphs are written
    /// once per undirected edge behind a `symmetric` directive.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        if let Some(label) = &self.label {
            let _ = writeln!(out, "# {label}");
        }
        let _ = writeln!(out, "nodes {}", self.n);
        if self.is_symmetric() {
            out.push_str("symmetric\n");
            for (u, v) in self.arcs().filter(|&(u, v)| u < v) {
                let _ = writeln!(out, "{u} {v}");
            }
        } else {
            for (u, v) in self.arcs() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.arcs().map(|(u, v)| [u, v]).collect(),
            label: self.label.clone().unwrap_or_default(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let g = Self::from_edges(json.n, json.edges.iter().map(|e| (e[0], e[1])), false)?;
        Ok(if json.label.is_empty() {
            g
        } else {
            g.with_label(json.label.clone())
        })
    }
}

/// JSON export shape: `{"n": int, "edges": [[u, v], ...], "label": str}`.
/// Every arc is listed, so symmetric graphs carry both directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub label: String,
}

impl From<DirectedGraph> for GraphJson {
    fn from(g: DirectedGraph) -> Self {
        g.to_json()
    }
}

impl TryFrom<GraphJson> for DirectedGraph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        DirectedGraph::from_json(&json)
    }
}

/// The nine connected graphs on two to four nodes, ordered by node count,
/// then edge count, then degree sequence:
/// K2, P3, C3, P4, K1,3, C4, paw, diamond, K4.
pub fn named_small_graph(index: usize) -> Result<DirectedGraph> {
    let (n, edges, name): (usize, &[(usize, usize)], &str) = match index {
        1 => (2, &[(0, 1)], "K2"),
        2 => (3, &[(0, 1), (1, 2)], "P3"),
        3 => (3, &[(0, 1), (1, 2), (0, 2)], "C3"),
        4 => (4, &[(0, 1), (1, 2), (2, 3)], "P4"),
        5 => (4, &[(0, 1), (0, 2), (0, 3)], "K1,3"),
        6 => (4, &[(0, 1), (1, 2), (2, 3), (3, 0)], "C4"),
        7 => (4, &[(0, 1), (1, 2), (0, 2), (2, 3)], "paw"),
        8 => (4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], "diamond"),
        9 => (4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], "K4"),
        _ => {
            return Err(Error::domain(format!(
                "small graph index {index} not in 1..=9"
            )))
        }
    };
    Ok(DirectedGraph::from_edges(n, edges.iter().copied(), true)?
        .with_label(format!("G{index} ({name})")))
}

/// Small-world graph: a ring lattice where every node links to its `k/2`
/// nearest neighbours on each side, after which each lattice edge `(u, u+j)`
/// is rewired with probability `p` to a uniformly chosen non-neighbour of
/// `u`. Rewiring never creates self-loops or duplicate edges, so the edge
/// count stays `n * k / 2`.
pub fn watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> Result<DirectedGraph> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::domain(format!("k = {k} must be even and >= 2")));
    }
    if n <= k {
        return Err(Error::domain(format!("need n > k, got n = {n}, k = {k}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("rewiring probability {p} not in [0, 1]")));
    }

    let mut g = DirectedGraph::empty(n)?;
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            g.add_arc(u, v)?;
            g.add_arc(v, u)?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.gen_bool(p) {
                continue;
            }
            let candidates: Vec<usize> = (0..n).filter(|&w| w != u && !g.has_arc(u, w)).collect();
            let Some(&w) = candidates.choose(&mut rng) else {
                continue;
            };
            g.remove_arc(u, v);
            g.remove_arc(v, u);
            g.add_arc(u, w)?;
            g.add_arc(w, u)?;
        }
    }
    Ok(g.with_label(format!("watts-strogatz n={n} k={k} p={p} seed={seed}")))
}

/// Scale-free graph by preferential attachment. Starts from a clique on
/// `m` nodes; each later node links to `m` distinct earlier nodes picked
/// with probability proportional to their current degree.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<DirectedGraph> {
    if m < 1 || n <= m {
        return Err(Error::domain(format!("need n > m >= 1, got n = {n}, m = {m}")));
    }
    let mut g = DirectedGraph::empty(n)?;
    // One entry per edge endpoint, so uniform sampling is degree-proportional.
    let mut stubs: Vec<usize> = Vec::with_capacity(2 * n * m);
    for u in 0..m {
        for v in u + 1..m {
            g.add_arc(u, v)?;
            g.add_arc(v, u)?;
            stubs.extend([u, v]);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets = Vec::with_capacity(m);
    for new in m..n {
        targets.clear();
        while targets.len() < m {
            let t = if stubs.is_empty() {
                rng.gen_range(0..new)
            } else {
                stubs[rng.gen_range(0..stubs.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.add_arc(new, t)?;
            g.add_arc(t, new)?;
            stubs.extend([new, t]);
        }
    }
    Ok(g.with_label(format!("barabasi-albert n={n} m={m} seed={seed}")))
}

/// Parses the edge-list format: one `u v` arc per line (0-indexed),
/// `#` comments, and optional leading directives `nodes N` and
/// `symmetric`. Without `nodes`, the node count is the largest index + 1.
pub fn parse_edge_list(text: &str, symmetric: bool, origin: &Path) -> Result<DirectedGraph> {
    let err = |line: usize, msg: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        msg,
    };

    let mut declared: Option<usize> = None;
    let mut symmetric = symmetric;
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    let mut label: Option<String> = None;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if label.is_none() && arcs.is_empty() && declared.is_none() {
                label = Some(comment.trim().to_string()).filter(|s| !s.is_empty());
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let first = fields.next().unwrap_or_default();
        match first {
            "nodes" => {
                if declared.is_some() || !arcs.is_empty() {
                    return Err(err(lineno, "`nodes` directive must precede all edges".into()));
                }
                let n = fields
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| err(lineno, format!("bad node count in `{line}`")))?;
                if fields.next().is_some() {
                    return Err(err(lineno, format!("trailing input in `{line}`")));
                }
                declared = Some(n);
            }
            "symmetric" => {
                if !arcs.is_empty() || fields.next().is_some() {
                    return Err(err(lineno, "`symmetric` directive must precede all edges".into()));
                }
                symmetric = true;
            }
            _ => {
                let parse = |s: Option<&str>| s.and_then(|s| s.parse::<usize>().ok());
                let (Some(u), Some(v), None) = (parse(Some(first)), parse(fields.next()), fields.next())
                else {
                    return Err(err(lineno, format!("expected `u v`, got `{line}`")));
                };
                if u == v {
                    return Err(err(lineno, format!("self-loop at node {u}")));
                }
                if let Some(n) = declared {
                    if u >= n || v >= n {
                        return Err(err(lineno, format!("index out of bounds for {n} nodes")));
                    }
                }
                arcs.push((lineno, u, v));
            }
        }
    }

    let n = match declared {
        Some(n) => n,
        None => arcs
            .iter()
            .map(|&(_, u, v)| u.max(v) + 1)
            .max()
            .ok_or_else(|| err(0, "no nodes and no edges".into()))?,
    };
    let mut g = DirectedGraph::empty(n)?;
    for (lineno, u, v) in arcs {
        g.add_arc(u, v).map_err(|e| err(lineno, e.to_string()))?;
        if symmetric {
            g.add_arc(v, u).map_err(|e| err(lineno, e.to_string()))?;
        }
    }
    Ok(match label {
        Some(l) => g.with_label(l),
        None => g,
    })
}

pub fn load_edge_list(path: impl AsRef<Path>, symmetric: bool) -> Result<DirectedGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, symmetric, path)
}

/// Reads a graph from either format; `.json` selects the JSON shape.
pub fn load_graph(path: impl AsRef<Path>, symmetric: bool) -> Result<DirectedGraph> {
    let path = path.as_ref();
    if path.extension().is_some_and(|e| e == "json") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let json: GraphJson = serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            msg: e.to_string(),
        })?;
        let g = DirectedGraph::from_json(&json)?;
        if symmetric {
            let label = g.label.clone();
            let sym = DirectedGraph::from_edges(g.n, g.arcs().collect::<Vec<_>>(), true)?;
            return Ok(match label {
                Some(l) => sym.with_label(l),
                None => sym,
            });
        }
        Ok(g)
    } else {
        load_edge_list(path, symmetric)
    }
}

const CONTIGUOUS_USA: &str = include_str!("../data/contiguous_usa.edges");

/// The bundled 49-node realistic network (state adjacency of the
/// contiguous US plus DC). Stands in for an unidentified 49-node dataset.
pub fn realistic_network() -> DirectedGraph {
    parse_edge_list(CONTIGUOUS_USA, true, Path::new("data/contiguous_usa.edges"))
        .expect("bundled network parses")
        .with_label("contiguous-usa (49-node stand-in)")
}
