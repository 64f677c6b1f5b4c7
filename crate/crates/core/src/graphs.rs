//! Bipartite graphs on a split point set, exact girth, and greedy generation
//! of graphs without short cycles.
//!
//! Left vertices are `0..left`, right vertices are `0..right`; internally the
//! right side is numbered after the left one. The JSON form uses 1-based
//! indices: `{"left": m, "right": l, "edges": [[i, j], ...]}`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::{subsets_up_to, Budget};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(i, j) in &edges {
            if i >= left || j >= right {
                return Err(Error::invalid(format!(
                    "edge ({i}, {j}) out of range for a ({left}, {right}) graph"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::invalid(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.left + self.right
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// The graph with one more edge appended.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push((i, j));
        BipartiteGraph::new(self.left, self.right, edges)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(i, j) in &self.edges {
            adj[i].push(self.left + j);
            adj[self.left + j].push(i);
        }
        adj
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    left: usize,
    right: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for BipartiteGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            left: self.left,
            right: self.right,
            edges: self.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = GraphRepr::deserialize(d)?;
        let mut edges = Vec::with_capacity(r.edges.len());
        for [i, j] in r.edges {
            if i == 0 || j == 0 {
                return Err(D::Error::custom("edge indices are 1-based"));
            }
            edges.push((i - 1, j - 1));
        }
        BipartiteGraph::new(r.left, r.right, edges).map_err(D::Error::custom)
    }
}

/// Length of the shortest cycle, or `Acyclic` for a forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    /// Whether every cycle is longer than `ell`.
    pub fn exceeds(self, ell: usize) -> bool {
        match self {
            Girth::Finite(g) => g > ell,
            Girth::Acyclic => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Acyclic => s.serialize_str("acyclic"),
        }
    }
}

/// Shortest cycle through BFS from `source`, if any closes.
fn shortest_cycle_from(adj: &[Vec<usize>], source: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    let mut best: Option<usize> = None;
    while let Some(u) = queue.pop_front() {
        if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
            break;
        }
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if parent[u] != w {
                let len = dist[u] + dist[w] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

/// Exact girth: the minimum over BFS runs from every vertex.
pub fn girth(g: &BipartiteGraph) -> Girth {
    let adj = g.adjacency();
    (0..adj.len())
        .into_par_iter()
        .filter_map(|s| shortest_cycle_from(&adj, s))
        .min()
        .map_or(Girth::Acyclic, Girth::Finite)
}

/// `K_{m,l}` with edges in left-major order.
pub fn complete_bipartite(m: usize, l: usize) -> Result<BipartiteGraph> {
    if m == 0 || l == 0 {
        return Err(Error::invalid("both sides need at least one vertex"));
    }
    BipartiteGraph::new(m, l, (0..m).cartesian_product(0..l).collect())
}

/// Order in which the greedy generator considers candidate edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum EdgeOrder {
    /// `(0,0), (0,1), ..., (1,0), ...`
    #[default]
    LeftMajor,
    Custom(Vec<(usize, usize)>),
}

fn distance(adj: &[Vec<usize>], from: usize, to: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([from]);
    dist[from] = 0;
    while let Some(u) = queue.pop_front() {
        if u == to {
            return Some(dist[u]);
        }
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Scans candidate edges in `order` and keeps an edge iff the graph still has
/// no cycle of length at most `ell`. A new edge `(i, j)` closes a shortest
/// cycle of length `dist(i, j) + 1`. Distances only shrink as edges are added,
/// so every rejected edge stays rejected and the result is maximal.
pub fn greedy_girth_graph(
    m: usize,
    l: usize,
    ell: usize,
    order: &EdgeOrder,
) -> Result<BipartiteGraph> {
    if m == 0 || l == 0 {
        return Err(Error::invalid("both sides need at least one vertex"));
    }
    if ell == 0 {
        return Err(Error::invalid("cycle length bound must be at least 1"));
    }
    let candidates: Vec<(usize, usize)> = match order {
        EdgeOrder::LeftMajor => (0..m).cartesian_product(0..l).collect(),
        EdgeOrder::Custom(edges) => {
            if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= m || j >= l) {
                return Err(Error::invalid(format!(
                    "candidate edge ({i}, {j}) out of range"
                )));
            }
            edges.clone()
        }
    };
    let mut adj = vec![Vec::new(); m + l];
    let mut edges = Vec::new();
    let mut present = HashSet::new();
    for (i, j) in candidates {
        if present.contains(&(i, j)) {
            continue;
        }
        let closes_short_cycle = distance(&adj, i, m + j).is_some_and(|d| d < ell);
        if !closes_short_cycle {
            adj[i].push(m + j);
            adj[m + j].push(i);
            present.insert((i, j));
            edges.push((i, j));
        }
    }
    BipartiteGraph::new(m, l, edges)
}

/// `(k/2)^(1 + 2/(3 ell - 2))`, the edge count that extremal graphs without
/// cycles of length at most `ell` reach for large `k`. Reported for
/// comparison only.
pub fn edge_bound(k: usize, ell: usize) -> f64 {
    let exponent = 1.0 + 2.0 / (3.0 * ell as f64 - 2.0);
    (k as f64 / 2.0).powf(exponent)
}

/// Direct check that every set of `j <= ell` edges touches more than `j`
/// vertices. A set of `j` edges touches at most `j` vertices exactly when it
/// contains a cycle, so this holds iff the girth exceeds `ell`; it is kept as
/// an enumeration so it can serve as an independent check of [`girth`].
pub fn support_check_bruteforce(g: &BipartiteGraph, ell: usize, budget: &Budget) -> Result<bool> {
    if ell == 0 {
        return Err(Error::invalid("subset size must be at least 1"));
    }
    let e = g.edges.len();
    budget.check_subsets("edge subsets", subsets_up_to(e, ell))?;
    for size in 1..=ell.min(e) {
        for subset in g.edges.iter().combinations(size) {
            let mut touched: HashSet<(bool, usize)> = HashSet::with_capacity(2 * size);
            for &&(i, j) in &subset {
                touched.insert((false, i));
                touched.insert((true, j));
            }
            if touched.len() <= size {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
