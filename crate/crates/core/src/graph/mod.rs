//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! [`Graph`] is the single representation shared by every other module. It
//! keeps sorted adjacency lists, so iteration order (and therefore every
//! seeded algorithm built on top of it) is deterministic.

mod bridges;
mod cycles;
mod distance;
mod io;

pub use bridges::non_bridge_edges;
pub use cycles::{
    count_cycles_of_length, count_cycles_of_length_bounded, cycle_edges, cycles_of_length,
    for_each_cycle_of_length, girth, shortest_cycles, CycleSet, Girth,
};
pub use distance::{distances, DistanceMatrix};
pub use io::{parse_edge_list, read_edge_list, write_edge_list};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// An undirected edge stored in canonical order `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Builds the canonical edge between `a` and `b`.
    ///
    /// Panics if `a == b`; self-loops are never valid edges.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop ({a}, {a}) is not a valid edge");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn other(self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph: no self-loops, no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<(usize, usize)>,
    {
        let mut g = Graph::new(n);
        for e in edges {
            let (a, b) = e.into();
            if a >= n || b >= n {
                return Err(Error::Domain(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::Domain(format!("self-loop at vertex {a}")));
            }
            if !g.add_edge(a, b) {
                return Err(Error::Domain(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle graph needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// Path `P_n` on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Star `K_{1,leaves}`: centre 0 joined to `leaves` outer vertices.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n() && b < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Inserts `(a, b)`. Returns `false` if the edge already existed.
    ///
    /// Panics on a self-loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, a: usize, b: usize) -> bool {
        assert_ne!(a, b, "self-loop at vertex {a}");
        assert!(a < self.n() && b < self.n(), "vertex out of range");
        match self.adj[a].binary_search(&b) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[a].insert(pos, b);
                let pos = self.adj[b].binary_search(&a).unwrap_err();
                self.adj[b].insert(pos, a);
                self.edge_count += 1;
                true
            }
        }
    }

    /// Deletes `(a, b)`. Returns `false` if the edge was absent.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        if a == b || a >= self.n() || b >= self.n() {
            return false;
        }
        match self.adj[a].binary_search(&b) {
            Ok(pos) => {
                self.adj[a].remove(pos);
                let pos = self.adj[b].binary_search(&a).expect("adjacency out of sync");
                self.adj[b].remove(pos);
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Edges in canonical order (by `u`, then `v`).
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| Edge { u, v })
        })
    }

    /// Number of vertices with degree < 2 (leaves and isolated vertices).
    pub fn leaf_count(&self) -> usize {
        self.adj.iter().filter(|nbrs| nbrs.len() < 2).count()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() < 2
    }

    /// True iff a single BFS reaches every vertex. The graph on zero or one
    /// vertex is connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn component_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        let mut components = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut rows = vec![vec![0u8; n]; n];
        for e in self.edges() {
            rows[e.u][e.v] = 1;
            rows[e.v][e.u] = 1;
        }
        rows
    }

    /// Human-readable adjacency export, one `v: n1 n2 ...` line per vertex.
    pub fn to_adjacency_string(&self) -> String {
        let mut out = String::new();
        for (v, nbrs) in self.adj.iter().enumerate() {
            out.push_str(&v.to_string());
            out.push(':');
            for w in nbrs {
                out.push(' ');
                out.push_str(&w.to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().map(|e| e.endpoints()).collect::<Vec<_>>())
            .finish()
    }
}

/// Lower bound on the vertex count of a graph with minimum degree `degree`
/// and girth `girth` (Moore bound).
///
/// Even girth: `2 * sum_{i < g/2} (d-1)^i`.
/// Odd girth: `1 + d * sum_{i < (g-1)/2} (d-1)^i`.
pub fn moore_min_nodes(degree: u64, girth: u64) -> Result<u128> {
    if degree < 2 {
        return Err(Error::Domain(format!("degree {degree} < 2")));
    }
    if girth < 3 {
        return Err(Error::Domain(format!("girth {girth} < 3")));
    }
    let base = u128::from(degree - 1);
    let geometric = |terms: u64| -> Result<u128> {
        let mut sum: u128 = 0;
        let mut power: u128 = 1;
        for i in 0..terms {
            sum = sum.checked_add(power).ok_or(Error::Overflow)?;
            if i + 1 < terms {
                power = power.checked_mul(base).ok_or(Error::Overflow)?;
            }
        }
        Ok(sum)
    };
    if girth.is_multiple_of(2) {
        geometric(girth / 2)?.checked_mul(2).ok_or(Error::Overflow)
    } else {
        geometric((girth - 1) / 2)?
            .checked_mul(u128::from(degree))
            .and_then(|s| s.checked_add(1))
            .ok_or(Error::Overflow)
    }
}
