//! Exhaustive reference implementations for small graphs.

use std::collections::VecDeque;

use graph_stretch::{Edge, Graph};
use num::{BigInt, BigRational, Zero};
use rand::Rng;

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let g = random_graph(n, p, rng);
        if components(&g) == 1 {
            return g;
        }
    }
}

pub fn components(g: &Graph) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    count
}

pub fn connected(g: &Graph) -> bool {
    g.n() == 0 || components(g) == 1
}

pub fn leaves(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.neighbors(v).len() < 2).count()
}

/// Shortest cycle length found by walking every simple path.
pub fn girth(g: &Graph) -> Option<usize> {
    fn walk(g: &Graph, start: usize, at: usize, len: usize, on_path: &mut [bool], best: &mut Option<usize>) {
        for &v in g.neighbors(at) {
            if v == start && len >= 3 {
                *best = Some(best.map_or(len, |b| b.min(len)));
            } else if !on_path[v] && v > start {
                on_path[v] = true;
                walk(g, start, v, len + 1, on_path, best);
                on_path[v] = false;
            }
        }
    }
    let mut best = None;
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        on_path[s] = true;
        walk(g, s, s, 1, &mut on_path, &mut best);
        on_path[s] = false;
    }
    best
}

/// Number of distinct cycles of exactly `len` vertices.
pub fn cycle_count(g: &Graph, len: usize) -> u64 {
    fn walk(g: &Graph, start: usize, at: usize, depth: usize, len: usize, on_path: &mut [bool]) -> u64 {
        let mut total = 0;
        for &v in g.neighbors(at) {
            if v == start && depth == len {
                total += 1;
            } else if depth < len && !on_path[v] && v > start {
                on_path[v] = true;
                total += walk(g, start, v, depth + 1, len, on_path);
                on_path[v] = false;
            }
        }
        total
    }
    let mut on_path = vec![false; g.n()];
    let mut directed = 0;
    for s in 0..g.n() {
        on_path[s] = true;
        directed += walk(g, s, s, 1, len, &mut on_path);
        on_path[s] = false;
    }
    // Each cycle is walked once in each direction from its least vertex.
    directed / 2
}

/// Edges whose removal leaves the component count unchanged.
pub fn non_bridges(g: &Graph) -> Vec<Edge> {
    let base = components(g);
    g.edges()
        .filter(|e| {
            let mut h = g.clone();
            h.remove_edge(e.u(), e.v());
            components(&h) == base
        })
        .collect()
}

/// Floyd–Warshall; `None` for unreachable pairs.
pub fn all_pairs(g: &Graph) -> Vec<Vec<Option<u64>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
        for &v in g.neighbors(u) {
            d[u][v] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn r(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Mean over vertices of (n − 1) / Σ_j d(i, j); connected graphs only.
pub fn closeness(g: &Graph) -> BigRational {
    let n = g.n() as u64;
    let d = all_pairs(g);
    let mut total = BigRational::zero();
    for row in &d {
        let s: u64 = row.iter().map(|x| x.expect("connected")).sum();
        total += r(n - 1) / r(s);
    }
    total / r(n)
}

/// Mean of 1 / d(i, j) over ordered pairs i ≠ j; connected graphs only.
pub fn efficiency(g: &Graph) -> BigRational {
    let n = g.n() as u64;
    let d = all_pairs(g);
    let mut total = BigRational::zero();
    for (i, row) in d.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                total += BigRational::new(1.into(), BigInt::from(x.expect("connected")));
            }
        }
    }
    total / r(n * (n - 1))
}

/// Integer Laplacian D − A.
pub fn laplacian(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.n();
    let mut m = vec![vec![0i64; n]; n];
    for u in 0..n {
        for &v in g.neighbors(u) {
            m[u][v] = -1;
        }
        m[u][u] = g.neighbors(u).len() as i64;
    }
    m
}

/// Every single-edge toggle that keeps the graph connected, keeps girth at
/// or above `floor`, and does not create leaves.
pub fn legal_toggles(g: &Graph, floor: usize) -> Vec<(bool, Edge, Graph)> {
    let before = leaves(g);
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let mut h = g.clone();
            let adding = !g.has_edge(u, v);
            if adding {
                h.add_edge(u, v);
            } else {
                h.remove_edge(u, v);
            }
            let girth_ok = girth(&h).is_none_or(|x| x >= floor);
            if connected(&h) && girth_ok && leaves(&h) <= before {
                out.push((adding, Edge::new(u, v), h));
            }
        }
    }
    out
}
