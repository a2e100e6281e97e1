//! Girth and exact-length cycle enumeration.
//!
//! Cycles are reported in canonical form: the smallest vertex first, then
//! the direction whose second vertex is smaller than its last. Every simple
//! cycle is therefore produced exactly once.

use std::collections::VecDeque;
use std::fmt;
use std::ops::ControlFlow;

use super::{Edge, Graph};
use crate::error::{Error, Result};

/// Length of the shortest cycle, or `Acyclic` for forests.
///
/// `Acyclic` orders above every finite girth, so `girth >= Finite(g)` holds
/// vacuously for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    pub fn value(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }

    pub fn is_acyclic(self) -> bool {
        self == Girth::Acyclic
    }

    /// `girth >= target`, with forests satisfying every target.
    pub fn at_least(self, target: usize) -> bool {
        self >= Girth::Finite(target)
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

/// Shortest cycle length via a BFS from every vertex.
///
/// Every non-tree edge `(u, w)` seen from root `s` closes a walk of length
/// `d(u) + d(w) + 1` containing a cycle no longer than that; roots on a
/// shortest cycle attain the girth exactly.
pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            // Any closure found from here has length at least 2 * dist[u].
            if 2 * dist[u] >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Finite(best)
    }
}

/// A set of simple cycles sharing one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    pub length: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl CycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.cycles.iter().map(Vec::as_slice)
    }
}

/// Edges of a cycle given as its vertex sequence.
pub fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    (0..cycle.len()).map(move |i| Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]))
}

/// Every cycle of length exactly `girth(g)`.
pub fn shortest_cycles(g: &Graph) -> Result<CycleSet> {
    match girth(g) {
        Girth::Acyclic => Err(Error::AcyclicGraph),
        Girth::Finite(len) => Ok(cycles_of_length(g, len)),
    }
}

/// Every simple cycle with exactly `len` edges. Empty for `len < 3`.
pub fn cycles_of_length(g: &Graph, len: usize) -> CycleSet {
    let mut cycles = Vec::new();
    for_each_cycle_of_length(g, len, |c| {
        cycles.push(c.to_vec());
        ControlFlow::Continue(())
    });
    CycleSet { length: len, cycles }
}

/// Number of simple cycles of length `len`, without materialising them.
pub fn count_cycles_of_length(g: &Graph, len: usize) -> u64 {
    let mut count = 0u64;
    for_each_cycle_of_length(g, len, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Like [`count_cycles_of_length`] but gives up (returning `None`) once the
/// search has expanded more than `max_work` DFS nodes.
pub fn count_cycles_of_length_bounded(g: &Graph, len: usize, max_work: u64) -> Option<u64> {
    let mut count = 0u64;
    let mut search = CycleSearch::new(g, len);
    let finished = search.run(&mut |_| {
        count += 1;
        ControlFlow::Continue(())
    }, Some(max_work));
    finished.then_some(count)
}

/// Calls `visit` once per canonical cycle of length `len`, stopping early if
/// the visitor breaks.
pub fn for_each_cycle_of_length<F>(g: &Graph, len: usize, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    CycleSearch::new(g, len).run(&mut visit, None);
}

struct CycleSearch<'g> {
    g: &'g Graph,
    len: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    // BFS distance to the current start within vertices >= start.
    dist: Vec<usize>,
    work: u64,
    budget: Option<u64>,
}

impl<'g> CycleSearch<'g> {
    fn new(g: &'g Graph, len: usize) -> Self {
        CycleSearch {
            g,
            len,
            path: Vec::with_capacity(len),
            on_path: vec![false; g.n()],
            dist: vec![usize::MAX; g.n()],
            work: 0,
            budget: None,
        }
    }

    /// Returns false if the work budget ran out.
    fn run<F>(&mut self, visit: &mut F, budget: Option<u64>) -> bool
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.budget = budget;
        if self.len < 3 {
            return true;
        }
        let n = self.g.n();
        for start in 0..n {
            if n - start < self.len {
                break;
            }
            self.bfs_from(start);
            self.path.clear();
            self.path.push(start);
            self.on_path[start] = true;
            let flow = self.extend(start, visit);
            self.on_path[start] = false;
            match flow {
                Step::Go => {}
                Step::Stop => return true,
                Step::OutOfBudget => return false,
            }
        }
        true
    }

    fn bfs_from(&mut self, start: usize) {
        self.dist.iter_mut().for_each(|d| *d = usize::MAX);
        self.dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if self.dist[u] >= self.len {
                continue;
            }
            for &w in self.g.neighbors(u) {
                if w > start && self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    fn extend<F>(&mut self, start: usize, visit: &mut F) -> Step
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.work += 1;
        if let Some(b) = self.budget {
            if self.work > b {
                return Step::OutOfBudget;
            }
        }
        let depth = self.path.len();
        let last = *self.path.last().unwrap();
        if depth == self.len {
            if self.path[1] < last && self.g.has_edge(last, start) {
                if let ControlFlow::Break(()) = visit(&self.path) {
                    return Step::Stop;
                }
            }
            return Step::Go;
        }
        // Placing `w` at position `depth` leaves `len - depth` edges to return.
        let remaining = self.len - depth;
        for &w in self.g.neighbors(last) {
            if w <= start || self.on_path[w] || self.dist[w] > remaining {
                continue;
            }
            self.path.push(w);
            self.on_path[w] = true;
            let step = self.extend(start, visit);
            self.on_path[w] = false;
            self.path.pop();
            if !matches!(step, Step::Go) {
                return step;
            }
        }
        Step::Go
    }
}

enum Step {
    Go,
    Stop,
    OutOfBudget,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    /// Exhaustive oracle: try every vertex sequence and keep canonical cycles.
    fn brute_force_cycles(g: &Graph, len: usize) -> Vec<Vec<usize>> {
        fn rec(g: &Graph, len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if path.len() == len {
                if g.has_edge(path[len - 1], path[0]) {
                    let mut c = path.clone();
                    let min_pos = (0..len).min_by_key(|&i| c[i]).unwrap();
                    c.rotate_left(min_pos);
                    if c[1] > c[len - 1] {
                        c[1..].reverse();
                    }
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
                return;
            }
            for v in 0..g.n() {
                if !path.contains(&v) && (path.is_empty() || g.has_edge(*path.last().unwrap(), v)) {
                    path.push(v);
                    rec(g, len, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(g, len, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    #[test]
    fn girth_small_examples() {
        assert_eq!(girth(&Graph::cycle(5)), Girth::Finite(5));
        assert_eq!(girth(&Graph::star(10)), Girth::Acyclic);
        assert_eq!(girth(&Graph::complete(4)), Girth::Finite(3));
        assert_eq!(girth(&Graph::new(0)), Girth::Acyclic);
        let brute = (3..=10)
            .find(|&l| !brute_force_cycles(&Graph::petersen(), l).is_empty())
            .unwrap();
        assert_eq!(brute, 5);
        assert_eq!(girth(&Graph::petersen()), Girth::Finite(5));
    }

    #[test]
    fn girth_even_cycles() {
        for n in 3..20 {
            assert_eq!(girth(&Graph::cycle(n)), Girth::Finite(n));
        }
        let mut theta = Graph::cycle(8);
        theta.add_edge(0, 4);
        assert_eq!(girth(&theta), Girth::Finite(5));
    }

    #[test]
    fn acyclic_orders_above_finite() {
        assert!(Girth::Acyclic > Girth::Finite(1000));
        assert!(Girth::Acyclic.at_least(10));
        assert!(Girth::Finite(6).at_least(6));
        assert!(!Girth::Finite(5).at_least(6));
        assert_eq!(Girth::Acyclic.to_string(), "acyclic");
    }

    #[test]
    fn shortest_cycle_examples() {
        let c6 = shortest_cycles(&Graph::cycle(6)).unwrap();
        assert_eq!((c6.length, c6.len()), (6, 1));
        assert_eq!(c6.cycles[0], vec![0, 1, 2, 3, 4, 5]);

        let k4 = shortest_cycles(&Graph::complete(4)).unwrap();
        assert_eq!(k4.len(), brute_force_cycles(&Graph::complete(4), 3).len());
        assert_eq!(k4.len(), 4);

        assert!(matches!(
            shortest_cycles(&Graph::path(4)),
            Err(Error::AcyclicGraph)
        ));
    }

    #[test]
    fn exact_length_examples() {
        assert_eq!(cycles_of_length(&Graph::cycle(5), 4).len(), 0);
        assert_eq!(brute_force_cycles(&Graph::complete(5), 4).len(), 15);
        assert_eq!(cycles_of_length(&Graph::complete(5), 4).len(), 15);
        assert_eq!(cycles_of_length(&Graph::complete(5), 2).len(), 0);
        assert_eq!(brute_force_cycles(&Graph::petersen(), 5).len(), 12);
        assert_eq!(cycles_of_length(&Graph::petersen(), 5).len(), 12);
    }

    #[test]
    fn complete_graph_triangles_are_binomial() {
        for n in 3..=10u64 {
            let expected = n * (n - 1) * (n - 2) / 6;
            assert_eq!(count_cycles_of_length(&Graph::complete(n as usize), 3), expected);
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let graphs = [bowtie(), Graph::petersen(), Graph::complete(6), {
            let mut g = Graph::cycle(7);
            g.add_edge(0, 3);
            g.add_edge(2, 5);
            g
        }];
        for g in &graphs {
            for len in 3..=g.n().min(7) {
                let mut ours = cycles_of_length(g, len).cycles;
                ours.sort();
                assert_eq!(ours, brute_force_cycles(g, len), "len {len} on {g:?}");
                for c in &ours {
                    assert!(cycle_edges(c).all(|e| g.has_edge(e.u(), e.v())));
                }
            }
        }
    }

    #[test]
    fn bounded_count_gives_up() {
        let k12 = Graph::complete(12);
        assert_eq!(count_cycles_of_length_bounded(&k12, 3, 1_000_000), Some(220));
        assert_eq!(count_cycles_of_length_bounded(&k12, 8, 100), None);
    }

    #[test]
    fn visitor_can_stop_early() {
        let mut seen = 0;
        for_each_cycle_of_length(&Graph::complete(8), 3, |_| {
            seen += 1;
            if seen == 5 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(seen, 5);
    }
}
