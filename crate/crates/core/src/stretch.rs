//! Girth stretching by repeated removal of edges on shortest cycles.
//!
//! The shortest cycles of the current graph are held in a sparse
//! cycle × edge incidence structure. Removing an edge drops its column and
//! every row through it; the structure is only rebuilt from scratch when
//! it runs empty, which is exactly when the girth has gone up.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cycle_edges, girth, shortest_cycles, Edge, Girth, Graph};
use crate::seed::Seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StretchMethod {
    Random,
    LeastCycles,
    MostCycles,
}

impl StretchMethod {
    pub const ALL: [StretchMethod; 3] = [
        StretchMethod::Random,
        StretchMethod::LeastCycles,
        StretchMethod::MostCycles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StretchMethod::Random => "random",
            StretchMethod::LeastCycles => "least-cycles",
            StretchMethod::MostCycles => "most-cycles",
        }
    }
}

impl fmt::Display for StretchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StretchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "random" => Ok(StretchMethod::Random),
            "least-cycles" | "least" => Ok(StretchMethod::LeastCycles),
            "most-cycles" | "most" => Ok(StretchMethod::MostCycles),
            other => Err(Error::Config(format!("unknown stretch method `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Column {
    rows: Vec<usize>,
    weight: usize,
}

/// Sparse incidence between the current shortest cycles (rows) and the
/// edges on them (columns). Columns with no live row are dropped.
#[derive(Clone, Debug)]
pub struct CycleIncidence {
    length: usize,
    rows: Vec<Vec<Edge>>,
    alive: Vec<bool>,
    live_rows: usize,
    columns: BTreeMap<Edge, Column>,
}

impl CycleIncidence {
    fn from_cycles<'a>(length: usize, cycles: impl IntoIterator<Item = &'a [usize]>) -> Self {
        let rows: Vec<Vec<Edge>> = cycles
            .into_iter()
            .map(|c| cycle_edges(c).collect())
            .collect();
        let mut columns: BTreeMap<Edge, Column> = BTreeMap::new();
        for (r, edges) in rows.iter().enumerate() {
            for &e in edges {
                let col = columns.entry(e).or_default();
                col.rows.push(r);
                col.weight += 1;
            }
        }
        CycleIncidence {
            length,
            live_rows: rows.len(),
            alive: vec![true; rows.len()],
            rows,
            columns,
        }
    }

    /// Cycle length shared by every row.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn row_count(&self) -> usize {
        self.live_rows
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live_rows == 0
    }

    /// Number of live rows through `e`; 0 if `e` has no column.
    pub fn column_weight(&self, e: Edge) -> usize {
        self.columns.get(&e).map_or(0, |c| c.weight)
    }

    /// Columns with their weights, in canonical edge order.
    pub fn columns(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.columns.iter().map(|(&e, c)| (e, c.weight))
    }

    /// Edge lists of the live rows.
    pub fn rows(&self) -> impl Iterator<Item = &[Edge]> {
        self.rows
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(r, _)| r.as_slice())
    }

    /// Deletes `e`'s column and every row containing it.
    pub fn remove_edge(&mut self, e: Edge) {
        let Some(col) = self.columns.remove(&e) else {
            return;
        };
        for r in col.rows {
            if !self.alive[r] {
                continue;
            }
            self.alive[r] = false;
            self.live_rows -= 1;
            for &f in &self.rows[r] {
                if f == e {
                    continue;
                }
                if let Some(other) = self.columns.get_mut(&f) {
                    other.weight -= 1;
                    if other.weight == 0 {
                        self.columns.remove(&f);
                    }
                }
            }
        }
    }
}

/// Incidence for every shortest cycle of `g`.
pub fn rebuild_incidence(g: &Graph) -> Result<CycleIncidence> {
    let cycles = shortest_cycles(g)?;
    Ok(CycleIncidence::from_cycles(cycles.length, cycles.iter()))
}

/// Picks the column to delete. Ties are broken uniformly at random.
pub fn select_edge<R: Rng + ?Sized>(
    inc: &CycleIncidence,
    method: StretchMethod,
    rng: &mut R,
) -> Result<Edge> {
    if inc.columns.is_empty() {
        return Err(Error::EmptyIncidence);
    }
    let pool: Vec<Edge> = match method {
        StretchMethod::Random => inc.columns.keys().copied().collect(),
        StretchMethod::LeastCycles | StretchMethod::MostCycles => {
            let weights = inc.columns.values().map(|c| c.weight);
            let target = if method == StretchMethod::MostCycles {
                weights.max()
            } else {
                weights.min()
            }
            .expect("non-empty");
            inc.columns
                .iter()
                .filter(|(_, c)| c.weight == target)
                .map(|(&e, _)| e)
                .collect()
        }
    };
    Ok(pool[rng.gen_range(0..pool.len())])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    pub edge: Edge,
    /// Girth after the removal.
    pub girth: Girth,
    /// Number of removable columns when the edge was chosen.
    pub candidates: usize,
}

#[derive(Clone, Debug)]
pub struct StretchReport {
    pub method: StretchMethod,
    pub target_girth: usize,
    pub initial_girth: Girth,
    pub final_girth: Girth,
    pub removals: Vec<Removal>,
    /// Cycle length of each full incidence rebuild, in order.
    pub rebuild_lengths: Vec<usize>,
    pub graph: Graph,
}

impl StretchReport {
    pub fn removed_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.removals.iter().map(|r| r.edge)
    }

    pub fn reached_acyclic(&self) -> bool {
        self.final_girth.is_acyclic()
    }

    /// Applies the recorded removals to `input`.
    pub fn replay(&self, input: &Graph) -> Graph {
        let mut g = input.clone();
        for e in self.removed_edges() {
            g.remove_edge(e.u(), e.v());
        }
        g
    }

    /// One CSV line per removal: `step,u,v,girth,candidates`.
    pub fn write_log<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "step,u,v,girth,candidates")?;
        for (i, r) in self.removals.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{}",
                i + 1,
                r.edge.u(),
                r.edge.v(),
                r.girth,
                r.candidates
            )?;
        }
        Ok(())
    }
}

/// Removes shortest-cycle edges until the girth reaches `target_girth` or the
/// graph becomes a forest.
pub fn stretch(g: &Graph, target_girth: usize, method: StretchMethod, seed: Seed) -> Result<StretchReport> {
    if target_girth < 3 {
        return Err(Error::Domain(format!("target girth {target_girth} < 3")));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut rng = seed.rng();
    let mut graph = g.clone();
    let initial_girth = girth(&graph);
    let mut current = initial_girth;
    let mut removals = Vec::new();
    let mut rebuild_lengths = Vec::new();

    if !current.at_least(target_girth) {
        let mut inc = rebuild_incidence(&graph)?;
        rebuild_lengths.push(inc.length());
        loop {
            let candidates = inc.column_count();
            let edge = select_edge(&inc, method, &mut rng)?;
            graph.remove_edge(edge.u(), edge.v());
            inc.remove_edge(edge);
            debug_assert!(graph.is_connected(), "removed a bridge {edge}");

            if inc.is_empty() {
                let next = girth(&graph);
                debug_assert!(next > current, "girth must rise once the incidence empties");
                current = next;
            }
            removals.push(Removal {
                edge,
                girth: current,
                candidates,
            });
            if current.at_least(target_girth) {
                break;
            }
            if inc.is_empty() {
                inc = rebuild_incidence(&graph)?;
                rebuild_lengths.push(inc.length());
            }
        }
    }

    Ok(StretchReport {
        method,
        target_girth,
        initial_girth,
        final_girth: current,
        removals,
        rebuild_lengths,
        graph,
    })
}
