//! Leaf minimisation: add edges between far-apart vertices so that leaves
//! gain a second neighbour without the girth dropping below a floor.
//!
//! Joining two vertices at distance `d` creates a shortest new cycle of
//! length `d + 1`, so only pairs with `d >= floor - 1` are eligible. Leaves
//! are first joined to each other; once no leaf–leaf pair is eligible the
//! run switches to leaf–non-leaf pairs and never switches back.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{distances, girth, DistanceMatrix, Edge, Graph};
use crate::seed::Seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeafMinMethod {
    /// No minimisation; the graph is returned as is.
    None,
    Random,
    Closest,
    Furthest,
}

impl LeafMinMethod {
    pub const ALL: [LeafMinMethod; 4] = [
        LeafMinMethod::None,
        LeafMinMethod::Random,
        LeafMinMethod::Closest,
        LeafMinMethod::Furthest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LeafMinMethod::None => "none",
            LeafMinMethod::Random => "random",
            LeafMinMethod::Closest => "closest",
            LeafMinMethod::Furthest => "furthest",
        }
    }
}

impl fmt::Display for LeafMinMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LeafMinMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(LeafMinMethod::None),
            "random" => Ok(LeafMinMethod::Random),
            "closest" => Ok(LeafMinMethod::Closest),
            "furthest" => Ok(LeafMinMethod::Furthest),
            other => Err(Error::Config(format!("unknown leaf-minimisation method `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    LeafLeaf,
    LeafNonleaf,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::LeafLeaf => "leaf-leaf",
            Phase::LeafNonleaf => "leaf-nonleaf",
        })
    }
}

/// A candidate pair and its current distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pair {
    pub edge: Edge,
    pub distance: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Addition {
    pub edge: Edge,
    pub phase: Phase,
    /// Endpoint distance just before the edge was added.
    pub distance: u32,
}

#[derive(Clone, Debug)]
pub struct LeafMinReport {
    pub method: LeafMinMethod,
    pub girth_floor: usize,
    pub additions: Vec<Addition>,
    pub leaves_before: usize,
    pub leaves_after: usize,
    pub graph: Graph,
}

impl LeafMinReport {
    pub fn replay(&self, input: &Graph) -> Graph {
        let mut g = input.clone();
        for a in &self.additions {
            g.add_edge(a.edge.u(), a.edge.v());
        }
        g
    }

    /// One CSV line per addition: `step,u,v,phase,distance`.
    pub fn write_log<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "step,u,v,phase,distance")?;
        for (i, a) in self.additions.iter().enumerate() {
            writeln!(out, "{},{},{},{},{}", i + 1, a.edge.u(), a.edge.v(), a.phase, a.distance)?;
        }
        Ok(())
    }
}

pub fn eligible_pairs(g: &Graph, girth_floor: usize, phase: Phase) -> Vec<Pair> {
    eligible_from(g, &distances(g), girth_floor, phase)
}

fn eligible_from(g: &Graph, d: &DistanceMatrix, girth_floor: usize, phase: Phase) -> Vec<Pair> {
    let min_distance = girth_floor.saturating_sub(1).max(2) as u32;
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        if !g.is_leaf(u) {
            continue;
        }
        for v in 0..n {
            let wanted = match phase {
                Phase::LeafLeaf => g.is_leaf(v) && v > u,
                Phase::LeafNonleaf => !g.is_leaf(v),
            };
            if !wanted || v == u {
                continue;
            }
            match d.get(u, v) {
                Some(dist) if dist >= min_distance => out.push(Pair {
                    edge: Edge::new(u, v),
                    distance: dist,
                }),
                _ => {}
            }
        }
    }
    out
}

fn choose<R: Rng>(pairs: &[Pair], method: LeafMinMethod, rng: &mut R) -> Pair {
    let pool: Vec<&Pair> = match method {
        LeafMinMethod::Closest | LeafMinMethod::Furthest => {
            let dists = pairs.iter().map(|p| p.distance);
            let target = if method == LeafMinMethod::Closest {
                dists.min()
            } else {
                dists.max()
            }
            .expect("non-empty");
            pairs.iter().filter(|p| p.distance == target).collect()
        }
        _ => pairs.iter().collect(),
    };
    *pool[rng.gen_range(0..pool.len())]
}

pub fn minimise_leaves(
    g: &Graph,
    girth_floor: usize,
    method: LeafMinMethod,
    seed: Seed,
) -> Result<LeafMinReport> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let initial = girth(g);
    if !initial.at_least(girth_floor) {
        return Err(Error::GirthViolation {
            actual: initial.to_string(),
            floor: girth_floor,
        });
    }
    let leaves_before = g.leaf_count();
    let mut graph = g.clone();
    let mut additions = Vec::new();

    if method != LeafMinMethod::None {
        let mut rng = seed.rng();
        let mut phase = Phase::LeafLeaf;
        loop {
            let d = distances(&graph);
            let pairs = eligible_from(&graph, &d, girth_floor, phase);
            if pairs.is_empty() {
                if phase == Phase::LeafLeaf {
                    phase = Phase::LeafNonleaf;
                    continue;
                }
                break;
            }
            let pick = choose(&pairs, method, &mut rng);
            graph.add_edge(pick.edge.u(), pick.edge.v());
            additions.push(Addition {
                edge: pick.edge,
                phase,
                distance: pick.distance,
            });
            debug_assert!(
                phase == Phase::LeafLeaf
                    || eligible_pairs(&graph, girth_floor, Phase::LeafLeaf).is_empty(),
                "leaf-leaf pairs cannot become eligible after additions"
            );
        }
    }

    Ok(LeafMinReport {
        method,
        girth_floor,
        additions,
        leaves_before,
        leaves_after: graph.leaf_count(),
        graph,
    })
}
