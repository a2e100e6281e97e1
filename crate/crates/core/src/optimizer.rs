//! Steepest-ascent local search over single-edge additions and removals.
//!
//! Legal moves keep the graph connected, keep its girth at or above the
//! floor and never create a leaf:
//! - additions join non-adjacent pairs at distance `>= floor - 1`;
//! - removals take non-bridge edges whose endpoints both have degree `>= 3`.
//!
//! Each step scores every legal move on a scratch copy (in parallel) and
//! applies the best one if it beats the current score.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{distances, girth, non_bridge_edges, DistanceMatrix, Edge, Graph};
use crate::metrics::{evaluate, HeuristicKind};
use crate::seed::Seed;

/// Relative improvement a move must exceed to count.
pub const IMPROVEMENT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Add,
    Remove,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Add => "add",
            MoveKind::Remove => "remove",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Move {
    pub kind: MoveKind,
    pub edge: Edge,
    pub score_after: f64,
}

impl Move {
    pub fn apply(&self, g: &mut Graph) {
        match self.kind {
            MoveKind::Add => g.add_edge(self.edge.u(), self.edge.v()),
            MoveKind::Remove => g.remove_edge(self.edge.u(), self.edge.v()),
        };
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepOutcome {
    Improve(Move),
    NoImprovement,
}

#[derive(Clone, Debug)]
pub struct OptimizeReport {
    pub kind: HeuristicKind,
    pub girth_floor: usize,
    pub moves: Vec<Move>,
    pub initial_score: f64,
    pub final_score: f64,
    /// Heuristic evaluations, including the initial score.
    pub evaluations: usize,
    /// True if `max_steps` stopped the search before a local optimum.
    pub truncated: bool,
    /// Time spent recomputing pairwise distances between steps.
    pub distance_time: Duration,
    pub graph: Graph,
}

impl OptimizeReport {
    pub fn additions(&self) -> usize {
        self.moves.iter().filter(|m| m.kind == MoveKind::Add).count()
    }

    pub fn removals(&self) -> usize {
        self.moves.iter().filter(|m| m.kind == MoveKind::Remove).count()
    }

    pub fn replay(&self, input: &Graph) -> Graph {
        let mut g = input.clone();
        for m in &self.moves {
            m.apply(&mut g);
        }
        g
    }

    /// `step,kind,u,v,score` lines; step 0 is the initial score.
    pub fn write_log<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "step,kind,u,v,score")?;
        writeln!(out, "0,initial,,,{}", self.initial_score)?;
        for (i, m) in self.moves.iter().enumerate() {
            writeln!(out, "{},{},{},{},{}", i + 1, m.kind, m.edge.u(), m.edge.v(), m.score_after)?;
        }
        Ok(())
    }
}

/// Non-bridge edges with both endpoints of degree at least 3.
pub fn removal_candidates(g: &Graph) -> Vec<Edge> {
    non_bridge_edges(g)
        .into_iter()
        .filter(|e| g.degree(e.u()) >= 3 && g.degree(e.v()) >= 3)
        .collect()
}

/// Non-adjacent pairs at distance at least `girth_floor - 1`.
pub fn addition_candidates(g: &Graph, girth_floor: usize) -> Vec<Edge> {
    addition_candidates_from(&distances(g), girth_floor)
}

fn addition_candidates_from(d: &DistanceMatrix, girth_floor: usize) -> Vec<Edge> {
    let min_distance = girth_floor.saturating_sub(1).max(2) as u32;
    let n = d.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if matches!(d.get(u, v), Some(x) if x >= min_distance) {
                out.push(Edge::new(u, v));
            }
        }
    }
    out
}

/// Every legal move, additions first, each group in canonical edge order.
pub fn legal_moves(g: &Graph, girth_floor: usize) -> Vec<(MoveKind, Edge)> {
    legal_moves_from(g, &distances(g), girth_floor)
}

fn legal_moves_from(g: &Graph, d: &DistanceMatrix, girth_floor: usize) -> Vec<(MoveKind, Edge)> {
    addition_candidates_from(d, girth_floor)
        .into_iter()
        .map(|e| (MoveKind::Add, e))
        .chain(removal_candidates(g).into_iter().map(|e| (MoveKind::Remove, e)))
        .collect()
}

/// True if `candidate` beats `current` by more than the relative tolerance.
pub fn improves(candidate: f64, current: f64) -> bool {
    candidate > current + IMPROVEMENT_TOLERANCE * current.abs().max(1.0)
}

/// Scores every legal move and returns the best if it improves on
/// `current_score`. Ties within tolerance of the best are broken uniformly.
pub fn greedy_step<R: Rng + ?Sized>(
    g: &Graph,
    girth_floor: usize,
    kind: HeuristicKind,
    rng: &mut R,
) -> Result<StepOutcome> {
    let current = evaluate(g, kind)?;
    let (outcome, _) = step_from(g, &distances(g), girth_floor, kind, current, rng)?;
    Ok(outcome)
}

fn step_from<R: Rng + ?Sized>(
    g: &Graph,
    d: &DistanceMatrix,
    girth_floor: usize,
    kind: HeuristicKind,
    current: f64,
    rng: &mut R,
) -> Result<(StepOutcome, usize)> {
    let moves = legal_moves_from(g, d, girth_floor);
    if moves.is_empty() {
        return Ok((StepOutcome::NoImprovement, 0));
    }
    let scores: Vec<f64> = moves
        .par_iter()
        .map(|&(mk, e)| {
            let mut scratch = g.clone();
            match mk {
                MoveKind::Add => scratch.add_edge(e.u(), e.v()),
                MoveKind::Remove => scratch.remove_edge(e.u(), e.v()),
            };
            evaluate(&scratch, kind)
        })
        .collect::<Result<_>>()?;

    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !improves(best, current) {
        return Ok((StepOutcome::NoImprovement, moves.len()));
    }
    let tied: Vec<usize> = (0..moves.len())
        .filter(|&i| !improves(best, scores[i]))
        .collect();
    let pick = tied[rng.gen_range(0..tied.len())];
    let (mk, edge) = moves[pick];
    Ok((
        StepOutcome::Improve(Move {
            kind: mk,
            edge,
            score_after: scores[pick],
        }),
        moves.len(),
    ))
}

/// Greedy search until no legal move improves the heuristic, or until
/// `max_steps` moves (default `10 · n`) have been applied.
pub fn optimise(
    g: &Graph,
    girth_floor: usize,
    kind: HeuristicKind,
    seed: Seed,
    max_steps: Option<usize>,
) -> Result<OptimizeReport> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let initial_girth = girth(g);
    if !initial_girth.at_least(girth_floor) {
        return Err(Error::GirthViolation {
            actual: initial_girth.to_string(),
            floor: girth_floor,
        });
    }
    let max_steps = max_steps.unwrap_or(10 * g.n());
    let mut rng = seed.rng();
    let mut graph = g.clone();
    let initial_score = evaluate(&graph, kind)?;
    let mut score = initial_score;
    let mut evaluations = 1;
    let mut moves = Vec::new();
    let mut truncated = false;

    let started = Instant::now();
    let mut d = distances(&graph);
    let mut distance_time = started.elapsed();

    loop {
        let (outcome, evaluated) = step_from(&graph, &d, girth_floor, kind, score, &mut rng)?;
        evaluations += evaluated;
        let StepOutcome::Improve(mv) = outcome else {
            break;
        };
        if moves.len() == max_steps {
            truncated = true;
            break;
        }
        mv.apply(&mut graph);
        score = mv.score_after;
        moves.push(mv);
        let t = Instant::now();
        d = distances(&graph);
        distance_time += t.elapsed();
    }

    Ok(OptimizeReport {
        kind,
        girth_floor,
        moves,
        initial_score,
        final_score: score,
        evaluations,
        truncated,
        distance_time,
        graph,
    })
}
