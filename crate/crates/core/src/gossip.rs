//! Sequential simulation of asynchronous push-pull averaging.
//!
//! One round wakes a uniformly random vertex, which picks a uniformly random
//! neighbour; both adopt the mean of their two values. The run stops when
//! the error norm falls below the threshold.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::Seed;

pub const DEFAULT_THRESHOLD: f64 = 0.01;
pub const DEFAULT_MAX_ROUNDS: u64 = 10_000_000;
/// Initial values are integers drawn uniformly from `0..=MAX_INITIAL_VALUE`.
pub const MAX_INITIAL_VALUE: u32 = 50;

/// Reference vector the error is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorNorm {
    /// `‖x̄ − x0‖ / ‖x0‖`: distance from the initial values.
    Literal,
    /// `‖x̄ − μ·1‖ / ‖x0‖` with `μ` the initial mean.
    #[default]
    MeanDeviation,
}

impl ErrorNorm {
    pub fn name(self) -> &'static str {
        match self {
            ErrorNorm::Literal => "literal",
            ErrorNorm::MeanDeviation => "mean-deviation",
        }
    }
}

impl fmt::Display for ErrorNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ErrorNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "literal" => Ok(ErrorNorm::Literal),
            "mean-deviation" | "mean" => Ok(ErrorNorm::MeanDeviation),
            other => Err(Error::Config(format!("unknown error norm `{other}`"))),
        }
    }
}

/// Current per-vertex values alongside the immutable initial values.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueVector {
    x: Vec<f64>,
    x0: Vec<f64>,
}

impl ValueVector {
    pub fn new(initial: Vec<f64>) -> Self {
        ValueVector {
            x: initial.clone(),
            x0: initial,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub fn initial(&self) -> &[f64] {
        &self.x0
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.x.iter().sum()
    }

    pub fn initial_mean(&self) -> f64 {
        self.x0.iter().sum::<f64>() / self.x0.len() as f64
    }

    /// Push-pull exchange: both entries take their mean.
    pub fn average_pair(&mut self, a: usize, b: usize) {
        let mean = (self.x[a] + self.x[b]) / 2.0;
        self.x[a] = mean;
        self.x[b] = mean;
    }

    fn reference(&self, norm: ErrorNorm, i: usize, mean: f64) -> f64 {
        match norm {
            ErrorNorm::Literal => self.x0[i],
            ErrorNorm::MeanDeviation => mean,
        }
    }
}

pub fn error_norm(v: &ValueVector, norm: ErrorNorm) -> Result<f64> {
    let denom = v.x0.iter().map(|x| x * x).sum::<f64>().sqrt();
    if denom == 0.0 {
        return Err(Error::ZeroInitialNorm);
    }
    let mean = v.initial_mean();
    let num = (0..v.len())
        .map(|i| {
            let diff = v.x[i] - v.reference(norm, i, mean);
            diff * diff
        })
        .sum::<f64>()
        .sqrt();
    Ok(num / denom)
}

/// Integer values uniform in `0..=MAX_INITIAL_VALUE`.
pub fn initial_values<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n)
        .map(|_| f64::from(rng.gen_range(0..=MAX_INITIAL_VALUE)))
        .collect()
}

/// Runs `rounds` exchanges without any stopping rule.
pub fn simulate_rounds<R: Rng + ?Sized>(g: &Graph, values: &mut ValueVector, rounds: u64, rng: &mut R) {
    for _ in 0..rounds {
        let (a, b) = pick_pair(g, rng);
        values.average_pair(a, b);
    }
}

fn pick_pair<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> (usize, usize) {
    let v = rng.gen_range(0..g.n());
    let nbrs = g.neighbors(v);
    (v, nbrs[rng.gen_range(0..nbrs.len())])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GossipConfig {
    pub threshold: f64,
    pub norm: ErrorNorm,
    pub max_rounds: u64,
    /// Record the error norm every `trace_stride` rounds when set.
    pub trace_stride: Option<u64>,
}

impl Default for GossipConfig {
    fn default() -> Self {
        GossipConfig {
            threshold: DEFAULT_THRESHOLD,
            norm: ErrorNorm::MeanDeviation,
            max_rounds: DEFAULT_MAX_ROUNDS,
            trace_stride: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GossipOutcome {
    pub rounds: u64,
    pub final_error: f64,
    /// `(round, error norm)` samples.
    pub trace: Vec<(u64, f64)>,
}

// Exact recomputation interval for the running squared error.
const RESYNC_INTERVAL: u64 = 4096;

/// Averages `initial` over `g` until the error norm drops below the
/// threshold. All-zero initial values count as converged at round 0.
pub fn run_instance(g: &Graph, initial: Vec<f64>, cfg: &GossipConfig, seed: Seed) -> Result<GossipOutcome> {
    if g.n() < 2 {
        return Err(Error::Domain("averaging needs at least 2 vertices".into()));
    }
    if initial.len() != g.n() {
        return Err(Error::Domain(format!(
            "{} initial values for {} vertices",
            initial.len(),
            g.n()
        )));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut v = ValueVector::new(initial);
    let first = match error_norm(&v, cfg.norm) {
        Ok(e) => e,
        Err(Error::ZeroInitialNorm) => {
            return Ok(GossipOutcome {
                rounds: 0,
                final_error: 0.0,
                trace: vec![(0, 0.0)],
            })
        }
        Err(e) => return Err(e),
    };
    let mut trace = Vec::new();
    if cfg.trace_stride.is_some() {
        trace.push((0, first));
    }
    if first < cfg.threshold {
        return Ok(GossipOutcome {
            rounds: 0,
            final_error: first,
            trace,
        });
    }

    let denom2: f64 = v.x0.iter().map(|x| x * x).sum();
    let limit2 = cfg.threshold * cfg.threshold * denom2;
    let mean = v.initial_mean();
    let sq = |v: &ValueVector, i: usize| {
        let d = v.x[i] - v.reference(cfg.norm, i, mean);
        d * d
    };
    let mut err2 = first * first * denom2;
    let mut rng = seed.rng();

    for round in 1..=cfg.max_rounds {
        let (a, b) = pick_pair(g, &mut rng);
        err2 -= sq(&v, a) + sq(&v, b);
        v.average_pair(a, b);
        err2 += sq(&v, a) + sq(&v, b);

        if round % RESYNC_INTERVAL == 0 {
            err2 = (0..v.len()).map(|i| sq(&v, i)).sum();
        }
        if let Some(stride) = cfg.trace_stride {
            if stride > 0 && round % stride == 0 {
                trace.push((round, error_norm(&v, cfg.norm)?));
            }
        }
        if err2 < limit2 {
            let exact = error_norm(&v, cfg.norm)?;
            if exact < cfg.threshold {
                return Ok(GossipOutcome {
                    rounds: round,
                    final_error: exact,
                    trace,
                });
            }
            err2 = exact * exact * denom2;
        }
    }
    Err(Error::MaxRoundsExceeded(cfg.max_rounds))
}

/// Mean rounds to convergence over `instances` runs, each with fresh
/// initial values.
pub fn convergence_time(g: &Graph, instances: usize, cfg: &GossipConfig, seed: Seed) -> Result<f64> {
    if instances == 0 {
        return Err(Error::Domain("instances must be >= 1".into()));
    }
    let mut total = 0u128;
    for i in 0..instances {
        let child = seed.derive(i as u64);
        let values = initial_values(g.n(), &mut child.derive(0).rng());
        total += u128::from(run_instance(g, values, cfg, child.derive(1))?.rounds);
    }
    Ok(total as f64 / instances as f64)
}
