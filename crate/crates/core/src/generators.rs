//! Random graph families: Erdős–Rényi, Watts–Strogatz, Barabási–Albert and
//! random geometric graphs, with parameter sampling over the ranges in which
//! each family is connected with high probability.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::Seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[serde(alias = "erdos-renyi")]
    Er,
    #[serde(alias = "watts-strogatz")]
    Ws,
    #[serde(alias = "barabasi-albert")]
    Ba,
    #[serde(alias = "geometric")]
    Geo,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Er, Family::Ws, Family::Ba, Family::Geo];

    pub fn name(self) -> &'static str {
        match self {
            Family::Er => "er",
            Family::Ws => "ws",
            Family::Ba => "ba",
            Family::Geo => "geo",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "er" | "erdos-renyi" => Ok(Family::Er),
            "ws" | "watts-strogatz" => Ok(Family::Ws),
            "ba" | "barabasi-albert" => Ok(Family::Ba),
            "geo" | "geometric" => Ok(Family::Geo),
            other => Err(Error::Config(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FamilyParams {
    Er { n: usize, p: f64 },
    Ws { n: usize, k: usize, p: f64 },
    Ba { n: usize, m: usize },
    Geo { n: usize, r: f64 },
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Er { .. } => Family::Er,
            FamilyParams::Ws { .. } => Family::Ws,
            FamilyParams::Ba { .. } => Family::Ba,
            FamilyParams::Geo { .. } => Family::Geo,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilyParams::Er { n, .. }
            | FamilyParams::Ws { n, .. }
            | FamilyParams::Ba { n, .. }
            | FamilyParams::Geo { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        match *self {
            FamilyParams::Er { n, p } => {
                if n == 0 || !(0.0..=1.0).contains(&p) {
                    return bad(format!("ER needs n >= 1 and p in [0, 1], got n={n} p={p}"));
                }
            }
            FamilyParams::Ws { n, k, p } => {
                if k == 0 || 2 * k >= n || !(0.0..=1.0).contains(&p) {
                    return bad(format!("WS needs 1 <= k < n/2 and p in [0, 1], got n={n} k={k} p={p}"));
                }
            }
            FamilyParams::Ba { n, m } => {
                if m == 0 || m >= n {
                    return bad(format!("BA needs 1 <= m < n, got n={n} m={m}"));
                }
            }
            FamilyParams::Geo { n, r } => {
                if n == 0 || r.is_nan() || r < 0.0 {
                    return bad(format!("GEO needs n >= 1 and r >= 0, got n={n} r={r}"));
                }
            }
        }
        Ok(())
    }
}

/// Lower end of the ER edge-probability range, `ln(n) / n`.
pub fn er_min_p(n: usize) -> f64 {
    (n as f64).ln() / n as f64
}

/// Lower end of the GEO radius range, `1.1 · sqrt(ln(n) / (n π))`.
pub fn geo_min_r(n: usize) -> f64 {
    1.1 * ((n as f64).ln() / (n as f64 * PI)).sqrt()
}

/// Draws `n` uniformly from `n_min..=n_max`, then the family parameters
/// uniformly from their connectivity ranges.
pub fn sample_params(family: Family, n_min: usize, n_max: usize, seed: Seed) -> Result<FamilyParams> {
    if n_min < 4 || n_min > n_max {
        return Err(Error::Domain(format!(
            "node range {n_min}..={n_max} must be non-empty with n_min >= 4"
        )));
    }
    let mut rng = seed.rng();
    let n = rng.gen_range(n_min..=n_max);
    Ok(match family {
        Family::Er => FamilyParams::Er {
            n,
            p: rng.gen_range(er_min_p(n)..=1.0),
        },
        Family::Ws => FamilyParams::Ws {
            n,
            k: rng.gen_range(1..n / 2),
            p: rng.gen_range(0.0..=1.0),
        },
        Family::Ba => FamilyParams::Ba {
            n,
            m: rng.gen_range(1..n),
        },
        Family::Geo => FamilyParams::Geo {
            n,
            r: rng.gen_range(geo_min_r(n)..1.0),
        },
    })
}

/// One sample from the family; not necessarily connected.
pub fn generate(params: &FamilyParams, seed: Seed) -> Result<Graph> {
    params.validate()?;
    Ok(generate_with(params, &mut seed.rng()))
}

fn generate_with<R: Rng>(params: &FamilyParams, rng: &mut R) -> Graph {
    match *params {
        FamilyParams::Er { n, p } => erdos_renyi(n, p, rng),
        FamilyParams::Ws { n, k, p } => watts_strogatz(n, k, p, rng),
        FamilyParams::Ba { n, m } => barabasi_albert(n, m, rng),
        FamilyParams::Geo { n, r } => geometric(n, r, rng),
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub attempts: usize,
}

/// Resamples until a connected graph appears, giving up after
/// `max_attempts` tries.
pub fn generate_connected(params: &FamilyParams, seed: Seed, max_attempts: usize) -> Result<Generated> {
    params.validate()?;
    if max_attempts == 0 {
        return Err(Error::Domain("max_attempts must be >= 1".into()));
    }
    let mut rng = seed.rng();
    for attempt in 1..=max_attempts {
        let graph = generate_with(params, &mut rng);
        if graph.is_connected() {
            return Ok(Generated {
                graph,
                attempts: attempt,
            });
        }
    }
    Err(Error::ExhaustedAttempts(max_attempts))
}

fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Ring lattice with `k` neighbours per side; each lattice edge's far
/// endpoint is rewired with probability `p` to a uniform vertex that is
/// neither the near endpoint nor already adjacent to it.
fn watts_strogatz<R: Rng>(n: usize, k: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for j in 1..=k {
        for u in 0..n {
            g.add_edge(u, (u + j) % n);
        }
    }
    let mut targets = Vec::with_capacity(n);
    for j in 1..=k {
        for u in 0..n {
            if rng.gen::<f64>() >= p {
                continue;
            }
            targets.clear();
            targets.extend((0..n).filter(|&w| w != u && !g.has_edge(u, w)));
            if targets.is_empty() {
                continue;
            }
            let w = targets[rng.gen_range(0..targets.len())];
            g.remove_edge(u, (u + j) % n);
            g.add_edge(u, w);
        }
    }
    g
}

/// Star on `m + 1` vertices, then each new vertex attaches to `m` distinct
/// existing vertices chosen with probability proportional to degree.
fn barabasi_albert<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..=m {
        g.add_edge(0, v);
    }
    let mut weights: Vec<u64> = Vec::with_capacity(n);
    let mut chosen = Vec::with_capacity(m);
    for t in m + 1..n {
        weights.clear();
        weights.extend((0..t).map(|v| g.degree(v) as u64));
        chosen.clear();
        for _ in 0..m {
            let total: u64 = weights.iter().sum();
            let mut r = rng.gen_range(0..total);
            let pick = weights
                .iter()
                .position(|&w| {
                    if r < w {
                        true
                    } else {
                        r -= w;
                        false
                    }
                })
                .expect("weighted draw within total");
            weights[pick] = 0;
            chosen.push(pick);
        }
        for &v in &chosen {
            g.add_edge(t, v);
        }
    }
    g
}

fn geometric<R: Rng>(n: usize, r: f64, rng: &mut R) -> Graph {
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let mut g = Graph::new(n);
    let r2 = r * r;
    for u in 0..n {
        for v in u + 1..n {
            let dx = points[u].0 - points[v].0;
            let dy = points[u].1 - points[v].1;
            if dx * dx + dy * dy <= r2 {
                g.add_edge(u, v);
            }
        }
    }
    g
}
