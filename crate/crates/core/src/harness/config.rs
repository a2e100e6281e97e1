//! Experiment configuration, stored as TOML.
//!
//! ```toml
//! families = ["er", "ws", "ba", "geo"]
//! girth_min = 3
//! girth_max = 8
//! stretch_methods = ["random", "least-cycles", "most-cycles"]   # "none" skips stretching
//! leafmin_methods = ["none", "random", "closest", "furthest"]
//! heuristics = ["none", "eigenratio", "algebraic-connectivity",
//!               "closeness-centrality", "global-efficiency"]     # "none" skips optimisation
//! repetitions = 20
//! gossip_instances = 10
//! threshold = 0.01
//! norm = "mean-deviation"                                        # or "literal"
//! seed = 42
//! n_min = 10
//! n_max = 40
//! max_attempts = 1000
//! max_gossip_rounds = 10000000
//! optimizer_max_steps = 0                                        # 0 means 10 * n
//! census_max_work = 500000                                       # 0 disables the census
//! output = "sweep.csv"
//! ```
//!
//! Every key is optional; missing keys take the desk-scale defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::Family;
use crate::gossip::{ErrorNorm, GossipConfig, DEFAULT_MAX_ROUNDS, DEFAULT_THRESHOLD};
use crate::leafmin::LeafMinMethod;
use crate::metrics::HeuristicKind;
use crate::stretch::StretchMethod;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    families: Vec<String>,
    girth_min: usize,
    girth_max: usize,
    stretch_methods: Vec<String>,
    leafmin_methods: Vec<String>,
    heuristics: Vec<String>,
    repetitions: usize,
    gossip_instances: usize,
    threshold: f64,
    norm: String,
    seed: u64,
    n_min: usize,
    n_max: usize,
    max_attempts: usize,
    max_gossip_rounds: u64,
    optimizer_max_steps: usize,
    census_max_work: u64,
    output: String,
}

impl Default for ConfigFile {
    fn default() -> Self {
        ExperimentConfig::default().to_file()
    }
}

/// Validated sweep configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub families: Vec<Family>,
    pub girth_min: usize,
    pub girth_max: usize,
    /// `None` runs the pipeline without stretching.
    pub stretch_methods: Vec<Option<StretchMethod>>,
    pub leafmin_methods: Vec<LeafMinMethod>,
    /// `None` skips the optimiser.
    pub heuristics: Vec<Option<HeuristicKind>>,
    pub repetitions: usize,
    pub gossip_instances: usize,
    pub threshold: f64,
    pub norm: ErrorNorm,
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub max_attempts: usize,
    pub max_gossip_rounds: u64,
    /// `None` uses the optimiser default of `10 · n`.
    pub optimizer_max_steps: Option<usize>,
    /// DFS node budget per census length; 0 disables the census.
    pub census_max_work: u64,
    pub output: PathBuf,
}

impl Default for ExperimentConfig {
    /// Desk scale: small graphs, 20 repetitions, girths 3..=8.
    fn default() -> Self {
        ExperimentConfig {
            families: Family::ALL.to_vec(),
            girth_min: 3,
            girth_max: 8,
            stretch_methods: StretchMethod::ALL.iter().copied().map(Some).collect(),
            leafmin_methods: LeafMinMethod::ALL.to_vec(),
            heuristics: std::iter::once(None)
                .chain(HeuristicKind::ALL.iter().copied().map(Some))
                .collect(),
            repetitions: 20,
            gossip_instances: 10,
            threshold: DEFAULT_THRESHOLD,
            norm: ErrorNorm::MeanDeviation,
            seed: 42,
            n_min: 10,
            n_max: 40,
            max_attempts: 1000,
            max_gossip_rounds: DEFAULT_MAX_ROUNDS,
            optimizer_max_steps: None,
            census_max_work: 500_000,
            output: PathBuf::from("sweep.csv"),
        }
    }
}

impl ExperimentConfig {
    /// Full-size experiment: n in 25..=100, girths 3..=10, 100 repetitions.
    pub fn full_scale() -> Self {
        ExperimentConfig {
            girth_max: 10,
            repetitions: 100,
            n_min: 25,
            n_max: 100,
            ..ExperimentConfig::default()
        }
    }

    pub fn girths(&self) -> impl Iterator<Item = usize> {
        self.girth_min..=self.girth_max
    }

    pub fn gossip(&self) -> GossipConfig {
        GossipConfig {
            threshold: self.threshold,
            norm: self.norm,
            max_rounds: self.max_gossip_rounds,
            trace_stride: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.families.is_empty() {
            return fail("families must not be empty");
        }
        if self.stretch_methods.is_empty() || self.leafmin_methods.is_empty() || self.heuristics.is_empty() {
            return fail("method lists must not be empty");
        }
        if self.girth_min < 3 || self.girth_min > self.girth_max {
            return fail("girth range must be non-empty and start at 3 or more");
        }
        if self.repetitions == 0 || self.gossip_instances == 0 {
            return fail("repetitions and gossip_instances must be >= 1");
        }
        if self.threshold.is_nan() || self.threshold <= 0.0 {
            return fail("threshold must be positive");
        }
        if self.n_min < 4 || self.n_min > self.n_max {
            return fail("node range must be non-empty with n_min >= 4");
        }
        if self.max_attempts == 0 || self.max_gossip_rounds == 0 {
            return fail("max_attempts and max_gossip_rounds must be >= 1");
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let cfg = Self::from_file(file)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&self.to_file()).expect("config always serialises")
    }

    fn to_file(&self) -> ConfigFile {
        ConfigFile {
            families: self.families.iter().map(|f| f.name().to_string()).collect(),
            girth_min: self.girth_min,
            girth_max: self.girth_max,
            stretch_methods: self
                .stretch_methods
                .iter()
                .map(|m| m.map_or("none", StretchMethod::name).to_string())
                .collect(),
            leafmin_methods: self.leafmin_methods.iter().map(|m| m.name().to_string()).collect(),
            heuristics: self
                .heuristics
                .iter()
                .map(|h| h.map_or("none", HeuristicKind::name).to_string())
                .collect(),
            repetitions: self.repetitions,
            gossip_instances: self.gossip_instances,
            threshold: self.threshold,
            norm: self.norm.name().to_string(),
            seed: self.seed,
            n_min: self.n_min,
            n_max: self.n_max,
            max_attempts: self.max_attempts,
            max_gossip_rounds: self.max_gossip_rounds,
            optimizer_max_steps: self.optimizer_max_steps.unwrap_or(0),
            census_max_work: self.census_max_work,
            output: self.output.display().to_string(),
        }
    }

    fn from_file(f: ConfigFile) -> Result<Self> {
        let optional = |s: &String| s.trim().eq_ignore_ascii_case("none");
        Ok(ExperimentConfig {
            families: f.families.iter().map(|s| s.parse()).collect::<Result<_>>()?,
            girth_min: f.girth_min,
            girth_max: f.girth_max,
            stretch_methods: f
                .stretch_methods
                .iter()
                .map(|s| if optional(s) { Ok(None) } else { s.parse().map(Some) })
                .collect::<Result<_>>()?,
            leafmin_methods: f.leafmin_methods.iter().map(|s| s.parse()).collect::<Result<_>>()?,
            heuristics: f
                .heuristics
                .iter()
                .map(|s| if optional(s) { Ok(None) } else { s.parse().map(Some) })
                .collect::<Result<_>>()?,
            repetitions: f.repetitions,
            gossip_instances: f.gossip_instances,
            threshold: f.threshold,
            norm: f.norm.parse()?,
            seed: f.seed,
            n_min: f.n_min,
            n_max: f.n_max,
            max_attempts: f.max_attempts,
            max_gossip_rounds: f.max_gossip_rounds,
            optimizer_max_steps: (f.optimizer_max_steps > 0).then_some(f.optimizer_max_steps),
            census_max_work: f.census_max_work,
            output: PathBuf::from(f.output),
        })
    }

    /// Every (family, girth, stretch, leafmin, heuristic) combination, in
    /// sweep order. The position is the combination index.
    pub fn combinations(&self) -> Vec<Combination> {
        let mut out = Vec::new();
        for &family in &self.families {
            for girth_target in self.girths() {
                for &stretch in &self.stretch_methods {
                    for &leafmin in &self.leafmin_methods {
                        for &heuristic in &self.heuristics {
                            out.push(Combination {
                                family,
                                girth_target,
                                stretch,
                                leafmin,
                                heuristic,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Stable 64-bit fingerprint of the configuration (FNV-1a over its TOML).
    pub fn fingerprint(&self) -> u64 {
        self.to_toml_string()
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
    }
}

/// The method choices and girth target that together define one
/// experimental arm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Combination {
    pub family: Family,
    pub girth_target: usize,
    pub stretch: Option<StretchMethod>,
    pub leafmin: LeafMinMethod,
    pub heuristic: Option<HeuristicKind>,
}
