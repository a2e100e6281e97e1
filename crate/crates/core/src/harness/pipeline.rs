//! The five-stage trial: generate, stretch, minimise leaves, optimise,
//! average. Any stage can be switched off; failures are written into the
//! record instead of aborting.

use std::time::Instant;

use crate::generators::{generate_connected, sample_params, FamilyParams};
use crate::gossip::{convergence_time, GossipConfig};
use crate::graph::{count_cycles_of_length_bounded, girth, Girth, Graph};
use crate::leafmin::{minimise_leaves, LeafMinMethod};
use crate::metrics::{evaluate, HeuristicKind};
use crate::optimizer::optimise;
use crate::seed::{seed_for, Stage};
use crate::stretch::stretch;

use super::config::{Combination, ExperimentConfig};
use super::record::{TrialRecord, CENSUS_LENGTHS, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineSettings {
    pub n_min: usize,
    pub n_max: usize,
    pub max_attempts: usize,
    pub gossip: GossipConfig,
    pub gossip_instances: usize,
    pub optimizer_max_steps: Option<usize>,
    pub census_max_work: u64,
}

impl From<&ExperimentConfig> for PipelineSettings {
    fn from(cfg: &ExperimentConfig) -> Self {
        PipelineSettings {
            n_min: cfg.n_min,
            n_max: cfg.n_max,
            max_attempts: cfg.max_attempts,
            gossip: cfg.gossip(),
            gossip_instances: cfg.gossip_instances,
            optimizer_max_steps: cfg.optimizer_max_steps,
            census_max_work: cfg.census_max_work,
        }
    }
}

impl Default for PipelineSettings {
    fn default() -> Self {
        PipelineSettings::from(&ExperimentConfig::default())
    }
}

/// Identifies a trial within a sweep and fixes its seed streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialKey {
    pub master_seed: u64,
    pub combination: u64,
    pub repetition: u64,
}

impl TrialKey {
    fn seed(&self, stage: Stage) -> crate::seed::Seed {
        seed_for(self.master_seed, self.combination, self.repetition, stage)
    }
}

const GENERATE_FIELDS: &[&str] = &["gen_attempts", "edges_initial", "girth_initial", "leaves_initial"];
const STRETCH_FIELDS: &[&str] = &[
    "girth_floor",
    "edges_after_stretch",
    "edges_removed",
    "fraction_removed",
    "girth_after_stretch",
    "stretch_acyclic",
    "leaves_after_stretch",
    "stretch_rebuilds",
    "eigenratio_after_stretch",
    "algebraic_connectivity_after_stretch",
    "closeness_after_stretch",
    "efficiency_after_stretch",
    "census_len_3",
    "census_len_4",
    "census_len_5",
    "census_len_6",
    "census_len_7",
    "census_len_8",
    "census_len_9",
    "census_len_10",
];
const LEAFMIN_FIELDS: &[&str] = &["edges_added_leafmin", "leaves_after_leafmin"];
const OPT_FIELDS: &[&str] = &[
    "opt_edges_changed",
    "opt_additions",
    "opt_removals",
    "opt_truncated",
    "opt_evaluations",
    "heuristic_before",
    "heuristic_after",
];
const FINAL_FIELDS: &[&str] = &["edges_final", "girth_final", "leaves_final", "convergence_time"];

fn ms_since(t: Instant) -> Option<f64> {
    Some((t.elapsed().as_secs_f64() * 1e6).round() / 1e3)
}

fn nulls(record: &mut TrialRecord, fields: &[&str], reason: &str) {
    for f in fields {
        record.add_null_reason(f, reason);
    }
}

/// Samples the family parameters for `key`, then runs the pipeline.
pub fn run_trial(combination: &Combination, key: TrialKey, settings: &PipelineSettings) -> TrialRecord {
    match sample_params(
        combination.family,
        settings.n_min,
        settings.n_max,
        key.seed(Stage::Params),
    ) {
        Ok(params) => run_pipeline(&params, combination, key, settings),
        Err(e) => {
            let mut record = base_record(combination, key);
            record.add_null_reason("params", e.reason_code());
            record
        }
    }
}

fn base_record(c: &Combination, key: TrialKey) -> TrialRecord {
    TrialRecord {
        schema_version: SCHEMA_VERSION,
        trial_id: format!("c{}-r{}", key.combination, key.repetition),
        combination: key.combination,
        repetition: key.repetition,
        master_seed: key.master_seed,
        family: c.family.name().to_string(),
        girth_target: c.girth_target,
        stretch_method: c.stretch.map_or("none", |m| m.name()).to_string(),
        leafmin_method: c.leafmin.name().to_string(),
        heuristic: c.heuristic.map_or("none", |h| h.name()).to_string(),
        ..TrialRecord::default()
    }
}

/// Runs every enabled stage on one graph drawn from `params`.
pub fn run_pipeline(
    params: &FamilyParams,
    combination: &Combination,
    key: TrialKey,
    settings: &PipelineSettings,
) -> TrialRecord {
    let mut r = base_record(combination, key);
    r.n = Some(params.n());
    match *params {
        FamilyParams::Er { p, .. } => {
            r.param_p = Some(p);
            nulls(&mut r, &["param_k", "param_m", "param_r"], "not_applicable");
        }
        FamilyParams::Ws { k, p, .. } => {
            r.param_k = Some(k);
            r.param_p = Some(p);
            nulls(&mut r, &["param_m", "param_r"], "not_applicable");
        }
        FamilyParams::Ba { m, .. } => {
            r.param_m = Some(m);
            nulls(&mut r, &["param_p", "param_k", "param_r"], "not_applicable");
        }
        FamilyParams::Geo { r: radius, .. } => {
            r.param_r = Some(radius);
            nulls(&mut r, &["param_p", "param_k", "param_m"], "not_applicable");
        }
    }
    let all_stages = [STRETCH_FIELDS, LEAFMIN_FIELDS, OPT_FIELDS, FINAL_FIELDS];
    let later_timings = ["ms_stretch", "ms_leafmin", "ms_optimize", "ms_distances", "ms_gossip"];

    // Generate.
    let t = Instant::now();
    let generated = generate_connected(params, key.seed(Stage::Generate), settings.max_attempts);
    r.ms_generate = ms_since(t);
    let mut graph = match generated {
        Ok(gen) => {
            r.gen_attempts = Some(gen.attempts);
            gen.graph
        }
        Err(e) => {
            let reason = format!("generate_{}", e.reason_code());
            nulls(&mut r, GENERATE_FIELDS, &reason);
            for fields in all_stages {
                nulls(&mut r, fields, &reason);
            }
            nulls(&mut r, &later_timings, &reason);
            return r;
        }
    };
    let edges_initial = graph.edge_count();
    let initial_girth = girth(&graph);
    r.edges_initial = Some(edges_initial);
    r.girth_initial = Some(initial_girth.to_string());
    r.leaves_initial = Some(graph.leaf_count());

    // Stretch.
    let t = Instant::now();
    match combination.stretch {
        Some(method) => match stretch(&graph, combination.girth_target, method, key.seed(Stage::Stretch)) {
            Ok(report) => {
                r.stretch_rebuilds = Some(report.rebuild_lengths.len());
                graph = report.graph;
            }
            Err(e) => {
                let reason = format!("stretch_{}", e.reason_code());
                r.ms_stretch = ms_since(t);
                for fields in all_stages {
                    nulls(&mut r, fields, &reason);
                }
                nulls(&mut r, &later_timings[1..], &reason);
                return r;
            }
        },
        None => {
            r.stretch_rebuilds = Some(0);
        }
    }
    r.ms_stretch = ms_since(t);
    let stretched_girth = girth(&graph);
    let floor = if stretched_girth.at_least(combination.girth_target) {
        combination.girth_target
    } else {
        stretched_girth.value().expect("finite girth below target")
    };
    r.girth_floor = Some(floor);
    r.edges_after_stretch = Some(graph.edge_count());
    r.edges_removed = Some(edges_initial - graph.edge_count());
    r.fraction_removed = Some(if edges_initial == 0 {
        0.0
    } else {
        (edges_initial - graph.edge_count()) as f64 / edges_initial as f64
    });
    r.girth_after_stretch = Some(stretched_girth.to_string());
    r.stretch_acyclic = Some(stretched_girth == Girth::Acyclic);
    r.leaves_after_stretch = Some(graph.leaf_count());
    record_heuristics(&mut r, &graph);
    record_census(&mut r, &graph, settings.census_max_work);

    // Leaf minimisation.
    let t = Instant::now();
    match minimise_leaves(&graph, floor, combination.leafmin, key.seed(Stage::LeafMin)) {
        Ok(report) => {
            r.edges_added_leafmin = Some(report.additions.len());
            r.leaves_after_leafmin = Some(report.leaves_after);
            graph = report.graph;
            r.ms_leafmin = if combination.leafmin == LeafMinMethod::None {
                r.add_null_reason("ms_leafmin", "disabled");
                None
            } else {
                ms_since(t)
            };
        }
        Err(e) => {
            let reason = format!("leafmin_{}", e.reason_code());
            r.ms_leafmin = ms_since(t);
            for fields in [LEAFMIN_FIELDS, OPT_FIELDS, FINAL_FIELDS] {
                nulls(&mut r, fields, &reason);
            }
            nulls(&mut r, &later_timings[2..], &reason);
            return r;
        }
    }

    // Optimisation.
    match combination.heuristic {
        Some(kind) => {
            let t = Instant::now();
            match optimise(&graph, floor, kind, key.seed(Stage::Optimize), settings.optimizer_max_steps) {
                Ok(report) => {
                    r.ms_optimize = ms_since(t);
                    r.ms_distances = Some((report.distance_time.as_secs_f64() * 1e6).round() / 1e3);
                    r.opt_edges_changed = Some(report.moves.len());
                    r.opt_additions = Some(report.additions());
                    r.opt_removals = Some(report.removals());
                    r.opt_truncated = Some(report.truncated);
                    r.opt_evaluations = Some(report.evaluations);
                    r.heuristic_before = Some(report.initial_score);
                    r.heuristic_after = Some(report.final_score);
                    graph = report.graph;
                }
                Err(e) => {
                    let reason = format!("optimize_{}", e.reason_code());
                    r.ms_optimize = ms_since(t);
                    for fields in [OPT_FIELDS, FINAL_FIELDS] {
                        nulls(&mut r, fields, &reason);
                    }
                    nulls(&mut r, &["ms_distances", "ms_gossip"], &reason);
                    return r;
                }
            }
        }
        None => {
            nulls(&mut r, OPT_FIELDS, "disabled");
            nulls(&mut r, &["ms_optimize", "ms_distances"], "disabled");
        }
    }

    // Averaging.
    r.edges_final = Some(graph.edge_count());
    r.girth_final = Some(girth(&graph).to_string());
    r.leaves_final = Some(graph.leaf_count());
    let t = Instant::now();
    match convergence_time(&graph, settings.gossip_instances, &settings.gossip, key.seed(Stage::Gossip)) {
        Ok(rounds) => r.convergence_time = Some(rounds),
        Err(e) => r.add_null_reason("convergence_time", &format!("gossip_{}", e.reason_code())),
    }
    r.ms_gossip = ms_since(t);
    r
}

fn record_heuristics(r: &mut TrialRecord, g: &Graph) {
    let pairs: [(HeuristicKind, &str); 4] = [
        (HeuristicKind::Eigenratio, "eigenratio_after_stretch"),
        (HeuristicKind::AlgebraicConnectivity, "algebraic_connectivity_after_stretch"),
        (HeuristicKind::ClosenessCentrality, "closeness_after_stretch"),
        (HeuristicKind::GlobalEfficiency, "efficiency_after_stretch"),
    ];
    for (kind, field) in pairs {
        let value = match evaluate(g, kind) {
            Ok(v) => Some(v),
            Err(e) => {
                r.add_null_reason(field, e.reason_code());
                None
            }
        };
        match kind {
            HeuristicKind::Eigenratio => r.eigenratio_after_stretch = value,
            HeuristicKind::AlgebraicConnectivity => r.algebraic_connectivity_after_stretch = value,
            HeuristicKind::ClosenessCentrality => r.closeness_after_stretch = value,
            HeuristicKind::GlobalEfficiency => r.efficiency_after_stretch = value,
        }
    }
}

fn record_census(r: &mut TrialRecord, g: &Graph, max_work: u64) {
    for len in CENSUS_LENGTHS {
        let count = if max_work == 0 {
            Err("disabled")
        } else {
            count_cycles_of_length_bounded(g, len, max_work).ok_or("budget")
        };
        match count {
            Ok(c) => *r.census_slot(len).expect("census length") = Some(c),
            Err(reason) => r.add_null_reason(&format!("census_len_{len}"), reason),
        }
    }
}
