//! One CSV row per trial.
//!
//! Columns follow the field order of [`TrialRecord`] and are versioned by
//! [`SCHEMA_VERSION`]. Empty cells are nulls; each is listed with a reason
//! code in `null_reasons` as `field:reason` pairs joined by `;`.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Lengths covered by the cycle census columns.
pub const CENSUS_LENGTHS: std::ops::RangeInclusive<usize> = 3..=10;

/// Columns that hold wall-clock timings and are excluded from determinism
/// comparisons.
pub const WALL_CLOCK_COLUMNS: [&str; 6] = [
    "ms_generate",
    "ms_stretch",
    "ms_leafmin",
    "ms_optimize",
    "ms_distances",
    "ms_gossip",
];

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub schema_version: u32,
    pub trial_id: String,
    pub combination: u64,
    pub repetition: u64,
    pub master_seed: u64,
    pub family: String,
    pub n: Option<usize>,
    pub param_p: Option<f64>,
    pub param_k: Option<usize>,
    pub param_m: Option<usize>,
    pub param_r: Option<f64>,
    pub gen_attempts: Option<usize>,
    pub girth_target: usize,
    /// Floor used by leaf minimisation and the optimiser: the target, or the
    /// current girth when stretching was skipped and fell short of it.
    pub girth_floor: Option<usize>,
    pub stretch_method: String,
    pub leafmin_method: String,
    pub heuristic: String,

    pub edges_initial: Option<usize>,
    pub girth_initial: Option<String>,
    pub leaves_initial: Option<usize>,

    pub edges_after_stretch: Option<usize>,
    pub edges_removed: Option<usize>,
    pub fraction_removed: Option<f64>,
    pub girth_after_stretch: Option<String>,
    pub stretch_acyclic: Option<bool>,
    pub leaves_after_stretch: Option<usize>,
    pub stretch_rebuilds: Option<usize>,
    pub eigenratio_after_stretch: Option<f64>,
    pub algebraic_connectivity_after_stretch: Option<f64>,
    pub closeness_after_stretch: Option<f64>,
    pub efficiency_after_stretch: Option<f64>,

    pub edges_added_leafmin: Option<usize>,
    pub leaves_after_leafmin: Option<usize>,

    pub opt_edges_changed: Option<usize>,
    pub opt_additions: Option<usize>,
    pub opt_removals: Option<usize>,
    pub opt_truncated: Option<bool>,
    pub opt_evaluations: Option<usize>,
    pub heuristic_before: Option<f64>,
    pub heuristic_after: Option<f64>,

    pub edges_final: Option<usize>,
    pub girth_final: Option<String>,
    pub leaves_final: Option<usize>,
    pub convergence_time: Option<f64>,

    pub census_len_3: Option<u64>,
    pub census_len_4: Option<u64>,
    pub census_len_5: Option<u64>,
    pub census_len_6: Option<u64>,
    pub census_len_7: Option<u64>,
    pub census_len_8: Option<u64>,
    pub census_len_9: Option<u64>,
    pub census_len_10: Option<u64>,

    pub null_reasons: String,

    pub ms_generate: Option<f64>,
    pub ms_stretch: Option<f64>,
    pub ms_leafmin: Option<f64>,
    pub ms_optimize: Option<f64>,
    pub ms_distances: Option<f64>,
    pub ms_gossip: Option<f64>,
}

impl TrialRecord {
    pub fn census_slot(&mut self, len: usize) -> Option<&mut Option<u64>> {
        Some(match len {
            3 => &mut self.census_len_3,
            4 => &mut self.census_len_4,
            5 => &mut self.census_len_5,
            6 => &mut self.census_len_6,
            7 => &mut self.census_len_7,
            8 => &mut self.census_len_8,
            9 => &mut self.census_len_9,
            10 => &mut self.census_len_10,
            _ => return None,
        })
    }

    pub fn add_null_reason(&mut self, field: &str, reason: &str) {
        if !self.null_reasons.is_empty() {
            self.null_reasons.push(';');
        }
        self.null_reasons.push_str(field);
        self.null_reasons.push(':');
        self.null_reasons.push_str(reason);
    }

    /// Sort key for order-independent comparison of sweep outputs.
    pub fn key(&self) -> (u64, u64) {
        (self.combination, self.repetition)
    }
}

/// Header row, in column order.
pub fn header() -> Vec<String> {
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new());
    w.serialize(TrialRecord::default()).expect("default record serialises");
    let bytes = w.into_inner().expect("in-memory writer");
    let text = String::from_utf8(bytes).expect("utf-8");
    text.lines()
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect()
}

/// Columns each figure family reads.
pub const FIGURE_COLUMNS: [(&str, &[&str]); 10] = [
    ("stretch-edges", &["family", "stretch_method", "girth_target", "fraction_removed"]),
    ("stretch-leaves", &["family", "stretch_method", "girth_target", "leaves_after_stretch"]),
    (
        "stretch-heuristics",
        &[
            "family",
            "stretch_method",
            "girth_target",
            "eigenratio_after_stretch",
            "algebraic_connectivity_after_stretch",
            "closeness_after_stretch",
            "efficiency_after_stretch",
        ],
    ),
    (
        "stretch-convergence",
        &["family", "stretch_method", "leafmin_method", "heuristic", "girth_target", "convergence_time"],
    ),
    ("leafmin-remaining", &["stretch_method", "leafmin_method", "girth_target", "leaves_after_leafmin"]),
    ("leafmin-added", &["stretch_method", "leafmin_method", "girth_target", "edges_added_leafmin"]),
    (
        "leafmin-convergence",
        &["stretch_method", "leafmin_method", "heuristic", "girth_target", "convergence_time"],
    ),
    (
        "opt-edges-changed",
        &["family", "stretch_method", "heuristic", "girth_target", "opt_edges_changed", "opt_additions", "opt_removals"],
    ),
    (
        "opt-convergence",
        &["family", "stretch_method", "leafmin_method", "heuristic", "girth_target", "convergence_time"],
    ),
    (
        "census",
        &[
            "family",
            "stretch_method",
            "girth_target",
            "census_len_3",
            "census_len_4",
            "census_len_5",
            "census_len_6",
            "census_len_7",
            "census_len_8",
            "census_len_9",
            "census_len_10",
        ],
    ),
];
