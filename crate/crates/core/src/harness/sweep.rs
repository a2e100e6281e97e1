//! Sweeps: every combination × repetition, written as one CSV row per trial.
//!
//! Rows are produced in parallel but written in a fixed order and flushed
//! one at a time, so an interrupted sweep leaves a valid prefix that
//! `resume` can pick up.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::config::{Combination, ExperimentConfig};
use super::pipeline::{run_trial, PipelineSettings, TrialKey};
use super::record::{header, TrialRecord, WALL_CLOCK_COLUMNS};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Keep rows already in the output and run only the missing trials.
    pub resume: bool,
    /// Stop after writing this many rows (the sweep stays resumable).
    pub stop_after: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: usize,
    pub skipped: usize,
    pub written: usize,
    pub complete: bool,
}

/// Every trial of the sweep in output order: combination-major, then
/// repetition.
pub fn trials(cfg: &ExperimentConfig) -> Vec<(Combination, TrialKey)> {
    let mut out = Vec::new();
    for (ci, c) in cfg.combinations().into_iter().enumerate() {
        for rep in 0..cfg.repetitions {
            out.push((
                c,
                TrialKey {
                    master_seed: cfg.seed,
                    combination: ci as u64,
                    repetition: rep as u64,
                },
            ));
        }
    }
    out
}

/// Path of the marker that records an unfinished sweep.
pub fn marker_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".resume");
    PathBuf::from(name)
}

pub fn run_sweep(cfg: &ExperimentConfig, opts: SweepOptions) -> Result<SweepSummary> {
    cfg.validate()?;
    let out = cfg.output.as_path();
    let marker = marker_path(out);
    let fingerprint = format!("{:016x}\n", cfg.fingerprint());

    let done = if opts.resume && out.exists() {
        if marker.exists() {
            let stored = fs::read_to_string(&marker)?;
            if stored != fingerprint {
                return Err(Error::Config(format!(
                    "{} was produced by a different configuration",
                    out.display()
                )));
            }
        }
        existing_keys(out)?
    } else {
        if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        let mut f = File::create(out)?;
        writeln!(f, "{}", header().join(","))?;
        HashSet::new()
    };
    fs::write(&marker, &fingerprint)?;

    let all = trials(cfg);
    let total = all.len();
    let pending: Vec<_> = all
        .into_iter()
        .filter(|(_, k)| !done.contains(&(k.combination, k.repetition)))
        .collect();
    let skipped = total - pending.len();
    let limit = opts.stop_after.unwrap_or(usize::MAX).min(pending.len());

    let settings = PipelineSettings::from(cfg);
    let file = OpenOptions::new().append(true).open(out)?;
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(BufWriter::new(file));
    let chunk = (rayon::current_num_threads() * 2).max(1);
    let mut written = 0;
    for batch in pending[..limit].chunks(chunk) {
        let rows: Vec<TrialRecord> = batch
            .par_iter()
            .map(|(c, k)| run_trial(c, *k, &settings))
            .collect();
        for row in rows {
            writer.serialize(&row)?;
            writer.flush()?;
            written += 1;
        }
    }
    drop(writer);

    let complete = skipped + written == total;
    if complete {
        fs::remove_file(&marker)?;
    }
    Ok(SweepSummary {
        total,
        skipped,
        written,
        complete,
    })
}

/// Keys of complete rows in `out`; a trailing partial line is cut off.
fn existing_keys(out: &Path) -> Result<HashSet<(u64, u64)>> {
    let mut text = String::new();
    File::open(out)?.read_to_string(&mut text)?;
    if !text.is_empty() && !text.ends_with('\n') {
        let cut = text.rfind('\n').map_or(0, |i| i + 1);
        text.truncate(cut);
        OpenOptions::new().write(true).open(out)?.set_len(cut as u64)?;
    }
    if text.is_empty() {
        let mut f = OpenOptions::new().write(true).truncate(true).open(out)?;
        writeln!(f, "{}", header().join(","))?;
        return Ok(HashSet::new());
    }
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let found: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if found != header() {
        return Err(Error::Config(format!("{} has a different column layout", out.display())));
    }
    let mut keys = HashSet::new();
    for row in rdr.deserialize::<TrialRecord>() {
        keys.insert(row?.key());
    }
    Ok(keys)
}

/// The CSV with wall-clock columns removed, for comparing runs.
pub fn canonical_csv(path: &Path) -> Result<String> {
    let mut rdr = csv::Reader::from_path(path)?;
    let headers = rdr.headers()?.clone();
    let keep: Vec<usize> = headers
        .iter()
        .enumerate()
        .filter(|(_, h)| !WALL_CLOCK_COLUMNS.contains(h))
        .map(|(i, _)| i)
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(keep.iter().map(|&i| &headers[i]))?;
    for row in rdr.records() {
        let row = row?;
        w.write_record(keep.iter().map(|&i| &row[i]))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
