use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::{find_missing_rules, find_overlapping_rules};
use crate::error::{Error, Result};
use crate::model::DecisionTable;

use super::{derive_seed, generate_table, inject_noise, pairwise_overlap_fragments, GenSpec, NoiseMode};

fn default_fraction() -> f64 {
    0.1
}

fn default_runs() -> usize {
    5
}

/// A benchmark definition, as read from a suite document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchSuite {
    #[serde(default = "default_fraction")]
    pub noise_fraction: f64,
    #[serde(default = "default_runs")]
    pub runs: usize,
    pub specs: Vec<GenSpec>,
}

impl BenchSuite {
    /// Reads a JSON or TOML suite.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
        } else {
            toml::from_str(text).map_err(|e| Error::Schema(e.to_string()))
        }
    }

    pub fn standard(seed: u64) -> Self {
        BenchSuite {
            noise_fraction: default_fraction(),
            runs: default_runs(),
            specs: standard_grid(seed),
        }
    }
}

/// The 3 x 3 grid of 3, 5 and 7 columns by about 500, 1000 and 1500 rules.
pub fn standard_grid(seed: u64) -> Vec<GenSpec> {
    let mut specs = Vec::new();
    for columns in [3, 5, 7] {
        for rules in [500, 1000, 1500] {
            specs.push(GenSpec::standard(columns, rules, seed));
        }
    }
    specs
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchCell {
    pub columns: usize,
    pub rules: usize,
    pub overlap_ms: f64,
    pub missing_ms: f64,
    pub overlap_groups: usize,
    pub missing_regions: usize,
    pub pairwise_fragments: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BenchReport {
    pub cells: Vec<BenchCell>,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// An aligned plain-text table.
    pub fn to_text(&self) -> String {
        let header = [
            "columns",
            "rules",
            "overlap ms",
            "missing ms",
            "groups",
            "missing",
            "pairwise",
        ];
        let rows: Vec<[String; 7]> = self
            .cells
            .iter()
            .map(|c| {
                [
                    c.columns.to_string(),
                    c.rules.to_string(),
                    format!("{:.1}", c.overlap_ms),
                    format!("{:.1}", c.missing_ms),
                    c.overlap_groups.to_string(),
                    c.missing_regions.to_string(),
                    c.pairwise_fragments.to_string(),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|k| rows.iter().map(|r| r[k].len()).chain([header[k].len()]).max().unwrap())
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, cells: &[&str]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  "));
        };
        line(&mut out, &header);
        for r in &rows {
            let cells: Vec<&str> = r.iter().map(String::as_str).collect();
            line(&mut out, &cells);
        }
        out
    }
}

fn mean_ms<T>(runs: usize, mut f: impl FnMut() -> T) -> (f64, T) {
    let mut total = 0.0;
    let mut last = None;
    for _ in 0..runs.max(1) {
        let start = Instant::now();
        last = Some(f());
        total += start.elapsed().as_secs_f64() * 1e3;
    }
    (total / runs.max(1) as f64, last.expect("at least one run"))
}

/// The tables of one benchmark cell: the generated partition and two noisy copies.
#[derive(Debug, Clone)]
pub struct BenchTables {
    pub base: DecisionTable,
    pub with_overlaps: DecisionTable,
    pub with_gaps: DecisionTable,
}

/// Builds the tables for `spec`; each noise mode draws from its own seed stream.
pub fn bench_tables(spec: &GenSpec, noise_fraction: f64) -> Result<BenchTables> {
    let base = generate_table(spec)?;
    let with_overlaps = inject_noise(&base, NoiseMode::Overlap, noise_fraction, derive_seed(spec.seed, 1))?;
    let with_gaps = inject_noise(&base, NoiseMode::Missing, noise_fraction, derive_seed(spec.seed, 2))?;
    Ok(BenchTables {
        base,
        with_overlaps,
        with_gaps,
    })
}

/// Generates each table, adds both kinds of noise to separate copies, and times both analyses.
pub fn run_benchmark(specs: &[GenSpec], noise_fraction: f64, runs: usize) -> Result<BenchReport> {
    let mut cells = Vec::with_capacity(specs.len());
    for spec in specs {
        let BenchTables {
            base,
            with_overlaps,
            with_gaps,
        } = bench_tables(spec, noise_fraction)?;
        let (overlap_ms, groups) = mean_ms(runs, || find_overlapping_rules(&with_overlaps));
        let (missing_ms, regions) = mean_ms(runs, || find_missing_rules(&with_gaps));
        cells.push(BenchCell {
            columns: base.inputs().len(),
            rules: base.rules().len(),
            overlap_ms,
            missing_ms,
            overlap_groups: groups.len(),
            missing_regions: regions.len(),
            pairwise_fragments: pairwise_overlap_fragments(&with_overlaps),
            seed: spec.seed,
        });
    }
    Ok(BenchReport { cells })
}
