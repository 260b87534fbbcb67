//! Threshold-sweep harness: a grid of `(n, p)` cells, several trials per
//! cell, one solver per config, CSV out.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colored::ColoredGraph;
use crate::partitioners::{
    aux_cover, gnp_two_color_partition, hk_partition, mindeg_absorbing_partition, two_color_cover,
    PartitionerError,
};

use super::{coloring_with_rng, find_witness_set, gnp_with_rng, stream_rng, WitnessSearch};

/// Default constant for the dense-regime probability formulas.
pub const DEFAULT_C: f64 = 40.0;

/// How the sweep derives `p` for a given `n`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum PRule {
    /// Every listed `p` is paired with every `n` in the grid.
    Explicit(Vec<f64>),
    /// One `p` per `n`, from a named threshold formula.
    Formula(FormulaTag),
}

/// Named probability formulas (natural logarithms throughout).
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum FormulaTag {
    /// `(27·ln n / n)^{1/3}` — the two-color partition threshold.
    Thm16i,
    /// `(C·ln n / n)^{1/(r+1)}` — the `r²`-cover regime.
    Thm16ii,
    /// `(C·ln n / n)^{1/r}` — the `r`-partition regime.
    Thm16iii,
    /// `((r·ln n − 3·ln ln n)/n)^{1/r}` — just below the cover threshold,
    /// where witness sets appear.
    Lem64i,
    /// `(ln n / n)^{1/r}` — bare threshold shape, scaled entirely by the
    /// multiplier.
    Scaled,
}

/// Which algorithm each trial runs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SolverId {
    /// Nested-neighborhood partition on a random coloring.
    Hk,
    /// Min-degree absorbing partition (forced past its size threshold,
    /// `eps` at half its cap) on a random coloring.
    Mindeg,
    /// Two-tree random-graph partition on a random coloring (`r = 2`).
    Gnp2,
    /// Component-pair cover on a random coloring (`r = 2`).
    Cover2,
    /// Auxiliary-graph greedy cover on a random coloring.
    Aux,
    /// Witness-set search on the uncolored sample (`s = r`).
    Witness,
}

/// Full description of one sweep. Serializable so a run can be re-executed
/// from its config file alone.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepConfig {
    pub r: usize,
    pub n_grid: Vec<usize>,
    pub p_rule: PRule,
    /// Multiplies every derived `p` (then clamped to at most 1).
    #[serde(default = "default_multiplier")]
    pub multiplier: f64,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverId,
}

fn default_multiplier() -> f64 {
    1.0
}

impl SweepConfig {
    /// Validates the config invariants; returns the grid of `(n, p)` cells.
    pub fn cells(&self) -> Result<Vec<(usize, f64)>, String> {
        if self.trials < 1 {
            return Err("trials must be at least 1".into());
        }
        if !(1..=255).contains(&self.r) {
            return Err(format!("r = {} must lie in 1..=255", self.r));
        }
        if self.n_grid.is_empty() {
            return Err("n_grid must list at least one size".into());
        }
        if !self.multiplier.is_finite() || self.multiplier <= 0.0 {
            return Err(format!(
                "multiplier = {} must be positive and finite",
                self.multiplier
            ));
        }
        if matches!(self.solver, SolverId::Gnp2 | SolverId::Cover2) && self.r != 2 {
            return Err(format!(
                "solver {:?} requires r = 2, got {}",
                self.solver, self.r
            ));
        }
        let mut cells = Vec::new();
        match &self.p_rule {
            PRule::Explicit(ps) => {
                if ps.is_empty() {
                    return Err("explicit p list must be nonempty".into());
                }
                for &n in &self.n_grid {
                    for &p in ps {
                        let scaled = p * self.multiplier;
                        if !(scaled > 0.0 && scaled <= 1.0) {
                            return Err(format!(
                                "p = {p} × {} leaves (0, 1]",
                                self.multiplier
                            ));
                        }
                        cells.push((n, scaled));
                    }
                }
            }
            PRule::Formula(tag) => {
                for &n in &self.n_grid {
                    let p = formula_p(*tag, n, self.r) * self.multiplier;
                    if !p.is_finite() || p <= 0.0 {
                        return Err(format!(
                            "formula {tag:?} gives non-positive p at n = {n}"
                        ));
                    }
                    cells.push((n, p.min(1.0)));
                }
            }
        }
        Ok(cells)
    }
}

/// Evaluates a probability formula at `(n, r)`; natural logarithms.
pub fn formula_p(tag: FormulaTag, n: usize, r: usize) -> f64 {
    let nf = (n.max(2)) as f64;
    let ln_n = nf.ln();
    match tag {
        FormulaTag::Thm16i => (27.0 * ln_n / nf).powf(1.0 / 3.0),
        FormulaTag::Thm16ii => (DEFAULT_C * ln_n / nf).powf(1.0 / (r as f64 + 1.0)),
        FormulaTag::Thm16iii => (DEFAULT_C * ln_n / nf).powf(1.0 / r as f64),
        FormulaTag::Lem64i => {
            let omega = 3.0 * ln_n.ln();
            ((r as f64 * ln_n - omega).max(0.0) / nf).powf(1.0 / r as f64)
        }
        FormulaTag::Scaled => (ln_n / nf).powf(1.0 / r as f64),
    }
}

/// One trial's record.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub p: f64,
    pub r: usize,
    /// Stream id of the trial: `(cell index << 32) | trial index`. Together
    /// with the config's base seed this reproduces the row.
    pub seed: u64,
    /// `success`, `fail`, or an error tag.
    pub outcome: String,
    /// Blocks or parts in the certificate (0 when not applicable).
    pub parts: usize,
    /// Solver-specific witness data (exit tag, witness vertices, …).
    pub witness: String,
    pub millis: u128,
}

/// All rows of one sweep, in deterministic `(cell, trial)` order.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
}

impl ExperimentReport {
    /// CSV with the fixed column set `n,p,r,seed,outcome,parts,witness,millis`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p,r,seed,outcome,parts,witness,millis\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.6},{},{},{},{},{},{}\n",
                row.n, row.p, row.r, row.seed, row.outcome, row.parts, row.witness, row.millis
            ));
        }
        out
    }
}

/// Short stable tag for an error outcome.
fn error_tag(e: &PartitionerError) -> &'static str {
    match e {
        PartitionerError::RetriesExhausted { .. } => "retries_exhausted",
        PartitionerError::HypothesisViolated { .. } => "hypothesis_violated",
        PartitionerError::YExhausted { .. } => "y_exhausted",
        PartitionerError::WrongColorCount { .. } => "wrong_color_count",
        PartitionerError::StructureBroken { .. } => "structure_broken",
        PartitionerError::LeafPartitionFailed(_) => "leaf_partition_failed",
        PartitionerError::StepFailed { .. } => "step_failed",
        PartitionerError::NotFound { critical: true } => "not_found_critical",
        PartitionerError::NotFound { critical: false } => "not_found",
        PartitionerError::NoCrossingEdges => "no_crossing_edges",
        PartitionerError::IsolatedInH { .. } => "isolated_vertex",
        PartitionerError::InvalidParameter { .. } => "invalid_parameter",
        PartitionerError::BelowSizeThreshold { .. } => "below_size_threshold",
    }
}

/// Runs the whole grid: for each `(n, p)` cell and trial, sample `G(n,p)`,
/// color it (solver-dependent), run the solver, and record one row. Rows are
/// deterministic functions of `(config, base seed)` regardless of thread
/// count — every trial owns an RNG stream keyed by its cell and trial
/// indices — and per-row failures become outcome tags, never aborts.
pub fn threshold_sweep(cfg: &SweepConfig) -> Result<ExperimentReport, String> {
    let cells = cfg.cells()?;
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|ci| (0..cfg.trials).map(move |ti| (ci, ti)))
        .collect();
    let mut rows: Vec<((usize, usize), SweepRow)> = jobs
        .into_par_iter()
        .map(|(ci, ti)| {
            let (n, p) = cells[ci];
            let row = run_trial(cfg, n, p, ci, ti);
            ((ci, ti), row)
        })
        .collect();
    rows.sort_by_key(|&(key, _)| key);
    Ok(ExperimentReport {
        config: cfg.clone(),
        rows: rows.into_iter().map(|(_, row)| row).collect(),
    })
}

fn run_trial(cfg: &SweepConfig, n: usize, p: f64, ci: usize, ti: usize) -> SweepRow {
    let mut rng = stream_rng(cfg.seed, ci as u64, ti as u64);
    let start = Instant::now();
    let g = gnp_with_rng(n, p, &mut rng);
    let (outcome, parts, witness) = match cfg.solver {
        SolverId::Hk => {
            let cg = coloring_with_rng(&g, cfg.r, &mut rng);
            match hk_partition(&cg) {
                Ok(out) => (
                    "success".to_string(),
                    out.certificate.blocks.len(),
                    format!("{:?}", out.exit),
                ),
                Err(e) => (error_tag(&e).to_string(), 0, String::new()),
            }
        }
        SolverId::Mindeg => {
            let cg = coloring_with_rng(&g, cfg.r, &mut rng);
            let rf: f64 = (1..=cfg.r).map(|i| i as f64).product();
            let eps = 0.5 / (std::f64::consts::E * rf);
            match mindeg_absorbing_partition(&cg, eps, true) {
                Ok(atp) => (
                    "success".to_string(),
                    atp.k(),
                    format!("leaves={}", atp.l()),
                ),
                Err(e) => (error_tag(&e).to_string(), 0, String::new()),
            }
        }
        SolverId::Gnp2 => {
            let cg = coloring_with_rng(&g, cfg.r, &mut rng);
            match gnp_two_color_partition(&cg) {
                Ok(cert) => ("success".to_string(), cert.blocks.len(), String::new()),
                Err(e) => (error_tag(&e).to_string(), 0, String::new()),
            }
        }
        SolverId::Cover2 => {
            let cg = coloring_with_rng(&g, cfg.r, &mut rng);
            match two_color_cover(&cg) {
                Ok(cert) => ("success".to_string(), cert.parts.len(), String::new()),
                Err(e) => (error_tag(&e).to_string(), 0, String::new()),
            }
        }
        SolverId::Aux => {
            let cg = coloring_with_rng(&g, cfg.r, &mut rng);
            match aux_cover(&cg) {
                Ok(cert) => ("success".to_string(), cert.parts.len(), String::new()),
                Err(e) => (error_tag(&e).to_string(), 0, String::new()),
            }
        }
        SolverId::Witness => {
            let sub_seed: u64 = rng.gen();
            match find_witness_set(&g, cfg.r, cfg.r, 64, sub_seed) {
                WitnessSearch::Found(set) => {
                    let ids = set
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    ("success".to_string(), 0, ids)
                }
                WitnessSearch::NoneExists => ("none_exists".to_string(), 0, String::new()),
                WitnessSearch::Inconclusive => ("inconclusive".to_string(), 0, String::new()),
            }
        }
    };
    SweepRow {
        n,
        p,
        r: cfg.r,
        seed: ((ci as u64) << 32) | (ti as u64 & 0xFFFF_FFFF),
        outcome,
        parts,
        witness,
        millis: start.elapsed().as_millis(),
    }
}

/// Rebuilds the exact instance behind one sweep row by replaying the same
/// per-cell random stream. The colored-solver rows reproduce both the graph
/// and the coloring the solver saw; witness rows (which never color) get the
/// bare graph wrapped as a one-color instance.
pub fn rebuild_instance(cfg: &SweepConfig, row: &SweepRow) -> ColoredGraph {
    let mut rng = stream_rng(cfg.seed, row.seed >> 32, row.seed & 0xFFFF_FFFF);
    let g = gnp_with_rng(row.n, row.p, &mut rng);
    match cfg.solver {
        SolverId::Witness => {
            let ones = vec![1u8; g.m()];
            ColoredGraph::attach_colors(g, 1, &ones)
        }
        _ => coloring_with_rng(&g, cfg.r, &mut rng),
    }
}
