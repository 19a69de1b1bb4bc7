//! Seeded multi-replication experiments and named presets.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{randomize_edges, GeneratorKind, GeneratorSpec};
use crate::graph::Graph;
use crate::io::{
    format_real, read_edge_list, write_trajectory, ReadOptions, TrajectoryFormat, TrajectoryRecord,
};
use crate::rewiring::{run_rewiring, Algorithm, Policy, PolicyMode, RewireConfig, StopReason};

/// Where each replication's starting graph comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Source {
    /// Replication `r` generates with seed `spec.seed + r`, then optionally
    /// randomizes that many edges with the same seed.
    Generated {
        spec: GeneratorSpec,
        randomize: Option<usize>,
    },
    /// Every replication starts from the same file.
    InputFile {
        path: PathBuf,
        largest_component: bool,
    },
}

impl Source {
    pub fn graph_for(&self, replication: usize) -> Result<Graph> {
        match self {
            Source::Generated { spec, randomize } => {
                let seed = spec.seed.wrapping_add(replication as u64);
                let g = GeneratorSpec::new(spec.kind, seed).generate()?;
                match randomize {
                    Some(count) => randomize_edges(&g, *count, seed),
                    None => Ok(g),
                }
            }
            Source::InputFile {
                path,
                largest_component,
            } => {
                let file = File::open(path)?;
                let options = ReadOptions {
                    largest_component: *largest_component,
                };
                Ok(read_edge_list(BufReader::new(file), options)?.graph)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub source: Source,
    /// Replication `r` runs with policy seed `rewire.policy.seed + r`.
    pub rewire: RewireConfig,
    pub replications: usize,
    /// Output directory; `None` keeps results in memory only.
    pub output: Option<PathBuf>,
    pub jobs: usize,
}

impl ExperimentConfig {
    pub fn new(source: Source, rewire: RewireConfig, replications: usize) -> Self {
        ExperimentConfig {
            source,
            rewire,
            replications,
            output: None,
            jobs: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::invalid("replications must be at least 1"));
        }
        if self.jobs == 0 {
            return Err(Error::invalid("jobs must be at least 1"));
        }
        self.rewire.validate()
    }

    fn config_for(&self, replication: usize) -> RewireConfig {
        let mut cfg = self.rewire;
        cfg.policy.seed = cfg.policy.seed.wrapping_add(replication as u64);
        cfg
    }
}

#[derive(Debug, Clone)]
pub struct ReplicationRun {
    pub replication: usize,
    pub trajectory: Vec<TrajectoryRecord>,
    pub moves: usize,
    pub stop: StopReason,
    pub degrees_before: Vec<usize>,
    pub degrees_after: Vec<usize>,
}

impl ReplicationRun {
    pub fn initial(&self) -> &TrajectoryRecord {
        &self.trajectory[0]
    }

    pub fn last(&self) -> &TrajectoryRecord {
        self.trajectory
            .last()
            .expect("trajectory has a step-0 record")
    }

    pub fn degrees_preserved(&self) -> bool {
        self.degrees_before == self.degrees_after
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplicationFailure {
    pub replication: usize,
    pub error: String,
}

/// Per-step mean and population standard deviation across replications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Option<MeanStd> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        Some(MeanStd {
            mean,
            std: var.sqrt(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub step: u64,
    /// Replications that had not yet stopped before this step.
    pub active: usize,
    pub global_clustering: MeanStd,
    pub avg_local_clustering: MeanStd,
    /// Present only where every replication has a path-length snapshot.
    pub avg_path_length: Option<MeanStd>,
    pub small_world_index: Option<MeanStd>,
    pub edges_rewired_fraction: MeanStd,
    pub components: MeanStd,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub runs: Vec<ReplicationRun>,
    pub failures: Vec<ReplicationFailure>,
    pub summary: Vec<SummaryRow>,
    /// Move count of the shortest and longest run.
    pub first_stop: Option<usize>,
    pub last_stop: Option<usize>,
}

impl ExperimentReport {
    pub fn mean_initial_clustering(&self) -> f64 {
        mean(self.runs.iter().map(|r| r.initial().global_clustering))
    }

    pub fn mean_final_clustering(&self) -> f64 {
        mean(self.runs.iter().map(|r| r.last().global_clustering))
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

/// Runs one replication in the calling thread.
pub fn run_replication(cfg: &ExperimentConfig, replication: usize) -> Result<ReplicationRun> {
    let graph = cfg.source.graph_for(replication)?;
    let degrees_before = graph.degrees();
    let outcome = run_rewiring(graph, &cfg.config_for(replication))?;
    Ok(ReplicationRun {
        replication,
        degrees_after: outcome.graph.degrees(),
        degrees_before,
        trajectory: outcome.trajectory,
        moves: outcome.moves,
        stop: outcome.stop,
    })
}

/// Runs all replications on a pool of `cfg.jobs` workers. Failures are
/// reported per replication. With an output directory, writes
/// `rep_<r>.csv`, `summary.csv` and `summary.json`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::State(format!("worker pool: {e}")))?;
    let results: Vec<Result<ReplicationRun>> = pool.install(|| {
        (0..cfg.replications)
            .into_par_iter()
            .map(|r| run_replication(cfg, r))
            .collect()
    });
    let mut runs = Vec::new();
    let mut failures = Vec::new();
    for (r, res) in results.into_iter().enumerate() {
        match res {
            Ok(run) => runs.push(run),
            Err(e) => failures.push(ReplicationFailure {
                replication: r,
                error: e.to_string(),
            }),
        }
    }
    let summary = summarize(&runs);
    let report = ExperimentReport {
        first_stop: runs.iter().map(|r| r.moves).min(),
        last_stop: runs.iter().map(|r| r.moves).max(),
        summary,
        runs,
        failures,
    };
    if let Some(dir) = &cfg.output {
        write_report(dir, cfg, &report)?;
    }
    Ok(report)
}

/// Aligns trajectories by step, padding finished runs with their last record.
pub fn summarize(runs: &[ReplicationRun]) -> Vec<SummaryRow> {
    let len = runs.iter().map(|r| r.trajectory.len()).max().unwrap_or(0);
    let mut rows = Vec::with_capacity(len);
    for i in 0..len {
        let at: Vec<&TrajectoryRecord> = runs
            .iter()
            .map(|r| r.trajectory.get(i).unwrap_or_else(|| r.last()))
            .collect();
        let col = |f: fn(&TrajectoryRecord) -> f64| {
            MeanStd::of(&at.iter().map(|r| f(r)).collect::<Vec<_>>()).unwrap_or_default()
        };
        let opt_col = |f: fn(&TrajectoryRecord) -> Option<f64>| {
            let vals: Option<Vec<f64>> = at.iter().map(|r| f(r)).collect();
            vals.and_then(|v| MeanStd::of(&v))
        };
        rows.push(SummaryRow {
            step: i as u64,
            active: runs.iter().filter(|r| i < r.trajectory.len()).count(),
            global_clustering: col(|r| r.global_clustering),
            avg_local_clustering: col(|r| r.avg_local_clustering),
            avg_path_length: opt_col(|r| r.avg_path_length),
            small_world_index: opt_col(|r| r.small_world_index),
            edges_rewired_fraction: col(|r| r.edges_rewired_fraction),
            components: col(|r| r.components as f64),
        });
    }
    rows
}

pub const SUMMARY_HEADER: &str = "step,active,global_clustering_mean,global_clustering_std,avg_local_clustering_mean,avg_local_clustering_std,avg_path_length_mean,avg_path_length_std,small_world_index_mean,small_world_index_std,edges_rewired_fraction_mean,edges_rewired_fraction_std,components_mean,components_std";

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], mut sink: W) -> Result<()> {
    writeln!(sink, "{SUMMARY_HEADER}")?;
    let pair = |m: MeanStd| format!("{},{}", format_real(m.mean), format_real(m.std));
    let opt_pair = |m: Option<MeanStd>| m.map(pair).unwrap_or_else(|| ",".into());
    for r in rows {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{}",
            r.step,
            r.active,
            pair(r.global_clustering),
            pair(r.avg_local_clustering),
            opt_pair(r.avg_path_length),
            opt_pair(r.small_world_index),
            pair(r.edges_rewired_fraction),
            pair(r.components),
        )?;
    }
    sink.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SummaryFile<'a> {
    config: &'a ExperimentConfig,
    completed: usize,
    failures: &'a [ReplicationFailure],
    first_stop: Option<usize>,
    last_stop: Option<usize>,
    mean_initial_global_clustering: f64,
    mean_final_global_clustering: f64,
    moves: Vec<usize>,
}

fn write_report(dir: &Path, cfg: &ExperimentConfig, report: &ExperimentReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    for run in &report.runs {
        let file = File::create(dir.join(format!("rep_{}.csv", run.replication)))?;
        write_trajectory(&run.trajectory, BufWriter::new(file), TrajectoryFormat::Csv)?;
    }
    write_summary_csv(
        &report.summary,
        BufWriter::new(File::create(dir.join("summary.csv"))?),
    )?;
    let meta = SummaryFile {
        config: cfg,
        completed: report.runs.len(),
        failures: &report.failures,
        first_stop: report.first_stop,
        last_stop: report.last_stop,
        mean_initial_global_clustering: report.mean_initial_clustering(),
        mean_final_global_clustering: report.mean_final_clustering(),
        moves: report.runs.iter().map(|r| r.moves).collect(),
    };
    let mut out = BufWriter::new(File::create(dir.join("summary.json"))?);
    serde_json::to_writer_pretty(&mut out, &meta)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Seed-wise comparison of the single-swing and degree-preserving algorithms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeComparison {
    pub swing_final: Vec<f64>,
    pub preserving_final: Vec<f64>,
    pub preserving_rewired: Vec<f64>,
    pub preserving_degrees_kept: Vec<bool>,
    pub swing_degrees_changed: Vec<bool>,
}

impl DegreeComparison {
    pub fn swing_mean(&self) -> f64 {
        mean(self.swing_final.iter().copied())
    }

    pub fn preserving_mean(&self) -> f64 {
        mean(self.preserving_final.iter().copied())
    }

    /// Human-readable list of violated expectations; empty when all hold.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, (&s, &p)) in self
            .swing_final
            .iter()
            .zip(&self.preserving_final)
            .enumerate()
        {
            if p > s {
                out.push(format!(
                    "replication {i}: degree-preserving final C {p} above swing final C {s}"
                ));
            }
        }
        for (i, &kept) in self.preserving_degrees_kept.iter().enumerate() {
            if !kept {
                out.push(format!("replication {i}: degree sequence changed"));
            }
        }
        for (i, &f) in self.preserving_rewired.iter().enumerate() {
            if f <= 0.6 {
                out.push(format!(
                    "replication {i}: only {:.1}% of edges rewired",
                    100.0 * f
                ));
            }
        }
        if self.preserving_mean() >= self.swing_mean() {
            out.push("mean degree-preserving final C not below swing mean".into());
        }
        out
    }
}

/// Runs swing-toward-best and the degree-preserving swap on identical seeds.
pub fn compare_degree_preservation(cfg: &ExperimentConfig) -> Result<DegreeComparison> {
    let with_algorithm = |algorithm: Algorithm, sub: &str| {
        let mut c = cfg.clone();
        c.rewire.algorithm = algorithm;
        c.output = cfg.output.as_ref().map(|d| d.join(sub));
        run_experiment(&c)
    };
    let swing = with_algorithm(Algorithm::SwingTowardBest, "swing-toward")?;
    let preserving = with_algorithm(Algorithm::DegreePreserving, "degree-preserving")?;
    if let Some(f) = swing.failures.first().or(preserving.failures.first()) {
        return Err(Error::State(format!(
            "replication {} failed: {}",
            f.replication, f.error
        )));
    }
    let cmp = DegreeComparison {
        swing_final: swing
            .runs
            .iter()
            .map(|r| r.last().global_clustering)
            .collect(),
        preserving_final: preserving
            .runs
            .iter()
            .map(|r| r.last().global_clustering)
            .collect(),
        preserving_rewired: preserving
            .runs
            .iter()
            .map(|r| r.last().edges_rewired_fraction)
            .collect(),
        preserving_degrees_kept: preserving
            .runs
            .iter()
            .map(ReplicationRun::degrees_preserved)
            .collect(),
        swing_degrees_changed: swing.runs.iter().map(|r| !r.degrees_preserved()).collect(),
    };
    if let Some(dir) = &cfg.output {
        let mut out = BufWriter::new(File::create(dir.join("comparison.json"))?);
        serde_json::to_writer_pretty(&mut out, &cmp)?;
        writeln!(out)?;
    }
    Ok(cmp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
        }
    }

    pub fn parse(s: &str) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn default_replications(self) -> usize {
        match self {
            Preset::Fig3 | Preset::Fig5 | Preset::Fig6 => 100,
            Preset::Fig4 | Preset::Fig7 | Preset::Fig8 => 10,
        }
    }

    /// Named experiment arms, each written to its own subdirectory.
    pub fn arms(self, replications: usize, base_seed: u64) -> Vec<(String, ExperimentConfig)> {
        let er = Source::Generated {
            spec: GeneratorSpec::new(GeneratorKind::ErdosRenyi { n: 100, p: 0.07 }, base_seed),
            randomize: None,
        };
        let arm = |source: &Source, algorithm, mode, snapshot_every| {
            let mut rewire = RewireConfig::new(algorithm, Policy::new(mode, base_seed));
            rewire.snapshot_every = snapshot_every;
            ExperimentConfig::new(source.clone(), rewire, replications)
        };
        match self {
            Preset::Fig3 => {
                let mut out = Vec::new();
                for (alg, alg_name) in [
                    (Algorithm::SwingTowardBest, "swing-toward"),
                    (Algorithm::SwingAwayFromWorst, "swing-away"),
                ] {
                    for (mode, mode_name) in [
                        (PolicyMode::Greedy, "greedy"),
                        (PolicyMode::Probabilistic, "probabilistic"),
                        (PolicyMode::UniformRandom, "random"),
                    ] {
                        out.push((format!("{alg_name}-{mode_name}"), arm(&er, alg, mode, 100)));
                    }
                }
                out
            }
            Preset::Fig4 => vec![
                (
                    "swing-toward".into(),
                    arm(&er, Algorithm::SwingTowardBest, PolicyMode::Greedy, 100),
                ),
                (
                    "degree-preserving".into(),
                    arm(&er, Algorithm::DegreePreserving, PolicyMode::Greedy, 100),
                ),
            ],
            Preset::Fig5 => [3, 5, 7]
                .into_iter()
                .map(|m| {
                    let ba = Source::Generated {
                        spec: GeneratorSpec::new(
                            GeneratorKind::BarabasiAlbert { n: 100, m },
                            base_seed,
                        ),
                        randomize: None,
                    };
                    (
                        format!("ba-m{m}"),
                        arm(&ba, Algorithm::SwingTowardBest, PolicyMode::Greedy, 100),
                    )
                })
                .collect(),
            Preset::Fig6 => vec![(
                "swing-toward".into(),
                arm(&er, Algorithm::SwingTowardBest, PolicyMode::Greedy, 100),
            )],
            Preset::Fig7 => vec![(
                "swing-toward".into(),
                arm(&er, Algorithm::SwingTowardBest, PolicyMode::Greedy, 10),
            )],
            Preset::Fig8 => [300, 150, 75, 50]
                .into_iter()
                .map(|count| {
                    let lattice = Source::Generated {
                        spec: GeneratorSpec::new(
                            GeneratorKind::RingLattice { n: 100, k: 6 },
                            base_seed,
                        ),
                        randomize: Some(count),
                    };
                    (
                        format!("randomized-{count}"),
                        arm(&lattice, Algorithm::SwingTowardBest, PolicyMode::Greedy, 10),
                    )
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PresetReport {
    pub preset: Preset,
    pub arms: Vec<(String, ExperimentReport)>,
    pub degree_comparison: Option<DegreeComparison>,
}

/// Runs every arm of a preset; `output` receives one subdirectory per arm.
pub fn run_preset(
    preset: Preset,
    replications: usize,
    base_seed: u64,
    jobs: usize,
    output: Option<&Path>,
) -> Result<PresetReport> {
    let mut arms = Vec::new();
    let mut degree_comparison = None;
    for (name, mut cfg) in preset.arms(replications, base_seed) {
        cfg.jobs = jobs;
        cfg.output = output.map(|d| d.join(&name));
        arms.push((name, run_experiment(&cfg)?));
    }
    if preset == Preset::Fig4 {
        let swing = &arms[0].1;
        let preserving = &arms[1].1;
        degree_comparison = Some(DegreeComparison {
            swing_final: swing
                .runs
                .iter()
                .map(|r| r.last().global_clustering)
                .collect(),
            preserving_final: preserving
                .runs
                .iter()
                .map(|r| r.last().global_clustering)
                .collect(),
            preserving_rewired: preserving
                .runs
                .iter()
                .map(|r| r.last().edges_rewired_fraction)
                .collect(),
            preserving_degrees_kept: preserving
                .runs
                .iter()
                .map(ReplicationRun::degrees_preserved)
                .collect(),
            swing_degrees_changed: swing.runs.iter().map(|r| !r.degrees_preserved()).collect(),
        });
        if let (Some(dir), Some(cmp)) = (output, &degree_comparison) {
            let mut out = BufWriter::new(File::create(dir.join("comparison.json"))?);
            serde_json::to_writer_pretty(&mut out, cmp)?;
            writeln!(out)?;
        }
    }
    Ok(PresetReport {
        preset,
        arms,
        degree_comparison,
    })
}
