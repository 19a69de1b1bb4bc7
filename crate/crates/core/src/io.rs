//! Edge-list text format and trajectory CSV/JSONL.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ordered, Graph, Vertex};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReadOptions {
    /// Keep only the largest connected component (ties: lowest first vertex).
    pub largest_component: bool,
}

/// Result of parsing an edge list.
#[derive(Debug, Clone)]
pub struct EdgeListImport {
    pub graph: Graph,
    /// `labels[id]` is the token that produced vertex `id`.
    pub labels: Vec<String>,
    pub duplicates_dropped: usize,
    pub self_loops_dropped: usize,
    /// Counts as parsed, before any component extraction.
    pub parsed_vertices: usize,
    pub parsed_edges: usize,
}

impl EdgeListImport {
    pub fn label_of(&self, v: Vertex) -> &str {
        &self.labels[v]
    }
}

/// Parses whitespace-separated `u v` lines. `#` lines and blank lines are
/// skipped; labels get dense ids in order of first appearance.
pub fn read_edge_list<R: BufRead>(source: R, options: ReadOptions) -> Result<EdgeListImport> {
    let mut ids: HashMap<String, Vertex> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut self_loops = 0;
    let mut intern = |tok: &str, labels: &mut Vec<String>| -> Vertex {
        if let Some(&id) = ids.get(tok) {
            return id;
        }
        let id = labels.len();
        ids.insert(tok.to_owned(), id);
        labels.push(tok.to_owned());
        id
    };
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        let u = intern(tokens[0], &mut labels);
        let v = intern(tokens[1], &mut labels);
        if u == v {
            self_loops += 1;
        } else {
            edges.push(ordered(u, v));
        }
    }
    let raw = edges.len();
    edges.sort_unstable();
    edges.dedup();
    let mut graph = Graph::from_edges(labels.len(), edges)?;
    let parsed_vertices = graph.vertex_count();
    let parsed_edges = graph.edge_count();
    if options.largest_component && graph.vertex_count() > 0 {
        let (sub, original) = graph.largest_component();
        labels = original
            .into_iter()
            .map(|v| std::mem::take(&mut labels[v]))
            .collect();
        graph = sub;
    }
    Ok(EdgeListImport {
        graph,
        labels,
        duplicates_dropped: raw - parsed_edges,
        self_loops_dropped: self_loops,
        parsed_vertices,
        parsed_edges,
    })
}

/// Writes `u v` per edge, `u < v`, in lexicographic order.
pub fn write_edge_list<W: Write>(g: &Graph, mut sink: W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(sink, "{u} {v}")?;
    }
    sink.flush()?;
    Ok(())
}

/// One row of a rewiring trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub step: u64,
    pub global_clustering: f64,
    pub avg_local_clustering: f64,
    pub avg_path_length: Option<f64>,
    pub reachable_pairs: Option<u64>,
    pub small_world_index: Option<f64>,
    pub edges_rewired_fraction: f64,
    pub components: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryFormat {
    Csv,
    Jsonl,
}

impl TrajectoryFormat {
    /// `.jsonl` / `.json` select JSONL; anything else is CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("json") => TrajectoryFormat::Jsonl,
            _ => TrajectoryFormat::Csv,
        }
    }
}

pub const TRAJECTORY_HEADER: &str = "step,global_clustering,avg_local_clustering,avg_path_length,reachable_pairs,small_world_index,edges_rewired_fraction,components";

/// Formats a real with 12 significant digits, trailing zeros trimmed.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{e}")
    }
}

fn rounded(x: f64) -> f64 {
    format_real(x).parse().unwrap_or(x)
}

fn rounded_record(r: &TrajectoryRecord) -> TrajectoryRecord {
    TrajectoryRecord {
        global_clustering: rounded(r.global_clustering),
        avg_local_clustering: rounded(r.avg_local_clustering),
        avg_path_length: r.avg_path_length.map(rounded),
        small_world_index: r.small_world_index.map(rounded),
        edges_rewired_fraction: rounded(r.edges_rewired_fraction),
        ..*r
    }
}

pub fn write_trajectory<W: Write>(
    traj: &[TrajectoryRecord],
    mut sink: W,
    format: TrajectoryFormat,
) -> Result<()> {
    match format {
        TrajectoryFormat::Csv => {
            writeln!(sink, "{TRAJECTORY_HEADER}")?;
            let opt_real = |x: Option<f64>| x.map(format_real).unwrap_or_default();
            for r in traj {
                writeln!(
                    sink,
                    "{},{},{},{},{},{},{},{}",
                    r.step,
                    format_real(r.global_clustering),
                    format_real(r.avg_local_clustering),
                    opt_real(r.avg_path_length),
                    r.reachable_pairs.map(|p| p.to_string()).unwrap_or_default(),
                    opt_real(r.small_world_index),
                    format_real(r.edges_rewired_fraction),
                    r.components,
                )?;
            }
        }
        TrajectoryFormat::Jsonl => {
            for r in traj {
                serde_json::to_writer(&mut sink, &rounded_record(r))?;
                writeln!(sink)?;
            }
        }
    }
    sink.flush()?;
    Ok(())
}

pub fn read_trajectory<R: BufRead>(
    source: R,
    format: TrajectoryFormat,
) -> Result<Vec<TrajectoryRecord>> {
    let mut out = Vec::new();
    let mut lines = source.lines().enumerate();
    if format == TrajectoryFormat::Csv {
        let Some((_, header)) = lines.next() else {
            return Ok(out);
        };
        if header?.trim_end() != TRAJECTORY_HEADER {
            return Err(Error::Parse {
                line: 1,
                message: "unexpected trajectory header".into(),
            });
        }
    }
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = match format {
            TrajectoryFormat::Jsonl => serde_json::from_str(&line)?,
            TrajectoryFormat::Csv => parse_csv_row(&line).map_err(|message| Error::Parse {
                line: idx + 1,
                message,
            })?,
        };
        out.push(record);
    }
    Ok(out)
}

fn parse_csv_row(line: &str) -> std::result::Result<TrajectoryRecord, String> {
    let fields: Vec<&str> = line.trim_end().split(',').collect();
    if fields.len() != 8 {
        return Err(format!("expected 8 fields, found {}", fields.len()));
    }
    fn req<T: std::str::FromStr>(s: &str, name: &str) -> std::result::Result<T, String> {
        s.parse().map_err(|_| format!("bad {name}: {s:?}"))
    }
    fn opt<T: std::str::FromStr>(s: &str, name: &str) -> std::result::Result<Option<T>, String> {
        if s.is_empty() {
            Ok(None)
        } else {
            req(s, name).map(Some)
        }
    }
    Ok(TrajectoryRecord {
        step: req(fields[0], "step")?,
        global_clustering: req(fields[1], "global_clustering")?,
        avg_local_clustering: req(fields[2], "avg_local_clustering")?,
        avg_path_length: opt(fields[3], "avg_path_length")?,
        reachable_pairs: opt(fields[4], "reachable_pairs")?,
        small_world_index: opt(fields[5], "small_world_index")?,
        edges_rewired_fraction: req(fields[6], "edges_rewired_fraction")?,
        components: req(fields[7], "components")?,
    })
}
