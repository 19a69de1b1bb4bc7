//! Seeded random and deterministic test networks.

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    ErdosRenyi { n: usize, p: f64 },
    BarabasiAlbert { n: usize, m: usize },
    RingLattice { n: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, seed: u64) -> Self {
        GeneratorSpec { kind, seed }
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.kind {
            GeneratorKind::ErdosRenyi { n, p } => erdos_renyi(n, p, self.seed),
            GeneratorKind::BarabasiAlbert { n, m } => barabasi_albert(n, m, self.seed),
            GeneratorKind::RingLattice { n, k } => ring_lattice(n, k),
        }
    }
}

/// `G(n, p)`: every pair present independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability {p} is not in [0, 1]"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Preferential attachment grown from `K_{m+1}`. Each new vertex picks `m`
/// distinct existing vertices with probability proportional to degree,
/// redrawing duplicates.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 || m >= n {
        return Err(Error::invalid(format!(
            "attachment count m={m} must satisfy 1 <= m < n={n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::new(n);
    // one entry per edge endpoint, so a uniform pick is degree-proportional
    let mut endpoints: Vec<Vertex> = Vec::with_capacity(2 * (m * (m + 1) / 2 + (n - m - 1) * m));
    for u in 0..=m {
        for v in u + 1..=m {
            g.add_edge(u, v)?;
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets: Vec<Vertex> = Vec::with_capacity(m);
    for new in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.add_edge(new, t)?;
            endpoints.push(new);
            endpoints.push(t);
        }
    }
    Ok(g)
}

/// Circulant graph `L(n, k)`: `i ~ j` iff their ring distance is at most `k`.
pub fn ring_lattice(n: usize, k: usize) -> Result<Graph> {
    if k < 1 || 2 * k >= n {
        return Err(Error::invalid(format!(
            "half-bandwidth k={k} must satisfy 1 <= k < n/2 (n={n})"
        )));
    }
    let mut g = Graph::new(n);
    for i in 0..n {
        for step in 1..=k {
            g.add_edge(i, (i + step) % n)?;
        }
    }
    Ok(g)
}

/// Watts–Strogatz style randomization of `count` distinct edges.
///
/// Each chosen edge keeps one endpoint (picked uniformly) and reattaches the
/// other to a uniform random vertex, redrawing self-loops and existing edges.
/// If the kept endpoint is already adjacent to every other vertex the other
/// endpoint is kept instead; if both are saturated the edge stays put.
pub fn randomize_edges(g: &Graph, count: usize, seed: u64) -> Result<Graph> {
    let m = g.edge_count();
    if count > m {
        return Err(Error::invalid(format!(
            "cannot randomize {count} edges of a graph with {m}"
        )));
    }
    let n = g.vertex_count();
    let mut rng = rng_from_seed(seed);
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut out = g.clone();
    for idx in sample(&mut rng, m, count).into_iter() {
        let (a, b) = edges[idx];
        let (keep, other) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let keep = if out.degree(keep) + 1 < n {
            keep
        } else if out.degree(other) + 1 < n {
            other
        } else {
            continue;
        };
        let target = loop {
            let t = rng.gen_range(0..n);
            if t != keep && !out.has_edge(keep, t) {
                break t;
            }
        };
        out.remove_edge(a, b)?;
        out.add_edge(keep, target)?;
    }
    Ok(out)
}
