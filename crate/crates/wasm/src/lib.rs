//! Browser bindings: grow a random graph and watch rewiring close triangles.
//!
//! See `www/index.html` for the page that drives these exports.

use rewire_core::{
    erdos_renyi, Algorithm, Graph, Policy, PolicyMode, RewireConfig, Rewirer, TriangleWedgeCache,
};
use wasm_bindgen::prelude::*;

fn parse_algorithm(name: &str) -> Result<Algorithm, String> {
    match name {
        "swing-toward" => Ok(Algorithm::SwingTowardBest),
        "swing-away" => Ok(Algorithm::SwingAwayFromWorst),
        "degree-preserving" => Ok(Algorithm::DegreePreserving),
        other => Err(format!("unknown algorithm {other:?}")),
    }
}

fn parse_policy(name: &str) -> Result<PolicyMode, String> {
    match name {
        "greedy" => Ok(PolicyMode::Greedy),
        "probabilistic" => Ok(PolicyMode::Probabilistic),
        "random" => Ok(PolicyMode::UniformRandom),
        other => Err(format!("unknown policy {other:?}")),
    }
}

fn build(n: usize, p: f64, seed: u64, algorithm: &str, policy: &str) -> Result<Rewirer, String> {
    let cfg = RewireConfig::new(
        parse_algorithm(algorithm)?,
        Policy::new(parse_policy(policy)?, seed),
    );
    let g = erdos_renyi(n, p, seed).map_err(|e| e.to_string())?;
    Rewirer::new(g, cfg).map_err(|e| e.to_string())
}

fn flat_edges(g: &Graph) -> Vec<u32> {
    g.edges().flat_map(|(u, v)| [u as u32, v as u32]).collect()
}

/// One interactive rewiring run on an Erdős–Rényi graph.
#[wasm_bindgen]
pub struct Demo {
    rewirer: Rewirer,
    original: Graph,
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(
        n: usize,
        p: f64,
        seed: u64,
        algorithm: &str,
        policy: &str,
    ) -> Result<Demo, JsError> {
        let rewirer = build(n, p, seed, algorithm, policy).map_err(|e| JsError::new(&e))?;
        Ok(Demo {
            original: rewirer.graph().clone(),
            rewirer,
        })
    }

    /// Applies up to `count` moves; returns how many were made.
    pub fn step(&mut self, count: u32) -> Result<u32, JsError> {
        self.advance(count).map_err(|e| JsError::new(&e))
    }

    pub fn vertex_count(&self) -> usize {
        self.rewirer.graph().vertex_count()
    }

    /// Current edges as a flat `[u0, v0, u1, v1, ...]` array.
    pub fn edges(&self) -> Vec<u32> {
        flat_edges(self.rewirer.graph())
    }

    /// Current edges absent from the starting graph, flattened likewise.
    pub fn new_edges(&self) -> Vec<u32> {
        self.rewirer
            .graph()
            .edges()
            .filter(|&(u, v)| !self.original.has_edge(u, v))
            .flat_map(|(u, v)| [u as u32, v as u32])
            .collect()
    }

    pub fn moves(&self) -> usize {
        self.rewirer.steps()
    }

    pub fn finished(&self) -> bool {
        self.rewirer.finished().is_some()
    }

    pub fn global_clustering(&self) -> f64 {
        self.cache().global_clustering().unwrap_or(0.0)
    }

    pub fn avg_local_clustering(&self) -> f64 {
        self.cache().average_local_clustering().unwrap_or(0.0)
    }

    pub fn edges_rewired_fraction(&self) -> f64 {
        self.rewirer.edges_rewired_fraction()
    }

    pub fn triangles(&self) -> f64 {
        self.cache().total_triangles() as f64
    }
}

impl Demo {
    fn cache(&self) -> &TriangleWedgeCache {
        self.rewirer.state().cache()
    }

    fn advance(&mut self, count: u32) -> Result<u32, String> {
        let mut made = 0;
        while made < count {
            match self.rewirer.step().map_err(|e| e.to_string())? {
                Some(_) => made += 1,
                None => break,
            }
        }
        Ok(made)
    }
}

/// Global clustering after every move of a full run, for comparing policies.
#[wasm_bindgen]
pub fn clustering_curve(
    n: usize,
    p: f64,
    seed: u64,
    algorithm: &str,
    policy: &str,
) -> Result<Vec<f64>, JsError> {
    curve(n, p, seed, algorithm, policy).map_err(|e| JsError::new(&e))
}

fn curve(n: usize, p: f64, seed: u64, algorithm: &str, policy: &str) -> Result<Vec<f64>, String> {
    let mut rewirer = build(n, p, seed, algorithm, policy)?;
    let mut out = vec![rewirer.state().cache().global_clustering().unwrap_or(0.0)];
    while rewirer.step().map_err(|e| e.to_string())?.is_some() {
        out.push(rewirer.state().cache().global_clustering().unwrap_or(0.0));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_advances_to_fixed_point() {
        let rewirer = build(40, 0.15, 3, "swing-toward", "greedy").unwrap();
        let mut demo = Demo {
            original: rewirer.graph().clone(),
            rewirer,
        };
        let before = demo.global_clustering();
        let m = demo.edges().len();
        assert_eq!(demo.advance(5).unwrap(), 5);
        assert!(demo.global_clustering() > before);
        while demo.advance(50).unwrap() > 0 {}
        assert!(demo.finished());
        assert_eq!(demo.edges().len(), m);
        assert!(!demo.new_edges().is_empty());
    }

    #[test]
    fn curve_is_increasing() {
        let c = curve(50, 0.1, 1, "swing-away", "random").unwrap();
        assert!(c.len() > 1);
        assert!(c.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn names_are_checked() {
        assert!(build(10, 0.5, 0, "bogus", "greedy").is_err());
        assert!(build(10, 0.5, 0, "swing-toward", "bogus").is_err());
    }
}
