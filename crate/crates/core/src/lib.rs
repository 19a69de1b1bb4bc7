//! Local edge rewiring that strictly raises a graph's global clustering
//! coefficient, with generators, metrics, and an experiment harness.
//!
//! ```
//! use rewire_core::{erdos_renyi, global_clustering, run_rewiring, Algorithm, Policy, RewireConfig};
//!
//! let g = erdos_renyi(60, 0.1, 1).unwrap();
//! let before = global_clustering(&g).unwrap();
//! let cfg = RewireConfig::new(Algorithm::SwingTowardBest, Policy::greedy());
//! let out = run_rewiring(g, &cfg).unwrap();
//! assert!(global_clustering(&out.graph).unwrap() > before);
//! ```

pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod metrics;
pub mod moves;
pub mod rewiring;

pub use error::{Error, ErrorClass, Result};
pub use generators::{
    barabasi_albert, erdos_renyi, randomize_edges, ring_lattice, GeneratorKind, GeneratorSpec,
};
pub use graph::{Connectivity, Graph, Pair, Vertex};
pub use metrics::{
    average_local_clustering, average_path_length, cache_apply_move, count_triangles, count_wedges,
    global_clustering, local_clustering, small_world_index, LocalClustering, PathLength,
    TriangleWedgeCache,
};
pub use moves::{Move, MoveKind};
pub use rewiring::{
    apply_move, legal_single_swing, propose, propose_degree_preserving,
    propose_swing_away_from_worst, propose_swing_toward_best, run_rewiring, Algorithm, Exclusions,
    Policy, PolicyMode, PolicySampler, RewireConfig, RewireOutcome, RewireState, Rewirer,
    StopReason,
};
