//! Door-swing rewiring: move proposal, legality, and the fixed-point loop.
//!
//! Three proposers share one state ([`RewireState`]): the graph, its
//! triangle/wedge cache, and a table of common-neighbor counts for every pair.
//!
//! * [`propose_swing_toward_best`] picks an open doorway `{x, y}` (a nonedge
//!   with many common neighbors) and swings a weak incident edge into it.
//! * [`propose_swing_away_from_worst`] picks a weak edge `{x, v}` and swings it
//!   toward the most rewarding nonadjacent vertex.
//! * [`propose_degree_preserving`] trades two edges for two nonedges on the
//!   same four vertices, leaving every degree unchanged.
//!
//! Every move these return raises `N_t` without raising `N_p`, so the global
//! clustering coefficient strictly increases with each accepted move.

mod select;
mod table;

use std::cmp::Reverse;
use std::collections::{HashSet, VecDeque};

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::rng_from_seed;
use crate::graph::{ordered, Graph, Pair, Vertex};
use crate::io::TrajectoryRecord;
use crate::metrics::{average_path_length, TriangleWedgeCache};
use crate::moves::{Move, MoveKind};

use select::WeightedWalk;
use table::PairTable;

pub use table::MAX_VERTICES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    SwingTowardBest,
    SwingAwayFromWorst,
    DegreePreserving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyMode {
    /// Best candidate first; ties broken lexicographically by pair.
    Greedy,
    /// Candidates drawn with weight `|N(x, y)|` (doorways) or
    /// `1 / (1 + |N(x, v)|)` (edges).
    Probabilistic,
    /// Uniform over doorways with at least one common neighbor, or over edges.
    UniformRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Policy {
    pub mode: PolicyMode,
    pub seed: u64,
}

impl Policy {
    pub fn greedy() -> Self {
        Policy {
            mode: PolicyMode::Greedy,
            seed: 0,
        }
    }

    pub fn new(mode: PolicyMode, seed: u64) -> Self {
        Policy { mode, seed }
    }
}

/// Seeded source of policy decisions.
#[derive(Debug, Clone)]
pub struct PolicySampler {
    mode: PolicyMode,
    rng: ChaCha8Rng,
}

impl PolicySampler {
    pub fn new(policy: Policy) -> Self {
        PolicySampler {
            mode: policy.mode,
            rng: rng_from_seed(policy.seed),
        }
    }

    pub fn mode(&self) -> PolicyMode {
        self.mode
    }
}

/// Pairs eliminated from consideration until the next accepted move.
#[derive(Debug, Clone, Default)]
pub struct Exclusions {
    pairs: HashSet<Pair>,
}

impl Exclusions {
    pub fn insert(&mut self, pair: Pair) {
        self.pairs.insert(ordered(pair.0, pair.1));
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.pairs.contains(&ordered(pair.0, pair.1))
    }

    pub fn clear(&mut self) {
        self.pairs.clear();
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A graph together with the counts the proposers read.
#[derive(Debug, Clone)]
pub struct RewireState {
    graph: Graph,
    cache: TriangleWedgeCache,
    table: PairTable,
    // which proposer parked the table's dormant pairs
    parked_for: Option<Algorithm>,
}

impl RewireState {
    pub fn new(graph: Graph) -> Result<Self> {
        let cache = TriangleWedgeCache::build(&graph);
        Self::from_parts(graph, cache)
    }

    /// Pairs a graph with an existing cache, rejecting a cache that does not
    /// describe the graph.
    pub fn from_parts(graph: Graph, cache: TriangleWedgeCache) -> Result<Self> {
        if cache != TriangleWedgeCache::build(&graph) {
            return Err(Error::State("cache does not match graph".into()));
        }
        let table = PairTable::build(&graph)?;
        Ok(RewireState {
            graph,
            cache,
            table,
            parked_for: None,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cache(&self) -> &TriangleWedgeCache {
        &self.cache
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// `|N(a, b)|` from the maintained table.
    pub fn common_neighbor_count(&self, a: Vertex, b: Vertex) -> usize {
        self.table.count(a, b)
    }

    /// Pairs the last proposer examined without finding a move, still valid
    /// because nothing near them has changed since.
    pub fn dormant_pairs(&self) -> usize {
        self.table.dormant_count()
    }

    fn park_for(&mut self, algorithm: Algorithm, failed: Vec<Pair>) {
        self.table
            .set_narrow(algorithm != Algorithm::DegreePreserving);
        for p in failed {
            self.table.park(&self.graph, p);
        }
        self.parked_for = Some(algorithm);
    }

    fn prepare(&mut self, algorithm: Algorithm) {
        if self.parked_for.is_some_and(|a| a != algorithm) {
            self.table.wake_all(&self.graph);
            self.parked_for = None;
        }
    }

    /// Applies a move to graph, cache, and table together. The move is
    /// checked against the current graph first; on error nothing changes.
    pub fn apply(&mut self, mv: &Move) -> Result<()> {
        self.cache.check_matches(&self.graph, &mv.vertices())?;
        mv.check_against(&self.graph)?;
        for (a, b, add) in mv.toggles() {
            self.table.before_toggle(&self.graph, a, b, add);
            self.cache.toggle_edge(&mut self.graph, a, b, add)?;
            let g = &self.graph;
            // a pending pair avoids both endpoints, so only a and b can have
            // become usable candidates for it
            match self.parked_for {
                Some(Algorithm::SwingTowardBest) => self.table.after_toggle(g, |t, (x, y)| {
                    [a, b]
                        .into_iter()
                        .any(|v| toward_candidate(g, t, x, y, v).is_some())
                }),
                Some(Algorithm::SwingAwayFromWorst) => self.table.after_toggle(g, |t, (x, v)| {
                    [a, b]
                        .into_iter()
                        .any(|y| away_candidate(g, t, x, v, y).is_some())
                }),
                _ => self.table.after_toggle(g, |_, _| true),
            }
        }
        Ok(())
    }

    /// `true` if applying `mv` would split a connected component.
    pub fn would_disconnect(&self, mv: &Move) -> bool {
        let mut after = self.graph.clone();
        for (a, b, add) in mv.toggles() {
            if after.set_edge(a, b, add).is_err() {
                return false;
            }
        }
        // Components never merge under these moves, so the count rises iff
        // some removed edge's endpoints end up apart.
        mv.removed.iter().any(|&(a, b)| !reachable(&after, a, b))
    }
}

fn reachable(g: &Graph, from: Vertex, to: Vertex) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        if u == to {
            return true;
        }
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// The single-swing condition: hinge `x` drops `v` for `y`.
///
/// True iff the swing closes more triangles than it opens and `d_v > d_y`.
/// Triangles closed are counted in the post-move graph, i.e. `v` is not
/// counted as a common neighbor of `x` and `y`.
pub fn legal_single_swing(g: &Graph, x: Vertex, v: Vertex, y: Vertex) -> Result<bool> {
    for u in [x, v, y] {
        g.check_vertex(u)?;
    }
    if x == v || x == y || v == y {
        return Err(Error::invalid("x, v, y must be distinct"));
    }
    if !g.has_edge(x, v) {
        return Err(Error::EdgeMissing(x.min(v), x.max(v)));
    }
    if g.has_edge(x, y) {
        return Err(Error::EdgeExists(x.min(y), x.max(y)));
    }
    let closes = g.common_neighbor_count(x, y) - usize::from(g.has_edge(v, y));
    Ok(closes > g.common_neighbor_count(x, v) && g.degree(v) > g.degree(y))
}

/// Scores `v` as a swing candidate for the open doorway `{x, y}`: the hinge
/// is whichever of `x`, `y` holds the edge to `v`. Returns `(f_v, hinge,
/// partner)` when the swing meets both conditions.
fn toward_candidate(
    g: &Graph,
    t: &PairTable,
    x: Vertex,
    y: Vertex,
    v: Vertex,
) -> Option<(usize, Vertex, Vertex)> {
    let (hinge, partner) = match (g.has_edge(x, v), g.has_edge(y, v)) {
        (true, false) => (x, y),
        (false, true) => (y, x),
        _ => return None,
    };
    let f = t.count(hinge, v);
    (f < t.count(x, y) && g.degree(v) > g.degree(partner)).then_some((f, hinge, partner))
}

/// Scores `y` as a new endpoint for the edge `{x, v}`: the endpoint adjacent
/// to `y` is dropped. Returns `(f_y, hinge, dropped)` when the swing meets
/// both conditions.
fn away_candidate(
    g: &Graph,
    t: &PairTable,
    x: Vertex,
    v: Vertex,
    y: Vertex,
) -> Option<(usize, Vertex, Vertex)> {
    if y == x || y == v {
        return None;
    }
    let (hinge, dropped) = match (g.has_edge(x, y), g.has_edge(v, y)) {
        // y ~ x, y !~ v: v keeps the edge and swings from x to y
        (true, false) => (v, x),
        (false, true) => (x, v),
        _ => return None,
    };
    // y is adjacent to `dropped`, which stops being a common neighbor
    let f = t.count(hinge, y) - 1;
    (f > t.count(x, v) && g.degree(dropped) > g.degree(y)).then_some((f, hinge, dropped))
}

/// Best swing into the doorway `{x, y}`.
fn swing_into_doorway(state: &RewireState, x: Vertex, y: Vertex) -> Option<Move> {
    let g = &state.graph;
    let t = &state.table;
    // (f_v, -d_v, v) ascending; v is unique, so hinge and partner just ride along
    let mut best: Option<(usize, Reverse<usize>, Vertex, Vertex, Vertex)> = None;
    symmetric_difference(g.neighbors(x), g.neighbors(y), |v, _| {
        if let Some((f, hinge, partner)) = toward_candidate(g, t, x, y, v) {
            let key = (f, Reverse(g.degree(v)), v, hinge, partner);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    });
    let (_, _, v, hinge, partner) = best?;
    let mv = Move::single_swing(g, hinge, v, partner).ok()?;
    debug_assert!(mv.is_improving());
    Some(mv.with_doorway((x, y)))
}

/// Best swing of the edge `{x, v}`.
fn swing_away_from_edge(state: &RewireState, x: Vertex, v: Vertex) -> Option<Move> {
    let g = &state.graph;
    let t = &state.table;
    // (-f_y, d_y, y) ascending, then hinge and dropped endpoint
    let mut best: Option<(Reverse<usize>, usize, Vertex, Vertex, Vertex)> = None;
    symmetric_difference(g.neighbors(x), g.neighbors(v), |y, _| {
        if let Some((f, hinge, dropped)) = away_candidate(g, t, x, v, y) {
            let key = (Reverse(f), g.degree(y), y, hinge, dropped);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    });
    let (_, _, y, hinge, dropped) = best?;
    let mv = Move::single_swing(g, hinge, dropped, y).ok()?;
    debug_assert!(mv.is_improving());
    Some(mv.with_doorway((x, v)))
}

/// Best degree-preserving double swap around the doorway `{x, y}`.
fn double_swap_for_doorway(state: &RewireState, x: Vertex, y: Vertex, open: usize) -> Option<Move> {
    let g = &state.graph;
    let t = &state.table;
    let mut partners: Vec<(Reverse<usize>, Vertex, Vertex)> = Vec::new();
    for &u in g.neighbors(x) {
        for &v in g.neighbors(y) {
            if u != v && !g.has_edge(u, v) {
                partners.push((Reverse(t.count(u, v)), u, v));
            }
        }
    }
    partners.sort_unstable();
    for (Reverse(cuv), u, v) in partners {
        let kept = t.count(x, u) + t.count(v, y);
        let gained = cuv + open;
        if gained > kept && gained > t.count(u, y) + t.count(x, v) {
            if let Ok(mv) = Move::double_swap(g, [(x, u), (y, v)], [(x, y), (u, v)]) {
                if mv.delta_triangles > 0 {
                    return Some(mv.with_doorway((x, y)));
                }
            }
        }
        if t.count(u, y) + t.count(v, x) > kept && !g.has_edge(x, v) && !g.has_edge(u, y) {
            if let Ok(mv) = Move::double_swap(g, [(x, u), (y, v)], [(x, v), (u, y)]) {
                if mv.delta_triangles > 0 {
                    return Some(mv.with_doorway((x, y)));
                }
            }
        }
    }
    None
}

/// Walks `a △ b` for sorted slices, flagging whether each element came from `a`.
fn symmetric_difference(a: &[Vertex], b: &[Vertex], mut f: impl FnMut(Vertex, bool)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            f(a[i], true);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            f(b[j], false);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
}

/// Visits live doorways in policy order until `attempt` yields a move.
/// Doorways that yielded nothing are appended to `failed`.
fn walk_doorways(
    state: &RewireState,
    sampler: &mut PolicySampler,
    exclusions: &Exclusions,
    failed: &mut Vec<Pair>,
    mut attempt: impl FnMut(Vertex, Vertex, usize) -> Option<Move>,
) -> Option<Move> {
    let levels = state.table.open();
    match sampler.mode {
        PolicyMode::Greedy => {
            for c in (1..levels.len()).rev() {
                for &(x, y) in &levels[c] {
                    if exclusions.contains((x, y)) {
                        continue;
                    }
                    if let Some(mv) = attempt(x, y, c) {
                        return Some(mv);
                    }
                    failed.push((x, y));
                }
            }
            None
        }
        PolicyMode::Probabilistic | PolicyMode::UniformRandom => {
            let proportional = sampler.mode == PolicyMode::Probabilistic;
            let mut walk = WeightedWalk::new(levels, |c| {
                if c == 0 {
                    0.0
                } else if proportional {
                    c as f64
                } else {
                    1.0
                }
            });
            while let Some(((x, y), c)) = walk.next(&mut sampler.rng, exclusions) {
                if let Some(mv) = attempt(x, y, c) {
                    return Some(mv);
                }
                failed.push((x, y));
            }
            None
        }
    }
}

/// Swing toward best: choose a doorway `{x, y}` by policy, then swing the
/// incident edge whose removal destroys the fewest triangles (ties: highest
/// degree) subject to the degree condition. `None` once no doorway admits a
/// move.
pub fn propose_swing_toward_best(
    state: &mut RewireState,
    sampler: &mut PolicySampler,
    exclusions: &Exclusions,
) -> Option<Move> {
    state.prepare(Algorithm::SwingTowardBest);
    let mut failed = Vec::new();
    let s = &*state;
    let mv = walk_doorways(s, sampler, exclusions, &mut failed, |x, y, _| {
        swing_into_doorway(s, x, y)
    });
    state.park_for(Algorithm::SwingTowardBest, failed);
    mv
}

/// Swing away from worst: choose an edge `{x, v}` by policy (greedy: fewest
/// common neighbors first), then swing it toward the vertex that closes the
/// most triangles (ties: lowest degree) subject to the degree condition.
pub fn propose_swing_away_from_worst(
    state: &mut RewireState,
    sampler: &mut PolicySampler,
    exclusions: &Exclusions,
) -> Option<Move> {
    state.prepare(Algorithm::SwingAwayFromWorst);
    let mut failed = Vec::new();
    let mv = swing_away_walk(state, sampler, exclusions, &mut failed);
    state.park_for(Algorithm::SwingAwayFromWorst, failed);
    mv
}

fn swing_away_walk(
    state: &RewireState,
    sampler: &mut PolicySampler,
    exclusions: &Exclusions,
    failed: &mut Vec<Pair>,
) -> Option<Move> {
    let levels = state.table.closed();
    match sampler.mode {
        PolicyMode::Greedy => {
            for set in levels {
                for &(x, v) in set {
                    if exclusions.contains((x, v)) {
                        continue;
                    }
                    if let Some(mv) = swing_away_from_edge(state, x, v) {
                        return Some(mv);
                    }
                    failed.push((x, v));
                }
            }
            None
        }
        PolicyMode::Probabilistic | PolicyMode::UniformRandom => {
            let proportional = sampler.mode == PolicyMode::Probabilistic;
            let mut walk = WeightedWalk::new(levels, |c| {
                if proportional {
                    1.0 / (1.0 + c as f64)
                } else {
                    1.0
                }
            });
            while let Some(((x, v), _)) = walk.next(&mut sampler.rng, exclusions) {
                if let Some(mv) = swing_away_from_edge(state, x, v) {
                    return Some(mv);
                }
                failed.push((x, v));
            }
            None
        }
    }
}

/// Degree-preserving double swap: choose a doorway `{x, y}` by policy, then
/// the nonedge `{u, v}` with `u ~ x`, `v ~ y` sharing the most neighbors, and
/// accept whichever swap orientation passes the pre-filter and strictly
/// increases the exact triangle count.
pub fn propose_degree_preserving(
    state: &mut RewireState,
    sampler: &mut PolicySampler,
    exclusions: &Exclusions,
) -> Option<Move> {
    state.prepare(Algorithm::DegreePreserving);
    let mut failed = Vec::new();
    let s = &*state;
    let mv = walk_doorways(s, sampler, exclusions, &mut failed, |x, y, c| {
        double_swap_for_doorway(s, x, y, c)
    });
    state.park_for(Algorithm::DegreePreserving, failed);
    mv
}

/// Proposes the next move for `algorithm`. Pairs found to admit no move are
/// parked in `state` and skipped by later proposals until a move touches
/// their neighborhood; this never changes which move greedy selection finds.
pub fn propose(
    algorithm: Algorithm,
    state: &mut RewireState,
    sampler: &mut PolicySampler,
    exclusions: &Exclusions,
) -> Option<Move> {
    match algorithm {
        Algorithm::SwingTowardBest => propose_swing_toward_best(state, sampler, exclusions),
        Algorithm::SwingAwayFromWorst => propose_swing_away_from_worst(state, sampler, exclusions),
        Algorithm::DegreePreserving => propose_degree_preserving(state, sampler, exclusions),
    }
}

/// Applies a proposed move unless `forbid_disconnect` is set and the move
/// would split a component; a rejected move's doorway is excluded instead.
/// Returns whether the move was applied.
pub fn apply_move(
    state: &mut RewireState,
    mv: &Move,
    forbid_disconnect: bool,
    exclusions: &mut Exclusions,
) -> Result<bool> {
    let valid_kind = match mv.kind {
        MoveKind::SingleSwing => mv.is_improving(),
        MoveKind::DoubleSwap => mv.delta_triangles > 0 && mv.delta_wedges == 0,
    };
    if !valid_kind {
        return Err(Error::invalid("move does not strictly increase clustering"));
    }
    mv.check_against(&state.graph)?;
    if forbid_disconnect && state.would_disconnect(mv) {
        exclusions.insert(mv.doorway);
        return Ok(false);
    }
    state.apply(mv)?;
    exclusions.clear();
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewireConfig {
    pub algorithm: Algorithm,
    pub policy: Policy,
    pub max_steps: Option<usize>,
    pub forbid_disconnect: bool,
    /// Path length and small-world index are computed every this many moves
    /// (and at the first and last record).
    pub snapshot_every: usize,
}

impl RewireConfig {
    pub fn new(algorithm: Algorithm, policy: Policy) -> Self {
        RewireConfig {
            algorithm,
            policy,
            max_steps: None,
            forbid_disconnect: false,
            snapshot_every: 100,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.snapshot_every == 0 {
            return Err(Error::invalid("snapshot_every must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    FixedPoint,
    MaxSteps,
}

/// A rewiring run that can be advanced one move at a time.
#[derive(Debug, Clone)]
pub struct Rewirer {
    state: RewireState,
    sampler: PolicySampler,
    exclusions: Exclusions,
    config: RewireConfig,
    untouched_original: HashSet<Pair>,
    original_edges: usize,
    steps: usize,
    finished: Option<StopReason>,
}

impl Rewirer {
    pub fn new(graph: Graph, config: RewireConfig) -> Result<Self> {
        config.validate()?;
        let state = RewireState::new(graph)?;
        if state.cache.total_wedges() == 0 {
            return Err(Error::UndefinedMetric("global clustering (no wedges)"));
        }
        let untouched_original: HashSet<Pair> = state.graph.edges().collect();
        Ok(Rewirer {
            original_edges: untouched_original.len(),
            untouched_original,
            sampler: PolicySampler::new(config.policy),
            exclusions: Exclusions::default(),
            state,
            config,
            steps: 0,
            finished: None,
        })
    }

    pub fn state(&self) -> &RewireState {
        &self.state
    }

    pub fn graph(&self) -> &Graph {
        &self.state.graph
    }

    pub fn config(&self) -> &RewireConfig {
        &self.config
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn finished(&self) -> Option<StopReason> {
        self.finished
    }

    /// Share of the starting edges removed at least once so far.
    pub fn edges_rewired_fraction(&self) -> f64 {
        if self.original_edges == 0 {
            0.0
        } else {
            (self.original_edges - self.untouched_original.len()) as f64
                / self.original_edges as f64
        }
    }

    /// Proposes and applies the next move. Returns `None` once the run has
    /// stopped (fixed point or step cap).
    pub fn step(&mut self) -> Result<Option<Move>> {
        if self.finished.is_some() {
            return Ok(None);
        }
        if self.config.max_steps.is_some_and(|cap| self.steps >= cap) {
            self.finished = Some(StopReason::MaxSteps);
            return Ok(None);
        }
        loop {
            let Some(mv) = propose(
                self.config.algorithm,
                &mut self.state,
                &mut self.sampler,
                &self.exclusions,
            ) else {
                self.finished = Some(StopReason::FixedPoint);
                return Ok(None);
            };
            if apply_move(
                &mut self.state,
                &mv,
                self.config.forbid_disconnect,
                &mut self.exclusions,
            )? {
                for p in &mv.removed {
                    self.untouched_original.remove(&ordered(p.0, p.1));
                }
                self.steps += 1;
                return Ok(Some(mv));
            }
        }
    }

    /// Metric snapshot of the current graph. Path metrics only when `with_paths`.
    pub fn record(&self, with_paths: bool) -> TrajectoryRecord {
        let cache = &self.state.cache;
        let global = cache.global_clustering().unwrap_or(0.0);
        let path = if with_paths {
            average_path_length(&self.state.graph).ok()
        } else {
            None
        };
        TrajectoryRecord {
            step: self.steps as u64,
            global_clustering: global,
            avg_local_clustering: cache.average_local_clustering().unwrap_or(0.0),
            avg_path_length: path.map(|p| p.mean),
            reachable_pairs: path.map(|p| p.reachable_pairs),
            small_world_index: path.map(|p| global / p.mean),
            edges_rewired_fraction: self.edges_rewired_fraction(),
            components: self.state.graph.component_count() as u64,
        }
    }

    /// Runs to a stop, recording every move.
    pub fn run(mut self) -> Result<RewireOutcome> {
        let every = self.config.snapshot_every;
        let mut trajectory = vec![self.record(true)];
        while self.step()?.is_some() {
            trajectory.push(self.record(self.steps.is_multiple_of(every)));
        }
        if let Some(last) = trajectory.last_mut() {
            if last.avg_path_length.is_none() && last.step > 0 {
                *last = self.record(true);
            }
        }
        Ok(RewireOutcome {
            moves: self.steps,
            edges_rewired_fraction: self.edges_rewired_fraction(),
            stop: self.finished.unwrap_or(StopReason::FixedPoint),
            graph: self.state.graph,
            trajectory,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RewireOutcome {
    pub trajectory: Vec<TrajectoryRecord>,
    pub graph: Graph,
    pub moves: usize,
    pub edges_rewired_fraction: f64,
    pub stop: StopReason,
}

/// Rewires `graph` until no move remains or `max_steps` is reached.
pub fn run_rewiring(graph: Graph, config: &RewireConfig) -> Result<RewireOutcome> {
    Rewirer::new(graph, *config)?.run()
}
