//! Clustering and distance metrics, plus the incrementally maintained
//! triangle/wedge cache the rewiring loop relies on.
//!
//! `N_t` is the number of triangles, `N_p` the number of length-two paths
//! (wedges). The global coefficient is `3 N_t / N_p`. Vertices of degree below
//! two have no defined local coefficient; they contribute zero to averages.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{intersect_sorted, Graph, Vertex};
use crate::moves::Move;

/// `N_t(G)`, summing `|N(x, y)|` over edges and dividing by three. Each edge is
/// visited once, from its lower-degree endpoint.
pub fn count_triangles(g: &Graph) -> u64 {
    let mut sum = 0u64;
    for x in 0..g.vertex_count() {
        let dx = g.degree(x);
        for &y in g.neighbors(x) {
            if (dx, x) < (g.degree(y), y) {
                sum += g.common_neighbor_count(x, y) as u64;
            }
        }
    }
    sum / 3
}

#[inline]
fn choose2(d: usize) -> u64 {
    let d = d as u64;
    d * d.saturating_sub(1) / 2
}

/// `N_p(G) = Σ_v C(d_v, 2)`.
pub fn count_wedges(g: &Graph) -> u64 {
    (0..g.vertex_count()).map(|v| choose2(g.degree(v))).sum()
}

#[inline]
fn clustering_ratio(triangles: u64, wedges: u64) -> Result<f64> {
    if wedges == 0 {
        return Err(Error::UndefinedMetric("global clustering (no wedges)"));
    }
    Ok(3.0 * triangles as f64 / wedges as f64)
}

/// `C(G) = 3 N_t / N_p`. Undefined when there are no wedges.
pub fn global_clustering(g: &Graph) -> Result<f64> {
    clustering_ratio(count_triangles(g), count_wedges(g))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalClustering {
    pub value: f64,
    /// Set when `d_v < 2`; `value` is then 0 by convention.
    pub degenerate: bool,
}

#[inline]
fn local_coefficient(triangles_at: u64, degree: usize) -> f64 {
    if degree < 2 {
        0.0
    } else {
        (2 * triangles_at) as f64 / (degree * (degree - 1)) as f64
    }
}

/// Edges among the neighbors of `v`.
fn neighborhood_edges(g: &Graph, v: Vertex) -> u64 {
    let nbrs = g.neighbors(v);
    let mut twice = 0u64;
    for &w in nbrs {
        intersect_sorted(nbrs, g.neighbors(w), |_| twice += 1);
    }
    twice / 2
}

/// `c_v = 2 e(N(v)) / (d_v (d_v - 1))`.
pub fn local_clustering(g: &Graph, v: Vertex) -> Result<LocalClustering> {
    g.check_vertex(v)?;
    let d = g.degree(v);
    Ok(LocalClustering {
        value: local_coefficient(neighborhood_edges(g, v), d),
        degenerate: d < 2,
    })
}

/// Mean of `c_v` over all vertices, degenerate vertices counting as zero.
pub fn average_local_clustering(g: &Graph) -> Result<f64> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::invalid(
            "average local clustering needs at least one vertex",
        ));
    }
    let sum: f64 = (0..n)
        .map(|v| local_coefficient(neighborhood_edges(g, v), g.degree(v)))
        .sum();
    Ok(sum / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLength {
    /// Mean shortest-path distance over ordered reachable pairs.
    pub mean: f64,
    /// Number of ordered pairs `(u, v)`, `u != v`, with `v` reachable from `u`.
    pub reachable_pairs: u64,
}

/// Average shortest-path length over reachable ordered pairs, by BFS from
/// every vertex.
pub fn average_path_length(g: &Graph) -> Result<PathLength> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::invalid(
            "average path length needs at least two vertices",
        ));
    }
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut total = 0u64;
    let mut pairs = 0u64;
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for &w in g.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = du + 1;
                    total += (du + 1) as u64;
                    pairs += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    if pairs == 0 {
        return Err(Error::UndefinedMetric(
            "average path length (no reachable pairs)",
        ));
    }
    Ok(PathLength {
        mean: total as f64 / pairs as f64,
        reachable_pairs: pairs,
    })
}

/// Global clustering divided by average path length.
pub fn small_world_index(g: &Graph) -> Result<f64> {
    let c = global_clustering(g)?;
    let l = average_path_length(g)?;
    Ok(c / l.mean)
}

/// Per-vertex triangle participation plus global `N_t` and `N_p`, kept in step
/// with a graph one edge toggle at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleWedgeCache {
    triangles_at: Vec<u64>,
    total_triangles: u64,
    total_wedges: u64,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl TriangleWedgeCache {
    /// Full enumeration; done once per run.
    pub fn build(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut twice = vec![0u64; n];
        for (x, y) in g.edges() {
            let c = g.common_neighbor_count(x, y) as u64;
            twice[x] += c;
            twice[y] += c;
        }
        let triangles_at: Vec<u64> = twice.into_iter().map(|t| t / 2).collect();
        let total_triangles = triangles_at.iter().sum::<u64>() / 3;
        TriangleWedgeCache {
            triangles_at,
            total_triangles,
            total_wedges: count_wedges(g),
            degrees: g.degrees(),
            edge_count: g.edge_count(),
        }
    }

    pub fn triangles_at(&self) -> &[u64] {
        &self.triangles_at
    }

    pub fn total_triangles(&self) -> u64 {
        self.total_triangles
    }

    pub fn total_wedges(&self) -> u64 {
        self.total_wedges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn global_clustering(&self) -> Result<f64> {
        clustering_ratio(self.total_triangles, self.total_wedges)
    }

    pub fn local_clustering(&self, v: Vertex) -> f64 {
        local_coefficient(self.triangles_at[v], self.degrees[v])
    }

    pub fn average_local_clustering(&self) -> Result<f64> {
        let n = self.degrees.len();
        if n == 0 {
            return Err(Error::invalid(
                "average local clustering needs at least one vertex",
            ));
        }
        let sum: f64 = (0..n).map(|v| self.local_clustering(v)).sum();
        Ok(sum / n as f64)
    }

    /// Cheap consistency check against `g`: sizes, edge count, and the degree
    /// mirror of `vertices`.
    pub fn check_matches(&self, g: &Graph, vertices: &[Vertex]) -> Result<()> {
        if self.degrees.len() != g.vertex_count() || self.edge_count != g.edge_count() {
            return Err(Error::State("cache was built for a different graph".into()));
        }
        for &v in vertices {
            if v < self.degrees.len() && self.degrees[v] != g.degree(v) {
                return Err(Error::State(format!("cache degree of vertex {v} is stale")));
            }
        }
        Ok(())
    }

    /// Toggles `{a, b}` in `g` and updates the counts from the neighborhoods
    /// of `a` and `b` only. The caller has validated the toggle.
    pub(crate) fn toggle_edge(
        &mut self,
        g: &mut Graph,
        a: Vertex,
        b: Vertex,
        add: bool,
    ) -> Result<()> {
        let mut common = 0u64;
        let triangles_at = &mut self.triangles_at;
        intersect_sorted(g.neighbors(a), g.neighbors(b), |w| {
            common += 1;
            if add {
                triangles_at[w] += 1;
            } else {
                triangles_at[w] -= 1;
            }
        });
        let (da, db) = (g.degree(a) as u64, g.degree(b) as u64);
        g.set_edge(a, b, add)?;
        if add {
            self.triangles_at[a] += common;
            self.triangles_at[b] += common;
            self.total_triangles += common;
            self.total_wedges += da + db;
            self.degrees[a] += 1;
            self.degrees[b] += 1;
            self.edge_count += 1;
        } else {
            self.triangles_at[a] -= common;
            self.triangles_at[b] -= common;
            self.total_triangles -= common;
            self.total_wedges -= (da - 1) + (db - 1);
            self.degrees[a] -= 1;
            self.degrees[b] -= 1;
            self.edge_count -= 1;
        }
        Ok(())
    }
}

/// Applies `mv` to `g` and updates `cache` in the same step. The move is
/// checked against the pre-move graph first; on error nothing is modified.
pub fn cache_apply_move(cache: &mut TriangleWedgeCache, g: &mut Graph, mv: &Move) -> Result<()> {
    cache.check_matches(g, &mv.vertices())?;
    mv.check_against(g)?;
    for (a, b, add) in mv.toggles() {
        cache.toggle_edge(g, a, b, add)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::ring_lattice;

    const EPS: f64 = 1e-12;

    fn k4_minus_edge() -> Graph {
        // missing {2,3}; 0 and 1 have degree 3, 2 and 3 degree 2
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    fn triples_oracle(g: &Graph) -> u64 {
        let n = g.vertex_count();
        let mut t = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        t += 1;
                    }
                }
            }
        }
        t
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(count_triangles(&Graph::complete(4)), 4);
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(count_triangles(&c6), 0);
        let l = ring_lattice(10, 2).unwrap();
        assert_eq!(triples_oracle(&l), 10);
        assert_eq!(count_triangles(&l), 10);
    }

    #[test]
    fn wedge_counts() {
        assert_eq!(count_wedges(&star(4)), 6);
        assert_eq!(count_wedges(&Graph::complete(3)), 3);
        assert_eq!(count_wedges(&ring_lattice(100, 6).unwrap()), 6600);
    }

    #[test]
    fn global_clustering_values() {
        assert!((global_clustering(&Graph::complete(4)).unwrap() - 1.0).abs() < EPS);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(global_clustering(&path).unwrap(), 0.0);
        let g = k4_minus_edge();
        assert_eq!(triples_oracle(&g), 2);
        assert_eq!(count_wedges(&g), 3 + 3 + 1 + 1);
        assert!((global_clustering(&g).unwrap() - 0.75).abs() < EPS);
        assert!(matches!(
            global_clustering(&Graph::from_edges(2, [(0, 1)]).unwrap()),
            Err(Error::UndefinedMetric(_))
        ));
    }

    #[test]
    fn local_clustering_values() {
        let hub = local_clustering(&star(4), 0).unwrap();
        assert_eq!(hub.value, 0.0);
        assert!(!hub.degenerate);
        assert!(local_clustering(&star(4), 1).unwrap().degenerate);
        assert!((local_clustering(&Graph::complete(4), 2).unwrap().value - 1.0).abs() < EPS);

        let g = k4_minus_edge();
        // neighborhood edge oracle: e(N(2)) = e({0,1}) = 1, e(N(0)) = e({1,2,3}) = 2
        assert!((local_clustering(&g, 2).unwrap().value - 1.0).abs() < EPS);
        assert!((local_clustering(&g, 0).unwrap().value - 2.0 / 3.0).abs() < EPS);
    }

    #[test]
    fn average_local_clustering_values() {
        assert!((average_local_clustering(&Graph::complete(3)).unwrap() - 1.0).abs() < EPS);
        assert_eq!(average_local_clustering(&star(3)).unwrap(), 0.0);
        let per_vertex: f64 = [1.0, 1.0, 2.0 / 6.0, 1.0, 1.0].iter().sum();
        assert!((average_local_clustering(&bowtie()).unwrap() - per_vertex / 5.0).abs() < EPS);
        assert!((average_local_clustering(&bowtie()).unwrap() - 13.0 / 15.0).abs() < EPS);
        assert!(average_local_clustering(&Graph::new(0)).is_err());
    }

    #[test]
    fn path_length_values() {
        let k4 = average_path_length(&Graph::complete(4)).unwrap();
        assert!((k4.mean - 1.0).abs() < EPS);
        assert_eq!(k4.reachable_pairs, 12);
        let path = average_path_length(&Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        assert!((path.mean - 4.0 / 3.0).abs() < EPS);
        assert!(matches!(
            average_path_length(&Graph::new(3)),
            Err(Error::UndefinedMetric(_))
        ));

        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let split = average_path_length(&two).unwrap();
        assert_eq!(split.reachable_pairs, 4);
        assert!((split.mean - 1.0).abs() < EPS);
    }

    #[test]
    fn small_world_values() {
        assert!((small_world_index(&Graph::complete(4)).unwrap() - 1.0).abs() < EPS);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(small_world_index(&path).unwrap(), 0.0);
    }

    #[test]
    fn cache_build_cases() {
        let c = TriangleWedgeCache::build(&Graph::complete(4));
        assert_eq!(c.triangles_at(), &[3, 3, 3, 3]);
        assert_eq!(c.total_triangles(), 4);
        assert_eq!(c.total_wedges(), 12);

        let e = TriangleWedgeCache::build(&Graph::new(5));
        assert_eq!(e.triangles_at(), &[0; 5]);
        assert_eq!((e.total_triangles(), e.total_wedges()), (0, 0));
    }

    #[test]
    fn cache_follows_single_swing() {
        // K4 minus {2,3} with a pendant 4 on 3; swinging {3,4} to {3,2} closes two triangles.
        let mut g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (3, 4)]).unwrap();
        let mut cache = TriangleWedgeCache::build(&g);
        let mv = Move::single_swing(&g, 3, 4, 2).unwrap();
        assert_eq!(g.common_neighbor_count(3, 4), 0);
        let before = cache.total_triangles();
        cache_apply_move(&mut cache, &mut g, &mv).unwrap();
        assert_eq!(cache, TriangleWedgeCache::build(&g));
        assert_eq!(cache.total_triangles(), before + 2);
    }

    #[test]
    fn cache_follows_double_swap_with_constant_wedges() {
        let mut g = ring_lattice(12, 2).unwrap();
        let mut cache = TriangleWedgeCache::build(&g);
        let wedges = cache.total_wedges();
        let mv = Move::double_swap(&g, [(0, 1), (6, 7)], [(0, 6), (1, 7)]).unwrap();
        cache_apply_move(&mut cache, &mut g, &mv).unwrap();
        assert_eq!(cache.total_wedges(), wedges);
        assert_eq!(cache, TriangleWedgeCache::build(&g));
    }

    #[test]
    fn cache_rejects_mismatch() {
        let mut g = k4_minus_edge();
        let mut cache = TriangleWedgeCache::build(&Graph::complete(4));
        let mv = Move::single_swing(&g, 2, 0, 3).unwrap();
        assert!(matches!(
            cache_apply_move(&mut cache, &mut g, &mv),
            Err(Error::State(_))
        ));
        assert_eq!(g, k4_minus_edge());
    }
}
