//! Undirected simple graphs over dense integer vertex ids.
//!
//! Each vertex keeps its neighbors in a sorted `Vec`, so membership tests are
//! binary searches and common-neighbor intersection is a linear merge over the
//! shorter list. External labels are mapped to ids at the I/O boundary.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An unordered vertex pair stored with the smaller id first.
pub type Pair = (Vertex, Vertex);

#[inline]
pub fn ordered(u: Vertex, v: Vertex) -> Pair {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// Outcome of a connectivity scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    pub components: usize,
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops and duplicates.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            g.adjacency[u] = (0..n).filter(|&v| v != u).collect();
        }
        g.edge_count = n * n.saturating_sub(1) / 2;
        g
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Degree of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// `true` when `{u, v}` is an edge. Out-of-range ids are simply absent.
    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return false;
        }
        let (a, b) = if self.adjacency[u].len() <= self.adjacency[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        let pos = match self.adjacency[u].binary_search(&v) {
            Ok(_) => {
                let (a, b) = ordered(u, v);
                return Err(Error::EdgeExists(a, b));
            }
            Err(pos) => pos,
        };
        self.adjacency[u].insert(pos, v);
        let pos = self.adjacency[v]
            .binary_search(&u)
            .expect_err("adjacency lost symmetry");
        self.adjacency[v].insert(pos, u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        let pos = match self.adjacency[u].binary_search(&v) {
            Ok(pos) => pos,
            Err(_) => {
                let (a, b) = ordered(u, v);
                return Err(Error::EdgeMissing(a, b));
            }
        };
        self.adjacency[u].remove(pos);
        let pos = self.adjacency[v]
            .binary_search(&u)
            .expect("adjacency lost symmetry");
        self.adjacency[v].remove(pos);
        self.edge_count -= 1;
        Ok(())
    }

    /// Adds (`present = true`) or removes (`present = false`) the edge `{u, v}`.
    pub fn set_edge(&mut self, u: Vertex, v: Vertex, present: bool) -> Result<()> {
        if present {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let start = nbrs.partition_point(|&w| w <= u);
            nbrs[start..].iter().map(move |&v| (u, v))
        })
    }

    /// `N(x) ∩ N(y)` in ascending order.
    pub fn common_neighbors(&self, x: Vertex, y: Vertex) -> Result<Vec<Vertex>> {
        self.check_pair(x, y)?;
        let mut out = Vec::new();
        intersect_sorted(&self.adjacency[x], &self.adjacency[y], |w| out.push(w));
        Ok(out)
    }

    /// `|N(x) ∩ N(y)|` without bounds checks beyond indexing.
    #[inline]
    pub fn common_neighbor_count(&self, x: Vertex, y: Vertex) -> usize {
        let mut count = 0;
        intersect_sorted(&self.adjacency[x], &self.adjacency[y], |_| count += 1);
        count
    }

    /// Component label per vertex (labels are `0..count` in order of first vertex).
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    /// Connectivity of the whole graph. The empty graph counts as connected
    /// with zero components.
    pub fn connectivity(&self) -> Connectivity {
        let components = self.component_count();
        Connectivity {
            connected: components <= 1,
            components,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connectivity().connected
    }

    /// Subgraph induced by the largest connected component, relabelled densely
    /// in ascending order of original id. Also returns the original ids.
    pub fn largest_component(&self) -> (Graph, Vec<Vertex>) {
        let (labels, count) = self.component_labels();
        if count <= 1 {
            return (self.clone(), (0..self.vertex_count()).collect());
        }
        let mut sizes = vec![0usize; count];
        for &l in &labels {
            sizes[l] += 1;
        }
        // first component wins ties
        let best = (0..count)
            .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
            .unwrap();
        let kept: Vec<Vertex> = (0..self.vertex_count())
            .filter(|&v| labels[v] == best)
            .collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let mut sub = Graph::new(kept.len());
        for (i, &v) in kept.iter().enumerate() {
            sub.adjacency[i] = self.adjacency[v].iter().map(|&w| new_id[w]).collect();
        }
        sub.edge_count = sub.adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        (sub, kept)
    }

    /// Full scan of the structural invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.vertex_count();
        let mut total = 0;
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            total += nbrs.len();
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::State(format!(
                    "neighbors of {v} not strictly sorted"
                )));
            }
            for &w in nbrs {
                if w >= n {
                    return Err(Error::State(format!("neighbor {w} of {v} out of range")));
                }
                if w == v {
                    return Err(Error::State(format!("self-loop at {v}")));
                }
                if self.adjacency[w].binary_search(&v).is_err() {
                    return Err(Error::State(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        if total != 2 * self.edge_count {
            return Err(Error::State(format!(
                "edge count {} disagrees with degree sum {total}",
                self.edge_count
            )));
        }
        Ok(())
    }
}

/// Calls `f` for every element common to two sorted slices.
#[inline]
pub(crate) fn intersect_sorted(a: &[Vertex], b: &[Vertex], mut f: impl FnMut(Vertex)) {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.is_empty() {
        return;
    }
    if small.len() * 16 < large.len() {
        let mut rest = large;
        for &x in small {
            match rest.binary_search(&x) {
                Ok(i) => {
                    f(x);
                    rest = &rest[i + 1..];
                }
                Err(i) => rest = &rest[i..],
            }
        }
        return;
    }
    let (mut i, mut j) = (0, 0);
    while i < small.len() && j < large.len() {
        match small[i].cmp(&large[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(small[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn common_neighbors_small_cases() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.common_neighbors(0, 1).unwrap(), vec![2]);

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.common_neighbors(0, 2).unwrap(), vec![1]);

        let c5 = cycle(5);
        assert_eq!(c5.common_neighbors(0, 2).unwrap(), vec![1]);
        assert!(c5.common_neighbors(0, 1).unwrap().is_empty());
    }

    #[test]
    fn common_neighbors_matches_brute_force_on_five_cycle() {
        let g = cycle(5);
        for x in 0..5 {
            for y in 0..5 {
                if x == y {
                    continue;
                }
                let brute: Vec<_> = (0..5)
                    .filter(|&w| g.has_edge(w, x) && g.has_edge(w, y))
                    .collect();
                assert_eq!(g.common_neighbors(x, y).unwrap(), brute);
            }
        }
    }

    #[test]
    fn common_neighbors_rejects_bad_ids() {
        let g = cycle(5);
        assert!(matches!(
            g.common_neighbors(0, 7),
            Err(Error::VertexOutOfRange { vertex: 7, n: 5 })
        ));
        assert!(matches!(g.common_neighbors(2, 2), Err(Error::SelfLoop(2))));
    }

    #[test]
    fn mutate_edge_round_trip() {
        let mut g = Graph::new(2);
        g.set_edge(0, 1, true).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);

        let before = g.clone();
        g.set_edge(0, 1, false).unwrap();
        g.set_edge(0, 1, true).unwrap();
        assert_eq!(g, before);
    }

    #[test]
    fn mutate_edge_errors() {
        let mut g = Graph::new(3);
        assert!(matches!(g.add_edge(0, 0), Err(Error::SelfLoop(0))));
        g.add_edge(0, 1).unwrap();
        assert!(matches!(g.add_edge(1, 0), Err(Error::EdgeExists(0, 1))));
        assert!(matches!(g.remove_edge(1, 2), Err(Error::EdgeMissing(1, 2))));
        assert!(matches!(
            g.add_edge(0, 3),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert_eq!(
            g.add_edge(0, 0).unwrap_err().class(),
            crate::ErrorClass::Usage
        );
        assert_eq!(
            g.add_edge(0, 1).unwrap_err().class(),
            crate::ErrorClass::State
        );
        g.check_invariants().unwrap();
    }

    #[test]
    fn connectivity_cases() {
        assert_eq!(
            cycle(5).connectivity(),
            Connectivity {
                connected: true,
                components: 1
            }
        );
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            two.connectivity(),
            Connectivity {
                connected: false,
                components: 2
            }
        );
        assert_eq!(
            Graph::new(0).connectivity(),
            Connectivity {
                connected: true,
                components: 0
            }
        );
    }

    #[test]
    fn edges_are_lexicographic() {
        let g = Graph::from_edges(4, [(3, 1), (0, 2), (1, 0), (2, 3)]).unwrap();
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 3), (2, 3)]
        );
    }

    #[test]
    fn largest_component_extraction() {
        let g = Graph::from_edges(7, [(0, 1), (2, 3), (3, 4), (4, 2), (5, 6)]).unwrap();
        let (sub, kept) = g.largest_component();
        assert_eq!(kept, vec![2, 3, 4]);
        assert_eq!(sub, Graph::complete(3));
        sub.check_invariants().unwrap();
    }

    #[test]
    fn skewed_intersection_uses_search_path() {
        let big: Vec<usize> = (0..200).collect();
        let small = vec![3, 50, 199, 250];
        let mut got = Vec::new();
        intersect_sorted(&small, &big, |w| got.push(w));
        assert_eq!(got, vec![3, 50, 199]);
    }
}
