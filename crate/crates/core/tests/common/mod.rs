//! Brute-force references shared by the integration tests. Nothing here
//! touches the library's own counting code.

#![allow(dead_code, clippy::needless_range_loop)]

use proptest::prelude::*;
use rewire_core::{Graph, Vertex};

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub fn triangles(g: &Graph) -> u64 {
    let a = matrix(g);
    let n = a.len();
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if a[i][j] && a[j][k] && a[i][k] {
                    t += 1;
                }
            }
        }
    }
    t
}

/// Paths of length two, counted by their middle vertex.
pub fn wedges(g: &Graph) -> u64 {
    let a = matrix(g);
    let n = a.len();
    let mut w = 0;
    for mid in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                if a[mid][i] && a[mid][j] {
                    w += 1;
                }
            }
        }
    }
    w
}

pub fn common(g: &Graph, x: Vertex, y: Vertex) -> Vec<Vertex> {
    let a = matrix(g);
    (0..a.len()).filter(|&w| a[x][w] && a[y][w]).collect()
}

pub fn components(g: &Graph) -> usize {
    // union-find, unlike the library's BFS
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

/// Mean shortest-path length over reachable ordered pairs (Floyd–Warshall).
pub fn path_length(g: &Graph) -> Option<(f64, u64)> {
    let n = g.vertex_count();
    let inf = u32::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let (mut sum, mut pairs) = (0u64, 0u64);
    for i in 0..n {
        for j in 0..n {
            if i != j && d[i][j] < inf {
                sum += d[i][j] as u64;
                pairs += 1;
            }
        }
    }
    (pairs > 0).then(|| (sum as f64 / pairs as f64, pairs))
}

pub fn graph_from(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let mut g = Graph::new(n);
    for &(u, v) in pairs {
        let (u, v) = (u % n, v % n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Arbitrary simple graphs on 3..=max_n vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..n * 3).prop_map(move |pairs| graph_from(n, &pairs))
    })
}
