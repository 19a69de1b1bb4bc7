//! Rewiring moves and their exact effect on triangle and wedge counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ordered, Graph, Pair, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    /// Remove `{x, v}`, add `{x, y}`; `x` is the hinge.
    SingleSwing,
    /// Remove two disjoint edges, add two disjoint nonedges over the same four vertices.
    DoubleSwap,
}

/// One rewiring action, with its exact change in `N_t` and `N_p`.
///
/// For a single swing, `removed[0] = (x, v)` and `added[0] = (x, y)` with the
/// hinge `x` first. Double swaps store normalized pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub removed: Vec<Pair>,
    pub added: Vec<Pair>,
    pub delta_triangles: i64,
    pub delta_wedges: i64,
    /// Pair the proposer selected first (doorway or weakest edge); used for exclusions.
    pub doorway: Pair,
}

impl Move {
    /// Swing the edge `{hinge, from}` to `{hinge, to}`.
    pub fn single_swing(g: &Graph, hinge: Vertex, from: Vertex, to: Vertex) -> Result<Move> {
        let removed = vec![(hinge, from)];
        let added = vec![(hinge, to)];
        validate(g, &removed, &added)?;
        if hinge == from || hinge == to || from == to {
            return Err(Error::invalid("single swing needs three distinct vertices"));
        }
        let (delta_triangles, delta_wedges) = exact_deltas(g, &removed, &added);
        Ok(Move {
            kind: MoveKind::SingleSwing,
            removed,
            added,
            delta_triangles,
            delta_wedges,
            doorway: ordered(hinge, to),
        })
    }

    /// Replace two edges by two nonedges on the same four vertices.
    pub fn double_swap(g: &Graph, removed: [Pair; 2], added: [Pair; 2]) -> Result<Move> {
        let removed: Vec<Pair> = removed.iter().map(|&(a, b)| ordered(a, b)).collect();
        let added: Vec<Pair> = added.iter().map(|&(a, b)| ordered(a, b)).collect();
        validate(g, &removed, &added)?;
        let mut vs: Vec<Vertex> = removed.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        let mut ws: Vec<Vertex> = added.iter().flat_map(|&(a, b)| [a, b]).collect();
        ws.sort_unstable();
        ws.dedup();
        if vs.len() != 4 || vs != ws {
            return Err(Error::invalid(
                "double swap must remove and add disjoint pairs over the same four vertices",
            ));
        }
        let (delta_triangles, delta_wedges) = exact_deltas(g, &removed, &added);
        Ok(Move {
            kind: MoveKind::DoubleSwap,
            doorway: added[0],
            removed,
            added,
            delta_triangles,
            delta_wedges,
        })
    }

    pub fn with_doorway(mut self, doorway: Pair) -> Move {
        self.doorway = ordered(doorway.0, doorway.1);
        self
    }

    /// Vertices touched by the move, ascending and deduplicated.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self
            .removed
            .iter()
            .chain(&self.added)
            .flat_map(|&(a, b)| [a, b])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Primitive edge toggles in application order: removals, then additions.
    pub fn toggles(&self) -> impl Iterator<Item = (Vertex, Vertex, bool)> + '_ {
        self.removed
            .iter()
            .map(|&(a, b)| (a, b, false))
            .chain(self.added.iter().map(|&(a, b)| (a, b, true)))
    }

    /// `true` when the move strictly raises the global clustering coefficient:
    /// more triangles and no more wedges.
    pub fn is_improving(&self) -> bool {
        self.delta_triangles > 0 && self.delta_wedges <= 0
    }

    /// Checks the move is still applicable to `g` and its stored deltas are current.
    pub fn check_against(&self, g: &Graph) -> Result<()> {
        validate(g, &self.removed, &self.added)?;
        let (dt, dw) = exact_deltas(g, &self.removed, &self.added);
        if (dt, dw) != (self.delta_triangles, self.delta_wedges) {
            return Err(Error::State(format!(
                "stale move: stored deltas ({}, {}) but graph gives ({dt}, {dw})",
                self.delta_triangles, self.delta_wedges
            )));
        }
        Ok(())
    }
}

fn validate(g: &Graph, removed: &[Pair], added: &[Pair]) -> Result<()> {
    for &(a, b) in removed.iter().chain(added) {
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
    }
    for &(a, b) in removed {
        if !g.has_edge(a, b) {
            let (a, b) = ordered(a, b);
            return Err(Error::EdgeMissing(a, b));
        }
    }
    for &(a, b) in added {
        if g.has_edge(a, b) {
            let (a, b) = ordered(a, b);
            return Err(Error::EdgeExists(a, b));
        }
    }
    let mut all: Vec<Pair> = removed
        .iter()
        .chain(added)
        .map(|&(a, b)| ordered(a, b))
        .collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("a move may touch each pair at most once"));
    }
    Ok(())
}

/// Exact `(ΔN_t, ΔN_p)` of applying `removed` then `added` to `g`, in order.
///
/// Each toggle is evaluated against the graph as it stands after the earlier
/// toggles, so triangles that rely on a pair changed by the same move are
/// counted correctly. `g` is not modified.
pub(crate) fn exact_deltas(g: &Graph, removed: &[Pair], added: &[Pair]) -> (i64, i64) {
    let mut touched: Vec<Vertex> = removed
        .iter()
        .chain(added)
        .flat_map(|&(a, b)| [a, b])
        .collect();
    touched.sort_unstable();
    touched.dedup();

    let mut changed: Vec<(Pair, bool)> = Vec::with_capacity(removed.len() + added.len());
    let mut degree_shift = vec![0i64; touched.len()];
    let slot = |v: Vertex| touched.binary_search(&v).unwrap();

    let mut dt = 0i64;
    let mut dw = 0i64;
    for (&(a, b), present) in removed
        .iter()
        .map(|p| (p, false))
        .chain(added.iter().map(|p| (p, true)))
    {
        let adjacent = |u: Vertex, w: Vertex, changed: &[(Pair, bool)]| -> bool {
            let key = ordered(u, w);
            match changed.iter().rev().find(|(p, _)| *p == key) {
                Some(&(_, state)) => state,
                None => g.has_edge(u, w),
            }
        };

        // Third vertices outside the move see an unmodified neighborhood.
        let mut closes = 0i64;
        crate::graph::intersect_sorted(g.neighbors(a), g.neighbors(b), |w| {
            if touched.binary_search(&w).is_err() {
                closes += 1;
            }
        });
        for &w in &touched {
            if w != a && w != b && adjacent(a, w, &changed) && adjacent(b, w, &changed) {
                closes += 1;
            }
        }

        let da = g.degree(a) as i64 + degree_shift[slot(a)];
        let db = g.degree(b) as i64 + degree_shift[slot(b)];
        if present {
            dt += closes;
            dw += da + db;
            degree_shift[slot(a)] += 1;
            degree_shift[slot(b)] += 1;
        } else {
            dt -= closes;
            dw -= (da - 1) + (db - 1);
            degree_shift[slot(a)] -= 1;
            degree_shift[slot(b)] -= 1;
        }
        changed.push((ordered(a, b), present));
    }
    (dt, dw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangles_brute(g: &Graph) -> i64 {
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

    fn wedges_brute(g: &Graph) -> i64 {
        (0..g.vertex_count())
            .map(|v| {
                let d = g.degree(v) as i64;
                d * (d - 1) / 2
            })
            .sum()
    }

    fn applied(g: &Graph, mv: &Move) -> Graph {
        let mut h = g.clone();
        for (a, b, add) in mv.toggles() {
            h.set_edge(a, b, add).unwrap();
        }
        h
    }

    #[test]
    fn single_swing_deltas_match_recount() {
        // K4 minus {2,3}, plus a pendant 4 hanging off 3.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (3, 4)]).unwrap();
        let mv = Move::single_swing(&g, 2, 0, 3).unwrap();
        let h = applied(&g, &mv);
        assert_eq!(
            mv.delta_triangles,
            triangles_brute(&h) - triangles_brute(&g)
        );
        assert_eq!(mv.delta_wedges, wedges_brute(&h) - wedges_brute(&g));
    }

    #[test]
    fn swing_whose_old_endpoint_is_a_common_neighbor() {
        // 0-1, 1-2, 0-3, 2-3; swing {0,1} to {0,2}: 1 is a common neighbor of 0 and 2
        // before the move but not after.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 3), (2, 3)]).unwrap();
        let mv = Move::single_swing(&g, 0, 1, 2).unwrap();
        assert_eq!(g.common_neighbor_count(0, 2), 2);
        assert_eq!(mv.delta_triangles, 1);
        let h = applied(&g, &mv);
        assert_eq!(triangles_brute(&h), 1);
    }

    #[test]
    fn double_swap_uses_post_removal_neighborhoods() {
        // x=0,y=1,u=2,v=3 with u adjacent to y: u is in N(x,y) before the move
        // but {x,u} is removed by it.
        let g = Graph::from_edges(5, [(0, 2), (1, 3), (1, 2), (0, 4), (1, 4), (2, 4)]).unwrap();
        let mv = Move::double_swap(&g, [(0, 2), (1, 3)], [(0, 1), (2, 3)]).unwrap();
        let h = applied(&g, &mv);
        assert_eq!(
            mv.delta_triangles,
            triangles_brute(&h) - triangles_brute(&g)
        );
        assert_eq!(mv.delta_wedges, 0);
    }

    #[test]
    fn invalid_moves_are_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            Move::single_swing(&g, 0, 2, 3),
            Err(Error::EdgeMissing(0, 2))
        ));
        assert!(matches!(
            Move::single_swing(&g, 1, 0, 2),
            Err(Error::EdgeExists(1, 2))
        ));
        assert!(Move::double_swap(&g, [(0, 1), (1, 2)], [(0, 2), (1, 3)]).is_err());
    }

    #[test]
    fn stale_move_detected() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let mv = Move::single_swing(&g, 3, 2, 0).unwrap();
        mv.check_against(&g).unwrap();
        let mut h = g.clone();
        h.remove_edge(0, 1).unwrap();
        assert!(matches!(mv.check_against(&h), Err(Error::State(_))));
    }
}
