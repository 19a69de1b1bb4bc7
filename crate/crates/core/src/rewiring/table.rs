//! Common-neighbor counts for every vertex pair, bucketed by count.
//!
//! Nonedges with at least one common neighbor live in `open[c]`; edges live in
//! `closed[c]` (including `c = 0`). Each bucket is ordered, so greedy selection
//! walks doorways in `(count, lexicographic pair)` order without sorting.
//! A toggle of `{a, b}` changes only pairs `{a, w}` and `{b, w}` for neighbors
//! `w`, so upkeep costs `O((d_a + d_b) log n)`.
//!
//! Pairs can also be parked as *dormant*: a proposer that found no move at a
//! pair parks it, and it leaves its bucket until a toggle lands within one hop
//! of either endpoint, which is the only way its verdict can change. In
//! narrow mode a toggle endpoint adjacent to both ends of a parked pair does
//! not wake it; single swings only read the symmetric difference of the two
//! neighborhoods, and that vertex is outside it. Narrow mode also holds the
//! remaining nearby pairs as pending until the toggle is done, so the caller
//! can recheck just the two toggled vertices as candidates and re-park pairs
//! that still admit nothing.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{ordered, Graph, Pair, Vertex};

/// Dense storage limit: `n (n - 1) / 2` counters must stay addressable.
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone)]
pub(crate) struct PairTable {
    n: usize,
    counts: Vec<u32>,
    open: Vec<BTreeSet<Pair>>,
    closed: Vec<BTreeSet<Pair>>,
    dormant: Vec<Vec<Vertex>>,
    dormant_count: usize,
    narrow: bool,
    pending: Vec<Pair>,
}

impl PairTable {
    pub fn build(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        if n > MAX_VERTICES {
            return Err(Error::invalid(format!(
                "graphs above {MAX_VERTICES} vertices are not supported (got {n})"
            )));
        }
        let mut table = PairTable {
            n,
            counts: vec![0; n * n.saturating_sub(1) / 2],
            open: vec![BTreeSet::new()],
            closed: vec![BTreeSet::new()],
            dormant: vec![Vec::new(); n],
            dormant_count: 0,
            narrow: false,
            pending: Vec::new(),
        };
        for w in 0..n {
            let nbrs = g.neighbors(w);
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    let k = table.slot(a, b);
                    table.counts[k] += 1;
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let c = table.counts[table.slot(a, b)] as usize;
                if g.has_edge(a, b) {
                    insert_level(&mut table.closed, c, (a, b));
                } else if c > 0 {
                    insert_level(&mut table.open, c, (a, b));
                }
            }
        }
        Ok(table)
    }

    #[inline]
    fn slot(&self, a: Vertex, b: Vertex) -> usize {
        let (a, b) = ordered(a, b);
        debug_assert!(a != b && b < self.n);
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    /// `|N(a, b)|` for `a != b`.
    #[inline]
    pub fn count(&self, a: Vertex, b: Vertex) -> usize {
        self.counts[self.slot(a, b)] as usize
    }

    /// Nonedges bucketed by common-neighbor count; bucket 0 is always empty.
    pub fn open(&self) -> &[BTreeSet<Pair>] {
        &self.open
    }

    /// Edges bucketed by common-neighbor count.
    pub fn closed(&self) -> &[BTreeSet<Pair>] {
        &self.closed
    }

    pub fn dormant_count(&self) -> usize {
        self.dormant_count
    }

    /// Takes a bucketed pair out of circulation.
    pub fn park(&mut self, g: &Graph, pair: Pair) {
        let (a, b) = ordered(pair.0, pair.1);
        let c = self.count(a, b);
        if g.has_edge(a, b) {
            remove_level(&mut self.closed, c, (a, b));
        } else {
            remove_level(&mut self.open, c, (a, b));
        }
        self.link(a, b);
    }

    fn link(&mut self, a: Vertex, b: Vertex) {
        self.dormant[a].push(b);
        self.dormant[b].push(a);
        self.dormant_count += 1;
    }

    pub fn set_narrow(&mut self, narrow: bool) {
        self.narrow = narrow;
    }

    fn wake(&mut self, g: &Graph, v: Vertex) {
        for w in std::mem::take(&mut self.dormant[v]) {
            self.unlink(w, v);
            self.restore(g, v, w);
        }
    }

    /// Wakes parked pairs `{w, z}` for which `end` is a neighbor of `w`. In
    /// narrow mode pairs with `end ~ z` stay parked and the rest go to
    /// `pending`.
    fn wake_near(&mut self, g: &Graph, end: Vertex, w: Vertex) {
        if !self.narrow {
            self.wake(g, w);
            return;
        }
        let mut i = 0;
        while i < self.dormant[w].len() {
            let z = self.dormant[w][i];
            if g.has_edge(end, z) {
                i += 1;
            } else {
                self.dormant[w].swap_remove(i);
                self.unlink(z, w);
                self.pending.push(ordered(w, z));
            }
        }
    }

    fn unlink(&mut self, from: Vertex, v: Vertex) {
        let list = &mut self.dormant[from];
        let i = list
            .iter()
            .position(|&u| u == v)
            .expect("dormant lists are symmetric");
        list.swap_remove(i);
        self.dormant_count -= 1;
    }

    fn restore(&mut self, g: &Graph, v: Vertex, w: Vertex) {
        let c = self.count(v, w);
        if g.has_edge(v, w) {
            insert_level(&mut self.closed, c, ordered(v, w));
        } else {
            insert_level(&mut self.open, c, ordered(v, w));
        }
    }

    /// Returns every parked pair to its bucket.
    pub fn wake_all(&mut self, g: &Graph) {
        debug_assert!(self.pending.is_empty());
        for v in 0..self.n {
            if self.dormant_count == 0 {
                break;
            }
            self.wake(g, v);
        }
    }

    /// Settles pairs held by the last `before_toggle`: each one returns to its
    /// bucket if `revive` says so and is parked again otherwise. Call after
    /// the toggle is visible in `g`.
    pub fn after_toggle(&mut self, g: &Graph, mut revive: impl FnMut(&PairTable, Pair) -> bool) {
        for (x, y) in std::mem::take(&mut self.pending) {
            if revive(self, (x, y)) {
                self.restore(g, x, y);
            } else {
                self.link(x, y);
            }
        }
    }

    /// Updates the table for toggling `{a, b}`. Must be called while `g`
    /// still reflects the state before the toggle, and followed by
    /// `after_toggle`.
    pub fn before_toggle(&mut self, g: &Graph, a: Vertex, b: Vertex, add: bool) {
        if self.dormant_count > 0 {
            for end in [a, b] {
                self.wake(g, end);
            }
            for end in [a, b] {
                for &w in g.neighbors(end) {
                    self.wake_near(g, end, w);
                }
            }
        }
        let pair = ordered(a, b);
        let c = self.count(a, b);
        if add {
            if c > 0 {
                remove_level(&mut self.open, c, pair);
            }
            insert_level(&mut self.closed, c, pair);
        } else {
            remove_level(&mut self.closed, c, pair);
            if c > 0 {
                insert_level(&mut self.open, c, pair);
            }
        }
        let delta: i32 = if add { 1 } else { -1 };
        for &w in g.neighbors(a) {
            if w != b {
                self.shift(g, b, w, delta);
            }
        }
        for &w in g.neighbors(b) {
            if w != a {
                self.shift(g, a, w, delta);
            }
        }
    }

    fn shift(&mut self, g: &Graph, u: Vertex, w: Vertex, delta: i32) {
        let k = self.slot(u, w);
        let old = self.counts[k] as usize;
        let new = (old as i64 + delta as i64) as usize;
        self.counts[k] = new as u32;
        let pair = ordered(u, w);
        if g.has_edge(u, w) {
            remove_level(&mut self.closed, old, pair);
            insert_level(&mut self.closed, new, pair);
        } else {
            if old > 0 {
                remove_level(&mut self.open, old, pair);
            }
            if new > 0 {
                insert_level(&mut self.open, new, pair);
            }
        }
    }

    #[cfg(test)]
    pub fn matches(&self, g: &Graph) -> bool {
        let mut awake = self.clone();
        awake.wake_all(g);
        let this = &awake;
        match PairTable::build(g) {
            Ok(fresh) => {
                let trim = |levels: &[BTreeSet<Pair>]| {
                    let mut v: Vec<BTreeSet<Pair>> = levels.to_vec();
                    while v.len() > 1 && v.last().is_some_and(BTreeSet::is_empty) {
                        v.pop();
                    }
                    v
                };
                fresh.counts == this.counts
                    && trim(&fresh.open) == trim(&this.open)
                    && trim(&fresh.closed) == trim(&this.closed)
            }
            Err(_) => false,
        }
    }
}

fn insert_level(levels: &mut Vec<BTreeSet<Pair>>, c: usize, pair: Pair) {
    if levels.len() <= c {
        levels.resize_with(c + 1, BTreeSet::new);
    }
    levels[c].insert(pair);
}

fn remove_level(levels: &mut Vec<BTreeSet<Pair>>, c: usize, pair: Pair) {
    let removed = levels[c].remove(&pair);
    debug_assert!(removed, "pair {pair:?} missing from level {c}");
    while levels.len() > 1 && levels.last().is_some_and(BTreeSet::is_empty) {
        levels.pop();
    }
}
