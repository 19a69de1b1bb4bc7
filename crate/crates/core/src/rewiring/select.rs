//! Randomized walks over bucketed pairs.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Pair;

use super::Exclusions;

/// Draws pairs without replacement, each with probability proportional to
/// `weight(level)` among the pairs not yet drawn or excluded.
///
/// Draws are made from the full distribution and redrawn on repeats, which is
/// exact for the conditional distribution. Once repeats dominate, the
/// remaining pairs are materialized and ordered by exponential race keys.
pub(crate) struct WeightedWalk<'a, W: Fn(usize) -> f64> {
    levels: &'a [BTreeSet<Pair>],
    weight: W,
    level_mass: Vec<f64>,
    total: f64,
    drawn: HashSet<Pair>,
    drawn_mass: f64,
    misses: u32,
    tail: Option<std::vec::IntoIter<(Pair, usize)>>,
}

const MAX_MISSES: u32 = 32;

impl<'a, W: Fn(usize) -> f64> WeightedWalk<'a, W> {
    pub fn new(levels: &'a [BTreeSet<Pair>], weight: W) -> Self {
        let level_mass: Vec<f64> = levels
            .iter()
            .enumerate()
            .map(|(c, set)| weight(c) * set.len() as f64)
            .collect();
        let total = level_mass.iter().sum();
        WeightedWalk {
            levels,
            weight,
            level_mass,
            total,
            drawn: HashSet::new(),
            drawn_mass: 0.0,
            misses: 0,
            tail: None,
        }
    }

    pub fn next(&mut self, rng: &mut ChaCha8Rng, excluded: &Exclusions) -> Option<(Pair, usize)> {
        loop {
            if let Some(tail) = self.tail.as_mut() {
                return tail.next();
            }
            if self.total <= 0.0 {
                return None;
            }
            if self.misses >= MAX_MISSES || self.drawn_mass >= 0.5 * self.total {
                self.tail = Some(self.materialize(rng, excluded).into_iter());
                continue;
            }
            let (pair, c) = self.draw(rng);
            if self.drawn.contains(&pair) || excluded.contains(pair) {
                self.misses += 1;
                continue;
            }
            self.misses = 0;
            self.drawn.insert(pair);
            self.drawn_mass += (self.weight)(c);
            return Some((pair, c));
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> (Pair, usize) {
        let mut r = rng.gen_range(0.0..self.total);
        let mut last = 0;
        for (c, &mass) in self.level_mass.iter().enumerate() {
            if mass <= 0.0 {
                continue;
            }
            last = c;
            if r < mass {
                break;
            }
            r -= mass;
        }
        let set = &self.levels[last];
        let i = ((r / (self.weight)(last)) as usize).min(set.len() - 1);
        (*set.iter().nth(i).expect("index within level"), last)
    }

    fn materialize(&self, rng: &mut ChaCha8Rng, excluded: &Exclusions) -> Vec<(Pair, usize)> {
        let mut keyed: Vec<(f64, Pair, usize)> = Vec::new();
        for (c, set) in self.levels.iter().enumerate() {
            let w = (self.weight)(c);
            if w <= 0.0 {
                continue;
            }
            for &pair in set {
                if self.drawn.contains(&pair) || excluded.contains(pair) {
                    continue;
                }
                let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                keyed.push((-u.ln() / w, pair, c));
            }
        }
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        keyed.into_iter().map(|(_, p, c)| (p, c)).collect()
    }
}
