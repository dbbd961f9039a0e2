use std::collections::BTreeMap;

use super::walk::Walk;
use crate::caps::Caps;
use crate::error::{ensure_cap, Result};

/// Depth-first generation of canonical closed walks with `2s` steps whose
/// every edge (loops included) is traversed an even number of times. Walks
/// are produced in lexicographic order of their vertex sequences.
pub(crate) fn for_each_even_walk(s: usize, mut f: impl FnMut(&[u32])) {
    let steps = 2 * s;
    let dim = steps + 1;
    let mut state = Dfs {
        steps,
        dim,
        path: Vec::with_capacity(dim),
        counts: vec![0u32; dim * dim],
        odd: 0,
        labels: 1,
    };
    state.path.push(0);
    state.run(&mut f);
}

struct Dfs {
    steps: usize,
    dim: usize,
    path: Vec<u32>,
    counts: Vec<u32>,
    odd: usize,
    labels: u32,
}

impl Dfs {
    fn slot(&self, a: u32, b: u32) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        a as usize * self.dim + b as usize
    }

    fn run(&mut self, f: &mut impl FnMut(&[u32])) {
        let done = self.path.len() - 1;
        let cur = *self.path.last().expect("path starts at the root");
        if done == self.steps {
            if cur == 0 && self.odd == 0 {
                f(&self.path);
            }
            return;
        }
        let remaining = self.steps - done;
        if self.odd > remaining {
            return;
        }
        for next in 0..=self.labels.min(self.dim as u32 - 1) {
            let slot = self.slot(cur, next);
            let was_odd = self.counts[slot] % 2 == 1;
            // closing an odd edge lowers the count; anything else raises it
            let new_odd = if was_odd { self.odd - 1 } else { self.odd + 1 };
            if new_odd > remaining - 1 {
                continue;
            }
            let fresh = next == self.labels;
            self.counts[slot] += 1;
            self.odd = new_odd;
            if fresh {
                self.labels += 1;
            }
            self.path.push(next);
            self.run(f);
            self.path.pop();
            if fresh {
                self.labels -= 1;
            }
            self.counts[slot] -= 1;
            self.odd = if was_odd { self.odd + 1 } else { self.odd - 1 };
        }
    }
}

pub fn enumerate_even_walks(s: usize) -> Result<Vec<Walk>> {
    enumerate_even_walks_with_cap(s, Caps::current().walks)
}

pub fn enumerate_even_walks_with_cap(s: usize, cap: usize) -> Result<Vec<Walk>> {
    ensure_cap("even walk half-length", s as u64, cap as u64)?;
    let mut out = Vec::new();
    for_each_even_walk(s, |p| {
        out.push(Walk::new(p.to_vec(), None).expect("generated walks are closed and even"))
    });
    Ok(out)
}

/// Key of a class of walks with equal weight and equal labelling count:
/// number of vertices and the sorted half multiplicities of the edges.
pub type WalkShape = (usize, Vec<u32>);

/// Number of canonical even walks per shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCensus {
    pub s: usize,
    pub classes: BTreeMap<WalkShape, u64>,
}

impl WalkCensus {
    pub fn build(s: usize) -> Result<Self> {
        Self::build_with_cap(s, Caps::current().walks)
    }

    pub fn build_with_cap(s: usize, cap: usize) -> Result<Self> {
        ensure_cap("even walk half-length", s as u64, cap as u64)?;
        let mut classes = BTreeMap::new();
        let dim = 2 * s + 1;
        for_each_even_walk(s, |p| {
            let mut counts = vec![0u32; dim * dim];
            let mut r = 0u32;
            for w in p.windows(2) {
                let (a, b) = (w[0].min(w[1]) as usize, w[0].max(w[1]) as usize);
                counts[a * dim + b] += 1;
                r = r.max(w[1]);
            }
            let mut half: Vec<u32> = counts.iter().filter(|&&c| c > 0).map(|c| c / 2).collect();
            half.sort_unstable();
            *classes.entry((r as usize + 1, half)).or_insert(0) += 1;
        });
        Ok(WalkCensus { s, classes })
    }

    pub fn walk_count(&self) -> u64 {
        self.classes.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::super::frame::frame_of;
    use super::*;

    #[test]
    fn frozen_counts() {
        let w1 = enumerate_even_walks(1).unwrap();
        let v: Vec<&[u32]> = w1.iter().map(|w| w.vertices()).collect();
        assert_eq!(v, vec![&[0, 0, 0][..], &[0, 1, 0][..]]);
        assert_eq!(enumerate_even_walks(2).unwrap().len(), 8);
        assert_eq!(WalkCensus::build(3).unwrap().walk_count(), 50);
        assert_eq!(WalkCensus::build(4).unwrap().walk_count(), 433);
        assert_eq!(enumerate_even_walks(0).unwrap().len(), 1);
    }

    #[test]
    fn output_is_canonical_even_and_sorted() {
        let walks = enumerate_even_walks(4).unwrap();
        for w in &walks {
            assert!(w.is_canonical());
            assert!(frame_of(w).is_even());
            assert_eq!(frame_of(w).total_multiplicity(), 8);
        }
        assert!(walks.windows(2).all(|p| p[0].vertices() < p[1].vertices()));
    }

    #[test]
    fn matches_brute_force_filter() {
        // every canonical sequence of length 2s+1, filtered by evenness
        for s in 1..=3usize {
            let steps = 2 * s;
            let mut count = 0;
            let total = (steps as u32 + 1).pow(steps as u32 - 1);
            for code in 0..total {
                let mut v = vec![0u32];
                let mut c = code;
                for _ in 0..steps - 1 {
                    v.push(c % (steps as u32 + 1));
                    c /= steps as u32 + 1;
                }
                v.push(0);
                let Ok(w) = Walk::new(v, None) else { continue };
                if w.is_canonical() && frame_of(&w).is_even() {
                    count += 1;
                }
            }
            assert_eq!(count, enumerate_even_walks(s).unwrap().len(), "s={s}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_even_walks_with_cap(3, 2).is_err());
        assert!(WalkCensus::build_with_cap(3, 2).is_err());
    }
}
