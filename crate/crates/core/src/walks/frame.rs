use std::collections::BTreeMap;

use super::walk::{edge_key, Walk};

/// Simple graph of a walk: traversal multiplicity per unordered vertex pair
/// (loops included) and self-intersection degree per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Frame {
    pub edges: BTreeMap<(u32, u32), u32>,
    /// Number of marked arrivals at each vertex; every vertex of the walk has
    /// an entry, the root usually with zero.
    pub kappa: BTreeMap<u32, u32>,
}

impl Frame {
    /// Frame of steps `0..steps` of a vertex sequence under the given marks.
    pub fn of_prefix(vertices: &[u32], marks: &[bool], steps: usize) -> Frame {
        let mut frame = Frame::default();
        frame.kappa.insert(vertices[0], 0);
        for t in 0..steps {
            let (a, b) = (vertices[t], vertices[t + 1]);
            *frame.edges.entry(edge_key(a, b)).or_insert(0) += 1;
            let k = frame.kappa.entry(b).or_insert(0);
            if marks[t] {
                *k += 1;
            }
        }
        frame
    }

    pub fn is_even(&self) -> bool {
        self.edges.values().all(|m| m % 2 == 0)
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.edges.values().sum()
    }

    pub fn multiplicity(&self, a: u32, b: u32) -> u32 {
        self.edges.get(&edge_key(a, b)).copied().unwrap_or(0)
    }

    pub fn kappa(&self, v: u32) -> u32 {
        self.kappa.get(&v).copied().unwrap_or(0)
    }

    /// Half multiplicities (`multiplicity / 2`) sorted ascending; `None` if any
    /// edge is traversed an odd number of times.
    pub fn half_multiplicities(&self) -> Option<Vec<u32>> {
        if !self.is_even() {
            return None;
        }
        let mut h: Vec<u32> = self.edges.values().map(|m| m / 2).collect();
        h.sort_unstable();
        Some(h)
    }
}

pub fn frame_of(w: &Walk) -> Frame {
    Frame::of_prefix(w.vertices(), &w.effective_marks(), w.steps())
}
