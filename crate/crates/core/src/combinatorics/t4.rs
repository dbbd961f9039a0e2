//! The T4 insertion: after every descent, append four `+-` excursions.

use crate::error::{invalid, Result};

use super::dyck::{DyckPath, Step};

/// Inserted after every descending step.
pub const T4_BLOCK: [Step; 8] = [
    Step::Up,
    Step::Down,
    Step::Up,
    Step::Down,
    Step::Up,
    Step::Down,
    Step::Up,
    Step::Down,
];

/// Where a step of an inserted path comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// Step of the original path; `edge` is the 1-based index of the ascent it
    /// belongs to (the edge id in the original tree).
    Original { edge: usize },
    /// Step of the `slot`-th (0..4) excursion appended after the descent of `edge`.
    Inserted { edge: usize, slot: usize },
}

pub fn t4_insert(path: &DyckPath) -> DyckPath {
    let steps = t4_insert_tagged(path).into_iter().map(|(s, _)| s).collect();
    DyckPath::from_steps_unchecked(steps)
}

/// Same as [`t4_insert`] but keeps track of which original edge each step
/// belongs to.
pub fn t4_insert_tagged(path: &DyckPath) -> Vec<(Step, Origin)> {
    let mut out = Vec::with_capacity(path.len() * 5);
    let mut open_edges = Vec::new();
    let mut next_edge = 1;
    for &step in path.steps() {
        match step {
            Step::Up => {
                open_edges.push(next_edge);
                out.push((step, Origin::Original { edge: next_edge }));
                next_edge += 1;
            }
            Step::Down => {
                let edge = open_edges.pop().expect("valid Dyck path");
                out.push((step, Origin::Original { edge }));
                for (i, &s) in T4_BLOCK.iter().enumerate() {
                    out.push((s, Origin::Inserted { edge, slot: i / 2 }));
                }
            }
        }
    }
    out
}

/// Recover the original path from a T4-inserted one.
pub fn t4_restrict(path: &DyckPath) -> Result<DyckPath> {
    let steps = path.steps();
    let mut out = Vec::with_capacity(steps.len() / 5);
    let mut i = 0;
    while i < steps.len() {
        let step = steps[i];
        out.push(step);
        i += 1;
        if step == Step::Down {
            let block = steps
                .get(i..i + T4_BLOCK.len())
                .ok_or_else(|| invalid(format!("truncated T4 block after step {}", i - 1)))?;
            if block != T4_BLOCK {
                return Err(invalid(format!("missing T4 block after step {}", i - 1)));
            }
            i += T4_BLOCK.len();
        }
    }
    DyckPath::new(out)
}
