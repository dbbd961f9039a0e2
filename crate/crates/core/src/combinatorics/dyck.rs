use std::fmt;
use std::str::FromStr;

use crate::caps::Caps;
use crate::error::{ensure_cap, invalid, Error, Result};

/// One step of a Dyck path. Ascending steps are the marked ones.
///
/// The derived order puts `Up` before `Down`, which is the lexicographic
/// order used for every enumeration in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn is_up(self) -> bool {
        self == Step::Up
    }

    fn symbol(self) -> char {
        match self {
            Step::Up => '+',
            Step::Down => '-',
        }
    }
}

/// A sequence of `+`/`-` steps whose prefixes never dip below zero and that
/// ends at height zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        check_steps(&steps)?;
        Ok(DyckPath { steps })
    }

    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(check_steps(&steps).is_ok());
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of ascents, i.e. `len / 2`.
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Concatenation of two Dyck paths is again a Dyck path.
    pub fn concat(&self, other: &DyckPath) -> DyckPath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        DyckPath { steps }
    }
}

fn check_steps(steps: &[Step]) -> Result<()> {
    let mut height: i64 = 0;
    for (i, step) in steps.iter().enumerate() {
        height += if step.is_up() { 1 } else { -1 };
        if height < 0 {
            return Err(invalid(format!("Dyck prefix goes negative at step {i}")));
        }
    }
    if height != 0 {
        return Err(invalid(format!("Dyck path ends at height {height}")));
    }
    Ok(())
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    /// Accepts `+` for ascents and either `-` or `−` (U+2212) for descents.
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(Step::Up),
                '-' | '\u{2212}' => Ok(Step::Down),
                other => Err(invalid(format!("unexpected symbol {other:?} in Dyck path"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// Lexicographic stream of all Dyck paths of a given semilength.
#[derive(Debug, Clone)]
pub struct DyckPaths {
    semilength: usize,
    next: Option<Vec<Step>>,
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let current = self.next.take()?;
        self.next = successor(&current, self.semilength);
        Some(DyckPath { steps: current })
    }
}

// Smallest path strictly greater than `steps`: flip the rightmost ascent that
// can become a descent, then refill with all remaining ascents first.
fn successor(steps: &[Step], semilength: usize) -> Option<Vec<Step>> {
    let len = steps.len();
    let mut ups_before = vec![0usize; len + 1];
    for (i, s) in steps.iter().enumerate() {
        ups_before[i + 1] = ups_before[i] + usize::from(s.is_up());
    }
    for i in (0..len).rev() {
        if !steps[i].is_up() {
            continue;
        }
        let ups = ups_before[i];
        let downs = i - ups;
        // height after flipping must be nonnegative, and a descent must be available
        if ups < downs + 1 || downs + 1 > semilength {
            continue;
        }
        let mut out = steps[..i].to_vec();
        out.push(Step::Down);
        let remaining_ups = semilength - ups;
        out.extend(std::iter::repeat_n(Step::Up, remaining_ups));
        out.resize(len, Step::Down);
        return Some(out);
    }
    None
}

/// Enumerate every Dyck path of semilength `s` in lexicographic order, under the
/// process-wide cap.
pub fn enumerate_dyck(s: usize) -> Result<DyckPaths> {
    enumerate_dyck_with_cap(s, Caps::current().dyck)
}

pub fn enumerate_dyck_with_cap(s: usize, cap: usize) -> Result<DyckPaths> {
    ensure_cap("Dyck enumeration semilength", s as u64, cap as u64)?;
    let mut first = vec![Step::Up; s];
    first.resize(2 * s, Step::Down);
    Ok(DyckPaths {
        semilength: s,
        next: Some(first),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: DyckPath = "+−+-".parse().unwrap();
        assert_eq!(p.to_string(), "+-+-");
        assert!("+--+".parse::<DyckPath>().is_err());
        assert!("++-".parse::<DyckPath>().is_err());
        assert!("+x".parse::<DyckPath>().is_err());
        assert!("".parse::<DyckPath>().unwrap().is_empty());
    }

    #[test]
    fn small_enumerations() {
        let one: Vec<String> = enumerate_dyck(1).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(one, ["+-"]);
        let zero: Vec<DyckPath> = enumerate_dyck(0).unwrap().collect();
        assert_eq!(zero, [DyckPath::empty()]);
        let three: Vec<String> = enumerate_dyck(3).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(three, ["+++---", "++-+--", "++--+-", "+-++--", "+-+-+-"]);
    }

    #[test]
    fn output_is_strictly_increasing() {
        let all: Vec<DyckPath> = enumerate_dyck(7).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_dyck_with_cap(15, 14),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_dyck_with_cap(14, 14).is_ok());
    }
}
