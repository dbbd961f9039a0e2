use std::collections::BTreeSet;

use super::params::{WitnessParams, CORE_HALF_MULTIPLICITY};
use crate::walks::{check_resolution, derived_marks, edge_key, Frame, Walk};

/// Outcome of the structural checks on a walk claimed to be a witness.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WitnessReport {
    /// Closed walk of length `2s` with every edge traversed an even number of times.
    pub even_closed: bool,
    pub vertex_count: usize,
    pub expected_vertices: usize,
    pub zeta: Option<u32>,
    pub xi: Vec<u32>,
    /// Bridge, trip and return structure recognised and the core edges have
    /// X'-multiplicity 10 and multiplicity `12 + 2 l_i` outside the bridge and
    /// final steps.
    pub core_ok: bool,
    pub core_detail: Vec<String>,
    /// Vertices with self-intersection degree 2 in the X'-part.
    pub simple_self_intersections: usize,
    /// Marked arrivals at `zeta` inside the X'-part.
    pub zeta_arrivals_x_prime: u32,
    /// Same, plus the arrival by the bridge step.
    pub zeta_arrivals_with_bridge: u32,
    pub resolution_ok: bool,
    /// Every non-core X'-edge has multiplicity 2 or 4.
    pub non_core_ok: bool,
    /// Stored marks, if any, agree with the X'/Y mark pattern.
    pub marks_ok: bool,
    /// Extra trips per core edge, in the order of the first `D` trips.
    pub extra_trips: Vec<usize>,
    expected: Expected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Expected {
    nu2: usize,
    zeta_arrivals: u32,
}

impl WitnessReport {
    pub fn vertices_ok(&self) -> bool {
        self.vertex_count == self.expected_vertices
    }

    pub fn self_intersections_ok(&self) -> bool {
        self.simple_self_intersections == self.expected.nu2
    }

    pub fn zeta_degree_ok(&self) -> bool {
        self.zeta_arrivals_x_prime == self.expected.zeta_arrivals
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.even_closed {
            out.push("walk is not an even closed walk of length 2s".to_string());
        }
        if !self.vertices_ok() {
            out.push(format!(
                "{} vertices, expected {}",
                self.vertex_count, self.expected_vertices
            ));
        }
        if !self.core_ok {
            out.push(format!(
                "core check failed: {}",
                self.core_detail.join(", ")
            ));
        }
        if !self.self_intersections_ok() {
            out.push(format!(
                "{} simple self-intersections, expected {}",
                self.simple_self_intersections, self.expected.nu2
            ));
        }
        if !self.zeta_degree_ok() {
            out.push(format!(
                "{} marked X'-arrivals at zeta, expected {}",
                self.zeta_arrivals_x_prime, self.expected.zeta_arrivals
            ));
        }
        if !self.resolution_ok {
            out.push("a non-marked X'-step is not uniquely resolved".to_string());
        }
        if !self.non_core_ok {
            out.push("a non-core X'-edge has multiplicity other than 2 or 4".to_string());
        }
        if !self.marks_ok {
            out.push("stored marks disagree with the witness pattern".to_string());
        }
        out
    }
}

/// Check a walk against the witness structure for the given sizes. Only the
/// vertex sequence is used; stored marks are compared, not trusted.
pub fn validate_witness(w: &Walk, p: &WitnessParams) -> WitnessReport {
    let mut r = WitnessReport {
        vertex_count: w.vertex_count(),
        expected_vertices: p.expected_vertices(),
        expected: Expected {
            nu2: p.nu2,
            zeta_arrivals: (CORE_HALF_MULTIPLICITY * p.big_d) as u32,
        },
        ..Default::default()
    };
    let v = w.vertices();
    let s = p.s();
    let sp = p.s_prime();
    if w.steps() != 2 * s {
        r.core_detail
            .push(format!("length {} instead of {}", w.steps(), 2 * s));
        return r;
    }
    let whole = Frame::of_prefix(v, &w.effective_marks(), w.steps());
    r.even_closed = whole.is_even();

    let rho = v[0];
    let zeta = v[2 * sp + 1];
    r.zeta = Some(zeta);
    let mut detail = Vec::new();
    if v[2 * sp] != rho {
        detail.push("X'-part does not end at the root".to_string());
    }
    let mut dests = Vec::with_capacity(p.l);
    for i in 0..p.l {
        if v[2 * sp + 1 + 2 * i] != zeta || v[2 * sp + 3 + 2 * i] != zeta {
            detail.push(format!("trip {i} does not start and end at zeta"));
        }
        dests.push(v[2 * sp + 2 + 2 * i]);
    }
    r.xi = dests[..p.big_d.min(dests.len())].to_vec();
    let distinct: BTreeSet<u32> = r.xi.iter().copied().collect();
    if distinct.len() != p.big_d || distinct.contains(&zeta) {
        detail.push("first D trips do not visit D distinct vertices other than zeta".to_string());
    }
    if dests.iter().any(|d| !distinct.contains(d)) {
        detail.push("a trip visits a vertex outside the core".to_string());
    }

    let x_marks = derived_marks(&v[..=2 * sp]);
    let x_frame = Frame::of_prefix(v, &x_marks, 2 * sp);
    let core_keys: BTreeSet<(u32, u32)> = r.xi.iter().map(|&x| edge_key(x, zeta)).collect();
    for (j, &x) in r.xi.iter().enumerate() {
        let key = edge_key(x, zeta);
        let in_x = x_frame.multiplicity(x, zeta);
        if in_x != 2 * CORE_HALF_MULTIPLICITY as u32 {
            detail.push(format!("core edge {j} passed {in_x} times in the X'-part"));
        }
        let trips = dests.iter().filter(|&&d| d == x).count();
        let extra = trips.saturating_sub(1);
        r.extra_trips.push(extra);
        let outside_bridge = (0..2 * s)
            .filter(|&t| t != 2 * sp && t != 2 * s - 1)
            .filter(|&t| edge_key(v[t], v[t + 1]) == key)
            .count();
        if outside_bridge != 12 + 2 * extra {
            detail.push(format!(
                "core edge {j} passed {outside_bridge} times, expected {}",
                12 + 2 * extra
            ));
        }
    }
    if r.extra_trips.iter().sum::<usize>() != p.l.saturating_sub(p.big_d) && detail.is_empty() {
        detail.push("extra trips do not add up to L - D".to_string());
    }
    r.core_ok = detail.is_empty();
    r.core_detail = detail;

    r.simple_self_intersections = x_frame
        .kappa
        .iter()
        .filter(|(&b, &k)| k == 2 && b != zeta)
        .count();
    r.zeta_arrivals_x_prime = x_frame.kappa(zeta);
    r.zeta_arrivals_with_bridge = r.zeta_arrivals_x_prime + 1;
    r.resolution_ok = check_resolution(v, &x_marks, 0..2 * sp).is_ok();
    r.non_core_ok = x_frame
        .edges
        .iter()
        .filter(|(k, _)| !core_keys.contains(k))
        .all(|(_, &m)| m == 2 || m == 4);

    let mut expected_marks = x_marks;
    expected_marks.push(true);
    for _ in 0..p.l {
        expected_marks.extend([true, false]);
    }
    expected_marks.push(false);
    r.marks_ok = w.marks().is_none_or(|m| m == expected_marks.as_slice());
    r
}
