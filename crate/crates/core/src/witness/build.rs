use std::collections::BTreeSet;

use super::params::{WitnessChoice, WitnessParams, CORE_HALF_MULTIPLICITY};
use super::select::MIN_EDGE_DISTANCE;
use super::validate::validate_witness;
use crate::combinatorics::{t4_insert_tagged, Origin, PlaneTree, Step};
use crate::error::{invalid, Error, Result};
use crate::walks::{check_resolution, Walk};

/// The inserted tree `T'` underlying the X'-part: the T4 image of the
/// skeleton followed by the completion, with the vertices playing a role in
/// the core gluing.
#[derive(Debug, Clone)]
pub struct InsertedTree {
    pub steps: Vec<Step>,
    pub tree: PlaneTree,
    /// Vertex of `T'` visited at each instant `0..=2s'`.
    pub vertex_at: Vec<usize>,
    /// For each selected edge: its child in `T'` and the four supplementary
    /// leaves created after its descent.
    pub core: Vec<(usize, [usize; 4])>,
}

impl InsertedTree {
    pub fn new(
        skeleton: &PlaneTree,
        principal_edges: &[usize],
        completion: &crate::combinatorics::DyckPath,
    ) -> Self {
        let tagged = t4_insert_tagged(&skeleton.to_dyck());
        let mut steps: Vec<Step> = tagged.iter().map(|(s, _)| *s).collect();
        steps.extend_from_slice(completion.steps());
        let mut origin_of = vec![None; steps.len() / 2 + 1];
        let mut vertex_at = Vec::with_capacity(steps.len() + 1);
        let mut stack = vec![0usize];
        let mut created = 0usize;
        vertex_at.push(0);
        for (t, step) in steps.iter().enumerate() {
            match step {
                Step::Up => {
                    created += 1;
                    stack.push(created);
                    origin_of[created] = tagged.get(t).map(|(_, o)| *o);
                }
                Step::Down => {
                    stack.pop();
                }
            }
            vertex_at.push(*stack.last().expect("root stays on the stack"));
        }
        let tree = PlaneTree::from_dyck(
            &crate::combinatorics::DyckPath::new(steps.clone())
                .expect("concatenation of Dyck paths"),
        );
        let core = principal_edges
            .iter()
            .map(|&e| {
                let mut leaves = [0usize; 4];
                let mut child = 0;
                for (v, o) in origin_of.iter().enumerate() {
                    match o {
                        Some(Origin::Original { edge }) if *edge == e => child = v,
                        Some(Origin::Inserted { edge, slot }) if *edge == e => leaves[*slot] = v,
                        _ => {}
                    }
                }
                (child, leaves)
            })
            .collect();
        InsertedTree {
            steps,
            tree,
            vertex_at,
            core,
        }
    }

    /// Vertices absorbed by the core gluing.
    pub fn core_vertices(&self) -> BTreeSet<usize> {
        self.core
            .iter()
            .flat_map(|(c, leaves)| std::iter::once(*c).chain(leaves.iter().copied()))
            .collect()
    }
}

/// The X'-part of a witness walk, before canonical relabelling: vertex labels
/// are `T'` vertex ids after gluing.
#[derive(Debug, Clone)]
pub struct XPrime {
    pub vertices: Vec<u32>,
    pub marks: Vec<bool>,
    pub zeta: u32,
    pub xi: Vec<u32>,
}

fn check_choice(p: &WitnessParams, c: &WitnessChoice) -> Result<()> {
    let t = &c.skeleton;
    if t.edge_count() != p.s_pp {
        return Err(invalid(format!(
            "skeleton has {} edges, expected {}",
            t.edge_count(),
            p.s_pp
        )));
    }
    if t.max_children() > p.d0.get() {
        return Err(invalid(format!(
            "skeleton has a vertex with more than {} children",
            p.d0.get()
        )));
    }
    let e = &c.principal_edges;
    if e.len() != p.big_d
        || e.windows(2).any(|w| w[0] >= w[1])
        || e.iter().any(|&x| x == 0 || x > p.s_pp)
    {
        return Err(invalid(format!(
            "need {} increasing skeleton edges in 1..={}",
            p.big_d, p.s_pp
        )));
    }
    for (i, &a) in e.iter().enumerate() {
        for &b in &e[i + 1..] {
            if p.distance.between(t, a, b) < MIN_EDGE_DISTANCE {
                return Err(invalid(format!(
                    "edges {a} and {b} are closer than {MIN_EDGE_DISTANCE}"
                )));
            }
        }
    }
    if c.completion.semilength() != p.extra {
        return Err(invalid(format!(
            "completion semilength {} differs from {}",
            c.completion.semilength(),
            p.extra
        )));
    }
    if c.si_pairs.len() != p.nu2 {
        return Err(invalid(format!(
            "{} self-intersection pairs, expected {}",
            c.si_pairs.len(),
            p.nu2
        )));
    }
    if c.trip_schedule.len() != p.l - p.big_d || c.trip_schedule.iter().any(|&j| j >= p.big_d) {
        return Err(invalid(format!(
            "trip schedule needs {} entries below {}",
            p.l - p.big_d,
            p.big_d
        )));
    }
    Ok(())
}

/// Glue the inserted tree into the X'-part and check that every non-marked
/// step is uniquely resolved.
pub fn build_x_prime(p: &WitnessParams, c: &WitnessChoice) -> Result<XPrime> {
    check_choice(p, c)?;
    let layout = InsertedTree::new(&c.skeleton, &c.principal_edges, &c.completion);
    build_x_prime_on(p, c, &layout)
}

pub(crate) fn build_x_prime_on(
    p: &WitnessParams,
    c: &WitnessChoice,
    layout: &InsertedTree,
) -> Result<XPrime> {
    let nv = layout.tree.vertex_count();
    let mut pi: Vec<u32> = (0..nv as u32).collect();
    let zeta = layout.core[0].0 as u32;
    for (child, leaves) in &layout.core {
        pi[*child] = zeta;
        for &l in leaves {
            pi[l] = zeta;
        }
    }
    let core = layout.core_vertices();
    let mut used = BTreeSet::new();
    for &(y, x) in &c.si_pairs {
        if y >= x || x >= nv || y == 0 {
            return Err(invalid(format!(
                "self-intersection pair ({y}, {x}) is not an ordered pair of non-root vertices"
            )));
        }
        if core.contains(&y) || core.contains(&x) || !used.insert(y) || !used.insert(x) {
            return Err(invalid(format!(
                "self-intersection pair ({y}, {x}) reuses a glued vertex"
            )));
        }
        pi[x] = pi[y];
    }
    let xi = layout
        .core
        .iter()
        .map(|(child, _)| pi[layout.tree.parent(*child).expect("edge child has a parent")])
        .collect();
    let vertices: Vec<u32> = layout.vertex_at.iter().map(|&v| pi[v]).collect();
    let marks: Vec<bool> = layout.steps.iter().map(|s| s.is_up()).collect();
    debug_assert_eq!(marks.iter().filter(|&&m| m).count(), p.s_prime());
    check_resolution(&vertices, &marks, 0..marks.len())?;
    if let Some(t) = vertices.windows(2).position(|w| w[0] == w[1]) {
        return Err(Error::Rejected(format!("loop at instant {t}")));
    }
    Ok(XPrime {
        vertices,
        marks,
        zeta,
        xi,
    })
}

/// Append the bridge step, the trips and the final return to an X'-part.
pub fn attach_y_part(p: &WitnessParams, x: &XPrime, schedule: &[usize]) -> Result<Walk> {
    let mut v = x.vertices.clone();
    let mut m = x.marks.clone();
    let rho = v[0];
    v.push(x.zeta);
    m.push(true);
    let dests =
        x.xi.iter()
            .copied()
            .chain(schedule.iter().map(|&j| x.xi[j]));
    for d in dests {
        v.extend([d, x.zeta]);
        m.extend([true, false]);
    }
    v.push(rho);
    m.push(false);
    debug_assert_eq!(v.len(), 2 * p.s() + 1);
    Ok(Walk::new(v, Some(m))?.canonical())
}

/// Build the walk of a choice; the result is guaranteed to pass
/// [`validate_witness`].
pub fn build_witness_walk(p: &WitnessParams, c: &WitnessChoice) -> Result<Walk> {
    let x = build_x_prime(p, c)?;
    let w = attach_y_part(p, &x, &c.trip_schedule)?;
    let report = validate_witness(&w, p);
    if !report.passed() {
        return Err(Error::Rejected(report.failures().join("; ")));
    }
    Ok(w)
}

/// Weight of a witness walk factorized as in the moment estimate: product of
/// `E|a|^{m}` over non-core edges times `E|a|^{12 + 2 l_i}` over the core
/// (the bridge joins the core edge when its far end is the root).
pub fn factorized_weight(
    w: &Walk,
    p: &WitnessParams,
    m: &crate::walks::MomentProfile,
) -> Result<num_rational::BigRational> {
    let v = w.vertices();
    let sp = p.s_prime();
    let zeta = v[2 * sp + 1];
    let frame = crate::walks::frame_of(w);
    let dests: Vec<u32> = (0..p.l).map(|i| v[2 * sp + 2 + 2 * i]).collect();
    let xi = &dests[..p.big_d];
    let mut acc = num_rational::BigRational::from_integer(1.into());
    for (&(a, b), &mult) in &frame.edges {
        if xi
            .iter()
            .any(|&x| crate::walks::edge_key(x, zeta) == (a, b))
        {
            continue;
        }
        acc *= m.even_moment_exact(mult / 2)?;
    }
    for &x in xi {
        let extra = dests.iter().filter(|&&d| d == x).count() as u32 - 1;
        let bridge = u32::from(x == v[0]);
        acc *= m.even_moment_exact(CORE_HALF_MULTIPLICITY as u32 + 1 + extra + bridge)?;
    }
    Ok(acc)
}
