use std::collections::HashSet;

use num_bigint::BigUint;

use super::build::{attach_y_part, build_x_prime_on, InsertedTree, XPrime};
use super::params::{WitnessChoice, WitnessParams, CORE_HALF_MULTIPLICITY};
use super::select::{ln_selection_lower_bound, select_principal_edges};
use crate::caps::Caps;
use crate::combinatorics::{
    count_tilde_t, enumerate_dyck, tilde_t_lower_bound, DyckPath, FactoredBound, PlaneTree,
};
use crate::error::{ensure_cap, Error, Result};
use crate::numeric::ln_factorial_real;
use crate::walks::Walk;

/// Factors of the lower estimate for the family size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyLowerBound {
    /// Bound for the number of inserted trees with bounded skeleton degrees.
    pub tilde_t: FactoredBound,
    /// Log of `(s'' - D d0^3)^D / D!`, if the base is positive.
    pub ln_selections: Option<f64>,
    /// Log of `((s' - 5D - 2 nu2)^2 / 2)^{nu2} / nu2!`, if the base is positive.
    pub ln_placements: Option<f64>,
    /// Log of `D^{L-D}`.
    pub ln_trips: f64,
}

impl FamilyLowerBound {
    /// Log of the full product when every factor is positive.
    pub fn ln(&self) -> Option<f64> {
        Some(self.tilde_t.ln()? + self.ln_selections? + self.ln_placements? + self.ln_trips)
    }
}

pub fn family_lower_bound(p: &WitnessParams) -> FamilyLowerBound {
    let sp = p.s_prime() as f64;
    let d = p.big_d as f64;
    let nu = p.nu2 as f64;
    let base = sp - CORE_HALF_MULTIPLICITY as f64 * d - 2.0 * nu;
    let ln_placements = if p.nu2 == 0 {
        Some(0.0)
    } else if base > 0.0 {
        Some(nu * (base * base / 2.0).ln() - ln_factorial_real(nu))
    } else {
        None
    };
    FamilyLowerBound {
        tilde_t: tilde_t_lower_bound(sp, p.d0.get() as f64),
        ln_selections: ln_selection_lower_bound(p.s_pp as f64, d, p.d0.get() as f64),
        ln_placements,
        ln_trips: (p.l - p.big_d) as f64 * d.ln(),
    }
}

/// Exact size of the family together with the per-factor counts used to
/// compare against the estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyCount {
    pub params: WitnessParams,
    /// Skeletons with at most `d0` children per vertex.
    pub skeletons: u64,
    /// Completion structures on the leftover steps.
    pub completions: u64,
    /// Distance-valid edge selections summed over skeletons.
    pub selections: u64,
    /// Fewest distance-valid selections over all skeletons.
    pub min_selections: Option<u64>,
    /// Choices of skeleton, selection, completion and placements whose
    /// X'-part is well formed.
    pub x_parts: u64,
    /// Same choices rejected by the gluing checks.
    pub rejected: u64,
    /// Fewest well-formed placements over the (skeleton, selection,
    /// completion) triples that admit a well-formed X'-part.
    pub min_placements: Option<u64>,
    /// `x_parts * D^{L-D}`.
    pub exact: BigUint,
    /// Walks produced by direct generation and how many were distinct, when
    /// within the generation cap.
    pub generated: Option<u64>,
    pub distinct: Option<u64>,
    /// Exact number of inserted trees (for the first factor).
    pub inserted_trees: BigUint,
    pub lower_bound: FamilyLowerBound,
}

impl FamilyCount {
    /// True when direct generation matches the factorized count and produced
    /// no duplicates.
    pub fn consistent(&self) -> bool {
        match (self.generated, self.distinct) {
            (Some(g), Some(d)) => BigUint::from(g) == self.exact && g == d,
            _ => true,
        }
    }
}

fn skeletons(p: &WitnessParams) -> Result<Vec<PlaneTree>> {
    Ok(enumerate_dyck(p.s_pp)?
        .map(|d| PlaneTree::from_dyck(&d))
        .filter(|t| t.max_children() <= p.d0.get())
        .collect())
}

/// All sets of `k` disjoint pairs `(y, x)`, `y < x`, from `candidates`, in
/// lexicographic order of the sorted pair lists.
fn placements(candidates: &[usize], k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for (i, &y) in candidates.iter().enumerate() {
        for &x in &candidates[i + 1..] {
            pairs.push((y, x));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(
        pairs: &[(usize, usize)],
        from: usize,
        k: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..pairs.len() {
            let (y, x) = pairs[i];
            if cur
                .iter()
                .all(|&(a, b)| a != y && a != x && b != y && b != x)
            {
                cur.push((y, x));
                go(pairs, i + 1, k, cur, out);
                cur.pop();
            }
        }
    }
    go(&pairs, 0, k, &mut cur, &mut out);
    out
}

/// All trip schedules of length `len` over `0..d`, lexicographic.
pub fn trip_schedules(d: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (d as u64).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (code % d as u64) as usize;
            code /= d as u64;
        }
        v
    })
}

/// Visit every well-formed X'-part in deterministic order (skeleton, edge
/// subset, completion, placements). Returns per-factor statistics.
fn for_each_x_part(p: &WitnessParams, mut f: impl FnMut(&WitnessChoice, &XPrime)) -> Result<Stats> {
    let trees = skeletons(p)?;
    let completions: Vec<DyckPath> = enumerate_dyck(p.extra)?.collect();
    let mut st = Stats {
        skeletons: trees.len() as u64,
        completions: completions.len() as u64,
        ..Default::default()
    };
    for t in &trees {
        let selections = select_principal_edges(t, p.big_d, p.distance);
        st.selections += selections.len() as u64;
        st.min_selections = Some(st.min_selections.map_or(selections.len() as u64, |m: u64| {
            m.min(selections.len() as u64)
        }));
        for e in &selections {
            for comp in &completions {
                let layout = InsertedTree::new(t, e, comp);
                let core = layout.core_vertices();
                let candidates: Vec<usize> = (1..layout.tree.vertex_count())
                    .filter(|v| !core.contains(v))
                    .collect();
                let mut good = 0u64;
                for si in placements(&candidates, p.nu2) {
                    let choice = WitnessChoice {
                        skeleton: t.clone(),
                        principal_edges: e.clone(),
                        completion: comp.clone(),
                        si_pairs: si,
                        trip_schedule: Vec::new(),
                    };
                    match build_x_prime_on(p, &choice, &layout) {
                        Ok(x) if x_part_is_member(p, &x) => {
                            good += 1;
                            f(&choice, &x);
                        }
                        Ok(_) | Err(Error::GluingConflict { .. }) | Err(Error::Rejected(_)) => {
                            st.rejected += 1
                        }
                        Err(e) => return Err(e),
                    }
                }
                st.x_parts += good;
                if good > 0 {
                    st.min_placements = Some(st.min_placements.map_or(good, |m: u64| m.min(good)));
                }
            }
        }
    }
    Ok(st)
}

fn x_part_is_member(p: &WitnessParams, x: &XPrime) -> bool {
    let probe: Vec<usize> = vec![0; p.l - p.big_d];
    attach_y_part(p, x, &probe)
        .map(|w| super::validate::validate_witness(&w, p).passed())
        .unwrap_or(false)
}

#[derive(Debug, Default)]
struct Stats {
    skeletons: u64,
    completions: u64,
    selections: u64,
    min_selections: Option<u64>,
    x_parts: u64,
    rejected: u64,
    min_placements: Option<u64>,
}

pub fn family_count(p: &WitnessParams) -> Result<FamilyCount> {
    family_count_with_cap(p, Caps::current().witness_walks)
}

pub fn family_count_with_cap(p: &WitnessParams, walk_cap: u64) -> Result<FamilyCount> {
    let schedules: Vec<Vec<usize>> = trip_schedules(p.big_d, p.l - p.big_d).collect();
    let mut parts = Vec::new();
    let mut too_many = false;
    let st = for_each_x_part(p, |c, x| {
        if !too_many
            && ((parts.len() + 1) as u64).saturating_mul(schedules.len() as u64) <= walk_cap
        {
            parts.push((c.clone(), x.clone()));
        } else {
            too_many = true;
        }
    })?;
    let exact = BigUint::from(st.x_parts) * BigUint::from(p.big_d).pow((p.l - p.big_d) as u32);
    let (generated, distinct) = if too_many {
        (None, None)
    } else {
        let mut seen = HashSet::new();
        let mut count = 0u64;
        for (_, x) in &parts {
            for sched in &schedules {
                let w = attach_y_part(p, x, sched)?;
                seen.insert(w.vertices().to_vec());
                count += 1;
            }
        }
        (Some(count), Some(seen.len() as u64))
    };
    Ok(FamilyCount {
        params: *p,
        skeletons: st.skeletons,
        completions: st.completions,
        selections: st.selections,
        min_selections: st.min_selections,
        x_parts: st.x_parts,
        rejected: st.rejected,
        min_placements: st.min_placements,
        exact,
        generated,
        distinct,
        inserted_trees: count_tilde_t(p.s_prime(), p.d0),
        lower_bound: family_lower_bound(p),
    })
}

/// Every member of the family as a walk, in generation order.
pub fn family_walks(p: &WitnessParams) -> Result<Vec<(WitnessChoice, Walk)>> {
    family_walks_with_cap(p, Caps::current().witness_walks)
}

pub fn family_walks_with_cap(p: &WitnessParams, cap: u64) -> Result<Vec<(WitnessChoice, Walk)>> {
    let schedules: Vec<Vec<usize>> = trip_schedules(p.big_d, p.l - p.big_d).collect();
    let mut out = Vec::new();
    let mut overflow = 0u64;
    let mut failure = None;
    for_each_x_part(p, |c, x| {
        if failure.is_some() {
            return;
        }
        for sched in &schedules {
            if out.len() as u64 >= cap {
                overflow += 1;
                continue;
            }
            match attach_y_part(p, x, sched) {
                Ok(w) => {
                    let mut choice = c.clone();
                    choice.trip_schedule = sched.clone();
                    out.push((choice, w));
                }
                Err(e) => failure = Some(e),
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    ensure_cap("witness walks", out.len() as u64 + overflow, cap)?;
    Ok(out)
}
