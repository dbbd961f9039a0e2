use super::params::EdgeDistance;
use crate::combinatorics::PlaneTree;

/// Minimum separation between two selected skeleton edges.
pub const MIN_EDGE_DISTANCE: usize = 3;

/// All `D`-subsets of skeleton edges whose pairwise distance is at least 3,
/// in lexicographic order. Edges are named by their child vertex.
pub fn select_principal_edges(t: &PlaneTree, big_d: usize, conv: EdgeDistance) -> Vec<Vec<usize>> {
    let edges: Vec<usize> = (1..t.vertex_count()).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(big_d);
    extend(t, &edges, 0, big_d, conv, &mut current, &mut out);
    out
}

fn extend(
    t: &PlaneTree,
    edges: &[usize],
    from: usize,
    big_d: usize,
    conv: EdgeDistance,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == big_d {
        out.push(current.clone());
        return;
    }
    for i in from..edges.len() {
        let e = edges[i];
        if current
            .iter()
            .all(|&f| conv.between(t, f, e) >= MIN_EDGE_DISTANCE)
        {
            current.push(e);
            extend(t, edges, i + 1, big_d, conv, current, out);
            current.pop();
        }
    }
}

/// Lower estimate `(s'' - D d0^3)^D / D!` for the number of selections, in
/// log domain; `None` when the base is not positive.
pub fn ln_selection_lower_bound(s_pp: f64, big_d: f64, d0: f64) -> Option<f64> {
    let base = s_pp - big_d * d0.powi(3);
    (base > 0.0).then(|| big_d * base.ln() - crate::numeric::ln_factorial_real(big_d))
}
