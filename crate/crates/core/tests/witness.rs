mod common;

use proptest::prelude::*;
use wigner_lab::walks::frame_of;
use wigner_lab::witness::{
    family_count, family_walks, ln_selection_lower_bound, parse_walk_dump, select_principal_edges,
    validate_witness, write_walk_dump, EdgeDistance, WitnessParams,
};

use common::bounded_tree;

#[test]
fn minimal_witness_is_fourteen_steps() {
    let p = WitnessParams::new(1, 3, 1, 0, 1).unwrap();
    let walks = family_walks(&p).unwrap();
    assert_eq!(walks.len(), 1);
    let w = &walks[0].1;
    assert_eq!(w.steps(), 14);
    assert!(validate_witness(w, &p).passed());
}

#[test]
fn members_are_canonical_even_walks_with_expected_vertex_count() {
    for (s_pp, big_d, nu2, l) in [(1, 1, 0, 2), (2, 1, 1, 1), (3, 1, 1, 3), (4, 2, 0, 2)] {
        let Ok(p) = WitnessParams::new(s_pp, 3, big_d, nu2, l) else {
            continue;
        };
        for (_, w) in family_walks(&p).unwrap() {
            assert!(w.is_canonical());
            assert!(frame_of(&w).is_even());
            assert_eq!(w.vertices().first(), w.vertices().last());
            assert_eq!(w.vertex_count(), p.expected_vertices());
            assert_eq!(w.half_length(), p.s());
        }
    }
}

#[test]
fn too_many_core_edges_give_an_empty_family() {
    let p = WitnessParams::new(2, 3, 2, 0, 2).unwrap();
    let fc = family_count(&p).unwrap();
    assert_eq!(fc.generated, Some(0));
    assert!(fc.consistent());
}

#[test]
fn dump_survives_a_round_trip() {
    let p = WitnessParams::new(2, 3, 1, 1, 2).unwrap();
    let walks: Vec<_> = family_walks(&p)
        .unwrap()
        .into_iter()
        .map(|(_, w)| w)
        .collect();
    let text = write_walk_dump(&p, &walks);
    let (q, back) = parse_walk_dump(&text).unwrap();
    assert_eq!(q, p);
    assert_eq!(back, walks);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn selection_count_beats_its_estimate(
        (edges, t) in (28usize..64).prop_flat_map(|e| bounded_tree(e, 3).prop_map(move |t| (e, t))),
        big_d in 1usize..=2,
    ) {
        if let Some(lb) = ln_selection_lower_bound(edges as f64, big_d as f64, 3.0) {
            let count = select_principal_edges(&t, big_d, EdgeDistance::MinEndpoint).len();
            prop_assert!((count as f64).ln() >= lb, "{} < {}", count, lb.exp());
        }
    }

    #[test]
    fn far_endpoint_distance_is_never_smaller(t in bounded_tree(12, 3), e in 1usize..=12, f in 1usize..=12) {
        prop_assert!(EdgeDistance::FarEndpoint.between(&t, e, f) >= EdgeDistance::MinEndpoint.between(&t, e, f));
    }
}
