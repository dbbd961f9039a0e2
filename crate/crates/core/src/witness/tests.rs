use num_bigint::BigUint;
use num_rational::BigRational;

use super::*;
use crate::combinatorics::{catalan, count_bounded_children, DegreeBound, DyckPath, PlaneTree};
use crate::error::Error;
use crate::walks::{frame_of, walk_weight, MomentProfile};

fn tree(s: &str) -> PlaneTree {
    PlaneTree::from_dyck(&s.parse::<DyckPath>().unwrap())
}

fn choice(skeleton: &str, edges: &[usize], schedule: &[usize]) -> WitnessChoice {
    WitnessChoice {
        skeleton: tree(skeleton),
        principal_edges: edges.to_vec(),
        completion: DyckPath::empty(),
        si_pairs: vec![],
        trip_schedule: schedule.to_vec(),
    }
}

#[test]
fn single_edge_witness() {
    let p = WitnessParams::new(1, 3, 1, 0, 1).unwrap();
    let w = build_witness_walk(&p, &choice("+-", &[1], &[])).unwrap();
    assert_eq!(w.steps(), 14);
    assert_eq!(w.vertex_count(), 2);
    let r = validate_witness(&w, &p);
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.xi, vec![0]);
    assert_eq!(r.zeta_arrivals_x_prime, 5);
    assert_eq!(r.zeta_arrivals_with_bridge, 6);
    assert_eq!(frame_of(&w).multiplicity(0, 1), 14);
}

#[test]
fn extra_trips_raise_core_multiplicity() {
    let p = WitnessParams::new(1, 3, 1, 0, 3).unwrap();
    let w = build_witness_walk(&p, &choice("+-", &[1], &[0, 0])).unwrap();
    let r = validate_witness(&w, &p);
    assert!(r.passed());
    assert_eq!(r.extra_trips, vec![2]);
    let v = w.vertices();
    let sp = p.s_prime();
    let outside = (0..2 * p.s())
        .filter(|&t| t != 2 * sp && t != 2 * p.s() - 1 && v[t] != v[t + 1])
        .count();
    assert_eq!(outside, 16);
}

#[test]
fn bridge_is_separate_edge_when_core_avoids_root() {
    // skeleton 0-1-2: select the deeper edge so that xi is not the root
    let p = WitnessParams::new(2, 3, 1, 0, 1).unwrap();
    let w = build_witness_walk(&p, &choice("++--", &[2], &[])).unwrap();
    let r = validate_witness(&w, &p);
    assert!(r.passed(), "{:?}", r.failures());
    let zeta = r.zeta.unwrap();
    assert_ne!(r.xi[0], 0);
    assert_eq!(frame_of(&w).multiplicity(0, zeta), 2);
}

#[test]
fn corrupted_trip_fails_core_check() {
    let p = WitnessParams::new(2, 3, 1, 0, 2).unwrap();
    let w = build_witness_walk(&p, &choice("++--", &[2], &[0])).unwrap();
    let mut v = w.vertices().to_vec();
    let last_dest = 2 * p.s() - 2;
    let r = validate_witness(&w, &p);
    let stray = (0..w.vertex_count() as u32)
        .find(|x| !r.xi.contains(x) && Some(*x) != r.zeta)
        .unwrap();
    v[last_dest] = stray;
    let bad = crate::walks::Walk::new(v, None).unwrap();
    let r = validate_witness(&bad, &p);
    assert!(!r.core_ok);
    assert!(!r.passed());
}

#[test]
fn two_core_edges_on_separate_branches() {
    let p = WitnessParams::new(6, 3, 2, 0, 4).unwrap();
    let c = choice("+++---+++---", &[3, 6], &[1, 0]);
    let w = build_witness_walk(&p, &c).unwrap();
    let r = validate_witness(&w, &p);
    assert!(r.passed(), "{:?}", r.failures());
    assert_eq!(r.xi.len(), 2);
    assert_eq!(r.extra_trips, vec![1, 1]);
    assert_eq!(w.vertex_count(), p.expected_vertices());
}

#[test]
fn nested_core_edges_conflict() {
    // edge 4 hangs below the child of edge 1 on a path
    let p = WitnessParams::new(7, 3, 2, 0, 2).unwrap();
    let c = choice("+++++++-------", &[1, 5], &[]);
    let err = build_witness_walk(&p, &c).unwrap_err();
    assert!(matches!(err, Error::GluingConflict { .. }), "{err:?}");
}

#[test]
fn simple_self_intersection_is_counted() {
    let p = WitnessParams::new(2, 3, 1, 1, 1).unwrap();
    let fam = family_walks(&p).unwrap();
    assert!(!fam.is_empty());
    for (c, w) in &fam {
        let r = validate_witness(w, &p);
        assert!(r.passed(), "{c:?}: {:?}", r.failures());
        assert_eq!(r.simple_self_intersections, 1);
    }
}

#[test]
fn choice_validation() {
    let p = WitnessParams::new(2, 3, 1, 0, 2).unwrap();
    assert!(build_witness_walk(&p, &choice("++--", &[2], &[])).is_err());
    assert!(build_witness_walk(&p, &choice("+-", &[1], &[0])).is_err());
    assert!(build_witness_walk(&p, &choice("++--", &[3], &[0])).is_err());
    let narrow = WitnessParams::new(2, 1, 1, 0, 1).unwrap();
    assert!(build_witness_walk(&narrow, &choice("+-+-", &[1], &[])).is_err());
}

#[test]
fn single_core_edge_count_factorizes() {
    for s_pp in 1..=4usize {
        for extra in 0..=2usize {
            let p = WitnessParams::with_extra(s_pp, 3, 1, 0, 3, extra).unwrap();
            let f = family_count(&p).unwrap();
            let expected = count_bounded_children(s_pp, DegreeBound::new(3).unwrap())
                * BigUint::from(s_pp)
                * catalan(extra as u64);
            assert_eq!(f.exact, expected, "s''={s_pp}, extra={extra}");
            assert_eq!(f.rejected, 0);
            assert!(f.consistent());
        }
    }
}

#[test]
fn two_core_edges_need_five_skeleton_edges() {
    for s_pp in 2..=4 {
        let p = WitnessParams::new(s_pp, 3, 2, 0, 2).unwrap();
        let f = family_count(&p).unwrap();
        assert_eq!(f.selections, 0);
        assert_eq!(f.exact, BigUint::from(0u32));
    }
}

#[test]
fn family_is_injective_and_multiplicative() {
    let p = WitnessParams::new(3, 3, 1, 1, 3).unwrap();
    let f = family_count(&p).unwrap();
    assert!(f.generated.unwrap() > 0);
    assert!(f.consistent());
    assert_eq!(f.exact, BigUint::from(f.x_parts));
    let p = WitnessParams::new(6, 3, 2, 0, 4).unwrap();
    let f = family_count(&p).unwrap();
    assert!(f.consistent());
    assert_eq!(f.exact, BigUint::from(f.x_parts) * BigUint::from(4u32));
    assert!(f.rejected > 0);
}

#[test]
fn generated_walks_are_canonical_even_and_closed() {
    let p = WitnessParams::with_extra(2, 3, 1, 1, 2, 1).unwrap();
    for (_, w) in family_walks(&p).unwrap() {
        assert!(w.is_canonical());
        assert!(frame_of(&w).is_even());
        assert_eq!(w.vertices()[0], *w.vertices().last().unwrap());
    }
}

#[test]
fn weight_factorizes_over_core() {
    let table: Vec<BigRational> = (1..=12)
        .map(|k| BigRational::new((k * k + 1).into(), 3.into()))
        .collect();
    let m = MomentProfile::table(table).unwrap();
    for p in [
        WitnessParams::new(2, 3, 1, 1, 3).unwrap(),
        WitnessParams::new(6, 3, 2, 0, 4).unwrap(),
    ] {
        for (_, w) in family_walks(&p).unwrap().iter().take(200) {
            assert_eq!(
                walk_weight(w, &m).unwrap(),
                factorized_weight(w, &p, &m).unwrap()
            );
        }
    }
}

#[test]
fn dump_round_trip() {
    let p = WitnessParams::new(2, 3, 1, 0, 2).unwrap();
    let walks: Vec<_> = family_walks(&p)
        .unwrap()
        .into_iter()
        .map(|(_, w)| w)
        .collect();
    let text = write_walk_dump(&p, &walks);
    assert!(text.starts_with("# s_pp=2 d0=3 D=1 nu2=0 L=2"));
    let (q, back) = parse_walk_dump(&text).unwrap();
    assert_eq!(q, p);
    assert_eq!(back.len(), walks.len());
    for (a, b) in walks.iter().zip(&back) {
        assert_eq!(a.vertices(), b.vertices());
        assert!(validate_witness(b, &q).passed());
    }
    assert!(parse_walk_dump("0 1 0").is_err());
}

#[test]
fn lower_bound_factors() {
    let p = WitnessParams::new(1, 3, 1, 0, 1).unwrap();
    let b = family_lower_bound(&p);
    assert_eq!(b.ln_placements, Some(0.0));
    assert_eq!(b.ln_trips, 0.0);
    assert_eq!(b.ln_selections, None);
    assert_eq!(b.ln(), None);
}
