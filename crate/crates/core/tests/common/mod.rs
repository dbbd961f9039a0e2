#![allow(dead_code)]

use proptest::prelude::*;
use wigner_lab::combinatorics::{DyckPath, PlaneTree, Step};

/// Random plane tree on `edges` edges whose vertices have at most `max_children` children.
pub fn bounded_tree(edges: usize, max_children: usize) -> impl Strategy<Value = PlaneTree> {
    prop::collection::vec(any::<u32>(), edges).prop_map(move |picks| {
        let mut children: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, pick) in picks.into_iter().enumerate() {
            let open: Vec<usize> = (0..=i)
                .filter(|&v| children[v].len() < max_children)
                .collect();
            let parent = open[pick as usize % open.len()];
            children.push(Vec::new());
            let slot = pick as usize / open.len() % (children[parent].len() + 1);
            children[parent].insert(slot, i + 1);
        }
        PlaneTree::from_children(children).expect("valid child lists")
    })
}

pub fn dyck_path(max_semilength: usize) -> impl Strategy<Value = DyckPath> {
    (0..=max_semilength)
        .prop_flat_map(|s| bounded_tree(s, usize::MAX))
        .prop_map(|t| t.to_dyck())
}

pub fn steps_of(s: &str) -> Vec<Step> {
    s.chars()
        .map(|c| if c == '+' { Step::Up } else { Step::Down })
        .collect()
}
