use crate::error::{invalid, Result};

use super::dyck::{DyckPath, Step};

/// A plane (ordered) rooted tree.
///
/// Vertices are stored in preorder, so the root is `0` and the vertex created
/// by the `k`-th ascent of the associated Dyck path is `k`. An edge is named by
/// its child endpoint, giving edge ids `1..=edge_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl PlaneTree {
    /// Build from child lists indexed by vertex; `children[0]` lists the root's
    /// children. The result is relabelled into preorder.
    pub fn from_children(children: Vec<Vec<usize>>) -> Result<Self> {
        let n = children.len();
        if n == 0 {
            return Err(invalid("a tree needs at least its root"));
        }
        let mut parent = vec![None; n];
        for (v, kids) in children.iter().enumerate() {
            for &c in kids {
                if c >= n {
                    return Err(invalid(format!("child {c} of vertex {v} out of range")));
                }
                if c == 0 {
                    return Err(invalid("the root cannot be a child"));
                }
                if parent[c].is_some() {
                    return Err(invalid(format!("vertex {c} has two parents")));
                }
                parent[c] = Some(v);
            }
        }
        // preorder walk from the root; anything unreached is disconnected or on a cycle
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if order.len() > n {
                return Err(invalid("cycle in child lists"));
            }
            order.push(v);
            stack.extend(children[v].iter().rev());
        }
        if order.len() != n {
            return Err(invalid("tree is not connected from the root"));
        }
        let mut relabel = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut ordered = vec![Vec::new(); n];
        for &old in &order {
            ordered[relabel[old]] = children[old].iter().map(|&c| relabel[c]).collect();
        }
        Ok(Self::from_preorder(ordered))
    }

    fn from_preorder(children: Vec<Vec<usize>>) -> Self {
        let n = children.len();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        for v in 0..n {
            for &c in &children[v] {
                parent[c] = Some(v);
                depth[c] = depth[v] + 1;
            }
        }
        PlaneTree {
            children,
            parent,
            depth,
        }
    }

    /// Inverse of the lexicographic run: every ascent creates the next vertex
    /// as the last child of the current one.
    pub fn from_dyck(path: &DyckPath) -> Self {
        let mut children = vec![Vec::new()];
        let mut stack = vec![0usize];
        for step in path.steps() {
            match step {
                Step::Up => {
                    let v = children.len();
                    children.push(Vec::new());
                    let top = *stack.last().expect("root stays on the stack");
                    children[top].push(v);
                    stack.push(v);
                }
                Step::Down => {
                    stack.pop();
                }
            }
        }
        Self::from_preorder(children)
    }

    /// Lexicographic (chronological) run over the tree: `+` for every edge
    /// walked away from the root, `-` on the way back.
    pub fn to_dyck(&self) -> DyckPath {
        let mut steps = Vec::with_capacity(2 * self.edge_count());
        self.run(0, &mut steps);
        DyckPath::from_steps_unchecked(steps)
    }

    fn run(&self, v: usize, steps: &mut Vec<Step>) {
        for &c in &self.children[v] {
            steps.push(Step::Up);
            self.run(c, steps);
            steps.push(Step::Down);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() - 1
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn max_children(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Endpoints `(parent, child)` of the edge named by `child`.
    pub fn edge(&self, child: usize) -> (usize, usize) {
        (
            self.parent[child].expect("edge ids are non-root vertices"),
            child,
        )
    }

    /// True when `a` lies on the path from the root to `b` (a vertex is its own ancestor).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut v = b;
        loop {
            if v == a {
                return true;
            }
            if self.depth[v] <= self.depth[a] {
                return false;
            }
            v = self.parent[v].expect("non-root has a parent");
        }
    }

    /// Graph distance between two vertices.
    pub fn distance(&self, mut a: usize, mut b: usize) -> usize {
        let mut d = 0;
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
            d += 1;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
            d += 1;
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
            d += 2;
        }
        d
    }
}
