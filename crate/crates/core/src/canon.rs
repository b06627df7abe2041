//! Canonical encodings of trees up to isomorphism.
//!
//! Trees are rooted at their center (or at each of the two bicenters, keeping
//! the smaller code) and encoded bottom-up with sorted child codes. The
//! oriented variant tags every child edge with its arc direction.

use crate::error::{Error, Result};
use crate::graph::{OrientedTree, Vertex};

/// Centers of the underlying tree: one or two vertices.
pub fn centers(t: &OrientedTree) -> Vec<Vertex> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for u in t.neighbors(leaf) {
                if degree[u] > 0 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(t: &OrientedTree, v: Vertex, parent: Option<Vertex>, oriented: bool) -> String {
    let mut children: Vec<String> = t
        .neighbors(v)
        .filter(|&u| Some(u) != parent)
        .map(|u| {
            let sub = rooted_code(t, u, Some(v), oriented);
            if oriented {
                let tag = if t.has_arc(v, u) { '>' } else { '<' };
                format!("{tag}{sub}")
            } else {
                sub
            }
        })
        .collect();
    children.sort_unstable();
    let mut code = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
    code.push('(');
    for c in children {
        code.push_str(&c);
    }
    code.push(')');
    code
}

fn min_over_centers(t: &OrientedTree, oriented: bool) -> String {
    centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c, None, oriented))
        .min()
        .expect("a tree has at least one center")
}

/// Isomorphism-invariant code of the underlying (undirected) tree.
pub fn free_tree_code(t: &OrientedTree) -> String {
    min_over_centers(t, false)
}

/// Isomorphism-invariant code of the oriented tree: two orientations get
/// the same code iff some vertex bijection preserves every arc.
pub fn oriented_code(t: &OrientedTree) -> String {
    min_over_centers(t, true)
}

/// Rebuilds a tree from an unoriented code. Vertices are numbered in
/// preorder and every arc points from parent to child.
pub fn tree_from_code(code: &str) -> Result<OrientedTree> {
    let bad = |msg: &str| Error::Parse {
        line: 1,
        msg: format!("{msg} in tree code {code:?}"),
    };
    let mut stack: Vec<Vertex> = Vec::new();
    let mut arcs = Vec::new();
    let mut next = 0;
    let mut closed_root = false;
    for ch in code.chars() {
        if closed_root {
            return Err(bad("trailing input"));
        }
        match ch {
            '(' => {
                if let Some(&parent) = stack.last() {
                    arcs.push((parent, next));
                }
                stack.push(next);
                next += 1;
            }
            ')' => {
                stack.pop().ok_or_else(|| bad("unbalanced ')'"))?;
                closed_root = stack.is_empty();
            }
            _ => return Err(bad("unexpected character")),
        }
    }
    if !closed_root {
        return Err(bad("unbalanced '('"));
    }
    OrientedTree::new(next, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: usize, arcs: &[(usize, usize)]) -> OrientedTree {
        OrientedTree::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn centers_of_paths() {
        assert_eq!(
            centers(&tree(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])),
            vec![2]
        );
        assert_eq!(centers(&tree(4, &[(0, 1), (1, 2), (2, 3)])), vec![1, 2]);
        assert_eq!(centers(&OrientedTree::single_vertex()), vec![0]);
    }

    #[test]
    fn relabeled_trees_share_codes() {
        let a = tree(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let b = tree(5, &[(4, 3), (3, 0), (3, 2), (2, 1)]);
        assert_eq!(free_tree_code(&a), free_tree_code(&b));
        assert_eq!(oriented_code(&a), oriented_code(&b));
        let c = tree(5, &[(0, 1), (1, 2), (1, 3), (4, 3)]);
        assert_eq!(free_tree_code(&a), free_tree_code(&c));
        assert_ne!(oriented_code(&a), oriented_code(&c));
    }

    #[test]
    fn path_and_star_differ() {
        let path = tree(4, &[(0, 1), (1, 2), (2, 3)]);
        let star = tree(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(free_tree_code(&path), free_tree_code(&star));
    }

    #[test]
    fn code_roundtrip() {
        let t = tree(6, &[(5, 0), (0, 1), (1, 2), (1, 3), (3, 4)]);
        let code = free_tree_code(&t);
        let rebuilt = tree_from_code(&code).unwrap();
        assert_eq!(free_tree_code(&rebuilt), code);
        assert!(tree_from_code("(()").is_err());
        assert!(tree_from_code("()()").is_err());
        assert!(tree_from_code("(x)").is_err());
    }
}
