//! Free-tree enumeration against an independent Prüfer-sequence oracle.

use std::collections::BTreeSet;

use domchrom_core::canon::{free_tree_code, oriented_code};
use domchrom_core::generators::{free_trees, orientations, prufer_decode};
use domchrom_core::OrientedTree;

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| rooted_code(adj, u, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Minimum rooted code over every root; slow but obviously canonical.
fn brute_canonical(n: usize, edges: &[(usize, usize)]) -> String {
    let adj = adjacency(n, edges);
    (0..n)
        .map(|r| rooted_code(&adj, r, usize::MAX))
        .min()
        .unwrap()
}

/// Decodes a Prüfer sequence with a linear scan, independent of the library.
fn decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn prufer_classes(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let mut seen = BTreeSet::new();
    let mut seq = vec![0; n - 2];
    loop {
        seen.insert(brute_canonical(n, &decode(&seq, n)));
        let Some(i) = (0..n - 2).rev().find(|&i| seq[i] + 1 < n) else {
            break;
        };
        seq[i] += 1;
        seq[i + 1..].fill(0);
    }
    seen.len()
}

fn check_size(n: usize) {
    let trees = free_trees(n).unwrap();
    assert_eq!(trees.len(), prufer_classes(n), "n = {n}");
    let codes: BTreeSet<String> = trees
        .iter()
        .map(|t| brute_canonical(n, &t.underlying_edges()))
        .collect();
    assert_eq!(codes.len(), trees.len(), "duplicate classes at n = {n}");
}

#[test]
fn counts_match_prufer_oracle_up_to_eight() {
    for n in 1..=8 {
        check_size(n);
    }
}

#[test]
#[ignore = "enumerates 9^7 Prüfer sequences"]
fn counts_match_prufer_oracle_at_nine() {
    check_size(9);
}

#[test]
#[ignore = "enumerates 10^8 Prüfer sequences"]
fn counts_match_prufer_oracle_at_ten() {
    check_size(10);
}

#[test]
fn known_counts_through_twelve() {
    let counts: Vec<usize> = (1..=12).map(|n| free_trees(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
}

#[test]
fn library_prufer_decoder_agrees() {
    for seq in [vec![3, 3, 3, 4], vec![0, 1, 2, 3], vec![5, 0, 5, 1]] {
        let n = seq.len() + 2;
        let mut ours: Vec<(usize, usize)> = decode(&seq, n)
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let mut lib = prufer_decode(&seq);
        ours.sort();
        lib.sort();
        assert_eq!(ours, lib);
    }
}

#[test]
fn canonical_code_is_isomorphism_invariant() {
    for base in free_trees(7).unwrap() {
        let n = base.n();
        // Relabel by reversing vertex ids.
        let relabeled =
            OrientedTree::new(n, base.arcs().iter().map(|&(a, b)| (n - 1 - a, n - 1 - b))).unwrap();
        assert_eq!(free_tree_code(&base), free_tree_code(&relabeled));
        for (_, t) in orientations(&base).unwrap().take(8) {
            let r = OrientedTree::new(n, t.arcs().iter().map(|&(a, b)| (n - 1 - a, n - 1 - b)))
                .unwrap();
            assert_eq!(oriented_code(&t), oriented_code(&r));
        }
    }
}
