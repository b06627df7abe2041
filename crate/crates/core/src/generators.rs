//! Instance families: paths, generalized stars, caterpillars, random trees,
//! every orientation of a base tree, and all free trees up to a size cap.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canon;
use crate::error::{too_large, Error, Result};
use crate::graph::{OrientedTree, Vertex};

/// Largest base tree whose orientations we enumerate (mask width guard).
pub const MAX_ORIENTATION_N: usize = 26;
pub const MAX_FREE_TREE_N: usize = 12;

/// The directed path `0 -> 1 -> ... -> n-1`.
pub fn path(n: usize) -> OrientedTree {
    assert!(n >= 1, "a path needs at least one vertex");
    OrientedTree::new(n, (1..n).map(|v| (v - 1, v))).expect("a path is a tree")
}

/// Orientation of `base` selected by `mask`: bit `i` set flips the `i`-th
/// arc of `base.arcs()`.
pub fn orient(base: &OrientedTree, mask: u64) -> OrientedTree {
    let arcs = base
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) });
    OrientedTree::new(base.n(), arcs).expect("reorienting keeps a tree")
}

/// Mask selecting `target` relative to `base`, when both share an
/// underlying tree.
pub fn mask_of(base: &OrientedTree, target: &OrientedTree) -> Option<u64> {
    if base.n() != target.n() {
        return None;
    }
    let mut mask = 0u64;
    for (i, &(u, v)) in base.arcs().iter().enumerate() {
        if target.has_arc(v, u) {
            mask |= 1 << i;
        } else if !target.has_arc(u, v) {
            return None;
        }
    }
    Some(mask)
}

/// All `2^(n-1)` orientations of a base tree, in ascending mask order.
#[derive(Debug, Clone)]
pub struct Orientations {
    base: OrientedTree,
    next: u64,
    end: u64,
}

impl Orientations {
    pub fn base(&self) -> &OrientedTree {
        &self.base
    }

    /// Number of orientations, `2^(n-1)`.
    pub fn count(&self) -> u64 {
        1 << (self.base.n() - 1)
    }
}

impl Iterator for Orientations {
    type Item = (u64, OrientedTree);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        Some((mask, orient(&self.base, mask)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Orientations {}

pub fn orientations(base: &OrientedTree) -> Result<Orientations> {
    too_large("n", base.n(), MAX_ORIENTATION_N)?;
    Ok(Orientations {
        base: base.clone(),
        next: 0,
        end: 1 << (base.n() - 1),
    })
}

/// Bitwise complement restricted to the `n - 1` arc bits: the reversal.
pub fn complement_mask(n: usize, mask: u64) -> u64 {
    !mask & ((1u64 << (n - 1)) - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GsScheme {
    /// Every arc points away from the center.
    OutRootCenter,
    /// Every arc points toward the center.
    InRootCenter,
    /// Arcs run from each odd layer into its adjacent even layers.
    Layered,
    /// Orientation of the out-rooted generalized star selected by mask.
    Mask(u64),
}

/// `m` paths of `k` edges sharing the center vertex 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsSpec {
    pub m: usize,
    pub k: usize,
    pub scheme: GsScheme,
}

impl GsSpec {
    pub fn new(m: usize, k: usize, scheme: GsScheme) -> Self {
        GsSpec { m, k, scheme }
    }

    pub fn n(&self) -> usize {
        self.m * self.k + 1
    }

    /// Vertex at `depth` (1..=k) along path `branch` (0..m).
    pub fn vertex(&self, branch: usize, depth: usize) -> Vertex {
        1 + branch * self.k + (depth - 1)
    }

    /// Distance from the center.
    pub fn layer(&self, v: Vertex) -> usize {
        if v == 0 {
            0
        } else {
            (v - 1) % self.k + 1
        }
    }
}

pub fn gs(spec: &GsSpec) -> Result<OrientedTree> {
    if spec.m == 0 || spec.k == 0 {
        return Err(Error::SpecInvalid(format!(
            "generalized star needs m >= 1 and k >= 1, got m={} k={}",
            spec.m, spec.k
        )));
    }
    let outward: Vec<(Vertex, Vertex)> = (0..spec.m)
        .flat_map(|b| {
            (1..=spec.k).map(move |d| {
                let parent = if d == 1 { 0 } else { spec.vertex(b, d - 1) };
                (parent, spec.vertex(b, d))
            })
        })
        .collect();
    let base = OrientedTree::new(spec.n(), outward)?;
    Ok(match spec.scheme {
        GsScheme::OutRootCenter => base,
        GsScheme::InRootCenter => base.reverse(),
        GsScheme::Layered => OrientedTree::new(
            spec.n(),
            base.arcs().iter().map(|&(parent, child)| {
                // parent sits at an even depth exactly when the arc must
                // come up from the odd child layer.
                if spec.layer(parent).is_multiple_of(2) {
                    (child, parent)
                } else {
                    (parent, child)
                }
            }),
        )?,
        GsScheme::Mask(mask) => {
            if spec.n() - 1 < 64 && mask >> (spec.n() - 1) != 0 {
                return Err(Error::SpecInvalid(format!(
                    "mask {mask:#b} has bits beyond the {} arcs",
                    spec.n() - 1
                )));
            }
            orient(&base, mask)
        }
    })
}

/// Spine `0..spine_len` plus legs attached to internal spine vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarSpec {
    pub spine_len: usize,
    /// `(spine index, leg count)` pairs; legs are numbered in this order
    /// starting at `spine_len`.
    pub legs: Vec<(usize, usize)>,
    /// Bit `i` set flips spine arc `i -> i+1`.
    pub spine_mask: u64,
    /// Bit `j` set makes leg `j` point into the spine.
    pub leg_mask: u64,
}

impl CaterpillarSpec {
    pub fn leg_count(&self) -> usize {
        self.legs.iter().map(|&(_, c)| c).sum()
    }

    pub fn n(&self) -> usize {
        self.spine_len + self.leg_count()
    }
}

pub fn caterpillar(spec: &CaterpillarSpec) -> Result<OrientedTree> {
    let m = spec.spine_len;
    if m == 0 {
        return Err(Error::SpecInvalid(
            "caterpillar spine needs a vertex".into(),
        ));
    }
    if let Some(&(i, _)) = spec.legs.iter().find(|&&(i, _)| i == 0 || i + 1 >= m) {
        return Err(Error::SpecInvalid(format!(
            "leg on spine index {i}; legs must sit on indices 1..={}",
            m.saturating_sub(2)
        )));
    }
    too_large("caterpillar vertices", spec.n(), 64)?;
    let mut arcs: Vec<(Vertex, Vertex)> = (1..m)
        .map(|v| {
            if spec.spine_mask >> (v - 1) & 1 == 1 {
                (v, v - 1)
            } else {
                (v - 1, v)
            }
        })
        .collect();
    let mut next = m;
    for &(at, count) in &spec.legs {
        for _ in 0..count {
            let j = next - m;
            arcs.push(if spec.leg_mask >> j & 1 == 1 {
                (next, at)
            } else {
                (at, next)
            });
            next += 1;
        }
    }
    OrientedTree::new(next, arcs)
}

/// One representative per isomorphism class of free trees on `n` vertices,
/// ordered by canonical code. Each representative is the tree rebuilt from
/// its code, so arcs point away from the (first) center.
pub fn free_trees(n: usize) -> Result<Vec<OrientedTree>> {
    if n == 0 {
        return Err(Error::SpecInvalid("free trees need n >= 1".into()));
    }
    too_large("n", n, MAX_FREE_TREE_N)?;
    let mut level: BTreeSet<String> =
        BTreeSet::from([canon::free_tree_code(&OrientedTree::single_vertex())]);
    for _ in 1..n {
        let mut grown = BTreeSet::new();
        for code in &level {
            let t = canon::tree_from_code(code)?;
            for v in 0..t.n() {
                grown.insert(canon::free_tree_code(&t.attach_leaf(v, true)?));
            }
        }
        level = grown;
    }
    level.iter().map(|c| canon::tree_from_code(c)).collect()
}

/// Decodes a Prüfer sequence over `0..seq.len()+2` into tree edges.
pub fn prufer_decode(seq: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer step always has a leaf");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a.min(b), a.max(b)));
    edges
}

/// Uniform labeled tree on `n` vertices from a seeded Prüfer sequence.
/// Arcs point from the smaller identifier to the larger.
pub fn random_tree(n: usize, seed: u64) -> OrientedTree {
    match n {
        0 => panic!("a tree needs at least one vertex"),
        1 => OrientedTree::single_vertex(),
        2 => OrientedTree::new(2, [(0, 1)]).unwrap(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            OrientedTree::new(n, prufer_decode(&seq)).expect("Prüfer sequences decode to trees")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_counts() {
        assert_eq!(orientations(&path(4)).unwrap().count(), 8);
        let star = gs(&GsSpec::new(3, 1, GsScheme::OutRootCenter)).unwrap();
        let all: Vec<_> = orientations(&star).unwrap().collect();
        assert_eq!(all.len(), 8);
        let uniform = all
            .iter()
            .filter(|(_, t)| t.out_degree(0) == 3 || t.in_degree(0) == 3)
            .count();
        assert_eq!(uniform, 2);
        let single: Vec<_> = orientations(&OrientedTree::single_vertex())
            .unwrap()
            .collect();
        assert_eq!(single, vec![(0, OrientedTree::single_vertex())]);
        assert!(matches!(
            orientations(&path(27)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn complement_is_reversal() {
        let base = free_trees(7).unwrap()[3].clone();
        for (mask, t) in orientations(&base).unwrap() {
            assert_eq!(orient(&base, complement_mask(7, mask)), t.reverse());
            assert_eq!(mask_of(&base, &t), Some(mask));
        }
    }

    #[test]
    fn gs_shapes() {
        let t = gs(&GsSpec::new(8, 2, GsScheme::OutRootCenter)).unwrap();
        assert_eq!(t.n(), 17);
        assert_eq!(t.arcs().len(), 16);
        assert_eq!(t.sinks().len(), 8);
        assert_eq!(t.classify_rooted().out_root, Some(0));

        let star = gs(&GsSpec::new(3, 1, GsScheme::OutRootCenter)).unwrap();
        assert_eq!(
            star,
            OrientedTree::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
        );

        let inward = gs(&GsSpec::new(3, 2, GsScheme::InRootCenter)).unwrap();
        assert_eq!(inward.classify_rooted().in_root, Some(0));

        let layered = gs(&GsSpec::new(2, 4, GsScheme::Layered)).unwrap();
        let spec = GsSpec::new(2, 4, GsScheme::Layered);
        for &(u, v) in layered.arcs() {
            assert_eq!(spec.layer(u) % 2, 1, "arc {u}->{v} must leave an odd layer");
        }
        assert!(gs(&GsSpec::new(0, 2, GsScheme::Layered)).is_err());
        assert!(gs(&GsSpec::new(1, 2, GsScheme::Mask(0b100))).is_err());
    }

    #[test]
    fn gs_vertex_count() {
        for m in 1..5 {
            for k in 1..5 {
                let t = gs(&GsSpec::new(m, k, GsScheme::Layered)).unwrap();
                assert_eq!(t.n(), m * k + 1);
                assert_eq!(t.underlying_leaves().len(), if m == 1 { 2 } else { m });
            }
        }
    }

    #[test]
    fn caterpillar_shapes() {
        let spec = CaterpillarSpec {
            spine_len: 3,
            legs: vec![(1, 1)],
            spine_mask: 0,
            leg_mask: 0,
        };
        let t = caterpillar(&spec).unwrap();
        assert_eq!(t.n(), 4);
        assert!(t.has_arc(1, 3));
        let inward = caterpillar(&CaterpillarSpec {
            leg_mask: 1,
            ..spec.clone()
        })
        .unwrap();
        assert!(inward.has_arc(3, 1));
        let bad = CaterpillarSpec {
            legs: vec![(0, 1)],
            ..spec
        };
        assert!(matches!(caterpillar(&bad), Err(Error::SpecInvalid(_))));
    }

    #[test]
    fn free_tree_small_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| free_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        assert!(matches!(free_trees(13), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn free_trees_are_pairwise_non_isomorphic() {
        let trees = free_trees(9).unwrap();
        let codes: BTreeSet<_> = trees.iter().map(canon::free_tree_code).collect();
        assert_eq!(codes.len(), trees.len());
    }

    #[test]
    fn random_tree_is_deterministic() {
        assert_eq!(random_tree(1, 5), OrientedTree::single_vertex());
        assert_eq!(random_tree(2, 5), OrientedTree::new(2, [(0, 1)]).unwrap());
        assert_eq!(random_tree(8, 42), random_tree(8, 42));
        assert_eq!(random_tree(30, 1).n(), 30);
    }

    #[test]
    fn prufer_known_sequence() {
        // 3 3 3 4 over six vertices: leaves 0,1,2 hang off 3, then 3-4, 4-5.
        let mut edges = prufer_decode(&[3, 3, 3, 4]);
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }
}
