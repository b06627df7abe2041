//! Closed-form values and constructive colorings for paths, rooted trees,
//! stars, generalized stars and caterpillars.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::coloring::{verify_dominator, Color, Coloring, DominatorCertificate, Rejection};
use crate::error::{Error, Result};
use crate::generators::{self, GsScheme, GsSpec};
use crate::graph::{OrientedTree, Vertex};

/// Value for the directed path on `n` vertices.
pub fn chi_directed_path(n: usize) -> usize {
    assert!(n >= 1);
    n
}

/// Values for `n = 1, 2, 3`, below the range of the piecewise formula;
/// obtained by exhaustive search over all orientations.
const SMALL_PATH_MINIMA: [usize; 3] = [1, 2, 2];

/// Minimum over all orientations of the path on `n` vertices.
pub fn chi_path_orientation_min(n: usize) -> usize {
    assert!(n >= 1);
    if n <= 3 {
        return SMALL_PATH_MINIMA[n - 1];
    }
    if n == 6 {
        return 3;
    }
    let k = n / 4;
    match n % 4 {
        0 | 1 => k + 2,
        _ => k + 3,
    }
}

/// True when `n` lies below the range of the piecewise path formula.
pub fn path_min_is_extension(n: usize) -> bool {
    n <= 3
}

/// `n - l + 1` for an out-tree (l = sinks) or in-tree (l = sources).
pub fn chi_rooted(t: &OrientedTree) -> Result<usize> {
    let class = t.classify_rooted();
    let l = if class.out_root.is_some() {
        t.sinks().len()
    } else if class.in_root.is_some() {
        t.sources().len()
    } else {
        return Err(Error::Unrooted);
    };
    Ok(t.n() - l + 1)
}

/// Star with center 0 and leaves `1..=m`; bit `i` of `mask` set makes leaf
/// `i + 1` point into the center.
pub fn star(m: usize, mask: u64) -> OrientedTree {
    assert!((1..64).contains(&m));
    let arcs = (0..m).map(|i| {
        if mask >> i & 1 == 1 {
            (i + 1, 0)
        } else {
            (0, i + 1)
        }
    });
    OrientedTree::new(m + 1, arcs).expect("a star is a tree")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarValue {
    pub chi: usize,
    pub tree: OrientedTree,
    pub certificate: DominatorCertificate,
}

/// 2 when every arc points the same way relative to the center, 3
/// otherwise, with a coloring achieving it.
pub fn chi_star(m: usize, mask: u64) -> StarValue {
    let tree = star(m, mask);
    let full = (1u64 << m) - 1;
    let uniform = mask & full == 0 || mask & full == full;
    // center 1; inward leaves 2 (they dominate the center); outward leaves
    // 3 (the center dominates them). Uniform stars collapse to two colors.
    let raw: Vec<Color> = (0..=m)
        .map(|v| match v {
            0 => 1,
            _ if mask >> (v - 1) & 1 == 1 => 2,
            _ => 3,
        })
        .collect();
    let certificate = verify_dominator(&tree, &Coloring::from_assignment(&raw))
        .expect("star construction is a dominator coloring");
    let chi = if uniform { 2 } else { 3 };
    debug_assert_eq!(certificate.num_colors(), chi);
    StarValue {
        chi,
        tree,
        certificate,
    }
}

/// Value for a generalized star oriented with a single source or single
/// sink at the center: `m(k-1) + 2`.
pub fn gs_uniform_chi(m: usize, k: usize) -> usize {
    assert!(m >= 1 && k >= 1);
    m * (k - 1) + 2
}

/// `3 + m(floor(k/2) - 1)`, the color count of the layered construction.
pub fn gs_layered_bound(m: usize, k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    Ok(3 + m * (k / 2 - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredGs {
    pub tree: OrientedTree,
    pub coloring: Coloring,
    /// Always a certificate for even `k`; for odd `k` whatever the check says.
    pub verification: std::result::Result<DominatorCertificate, Rejection>,
}

impl LayeredGs {
    pub fn num_colors(&self) -> usize {
        self.coloring.num_colors()
    }
}

/// Generalized star with arcs from odd layers into even layers; one color on
/// all odd layers, one on the center, one on layer 2, and a fresh color per
/// vertex of layers 4, 6, ...
pub fn build_layered_gs(m: usize, k: usize) -> Result<LayeredGs> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let spec = GsSpec::new(m, k, GsScheme::Layered);
    let tree = generators::gs(&spec)?;
    let mut next_unique: Color = 4;
    let raw: Vec<Color> = (0..tree.n())
        .map(|v| match spec.layer(v) {
            0 => 1,
            l if l % 2 == 1 => 2,
            2 => 3,
            _ => {
                next_unique += 1;
                next_unique - 1
            }
        })
        .collect();
    let coloring = Coloring::from_assignment(&raw);
    let verification = verify_dominator(&tree, &coloring);
    Ok(LayeredGs {
        tree,
        coloring,
        verification,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leg {
    pub vertex: Vertex,
    /// `true` when the arc is `spine -> leg`.
    pub outward: bool,
}

/// A longest path of a caterpillar plus the legs hanging off it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarView {
    pub spine: Vec<Vertex>,
    pub legs: BTreeMap<Vertex, Vec<Leg>>,
}

impl CaterpillarView {
    /// Number of spine vertices.
    pub fn m(&self) -> usize {
        self.spine.len()
    }

    /// The spine as an oriented path, relabeled `0..m` in spine order.
    pub fn spine_tree(&self, t: &OrientedTree) -> Result<OrientedTree> {
        t.induced(&self.spine)
    }

    /// The spine ordered from its source end when it is a directed path.
    pub fn directed_spine(&self, t: &OrientedTree) -> Option<Vec<Vertex>> {
        let forward = self.spine.windows(2).all(|w| t.has_arc(w[0], w[1]));
        let backward = self.spine.windows(2).all(|w| t.has_arc(w[1], w[0]));
        match (forward, backward) {
            (true, _) => Some(self.spine.clone()),
            (false, true) => Some(self.spine.iter().rev().copied().collect()),
            _ => None,
        }
    }
}

fn bfs_parents(t: &OrientedTree, root: Vertex) -> Vec<Option<Vertex>> {
    let mut seen = vec![false; t.n()];
    let mut parent = vec![None; t.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for u in t.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some(v);
                queue.push_back(u);
            }
        }
    }
    parent
}

/// Deterministic longest path: among paths of maximum length, the
/// lexicographically smallest vertex sequence.
fn longest_path(t: &OrientedTree) -> Vec<Vertex> {
    let mut best: Option<Vec<Vertex>> = None;
    for a in 0..t.n() {
        let parent = bfs_parents(t, a);
        for b in a..t.n() {
            let mut seq = vec![b];
            let mut cur = b;
            while let Some(p) = parent[cur] {
                seq.push(p);
                cur = p;
            }
            seq.reverse();
            let better = match &best {
                None => true,
                // seq[0] is the start endpoint, so plain lexicographic
                // order also ranks by smallest endpoint first.
                Some(cur_best) => {
                    seq.len() > cur_best.len() || (seq.len() == cur_best.len() && seq < *cur_best)
                }
            };
            if better {
                best = Some(seq);
            }
        }
    }
    best.expect("a tree has a vertex")
}

/// Longest path of a caterpillar and its legs.
pub fn central_path(t: &OrientedTree) -> Result<CaterpillarView> {
    let spine = longest_path(t);
    let mut on_spine = vec![false; t.n()];
    for &v in &spine {
        on_spine[v] = true;
    }
    let mut legs: BTreeMap<Vertex, Vec<Leg>> = BTreeMap::new();
    for v in (0..t.n()).filter(|&v| !on_spine[v]) {
        let mut anchors = t.neighbors(v).filter(|&u| on_spine[u]);
        let at = anchors.next().ok_or(Error::NotACaterpillar)?;
        if t.degree(v) != 1 {
            return Err(Error::NotACaterpillar);
        }
        legs.entry(at).or_default().push(Leg {
            vertex: v,
            outward: t.has_arc(at, v),
        });
    }
    Ok(CaterpillarView { spine, legs })
}

/// Spine vertices uniquely colored, source legs sharing one extra color, and
/// the remaining legs one color per spine vertex they hang from. Uses at most
/// `2m - 1` colors.
pub fn caterpillar_upper_coloring(t: &OrientedTree) -> Result<DominatorCertificate> {
    let view = central_path(t)?;
    let m = view.m() as Color;
    let mut raw: Vec<Color> = vec![0; t.n()];
    for (i, &v) in view.spine.iter().enumerate() {
        raw[v] = i as Color + 1;
    }
    let mut group = m + 1;
    for legs in view.legs.values() {
        let mut opened = false;
        for leg in legs {
            if leg.outward {
                if !opened {
                    group += 1;
                    opened = true;
                }
                raw[leg.vertex] = group;
            } else {
                raw[leg.vertex] = m + 1;
            }
        }
    }
    Ok(verify_dominator(t, &Coloring::from_assignment(&raw))
        .expect("caterpillar construction is a dominator coloring"))
}

/// For a caterpillar whose central path is directed `v1 -> ... -> vm`: the
/// spine gets colors `1..=m` and every leg shares the color of `v1`.
pub fn directed_spine_coloring(t: &OrientedTree) -> Result<DominatorCertificate> {
    let view = central_path(t)?;
    let spine = view.directed_spine(t).ok_or(Error::SpineNotDirected)?;
    let mut raw: Vec<Color> = vec![1; t.n()];
    for (i, &v) in spine.iter().enumerate() {
        raw[v] = i as Color + 1;
    }
    Ok(verify_dominator(t, &Coloring::from_assignment(&raw))
        .expect("directed-spine construction is a dominator coloring"))
}
