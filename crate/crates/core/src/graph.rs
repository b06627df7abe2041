//! Oriented trees: validated construction, reversal, degree queries and
//! rooted-tree classification.
//!
//! Vertices are dense identifiers `0..n`. Arcs are kept in sorted order so two
//! trees built from the same arc set compare (and hash) equal regardless of
//! input order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, NotTreeReason, Result};

pub type Vertex = usize;

/// An orientation of a finite tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedTree {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

/// Which rooted shape a tree is asked to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootedMode {
    /// Arborescence: every arc points away from a single source.
    OutTree,
    /// Anti-arborescence: every arc points toward a single sink.
    InTree,
}

impl fmt::Display for RootedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootedMode::OutTree => f.write_str("out-tree"),
            RootedMode::InTree => f.write_str("in-tree"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RootClassification {
    pub out_root: Option<Vertex>,
    pub in_root: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub out_degree: Vec<usize>,
    pub in_degree: Vec<usize>,
}

impl DegreeProfile {
    pub fn sources(&self) -> Vec<Vertex> {
        (0..self.in_degree.len())
            .filter(|&v| self.in_degree[v] == 0)
            .collect()
    }

    pub fn sinks(&self) -> Vec<Vertex> {
        (0..self.out_degree.len())
            .filter(|&v| self.out_degree[v] == 0)
            .collect()
    }

    /// Vertices of degree one in the underlying undirected tree.
    pub fn underlying_leaves(&self) -> Vec<Vertex> {
        (0..self.out_degree.len())
            .filter(|&v| self.out_degree[v] + self.in_degree[v] == 1)
            .collect()
    }
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl OrientedTree {
    /// Validates `arcs` as an orientation of a tree on `n` vertices.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotATree(NotTreeReason::Empty));
        }
        let mut arcs: Vec<(Vertex, Vertex)> = arcs.into_iter().collect();
        let mut seen = HashSet::with_capacity(arcs.len());
        for &(u, v) in &arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::BadVertexId { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfArc(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateOrAntiparallelArc((u, v)));
            }
        }
        if arcs.len() != n - 1 {
            return Err(Error::NotATree(NotTreeReason::WrongArcCount {
                expected: n - 1,
                found: arcs.len(),
            }));
        }
        // n - 1 edges with no cycle span all n vertices.
        let mut sets = DisjointSets((0..n).collect());
        for &(u, v) in &arcs {
            if !sets.union(u, v) {
                return Err(Error::NotATree(NotTreeReason::Cycle));
            }
        }
        arcs.sort_unstable();
        Ok(Self::from_sorted_arcs(n, arcs))
    }

    fn from_sorted_arcs(n: usize, arcs: Vec<(Vertex, Vertex)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in in_adj.iter_mut() {
            list.sort_unstable();
        }
        OrientedTree {
            n,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn single_vertex() -> Self {
        Self::from_sorted_arcs(1, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in canonical (sorted) order.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    /// Degree in the underlying undirected tree.
    pub fn degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out_adj[v].iter().chain(self.in_adj[v].iter()).copied()
    }

    /// True when `u -> v` is an arc.
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile {
            out_degree: self.out_adj.iter().map(Vec::len).collect(),
            in_degree: self.in_adj.iter().map(Vec::len).collect(),
        }
    }

    pub fn sources(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.in_degree(v) == 0).collect()
    }

    pub fn sinks(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.out_degree(v) == 0).collect()
    }

    pub fn underlying_leaves(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Edges of the underlying tree as `(min, max)` pairs, sorted.
    pub fn underlying_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges: Vec<_> = self
            .arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// The tree with every arc flipped.
    pub fn reverse(&self) -> OrientedTree {
        let mut arcs: Vec<_> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        arcs.sort_unstable();
        Self::from_sorted_arcs(self.n, arcs)
    }

    pub fn classify_rooted(&self) -> RootClassification {
        let rooted = |deg: &dyn Fn(Vertex) -> usize| -> Option<Vertex> {
            let mut root = None;
            for v in 0..self.n {
                match deg(v) {
                    0 if root.is_none() => root = Some(v),
                    1 => {}
                    _ => return None,
                }
            }
            root
        };
        RootClassification {
            out_root: rooted(&|v| self.in_degree(v)),
            in_root: rooted(&|v| self.out_degree(v)),
        }
    }

    /// The `l` of the rooted-tree formula: sinks of an out-tree, sources of
    /// an in-tree.
    pub fn directed_leaf_count(&self, mode: RootedMode) -> Result<usize> {
        let class = self.classify_rooted();
        match mode {
            RootedMode::OutTree if class.out_root.is_some() => Ok(self.sinks().len()),
            RootedMode::InTree if class.in_root.is_some() => Ok(self.sources().len()),
            _ => Err(Error::NotRooted(mode)),
        }
    }

    /// Removes the underlying leaf `v`, compacting the remaining identifiers
    /// in order. The returned map sends old identifiers to new ones.
    pub fn delete_leaf(&self, v: Vertex) -> Result<(OrientedTree, Vec<Option<Vertex>>)> {
        if v >= self.n {
            return Err(Error::BadVertexId {
                vertex: v,
                n: self.n,
            });
        }
        if self.degree(v) != 1 {
            return Err(Error::NotALeaf(v));
        }
        let relabel: Vec<Option<Vertex>> = (0..self.n)
            .map(|w| match w.cmp(&v) {
                std::cmp::Ordering::Less => Some(w),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(w - 1),
            })
            .collect();
        let arcs: Vec<_> = self
            .arcs
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (relabel[a].unwrap(), relabel[b].unwrap()))
            .collect();
        // Compaction is order-preserving, so the arc list stays sorted.
        Ok((Self::from_sorted_arcs(self.n - 1, arcs), relabel))
    }

    /// Appends a new vertex `n` joined to `at`, pointing outward when
    /// `outward` is set (`at -> n`) and inward otherwise.
    pub fn attach_leaf(&self, at: Vertex, outward: bool) -> Result<OrientedTree> {
        if at >= self.n {
            return Err(Error::BadVertexId {
                vertex: at,
                n: self.n,
            });
        }
        let new = self.n;
        let mut arcs = self.arcs.clone();
        arcs.push(if outward { (at, new) } else { (new, at) });
        arcs.sort_unstable();
        Ok(Self::from_sorted_arcs(self.n + 1, arcs))
    }

    /// The sub-orientation induced by `vertices`, relabeled to their
    /// positions in the slice. The induced subgraph must be connected.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<OrientedTree> {
        let mut index = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::BadVertexId {
                    vertex: v,
                    n: self.n,
                });
            }
            index[v] = Some(i);
        }
        let arcs = self
            .arcs
            .iter()
            .filter_map(|&(u, v)| Some((index[u]?, index[v]?)));
        OrientedTree::new(vertices.len(), arcs)
    }

    /// Compact single-line encoding, `n:t-h,t-h,...`, used to make report
    /// records replayable.
    pub fn encode(&self) -> String {
        let arcs: Vec<String> = self.arcs.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}:{}", self.n, arcs.join(","))
    }
}

impl fmt::Debug for OrientedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedTree({})", self.encode())
    }
}

impl fmt::Display for OrientedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl FromStr for OrientedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            msg: format!("{msg} in tree encoding {s:?}"),
        };
        let (n, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let n: usize = n.parse().map_err(|_| bad("bad vertex count"))?;
        let mut arcs = Vec::new();
        for item in rest.split(',').filter(|p| !p.is_empty()) {
            let (u, v) = item.split_once('-').ok_or_else(|| bad("bad arc"))?;
            let u = u.parse().map_err(|_| bad("bad arc tail"))?;
            let v = v.parse().map_err(|_| bad("bad arc head"))?;
            arcs.push((u, v));
        }
        OrientedTree::new(n, arcs)
    }
}

impl serde::Serialize for OrientedTree {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.encode())
    }
}

impl<'de> serde::Deserialize<'de> for OrientedTree {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: usize, arcs: &[(usize, usize)]) -> OrientedTree {
        OrientedTree::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn single_vertex_is_a_tree() {
        let t = tree(1, &[]);
        assert_eq!(t.n(), 1);
        assert!(t.arcs().is_empty());
        assert_eq!(t, OrientedTree::single_vertex());
    }

    #[test]
    fn in_star_sources_and_sinks() {
        let t = tree(3, &[(0, 1), (2, 1)]);
        assert_eq!(t.sources(), vec![0, 2]);
        assert_eq!(t.sinks(), vec![1]);
        let profile = t.degree_profile();
        assert_eq!(profile.sources(), vec![0, 2]);
        assert_eq!(profile.sinks(), vec![1]);
        assert_eq!(profile.underlying_leaves(), vec![0, 2]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            OrientedTree::new(3, [(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotATree(NotTreeReason::WrongArcCount { .. }))
        ));
        assert!(matches!(
            OrientedTree::new(4, [(0, 1), (1, 0), (2, 3)]),
            Err(Error::DuplicateOrAntiparallelArc((1, 0)))
        ));
        assert!(matches!(
            OrientedTree::new(4, [(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotATree(NotTreeReason::Cycle))
        ));
        assert!(matches!(
            OrientedTree::new(2, [(1, 1)]),
            Err(Error::SelfArc(1))
        ));
        assert!(matches!(
            OrientedTree::new(2, [(0, 2)]),
            Err(Error::BadVertexId { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            OrientedTree::new(0, []),
            Err(Error::NotATree(NotTreeReason::Empty))
        ));
        assert!(matches!(
            OrientedTree::new(1, [(0, 0)]),
            Err(Error::SelfArc(0))
        ));
    }

    #[test]
    fn input_order_does_not_matter() {
        assert_eq!(tree(3, &[(2, 1), (0, 1)]), tree(3, &[(0, 1), (2, 1)]));
    }

    #[test]
    fn reverse_examples() {
        let p = tree(3, &[(0, 1), (1, 2)]);
        assert_eq!(p.reverse(), tree(3, &[(2, 1), (1, 0)]));
        assert_eq!(p.reverse().reverse(), p);
        let out_star = tree(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(out_star.reverse(), tree(4, &[(1, 0), (2, 0), (3, 0)]));
    }

    #[test]
    fn classify_examples() {
        let p = tree(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            p.classify_rooted(),
            RootClassification {
                out_root: Some(0),
                in_root: Some(3)
            }
        );
        let in_star = tree(3, &[(0, 1), (2, 1)]);
        assert_eq!(
            in_star.classify_rooted(),
            RootClassification {
                out_root: None,
                in_root: Some(1)
            }
        );
        let zigzag = tree(4, &[(0, 1), (2, 1), (2, 3)]);
        assert_eq!(zigzag.classify_rooted(), RootClassification::default());
    }

    #[test]
    fn directed_leaf_counts() {
        let p5 = tree(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(p5.directed_leaf_count(RootedMode::OutTree).unwrap(), 1);
        assert_eq!(p5.directed_leaf_count(RootedMode::InTree).unwrap(), 1);
        let out_star = tree(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(
            out_star.directed_leaf_count(RootedMode::OutTree).unwrap(),
            5
        );
        assert!(matches!(
            out_star.directed_leaf_count(RootedMode::InTree),
            Err(Error::NotRooted(RootedMode::InTree))
        ));
    }

    #[test]
    fn delete_leaf_examples() {
        let p2 = tree(2, &[(0, 1)]);
        let (single, map) = p2.delete_leaf(1).unwrap();
        assert_eq!(single, OrientedTree::single_vertex());
        assert_eq!(map, vec![Some(0), None]);

        let star = tree(4, &[(0, 1), (0, 2), (0, 3)]);
        let (smaller, _) = star.delete_leaf(3).unwrap();
        assert_eq!(smaller, tree(3, &[(0, 1), (0, 2)]));
        assert!(matches!(star.delete_leaf(0), Err(Error::NotALeaf(0))));

        let (relabeled, map) = star.delete_leaf(1).unwrap();
        assert_eq!(relabeled, tree(3, &[(0, 1), (0, 2)]));
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);
    }

    #[test]
    fn induced_subpath() {
        let t = tree(5, &[(0, 1), (2, 1), (1, 3), (4, 3)]);
        let sub = t.induced(&[0, 1, 3]).unwrap();
        assert_eq!(sub, tree(3, &[(0, 1), (1, 2)]));
        assert!(t.induced(&[0, 4]).is_err());
    }

    #[test]
    fn encoding_roundtrip() {
        let t = tree(4, &[(1, 0), (1, 2), (3, 2)]);
        assert_eq!(t.encode(), "4:1-0,1-2,3-2");
        assert_eq!(t.encode().parse::<OrientedTree>().unwrap(), t);
        assert_eq!(
            "1:".parse::<OrientedTree>().unwrap(),
            OrientedTree::single_vertex()
        );
        assert!("3:0-1".parse::<OrientedTree>().is_err());
    }
}
