//! Exact dominator chromatic number by backtracking branch-and-bound, with a
//! brute-force oracle for cross-validation.
//!
//! The search tries `k = lower bound, lower bound + 1, ...` until a coloring
//! with `k` colors exists or `k` reaches the greedy upper bound. Within one
//! round vertices are colored in a fixed order with restricted-growth color
//! choices, pruning on
//!
//! * propriety (a neighbor already has the color),
//! * domination (some vertex can no longer have a whole class inside its
//!   out-neighborhood),
//! * forced singletons (a vertex that is the only out-neighbor of some vertex
//!   must sit alone in its class; the still-uncolored ones each need a
//!   fresh color).

use serde::{Deserialize, Serialize};

use crate::coloring::{
    is_dominator_assignment, verify_dominator, Color, Coloring, DominatorCertificate,
};
use crate::error::{too_large, Error, Result};
use crate::graph::{OrientedTree, Vertex};

/// Hard cap for [`brute_force_chi`].
pub const BRUTE_FORCE_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexOrder {
    /// Decreasing underlying degree, ties by index.
    #[default]
    DegreeDescending,
    /// Breadth-first from the highest-degree vertex, neighbors by index.
    BreadthFirst,
    /// Identifier order.
    Natural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Cap on search nodes across all rounds; `None` searches exhaustively.
    pub node_budget: Option<u64>,
    pub vertex_order: VertexOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PruneCounts {
    pub improper: u64,
    pub domination: u64,
    pub singleton: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    /// Color assignments attempted.
    pub nodes: u64,
    pub max_depth: usize,
    /// Values of `k` searched; zero when the bounds already met.
    pub rounds: usize,
    pub prunes: PruneCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub chi: usize,
    pub certificate: DominatorCertificate,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub stats: SearchStats,
}

/// Vertices that are the only out-neighbor of some vertex. Each one is alone
/// in its class in every dominator coloring.
pub fn forced_singletons(t: &OrientedTree) -> Vec<bool> {
    let mut forced = vec![false; t.n()];
    for v in 0..t.n() {
        if let [only] = t.out_neighbors(v) {
            forced[*only] = true;
        }
    }
    forced
}

/// `1` for a single vertex; otherwise the larger of 2 and one more than
/// the number of forced singletons (a source always remains outside them).
pub fn trivial_lower_bound(t: &OrientedTree) -> usize {
    if t.n() == 1 {
        return 1;
    }
    let singles = forced_singletons(t).iter().filter(|&&f| f).count();
    (singles + 1).max(2)
}

/// Some valid dominator coloring: start from all-distinct colors and merge
/// a vertex into an earlier class whenever the result stays valid.
pub fn greedy_upper_bound(t: &OrientedTree) -> Coloring {
    let n = t.n();
    let mut colors: Vec<Color> = (1..=n as Color).collect();
    loop {
        let mut changed = false;
        for v in 0..n {
            let mut palette: Vec<Color> = colors.clone();
            palette.sort_unstable();
            palette.dedup();
            let original = colors[v];
            for &c in palette.iter().filter(|&&c| c < original) {
                colors[v] = c;
                if is_dominator_assignment(t, &colors) {
                    changed = true;
                    break;
                }
                colors[v] = original;
            }
        }
        if !changed {
            break;
        }
    }
    Coloring::from_assignment(&colors)
}

fn vertex_order(t: &OrientedTree, policy: VertexOrder) -> Vec<Vertex> {
    let n = t.n();
    match policy {
        VertexOrder::Natural => (0..n).collect(),
        VertexOrder::DegreeDescending => {
            let mut order: Vec<Vertex> = (0..n).collect();
            order.sort_by_key(|&v| (std::cmp::Reverse(t.degree(v)), v));
            order
        }
        VertexOrder::BreadthFirst => {
            let start = (0..n)
                .min_by_key(|&v| (std::cmp::Reverse(t.degree(v)), v))
                .unwrap_or(0);
            let mut seen = vec![false; n];
            let mut order = Vec::with_capacity(n);
            seen[start] = true;
            order.push(start);
            let mut head = 0;
            while head < order.len() {
                let v = order[head];
                head += 1;
                let mut next: Vec<Vertex> = t.neighbors(v).filter(|&u| !seen[u]).collect();
                next.sort_unstable();
                for u in next {
                    seen[u] = true;
                    order.push(u);
                }
            }
            order
        }
    }
}

struct Search<'a> {
    t: &'a OrientedTree,
    order: &'a [Vertex],
    forced: &'a [bool],
    k: usize,
    color: Vec<Color>,
    class_size: Vec<usize>,
    /// `inside[v * (k + 1) + c]`: out-neighbors of `v` colored `c`.
    inside: Vec<usize>,
    uncolored_out: Vec<usize>,
    locked: Vec<bool>,
    forced_left: usize,
    used: usize,
    budget: Option<u64>,
    stats: &'a mut SearchStats,
}

struct OutOfBudget;

impl<'a> Search<'a> {
    fn new(
        t: &'a OrientedTree,
        order: &'a [Vertex],
        forced: &'a [bool],
        k: usize,
        budget: Option<u64>,
        stats: &'a mut SearchStats,
    ) -> Self {
        let n = t.n();
        Search {
            t,
            order,
            forced,
            k,
            color: vec![0; n],
            class_size: vec![0; k + 1],
            inside: vec![0; n * (k + 1)],
            uncolored_out: (0..n).map(|v| t.out_degree(v)).collect(),
            locked: vec![false; k + 1],
            forced_left: forced.iter().filter(|&&f| f).count(),
            used: 0,
            budget,
            stats,
        }
    }

    fn assign(&mut self, x: Vertex, c: Color) {
        let ci = c as usize;
        self.color[x] = c;
        self.class_size[ci] += 1;
        for &w in self.t.in_neighbors(x) {
            self.inside[w * (self.k + 1) + ci] += 1;
            self.uncolored_out[w] -= 1;
        }
        if ci > self.used {
            self.used = ci;
        }
        if self.forced[x] {
            self.locked[ci] = true;
            self.forced_left -= 1;
        }
    }

    fn unassign(&mut self, x: Vertex, c: Color, used_before: usize) {
        let ci = c as usize;
        self.color[x] = 0;
        self.class_size[ci] -= 1;
        for &w in self.t.in_neighbors(x) {
            self.inside[w * (self.k + 1) + ci] -= 1;
            self.uncolored_out[w] += 1;
        }
        self.used = used_before;
        if self.forced[x] {
            self.locked[ci] = false;
            self.forced_left += 1;
        }
    }

    /// Whether `v` can still end up dominating a whole class.
    fn live(&self, v: Vertex) -> bool {
        let out = self.t.out_neighbors(v);
        if out.is_empty() {
            return true;
        }
        let row = v * (self.k + 1);
        let has_class = out.iter().any(|&y| {
            let c = self.color[y] as usize;
            c != 0 && self.inside[row + c] == self.class_size[c]
        });
        has_class || (self.uncolored_out[v] > 0 && self.used < self.k)
    }

    fn dfs(&mut self, depth: usize) -> std::result::Result<bool, OutOfBudget> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.stats.max_depth = self.stats.max_depth.max(depth + 1);
        let x = self.order[depth];
        let used_before = self.used;
        let top = (self.used + 1).min(self.k) as Color;
        let first = if self.forced[x] {
            self.used as Color + 1
        } else {
            1
        };
        for c in first..=top {
            if self.locked[c as usize] {
                continue;
            }
            self.stats.nodes += 1;
            if self.budget.is_some_and(|b| self.stats.nodes > b) {
                return Err(OutOfBudget);
            }
            if self.t.neighbors(x).any(|u| self.color[u] == c) {
                self.stats.prunes.improper += 1;
                continue;
            }
            self.assign(x, c);
            if self.used + self.forced_left > self.k {
                self.stats.prunes.singleton += 1;
            } else if !(0..self.t.n()).all(|v| self.live(v)) {
                self.stats.prunes.domination += 1;
            } else if self.dfs(depth + 1)? {
                return Ok(true);
            }
            self.unassign(x, c, used_before);
        }
        Ok(false)
    }
}

/// Exact dominator chromatic number with a certificate.
pub fn solve_exact(t: &OrientedTree, opts: &SolveOptions) -> Result<SolveResult> {
    let lower_bound = trivial_lower_bound(t);
    let greedy = greedy_upper_bound(t);
    let upper_bound = greedy.num_colors();
    debug_assert!(lower_bound <= upper_bound);
    let order = vertex_order(t, opts.vertex_order);
    let forced = forced_singletons(t);
    let mut stats = SearchStats::default();

    let mut best = greedy;
    for k in lower_bound..upper_bound {
        stats.rounds += 1;
        let mut search = Search::new(t, &order, &forced, k, opts.node_budget, &mut stats);
        match search.dfs(0) {
            Ok(true) => {
                best = Coloring::from_assignment(&search.color);
                break;
            }
            Ok(false) => {}
            Err(OutOfBudget) => {
                return Err(Error::BudgetExhausted(opts.node_budget.unwrap_or_default()));
            }
        }
    }
    let certificate = verify_dominator(t, &best)
        .unwrap_or_else(|r| panic!("solver produced an invalid coloring for {t}: {r}"));
    Ok(SolveResult {
        chi: certificate.num_colors(),
        certificate,
        lower_bound,
        upper_bound,
        stats,
    })
}

/// Convenience wrapper: exhaustive search, default options.
pub fn chi(t: &OrientedTree) -> usize {
    solve_exact(t, &SolveOptions::default())
        .expect("unbudgeted search cannot run out")
        .chi
}

/// Exact value by enumerating every restricted-growth coloring and keeping
/// the smallest one that passes the dominator check.
pub fn brute_force_chi(t: &OrientedTree) -> Result<usize> {
    too_large("n", t.n(), BRUTE_FORCE_MAX_N)?;
    fn walk(t: &OrientedTree, colors: &mut Vec<Color>, max: Color, best: &mut Color) {
        if colors.len() == t.n() {
            if max < *best && is_dominator_assignment(t, colors) {
                *best = max;
            }
            return;
        }
        for c in 1..=max + 1 {
            colors.push(c);
            walk(t, colors, max.max(c), best);
            colors.pop();
        }
    }
    let mut best = Color::MAX;
    walk(t, &mut Vec::with_capacity(t.n()), 0, &mut best);
    Ok(best as usize)
}
