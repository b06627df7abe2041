//! Colorings and dominator-coloring verification.
//!
//! A vertex dominates a color class when the whole class lies inside its
//! out-neighborhood. Vertices with no out-neighbors are exempt; the
//! certificate records that exemption explicitly as [`Witness::SinkExempt`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{OrientedTree, Vertex};

pub type Color = u32;

/// Relabels colors so they appear in first-use order starting at 1.
pub fn canonicalize(assignment: &[Color]) -> Vec<Color> {
    let mut relabel: Vec<(Color, Color)> = Vec::new();
    assignment
        .iter()
        .map(|&c| match relabel.iter().find(|(from, _)| *from == c) {
            Some(&(_, to)) => to,
            None => {
                let to = relabel.len() as Color + 1;
                relabel.push((c, to));
                to
            }
        })
        .collect()
}

/// A total, canonically labeled vertex coloring: colors `1..=k`, each used,
/// in first-use order by vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Color>", into = "Vec<Color>")]
pub struct Coloring {
    colors: Vec<Color>,
    k: usize,
}

impl Coloring {
    /// Builds a coloring from arbitrary labels; labels are canonicalized.
    pub fn from_assignment(assignment: &[Color]) -> Coloring {
        let colors = canonicalize(assignment);
        let k = colors.iter().copied().max().unwrap_or(0) as usize;
        Coloring { colors, k }
    }

    /// Every vertex in its own class.
    pub fn all_distinct(n: usize) -> Coloring {
        Coloring {
            colors: (1..=n as Color).collect(),
            k: n,
        }
    }

    pub fn num_colors(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    /// Vertices of each class, indexed by `color - 1`.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut classes = vec![Vec::new(); self.k];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c as usize - 1].push(v);
        }
        classes
    }

    fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k + 1];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

impl TryFrom<Vec<Color>> for Coloring {
    type Error = String;

    fn try_from(colors: Vec<Color>) -> std::result::Result<Self, String> {
        let coloring = Coloring::from_assignment(&colors);
        if coloring.colors != colors {
            return Err(format!(
                "coloring {colors:?} is not in canonical first-use order"
            ));
        }
        Ok(coloring)
    }
}

impl From<Coloring> for Vec<Color> {
    fn from(c: Coloring) -> Self {
        c.colors
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// The vertex dominates this whole color class.
    DominatedClass(Color),
    /// The vertex has no out-neighbors and is satisfied vacuously.
    SinkExempt,
}

/// A failure of the dominator-coloring conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// Both ends of this arc share a color.
    ImproperEdge(Vertex, Vertex),
    /// The vertex has out-neighbors but dominates no color class.
    NoDominatedClass(Vertex),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ImproperEdge(u, v) => {
                write!(f, "arc {u} -> {v} joins two vertices of the same color")
            }
            Violation::NoDominatedClass(v) => write!(f, "vertex {v} dominates no color class"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatorCertificate {
    pub coloring: Coloring,
    pub witness: Vec<Witness>,
}

impl DominatorCertificate {
    pub fn num_colors(&self) -> usize {
        self.coloring.num_colors()
    }

    /// Re-validates the certificate against `t` using only the coloring and
    /// the recorded witnesses.
    pub fn recheck(&self, t: &OrientedTree) -> Result<Vec<Violation>> {
        check_size(t, &self.coloring)?;
        if self.witness.len() != t.n() {
            return Err(Error::SizeMismatch {
                expected: t.n(),
                found: self.witness.len(),
            });
        }
        let mut violations = match verify_dominator(t, &self.coloring) {
            Err(Rejection::Violations(vs)) => vs,
            _ => Vec::new(),
        };
        let classes = self.coloring.classes();
        for (v, w) in self.witness.iter().enumerate() {
            let ok = match *w {
                Witness::SinkExempt => t.out_degree(v) == 0,
                Witness::DominatedClass(c) => classes
                    .get((c as usize).wrapping_sub(1))
                    .is_some_and(|class| {
                        !class.is_empty() && class.iter().all(|&x| t.has_arc(v, x))
                    }),
            };
            if !ok {
                violations.push(Violation::NoDominatedClass(v));
            }
        }
        violations.sort_unstable();
        violations.dedup();
        Ok(violations)
    }
}

fn check_size(t: &OrientedTree, c: &Coloring) -> Result<()> {
    if t.n() != c.len() {
        return Err(Error::SizeMismatch {
            expected: t.n(),
            found: c.len(),
        });
    }
    Ok(())
}

/// Arcs whose endpoints share a color, in arc order.
pub fn is_proper(t: &OrientedTree, c: &Coloring) -> Result<Vec<Violation>> {
    check_size(t, c)?;
    Ok(t.arcs()
        .iter()
        .filter(|&&(u, v)| c.color(u) == c.color(v))
        .map(|&(u, v)| Violation::ImproperEdge(u, v))
        .collect())
}

fn dominated_with_sizes(t: &OrientedTree, c: &Coloring, sizes: &[usize], v: Vertex) -> Vec<Color> {
    let mut inside = vec![0usize; sizes.len()];
    for &x in t.out_neighbors(v) {
        inside[c.color(x) as usize] += 1;
    }
    (1..sizes.len())
        .filter(|&col| inside[col] > 0 && inside[col] == sizes[col])
        .map(|col| col as Color)
        .collect()
}

/// Every color whose entire class lies inside `N+(v)`, ascending.
pub fn dominated_classes(t: &OrientedTree, c: &Coloring, v: Vertex) -> Vec<Color> {
    dominated_with_sizes(t, c, &c.class_sizes(), v)
}

/// Why [`verify_dominator`] rejected a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    SizeMismatch {
        expected: usize,
        found: usize,
    },
    /// Exhaustive, sorted.
    Violations(Vec<Violation>),
}

impl Rejection {
    pub fn violations(&self) -> &[Violation] {
        match self {
            Rejection::Violations(v) => v,
            Rejection::SizeMismatch { .. } => &[],
        }
    }
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::SizeMismatch { expected, found } => {
                write!(
                    f,
                    "coloring covers {found} vertices but the tree has {expected}"
                )
            }
            Rejection::Violations(vs) => {
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Checks `c` against the dominator-coloring conditions, returning a
/// certificate or every violation found.
pub fn verify_dominator(
    t: &OrientedTree,
    c: &Coloring,
) -> std::result::Result<DominatorCertificate, Rejection> {
    if t.n() != c.len() {
        return Err(Rejection::SizeMismatch {
            expected: t.n(),
            found: c.len(),
        });
    }
    let mut violations = is_proper(t, c).expect("sizes checked");
    let sizes = c.class_sizes();
    let mut witness = Vec::with_capacity(t.n());
    for v in 0..t.n() {
        if t.out_degree(v) == 0 {
            witness.push(Witness::SinkExempt);
            continue;
        }
        match dominated_with_sizes(t, c, &sizes, v).first() {
            Some(&col) => witness.push(Witness::DominatedClass(col)),
            None => violations.push(Violation::NoDominatedClass(v)),
        }
    }
    if violations.is_empty() {
        Ok(DominatorCertificate {
            coloring: c.clone(),
            witness,
        })
    } else {
        violations.sort_unstable();
        Err(Rejection::Violations(violations))
    }
}

/// Allocation-light predicate over raw (not necessarily canonical) labels.
/// Accepts exactly the assignments [`verify_dominator`] accepts.
pub fn is_dominator_assignment(t: &OrientedTree, colors: &[Color]) -> bool {
    if colors.len() != t.n() {
        return false;
    }
    if t.arcs().iter().any(|&(u, v)| colors[u] == colors[v]) {
        return false;
    }
    (0..t.n()).all(|v| {
        let out = t.out_neighbors(v);
        out.is_empty()
            || out.iter().any(|&x| {
                let col = colors[x];
                let inside = out.iter().filter(|&&y| colors[y] == col).count();
                let total = colors.iter().filter(|&&y| y == col).count();
                inside == total
            })
    })
}
