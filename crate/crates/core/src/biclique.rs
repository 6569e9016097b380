//! Bicliques and cover/partition verification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};

/// A pair of nonempty disjoint vertex sets `{L, R}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Biclique {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Biclique {
    pub fn new(left: VertexSet, right: VertexSet) -> Result<Biclique> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::input("biclique sides must be nonempty"));
        }
        if !left.is_disjoint(&right) {
            return Err(Error::input("biclique sides must be disjoint"));
        }
        Ok(Biclique { left, right })
    }

    /// Same biclique with the side holding the smallest vertex on the left.
    pub fn canonical(&self) -> Biclique {
        if self.left.first() <= self.right.first() {
            self.clone()
        } else {
            Biclique {
                left: self.right.clone(),
                right: self.left.clone(),
            }
        }
    }

    pub fn swapped(&self) -> Biclique {
        Biclique {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        (self.left.contains(e.u) && self.right.contains(e.v))
            || (self.left.contains(e.v) && self.right.contains(e.u))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.left.iter().flat_map(move |u| {
            self.right
                .iter()
                .map(move |v| Edge::new(u, v).expect("sides are disjoint"))
        })
    }

    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        g.is_biclique_subgraph(&self.left, &self.right)
    }

    /// True iff every edge of `self` is an edge of `other`.
    pub fn is_contained_in(&self, other: &Biclique) -> bool {
        (self.left.is_subset(&other.left) && self.right.is_subset(&other.right))
            || (self.left.is_subset(&other.right) && self.right.is_subset(&other.left))
    }
}

impl fmt::Display for Biclique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L: {} | R: {}", self.left, self.right)
    }
}

/// Why a collection of bicliques fails to cover or partition a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverDefect {
    /// Member `index` is not a biclique subgraph of the host graph.
    NotBiclique {
        index: usize,
    },
    Uncovered(Edge),
    /// Edge covered by more than one member (partition mode only).
    Overlap(Edge),
}

impl fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverDefect::NotBiclique { index } => {
                write!(
                    f,
                    "biclique #{index} is not a biclique subgraph of the graph"
                )
            }
            CoverDefect::Uncovered(e) => write!(f, "edge {} {} is not covered", e.u, e.v),
            CoverDefect::Overlap(e) => write!(f, "edge {} {} is covered more than once", e.u, e.v),
        }
    }
}

fn coverage(g: &Graph, bicliques: &[Biclique]) -> std::result::Result<Vec<u32>, CoverDefect> {
    let n = g.n();
    let mut count = vec![0u32; n * n];
    for (index, b) in bicliques.iter().enumerate() {
        if b.left.iter().chain(b.right.iter()).any(|v| v >= n) || !b.is_subgraph_of(g) {
            return Err(CoverDefect::NotBiclique { index });
        }
        for e in b.edges() {
            count[e.u * n + e.v] += 1;
        }
    }
    Ok(count)
}

/// First defect preventing `bicliques` from covering every edge of `g`.
pub fn check_cover(g: &Graph, bicliques: &[Biclique]) -> std::result::Result<(), CoverDefect> {
    let count = coverage(g, bicliques)?;
    match g
        .edges()
        .into_iter()
        .find(|e| count[e.u * g.n() + e.v] == 0)
    {
        Some(e) => Err(CoverDefect::Uncovered(e)),
        None => Ok(()),
    }
}

/// First defect preventing `bicliques` from covering every edge exactly once.
pub fn check_partition(g: &Graph, bicliques: &[Biclique]) -> std::result::Result<(), CoverDefect> {
    let count = coverage(g, bicliques)?;
    for e in g.edges() {
        match count[e.u * g.n() + e.v] {
            0 => return Err(CoverDefect::Uncovered(e)),
            1 => {}
            _ => return Err(CoverDefect::Overlap(e)),
        }
    }
    Ok(())
}

pub fn verify_cover(g: &Graph, bicliques: &[Biclique]) -> bool {
    check_cover(g, bicliques).is_ok()
}

pub fn verify_partition(g: &Graph, bicliques: &[Biclique]) -> bool {
    check_partition(g, bicliques).is_ok()
}

/// Biclique induced by splitting a family of cliques of the complement into
/// index sets `left` and `right`:
/// `{ U_left \ U_right, U_right \ U_left }`, or `None` if a side is empty.
pub fn clique_split_biclique(
    cliques: &[VertexSet],
    left: &[usize],
    right: &[usize],
) -> Result<Option<Biclique>> {
    if left.is_empty() || right.is_empty() {
        return Err(Error::input("both index sets must be nonempty"));
    }
    let mut seen = vec![0u8; cliques.len()];
    for &i in left.iter().chain(right) {
        if i >= cliques.len() {
            return Err(Error::input(format!("clique index {i} out of range")));
        }
        seen[i] += 1;
    }
    if seen.iter().any(|&c| c != 1) {
        return Err(Error::input("index sets must partition the clique indices"));
    }
    let union = |idx: &[usize]| {
        idx.iter()
            .fold(VertexSet::new(), |acc, &i| acc.union(&cliques[i]))
    };
    let (ul, ur) = (union(left), union(right));
    let (l, r) = (ul.difference(&ur), ur.difference(&ul));
    if l.is_empty() || r.is_empty() {
        return Ok(None);
    }
    Ok(Some(Biclique { left: l, right: r }))
}

/// For a biclique `{L, R}` of `g` and the maximal cliques of its complement,
/// the clique split with `I` = cliques meeting `L`, which contains `{L, R}`
/// side by side. Returns `(I, J, split biclique)`.
pub fn enclosing_clique_split(
    cliques: &[VertexSet],
    b: &Biclique,
) -> Result<(Vec<usize>, Vec<usize>, Option<Biclique>)> {
    let (left, right): (Vec<usize>, Vec<usize>) =
        (0..cliques.len()).partition(|&i| b.left.iter().any(|u| cliques[i].contains(u)));
    if left.is_empty() || right.is_empty() {
        return Ok((left, right, None));
    }
    let split = clique_split_biclique(cliques, &left, &right)?;
    Ok((left, right, split))
}
