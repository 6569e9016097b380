//! Edge-rankings of trees.
//!
//! An edge-ranking labels tree edges with positive integers so that any two
//! edges sharing a label are separated by an edge with a larger label. The
//! minimum number of labels is the edge-ranking number of the tree.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chordal::Dsu;
use crate::error::{Error, Result};

/// Default edge count above which [`optimal_edge_ranking`] refuses to run.
pub const DEFAULT_EXACT_CAP: usize = 64;

/// A tree on nodes `0..n` with indexed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Tree> {
        if n == 0 {
            return Err(Error::input("a tree needs at least one node"));
        }
        if edges.len() + 1 != n {
            return Err(Error::input(format!(
                "a tree on {n} nodes needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut dsu = Dsu::new(n);
        let mut adj = vec![Vec::new(); n];
        let mut norm = Vec::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return Err(Error::input(format!("bad tree edge ({a}, {b})")));
            }
            if !dsu.union(a, b) {
                return Err(Error::input(format!("edge ({a}, {b}) closes a cycle")));
            }
            adj[a].push((b, i));
            adj[b].push((a, i));
            norm.push((a.min(b), a.max(b)));
        }
        Ok(Tree {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn path(n: usize) -> Tree {
        Tree::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path is a tree")
    }

    /// The star `K_{1,m}` with center 0.
    pub fn star(m: usize) -> Tree {
        Tree::new(m + 1, (1..=m).map(|i| (0, i)).collect()).expect("star is a tree")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, indexed by position.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs around `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

/// Rank per tree edge, indexed like [`Tree::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRanking {
    pub ranks: Vec<u32>,
}

impl EdgeRanking {
    /// Number of ranks used, i.e. the largest rank (0 for an edgeless tree).
    pub fn r(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Renumbers the used ranks to `1..=r` keeping their relative order.
    pub fn normalized(&self) -> EdgeRanking {
        let mut used: Vec<u32> = self.ranks.clone();
        used.sort_unstable();
        used.dedup();
        let ranks = self
            .ranks
            .iter()
            .map(|x| used.binary_search(x).expect("rank is present") as u32 + 1)
            .collect();
        EdgeRanking { ranks }
    }

    /// One `u v : rank` line per edge.
    pub fn to_text(&self, tree: &Tree) -> String {
        let mut s = String::new();
        for (&(u, v), r) in tree.edges().iter().zip(&self.ranks) {
            let _ = writeln!(s, "{u} {v} : {r}");
        }
        s
    }
}

/// Checks the separation condition. For each rank `k`, the edges of rank at
/// most `k` split the tree into components; each component may hold at most
/// one edge of rank exactly `k`.
pub fn is_valid_edge_ranking(tree: &Tree, ranking: &EdgeRanking) -> Result<bool> {
    if ranking.ranks.len() != tree.edge_count() {
        return Err(Error::input(format!(
            "ranking assigns {} edges, tree has {}",
            ranking.ranks.len(),
            tree.edge_count()
        )));
    }
    if let Some(i) = ranking.ranks.iter().position(|&r| r == 0) {
        return Err(Error::input(format!("edge {i} has no rank")));
    }
    let mut levels: Vec<u32> = ranking.ranks.clone();
    levels.sort_unstable();
    levels.dedup();
    for &k in &levels {
        let mut dsu = Dsu::new(tree.node_count());
        for (&(u, v), &r) in tree.edges().iter().zip(&ranking.ranks) {
            if r <= k {
                dsu.union(u, v);
            }
        }
        let mut seen = HashMap::new();
        for (&(u, _), &r) in tree.edges().iter().zip(&ranking.ranks) {
            if r == k && seen.insert(dsu.find(u), ()).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ceil(log2 x)`, with 0 for `x <= 1`.
pub fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// `max(max degree, ceil(log2 |V|))`, both valid lower bounds on the
/// edge-ranking number.
pub fn edge_ranking_lower_bound(tree: &Tree) -> u32 {
    (tree.max_degree() as u32).max(ceil_log2(tree.node_count()))
}

pub fn optimal_edge_ranking(tree: &Tree) -> Result<EdgeRanking> {
    optimal_edge_ranking_capped(tree, DEFAULT_EXACT_CAP)
}

/// Exact minimum edge-ranking.
///
/// Every valid ranking of a connected tree has a unique top edge, so the
/// optimum is `min over e of 1 + max(opt(T1), opt(T2))` with `T1`, `T2` the
/// components of `T - e`. Subtrees are memoized by edge bitmask and the
/// search is bounded by the heuristic ranking and per-subtree lower bounds.
pub fn optimal_edge_ranking_capped(tree: &Tree, cap: usize) -> Result<EdgeRanking> {
    let m = tree.edge_count();
    if m > cap || m > 64 {
        return Err(Error::Size(format!(
            "tree has {m} edges, exact ranking is limited to {}; use heuristic_edge_ranking",
            cap.min(64)
        )));
    }
    if m == 0 {
        return Ok(EdgeRanking { ranks: Vec::new() });
    }
    let heuristic = heuristic_edge_ranking(tree);
    let mut solver = ExactRanker::new(tree);
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let value = solver.solve(full, heuristic.r() + 1);
    debug_assert!(value <= heuristic.r());
    let mut ranks = vec![0u32; m];
    solver.assign(full, &mut ranks);
    Ok(EdgeRanking { ranks }.normalized())
}

struct ExactRanker<'a> {
    tree: &'a Tree,
    exact: HashMap<u64, (u32, usize)>,
    lower: HashMap<u64, u32>,
}

impl<'a> ExactRanker<'a> {
    fn new(tree: &'a Tree) -> Self {
        ExactRanker {
            tree,
            exact: HashMap::new(),
            lower: HashMap::new(),
        }
    }

    fn static_bound(&self, mask: u64) -> u32 {
        let mut deg: HashMap<usize, u32> = HashMap::new();
        let mut bits = mask;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = self.tree.edges[e];
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
        }
        let max_deg = deg.values().copied().max().unwrap_or(0);
        max_deg.max(ceil_log2(mask.count_ones() as usize + 1))
    }

    /// Components of `mask` minus edge `e`, as edge masks.
    fn split(&self, mask: u64, e: usize) -> (u64, u64) {
        let rest = mask & !(1u64 << e);
        let start = self.tree.edges[e].0;
        let mut side = 0u64;
        let mut stack = vec![start];
        let mut visited = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, f) in self.tree.incident(x) {
                if rest & (1u64 << f) != 0 && side & (1u64 << f) == 0 {
                    side |= 1u64 << f;
                    if !visited.contains(&y) {
                        visited.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        (side, rest & !side)
    }

    /// Returns the exact optimum of `mask` when it is below `limit`,
    /// otherwise some value `>= limit`.
    fn solve(&mut self, mask: u64, limit: u32) -> u32 {
        let count = mask.count_ones();
        if count <= 1 {
            return count;
        }
        if let Some(&(v, _)) = self.exact.get(&mask) {
            return v;
        }
        let lb = self
            .static_bound(mask)
            .max(self.lower.get(&mask).copied().unwrap_or(0));
        if lb >= limit {
            return lb;
        }
        let mut candidates: Vec<(u32, usize, u64, u64)> = Vec::new();
        let mut bits = mask;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (a, b) = self.split(mask, e);
            let worst = a.count_ones().max(b.count_ones());
            candidates.push((worst, e, a, b));
        }
        candidates.sort_unstable_by_key(|c| (c.0, c.1));

        let mut best = limit;
        let mut best_edge = usize::MAX;
        for (_, e, a, b) in candidates {
            if best <= lb {
                break;
            }
            let child_limit = best - 1;
            let (big, small) = if a.count_ones() >= b.count_ones() {
                (a, b)
            } else {
                (b, a)
            };
            let v1 = self.solve(big, child_limit);
            if v1 >= child_limit {
                continue;
            }
            let v2 = self.solve(small, child_limit);
            if v2 >= child_limit {
                continue;
            }
            best = 1 + v1.max(v2);
            best_edge = e;
        }
        if best < limit {
            self.exact.insert(mask, (best, best_edge));
            best
        } else {
            self.lower.insert(mask, limit);
            limit
        }
    }

    /// Writes an optimal ranking of `mask` into `ranks`; `mask` must be solved.
    fn assign(&mut self, mask: u64, ranks: &mut [u32]) {
        match mask.count_ones() {
            0 => {}
            1 => ranks[mask.trailing_zeros() as usize] = 1,
            _ => {
                let (value, e) = self.exact[&mask];
                ranks[e] = value;
                let (a, b) = self.split(mask, e);
                for part in [a, b] {
                    if part.count_ones() > 1 && !self.exact.contains_key(&part) {
                        // solved only as a bound so far; finish it exactly
                        self.solve(part, value);
                    }
                    self.assign(part, ranks);
                }
            }
        }
    }
}

/// Recursive most-balanced-separator ranking. The top rank goes to the edge
/// minimizing the larger side (ties: smallest `(u, v)`), then both sides are
/// ranked independently. Always valid, not always optimal.
pub fn heuristic_edge_ranking(tree: &Tree) -> EdgeRanking {
    let mut ranks = vec![0u32; tree.edge_count()];
    let all: Vec<usize> = (0..tree.edge_count()).collect();
    rank_component(tree, &all, &mut ranks);
    EdgeRanking { ranks }.normalized_or_empty()
}

impl EdgeRanking {
    fn normalized_or_empty(self) -> EdgeRanking {
        if self.ranks.is_empty() {
            self
        } else {
            self.normalized()
        }
    }
}

fn rank_component(tree: &Tree, edges: &[usize], ranks: &mut [u32]) -> u32 {
    match edges.len() {
        0 => return 0,
        1 => {
            ranks[edges[0]] = 1;
            return 1;
        }
        _ => {}
    }
    let in_comp: HashMap<usize, ()> = edges.iter().map(|&e| (e, ())).collect();
    let total_nodes = edges.len() + 1;
    // subtree sizes from a DFS rooted at one endpoint
    let root = tree.edges[edges[0]].0;
    let mut order = Vec::with_capacity(total_nodes);
    let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut stack = vec![root];
    let mut visited: HashMap<usize, ()> = HashMap::from([(root, ())]);
    while let Some(x) = stack.pop() {
        order.push(x);
        for &(y, f) in tree.incident(x) {
            if in_comp.contains_key(&f) && visited.insert(y, ()).is_none() {
                parent.insert(y, (x, f));
                stack.push(y);
            }
        }
    }
    let mut size: HashMap<usize, usize> = order.iter().map(|&x| (x, 1)).collect();
    for &x in order.iter().rev() {
        if let Some(&(p, _)) = parent.get(&x) {
            let s = size[&x];
            *size.get_mut(&p).expect("parent visited") += s;
        }
    }
    let best_edge = parent
        .iter()
        .map(|(&child, &(_, f))| {
            let below = size[&child];
            (below.max(total_nodes - below), tree.edges[f], f)
        })
        .min()
        .map(|(_, _, f)| f)
        .expect("component has an edge");
    // collect the two sides
    let (u, _) = tree.edges[best_edge];
    let mut side = Vec::new();
    let mut stack = vec![u];
    let mut seen: HashMap<usize, ()> = HashMap::from([(u, ())]);
    while let Some(x) = stack.pop() {
        for &(y, f) in tree.incident(x) {
            if f != best_edge && in_comp.contains_key(&f) && seen.insert(y, ()).is_none() {
                side.push(f);
                stack.push(y);
            }
        }
    }
    let side_set: HashMap<usize, ()> = side.iter().map(|&e| (e, ())).collect();
    let other: Vec<usize> = edges
        .iter()
        .copied()
        .filter(|&e| e != best_edge && !side_set.contains_key(&e))
        .collect();
    let top = 1 + rank_component(tree, &side, ranks).max(rank_component(tree, &other, ranks));
    ranks[best_edge] = top;
    top
}
