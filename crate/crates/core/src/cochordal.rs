//! Biclique partitions and covers of co-chordal graphs from a clique tree of
//! the complement.
//!
//! Cutting a clique-tree edge `e` splits the tree into two parts; the vertices
//! of each part outside `mid(e)` form the two sides of a biclique of `G`.
//! Recursing on both parts yields a partition of `E(G)` into `mc(G^c) - 1`
//! bicliques. Choosing the cut edges by an edge-ranking groups the bicliques
//! into levels, and bicliques within one level are greedily merged.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::biclique::{verify_cover, Biclique};
use crate::chordal::{clique_tree, membership_from_tree, CliqueTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::tree_rank::{
    heuristic_edge_ranking, is_valid_edge_ranking, optimal_edge_ranking_capped, EdgeRanking, Tree,
    DEFAULT_EXACT_CAP,
};

/// How [`find_partition`] picks the edge to cut.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgePolicy {
    /// Minimize the larger side; ties go to the smallest `(a, b)` node pair.
    #[default]
    Balanced,
    /// Lowest-indexed edge of the current subtree.
    First,
}

/// Checks that the edges form a forest and carry the right middle sets.
fn check_structure(t: &CliqueTree) -> Result<()> {
    if !t.is_forest() {
        return Err(Error::domain("clique tree edges do not form a forest"));
    }
    for e in &t.edges {
        if e.mid != t.nodes[e.a].intersection(&t.nodes[e.b]) {
            return Err(Error::domain(format!(
                "middle set of edge ({}, {}) is not the intersection of its cliques",
                e.a, e.b
            )));
        }
    }
    Ok(())
}

/// Joins the trees of a clique forest into one tree by chaining the smallest
/// node of each component with edges whose middle set is empty.
pub fn spanning_clique_tree(t: &CliqueTree) -> CliqueTree {
    let comps = t.node_components();
    let mut out = t.clone();
    for pair in comps.windows(2) {
        let (a, b) = (pair[0][0], pair[1][0]);
        out.edges.push(crate::chordal::CliqueTreeEdge {
            a: a.min(b),
            b: a.max(b),
            mid: VertexSet::new(),
        });
    }
    out.edges.sort_by_key(|e| (e.a, e.b));
    out
}

/// An equivalent clique tree where, for every middle set `S`, the parts
/// joined by `S`-edges are chained in a path instead of whatever shape the
/// input had. Any two cliques containing `S` from different parts meet in
/// exactly `S`, so every rewired edge keeps middle set `S`.
pub fn chain_separators(t: &CliqueTree) -> CliqueTree {
    let mut tree = spanning_clique_tree(t);
    let mut separators: Vec<VertexSet> = tree.edges.iter().map(|e| e.mid.clone()).collect();
    separators.sort();
    separators.dedup();
    for sep in separators {
        if tree.edges.iter().filter(|e| e.mid == sep).count() < 2 {
            continue;
        }
        let kept: Vec<_> = tree
            .edges
            .iter()
            .filter(|e| e.mid != sep)
            .cloned()
            .collect();
        let pruned = CliqueTree {
            nodes: tree.nodes.clone(),
            edges: kept.clone(),
        };
        let reps: Vec<usize> = pruned
            .node_components()
            .iter()
            .filter_map(|comp| {
                comp.iter()
                    .copied()
                    .find(|&k| sep.is_subset(&tree.nodes[k]))
            })
            .collect();
        let mut edges = kept;
        for pair in reps.windows(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            let mid = tree.nodes[a].intersection(&tree.nodes[b]);
            debug_assert_eq!(mid, sep);
            edges.push(crate::chordal::CliqueTreeEdge { a, b, mid });
        }
        edges.sort_by_key(|e| (e.a, e.b));
        tree = CliqueTree {
            nodes: tree.nodes,
            edges,
        };
    }
    tree
}

/// Converts a spanning clique tree to a plain [`Tree`] with the same edge indices.
pub fn clique_tree_shape(t: &CliqueTree) -> Result<Tree> {
    Tree::new(
        t.nodes.len().max(1),
        t.edges.iter().map(|e| (e.a, e.b)).collect(),
    )
}

struct Cutter<'a> {
    tree: &'a CliqueTree,
    adj: Vec<Vec<(usize, usize)>>,
}

impl<'a> Cutter<'a> {
    fn new(tree: &'a CliqueTree) -> Self {
        Cutter {
            tree,
            adj: tree.adjacency(),
        }
    }

    /// Edge indices inside the node subset `nodes`.
    fn inner_edges(&self, nodes: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.tree.nodes.len()];
        for &k in nodes {
            inside[k] = true;
        }
        (0..self.tree.edges.len())
            .filter(|&i| inside[self.tree.edges[i].a] && inside[self.tree.edges[i].b])
            .collect()
    }

    /// The two node sides of `nodes` after removing edge `cut`; the first
    /// side holds the edge's `a` endpoint.
    fn split(&self, nodes: &[usize], cut: usize) -> (Vec<usize>, Vec<usize>) {
        let mut inside = vec![false; self.tree.nodes.len()];
        for &k in nodes {
            inside[k] = true;
        }
        let start = self.tree.edges[cut].a;
        let mut first = vec![start];
        let mut seen = vec![false; self.tree.nodes.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, f) in &self.adj[x] {
                if f != cut && inside[y] && !seen[y] {
                    seen[y] = true;
                    first.push(y);
                    stack.push(y);
                }
            }
        }
        first.sort_unstable();
        let second = nodes.iter().copied().filter(|&k| !seen[k]).collect();
        (first, second)
    }

    fn cut_biclique(&self, cut: usize, first: &[usize], second: &[usize]) -> Result<Biclique> {
        let mid = &self.tree.edges[cut].mid;
        let side = |part: &[usize]| {
            part.iter()
                .fold(VertexSet::new(), |acc, &k| acc.union(&self.tree.nodes[k]))
                .difference(mid)
        };
        let (left, right) = (side(first), side(second));
        if left.is_empty() || right.is_empty() {
            return Err(Error::domain(format!(
                "cutting edge ({}, {}) leaves an empty side; nodes are not maximal cliques",
                self.tree.edges[cut].a, self.tree.edges[cut].b
            )));
        }
        Ok(Biclique { left, right })
    }
}

/// Biclique partition of `G` from a clique tree (or forest) of `G^c`.
/// Produces exactly `node_count - 1` bicliques.
pub fn find_partition(t: &CliqueTree, policy: EdgePolicy) -> Result<Vec<Biclique>> {
    check_structure(t)?;
    let tree = spanning_clique_tree(t);
    let cutter = Cutter::new(&tree);
    let mut out = Vec::with_capacity(tree.nodes.len().saturating_sub(1));
    let mut stack = vec![(0..tree.nodes.len()).collect::<Vec<_>>()];
    while let Some(nodes) = stack.pop() {
        if nodes.len() <= 1 {
            continue;
        }
        let inner = cutter.inner_edges(&nodes);
        let cut = match policy {
            EdgePolicy::First => inner[0],
            EdgePolicy::Balanced => inner
                .iter()
                .map(|&f| {
                    let (x, y) = cutter.split(&nodes, f);
                    (x.len().max(y.len()), tree.edges[f].a, tree.edges[f].b, f)
                })
                .min()
                .map(|c| c.3)
                .expect("subtree with two nodes has an edge"),
        };
        let (first, second) = cutter.split(&nodes, cut);
        out.push(cutter.cut_biclique(cut, &first, &second)?);
        stack.push(second);
        stack.push(first);
    }
    Ok(out)
}

/// A biclique tagged with the smallest BFS position of the subtree it was cut from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeveledBiclique {
    pub biclique: Biclique,
    pub ord: usize,
}

/// Bicliques grouped by level; `levels[0]` is level 1 (cut by the top rank).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeveledBicliques {
    pub levels: Vec<Vec<LeveledBiclique>>,
}

impl LeveledBicliques {
    pub fn flatten(&self) -> Vec<Biclique> {
        self.levels
            .iter()
            .flatten()
            .map(|x| x.biclique.clone())
            .collect()
    }

    pub fn level(&self, level: usize) -> &[LeveledBiclique] {
        self.levels
            .get(level.wrapping_sub(1))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// 1-based BFS positions of the tree nodes, starting from the lowest-indexed
/// leaf and visiting neighbors in ascending order.
pub fn bfs_leaf_order(t: &CliqueTree) -> Vec<usize> {
    let n = t.nodes.len();
    let mut pos = vec![0usize; n];
    if n == 0 {
        return pos;
    }
    let mut adj = t.adjacency();
    for list in &mut adj {
        list.sort_unstable();
    }
    let start = (0..n).find(|&k| adj[k].len() <= 1).unwrap_or(0);
    let mut next = 1;
    let mut queue = VecDeque::from([start]);
    pos[start] = next;
    while let Some(x) = queue.pop_front() {
        for &(y, _) in &adj[x] {
            if pos[y] == 0 {
                next += 1;
                pos[y] = next;
                queue.push_back(y);
            }
        }
    }
    pos
}

/// Cuts the tree top-down by rank: the highest-ranked edge of each subtree is
/// cut first and its biclique stored at level `r + 1 - rank`, tagged with the
/// subtree's smallest `sigma` position.
pub fn find_biclique_levels(
    t: &CliqueTree,
    ranking: &EdgeRanking,
    sigma: &[usize],
    r: u32,
) -> Result<LeveledBicliques> {
    check_structure(t)?;
    if t.nodes.len() <= 1 {
        return Ok(LeveledBicliques::default());
    }
    if !t.is_tree() {
        return Err(Error::domain(
            "leveled cutting needs a spanning clique tree",
        ));
    }
    let shape = clique_tree_shape(t)?;
    if !is_valid_edge_ranking(&shape, ranking)? {
        return Err(Error::input(
            "edge ranking violates the separation condition",
        ));
    }
    if ranking.r() > r {
        return Err(Error::input(format!(
            "ranking uses rank {} above r = {r}",
            ranking.r()
        )));
    }
    if sigma.len() != t.nodes.len() {
        return Err(Error::input("ordering must cover every tree node"));
    }
    let cutter = Cutter::new(t);
    let mut levels: Vec<Vec<LeveledBiclique>> = vec![Vec::new(); r as usize];
    let mut stack = vec![(0..t.nodes.len()).collect::<Vec<_>>()];
    while let Some(nodes) = stack.pop() {
        if nodes.len() <= 1 {
            continue;
        }
        let cut = cutter
            .inner_edges(&nodes)
            .into_iter()
            .max_by_key(|&f| ranking.ranks[f])
            .expect("subtree with two nodes has an edge");
        let level = (r + 1 - ranking.ranks[cut]) as usize;
        let ord = nodes
            .iter()
            .map(|&k| sigma[k])
            .min()
            .expect("nonempty subtree");
        let (first, second) = cutter.split(&nodes, cut);
        let biclique = cutter.cut_biclique(cut, &first, &second)?;
        levels[level - 1].push(LeveledBiclique { biclique, ord });
        stack.push(second);
        stack.push(first);
    }
    Ok(LeveledBicliques { levels })
}

/// Greedy merge of one level. Entries are taken in ascending `ord`; each is
/// folded into every existing member it forms a larger biclique with (in
/// either orientation, same side first), and becomes a new member only if
/// no merge happened.
pub fn merge_bicliques(level: &[LeveledBiclique], g: &Graph) -> Result<Vec<Biclique>> {
    if let Some(i) = level.iter().position(|x| !x.biclique.is_subgraph_of(g)) {
        return Err(Error::input(format!(
            "entry {i} is not a biclique subgraph of the graph"
        )));
    }
    let mut sorted: Vec<&LeveledBiclique> = level.iter().collect();
    sorted.sort_by_key(|x| x.ord);
    let mut out: Vec<Biclique> = Vec::new();
    for entry in sorted {
        let b = &entry.biclique;
        let mut merged = false;
        for member in out.iter_mut() {
            let same = (b.left.union(&member.left), b.right.union(&member.right));
            if g.is_biclique_subgraph(&same.0, &same.1) {
                *member = Biclique {
                    left: same.0,
                    right: same.1,
                };
                merged = true;
                continue;
            }
            let flipped = (b.right.union(&member.left), b.left.union(&member.right));
            if g.is_biclique_subgraph(&flipped.0, &flipped.1) {
                *member = Biclique {
                    left: flipped.0,
                    right: flipped.1,
                };
                merged = true;
            }
        }
        if !merged {
            out.push(b.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankingMode {
    Exact,
    Heuristic,
    /// Exact when the tree is within the exact-search cap, heuristic otherwise.
    #[default]
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverOptions {
    pub ranking: RankingMode,
    pub exact_cap: usize,
    /// Also try the separator-chained clique tree and keep whichever needs fewer ranks.
    pub chain_separators: bool,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            ranking: RankingMode::Auto,
            exact_cap: DEFAULT_EXACT_CAP,
            chain_separators: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverMetadata {
    /// Number of maximal cliques of the complement.
    pub mc_complement: usize,
    pub ranking_r: u32,
    pub ranking_optimal: bool,
    /// Every vertex lies in at most two maximal independent sets.
    pub all_leq2_flag: bool,
    pub membership_counts: Vec<usize>,
    pub level_sizes_before: Vec<usize>,
    pub level_sizes_after: Vec<usize>,
    /// The separator-chained clique tree was used instead of the search tree.
    pub chained: bool,
    /// Size is guaranteed at most `ranking_r`: optimal ranking and the
    /// two-membership condition both hold.
    pub edge_ranking_bound_applies: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverOutcome {
    pub cover: Vec<Biclique>,
    pub clique_tree: CliqueTree,
    pub ranking: EdgeRanking,
    pub levels: LeveledBicliques,
    pub metadata: CoverMetadata,
}

fn rank_tree(shape: &Tree, opts: &CoverOptions) -> Result<(EdgeRanking, bool)> {
    match opts.ranking {
        RankingMode::Exact => Ok((optimal_edge_ranking_capped(shape, opts.exact_cap)?, true)),
        RankingMode::Heuristic => Ok((heuristic_edge_ranking(shape), false)),
        RankingMode::Auto => {
            if shape.edge_count() <= opts.exact_cap.min(64) {
                Ok((optimal_edge_ranking_capped(shape, opts.exact_cap)?, true))
            } else {
                Ok((heuristic_edge_ranking(shape), false))
            }
        }
    }
}

/// Biclique cover of a co-chordal graph.
///
/// Builds a clique tree of `G^c`, ranks its edges, cuts it level by level and
/// merges each level. The result always has at most `mc(G^c) - 1` members;
/// with an optimal ranking and every vertex in at most two maximal
/// independent sets, each level merges into one biclique.
pub fn cover_cochordal(g: &Graph, opts: &CoverOptions) -> Result<CoverOutcome> {
    let forest = clique_tree(&g.complement())?;
    let membership = membership_from_tree(g.n(), &forest);
    let mc = forest.nodes.len();

    let base = spanning_clique_tree(&forest);
    let mut candidates = vec![(base, false)];
    if opts.chain_separators && mc > 2 {
        let chained = chain_separators(&forest);
        if chained.edges != candidates[0].0.edges {
            candidates.push((chained, true));
        }
    }
    let mut best: Option<(CliqueTree, bool, EdgeRanking, bool)> = None;
    for (tree, chained) in candidates {
        let (ranking, optimal) = rank_tree(&clique_tree_shape(&tree)?, opts)?;
        if best.as_ref().is_none_or(|b| ranking.r() < b.2.r()) {
            best = Some((tree, chained, ranking, optimal));
        }
    }
    let (tree, chained, ranking, optimal) = best.expect("at least one candidate tree");
    let r = ranking.r();
    let sigma = bfs_leaf_order(&tree);
    let levels = find_biclique_levels(&tree, &ranking, &sigma, r)?;

    let mut cover = Vec::new();
    let mut after = Vec::with_capacity(levels.levels.len());
    for level in &levels.levels {
        let merged = merge_bicliques(level, g)?;
        after.push(merged.len());
        cover.extend(merged);
    }
    if !verify_cover(g, &cover) {
        return Err(Error::domain(
            "internal error: constructed cover failed verification",
        ));
    }
    let metadata = CoverMetadata {
        mc_complement: mc,
        ranking_r: r,
        ranking_optimal: optimal,
        all_leq2_flag: membership.all_at_most_two,
        membership_counts: membership.counts,
        level_sizes_before: levels.levels.iter().map(Vec::len).collect(),
        level_sizes_after: after,
        chained,
        edge_ranking_bound_applies: optimal && membership.all_at_most_two,
    };
    Ok(CoverOutcome {
        cover,
        clique_tree: tree,
        ranking,
        levels,
        metadata,
    })
}

/// Biclique partition of a co-chordal graph with `mc(G^c) - 1` members.
pub fn partition_cochordal(g: &Graph, policy: EdgePolicy) -> Result<Vec<Biclique>> {
    find_partition(&clique_tree(&g.complement())?, policy)
}
