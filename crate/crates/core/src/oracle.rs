//! Brute-force reference computations for small instances.
//!
//! Everything here is deliberately independent of the clique-tree machinery:
//! vertex and edge sets are `u128` bitmasks and searches are plain
//! branch-and-bound, so results can be used to check the heuristics.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::biclique::Biclique;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::tree_rank::{ceil_log2, is_valid_edge_ranking, EdgeRanking, Tree};

/// Caps for the exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Vertex cap for biclique cover and partition search.
    pub cover_vertices: usize,
    /// Vertex cap for coloring and matching.
    pub aux_vertices: usize,
    /// Edge cap for cover/partition search; also the vertex cap for clique
    /// search, which mostly runs on edge conflict graphs.
    pub edges: usize,
    /// Soft wall-clock cap per call.
    pub time_limit: Duration,
    /// Edge cap for exhaustive ranking search.
    pub tree_edges: usize,
    /// Stop cover search once it meets the logarithmic clique-count bound.
    /// Turn off when the oracle is used to check that bound.
    pub use_log_bound: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            cover_vertices: 14,
            aux_vertices: 20,
            edges: 128,
            time_limit: Duration::from_secs(10),
            tree_edges: 9,
            use_log_bound: true,
        }
    }
}

impl OracleBudget {
    pub fn validate(&self) -> Result<()> {
        if self.cover_vertices == 0
            || self.aux_vertices == 0
            || self.edges == 0
            || self.tree_edges == 0
            || self.time_limit.is_zero()
        {
            return Err(Error::input("oracle budgets must be positive"));
        }
        Ok(())
    }
}

/// Result of an exact search: `lower <= opt <= upper`, with `exact` set when
/// they coincide because the search finished. The certificate attains `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window<C> {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub certificate: C,
}

impl<C> Window<C> {
    fn exact(value: usize, certificate: C) -> Self {
        Window {
            lower: value,
            upper: value,
            exact: true,
            certificate,
        }
    }

    /// The optimum, if the search finished.
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

struct Deadline {
    end: Instant,
    ticks: u32,
    hit: bool,
}

impl Deadline {
    fn new(limit: Duration) -> Self {
        Deadline {
            end: Instant::now() + limit,
            ticks: 0,
            hit: false,
        }
    }

    fn expired(&mut self) -> bool {
        if !self.hit {
            self.ticks = self.ticks.wrapping_add(1);
            if self.ticks.is_multiple_of(256) && Instant::now() >= self.end {
                self.hit = true;
            }
        }
        self.hit
    }
}

fn vertex_masks(g: &Graph) -> Result<Vec<u128>> {
    if g.n() > 128 {
        return Err(Error::Budget(format!(
            "{} vertices exceed the 128-vertex mask width",
            g.n()
        )));
    }
    Ok((0..g.n())
        .map(|v| g.adj(v).iter().fold(0u128, |m, &w| m | 1 << w))
        .collect())
}

fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn mask_to_set(mut m: u128) -> VertexSet {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    VertexSet::from(out)
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

/// Common neighborhood of the vertices in `set` (all vertices when `set` is empty).
fn common_neighbors(adj: &[u128], set: u128, n: usize) -> u128 {
    bits(set).fold(full_mask(n), |acc, v| acc & adj[v])
}

/// All maximal cliques, sorted lexicographically. Bron–Kerbosch with pivoting.
pub fn enumerate_maximal_cliques(g: &Graph, budget: &OracleBudget) -> Result<Vec<VertexSet>> {
    let adj = vertex_masks(g)?;
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let mut deadline = Deadline::new(budget.time_limit);
    let mut out = Vec::new();
    bron_kerbosch(&adj, 0, full_mask(g.n()), 0, &mut out, &mut deadline);
    if deadline.hit {
        return Err(Error::Budget(
            "maximal clique enumeration ran out of time".into(),
        ));
    }
    let mut cliques: Vec<VertexSet> = out.into_iter().map(mask_to_set).collect();
    cliques.sort();
    Ok(cliques)
}

fn bron_kerbosch(
    adj: &[u128],
    r: u128,
    mut p: u128,
    mut x: u128,
    out: &mut Vec<u128>,
    deadline: &mut Deadline,
) {
    if deadline.expired() {
        return;
    }
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .expect("p or x nonempty");
    for v in bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out, deadline);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// All inclusion-maximal bicliques in canonical form, sorted.
///
/// A pair `(L, R)` is maximal exactly when each side is the common
/// neighborhood of the other, so closing every vertex subset finds them all.
pub fn enumerate_maximal_bicliques(g: &Graph, budget: &OracleBudget) -> Result<Vec<Biclique>> {
    let n = g.n();
    if n > budget.cover_vertices.max(budget.aux_vertices).min(24) {
        return Err(Error::Budget(format!(
            "{n} vertices exceed the biclique enumeration cap"
        )));
    }
    let adj = vertex_masks(g)?;
    let mut deadline = Deadline::new(budget.time_limit);
    let mut seen: HashSet<(u128, u128)> = HashSet::new();
    for x in 1u128..(1u128 << n) {
        if deadline.expired() {
            return Err(Error::Budget(
                "maximal biclique enumeration ran out of time".into(),
            ));
        }
        let r = common_neighbors(&adj, x, n);
        if r == 0 {
            continue;
        }
        let l = common_neighbors(&adj, r, n);
        let key = if l.trailing_zeros() < r.trailing_zeros() {
            (l, r)
        } else {
            (r, l)
        };
        seen.insert(key);
    }
    let mut out: Vec<Biclique> = seen
        .into_iter()
        .map(|(l, r)| Biclique {
            left: mask_to_set(l),
            right: mask_to_set(r),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Edge indexing shared by the cover and partition searches.
struct EdgeIndex {
    edges: Vec<Edge>,
    index: HashMap<(usize, usize), usize>,
}

impl EdgeIndex {
    fn new(g: &Graph) -> Self {
        let edges = g.edges();
        let index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.u, e.v), i))
            .collect();
        EdgeIndex { edges, index }
    }

    fn mask_of(&self, left: u128, right: u128) -> u128 {
        let mut m = 0u128;
        for u in bits(left) {
            for v in bits(right) {
                if let Some(&i) = self.index.get(&(u.min(v), u.max(v))) {
                    m |= 1 << i;
                }
            }
        }
        m
    }

    /// For each edge, the edges that can never share a biclique with it:
    /// disjoint edges `ab`, `cd` with neither `{ac, bd}` nor `{ad, bc}` present.
    fn incompatible(&self, g: &Graph) -> Vec<u128> {
        let m = self.edges.len();
        let mut out = vec![0u128; m];
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = (self.edges[i].u, self.edges[i].v);
                let (c, d) = (self.edges[j].u, self.edges[j].v);
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let square = (g.has_edge(a, c) && g.has_edge(b, d))
                    || (g.has_edge(a, d) && g.has_edge(b, c));
                if !square {
                    out[i] |= 1 << j;
                    out[j] |= 1 << i;
                }
            }
        }
        out
    }
}

/// Size of a greedily built set of pairwise incompatible edges inside
/// `uncovered`; each needs its own biclique.
fn incompatible_bound(uncovered: u128, incompatible: &[u128]) -> usize {
    let mut best = 0;
    for start in bits(uncovered).take(8) {
        let mut count = 1;
        let mut cand = uncovered & incompatible[start];
        while cand != 0 {
            let e = cand.trailing_zeros() as usize;
            count += 1;
            cand &= incompatible[e];
        }
        best = best.max(count);
    }
    best
}

/// Greedy cover by vertex stars, used for windows when a search cannot run.
fn star_cover(g: &Graph) -> Vec<Biclique> {
    let mut remaining: Vec<VertexSet> = (0..g.n())
        .map(|v| VertexSet::from(g.adj(v).to_vec()))
        .collect();
    let mut out = Vec::new();
    loop {
        let (v, size) = remaining
            .iter()
            .enumerate()
            .map(|(v, s)| (v, s.len()))
            .max_by_key(|&(v, s)| (s, std::cmp::Reverse(v)))
            .unwrap_or((0, 0));
        if size == 0 {
            return out;
        }
        let star = std::mem::take(&mut remaining[v]);
        for w in star.iter() {
            remaining[w] = remaining[w].difference(&VertexSet::from([v]));
        }
        out.push(
            Biclique {
                left: VertexSet::from([v]),
                right: star,
            }
            .canonical(),
        );
    }
}

fn check_edges(g: &Graph, budget: &OracleBudget) -> Result<()> {
    if g.m() > budget.edges.min(128) {
        return Err(Error::Budget(format!(
            "{} edges exceed the cap of {}",
            g.m(),
            budget.edges.min(128)
        )));
    }
    Ok(())
}

/// Window returned when an instance is too large to search at all.
fn coarse_window(g: &Graph) -> Window<Vec<Biclique>> {
    let certificate = star_cover(g);
    let lower = if g.m() <= 128 {
        let idx = EdgeIndex::new(g);
        incompatible_bound(full_mask(g.m()), &idx.incompatible(g))
    } else {
        usize::from(g.m() > 0)
    };
    Window {
        lower,
        upper: certificate.len(),
        exact: lower == certificate.len(),
        certificate,
    }
}

/// Minimum biclique cover by set-cover branch-and-bound over maximal bicliques.
///
/// Within budget the result is exact with an optimal certificate; over the
/// vertex/edge cap or the time cap it is a window with the best cover found.
pub fn exact_bc(g: &Graph, budget: &OracleBudget) -> Result<Window<Vec<Biclique>>> {
    budget.validate()?;
    if g.m() == 0 {
        return Ok(Window::exact(0, Vec::new()));
    }
    if g.n() > budget.cover_vertices || check_edges(g, budget).is_err() {
        return Ok(coarse_window(g));
    }
    let bicliques = enumerate_maximal_bicliques(g, budget)?;
    let idx = EdgeIndex::new(g);
    let masks: Vec<u128> = bicliques
        .iter()
        .map(|b| idx.mask_of(set_mask(&b.left), set_mask(&b.right)))
        .collect();
    let m = idx.edges.len();
    let mut covering: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &mask) in masks.iter().enumerate() {
        for e in bits(mask) {
            covering[e].push(i);
        }
    }
    let incompatible = idx.incompatible(g);
    let all = full_mask(m);

    let mut greedy = Vec::new();
    let mut left = all;
    while left != 0 {
        let pick = (0..masks.len())
            .max_by_key(|&i| ((masks[i] & left).count_ones(), std::cmp::Reverse(i)))
            .unwrap();
        greedy.push(pick);
        left &= !masks[pick];
    }
    let mut lower = incompatible_bound(all, &incompatible);
    if budget.use_log_bound {
        let mc = enumerate_maximal_cliques(&g.complement(), budget)?.len();
        lower = lower.max(ceil_log2(mc) as usize);
    }

    let mut search = CoverSearch {
        masks: &masks,
        covering: &covering,
        incompatible: &incompatible,
        best: greedy,
        stop_at: lower,
        deadline: Deadline::new(budget.time_limit),
        stack: Vec::new(),
    };
    if search.best.len() > lower {
        search.dfs(all);
    }
    let certificate: Vec<Biclique> = search.best.iter().map(|&i| bicliques[i].clone()).collect();
    if search.deadline.hit {
        return Ok(Window {
            lower,
            upper: certificate.len(),
            exact: false,
            certificate,
        });
    }
    Ok(Window::exact(certificate.len(), certificate))
}

fn set_mask(s: &VertexSet) -> u128 {
    s.iter().fold(0u128, |m, v| m | 1 << v)
}

struct CoverSearch<'a> {
    masks: &'a [u128],
    covering: &'a [Vec<usize>],
    incompatible: &'a [u128],
    best: Vec<usize>,
    stop_at: usize,
    deadline: Deadline,
    stack: Vec<usize>,
}

impl CoverSearch<'_> {
    fn dfs(&mut self, uncovered: u128) {
        if self.best.len() <= self.stop_at || self.deadline.expired() {
            return;
        }
        if uncovered == 0 {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        if self.stack.len() + incompatible_bound(uncovered, self.incompatible) >= self.best.len() {
            return;
        }
        let e = bits(uncovered)
            .min_by_key(|&e| self.covering[e].len())
            .expect("uncovered is nonempty");
        let mut options: Vec<usize> = self.covering[e].clone();
        options.sort_by_key(|&i| std::cmp::Reverse((self.masks[i] & uncovered).count_ones()));
        for i in options {
            self.stack.push(i);
            self.dfs(uncovered & !self.masks[i]);
            self.stack.pop();
        }
    }
}

/// Positive and negative eigenvalue counts of the adjacency matrix of the
/// edges in `mask`; each biclique contributes at most one of each, so the
/// larger count bounds the partition size from below.
fn inertia_bound(n: usize, edges: &[Edge], mask: u128) -> usize {
    if mask == 0 {
        return 0;
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for e in bits(mask) {
        a[(edges[e].u, edges[e].v)] = 1.0;
        a[(edges[e].v, edges[e].u)] = 1.0;
    }
    let eig = SymmetricEigen::new(a).eigenvalues;
    let pos = eig.iter().filter(|&&x| x > 1e-7).count();
    let neg = eig.iter().filter(|&&x| x < -1e-7).count();
    pos.max(neg)
}

/// Minimum biclique partition by branch-and-bound: the lowest uncovered edge
/// is placed in every biclique of still-uncovered edges that contains it.
pub fn exact_bp(g: &Graph, budget: &OracleBudget) -> Result<Window<Vec<Biclique>>> {
    budget.validate()?;
    if g.m() == 0 {
        return Ok(Window::exact(0, Vec::new()));
    }
    let star_partition = star_partition(g);
    if g.n() > budget.cover_vertices || check_edges(g, budget).is_err() {
        let lower = coarse_window(g).lower;
        let upper = star_partition.len();
        return Ok(Window {
            lower,
            upper,
            exact: false,
            certificate: star_partition,
        });
    }
    let idx = EdgeIndex::new(g);
    let incompatible = idx.incompatible(g);
    let mut search = PartitionSearch {
        n: g.n(),
        idx: &idx,
        incompatible: &incompatible,
        best: star_partition,
        deadline: Deadline::new(budget.time_limit),
        stack: Vec::new(),
    };
    let all = full_mask(idx.edges.len());
    let lower = inertia_bound(g.n(), &idx.edges, all).max(incompatible_bound(all, &incompatible));
    if search.best.len() > lower {
        search.dfs(all);
    }
    let certificate = search.best;
    if search.deadline.hit {
        return Ok(Window {
            lower,
            upper: certificate.len(),
            exact: false,
            certificate,
        });
    }
    Ok(Window::exact(certificate.len(), certificate))
}

/// Stars of the remaining edges, one per vertex in index order.
fn star_partition(g: &Graph) -> Vec<Biclique> {
    (0..g.n())
        .filter_map(|v| {
            let later: Vec<usize> = g.adj(v).iter().copied().filter(|&w| w > v).collect();
            (!later.is_empty()).then(|| Biclique {
                left: VertexSet::from([v]),
                right: VertexSet::from(later),
            })
        })
        .collect()
}

struct PartitionSearch<'a> {
    n: usize,
    idx: &'a EdgeIndex,
    incompatible: &'a [u128],
    best: Vec<Biclique>,
    deadline: Deadline,
    stack: Vec<Biclique>,
}

impl PartitionSearch<'_> {
    fn dfs(&mut self, uncovered: u128) {
        if self.deadline.expired() {
            return;
        }
        if uncovered == 0 {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        let lb = inertia_bound(self.n, &self.idx.edges, uncovered)
            .max(incompatible_bound(uncovered, self.incompatible));
        if self.stack.len() + lb >= self.best.len() {
            return;
        }
        // adjacency restricted to uncovered edges
        let mut adj = vec![0u128; self.n];
        for e in bits(uncovered) {
            let Edge { u, v } = self.idx.edges[e];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let first = self.idx.edges[uncovered.trailing_zeros() as usize];
        let (u, v) = (first.u, first.v);
        let mut options: Vec<(u128, u128)> = Vec::new();
        let l_extra = adj[v] & !(1 << u);
        for ls in subsets(l_extra) {
            let l = ls | 1 << u;
            let common = common_neighbors(&adj, l, self.n);
            for rs in subsets(common & !(1 << v)) {
                options.push((l, rs | 1 << v));
            }
        }
        options.sort_by_key(|&(l, r)| std::cmp::Reverse(l.count_ones() * r.count_ones()));
        for (l, r) in options {
            let covered = self.idx.mask_of(l, r);
            self.stack.push(Biclique {
                left: mask_to_set(l),
                right: mask_to_set(r),
            });
            self.dfs(uncovered & !covered);
            self.stack.pop();
            if self.deadline.hit {
                return;
            }
        }
    }
}

/// All submasks of `m`, including 0.
fn subsets(m: u128) -> impl Iterator<Item = u128> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != 0).then(|| (cur - 1) & m);
        Some(cur)
    })
}

/// Chromatic number by backtracking in DSATUR order; certificate is a coloring.
pub fn exact_chromatic(g: &Graph, budget: &OracleBudget) -> Result<Window<Vec<usize>>> {
    budget.validate()?;
    let n = g.n();
    if n == 0 {
        return Ok(Window::exact(0, Vec::new()));
    }
    let greedy = dsatur_greedy(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    if n > budget.aux_vertices {
        let lower = usize::from(n > 0) + usize::from(g.m() > 0);
        return Ok(Window {
            lower,
            upper,
            exact: lower == upper,
            certificate: greedy,
        });
    }
    let mut search = ColorSearch {
        g,
        best: greedy,
        best_k: upper,
        colors: vec![usize::MAX; n],
        deadline: Deadline::new(budget.time_limit),
    };
    let lower = exact_clique_number(g, budget)
        .map(|w| w.lower)
        .unwrap_or(1)
        .max(1);
    if search.best_k > lower {
        search.dfs(0, lower);
    }
    if search.deadline.hit {
        return Ok(Window {
            lower,
            upper: search.best_k,
            exact: false,
            certificate: search.best,
        });
    }
    Ok(Window::exact(search.best_k, search.best))
}

fn dsatur_pick(g: &Graph, colors: &[usize]) -> Option<usize> {
    (0..g.n())
        .filter(|&v| colors[v] == usize::MAX)
        .max_by_key(|&v| {
            let mut seen: Vec<usize> = g
                .adj(v)
                .iter()
                .map(|&w| colors[w])
                .filter(|&c| c != usize::MAX)
                .collect();
            seen.sort_unstable();
            seen.dedup();
            (seen.len(), g.adj(v).len(), std::cmp::Reverse(v))
        })
}

fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let mut colors = vec![usize::MAX; g.n()];
    while let Some(v) = dsatur_pick(g, &colors) {
        let used: HashSet<usize> = g.adj(v).iter().map(|&w| colors[w]).collect();
        colors[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    colors
}

struct ColorSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    best_k: usize,
    colors: Vec<usize>,
    deadline: Deadline,
}

impl ColorSearch<'_> {
    fn dfs(&mut self, used: usize, lower: usize) {
        if self.best_k <= lower || self.deadline.expired() {
            return;
        }
        let Some(v) = dsatur_pick(self.g, &self.colors) else {
            if used < self.best_k {
                self.best_k = used;
                self.best = self.colors.clone();
            }
            return;
        };
        // a new color is only worth trying if it stays below the incumbent
        let limit = (used + 1).min(self.best_k - 1);
        for c in 0..limit {
            if self.g.adj(v).iter().any(|&w| self.colors[w] == c) {
                continue;
            }
            self.colors[v] = c;
            self.dfs(used.max(c + 1), lower);
            self.colors[v] = usize::MAX;
        }
    }
}

/// Maximum matching by memoized branching on the lowest unmatched vertex.
pub fn exact_max_matching(g: &Graph, budget: &OracleBudget) -> Result<Window<Vec<Edge>>> {
    budget.validate()?;
    let n = g.n();
    if n > budget.aux_vertices {
        return Err(Error::Budget(format!(
            "{n} vertices exceed the matching cap of {}",
            budget.aux_vertices
        )));
    }
    let adj = vertex_masks(g)?;
    let mut memo: HashMap<u128, usize> = HashMap::new();
    let mut deadline = Deadline::new(budget.time_limit);
    let size = matching_value(&adj, full_mask(n), &mut memo, &mut deadline);
    if deadline.hit {
        return Err(Error::Budget("matching search ran out of time".into()));
    }
    let mut edges = Vec::new();
    let mut rest = full_mask(n);
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let skip = rest & !(1 << v);
        let target = memo_get(&adj, rest, &mut memo, &mut deadline);
        if memo_get(&adj, skip, &mut memo, &mut deadline) == target {
            rest = skip;
            continue;
        }
        let w = bits(adj[v] & skip)
            .find(|&w| 1 + memo_get(&adj, skip & !(1 << w), &mut memo, &mut deadline) == target)
            .expect("memo is consistent");
        edges.push(Edge::new(v, w)?);
        rest = skip & !(1 << w);
    }
    Ok(Window::exact(size, edges))
}

fn memo_get(adj: &[u128], rest: u128, memo: &mut HashMap<u128, usize>, d: &mut Deadline) -> usize {
    matching_value(adj, rest, memo, d)
}

fn matching_value(
    adj: &[u128],
    rest: u128,
    memo: &mut HashMap<u128, usize>,
    deadline: &mut Deadline,
) -> usize {
    if rest.count_ones() < 2 || deadline.expired() {
        return 0;
    }
    if let Some(&v) = memo.get(&rest) {
        return v;
    }
    let v = rest.trailing_zeros() as usize;
    let skip = rest & !(1 << v);
    let mut best = matching_value(adj, skip, memo, deadline);
    for w in bits(adj[v] & skip) {
        best = best.max(1 + matching_value(adj, skip & !(1 << w), memo, deadline));
    }
    memo.insert(rest, best);
    best
}

/// Clique number via Bron–Kerbosch, pruned by the incumbent size.
pub fn exact_clique_number(g: &Graph, budget: &OracleBudget) -> Result<Window<VertexSet>> {
    budget.validate()?;
    let n = g.n();
    if n > budget.edges.min(128) {
        return Err(Error::Budget(format!(
            "{n} vertices exceed the clique search cap"
        )));
    }
    let adj = vertex_masks(g)?;
    let mut best = 0u128;
    let mut deadline = Deadline::new(budget.time_limit);
    max_clique(&adj, 0, full_mask(n), &mut best, &mut deadline);
    let size = best.count_ones() as usize;
    if deadline.hit {
        return Ok(Window {
            lower: size,
            upper: n,
            exact: false,
            certificate: mask_to_set(best),
        });
    }
    Ok(Window::exact(size, mask_to_set(best)))
}

fn max_clique(adj: &[u128], r: u128, mut p: u128, best: &mut u128, deadline: &mut Deadline) {
    if deadline.expired() {
        return;
    }
    if p == 0 {
        if r.count_ones() > best.count_ones() {
            *best = r;
        }
        return;
    }
    while p != 0 {
        if r.count_ones() + p.count_ones() <= best.count_ones() {
            return;
        }
        let v = p.trailing_zeros() as usize;
        max_clique(adj, r | 1 << v, p & adj[v], best, deadline);
        p &= !(1 << v);
    }
}

/// Fewest ranks over all assignments of ranks `1..=|E|` that pass the
/// separation check. Pure backtracking, for checking the exact ranker.
pub fn exhaustive_edge_ranking(tree: &Tree, budget: &OracleBudget) -> Result<Window<EdgeRanking>> {
    budget.validate()?;
    let m = tree.edge_count();
    if m > budget.tree_edges {
        return Err(Error::Budget(format!(
            "{m} tree edges exceed the cap of {}",
            budget.tree_edges
        )));
    }
    let between = edges_between(tree);
    let mut deadline = Deadline::new(budget.time_limit);
    for r in 0..=m as u32 {
        let mut ranks = vec![0u32; m];
        if assign_ranks(0, r, &mut ranks, &between, &mut deadline) {
            let ranking = EdgeRanking { ranks };
            debug_assert!(is_valid_edge_ranking(tree, &ranking)?);
            return Ok(Window::exact(r as usize, ranking));
        }
        if deadline.hit {
            return Err(Error::Budget("exhaustive ranking ran out of time".into()));
        }
    }
    unreachable!("ranking every edge distinctly is always valid")
}

/// `between[i][j]`: edge indices strictly inside the tree path joining edges i and j.
fn edges_between(tree: &Tree) -> Vec<Vec<Vec<usize>>> {
    let m = tree.edge_count();
    let n = tree.node_count();
    // parent pointers from node 0
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut depth = vec![0usize; n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &(y, e) in tree.incident(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = (x, e);
                depth[y] = depth[x] + 1;
                order.push(y);
            }
        }
    }
    let node_path = |mut a: usize, mut b: usize| {
        let mut edges = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                edges.push(parent[a].1);
                a = parent[a].0;
            } else {
                edges.push(parent[b].1);
                b = parent[b].0;
            }
        }
        edges
    };
    let mut out = vec![vec![Vec::new(); m]; m];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i == j {
                continue;
            }
            // the path between the closest endpoints excludes both edges
            let (a, b) = tree.edges()[i];
            let (c, d) = tree.edges()[j];
            let best = [(a, c), (a, d), (b, c), (b, d)]
                .into_iter()
                .map(|(x, y)| node_path(x, y))
                .filter(|p| !p.contains(&i) && !p.contains(&j))
                .min_by_key(Vec::len)
                .expect("some endpoint pair avoids both edges");
            *cell = best;
        }
    }
    out
}

fn assign_ranks(
    i: usize,
    r: u32,
    ranks: &mut Vec<u32>,
    between: &[Vec<Vec<usize>>],
    deadline: &mut Deadline,
) -> bool {
    if i == ranks.len() {
        return full_check(ranks, between);
    }
    if deadline.expired() {
        return false;
    }
    for k in 1..=r {
        ranks[i] = k;
        // prune only pairs whose whole separating path is already labeled
        let ok =
            (0..i).all(|j| ranks[j] != k || between[i][j].iter().any(|&f| f > i || ranks[f] > k));
        if ok && assign_ranks(i + 1, r, ranks, between, deadline) {
            return true;
        }
    }
    ranks[i] = 0;
    false
}

fn full_check(ranks: &[u32], between: &[Vec<Vec<usize>>]) -> bool {
    let m = ranks.len();
    (0..m).all(|i| {
        (i + 1..m)
            .all(|j| ranks[i] != ranks[j] || between[i][j].iter().any(|&f| ranks[f] > ranks[i]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biclique::{verify_cover, verify_partition};

    fn fig3() -> Graph {
        Graph::from_edges(6, [(0, 3), (0, 4), (0, 5), (1, 4), (1, 5), (2, 5)]).unwrap()
    }

    fn vs<const N: usize>(v: [usize; N]) -> VertexSet {
        VertexSet::from(v)
    }

    fn budget() -> OracleBudget {
        OracleBudget {
            use_log_bound: false,
            ..OracleBudget::default()
        }
    }

    #[test]
    fn maximal_cliques_of_small_graphs() {
        let b = budget();
        assert_eq!(
            enumerate_maximal_cliques(&Graph::cycle(4), &b).unwrap(),
            vec![vs([0, 1]), vs([0, 3]), vs([1, 2]), vs([2, 3])]
        );
        assert_eq!(
            enumerate_maximal_cliques(&Graph::empty(5), &b)
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            enumerate_maximal_cliques(&fig3().complement(), &b).unwrap(),
            vec![vs([0, 1, 2]), vs([1, 2, 3]), vs([2, 3, 4]), vs([3, 4, 5])]
        );
        assert!(enumerate_maximal_cliques(&Graph::empty(0), &b)
            .unwrap()
            .is_empty());
    }

    fn naive_maximal_bicliques(g: &Graph) -> Vec<Biclique> {
        let n = g.n();
        let mut all = Vec::new();
        for l in 1u32..(1 << n) {
            for r in 1u32..(1 << n) {
                if l & r != 0 || l.trailing_zeros() > r.trailing_zeros() {
                    continue;
                }
                let ls: VertexSet = (0..n).filter(|&v| l >> v & 1 == 1).collect();
                let rs: VertexSet = (0..n).filter(|&v| r >> v & 1 == 1).collect();
                if g.is_biclique_subgraph(&ls, &rs) {
                    all.push(Biclique {
                        left: ls,
                        right: rs,
                    });
                }
            }
        }
        let mut out: Vec<Biclique> = all
            .iter()
            .filter(|b| !all.iter().any(|c| c != *b && b.is_contained_in(c)))
            .cloned()
            .collect();
        out.sort();
        out
    }

    #[test]
    fn maximal_bicliques_match_naive_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=6);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(
                enumerate_maximal_bicliques(&g, &budget()).unwrap(),
                naive_maximal_bicliques(&g)
            );
        }
    }

    #[test]
    fn maximal_bicliques_examples() {
        let single = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(
            enumerate_maximal_bicliques(&single, &budget()).unwrap(),
            vec![Biclique {
                left: vs([0]),
                right: vs([1])
            }]
        );
        let fig2 = Graph::path(5).complement();
        assert!(enumerate_maximal_bicliques(&fig2, &budget())
            .unwrap()
            .contains(&Biclique {
                left: vs([0, 1]),
                right: vs([3, 4])
            }));
    }

    #[test]
    fn bc_of_named_graphs() {
        let w = exact_bc(&fig3(), &budget()).unwrap();
        assert_eq!(w.value(), Some(3));
        assert!(verify_cover(&fig3(), &w.certificate));
        for n in 2..=8 {
            assert_eq!(
                exact_bc(&Graph::complete(n), &budget()).unwrap().value(),
                Some(ceil_log2(n) as usize)
            );
        }
        for n in 3..=10 {
            let g = Graph::path(n).complement();
            assert_eq!(
                exact_bc(&g, &budget()).unwrap().value(),
                Some(ceil_log2(n - 1) as usize),
                "P{n}"
            );
        }
        // C4 is K_{2,2}
        assert_eq!(
            exact_bc(&Graph::cycle(4), &budget()).unwrap().value(),
            Some(1)
        );
    }

    #[test]
    fn bc_over_cap_is_a_window() {
        let g = Graph::complete(16);
        let w = exact_bc(&g, &OracleBudget::default()).unwrap();
        assert!(!w.exact);
        assert!(w.lower <= 4 && w.upper >= 4);
        assert!(verify_cover(&g, &w.certificate));
    }

    #[test]
    fn bp_of_named_graphs() {
        for n in 2..=7 {
            let w = exact_bp(&Graph::complete(n), &budget()).unwrap();
            assert_eq!(w.value(), Some(n - 1));
            assert!(verify_partition(&Graph::complete(n), &w.certificate));
        }
        let fig2 = Graph::path(5).complement();
        let w = exact_bp(&fig2, &budget()).unwrap();
        assert!(verify_partition(&fig2, &w.certificate));
        assert_eq!(w.value(), Some(2));
        assert_eq!(
            exact_bp(&Graph::path(2), &budget()).unwrap().value(),
            Some(1)
        );
    }

    #[test]
    fn auxiliary_oracles() {
        let b = budget();
        let c4c = Graph::cycle(4).complement();
        assert_eq!(exact_chromatic(&c4c, &b).unwrap().value(), Some(2));
        assert_eq!(
            exact_chromatic(&Graph::complete(5), &b).unwrap().value(),
            Some(5)
        );
        assert_eq!(
            exact_chromatic(&Graph::cycle(5), &b).unwrap().value(),
            Some(3)
        );
        assert_eq!(
            exact_chromatic(&Graph::path(5).complement(), &b)
                .unwrap()
                .value(),
            Some(3)
        );
        let m = exact_max_matching(&Graph::complete(5), &b).unwrap();
        assert_eq!(m.value(), Some(2));
        assert_eq!(m.certificate.len(), 2);
        assert_eq!(exact_max_matching(&fig3(), &b).unwrap().value(), Some(3));
        assert_eq!(
            exact_clique_number(&Graph::cycle(5), &b).unwrap().value(),
            Some(2)
        );
        assert_eq!(
            exact_clique_number(&Graph::empty(0), &b).unwrap().value(),
            Some(0)
        );
    }

    #[test]
    fn exhaustive_ranking_examples() {
        let b = budget();
        assert_eq!(
            exhaustive_edge_ranking(&Tree::path(5), &b).unwrap().value(),
            Some(3)
        );
        assert_eq!(
            exhaustive_edge_ranking(&Tree::star(4), &b).unwrap().value(),
            Some(4)
        );
        assert_eq!(
            exhaustive_edge_ranking(&Tree::path(1), &b).unwrap().value(),
            Some(0)
        );
        assert!(exhaustive_edge_ranking(&Tree::path(11), &b).is_err());
    }
}
