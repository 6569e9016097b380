//! Chordality via maximum cardinality search and clique-tree construction.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A vertex ordering: `order[i]` is the vertex at position `i`, `position[v]`
/// is the inverse map. Positions are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Ordering {
    pub fn from_order(order: Vec<usize>) -> Result<Ordering> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::input("ordering is not a permutation of 0..n"));
            }
            position[v] = i;
        }
        Ok(Ordering { order, position })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Maximum cardinality search. Vertices are labeled from position `n - 1`
/// down to `0`; each step labels an unlabeled vertex with the most labeled
/// neighbors, smallest index on ties. On a chordal graph the result is a
/// perfect elimination ordering.
pub fn mcs_order(g: &Graph) -> Ordering {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut labeled = vec![false; n];
    // buckets[w] holds unlabeled vertices with weight w
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n.max(1)];
    buckets[0].extend(0..n);
    let mut top = 0usize;
    let mut order = vec![0usize; n];

    for i in (0..n).rev() {
        while buckets[top].is_empty() {
            top -= 1;
        }
        let v = *buckets[top].iter().next().expect("nonempty bucket");
        buckets[top].remove(&v);
        labeled[v] = true;
        order[i] = v;
        for &u in g.adj(v) {
            if !labeled[u] {
                buckets[weight[u]].remove(&u);
                weight[u] += 1;
                buckets[weight[u]].insert(u);
                top = top.max(weight[u]);
            }
        }
    }
    Ordering::from_order(order).expect("mcs produces a permutation")
}

/// First position whose later neighbors do not form a clique, if any.
pub fn peo_violation(g: &Graph, ord: &Ordering) -> Result<Option<usize>> {
    if ord.len() != g.n() {
        return Err(Error::input(format!(
            "ordering covers {} vertices, graph has {}",
            ord.len(),
            g.n()
        )));
    }
    for (i, &v) in ord.order().iter().enumerate() {
        let later: Vec<usize> = g
            .adj(v)
            .iter()
            .copied()
            .filter(|&u| ord.position(u) > i)
            .collect();
        // The earliest later neighbor must be adjacent to all the others.
        let Some(&parent) = later.iter().min_by_key(|&&u| ord.position(u)) else {
            continue;
        };
        if later.iter().any(|&u| u != parent && !g.has_edge(parent, u)) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn is_perfect_elimination_order(g: &Graph, ord: &Ordering) -> Result<bool> {
    Ok(peo_violation(g, ord)?.is_none())
}

pub fn is_chordal(g: &Graph) -> bool {
    let ord = mcs_order(g);
    is_perfect_elimination_order(g, &ord).expect("mcs ordering matches graph size")
}

/// An edge of a clique tree joining nodes `a < b`, with `mid` the
/// intersection of the two cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTreeEdge {
    pub a: usize,
    pub b: usize,
    pub mid: VertexSet,
}

/// A tree (or forest, for disconnected graphs) over the maximal cliques of a
/// chordal graph satisfying the clique-intersection property.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTree {
    pub nodes: Vec<VertexSet>,
    pub edges: Vec<CliqueTreeEdge>,
}

impl CliqueTree {
    /// Builds a clique tree from node sets and node-index pairs, computing
    /// middle sets and normalizing edge orientation.
    pub fn from_parts(nodes: Vec<VertexSet>, pairs: &[(usize, usize)]) -> Result<CliqueTree> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(x, y) in pairs {
            if x >= nodes.len() || y >= nodes.len() || x == y {
                return Err(Error::input(format!("bad clique tree edge ({x}, {y})")));
            }
            let (a, b) = (x.min(y), x.max(y));
            edges.push(CliqueTreeEdge {
                a,
                b,
                mid: nodes[a].intersection(&nodes[b]),
            });
        }
        edges.sort_by_key(|e| (e.a, e.b));
        Ok(CliqueTree { nodes, edges })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Per-node list of `(neighbor node, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.a].push((e.b, i));
            adj[e.b].push((e.a, i));
        }
        adj
    }

    /// True iff the edges are valid node pairs and contain no cycle.
    pub fn is_forest(&self) -> bool {
        let mut dsu = Dsu::new(self.nodes.len());
        self.edges
            .iter()
            .all(|e| e.a < self.nodes.len() && e.b < self.nodes.len() && dsu.union(e.a, e.b))
    }

    /// True iff the edges form a single spanning tree.
    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.edges.len() + 1 == self.nodes.len().max(1)
    }

    /// Node indices of each connected tree, ordered by smallest node index.
    pub fn node_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Node path from `from` to `to`, inclusive, or `None` if disconnected.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; self.nodes.len()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(y, _) in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut x = to;
        while x != from {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Some(path)
    }

    /// Number of nodes containing each vertex of a host graph on `n` vertices.
    pub fn membership_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for node in &self.nodes {
            for v in node {
                counts[v] += 1;
            }
        }
        counts
    }
}

impl fmt::Display for CliqueTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, node) in self.nodes.iter().enumerate() {
            if node.is_empty() {
                writeln!(f, "K{i}:")?;
            } else {
                writeln!(f, "K{i}: {node}")?;
            }
        }
        for e in &self.edges {
            if e.mid.is_empty() {
                writeln!(f, "T: {} {} | mid:", e.a, e.b)?;
            } else {
                writeln!(f, "T: {} {} | mid: {}", e.a, e.b, e.mid)?;
            }
        }
        Ok(())
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Clique tree of a chordal graph by maximum cardinality search.
///
/// A new clique opens whenever the labeled-neighbor count fails to grow; it is
/// attached to the clique of its most recently labeled member. Disconnected
/// graphs yield a forest. Nodes are returned sorted lexicographically.
pub fn clique_tree(g: &Graph) -> Result<CliqueTree> {
    let ord = mcs_order(g);
    if let Some(position) = peo_violation(g, &ord)? {
        return Err(Error::NotChordal {
            vertex: ord.order()[position],
            position,
        });
    }
    let n = g.n();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut clique_of = vec![usize::MAX; n];
    let mut prev_card = 0usize;
    let mut current = usize::MAX;

    for i in (0..n).rev() {
        let v = ord.order()[i];
        let labeled: Vec<usize> = g
            .adj(v)
            .iter()
            .copied()
            .filter(|&u| ord.position(u) > i)
            .collect();
        let new_card = labeled.len();
        if current == usize::MAX || new_card <= prev_card {
            let s = cliques.len();
            if let Some(&u) = labeled.iter().min_by_key(|&&u| ord.position(u)) {
                pairs.push((s, clique_of[u]));
            }
            cliques.push(labeled);
            current = s;
        }
        clique_of[v] = current;
        cliques[current].push(v);
        prev_card = new_card;
    }

    // canonical node order
    let sets: Vec<VertexSet> = cliques.into_iter().map(VertexSet::from).collect();
    let mut idx: Vec<usize> = (0..sets.len()).collect();
    idx.sort_by(|&x, &y| sets[x].cmp(&sets[y]));
    let mut rank = vec![0; sets.len()];
    for (new, &old) in idx.iter().enumerate() {
        rank[old] = new;
    }
    let nodes: Vec<VertexSet> = idx.iter().map(|&i| sets[i].clone()).collect();
    let pairs: Vec<(usize, usize)> = pairs.iter().map(|&(x, y)| (rank[x], rank[y])).collect();
    CliqueTree::from_parts(nodes, &pairs)
}

/// Checks every clique-tree invariant against `g`: forest structure, middle
/// sets, the clique-intersection property, and that the nodes are exactly the
/// maximal cliques of `g`.
pub fn verify_clique_tree(g: &Graph, t: &CliqueTree) -> bool {
    let n = g.n();
    if !t.is_forest() {
        return false;
    }
    if t.edges
        .iter()
        .any(|e| e.mid != t.nodes[e.a].intersection(&t.nodes[e.b]))
    {
        return false;
    }
    for node in &t.nodes {
        if node.is_empty() || node.iter().any(|v| v >= n) || !g.is_clique(node) {
            return false;
        }
    }
    for (i, a) in t.nodes.iter().enumerate() {
        for (j, b) in t.nodes.iter().enumerate() {
            if i != j && a.is_subset(b) {
                return false;
            }
        }
    }
    // clique-intersection property; also forces each vertex's nodes to be connected
    for i in 0..t.nodes.len() {
        for j in i + 1..t.nodes.len() {
            let common = t.nodes[i].intersection(&t.nodes[j]);
            if common.is_empty() {
                continue;
            }
            match t.path(i, j) {
                Some(path) if path.iter().all(|&k| common.is_subset(&t.nodes[k])) => {}
                _ => return false,
            }
        }
    }
    // Every vertex and edge lies in some node. With the property above, the
    // Helly property of subtrees then puts every maximal clique among the nodes.
    let counts = t.membership_counts(n);
    if counts.contains(&0) {
        return false;
    }
    g.edges()
        .iter()
        .all(|e| t.nodes.iter().any(|k| k.contains(e.u) && k.contains(e.v)))
}

/// Per-vertex number of maximal independent sets of `g` (maximal cliques of
/// the complement) that contain it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCounts {
    pub counts: Vec<usize>,
    pub all_at_most_two: bool,
}

pub fn mis_membership_counts(g: &Graph) -> Result<MembershipCounts> {
    let tree = clique_tree(&g.complement())?;
    Ok(membership_from_tree(g.n(), &tree))
}

pub(crate) fn membership_from_tree(n: usize, tree: &CliqueTree) -> MembershipCounts {
    let counts = tree.membership_counts(n);
    let all_at_most_two = counts.iter().all(|&c| c <= 2);
    MembershipCounts {
        counts,
        all_at_most_two,
    }
}
