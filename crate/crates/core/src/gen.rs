//! Named instances and seeded random families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::tree_rank::{ceil_log2, Tree};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedSource {
    /// A published value or closed-form formula.
    Literature,
    /// Confirmed by the exact search oracles.
    Oracle,
    /// Forced by how the instance is built.
    Construction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub value: usize,
    pub source: ExpectedSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedInstance {
    pub name: String,
    pub graph: Graph,
    pub labels: Vec<String>,
    /// Keys such as `bc`, `mc_complement`, `lb_log_mc`, `ranking_upper`.
    pub expected: BTreeMap<String, Expected>,
}

impl NamedInstance {
    fn new(name: impl Into<String>, graph: Graph) -> Self {
        let labels = default_labels(graph.n());
        NamedInstance {
            name: name.into(),
            graph,
            labels,
            expected: BTreeMap::new(),
        }
    }

    fn expect(mut self, key: &str, value: usize, source: ExpectedSource) -> Self {
        self.expected
            .insert(key.to_string(), Expected { value, source });
        self
    }

    pub fn expected_value(&self, key: &str) -> Option<usize> {
        self.expected.get(key).map(|e| e.value)
    }

    /// Everything but the edges, for sidecar files.
    pub fn meta(&self) -> InstanceMeta {
        InstanceMeta {
            name: self.name.clone(),
            n: self.graph.n(),
            m: self.graph.m(),
            labels: self.labels.clone(),
            expected: self.expected.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub labels: Vec<String>,
    pub expected: BTreeMap<String, Expected>,
}

/// `a, b, c, ...` up to 26 vertices, `v0, v1, ...` beyond.
pub fn default_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (0..n).map(|i| format!("v{i}")).collect()
    }
}

/// Complement of the path on `n` vertices.
pub fn gen_copath(n: usize) -> Result<NamedInstance> {
    if n < 2 {
        return Err(Error::input("co-path needs n >= 2"));
    }
    Ok(
        NamedInstance::new(format!("copath{n}"), Graph::path(n).complement())
            .expect("bc", ceil_log2(n - 1) as usize, ExpectedSource::Literature)
            .expect("mc_complement", n - 1, ExpectedSource::Construction),
    )
}

/// The windmill `m` copies of `K_k` sharing vertex 0.
pub fn windmill(m: usize, k: usize) -> Result<Graph> {
    if m < 1 || k < 2 {
        return Err(Error::input("windmill needs m >= 1 and k >= 2"));
    }
    let mut edges = Vec::new();
    for blade in 0..m {
        let members: Vec<usize> = std::iter::once(0)
            .chain((0..k - 1).map(|j| 1 + blade * (k - 1) + j))
            .collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(1 + m * (k - 1), edges)
}

/// Complement of the windmill `m x K_k`.
pub fn gen_cowindmill(m: usize, k: usize) -> Result<NamedInstance> {
    let g = windmill(m, k)?.complement();
    Ok(NamedInstance::new(format!("cowindmill_{m}_{k}"), g)
        .expect("bc", ceil_log2(m) as usize, ExpectedSource::Literature)
        .expect("mc_complement", m, ExpectedSource::Construction))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigId {
    Fig1C4c,
    Fig1K5,
    Fig2,
    Fig3,
}

impl FigId {
    pub const ALL: [FigId; 4] = [FigId::Fig1C4c, FigId::Fig1K5, FigId::Fig2, FigId::Fig3];

    pub fn as_str(self) -> &'static str {
        match self {
            FigId::Fig1C4c => "fig1_c4c",
            FigId::Fig1K5 => "fig1_k5",
            FigId::Fig2 => "fig2",
            FigId::Fig3 => "fig3",
        }
    }
}

impl fmt::Display for FigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FigId> {
        FigId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown figure id '{s}' (expected fig1_c4c, fig1_k5, fig2 or fig3)"
                ))
            })
    }
}

pub fn gen_fig_graph(id: FigId) -> NamedInstance {
    use ExpectedSource::*;
    match id {
        FigId::Fig1C4c => NamedInstance::new(id.as_str(), Graph::cycle(4).complement())
            .expect("mc_complement", 4, Literature)
            .expect("lb_log_mc", 2, Literature)
            .expect("lb_log_chi", 1, Literature)
            .expect("bc", 2, Oracle),
        FigId::Fig1K5 => NamedInstance::new(id.as_str(), Graph::complete(5))
            .expect("mc_complement", 5, Literature)
            .expect("lb_log_mc", 3, Literature)
            .expect("matching", 2, Literature)
            .expect("bc", 3, Literature),
        FigId::Fig2 => NamedInstance::new(id.as_str(), Graph::path(5).complement())
            .expect("mc_complement", 4, Literature)
            .expect("bc", 2, Literature)
            .expect("partition_size", 3, Literature),
        FigId::Fig3 => {
            let g = Graph::from_edges(6, [(0, 3), (0, 4), (0, 5), (1, 4), (1, 5), (2, 5)])
                .expect("fixed edge list");
            NamedInstance::new(id.as_str(), g)
                .expect("mc_complement", 4, Literature)
                .expect("lb_log_mc", 2, Construction)
                .expect("bc", 3, Literature)
        }
    }
}

/// Random chordal graph by simplicial vertex addition.
///
/// Each new vertex picks a uniformly random maximal clique `K` of the current
/// graph and an anchor `a` in it, then attaches to `a` and to every other
/// member of `K` with probability `density`. Density 0 gives a random tree,
/// density 1 the complete graph.
pub fn gen_random_chordal(n: usize, density: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("random chordal graph needs n >= 1"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::input("density must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cliques: Vec<VertexSet> = vec![VertexSet::from([0])];
    let mut edges = Vec::new();
    for v in 1..n {
        let ki = rng.gen_range(0..cliques.len());
        let members: Vec<usize> = cliques[ki].iter().collect();
        let anchor = members[rng.gen_range(0..members.len())];
        let attach: VertexSet = members
            .iter()
            .copied()
            .filter(|&w| w == anchor || rng.gen_bool(density))
            .collect();
        edges.extend(attach.iter().map(|w| (w, v)));
        let mut grown = attach.clone();
        grown.insert(v);
        if attach.len() == cliques[ki].len() {
            cliques[ki] = grown;
        } else {
            cliques.push(grown);
        }
    }
    Graph::from_edges(n, edges)
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input("edge probability must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeShape {
    Path,
    Star,
    Caterpillar,
    Random,
}

impl FromStr for TreeShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<TreeShape> {
        match s {
            "path" => Ok(TreeShape::Path),
            "star" => Ok(TreeShape::Star),
            "caterpillar" => Ok(TreeShape::Caterpillar),
            "random" => Ok(TreeShape::Random),
            _ => Err(Error::input(format!("unknown tree shape '{s}'"))),
        }
    }
}

/// A tree with `nodes` nodes of the given shape. Caterpillars use a spine of
/// about half the nodes with legs spread round-robin; random trees attach each
/// node to a uniformly chosen earlier one.
pub fn gen_tree(shape: TreeShape, nodes: usize, seed: u64) -> Result<Tree> {
    if nodes == 0 {
        return Err(Error::input("a tree needs at least one node"));
    }
    let edges: Vec<(usize, usize)> = match shape {
        TreeShape::Path => (1..nodes).map(|v| (v - 1, v)).collect(),
        TreeShape::Star => (1..nodes).map(|v| (0, v)).collect(),
        TreeShape::Caterpillar => {
            let spine = nodes.div_ceil(2);
            let mut e: Vec<(usize, usize)> = (1..spine).map(|v| (v - 1, v)).collect();
            e.extend((spine..nodes).map(|v| ((v - spine) % spine, v)));
            e
        }
        TreeShape::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (1..nodes).map(|v| (rng.gen_range(0..v), v)).collect()
        }
    };
    Tree::new(nodes, edges)
}

/// Co-chordal graph whose complement has the given clique tree and every
/// vertex in at most two maximal cliques.
///
/// Tree edge `e` gets `mid_sizes[e]` fresh vertices shared by its two end
/// cliques; node `i` additionally gets `node_sizes[i] - (sum of incident
/// middle sizes)` private vertices. Leaves need at least one private vertex
/// so that no clique is contained in its neighbor. The seed shuffles labels.
pub fn gen_two_membership_cochordal(
    shape: &Tree,
    node_sizes: &[usize],
    mid_sizes: &[usize],
    seed: u64,
) -> Result<NamedInstance> {
    let k = shape.node_count();
    if node_sizes.len() != k || mid_sizes.len() != shape.edge_count() {
        return Err(Error::input(
            "need one size per tree node and one middle size per tree edge",
        ));
    }
    if mid_sizes.contains(&0) || node_sizes.contains(&0) {
        return Err(Error::input("sizes must be at least 1"));
    }
    let mut cliques: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut next = 0;
    for (e, &(a, b)) in shape.edges().iter().enumerate() {
        for _ in 0..mid_sizes[e] {
            cliques[a].push(next);
            cliques[b].push(next);
            next += 1;
        }
    }
    for i in 0..k {
        let shared = cliques[i].len();
        let private = node_sizes[i].checked_sub(shared).ok_or_else(|| {
            Error::input(format!(
                "node {i} has size {} but {shared} shared vertices",
                node_sizes[i]
            ))
        })?;
        if private == 0 && shape.degree(i) <= 1 {
            return Err(Error::input(format!(
                "leaf node {i} needs a private vertex or it is not a maximal clique"
            )));
        }
        for _ in 0..private {
            cliques[i].push(next);
            next += 1;
        }
    }
    let n = next;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut edges = Vec::new();
    for c in &cliques {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                edges.push((perm[u], perm[v]));
            }
        }
    }
    let complement = Graph::from_edges(n, edges)?;
    let ranking_upper = crate::tree_rank::optimal_edge_ranking(shape)
        .map(|r| r.r() as usize)
        .unwrap_or_else(|_| crate::tree_rank::heuristic_edge_ranking(shape).r() as usize);
    Ok(
        NamedInstance::new(format!("two_membership_{k}"), complement.complement())
            .expect("mc_complement", k, ExpectedSource::Construction)
            .expect("ranking_upper", ranking_upper, ExpectedSource::Construction),
    )
}

/// Uniform-size convenience wrapper: every middle set has `mid` vertices and
/// every node `mid * degree + private` vertices.
pub fn gen_two_membership_uniform(
    shape: &Tree,
    private: usize,
    mid: usize,
    seed: u64,
) -> Result<NamedInstance> {
    let node_sizes: Vec<usize> = (0..shape.node_count())
        .map(|i| mid * shape.degree(i) + private)
        .collect();
    gen_two_membership_cochordal(shape, &node_sizes, &vec![mid; shape.edge_count()], seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::{clique_tree, is_chordal, mis_membership_counts, verify_clique_tree};

    #[test]
    fn copath_instances() {
        let g5 = gen_copath(5).unwrap();
        assert_eq!(g5.graph, gen_fig_graph(FigId::Fig2).graph);
        assert_eq!(g5.expected_value("bc"), Some(2));
        assert_eq!(gen_copath(2).unwrap().graph.m(), 0);
        assert_eq!(gen_copath(2).unwrap().expected_value("bc"), Some(0));
        assert_eq!(gen_copath(9).unwrap().expected_value("bc"), Some(3));
        assert!(gen_copath(1).is_err());
    }

    #[test]
    fn cowindmill_instances() {
        let w = gen_cowindmill(4, 3).unwrap();
        assert_eq!(w.graph.n(), 9);
        assert_eq!(w.expected_value("bc"), Some(2));
        assert_eq!(gen_cowindmill(1, 4).unwrap().graph.m(), 0);
        assert_eq!(gen_cowindmill(5, 2).unwrap().expected_value("bc"), Some(3));
        let t = clique_tree(&windmill(4, 3).unwrap()).unwrap();
        assert_eq!(t.nodes.len(), 4);
        assert!(gen_cowindmill(0, 3).is_err() && gen_cowindmill(2, 1).is_err());
    }

    #[test]
    fn fig_ids_round_trip() {
        for id in FigId::ALL {
            assert_eq!(id.as_str().parse::<FigId>().unwrap(), id);
        }
        assert!("fig4".parse::<FigId>().is_err());
        assert_eq!(
            gen_fig_graph(FigId::Fig3).labels,
            ["a", "b", "c", "d", "e", "f"]
        );
    }

    #[test]
    fn random_chordal_extremes_and_determinism() {
        for seed in 0..30 {
            let g = gen_random_chordal(12, 0.5, seed).unwrap();
            assert!(is_chordal(&g));
            assert_eq!(g, gen_random_chordal(12, 0.5, seed).unwrap());
        }
        let tree = gen_random_chordal(10, 0.0, 3).unwrap();
        assert_eq!((tree.m(), tree.components().len()), (9, 1));
        assert_eq!(gen_random_chordal(7, 1.0, 3).unwrap(), Graph::complete(7));
        assert!(gen_random_chordal(0, 0.5, 1).is_err());
    }

    #[test]
    fn tree_shapes() {
        for shape in [
            TreeShape::Path,
            TreeShape::Star,
            TreeShape::Caterpillar,
            TreeShape::Random,
        ] {
            for nodes in 1..12 {
                let t = gen_tree(shape, nodes, 5).unwrap();
                assert_eq!(t.edge_count(), nodes - 1);
            }
        }
        assert_eq!(gen_tree(TreeShape::Star, 6, 0).unwrap().max_degree(), 5);
    }

    #[test]
    fn two_membership_builds_the_declared_tree() {
        let shape = gen_tree(TreeShape::Caterpillar, 7, 0).unwrap();
        let inst = gen_two_membership_uniform(&shape, 1, 2, 11).unwrap();
        let gc = inst.graph.complement();
        let t = clique_tree(&gc).unwrap();
        assert!(verify_clique_tree(&gc, &t));
        assert_eq!(t.nodes.len(), 7);
        assert!(mis_membership_counts(&inst.graph).unwrap().all_at_most_two);
        let mut degrees: Vec<usize> = t.adjacency().iter().map(Vec::len).collect();
        let mut want: Vec<usize> = (0..7).map(|i| shape.degree(i)).collect();
        degrees.sort_unstable();
        want.sort_unstable();
        assert_eq!(degrees, want);
    }

    #[test]
    fn two_membership_path_is_a_copath() {
        let shape = Tree::path(4);
        let inst = gen_two_membership_cochordal(&shape, &[2, 2, 2, 2], &[1, 1, 1], 0).unwrap();
        assert_eq!(inst.graph.n(), 5);
        assert_eq!(inst.graph.m(), Graph::path(5).complement().m());
        assert!(clique_tree(&inst.graph.complement())
            .unwrap()
            .nodes
            .iter()
            .all(|k| k.len() == 2));
    }

    #[test]
    fn two_membership_rejects_bad_shapes() {
        let shape = Tree::path(3);
        assert!(gen_two_membership_cochordal(&shape, &[1, 2, 2], &[1, 1], 0).is_err());
        assert!(gen_two_membership_cochordal(&shape, &[2, 2], &[1, 1], 0).is_err());
        assert!(gen_two_membership_cochordal(&shape, &[2, 1, 2], &[1, 1], 0).is_err());
        assert!(gen_two_membership_cochordal(&shape, &[2, 2, 2], &[0, 1], 0).is_err());
    }
}
