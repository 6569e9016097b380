//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p biclique-core --test acceptance` (add `--release` for speed).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use biclique_core::biclique::{
    clique_split_biclique, enclosing_clique_split, verify_cover, verify_partition,
};
use biclique_core::bounds::{
    conflict_graph, lb_log_chi, lb_log_mc, lb_matching, lb_omega_conflict,
};
use biclique_core::chordal::{
    clique_tree, is_chordal, mis_membership_counts, verify_clique_tree, CliqueTree,
};
use biclique_core::cochordal::{
    cover_cochordal, find_partition, merge_bicliques, CoverOptions, EdgePolicy,
};
use biclique_core::gen::{
    gen_copath, gen_cowindmill, gen_fig_graph, gen_random_chordal, gen_tree,
    gen_two_membership_cochordal, random_graph, FigId, TreeShape,
};
use biclique_core::oracle::{
    enumerate_maximal_bicliques, enumerate_maximal_cliques, exact_bc, exact_bp,
    exhaustive_edge_ranking, OracleBudget,
};
use biclique_core::tree_rank::{ceil_log2, optimal_edge_ranking, Tree};
use biclique_core::{Biclique, Graph, VertexSet};

type Outcome = Result<String, String>;
/// Name, check, runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn certifying_budget() -> OracleBudget {
    OracleBudget {
        use_log_bound: false,
        time_limit: Duration::from_secs(60),
        ..OracleBudget::default()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vs<const N: usize>(v: [usize; N]) -> VertexSet {
    VertexSet::from(v)
}

fn exact_bc_value(g: &Graph) -> Result<usize, String> {
    let w = exact_bc(g, &certifying_budget()).map_err(|e| e.to_string())?;
    ensure(verify_cover(g, &w.certificate), || {
        "oracle certificate is not a cover".into()
    })?;
    w.value()
        .ok_or_else(|| format!("oracle stopped with window [{}, {}]", w.lower, w.upper))
}

fn exact_bp_value(g: &Graph) -> Result<usize, String> {
    let w = exact_bp(g, &certifying_budget()).map_err(|e| e.to_string())?;
    ensure(verify_partition(g, &w.certificate), || {
        "oracle certificate is not a partition".into()
    })?;
    w.value()
        .ok_or_else(|| format!("oracle stopped with window [{}, {}]", w.lower, w.upper))
}

/// Complement of a random chordal graph, so always co-chordal.
fn random_cochordal(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.0..=1.0);
    let chordal = gen_random_chordal(n, density, rng.gen()).unwrap();
    // occasionally split off a second component to exercise clique forests
    let chordal = if n >= 4 && rng.gen_bool(0.2) {
        let k = rng.gen_range(1..n);
        let (a, _) = chordal.induced_subgraph(&(0..k).collect()).unwrap();
        let (b, _) = chordal.induced_subgraph(&(k..n).collect()).unwrap();
        a.disjoint_union(&b)
    } else {
        chordal
    };
    chordal.complement()
}

fn random_any(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(0..=max_n);
    random_graph(n, rng.gen_range(0.0..=1.0), rng.gen()).unwrap()
}

fn criterion_1() -> Outcome {
    for n in 3..=12 {
        let inst = gen_copath(n).unwrap();
        let want = ceil_log2(n - 1) as usize;
        let out =
            cover_cochordal(&inst.graph, &CoverOptions::default()).map_err(|e| e.to_string())?;
        ensure(verify_cover(&inst.graph, &out.cover), || {
            format!("n = {n}: cover does not verify")
        })?;
        ensure(out.cover.len() == want, || {
            format!("n = {n}: cover size {} != {want}", out.cover.len())
        })?;
        if n <= 10 {
            let bc = exact_bc_value(&inst.graph)?;
            ensure(bc == want, || format!("n = {n}: oracle bc {bc} != {want}"))?;
        }
    }
    Ok("sizes ceil(log2(n-1)) for n = 3..12, oracle agrees for n <= 10".into())
}

fn criterion_2() -> Outcome {
    let inst = gen_fig_graph(FigId::Fig2);
    let out = cover_cochordal(&inst.graph, &CoverOptions::default()).map_err(|e| e.to_string())?;
    let level1: Vec<Biclique> = out
        .levels
        .level(1)
        .iter()
        .map(|x| x.biclique.canonical())
        .collect();
    // a..e = 0..4
    ensure(
        level1
            == vec![Biclique {
                left: vs([0, 1]),
                right: vs([3, 4]),
            }],
        || format!("level 1 is {level1:?}"),
    )?;
    let merged: Vec<Biclique> = merge_bicliques(out.levels.level(2), &inst.graph)
        .map_err(|e| e.to_string())?
        .iter()
        .map(Biclique::canonical)
        .collect();
    ensure(
        merged
            == vec![Biclique {
                left: vs([0, 4]),
                right: vs([2]),
            }],
        || format!("level 2 merges to {merged:?}"),
    )?;
    ensure(
        out.cover.len() == 2 && verify_cover(&inst.graph, &out.cover),
        || format!("final cover has size {}", out.cover.len()),
    )?;
    Ok("level 1 {{a,b},{d,e}}, level 2 -> {{a,e},{c}}, cover size 2".into())
}

fn criterion_3() -> Outcome {
    let inst = gen_fig_graph(FigId::Fig3);
    let out = cover_cochordal(&inst.graph, &CoverOptions::default()).map_err(|e| e.to_string())?;
    ensure(
        verify_cover(&inst.graph, &out.cover) && out.cover.len() == 3,
        || format!("cover size {}", out.cover.len()),
    )?;
    let bc = exact_bc_value(&inst.graph)?;
    ensure(bc == 3, || format!("oracle bc {bc}"))?;
    let mem = mis_membership_counts(&inst.graph).map_err(|e| e.to_string())?;
    ensure(!mem.all_at_most_two && mem.counts[2] == 3, || {
        format!("membership {:?}", mem.counts)
    })?;
    Ok("cover 3, oracle 3, vertex c in 3 maximal independent sets".into())
}

fn criterion_4() -> Outcome {
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..500 {
        let g = random_any(&mut rng, 12);
        let mc = lb_log_mc(&g, &budget).map_err(|e| e.to_string())?;
        let chi = lb_log_chi(&g, &budget).map_err(|e| e.to_string())?;
        ensure(chi.certified, || {
            format!("graph {i}: chromatic number not certified")
        })?;
        ensure(mc >= chi.bound, || {
            format!("graph {i}: log mc {mc} < log chi {}", chi.bound)
        })?;
    }
    let c4c = gen_fig_graph(FigId::Fig1C4c).graph;
    let (a, b) = (
        lb_log_mc(&c4c, &budget).unwrap(),
        lb_log_chi(&c4c, &budget).unwrap().bound,
    );
    ensure((a, b) == (2, 1), || {
        format!("C4^c: log mc {a}, log chi {b}")
    })?;
    let k5 = gen_fig_graph(FigId::Fig1K5).graph;
    let mc = lb_log_mc(&k5, &budget).unwrap();
    let omega = lb_omega_conflict(&k5, &budget).unwrap().bound;
    let matching = lb_matching(&k5, &budget).unwrap();
    ensure(conflict_graph(&k5).n() == 10, || {
        "K5 conflict graph size".into()
    })?;
    ensure(
        mc == 3 && (mc as usize) > omega.max(matching.ceil()),
        || {
            format!(
                "K5: log mc {mc}, omega {omega}, matching ceil {}",
                matching.ceil()
            )
        },
    )?;
    ensure(omega == 2, || {
        format!(
            "K5: omega(G_E) = {omega}, expected 2 (log mc 3 > max(omega, ceil(4/10) = {}) holds)",
            matching.ceil()
        )
    })?;
    Ok("500 random graphs, C4^c 2 > 1, K5 3 > max(2, 1)".into())
}

fn criterion_5() -> Outcome {
    let budget = certifying_budget();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..300 {
        let g = random_any(&mut rng, 10);
        let lb = lb_log_mc(&g, &budget).map_err(|e| e.to_string())? as usize;
        let bc = exact_bc_value(&g).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(lb <= bc, || format!("graph {i}: log mc {lb} > bc {bc}"))?;
    }
    Ok("300 random graphs, zero violations".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..200 {
        let g = random_cochordal(&mut rng, 14);
        let t = clique_tree(&g.complement()).map_err(|e| e.to_string())?;
        let policy = if i % 2 == 0 {
            EdgePolicy::Balanced
        } else {
            EdgePolicy::First
        };
        let p = find_partition(&t, policy).map_err(|e| e.to_string())?;
        ensure(verify_partition(&g, &p), || {
            format!("instance {i}: not a partition")
        })?;
        ensure(p.len() == t.nodes.len().saturating_sub(1), || {
            format!(
                "instance {i}: {} bicliques for {} cliques",
                p.len(),
                t.nodes.len()
            )
        })?;
    }
    Ok("200 random co-chordal graphs, partitions of size mc - 1".into())
}

/// All non-isomorphic trees with `nodes` nodes, by leaf extension and
/// canonical rooted encodings at the center.
fn all_trees(max_nodes: usize) -> Vec<Tree> {
    let mut out = vec![Tree::path(1)];
    let mut layer = vec![Tree::path(1)];
    for _ in 2..=max_nodes {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &layer {
            for v in 0..t.node_count() {
                let mut edges = t.edges().to_vec();
                edges.push((v, t.node_count()));
                let grown = Tree::new(t.node_count() + 1, edges).unwrap();
                if seen.insert(canonical(&grown)) {
                    next.push(grown);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn canonical(t: &Tree) -> String {
    let n = t.node_count();
    // centers by repeated leaf stripping
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut remaining = n;
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &l in &leaves {
            degree[l] = 0;
            for &(w, _) in t.incident(l) {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    fn encode(t: &Tree, v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = t
            .incident(v)
            .iter()
            .filter(|&&(w, _)| w != parent)
            .map(|&(w, _)| encode(t, w, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    leaves
        .iter()
        .map(|&c| encode(t, c, usize::MAX))
        .min()
        .unwrap()
}

fn criterion_7() -> Outcome {
    let budget = OracleBudget::default();
    let trees = all_trees(9);
    let counts: Vec<usize> = (1..=9)
        .map(|k| trees.iter().filter(|t| t.node_count() == k).count())
        .collect();
    ensure(counts == [1, 1, 1, 2, 3, 6, 11, 23, 47], || {
        format!("tree counts {counts:?}")
    })?;
    for t in &trees {
        let opt = optimal_edge_ranking(t).map_err(|e| e.to_string())?.r() as usize;
        let brute = exhaustive_edge_ranking(t, &budget).map_err(|e| e.to_string())?;
        ensure(brute.value() == Some(opt), || {
            format!(
                "tree {:?}: optimal {opt}, exhaustive {:?}",
                t.edges(),
                brute.value()
            )
        })?;
    }
    for n in 1..=17 {
        let r = optimal_edge_ranking(&Tree::path(n)).unwrap().r();
        ensure(r == ceil_log2(n), || format!("P{n}: {r}"))?;
    }
    for m in 1..=8 {
        let r = optimal_edge_ranking(&Tree::star(m)).unwrap().r();
        ensure(r == m as u32, || format!("K1,{m}: {r}"))?;
    }
    Ok(format!(
        "{} trees with <= 8 edges, paths to 17, stars to 8",
        trees.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let shapes = [
        TreeShape::Path,
        TreeShape::Star,
        TreeShape::Caterpillar,
        TreeShape::Random,
    ];
    for i in 0..200 {
        let shape = shapes[i % 4];
        let nodes = rng.gen_range(1..=10);
        let tree = gen_tree(shape, nodes, rng.gen()).unwrap();
        let mids: Vec<usize> = (0..tree.edge_count())
            .map(|_| rng.gen_range(1..=2))
            .collect();
        let sizes: Vec<usize> = (0..nodes)
            .map(|v| {
                let shared: usize = tree.incident(v).iter().map(|&(_, e)| mids[e]).sum();
                let min_private = usize::from(tree.degree(v) <= 1);
                shared + rng.gen_range(min_private..=2)
            })
            .collect();
        let inst = gen_two_membership_cochordal(&tree, &sizes, &mids, rng.gen())
            .map_err(|e| e.to_string())?;
        let chi_r = optimal_edge_ranking(&tree).unwrap().r() as usize;
        let out =
            cover_cochordal(&inst.graph, &CoverOptions::default()).map_err(|e| e.to_string())?;
        ensure(verify_cover(&inst.graph, &out.cover), || {
            format!("instance {i}: invalid cover")
        })?;
        ensure(out.metadata.all_leq2_flag, || {
            format!("instance {i}: membership flag false")
        })?;
        ensure(out.cover.len() <= chi_r, || {
            format!(
                "instance {i} ({shape:?}): cover {} > ranking number {chi_r}",
                out.cover.len()
            )
        })?;
        ensure(
            out.metadata.level_sizes_after.iter().all(|&s| s == 1),
            || {
                format!(
                    "instance {i}: level sizes after merge {:?}",
                    out.metadata.level_sizes_after
                )
            },
        )?;
    }
    Ok("200 two-membership instances over path/star/caterpillar/random trees".into())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut solved = 0;
    let mut instances: Vec<Graph> = (0..120).map(|_| random_cochordal(&mut rng, 10)).collect();
    instances.extend(
        FigId::ALL
            .iter()
            .map(|&id| gen_fig_graph(id).graph)
            .filter(|g| is_chordal(&g.complement())),
    );
    for (i, g) in instances.iter().enumerate() {
        let mc = clique_tree(&g.complement())
            .map_err(|e| e.to_string())?
            .nodes
            .len();
        let bc = exact_bc_value(g).map_err(|e| format!("instance {i}: {e}"))?;
        let bp = exact_bp_value(g).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(bc >= ceil_log2(bp + 1) as usize, || {
            format!("instance {i}: bc {bc}, bp {bp}")
        })?;
        ensure(bp <= mc.saturating_sub(1), || {
            format!("instance {i}: bp {bp} > mc - 1 = {}", mc - 1)
        })?;
        solved += 1;
    }
    for n in 1..=8 {
        let g = Graph::complete(n);
        let (bc, bp) = (exact_bc_value(&g)?, exact_bp_value(&g)?);
        ensure(bc == ceil_log2(n) as usize && bp == n - 1, || {
            format!("K{n}: bc {bc}, bp {bp}")
        })?;
    }
    Ok(format!("{solved} co-chordal instances, K_n for n <= 8"))
}

fn criterion_10() -> Outcome {
    let budget = OracleBudget::default();
    for m in 2..=6 {
        for k in 2..=3 {
            let inst = gen_cowindmill(m, k).unwrap();
            let out = cover_cochordal(&inst.graph, &CoverOptions::default())
                .map_err(|e| e.to_string())?;
            let lb = lb_log_mc(&inst.graph, &budget).unwrap() as usize;
            let want = ceil_log2(m) as usize;
            ensure(verify_cover(&inst.graph, &out.cover), || {
                format!("m={m} k={k}: invalid cover")
            })?;
            ensure(out.cover.len() == want && lb == want, || {
                format!(
                    "m={m} k={k}: cover {}, log mc {lb}, want {want}",
                    out.cover.len()
                )
            })?;
        }
    }
    Ok("m = 2..6, k = 2..3: cover size equals ceil(log2 m)".into())
}

/// A random connected subtree of a clique tree, as node indices.
fn random_subtree(t: &CliqueTree, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let adj = t.adjacency();
    let start = rng.gen_range(0..t.nodes.len());
    let target = rng.gen_range(1..=t.nodes.len());
    let mut inside = vec![start];
    let mut frontier: Vec<usize> = adj[start].iter().map(|&(w, _)| w).collect();
    while inside.len() < target && !frontier.is_empty() {
        let w = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        if inside.contains(&w) {
            continue;
        }
        inside.push(w);
        frontier.extend(
            adj[w]
                .iter()
                .map(|&(x, _)| x)
                .filter(|x| !inside.contains(x)),
        );
    }
    inside.sort_unstable();
    inside
}

fn criterion_11() -> Outcome {
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases = 400;
    let (
        mut split_checks,
        mut nonempty_checks,
        mut not_cover_checks,
        mut containment,
        mut subtrees,
    ) = (0, 0, 0, 0, 0);
    for i in 0..cases {
        // clique splits on co-chordal and general graphs alike
        let g = if i % 2 == 0 {
            random_cochordal(&mut rng, 12)
        } else {
            random_any(&mut rng, 9)
        };
        let cliques =
            enumerate_maximal_cliques(&g.complement(), &budget).map_err(|e| e.to_string())?;
        if cliques.len() >= 2 {
            let mut ids: Vec<usize> = (0..cliques.len()).collect();
            let cut = rng.gen_range(1..cliques.len());
            for j in (1..ids.len()).rev() {
                ids.swap(j, rng.gen_range(0..=j));
            }
            let (left, right) = ids.split_at(cut);
            let split = clique_split_biclique(&cliques, left, right).map_err(|e| e.to_string())?;
            if let Some(b) = &split {
                ensure(b.is_subgraph_of(&g), || {
                    format!("case {i}: split is not a biclique of G")
                })?;
                let union = |idx: &[usize]| {
                    idx.iter()
                        .fold(VertexSet::new(), |a, &k| a.union(&cliques[k]))
                };
                for side in [union(left), union(right)] {
                    ensure(
                        b.edges()
                            .all(|e| !(side.contains(e.u) && side.contains(e.v))),
                        || format!("case {i}: split biclique has an edge inside one side"),
                    )?;
                }
                not_cover_checks += 1;
            }
            split_checks += 1;
            let a = rng.gen_range(0..cliques.len());
            let b = (a + rng.gen_range(1..cliques.len())) % cliques.len();
            let (sub, _) = g.induced_subgraph(&cliques[a].union(&cliques[b])).unwrap();
            ensure(sub.m() >= 1, || {
                format!("case {i}: two maximal cliques span no edge of G")
            })?;
            nonempty_checks += 1;
        }
        if g.n() <= 9 && g.m() > 0 {
            let all = enumerate_maximal_bicliques(&g, &budget).map_err(|e| e.to_string())?;
            let b = &all[rng.gen_range(0..all.len())];
            // shrink to a random sub-biclique
            let keep = |s: &VertexSet, rng: &mut ChaCha8Rng| -> VertexSet {
                let first = s.as_slice()[rng.gen_range(0..s.len())];
                s.iter()
                    .filter(|&v| v == first || rng.gen_bool(0.5))
                    .collect()
            };
            let small = Biclique {
                left: keep(&b.left, &mut rng),
                right: keep(&b.right, &mut rng),
            };
            let (_, _, enclosing) =
                enclosing_clique_split(&cliques, &small).map_err(|e| e.to_string())?;
            let enclosing = enclosing.ok_or_else(|| format!("case {i}: no enclosing split"))?;
            ensure(
                small.left.is_subset(&enclosing.left) && small.right.is_subset(&enclosing.right),
                || format!("case {i}: {small} not inside {enclosing}"),
            )?;
            containment += 1;
        }
        let chordal =
            gen_random_chordal(rng.gen_range(1..=14), rng.gen_range(0.0..=1.0), rng.gen()).unwrap();
        let t = clique_tree(&chordal).map_err(|e| e.to_string())?;
        let part = random_subtree(&t, &mut rng);
        let union = part
            .iter()
            .fold(VertexSet::new(), |a, &k| a.union(&t.nodes[k]));
        let (sub, map) = chordal.induced_subgraph(&union).unwrap();
        let local = |k: usize| -> VertexSet {
            t.nodes[k]
                .iter()
                .map(|v| map.iter().position(|&x| x == v).unwrap())
                .collect()
        };
        let pos = |k: usize| part.iter().position(|&x| x == k).unwrap();
        let pairs: Vec<(usize, usize)> = t
            .edges
            .iter()
            .filter(|e| part.contains(&e.a) && part.contains(&e.b))
            .map(|e| (pos(e.a), pos(e.b)))
            .collect();
        let sub_tree = CliqueTree::from_parts(part.iter().map(|&k| local(k)).collect(), &pairs)
            .map_err(|e| e.to_string())?;
        ensure(verify_clique_tree(&sub, &sub_tree), || {
            format!("case {i}: subtree is not a clique tree")
        })?;
        subtrees += 1;
    }
    for (name, count) in [
        ("clique split", split_checks),
        ("nonempty union", nonempty_checks),
        ("no inner edges", not_cover_checks),
        ("containment", containment),
        ("subtree", subtrees),
    ] {
        ensure(count >= 200, || format!("only {count} {name} cases ran"))?;
    }
    Ok(format!(
        "split {split_checks}, nonempty {nonempty_checks}, no inner edges {not_cover_checks}, containment {containment}, subtree {subtrees}"
    ))
}

/// Criteria whose literal claim conflicts with the pinned definitions. They
/// are still checked and reported as FAIL, but only an unexpected outcome
/// (a new failure, or one of these starting to pass) fails the run.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    4,
    "omega(K5_E) is 1 under the 4-cycle conflict rule: every two K5 edges share a biclique",
)];

fn main() {
    // `cargo test` passes harness flags such as --list; only run on a plain invocation
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 11] = [
        ("co-path exactness", criterion_1, 10),
        ("fig2 level walkthrough", criterion_2, 1),
        ("fig3 counterexample", criterion_3, 5),
        ("lower-bound dominance", criterion_4, 30),
        ("log-clique lower bound vs exact bc", criterion_5, 300),
        ("partition size mc - 1", criterion_6, 60),
        ("edge-ranking exactness", criterion_7, 120),
        ("edge-ranking cover bound", criterion_8, 120),
        ("bp/bc window", criterion_9, 300),
        ("co-windmill", criterion_10, 10),
        ("structural property suites", criterion_11, 300),
    ];
    let (mut passed, mut failed, mut unexpected) = (0, 0, 0);
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(_) if secs > *limit as f64 => Err(format!("took {secs:.1}s, limit {limit}s")),
            other => other,
        };
        let known = KNOWN_FAILURES
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, why)| *why);
        match (outcome, known) {
            (Ok(detail), None) => {
                passed += 1;
                println!("[PASS] {id:>2} {name}: {detail} ({secs:.2}s)");
            }
            (Ok(detail), Some(_)) => {
                passed += 1;
                unexpected += 1;
                println!(
                    "[PASS] {id:>2} {name}: {detail} ({secs:.2}s) (listed as a known failure)"
                );
            }
            (Err(why), None) => {
                failed += 1;
                unexpected += 1;
                println!("[FAIL] {id:>2} {name}: {why} ({secs:.2}s)");
            }
            (Err(why), Some(reason)) => {
                failed += 1;
                println!("[FAIL] {id:>2} {name}: {why} ({secs:.2}s) (known: {reason})");
            }
        }
    }
    println!("acceptance: {passed} passed, {failed} failed, {unexpected} unexpected");
    if unexpected > 0 {
        std::process::exit(1);
    }
}
