//! Lower and upper bounds on the biclique cover number, gathered into one
//! cross-checked report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::biclique::Biclique;
use crate::chordal::{clique_tree, is_chordal};
use crate::cochordal::{cover_cochordal, CoverOptions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{
    enumerate_maximal_cliques, exact_bc, exact_bp, exact_chromatic, exact_clique_number,
    exact_max_matching, OracleBudget,
};
use crate::tree_rank::ceil_log2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Computed exactly; the inequality it feeds is unconditional.
    Exact,
    /// From a greedy or capped search; valid as a bound but not tight-certified.
    Heuristic,
    /// Holds only under a stated precondition.
    Conditional,
}

/// Number of maximal cliques of `G^c`, through a clique tree when `G^c` is
/// chordal and by enumeration otherwise.
pub fn mc_complement(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    let gc = g.complement();
    if g.n() == 0 {
        return Ok(0);
    }
    if is_chordal(&gc) {
        return Ok(clique_tree(&gc)?.nodes.len());
    }
    Ok(enumerate_maximal_cliques(&gc, budget)?.len())
}

/// `ceil(log2 mc(G^c))`.
pub fn lb_log_mc(g: &Graph, budget: &OracleBudget) -> Result<u32> {
    Ok(ceil_log2(mc_complement(g, budget)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiBound {
    /// `ceil(log2 chi)` for the chromatic value below.
    pub bound: u32,
    pub chi: usize,
    /// False when `chi` is only a greedy coloring count (then `bound` may overshoot).
    pub certified: bool,
}

/// `ceil(log2 chi(G))`; falls back to a greedy coloring when the exact search
/// is over budget, flagged as not certified.
pub fn lb_log_chi(g: &Graph, budget: &OracleBudget) -> Result<ChiBound> {
    let w = exact_chromatic(g, budget)?;
    Ok(ChiBound {
        bound: ceil_log2(w.upper),
        chi: w.upper,
        certified: w.exact,
    })
}

/// Edge conflict graph: vertex `i` is the `i`-th edge of `G` in lexicographic
/// order; two edges are adjacent when they are disjoint and do not form
/// opposite sides of a 4-cycle of `G`.
pub fn conflict_graph(g: &Graph) -> Graph {
    let edges = g.edges();
    let mut pairs = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        for (j, f) in edges.iter().enumerate().skip(i + 1) {
            let (a, b, c, d) = (e.u, e.v, f.u, f.v);
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let square =
                (g.has_edge(a, c) && g.has_edge(b, d)) || (g.has_edge(a, d) && g.has_edge(b, c));
            if !square {
                pairs.push((i, j));
            }
        }
    }
    Graph::from_edges(edges.len(), pairs).expect("conflict pairs are in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaBound {
    pub bound: usize,
    pub certified: bool,
}

/// Clique number of the conflict graph. When the search times out the best
/// clique found is still a valid (weaker) lower bound.
pub fn lb_omega_conflict(g: &Graph, budget: &OracleBudget) -> Result<OmegaBound> {
    let w = exact_clique_number(&conflict_graph(g), budget)?;
    Ok(OmegaBound {
        bound: w.lower,
        certified: w.exact,
    })
}

/// `|M|^2 / |E|` kept as an exact fraction; `0/1` for edgeless graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingBound {
    pub matching: usize,
    pub num: usize,
    pub den: usize,
}

impl MatchingBound {
    pub fn ceil(&self) -> usize {
        self.num.div_ceil(self.den)
    }

    /// `num/den <= k`, by cross-multiplication.
    pub fn at_most(&self, k: usize) -> bool {
        self.num <= k * self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

pub fn lb_matching(g: &Graph, budget: &OracleBudget) -> Result<MatchingBound> {
    if g.m() == 0 {
        return Ok(MatchingBound {
            matching: 0,
            num: 0,
            den: 1,
        });
    }
    let w = exact_max_matching(g, budget)?;
    let k = w.upper;
    Ok(MatchingBound {
        matching: k,
        num: k * k,
        den: g.m(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpBcWindow {
    /// `mc(G^c) - 1`, tightened to `2^bc - 1` when `bc` is known.
    pub bp_upper: usize,
    /// `ceil(log2(bp + 1))` when `bp` is known.
    pub bc_lower_from_bp: Option<u32>,
    /// Known `bc` and `bp` satisfy both inequalities.
    pub consistent: bool,
}

/// Partition/cover relations for co-chordal graphs.
pub fn bp_bc_window(g: &Graph, bc: Option<usize>, bp: Option<usize>) -> Result<BpBcWindow> {
    let gc = g.complement();
    if !is_chordal(&gc) {
        return Err(Error::domain("complement is not chordal"));
    }
    let mc = if g.n() == 0 {
        1
    } else {
        clique_tree(&gc)?.nodes.len()
    };
    let mut bp_upper = mc - 1;
    if let Some(bc) = bc {
        if bc < usize::BITS as usize - 1 {
            bp_upper = bp_upper.min((1usize << bc) - 1);
        }
    }
    let bc_lower_from_bp = bp.map(|bp| ceil_log2(bp + 1));
    let consistent = match (bc, bp) {
        (Some(bc), Some(bp)) => bc >= bc_lower_from_bp.unwrap() as usize && bp < mc && bp >= bc,
        (None, Some(bp)) => bp < mc,
        _ => true,
    };
    Ok(BpBcWindow {
        bp_upper,
        bc_lower_from_bp,
        consistent,
    })
}

/// Colors each vertex by the index of the first maximal clique of `G^c`
/// (in canonical order) that contains it. Adjacent vertices of `G` never
/// share a clique of `G^c`, so this coloring is proper and uses at most
/// `mc(G^c)` colors.
pub fn first_clique_coloring(g: &Graph, budget: &OracleBudget) -> Result<Vec<usize>> {
    let cliques = enumerate_maximal_cliques(&g.complement(), budget)?;
    Ok((0..g.n())
        .map(|v| {
            cliques
                .iter()
                .position(|k| k.contains(v))
                .expect("every vertex is in a clique")
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReportOptions {
    pub budget: OracleBudget,
    pub cover: CoverOptions,
    /// Run exact cover/partition search when the graph is within budget.
    pub run_oracle: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            budget: OracleBudget {
                use_log_bound: false,
                ..OracleBudget::default()
            },
            cover: CoverOptions::default(),
            run_oracle: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundSection {
    pub log_mc: Option<u32>,
    pub mc_complement: Option<usize>,
    pub log_chi: Option<u32>,
    pub chi: Option<usize>,
    pub log_chi_certified: bool,
    pub omega_conflict: Option<usize>,
    pub omega_certified: bool,
    pub matching_num: Option<usize>,
    pub matching_den: Option<usize>,
    pub matching_ceil: Option<usize>,
    pub co_chordal: bool,
    pub ub_mc_minus_one: Option<usize>,
    pub ub_edge_ranking: Option<EdgeRankingBound>,
    pub bp_lower: usize,
    pub bp_upper: Option<usize>,
    /// Known upper bound on `bp` from `bc` for general graphs; context only.
    pub bp_three_power_context: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRankingBound {
    pub r: u32,
    pub optimal: bool,
    pub all_leq2_flag: bool,
    /// Both preconditions hold, so `bc <= r` is guaranteed.
    pub applies: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSection {
    pub size: usize,
    pub bicliques: Vec<Biclique>,
    pub ranking_r: u32,
    pub ranking_optimal: bool,
    pub all_leq2_flag: bool,
    pub level_sizes_before: Vec<usize>,
    pub level_sizes_after: Vec<usize>,
    pub chained: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub bc: Option<usize>,
    pub bp: Option<usize>,
    /// Both values present are exact optima.
    pub exact: bool,
    pub bc_window: Option<(usize, usize)>,
    pub bp_window: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub bounds: BoundSection,
    pub cover: Option<CoverSection>,
    pub oracle: OracleSection,
    pub provenance: BTreeMap<String, Provenance>,
    /// Fields that could not be computed, with the reason.
    pub not_computed: BTreeMap<String, String>,
    /// Certified lower bounds exceeding certified upper bounds. Always empty
    /// unless something is wrong.
    pub violations: Vec<String>,
}

impl BoundReport {
    /// Largest certified lower bound on `bc`.
    pub fn best_lower(&self) -> usize {
        let b = &self.bounds;
        let mut lb = b.log_mc.unwrap_or(0) as usize;
        if b.log_chi_certified {
            lb = lb.max(b.log_chi.unwrap_or(0) as usize);
        }
        lb = lb.max(b.omega_conflict.unwrap_or(0));
        lb.max(b.matching_ceil.unwrap_or(0))
    }

    /// Smallest certified upper bound on `bc`.
    pub fn best_upper(&self) -> Option<usize> {
        [
            self.cover.as_ref().map(|c| c.size),
            self.bounds.ub_mc_minus_one,
            self.oracle.bc_window.map(|w| w.1),
        ]
        .into_iter()
        .flatten()
        .min()
    }
}

/// Computes every applicable bound. Member failures are recorded in
/// `not_computed`; the report itself never fails.
pub fn full_report(g: &Graph, opts: &ReportOptions) -> BoundReport {
    let budget = &opts.budget;
    let mut b = BoundSection::default();
    let mut prov = BTreeMap::new();
    let mut missing = BTreeMap::new();

    match mc_complement(g, budget) {
        Ok(mc) => {
            b.mc_complement = Some(mc);
            b.log_mc = Some(ceil_log2(mc));
            prov.insert("log_mc".into(), Provenance::Exact);
        }
        Err(e) => note(&mut missing, "log_mc", e),
    }
    match lb_log_chi(g, budget) {
        Ok(c) => {
            b.log_chi = Some(c.bound);
            b.chi = Some(c.chi);
            b.log_chi_certified = c.certified;
            prov.insert(
                "log_chi".into(),
                if c.certified {
                    Provenance::Exact
                } else {
                    Provenance::Heuristic
                },
            );
        }
        Err(e) => note(&mut missing, "log_chi", e),
    }
    match lb_omega_conflict(g, budget) {
        Ok(o) => {
            b.omega_conflict = Some(o.bound);
            b.omega_certified = o.certified;
            prov.insert(
                "omega_conflict".into(),
                if o.certified {
                    Provenance::Exact
                } else {
                    Provenance::Heuristic
                },
            );
        }
        Err(e) => note(&mut missing, "omega_conflict", e),
    }
    match lb_matching(g, budget) {
        Ok(mb) => {
            b.matching_num = Some(mb.num);
            b.matching_den = Some(mb.den);
            b.matching_ceil = Some(mb.ceil());
            prov.insert("matching".into(), Provenance::Exact);
        }
        Err(e) => note(&mut missing, "matching", e),
    }

    let mut cover = None;
    b.co_chordal = is_chordal(&g.complement());
    if b.co_chordal {
        if let Some(mc) = b.mc_complement {
            b.ub_mc_minus_one = Some(mc.saturating_sub(1));
            prov.insert("ub_mc_minus_one".into(), Provenance::Exact);
        }
        match cover_cochordal(g, &opts.cover) {
            Ok(out) => {
                let md = &out.metadata;
                b.ub_edge_ranking = Some(EdgeRankingBound {
                    r: md.ranking_r,
                    optimal: md.ranking_optimal,
                    all_leq2_flag: md.all_leq2_flag,
                    applies: md.edge_ranking_bound_applies,
                });
                prov.insert("ub_edge_ranking".into(), Provenance::Conditional);
                prov.insert("cover".into(), Provenance::Heuristic);
                cover = Some(CoverSection {
                    size: out.cover.len(),
                    ranking_r: md.ranking_r,
                    ranking_optimal: md.ranking_optimal,
                    all_leq2_flag: md.all_leq2_flag,
                    level_sizes_before: md.level_sizes_before.clone(),
                    level_sizes_after: md.level_sizes_after.clone(),
                    chained: md.chained,
                    bicliques: out.cover,
                });
            }
            Err(e) => note(&mut missing, "cover", e),
        }
    } else {
        missing.insert("cover".into(), "complement is not chordal".into());
    }

    let mut oracle = OracleSection::default();
    if opts.run_oracle {
        match exact_bc(g, budget) {
            Ok(w) => {
                oracle.bc_window = Some((w.lower, w.upper));
                oracle.bc = w.value();
                oracle.exact = w.exact;
            }
            Err(e) => note(&mut missing, "oracle_bc", e),
        }
        match exact_bp(g, budget) {
            Ok(w) => {
                oracle.bp_window = Some((w.lower, w.upper));
                oracle.bp = w.value();
                oracle.exact &= w.exact;
            }
            Err(e) => {
                oracle.exact = false;
                note(&mut missing, "oracle_bp", e)
            }
        }
        prov.insert(
            "oracle".into(),
            if oracle.exact {
                Provenance::Exact
            } else {
                Provenance::Heuristic
            },
        );
    }

    let mut report = BoundReport {
        n: g.n(),
        m: g.m(),
        bounds: b,
        cover,
        oracle,
        provenance: prov,
        not_computed: missing,
        violations: Vec::new(),
    };
    let lower = report.best_lower();
    report.bounds.bp_lower = report.oracle.bc.unwrap_or(lower);
    if report.bounds.co_chordal {
        let bc_known = report.oracle.bc;
        if let Ok(w) = bp_bc_window(g, bc_known, report.oracle.bp) {
            report.bounds.bp_upper = Some(w.bp_upper);
            if !w.consistent {
                report
                    .violations
                    .push("known bc/bp violate the partition window".into());
            }
        }
    }
    if let Some(bc) = report.oracle.bc {
        report.bounds.bp_three_power_context = (bc < 40).then(|| (3u64.pow(bc as u32) - 1) / 2);
    }
    report.violations.extend(sandwich_violations(&report));
    report
}

fn note(missing: &mut BTreeMap<String, String>, key: &str, e: Error) {
    missing.insert(key.to_string(), e.to_string());
}

fn sandwich_violations(r: &BoundReport) -> Vec<String> {
    let b = &r.bounds;
    let mut lowers: Vec<(&str, usize)> = Vec::new();
    if let Some(x) = b.log_mc {
        lowers.push(("log_mc", x as usize));
    }
    if b.log_chi_certified {
        if let Some(x) = b.log_chi {
            lowers.push(("log_chi", x as usize));
        }
    }
    if let Some(x) = b.omega_conflict {
        lowers.push(("omega_conflict", x));
    }
    if let Some(x) = b.matching_ceil {
        lowers.push(("matching", x));
    }
    if let Some(w) = r.oracle.bc_window {
        lowers.push(("oracle_bc_lower", w.0));
    }
    let mut uppers: Vec<(&str, usize)> = Vec::new();
    if let Some(c) = &r.cover {
        uppers.push(("cover", c.size));
    }
    if let Some(x) = b.ub_mc_minus_one {
        uppers.push(("mc_minus_one", x));
    }
    if let Some(er) = b.ub_edge_ranking {
        if er.applies {
            uppers.push(("edge_ranking", er.r as usize));
        }
    }
    if let Some(w) = r.oracle.bc_window {
        uppers.push(("oracle_bc_upper", w.1));
    }
    let mut out = Vec::new();
    for &(ln, lv) in &lowers {
        for &(un, uv) in &uppers {
            if lv > uv {
                out.push(format!("{ln} = {lv} exceeds {un} = {uv}"));
            }
        }
    }
    if let (Some(mc), Some(x)) = (b.log_mc, b.log_chi) {
        if b.log_chi_certified && x > mc {
            out.push(format!("log_chi = {x} exceeds log_mc = {mc}"));
        }
    }
    if let (Some(bc), Some(bp)) = (r.oracle.bc, r.oracle.bp) {
        if bp < bc {
            out.push(format!("bp = {bp} is below bc = {bc}"));
        }
    }
    out
}
