//! Python bindings: graphs, co-chordal covers and partitions, bounds,
//! exact oracles, edge rankings and instance generators.

use std::time::Duration;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use biclique_core::bounds::{full_report, lb_log_mc, ReportOptions};
use biclique_core::cochordal::{
    cover_cochordal, partition_cochordal, CoverOptions, EdgePolicy, RankingMode,
};
use biclique_core::gen::{gen_copath, gen_cowindmill, gen_fig_graph, gen_random_chordal, FigId};
use biclique_core::io::{parse_graph, write_graph};
use biclique_core::oracle::{exact_bc, exact_bp, OracleBudget, Window};
use biclique_core::tree_rank::{heuristic_edge_ranking, optimal_edge_ranking};
use biclique_core::{Biclique, Error, Tree, VertexSet};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Size(_) | Error::Budget(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

type Pair = (Vec<usize>, Vec<usize>);
type TreeEdge = (usize, usize, Vec<usize>);

fn pair(b: &Biclique) -> Pair {
    (b.left.as_slice().to_vec(), b.right.as_slice().to_vec())
}

fn to_bicliques(pairs: Vec<Pair>) -> PyResult<Vec<Biclique>> {
    pairs
        .into_iter()
        .map(|(l, r)| Biclique::new(VertexSet::from(l), VertexSet::from(r)).map_err(to_py))
        .collect()
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Graph {
    inner: biclique_core::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = biclique_core::Graph::from_edges(n, edges).map_err(to_py)?;
        Ok(Graph { inner })
    }

    /// Parses the `p <n> <m>` edge-list format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: parse_graph(text).map_err(to_py)?.graph,
        })
    }

    fn to_text(&self) -> String {
        write_graph(&self.inner, &[])
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().iter().map(|e| (e.u, e.v)).collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn complement(&self) -> Self {
        Graph {
            inner: self.inner.complement(),
        }
    }

    fn is_chordal(&self) -> bool {
        biclique_core::is_chordal(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn budget(time_ms: Option<u64>) -> OracleBudget {
    let mut b = OracleBudget {
        use_log_bound: false,
        ..OracleBudget::default()
    };
    if let Some(ms) = time_ms {
        b.time_limit = Duration::from_millis(ms.max(1));
    }
    b
}

fn window<'py>(py: Python<'py>, w: Window<Vec<Biclique>>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", w.value())?;
    d.set_item("lower", w.lower)?;
    d.set_item("upper", w.upper)?;
    d.set_item("exact", w.exact)?;
    d.set_item(
        "certificate",
        w.certificate.iter().map(pair).collect::<Vec<_>>(),
    )?;
    Ok(d)
}

/// Maximal cliques of a chordal graph as a clique tree: `(nodes, edges)` with
/// edges given as `(a, b, middle_set)`.
#[pyfunction]
fn clique_tree(g: &Graph) -> PyResult<(Vec<Vec<usize>>, Vec<TreeEdge>)> {
    let t = biclique_core::clique_tree(&g.inner).map_err(to_py)?;
    let nodes = t.nodes.iter().map(|k| k.as_slice().to_vec()).collect();
    let edges = t
        .edges
        .iter()
        .map(|e| (e.a, e.b, e.mid.as_slice().to_vec()))
        .collect();
    Ok((nodes, edges))
}

/// Biclique cover of a co-chordal graph with its construction metadata.
#[pyfunction]
#[pyo3(signature = (g, ranking="auto", chain=true))]
fn cover<'py>(
    py: Python<'py>,
    g: &Graph,
    ranking: &str,
    chain: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let ranking = match ranking {
        "exact" => RankingMode::Exact,
        "heuristic" => RankingMode::Heuristic,
        "auto" => RankingMode::Auto,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown ranking mode '{other}'"
            )))
        }
    };
    let opts = CoverOptions {
        ranking,
        chain_separators: chain,
        ..CoverOptions::default()
    };
    let out = cover_cochordal(&g.inner, &opts).map_err(to_py)?;
    let meta = &out.metadata;
    let d = PyDict::new(py);
    d.set_item("bicliques", out.cover.iter().map(pair).collect::<Vec<_>>())?;
    d.set_item("size", out.cover.len())?;
    d.set_item("mc_complement", meta.mc_complement)?;
    d.set_item("ranking_r", meta.ranking_r)?;
    d.set_item("ranking_optimal", meta.ranking_optimal)?;
    d.set_item("all_leq2_flag", meta.all_leq2_flag)?;
    d.set_item("level_sizes_before", meta.level_sizes_before.clone())?;
    d.set_item("level_sizes_after", meta.level_sizes_after.clone())?;
    d.set_item("chained", meta.chained)?;
    Ok(d)
}

/// Biclique partition of a co-chordal graph; policy is "balanced" or "first".
#[pyfunction]
#[pyo3(signature = (g, policy="balanced"))]
fn partition(g: &Graph, policy: &str) -> PyResult<Vec<Pair>> {
    let policy = match policy {
        "balanced" => EdgePolicy::Balanced,
        "first" => EdgePolicy::First,
        other => return Err(PyValueError::new_err(format!("unknown policy '{other}'"))),
    };
    Ok(partition_cochordal(&g.inner, policy)
        .map_err(to_py)?
        .iter()
        .map(pair)
        .collect())
}

#[pyfunction]
fn verify_cover(g: &Graph, bicliques: Vec<Pair>) -> PyResult<bool> {
    Ok(biclique_core::verify_cover(
        &g.inner,
        &to_bicliques(bicliques)?,
    ))
}

#[pyfunction]
fn verify_partition(g: &Graph, bicliques: Vec<Pair>) -> PyResult<bool> {
    Ok(biclique_core::verify_partition(
        &g.inner,
        &to_bicliques(bicliques)?,
    ))
}

/// `ceil(log2(number of maximal independent sets))`, a lower bound on bc.
#[pyfunction(name = "lb_log_mc")]
fn lb_log_mc_py(g: &Graph) -> PyResult<u32> {
    lb_log_mc(&g.inner, &OracleBudget::default()).map_err(to_py)
}

/// Every bound, the cover when co-chordal, and the oracle values, as a dict.
#[pyfunction]
#[pyo3(signature = (g, oracle=true))]
fn bounds_report<'py>(py: Python<'py>, g: &Graph, oracle: bool) -> PyResult<Bound<'py, PyAny>> {
    let report = full_report(
        &g.inner,
        &ReportOptions {
            run_oracle: oracle,
            ..ReportOptions::default()
        },
    );
    let text =
        serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyfunction(name = "exact_bc")]
#[pyo3(signature = (g, time_ms=None))]
fn exact_bc_py<'py>(
    py: Python<'py>,
    g: &Graph,
    time_ms: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    window(py, exact_bc(&g.inner, &budget(time_ms)).map_err(to_py)?)
}

#[pyfunction(name = "exact_bp")]
#[pyo3(signature = (g, time_ms=None))]
fn exact_bp_py<'py>(
    py: Python<'py>,
    g: &Graph,
    time_ms: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    window(py, exact_bp(&g.inner, &budget(time_ms)).map_err(to_py)?)
}

/// Edge ranking of a tree on nodes `0..n`; returns one rank per input edge.
#[pyfunction]
#[pyo3(signature = (n, edges, exact=true))]
fn edge_ranking(n: usize, edges: Vec<(usize, usize)>, exact: bool) -> PyResult<Vec<u32>> {
    let tree = Tree::new(n, edges).map_err(to_py)?;
    let ranking = if exact {
        optimal_edge_ranking(&tree).map_err(to_py)?
    } else {
        heuristic_edge_ranking(&tree)
    };
    Ok(ranking.ranks)
}

#[pyfunction]
fn copath(n: usize) -> PyResult<Graph> {
    Ok(Graph {
        inner: gen_copath(n).map_err(to_py)?.graph,
    })
}

#[pyfunction]
fn cowindmill(m: usize, k: usize) -> PyResult<Graph> {
    Ok(Graph {
        inner: gen_cowindmill(m, k).map_err(to_py)?.graph,
    })
}

/// One of "fig1_c4c", "fig1_k5", "fig2", "fig3".
#[pyfunction]
fn fig_graph(id: &str) -> PyResult<Graph> {
    let id: FigId = id.parse().map_err(to_py)?;
    Ok(Graph {
        inner: gen_fig_graph(id).graph,
    })
}

#[pyfunction]
fn random_chordal(n: usize, density: f64, seed: u64) -> PyResult<Graph> {
    Ok(Graph {
        inner: gen_random_chordal(n, density, seed).map_err(to_py)?,
    })
}

#[pymodule]
fn biclique(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(clique_tree, m)?)?;
    m.add_function(wrap_pyfunction!(cover, m)?)?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cover, m)?)?;
    m.add_function(wrap_pyfunction!(verify_partition, m)?)?;
    m.add_function(wrap_pyfunction!(lb_log_mc_py, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_report, m)?)?;
    m.add_function(wrap_pyfunction!(exact_bc_py, m)?)?;
    m.add_function(wrap_pyfunction!(exact_bp_py, m)?)?;
    m.add_function(wrap_pyfunction!(edge_ranking, m)?)?;
    m.add_function(wrap_pyfunction!(copath, m)?)?;
    m.add_function(wrap_pyfunction!(cowindmill, m)?)?;
    m.add_function(wrap_pyfunction!(fig_graph, m)?)?;
    m.add_function(wrap_pyfunction!(random_chordal, m)?)?;
    Ok(())
}
