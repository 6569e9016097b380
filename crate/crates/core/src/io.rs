//! Text formats.
//!
//! Graphs: optional `c` comment lines, a header `p <n> <m>`, then one `u v`
//! line per edge (0-based). Trees: header `t <n>` then `u v` lines. Covers:
//! one `L: ... | R: ...` line per biclique. Rankings: `u v : rank` lines.
//! Writers emit the canonical form, so parsing and writing a canonical file
//! reproduces it byte for byte.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::biclique::Biclique;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::tree_rank::{EdgeRanking, Tree};

/// Meaningful lines with 1-based line numbers; blank lines are skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ")
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found '{tok}'")))
}

fn parse_pair(l: &str, line: usize) -> Result<(usize, usize)> {
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(line, format!("expected 'u v', found '{l}'")));
    }
    Ok((
        parse_usize(toks[0], line, "vertex")?,
        parse_usize(toks[1], line, "vertex")?,
    ))
}

/// A parsed graph file with its comment lines (without the leading `c `).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub comments: Vec<String>,
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut comments = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (line, l) in content_lines(text) {
        last_line = line;
        if is_comment(l) {
            comments.push(l.strip_prefix("c").unwrap().trim_start().to_string());
            continue;
        }
        if let Some(rest) = l.strip_prefix("p ") {
            if header.is_some() {
                return Err(Error::parse(line, "duplicate 'p' header"));
            }
            let (n, m) = parse_pair(rest, line)?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::parse(line, "edge before the 'p <n> <m>' header"));
        };
        let (u, v) = parse_pair(l, line)?;
        if u >= n || v >= n {
            return Err(Error::parse(
                line,
                format!("vertex out of range for n = {n}"),
            ));
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop on vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    let Some((n, m)) = header else {
        return Err(Error::parse(last_line.max(1), "missing 'p <n> <m>' header"));
    };
    if edges.len() != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    Ok(GraphFile {
        graph: Graph::from_edges(n, edges)?,
        comments,
    })
}

pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
    let _ = writeln!(out, "p {} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u, e.v);
    }
    out
}

pub fn parse_tree(text: &str) -> Result<Tree> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (line, l) in content_lines(text) {
        last_line = line;
        if is_comment(l) {
            continue;
        }
        if let Some(rest) = l.strip_prefix("t ") {
            if n.is_some() {
                return Err(Error::parse(line, "duplicate 't' header"));
            }
            n = Some(parse_usize(rest.trim(), line, "node count")?);
            continue;
        }
        let Some(count) = n else {
            return Err(Error::parse(line, "edge before the 't <n>' header"));
        };
        let (u, v) = parse_pair(l, line)?;
        if u >= count || v >= count {
            return Err(Error::parse(
                line,
                format!("node out of range for n = {count}"),
            ));
        }
        edges.push((u, v));
    }
    let n = n.ok_or_else(|| Error::parse(last_line.max(1), "missing 't <n>' header"))?;
    Tree::new(n, edges).map_err(|e| Error::parse(last_line.max(1), e.to_string()))
}

pub fn write_tree(t: &Tree) -> String {
    let mut out = format!("t {}\n", t.node_count());
    for &(u, v) in t.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn parse_side(s: &str, line: usize) -> Result<VertexSet> {
    let vs: Vec<usize> = s
        .split_whitespace()
        .map(|t| parse_usize(t, line, "vertex"))
        .collect::<Result<_>>()?;
    let set = VertexSet::from(vs.clone());
    if set.len() != vs.len() {
        return Err(Error::parse(line, "repeated vertex in a biclique side"));
    }
    Ok(set)
}

/// Parses `L: ... | R: ...` lines. Sides must be nonempty and disjoint.
pub fn parse_cover(text: &str) -> Result<Vec<Biclique>> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        if is_comment(l) {
            continue;
        }
        let (left, right) = l
            .split_once('|')
            .ok_or_else(|| Error::parse(line, "expected 'L: ... | R: ...'"))?;
        let left = left
            .trim()
            .strip_prefix("L:")
            .ok_or_else(|| Error::parse(line, "left side must start with 'L:'"))?;
        let right = right
            .trim()
            .strip_prefix("R:")
            .ok_or_else(|| Error::parse(line, "right side must start with 'R:'"))?;
        let b = Biclique::new(parse_side(left, line)?, parse_side(right, line)?)
            .map_err(|e| Error::parse(line, e.to_string()))?;
        out.push(b);
    }
    Ok(out)
}

pub fn write_cover(bicliques: &[Biclique]) -> String {
    bicliques.iter().map(|b| format!("{b}\n")).collect()
}

/// Parses `u v : rank` lines; every tree edge must appear exactly once.
pub fn parse_ranking(tree: &Tree, text: &str) -> Result<EdgeRanking> {
    let mut ranks = vec![0u32; tree.edge_count()];
    for (line, l) in content_lines(text) {
        if is_comment(l) {
            continue;
        }
        let (pair, rank) = l
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected 'u v : rank'"))?;
        let (u, v) = parse_pair(pair.trim(), line)?;
        let rank: u32 = rank
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("bad rank '{}'", rank.trim())))?;
        let idx = tree
            .edges()
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .ok_or_else(|| Error::parse(line, format!("{u} {v} is not a tree edge")))?;
        if ranks[idx] != 0 {
            return Err(Error::parse(line, format!("edge {u} {v} ranked twice")));
        }
        if rank == 0 {
            return Err(Error::parse(line, "ranks start at 1"));
        }
        ranks[idx] = rank;
    }
    if let Some(i) = ranks.iter().position(|&r| r == 0) {
        let (u, v) = tree.edges()[i];
        return Err(Error::input(format!("tree edge {u} {v} has no rank")));
    }
    Ok(EdgeRanking { ranks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip_is_byte_exact() {
        let text = "c fig2\np 5 6\n0 2\n0 3\n0 4\n1 3\n1 4\n2 4\n";
        let f = parse_graph(text).unwrap();
        assert_eq!(f.graph, Graph::path(5).complement());
        assert_eq!(f.comments, vec!["fig2".to_string()]);
        assert_eq!(write_graph(&f.graph, &f.comments), text);
        assert_eq!(write_graph(&Graph::empty(0), &[]), "p 0 0\n");
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let err = |t: &str| match parse_graph(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err("0 1\n"), 1);
        assert_eq!(err("p 3 2\n0 1\n1 0\n"), 3);
        assert_eq!(err("p 3 1\n0 3\n"), 2);
        assert_eq!(err("p 3 1\n1 1\n"), 2);
        assert_eq!(err("p 3 2\n0 1\n"), 2);
        assert_eq!(err("p 3 1\nc x\np 3 1\n"), 3);
        assert_eq!(err("p 3 1\n0 x\n"), 2);
        assert_eq!(err(""), 1);
    }

    #[test]
    fn unordered_input_is_accepted() {
        let f = parse_graph("p 3 2\n\n2 1\n1 0\n").unwrap();
        assert_eq!(write_graph(&f.graph, &[]), "p 3 2\n0 1\n1 2\n");
    }

    #[test]
    fn tree_format() {
        let t = parse_tree("t 4\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(t, Tree::path(4));
        assert_eq!(write_tree(&t), "t 4\n0 1\n1 2\n2 3\n");
        assert!(parse_tree("t 3\n0 1\n").is_err());
        assert!(parse_tree("t 3\n0 1\n1 2\n0 2\n").is_err());
        assert!(parse_tree("0 1\n").is_err());
    }

    #[test]
    fn cover_format() {
        let text = "L: 0 1 | R: 3 4\nL: 0 4 | R: 2\n";
        let c = parse_cover(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(write_cover(&c), text);
        assert!(parse_cover("L: 0 | R: 0\n").is_err());
        assert!(parse_cover("L: | R: 1\n").is_err());
        assert!(parse_cover("0 1 | 2\n").is_err());
        assert!(parse_cover("").unwrap().is_empty());
    }

    #[test]
    fn ranking_format() {
        let t = Tree::path(4);
        let r = parse_ranking(&t, "0 1 : 1\n2 1 : 2\n2 3 : 1\n").unwrap();
        assert_eq!(r.ranks, vec![1, 2, 1]);
        assert_eq!(parse_ranking(&t, &r.to_text(&t)).unwrap(), r);
        assert!(parse_ranking(&t, "0 1 : 1\n1 2 : 2\n").is_err());
        assert!(parse_ranking(&t, "0 2 : 1\n").is_err());
        assert!(parse_ranking(&t, "0 1 : 0\n1 2 : 1\n2 3 : 1\n").is_err());
    }
}
