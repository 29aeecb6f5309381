//! Text format for weighted graphs.
//!
//! ```text
//! n 3
//! weights 1/2 1/4 1/4
//! e 0 1
//! e 1 2
//! ```
//!
//! Lines starting with `#` and blank lines are ignored.

use std::collections::HashSet;
use std::path::Path;

use super::{parse_rational, Graph, VertexDistribution, WeightedGraph};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parsed lines of a weighted-graph file, with unknown keywords left for the caller.
pub(crate) struct RawWgraph {
    pub wg: WeightedGraph,
    pub extra: Vec<(usize, Vec<String>)>,
}

pub(crate) fn parse_with_extra(text: &str, extra_keys: &[&str]) -> Result<RawWgraph> {
    let mut n: Option<usize> = None;
    let mut weights = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut extra = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "n" => {
                if n.is_some() {
                    return Err(perr(ln, "duplicate 'n' line"));
                }
                if toks.len() != 2 {
                    return Err(perr(ln, "expected 'n <count>'"));
                }
                let k: usize = toks[1].parse().map_err(|_| perr(ln, "bad vertex count"))?;
                if k > super::MAX_VERTICES {
                    return Err(perr(ln, format!("vertex count above cap {}", super::MAX_VERTICES)));
                }
                n = Some(k);
            }
            "weights" => {
                let k = n.ok_or_else(|| perr(ln, "'weights' before 'n'"))?;
                if weights.is_some() {
                    return Err(perr(ln, "duplicate 'weights' line"));
                }
                if toks.len() != k + 1 {
                    return Err(perr(ln, format!("expected {k} weights, found {}", toks.len() - 1)));
                }
                let ws = toks[1..]
                    .iter()
                    .map(|t| parse_rational(t).map_err(|e| perr(ln, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                weights = Some(ws);
            }
            "e" => {
                let k = n.ok_or_else(|| perr(ln, "edge before 'n'"))?;
                if toks.len() != 3 {
                    return Err(perr(ln, "expected 'e <i> <j>'"));
                }
                let u: usize = toks[1].parse().map_err(|_| perr(ln, "bad vertex"))?;
                let v: usize = toks[2].parse().map_err(|_| perr(ln, "bad vertex"))?;
                if u >= k || v >= k {
                    return Err(perr(ln, format!("vertex out of range 0..{k}")));
                }
                if u == v {
                    return Err(perr(ln, format!("self-loop at {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(perr(ln, format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            kw if extra_keys.contains(&kw) => {
                extra.push((ln, toks.iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(perr(ln, format!("unknown keyword '{other}'"))),
        }
    }
    let n = n.ok_or_else(|| perr(0, "missing 'n' line"))?;
    let weights = weights.ok_or_else(|| perr(0, "missing 'weights' line"))?;
    let dist = VertexDistribution::new(weights).map_err(|e| perr(0, e.to_string()))?;
    let graph = Graph::from_edges(n, &edges)?;
    Ok(RawWgraph {
        wg: WeightedGraph::new(graph, dist)?,
        extra,
    })
}

pub fn parse_wgraph(text: &str) -> Result<WeightedGraph> {
    Ok(parse_with_extra(text, &[])?.wg)
}

pub fn format_wgraph(wg: &WeightedGraph) -> String {
    let mut s = format!("n {}\nweights", wg.n());
    for w in wg.dist().weights() {
        s.push(' ');
        s.push_str(&w.to_string());
    }
    s.push('\n');
    for (u, v) in wg.graph().edges() {
        s.push_str(&format!("e {u} {v}\n"));
    }
    s
}

pub fn read_wgraph(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    parse_wgraph(&std::fs::read_to_string(path)?)
}

pub fn write_wgraph(path: impl AsRef<Path>, wg: &WeightedGraph) -> Result<()> {
    std::fs::write(path, format_wgraph(wg))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "n 3\nweights 1/2 1/4 1/4\ne 0 1\ne 1 2\n";
        let wg = parse_wgraph(text).unwrap();
        assert_eq!(wg.graph().edge_count(), 2);
        assert_eq!(format_wgraph(&wg), text);
    }

    #[test]
    fn rejects_bad_files() {
        let bad = [
            "n 2\nweights 1/2 1/2\ne 0 0\n",
            "n 2\nweights 1/2 1/2\ne 0 1\ne 1 0\n",
            "n 2\nweights 1/2 1/3\n",
            "n 2\nweights 1/2\n",
            "n 2\nweights 1/2 1/2\ne 0 2\n",
            "weights 1\n",
            "n 1\nweights 1\nfoo\n",
        ];
        for b in bad {
            assert!(parse_wgraph(b).is_err(), "{b}");
        }
        let ok = "# comment\n\nn 1\nweights 1\n";
        assert_eq!(parse_wgraph(ok).unwrap().n(), 1);
    }
}
