//! Canonical forms and isomorphism-class enumeration for small graphs.
//!
//! Canonical labeling uses colour refinement followed by individualization
//! of the first non-singleton cell; the canonical graph is the least adjacency
//! encoding over all leaves of the search tree. Cells whose members are
//! pairwise twins are not branched on, since swapping twins is an automorphism.

use std::collections::HashSet;
use std::sync::{Mutex, OnceLock};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Largest order for which [`graphs_of_order`] enumerates isomorphism classes.
pub const ENUMERATION_CAP: usize = 10;

fn refine(g: &Graph, cells: &mut Vec<VertexSet>) {
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(cells.len());
        for &cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell);
                continue;
            }
            let mut sigs: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|v| {
                    let s = cells
                        .iter()
                        .map(|c| (g.neighbors(v) & *c).len() as u8)
                        .collect();
                    (s, v)
                })
                .collect();
            sigs.sort();
            let mut start = 0;
            for i in 1..=sigs.len() {
                if i == sigs.len() || sigs[i].0 != sigs[start].0 {
                    next.push(sigs[start..i].iter().map(|p| p.1).collect());
                    start = i;
                }
            }
            if sigs[0].0 != sigs[sigs.len() - 1].0 {
                changed = true;
            }
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn all_twins(g: &Graph, cell: VertexSet) -> bool {
    let vs = cell.to_vec();
    vs.iter().enumerate().all(|(i, &u)| {
        vs[i + 1..]
            .iter()
            .all(|&v| g.neighbors(u).without(v) == g.neighbors(v).without(u))
    })
}

fn encode(g: &Graph, order: &[usize]) -> Vec<u64> {
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| g.neighbors(v).iter().fold(0u64, |acc, u| acc | 1 << pos[u]))
        .collect()
}

fn search(g: &Graph, mut cells: Vec<VertexSet>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(g, &mut cells);
    let Some(idx) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c.first().unwrap()).collect();
        let code = encode(g, &order);
        if best.as_ref().map_or(true, |(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = cells[idx];
    let branch: Vec<usize> = if all_twins(g, cell) {
        vec![cell.first().unwrap()]
    } else {
        cell.to_vec()
    };
    for v in branch {
        let mut next = cells.clone();
        next[idx] = VertexSet::singleton(v);
        next.insert(idx + 1, cell.without(v));
        search(g, next, best);
    }
}

/// Ordering `σ` such that `g.permuted(&σ)` is the canonical form of `g`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut best = None;
    search(g, vec![g.vertices()], &mut best);
    best.unwrap().1
}

/// Canonical representative: isomorphic graphs map to equal graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

static CLASSES: OnceLock<Mutex<Vec<std::sync::Arc<Vec<Graph>>>>> = OnceLock::new();

/// Canonical representatives of all isomorphism classes of `n`-vertex graphs,
/// sorted. Cached; orders above [`ENUMERATION_CAP`] are rejected.
pub fn graphs_of_order(n: usize) -> Result<std::sync::Arc<Vec<Graph>>> {
    if n > ENUMERATION_CAP {
        return Err(Error::resource("graph enumeration order", ENUMERATION_CAP));
    }
    let lock = CLASSES.get_or_init(|| Mutex::new(vec![std::sync::Arc::new(vec![Graph::empty(0)])]));
    loop {
        let mut guard = lock.lock().unwrap();
        if guard.len() > n {
            return Ok(guard[n].clone());
        }
        let prev = guard.last().unwrap().clone();
        let k = guard.len();
        drop(guard);
        let next = extend_classes(&prev, k);
        guard = lock.lock().unwrap();
        if guard.len() == k {
            guard.push(std::sync::Arc::new(next));
        }
    }
}

fn extend_classes(prev: &[Graph], k: usize) -> Vec<Graph> {
    use rayon::prelude::*;
    let found: HashSet<Graph> = prev
        .par_iter()
        .flat_map_iter(|g| {
            VertexSet::full(k - 1).subsets().map(move |nb| {
                let mut h = g.clone();
                h.add_vertex(nb).unwrap();
                canonical_form(&h)
            })
        })
        .collect();
    let mut out: Vec<Graph> = found.into_iter().collect();
    out.sort();
    out
}

/// All isomorphism classes with at most `n` vertices, by increasing order.
pub fn graphs_up_to(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(graphs_of_order(k)?.iter().cloned());
    }
    Ok(out)
}
