//! Exact weighted edit distance and distance to a property.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::property::{ClosedForm, Property};
use crate::wgraph::iso::subgraph_copies;
use crate::wgraph::{Graph, Rational, VertexDistribution, WeightedGraph};

/// Default largest vertex count for exhaustive search (2^21 candidate graphs).
pub const BRUTE_FORCE_CAP: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub distance: Rational,
    /// A closest member of the property on the same vertex set.
    pub witness: Graph,
}

fn scaled(dist: &VertexDistribution, units: u128) -> Rational {
    let s = dist.scale() as u128;
    crate::wgraph::ratio(units, s * s)
}

/// `Σ_{xy ∈ E(G1) Δ E(G2)} D(x)D(y)`.
pub fn edit_distance(g1: &Graph, g2: &Graph, dist: &VertexDistribution) -> Result<Rational> {
    Ok(scaled(dist, edit_distance_units(g1, g2, dist)?))
}

/// Edit distance in units of `1/scale²`.
pub fn edit_distance_units(g1: &Graph, g2: &Graph, dist: &VertexDistribution) -> Result<u128> {
    if g1.n() != g2.n() || g1.n() != dist.len() {
        return Err(Error::input(format!(
            "vertex counts differ: {}, {}, distribution {}",
            g1.n(),
            g2.n(),
            dist.len()
        )));
    }
    let m = dist.masses();
    let mut total = 0u128;
    for u in 0..g1.n() {
        let diff = (g1.neighbors(u).0 ^ g2.neighbors(u).0) & !((2u128 << u) - 1);
        for v in crate::wgraph::VertexSet(diff).iter() {
            total += m[u] as u128 * m[v] as u128;
        }
    }
    Ok(total)
}

/// Vertex pairs in the order used for search and tie-breaking:
/// `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), …`.
pub fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

struct BruteSearch<'a> {
    p: &'a Property,
    g: &'a Graph,
    pairs: Vec<(usize, usize)>,
    weight: Vec<u128>,
    cur: Graph,
    best: Option<(u128, Graph)>,
}

impl BruteSearch<'_> {
    fn run(&mut self, i: usize, cost: u128) {
        if let Some((b, _)) = &self.best {
            if cost >= *b {
                return;
            }
        }
        if i == self.pairs.len() {
            if self.p.satisfies(&self.cur) {
                self.best = Some((cost, self.cur.clone()));
            }
            return;
        }
        let (u, v) = self.pairs[i];
        // once all pairs inside 0..=v are fixed, a hereditary property must hold there
        let closes_prefix = u + 1 == v;
        for flip in [false, true] {
            let present = self.g.has_edge(u, v) ^ flip;
            self.cur.set_edge(u, v, present);
            if closes_prefix && self.p.is_hereditary() && v + 1 < self.g.n() {
                let prefix = crate::wgraph::VertexSet::full(v + 1);
                if !self.p.satisfies(&self.cur.induced(prefix)) {
                    continue;
                }
            }
            let c = cost + if flip { self.weight[i] } else { 0 };
            self.run(i + 1, c);
        }
        self.cur.set_edge(u, v, self.g.has_edge(u, v));
    }
}

/// Minimum edit distance from `G` to an `n`-vertex member of `P`, by
/// branch-and-bound over all graphs on `V(G)`.
///
/// Candidates are explored as flip vectors over [`pair_order`], "keep" before
/// "flip", so the witness is the lexicographically least minimizer; pairs of
/// zero weight are therefore left as in `G` unless changing them is required.
pub fn distance_to_property(wg: &WeightedGraph, p: &Property) -> Result<DistanceResult> {
    distance_to_property_capped(wg, p, BRUTE_FORCE_CAP)
}

pub fn distance_to_property_capped(wg: &WeightedGraph, p: &Property, cap: usize) -> Result<DistanceResult> {
    let n = wg.n();
    if n > cap {
        return Err(Error::resource("vertices for exhaustive distance search", cap));
    }
    if p.satisfies(wg.graph()) {
        return Ok(DistanceResult {
            distance: Rational::zero(),
            witness: wg.graph().clone(),
        });
    }
    let pairs = pair_order(n);
    let weight = pairs.iter().map(|&(u, v)| wg.pair_mass(u, v)).collect();
    let mut s = BruteSearch {
        p,
        g: wg.graph(),
        pairs,
        weight,
        cur: wg.graph().clone(),
        best: None,
    };
    if p.is_hereditary() && n > 0 && !p.satisfies(&Graph::empty(1)) {
        return Err(Error::EmptyProperty(n));
    }
    s.run(0, 0);
    let (units, witness) = s.best.ok_or(Error::EmptyProperty(n))?;
    Ok(DistanceResult {
        distance: scaled(wg.dist(), units),
        witness,
    })
}

/// Whether `(G, D)` is `eps`-far from `P`; always true for `eps ≤ 0`.
pub fn is_far(wg: &WeightedGraph, p: &Property, eps: &Rational) -> Result<bool> {
    if *eps <= Rational::zero() {
        return Ok(true);
    }
    Ok(distance_auto(wg, p)?.distance >= *eps)
}

/// Closed-form distance for `edge-free`, `complete` and `edge-density-le`.
///
/// For the density bound `2|E|/n² ≤ b`, the optimum deletes the
/// `max(0, |E| − ⌊b n²/2⌋)` lightest edges.
pub fn distance_to_property_closed_form(wg: &WeightedGraph, p: &Property) -> Result<Rational> {
    Ok(closed_form_result(wg, p)?.distance)
}

fn closed_form_result(wg: &WeightedGraph, p: &Property) -> Result<DistanceResult> {
    let form = p
        .closed_form()
        .ok_or_else(|| Error::Precondition(format!("{} has no closed form", p.name())))?;
    let g = wg.graph();
    let n = g.n();
    let (units, witness) = match form {
        ClosedForm::EdgeFree => (g.edges().map(|(u, v)| wg.pair_mass(u, v)).sum(), Graph::empty(n)),
        ClosedForm::Complete => (
            pair_order(n)
                .into_iter()
                .filter(|&(u, v)| !g.has_edge(u, v))
                .map(|(u, v)| wg.pair_mass(u, v))
                .sum(),
            Graph::complete(n),
        ),
        ClosedForm::EdgeDensityLe(b) => {
            let n2 = Rational::from_integer(((n * n) as i64).into());
            let allowed = (b * n2 / Rational::from_integer(2.into())).floor().to_integer();
            let allowed: usize = allowed.try_into().unwrap_or(if b.is_positive() { usize::MAX } else { 0 });
            let mut edges: Vec<(u128, (usize, usize))> = g.edges().map(|(u, v)| (wg.pair_mass(u, v), (u, v))).collect();
            edges.sort();
            let excess = edges.len().saturating_sub(allowed);
            let mut w = g.clone();
            for &(_, (u, v)) in &edges[..excess] {
                w.remove_edge(u, v);
            }
            (edges[..excess].iter().map(|e| e.0).sum(), w)
        }
        ClosedForm::ForestOrSpanningCycle => {
            let (mut units, mut witness) = nearest_forest(wg);
            if n >= 3 {
                if n > SPANNING_CYCLE_CAP {
                    return Err(Error::Resource {
                        what: "vertices for the spanning cycle search".into(),
                        limit: SPANNING_CYCLE_CAP,
                    });
                }
                let (cu, cw) = nearest_spanning_cycle(wg);
                if cu < units {
                    units = cu;
                    witness = cw;
                }
            }
            (units, witness)
        }
    };
    Ok(DistanceResult {
        distance: scaled(wg.dist(), units),
        witness,
    })
}

/// Largest vertex count for the spanning cycle dynamic program.
pub const SPANNING_CYCLE_CAP: usize = 16;

/// Keeps a heaviest spanning forest of the edges and deletes the rest.
fn nearest_forest(wg: &WeightedGraph) -> (u128, Graph) {
    let g = wg.graph();
    let mut edges: Vec<(u128, (usize, usize))> = g.edges().map(|(u, v)| (wg.pair_mass(u, v), (u, v))).collect();
    edges.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut root: Vec<usize> = (0..g.n()).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut forest = Graph::empty(g.n());
    let mut deleted = 0;
    for (w, (u, v)) in edges {
        let (a, b) = (find(&mut root, u), find(&mut root, v));
        if a == b {
            deleted += w;
        } else {
            root[a] = b;
            forest.add_edge(u, v);
        }
    }
    (deleted, forest)
}

/// Cheapest Hamiltonian cycle to edit `G` into, by Held–Karp over subsets.
/// A cycle `C` costs `w(E \ C) + w(C \ E)`, i.e. `w(E)` plus `±w(e)` per cycle pair.
fn nearest_spanning_cycle(wg: &WeightedGraph) -> (u128, Graph) {
    let g = wg.graph();
    let n = g.n();
    let cost = |u: usize, v: usize| -> i128 {
        let w = wg.pair_mass(u, v) as i128;
        if g.has_edge(u, v) {
            -w
        } else {
            w
        }
    };
    // paths from vertex 0 through `mask` (bit i-1 for vertex i) ending at `v`
    let full = (1usize << (n - 1)) - 1;
    let mut dp = vec![i128::MAX; (full + 1) * n];
    let mut from = vec![0u8; (full + 1) * n];
    for v in 1..n {
        dp[(1 << (v - 1)) * n + v] = cost(0, v);
    }
    for mask in 1..=full {
        for v in 1..n {
            let cur = dp[mask * n + v];
            if cur == i128::MAX {
                continue;
            }
            for u in 1..n {
                if mask >> (u - 1) & 1 == 1 {
                    continue;
                }
                let next = (mask | 1 << (u - 1)) * n + u;
                let c = cur + cost(v, u);
                if c < dp[next] {
                    dp[next] = c;
                    from[next] = v as u8;
                }
            }
        }
    }
    let (mut best, mut last) = (i128::MAX, 1);
    for v in 1..n {
        let c = dp[full * n + v] + cost(v, 0);
        if c < best {
            best = c;
            last = v;
        }
    }
    let mut cycle = Graph::empty(n);
    cycle.add_edge(0, last);
    let (mut mask, mut v) = (full, last);
    while mask.count_ones() > 1 {
        let p = from[mask * n + v] as usize;
        cycle.add_edge(p, v);
        mask &= !(1 << (v - 1));
        v = p;
    }
    cycle.add_edge(0, v);
    let base: i128 = g.edges().map(|(u, v)| wg.pair_mass(u, v) as i128).sum();
    ((base + best) as u128, cycle)
}

/// Largest vertex count for the monotone hitting-set search.
pub const MONOTONE_CAP: usize = 24;

struct HittingSearch<'a> {
    wg: &'a WeightedGraph,
    family: &'a [Graph],
    best: u128,
    best_graph: Graph,
    nodes: u64,
    node_cap: u64,
}

impl HittingSearch<'_> {
    fn copies(&self, g: &Graph) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for h in self.family {
            for m in subgraph_copies(g, h) {
                let mut es: Vec<(usize, usize)> = h.edges().map(|(a, b)| (m[a].min(m[b]), m[a].max(m[b]))).collect();
                es.sort();
                out.push(es);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Greedy packing of copies with pairwise disjoint deletable edge sets;
    /// each needs at least its lightest deletable edge removed.
    fn lower_bound(&self, copies: &[Vec<(usize, usize)>], protected: &Graph) -> Option<u128> {
        let mut used = Graph::empty(protected.n());
        let mut bound = 0u128;
        let mut scored: Vec<(u128, &Vec<(usize, usize)>)> = Vec::with_capacity(copies.len());
        for c in copies {
            let free: Vec<&(usize, usize)> = c.iter().filter(|&&(u, v)| !protected.has_edge(u, v)).collect();
            if free.is_empty() {
                return None;
            }
            let w = free.iter().map(|&&(u, v)| self.wg.pair_mass(u, v)).min().unwrap();
            scored.push((w, c));
        }
        scored.sort_by(|a, b| b.0.cmp(&a.0));
        for (w, c) in scored {
            let free = c.iter().filter(|&&(u, v)| !protected.has_edge(u, v));
            if free.clone().all(|&(u, v)| !used.has_edge(u, v)) {
                for &(u, v) in free {
                    used.add_edge(u, v);
                }
                bound += w;
            }
        }
        Some(bound)
    }

    fn run(&mut self, g: &mut Graph, protected: &mut Graph, cost: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::resource("hitting-set search nodes", self.node_cap as usize));
        }
        if cost >= self.best {
            return Ok(());
        }
        let copies = self.copies(g);
        if copies.is_empty() {
            self.best = cost;
            self.best_graph = g.clone();
            return Ok(());
        }
        let Some(lb) = self.lower_bound(&copies, protected) else {
            return Ok(());
        };
        if cost + lb >= self.best {
            return Ok(());
        }
        // branch on the copy with fewest deletable edges
        let target = copies
            .iter()
            .min_by_key(|c| c.iter().filter(|&&(u, v)| !protected.has_edge(u, v)).count())
            .unwrap()
            .clone();
        let mut newly_protected = Vec::new();
        for &(u, v) in &target {
            if protected.has_edge(u, v) {
                continue;
            }
            g.remove_edge(u, v);
            self.run(g, protected, cost + self.wg.pair_mass(u, v))?;
            g.add_edge(u, v);
            protected.add_edge(u, v);
            newly_protected.push((u, v));
        }
        for (u, v) in newly_protected {
            protected.remove_edge(u, v);
        }
        Ok(())
    }
}

/// Exact distance to freeness of a family of (not necessarily induced)
/// subgraphs. Only deletions are needed, and the search branches on which
/// edge of an uncovered copy to delete, pruned by a packing lower bound.
pub fn monotone_distance(wg: &WeightedGraph, family: &[Graph]) -> Result<DistanceResult> {
    monotone_distance_within(wg, family, MONOTONE_NODE_CAP)
}

/// Default node budget of the hitting-set search.
pub const MONOTONE_NODE_CAP: u64 = 5_000_000;

/// As [`monotone_distance`], giving up with [`Error::Resource`] after `node_cap` search nodes.
pub fn monotone_distance_within(wg: &WeightedGraph, family: &[Graph], node_cap: u64) -> Result<DistanceResult> {
    if wg.n() > MONOTONE_CAP {
        return Err(Error::resource("vertices for hitting-set distance search", MONOTONE_CAP));
    }
    if family.iter().any(|h| h.edge_count() == 0) {
        return Err(Error::Precondition("forbidden subgraphs must have edges".into()));
    }
    let g0 = wg.graph().clone();
    let all: u128 = g0.edges().map(|(u, v)| wg.pair_mass(u, v)).sum();
    let mut s = HittingSearch {
        wg,
        family,
        best: all + 1,
        best_graph: Graph::empty(g0.n()),
        nodes: 0,
        node_cap,
    };
    let mut g = g0.clone();
    let mut protected = Graph::empty(g0.n());
    s.run(&mut g, &mut protected, 0)?;
    if s.best > all {
        s.best = all;
    }
    Ok(DistanceResult {
        distance: scaled(wg.dist(), s.best),
        witness: s.best_graph,
    })
}

/// Certified lower bound on the distance to `family`-freeness: greedy
/// edge-disjoint packing of copies, each contributing its lightest edge.
pub fn packing_lower_bound(wg: &WeightedGraph, family: &[Graph]) -> Rational {
    let s = HittingSearch {
        wg,
        family,
        best: 0,
        best_graph: Graph::empty(0),
        nodes: 0,
        node_cap: 0,
    };
    let copies = s.copies(wg.graph());
    let units = s
        .lower_bound(&copies, &Graph::empty(wg.n()))
        .unwrap_or(0);
    scaled(wg.dist(), units)
}

/// Exact distance using the fastest applicable method: closed form,
/// then brute force, then the monotone search.
pub fn distance_auto(wg: &WeightedGraph, p: &Property) -> Result<DistanceResult> {
    if p.closed_form().is_some() {
        return closed_form_result(wg, p);
    }
    if wg.n() <= BRUTE_FORCE_CAP {
        return distance_to_property(wg, p);
    }
    if let Some(fam) = p.forbidden_subgraphs() {
        return monotone_distance(wg, fam);
    }
    distance_to_property(wg, p)
}
