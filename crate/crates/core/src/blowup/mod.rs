//! `(D, N)`-blowups, the projection back to the base graph, and the random
//! contraction used to compare distances before and after blowing up.
//!
//! Vertex `v_i` of the base becomes the contiguous block `V_i` of
//! `b_i = D(v_i)·N` result vertices, in base order.

use std::fmt;
use std::ops::Range;

use rand::Rng;

use crate::distance::distance_auto;
use crate::error::{Error, Result};
use crate::property::{minimal_forbidden_family, AvoidancePolicy, Property};
use crate::sampling::{rng, stream_id};
use crate::wgraph::io::{format_wgraph, parse_with_extra};
use crate::wgraph::iso::induced_copies;
use crate::wgraph::{Graph, Rational, VertexSet, WeightedGraph, MAX_VERTICES};

/// Graphs inside the blowup sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InternalPolicy {
    Empty,
    Clique,
    /// One graph per base vertex, on `b_i` vertices.
    Custom(Vec<Graph>),
}

impl InternalPolicy {
    fn id(&self) -> &'static str {
        match self {
            InternalPolicy::Empty => "empty",
            InternalPolicy::Clique => "clique",
            InternalPolicy::Custom(_) => "custom",
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Blowup {
    base: WeightedGraph,
    n_total: usize,
    offsets: Vec<usize>,
    result: Graph,
    policy: InternalPolicy,
}

impl fmt::Debug for Blowup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Blowup")
            .field("n_total", &self.n_total)
            .field("sizes", &self.sizes())
            .field("policy", &self.policy.id())
            .finish()
    }
}

/// Least `N` for which every `D(v)·N` is an integer.
pub fn least_suitable_n(wg: &WeightedGraph) -> usize {
    wg.dist()
        .weights()
        .iter()
        .fold(1u64, |acc, w| num_integer::lcm(acc, w.denom().try_into().unwrap_or(u64::MAX))) as usize
}

/// Builds the `(D, N)`-blowup of `wg` with the given internal graphs.
pub fn dn_blowup(wg: &WeightedGraph, n_total: usize, policy: InternalPolicy) -> Result<Blowup> {
    if n_total == 0 {
        return Err(Error::input("N must be positive"));
    }
    if n_total > MAX_VERTICES {
        return Err(Error::resource("blowup vertices", MAX_VERTICES));
    }
    let scale = wg.dist().scale() as u128;
    let mut offsets = vec![0];
    for v in 0..wg.n() {
        let units = wg.dist().mass(v) as u128 * n_total as u128;
        if units % scale != 0 {
            return Err(Error::input(format!(
                "N = {n_total} is not suitable: D(v{v})·N = {} is not an integer",
                wg.dist().weight(v) * Rational::from_integer(n_total.into())
            )));
        }
        offsets.push(offsets[v] + (units / scale) as usize);
    }
    let mut result = Graph::empty(n_total);
    let range = |i: usize| offsets[i]..offsets[i + 1];
    for (i, j) in wg.graph().edges() {
        for u in range(i) {
            for w in range(j) {
                result.add_edge(u, w);
            }
        }
    }
    for i in 0..wg.n() {
        let r = range(i);
        match &policy {
            InternalPolicy::Empty => {}
            InternalPolicy::Clique => {
                for u in r.clone() {
                    for w in u + 1..r.end {
                        result.add_edge(u, w);
                    }
                }
            }
            InternalPolicy::Custom(inner) => {
                if inner.len() != wg.n() {
                    return Err(Error::input(format!("custom policy needs {} graphs, got {}", wg.n(), inner.len())));
                }
                if inner[i].n() != r.len() {
                    return Err(Error::input(format!(
                        "inner graph for v{i} has {} vertices, the set has {}",
                        inner[i].n(),
                        r.len()
                    )));
                }
                for (a, b) in inner[i].edges() {
                    result.add_edge(r.start + a, r.start + b);
                }
            }
        }
    }
    Ok(Blowup {
        base: wg.clone(),
        n_total,
        offsets,
        result,
        policy,
    })
}

impl Blowup {
    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn result(&self) -> &Graph {
        &self.result
    }

    pub fn policy(&self) -> &InternalPolicy {
        &self.policy
    }

    /// The block `V_i`.
    pub fn set(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn sets(&self) -> Vec<Range<usize>> {
        (0..self.base.n()).map(|i| self.set(i)).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// The result with the uniform distribution.
    pub fn to_weighted(&self) -> WeightedGraph {
        WeightedGraph::uniform(self.result.clone())
    }

    /// The base vertex whose block contains `u`.
    pub fn project(&self, u: usize) -> Result<usize> {
        if u >= self.n_total {
            return Err(Error::input(format!("vertex {u} out of range 0..{}", self.n_total)));
        }
        Ok(self.offsets.partition_point(|&o| o <= u) - 1)
    }

    /// Base weighted graph, then `N`, `sets` (block boundaries), `policy`,
    /// and for custom policies one `inner <i> <a> <b>` line per edge inside
    /// a block, in block-local indices.
    pub fn to_text(&self) -> String {
        let mut s = format_wgraph(&self.base);
        s.push_str(&format!("N {}\nsets", self.n_total));
        for o in &self.offsets {
            s.push_str(&format!(" {o}"));
        }
        s.push_str(&format!("\npolicy {}\n", self.policy.id()));
        if let InternalPolicy::Custom(inner) = &self.policy {
            for (i, g) in inner.iter().enumerate() {
                for (a, b) in g.edges() {
                    s.push_str(&format!("inner {i} {a} {b}\n"));
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Blowup> {
        let raw = parse_with_extra(text, &["N", "sets", "policy", "inner"])?;
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let mut n_total = None;
        let mut sets = None;
        let mut policy = None;
        let mut inner = Vec::new();
        for (ln, toks) in raw.extra {
            let num = |t: &str| t.parse::<usize>().map_err(|_| perr(ln, format!("bad number '{t}'")));
            match toks[0].as_str() {
                "N" if toks.len() == 2 => n_total = Some(num(&toks[1])?),
                "sets" => sets = Some((ln, toks[1..].iter().map(|t| num(t)).collect::<Result<Vec<_>>>()?)),
                "policy" if toks.len() == 2 => policy = Some((ln, toks[1].clone())),
                "inner" if toks.len() == 4 => inner.push((ln, num(&toks[1])?, num(&toks[2])?, num(&toks[3])?)),
                _ => return Err(perr(ln, format!("malformed '{}' line", toks[0]))),
            }
        }
        let n_total = n_total.ok_or_else(|| perr(0, "missing 'N' line".into()))?;
        let (pln, policy) = policy.ok_or_else(|| perr(0, "missing 'policy' line".into()))?;
        let wg = raw.wg;
        let sizes = {
            let scale = wg.dist().scale() as u128;
            (0..wg.n())
                .map(|v| (wg.dist().mass(v) as u128 * n_total as u128 / scale) as usize)
                .collect::<Vec<_>>()
        };
        let policy = match policy.as_str() {
            "empty" => InternalPolicy::Empty,
            "clique" => InternalPolicy::Clique,
            "custom" => {
                let mut gs: Vec<Graph> = sizes.iter().map(|&b| Graph::empty(b)).collect();
                for (ln, i, a, b) in inner {
                    if i >= gs.len() || a >= gs[i].n() || b >= gs[i].n() || a == b {
                        return Err(perr(ln, format!("inner edge {i} {a} {b} out of range")));
                    }
                    gs[i].add_edge(a, b);
                }
                InternalPolicy::Custom(gs)
            }
            other => return Err(perr(pln, format!("unknown policy '{other}'"))),
        };
        let b = dn_blowup(&wg, n_total, policy).map_err(|e| perr(0, e.to_string()))?;
        if let Some((ln, s)) = sets {
            if s != b.offsets {
                return Err(perr(ln, format!("sets {s:?} disagree with D·N boundaries {:?}", b.offsets)));
            }
        }
        Ok(b)
    }
}

fn distance(wg: &WeightedGraph, p: &Property) -> Result<Rational> {
    Ok(distance_auto(wg, p)?.distance)
}

/// `(dist((G, D), P), dist((blowup, uniform), P))` for the empty-policy
/// `(D, N)`-blowup. Fails with a counterexample if the blowup is closer.
pub fn verify_blowup_farness(wg: &WeightedGraph, p: &Property, n_total: usize) -> Result<(Rational, Rational)> {
    verify_farness_of(&dn_blowup(wg, n_total, InternalPolicy::Empty)?, p)
}

/// As [`verify_blowup_farness`] for an already built blowup.
pub fn verify_farness_of(b: &Blowup, p: &Property) -> Result<(Rational, Rational)> {
    let base = distance(&b.base, p)?;
    let blown = distance(&b.to_weighted(), p)?;
    if blown < base {
        return Err(Error::Counterexample(format!(
            "blowup on {} vertices is at distance {blown} < {base} from {}",
            b.n_total,
            p.name()
        )));
    }
    Ok((base, blown))
}

/// Largest forbidden-graph order scanned when a property has no explicit family.
pub const AVOIDANCE_FAMILY_CAP: usize = 5;

/// A `(D, N)`-blowup filled according to the property's avoidance policy,
/// checked to contain no induced copy of a minimal forbidden graph that meets
/// some block twice.
pub fn avoiding_blowup(wg: &WeightedGraph, p: &Property, n_total: usize) -> Result<Blowup> {
    let policy = match p.avoidance() {
        Some(AvoidancePolicy::Cliques) => InternalPolicy::Clique,
        Some(AvoidancePolicy::IndependentSets) => InternalPolicy::Empty,
        None => {
            return Err(Error::Precondition(format!("{} has no registered blowup policy", p.name())));
        }
    };
    let b = dn_blowup(wg, n_total, policy)?;
    let family = match p.forbidden_induced() {
        Some(f) => f.to_vec(),
        None => minimal_forbidden_family(p, AVOIDANCE_FAMILY_CAP)?,
    };
    if let Some((f, copy)) = repeated_block_copy(&b, &family) {
        return Err(Error::Counterexample(format!(
            "induced copy of a forbidden {}-vertex graph on {copy:?} meets a block twice ({} policy, {} edges)",
            f.n(),
            b.policy.id(),
            f.edge_count()
        )));
    }
    Ok(b)
}

/// First induced copy of a family member whose projection is not injective.
pub fn repeated_block_copy(b: &Blowup, family: &[Graph]) -> Option<(Graph, Vec<usize>)> {
    for f in family {
        for copy in induced_copies(&b.result, f) {
            let blocks: VertexSet = copy.iter().map(|&u| b.project(u).unwrap()).collect();
            if blocks.len() < copy.len() {
                return Some((f.clone(), copy));
            }
        }
    }
    None
}

/// A random graph on the base vertices: one vertex `u_i` is drawn uniformly
/// from each nonempty block and `v_i v_j` is an edge iff `u_i u_j` is an edge
/// of `h_prime`. Vertices with empty blocks stay isolated.
pub fn random_contraction(b: &Blowup, h_prime: &Graph, seed: u64) -> Result<Graph> {
    if h_prime.n() != b.n_total {
        return Err(Error::input(format!("H' has {} vertices, the blowup {}", h_prime.n(), b.n_total)));
    }
    let mut r = rng(seed, stream_id("random_contraction", 0));
    let reps: Vec<Option<usize>> = b
        .sets()
        .into_iter()
        .map(|s| (!s.is_empty()).then(|| r.gen_range(s)))
        .collect();
    let n = b.base.n();
    let mut h = Graph::empty(n);
    for j in 0..n {
        for i in 0..j {
            if let (Some(ui), Some(uj)) = (reps[i], reps[j]) {
                if h_prime.has_edge(ui, uj) {
                    h.add_edge(i, j);
                }
            }
        }
    }
    Ok(h)
}

/// `(1/N²)·Σ_{i<j} |E_{G'}(V_i, V_j) Δ E_{H'}(V_i, V_j)|`, the expected
/// weighted distance between the base graph and a random contraction of `h_prime`.
pub fn expected_contraction_distance(b: &Blowup, h_prime: &Graph) -> Result<Rational> {
    if h_prime.n() != b.n_total {
        return Err(Error::input(format!("H' has {} vertices, the blowup {}", h_prime.n(), b.n_total)));
    }
    let mut diff = 0u64;
    let n = b.base.n();
    for j in 0..n {
        for i in 0..j {
            for u in b.set(i) {
                for w in b.set(j) {
                    if b.result.has_edge(u, w) != h_prime.has_edge(u, w) {
                        diff += 1;
                    }
                }
            }
        }
    }
    let nn = (b.n_total * b.n_total) as u64;
    Ok(Rational::new(diff.into(), nn.into()))
}

#[cfg(test)]
mod tests;
