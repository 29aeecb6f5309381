//! Graph properties, extendability, and the good/bad extension machinery.
//!
//! A member `F` of a hereditary property `P` is *bad* if for some `r > |V(F)|`
//! no `r`-vertex member of `P` contains `F` as an induced subgraph; the least
//! such `r` is `r_P(F)`. Goodness is only ever certified up to a horizon.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::wgraph::canon::{canonical_form, graphs_of_order, graphs_up_to, is_isomorphic, ENUMERATION_CAP};
use crate::wgraph::{induced_copy_exists, io, parse_rational, subgraph_copy_exists, Graph, Rational};

/// Default largest order for exhaustive extension and class enumeration.
pub const DEFAULT_ORDER_CAP: usize = 8;

/// Exact fast paths for distance computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    EdgeFree,
    Complete,
    /// `2|E| / n² ≤ p/q`.
    EdgeDensityLe(Rational),
    /// A forest, or a single cycle through every vertex.
    ForestOrSpanningCycle,
}

/// How blowup sets are filled when building blowups that avoid forbidden copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AvoidancePolicy {
    Cliques,
    IndependentSets,
}

type Oracle = Arc<dyn Fn(&Graph) -> bool + Send + Sync>;

/// A graph property given by a membership oracle.
///
/// Oracles must be isomorphism-invariant. Hereditary properties may carry a
/// finite family of forbidden induced subgraphs; monotone ones may carry a
/// family of forbidden (not necessarily induced) subgraphs.
#[derive(Clone)]
pub struct Property {
    name: String,
    hereditary: bool,
    oracle: Oracle,
    forbidden_induced: Option<Vec<Graph>>,
    forbidden_subgraphs: Option<Vec<Graph>>,
    closed_form: Option<ClosedForm>,
    avoidance: Option<AvoidancePolicy>,
}

/// Alias used where the hereditary contract matters.
pub type HereditaryProperty = Property;

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("hereditary", &self.hereditary)
            .finish()
    }
}

impl Property {
    pub fn hereditary(name: impl Into<String>, oracle: impl Fn(&Graph) -> bool + Send + Sync + 'static) -> Self {
        Property {
            name: name.into(),
            hereditary: true,
            oracle: Arc::new(oracle),
            forbidden_induced: None,
            forbidden_subgraphs: None,
            closed_form: None,
            avoidance: None,
        }
    }

    pub fn non_hereditary(name: impl Into<String>, oracle: impl Fn(&Graph) -> bool + Send + Sync + 'static) -> Self {
        Property {
            hereditary: false,
            ..Property::hereditary(name, oracle)
        }
    }

    /// Induced `family`-freeness.
    pub fn induced_free(name: impl Into<String>, family: Vec<Graph>) -> Self {
        let fam = family.clone();
        let mut p = Property::hereditary(name, move |g| !fam.iter().any(|f| induced_copy_exists(g, f)));
        p.forbidden_induced = Some(family);
        p
    }

    /// `family`-freeness for (not necessarily induced) subgraphs.
    pub fn subgraph_free(name: impl Into<String>, family: Vec<Graph>) -> Self {
        let fam = family.clone();
        let mut p = Property::hereditary(name, move |g| !fam.iter().any(|f| subgraph_copy_exists(g, f)));
        p.forbidden_subgraphs = Some(family);
        p
    }

    pub fn with_avoidance(mut self, policy: AvoidancePolicy) -> Self {
        self.avoidance = Some(policy);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_hereditary(&self) -> bool {
        self.hereditary
    }

    pub fn forbidden_induced(&self) -> Option<&[Graph]> {
        self.forbidden_induced.as_deref()
    }

    pub fn forbidden_subgraphs(&self) -> Option<&[Graph]> {
        self.forbidden_subgraphs.as_deref()
    }

    pub fn closed_form(&self) -> Option<&ClosedForm> {
        self.closed_form.as_ref()
    }

    pub fn avoidance(&self) -> Option<AvoidancePolicy> {
        self.avoidance
    }

    pub fn satisfies(&self, g: &Graph) -> bool {
        (self.oracle)(g)
    }

    pub fn triangle_free() -> Self {
        let mut p = Property::hereditary("triangle-free", |g| !g.has_triangle());
        p.forbidden_induced = Some(vec![Graph::complete(3)]);
        p.forbidden_subgraphs = Some(vec![Graph::complete(3)]);
        p.with_avoidance(AvoidancePolicy::IndependentSets)
    }

    pub fn edge_free() -> Self {
        let mut p = Property::hereditary("edge-free", |g| g.edge_count() == 0);
        p.forbidden_induced = Some(vec![Graph::complete(2)]);
        p.forbidden_subgraphs = Some(vec![Graph::complete(2)]);
        p.closed_form = Some(ClosedForm::EdgeFree);
        p.with_avoidance(AvoidancePolicy::IndependentSets)
    }

    pub fn complete() -> Self {
        let mut p = Property::hereditary("complete", |g| {
            let n = g.n();
            g.edge_count() == n * n.saturating_sub(1) / 2
        });
        p.forbidden_induced = Some(vec![Graph::empty(2)]);
        p.closed_form = Some(ClosedForm::Complete);
        p.with_avoidance(AvoidancePolicy::Cliques)
    }

    pub fn k_colorable(k: usize) -> Self {
        Property::hereditary(format!("k-colorable:{k}"), move |g| g.is_k_colorable(k))
            .with_avoidance(AvoidancePolicy::IndependentSets)
    }

    /// Freeness of every "cycle plus one more vertex" as a subgraph.
    ///
    /// A graph avoids all of them iff it has no cycle shorter than its order,
    /// i.e. it is a forest or a single cycle through every vertex.
    pub fn cycle_star_free() -> Self {
        let mut p = Property::hereditary("cycle-star-free", |g| {
            g.is_forest() || (g.n() >= 3 && g.is_connected() && (0..g.n()).all(|v| g.degree(v) == 2))
        });
        p.closed_form = Some(ClosedForm::ForestOrSpanningCycle);
        p
    }

    /// Induced `{A, B}`-freeness with `A` a 2-edge path plus a vertex adjacent
    /// to all three of its vertices, and `B` a 2-edge path plus an isolated vertex.
    pub fn ab_free() -> Self {
        Property::induced_free("AB-free", vec![ab_graph_a(), ab_graph_b()])
    }

    pub fn edge_density_le(bound: Rational) -> Self {
        let b = bound.clone();
        let mut p = Property::non_hereditary(format!("edge-density-le:{bound}"), move |g| {
            let n = g.n() as i64;
            if n == 0 {
                return true;
            }
            Rational::from_integer((2 * g.edge_count() as i64).into()) / Rational::from_integer((n * n).into()) <= b
        });
        p.closed_form = Some(ClosedForm::EdgeDensityLe(bound));
        p
    }

    pub fn connected() -> Self {
        Property::non_hereditary("connected", |g| g.is_connected())
    }

    pub fn hamiltonian() -> Self {
        Property::non_hereditary("hamiltonian", |g| g.is_hamiltonian())
    }

    pub fn induced_h_free(h: Graph) -> Self {
        let blowup_safe = [Graph::path(2), Graph::path(3), Graph::cycle(4)]
            .iter()
            .any(|f| is_isomorphic(f, &h));
        let p = Property::induced_free(format!("induced-H-free:{}", describe(&h)), vec![h]);
        if blowup_safe {
            p.with_avoidance(AvoidancePolicy::Cliques)
        } else {
            p
        }
    }

    /// Looks up a built-in property by id.
    ///
    /// Ids: `triangle-free`, `edge-free`, `complete`, `k-colorable:<k>`,
    /// `bipartite`, `cycle-star-free`, `AB-free`, `edge-density-le:<p/q>`,
    /// `induced-H-free:<graph>`, `H-free:<graph>`, `connected`, `hamiltonian`.
    /// A `<graph>` is a name such as `C4`, `K3`, `P2`, `E3`, or a path to a
    /// weighted-graph file (weights are ignored).
    pub fn from_id(id: &str) -> Result<Self> {
        let (head, arg) = match id.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (id, None),
        };
        let need = || arg.ok_or_else(|| Error::input(format!("property '{head}' needs an argument")));
        Ok(match head {
            "triangle-free" => Property::triangle_free(),
            "edge-free" => Property::edge_free(),
            "complete" => Property::complete(),
            "bipartite" => Property::k_colorable(2),
            "k-colorable" => {
                let k = need()?.parse().map_err(|_| Error::input("bad color count"))?;
                Property::k_colorable(k)
            }
            "cycle-star-free" => Property::cycle_star_free(),
            "AB-free" => Property::ab_free(),
            "edge-density-le" => Property::edge_density_le(parse_rational(need()?)?),
            "induced-H-free" => Property::induced_h_free(graph_arg(need()?)?),
            "H-free" => {
                let h = graph_arg(need()?)?;
                Property::subgraph_free(format!("H-free:{}", describe(&h)), vec![h])
            }
            "connected" => Property::connected(),
            "hamiltonian" => Property::hamiltonian(),
            _ => return Err(Error::input(format!("unknown property id '{id}'"))),
        })
    }
}

pub fn ab_graph_a() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap()
}

pub fn ab_graph_b() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap()
}

fn describe(g: &Graph) -> String {
    let named = (0..=g.n()).find_map(|k| {
        ["K", "C", "P", "E"].iter().find_map(|c| {
            let name = format!("{c}{k}");
            Graph::from_name(&name).filter(|h| h.n() == g.n() && is_isomorphic(h, g)).map(|_| name)
        })
    });
    named.unwrap_or_else(|| {
        let es: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("n{}[{}]", g.n(), es.join(","))
    })
}

fn graph_arg(arg: &str) -> Result<Graph> {
    if let Some(g) = Graph::from_name(arg) {
        return Ok(g);
    }
    Ok(io::read_wgraph(arg)?.into_parts().0)
}

/// Result of the extension search for one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadnessRecord {
    pub f: Graph,
    /// `r_P(F)` if found within the horizon.
    pub r: Option<usize>,
    /// Largest order examined; `r = None` means "good up to this order".
    pub searched_up_to: usize,
}

fn check_order(r: usize, cap: usize) -> Result<()> {
    if r > cap {
        return Err(Error::resource("extension search order", cap));
    }
    Ok(())
}

struct Extender<'a> {
    p: &'a Property,
    r_max: usize,
    memo: HashMap<Graph, usize>,
}

impl Extender<'_> {
    /// Largest order `≤ r_max` of a member of `P` containing `g` (which is in `P`).
    fn depth(&mut self, g: &Graph) -> usize {
        if g.n() >= self.r_max {
            return g.n();
        }
        let key = canonical_form(g);
        if let Some(&d) = self.memo.get(&key) {
            return d;
        }
        let mut best = g.n();
        let mut tried = std::collections::HashSet::new();
        for nb in g.vertices().subsets() {
            let mut h = key.clone();
            h.add_vertex(nb).unwrap();
            if !self.p.satisfies(&h) {
                continue;
            }
            let c = canonical_form(&h);
            if !tried.insert(c.clone()) {
                continue;
            }
            best = best.max(self.depth(&c));
            if best == self.r_max {
                break;
            }
        }
        self.memo.insert(key, best);
        best
    }
}

/// Largest `r ≤ r_max` such that some `r`-vertex member of `P` contains `f`
/// induced; `None` if `f ∉ P`. Requires `P` hereditary.
pub fn max_extension_order(p: &Property, f: &Graph, r_max: usize, cap: usize) -> Result<Option<usize>> {
    if !p.is_hereditary() {
        return Err(Error::Precondition(format!("{} is not hereditary", p.name())));
    }
    check_order(r_max, cap)?;
    if !p.satisfies(f) {
        return Ok(None);
    }
    let mut ext = Extender {
        p,
        r_max,
        memo: HashMap::new(),
    };
    Ok(Some(ext.depth(f)))
}

/// Largest number of free vertex pairs enumerated for non-hereditary extension checks.
pub const MAX_FREE_PAIRS: usize = 26;

/// Whether some `r`-vertex member of `P` contains `f` as an induced subgraph.
///
/// Hereditary properties use a pruned search; others enumerate all
/// completions with `f` fixed on the first vertices.
pub fn extension_exists(p: &Property, f: &Graph, r: usize) -> Result<bool> {
    if r < f.n() {
        return Ok(false);
    }
    if p.is_hereditary() {
        return Ok(max_extension_order(p, f, r, r.max(DEFAULT_ORDER_CAP))?.is_some_and(|d| d >= r));
    }
    let k = f.n();
    let pairs: Vec<(usize, usize)> = (0..r)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|&(_, v)| v >= k)
        .collect();
    if pairs.len() > MAX_FREE_PAIRS {
        return Err(Error::resource("free pairs in completion search", MAX_FREE_PAIRS));
    }
    let mut base = Graph::new(r)?;
    for (u, v) in f.edges() {
        base.add_edge(u, v);
    }
    for mask in 0u64..1 << pairs.len() {
        let mut g = base.clone();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        if p.satisfies(&g) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff some one-vertex extension of `g` lies in `P`.
pub fn is_extendable_at(p: &Property, g: &Graph) -> Result<bool> {
    if !p.satisfies(g) {
        return Err(Error::Precondition(format!("graph is not in {}", p.name())));
    }
    Ok(g.vertices().subsets().any(|nb| {
        let mut h = g.clone();
        h.add_vertex(nb).is_ok() && p.satisfies(&h)
    }))
}

/// `r_P(F)` searched over orders `|V(F)|+1 ..= r_max`.
pub fn badness(p: &Property, f: &Graph, r_max: usize) -> Result<BadnessRecord> {
    badness_capped(p, f, r_max, DEFAULT_ORDER_CAP)
}

pub fn badness_capped(p: &Property, f: &Graph, r_max: usize, cap: usize) -> Result<BadnessRecord> {
    if r_max < f.n() + 1 {
        return Err(Error::input(format!("r_max = {r_max} must exceed |V(F)| = {}", f.n())));
    }
    check_order(r_max, cap)?;
    let depth = max_extension_order(p, f, r_max, cap)?
        .ok_or_else(|| Error::Precondition(format!("F is not in {}", p.name())))?;
    Ok(BadnessRecord {
        f: f.clone(),
        r: (depth < r_max).then_some(depth + 1),
        searched_up_to: r_max,
    })
}

/// `R_P(s)`: the largest `r_P(F)` over bad members `F` with at most `s`
/// vertices, 0 if none is found. Non-members are not counted; they
/// trivially have `r = |V(F)| + 1 ≤ s + 1`.
pub fn r_bound(p: &Property, s: usize, r_max: usize) -> Result<usize> {
    check_order(s, DEFAULT_ORDER_CAP)?;
    let mut best = 0;
    for f in graphs_up_to(s)? {
        if !p.satisfies(&f) || f.n() >= r_max {
            continue;
        }
        if let Some(r) = badness(p, &f, r_max)?.r {
            best = best.max(r);
        }
    }
    Ok(best)
}

/// The hereditary and extendable core `H(P)`: induced freeness of all
/// `P`-bad graphs, certified up to the horizon `r_max`.
///
/// For hereditary `P`, a graph avoids every bad induced subgraph iff it is
/// itself a good member (a good graph's extensions also extend each of its
/// induced subgraphs), so the oracle runs one memoized extension search.
pub fn hereditary_core(p: &Property, r_max: usize) -> Result<Property> {
    if !p.is_hereditary() {
        return Err(Error::Precondition(format!("{} is not hereditary", p.name())));
    }
    check_order(r_max, ENUMERATION_CAP)?;
    let base = p.clone();
    let memo: Arc<Mutex<HashMap<Graph, bool>>> = Arc::default();
    let name = format!("core({})", p.name());
    let core = Property::hereditary(name, move |g| {
        if !base.satisfies(g) {
            return false;
        }
        if g.n() >= r_max {
            return true;
        }
        let key = canonical_form(g);
        if let Some(&b) = memo.lock().unwrap().get(&key) {
            return b;
        }
        let good = max_extension_order(&base, &key, r_max, r_max)
            .map(|d| d == Some(r_max))
            .unwrap_or(false);
        memo.lock().unwrap().insert(key, good);
        good
    });
    Ok(core)
}

/// Minimal non-members with at most `n_max` vertices, up to isomorphism.
pub fn minimal_forbidden_family(p: &Property, n_max: usize) -> Result<Vec<Graph>> {
    check_order(n_max, DEFAULT_ORDER_CAP)?;
    let mut out = Vec::new();
    for f in graphs_up_to(n_max)? {
        if p.satisfies(&f) {
            continue;
        }
        let minimal = if p.is_hereditary() {
            (0..f.n()).all(|v| p.satisfies(&f.remove_vertex(v)))
        } else {
            let full = f.vertices();
            full.subsets().filter(|&s| s != full).all(|s| p.satisfies(&f.induced(s)))
        };
        if minimal {
            out.push(f);
        }
    }
    Ok(out)
}

/// Cap on the total size of blowups examined by [`closed_under_blowups`].
pub const BLOWUP_TOTAL_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupClosure {
    /// No violation found at this scale.
    pub closed: bool,
    /// A member and blowup vector whose independent-set blowup leaves `P`.
    pub counterexample: Option<(Graph, Vec<usize>)>,
}

/// Blowup of `g` replacing vertex `i` by an independent set of size `b[i]`.
pub fn independent_blowup(g: &Graph, b: &[usize]) -> Result<Graph> {
    let total: usize = b.iter().sum();
    let mut h = Graph::new(total)?;
    let mut start = Vec::with_capacity(b.len());
    let mut acc = 0;
    for &k in b {
        start.push(acc);
        acc += k;
    }
    for (u, v) in g.edges() {
        for x in start[u]..start[u] + b[u] {
            for y in start[v]..start[v] + b[v] {
                h.add_edge(x, y);
            }
        }
    }
    Ok(h)
}

/// Checks members with at most `n_max` vertices against all independent-set
/// blowups with entries in `1..=b_max` and total at most [`BLOWUP_TOTAL_CAP`].
pub fn closed_under_blowups(p: &Property, n_max: usize, b_max: usize) -> Result<BlowupClosure> {
    check_order(n_max, DEFAULT_ORDER_CAP)?;
    for n in 1..=n_max {
        for g in graphs_of_order(n)?.iter() {
            if !p.satisfies(g) {
                continue;
            }
            let mut b = vec![1usize; n];
            loop {
                if b.iter().sum::<usize>() <= BLOWUP_TOTAL_CAP {
                    let h = independent_blowup(g, &b)?;
                    if !p.satisfies(&h) {
                        return Ok(BlowupClosure {
                            closed: false,
                            counterexample: Some((g.clone(), b)),
                        });
                    }
                }
                // next vector in {1..b_max}^n
                let mut i = 0;
                while i < n && b[i] == b_max {
                    b[i] = 1;
                    i += 1;
                }
                if i == n {
                    break;
                }
                b[i] += 1;
            }
        }
    }
    Ok(BlowupClosure {
        closed: true,
        counterexample: None,
    })
}

/// One-vertex deletions of every member of `P` among `graphs` stay in `P`.
pub fn hereditary_spot_check(p: &Property, graphs: &[Graph]) -> Option<Graph> {
    graphs
        .iter()
        .filter(|g| p.satisfies(g))
        .find(|g| (0..g.n()).any(|v| !p.satisfies(&g.remove_vertex(v))))
        .cloned()
}
