//! Sample-based testers for vertex-weighted graphs.
//!
//! Every tester draws vertices independently from the input distribution
//! (or uniformly, for the standard model), collapses the sample to its
//! distinct set `U`, and decides from `G[U]` alone. Sample sizes are
//! explicit parameters.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::property::{extension_exists, hereditary_core, Property};
use crate::sampling::{rng, stream_id, WeightedIndex};
use crate::wgraph::{Rational, VertexDistribution, VertexSet, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Vdf,
    Standard,
    LargeInputs,
    SizeAware,
    Nlw,
    Nhw,
    Trivial,
}

impl Variant {
    pub const ALL: [Variant; 7] = [
        Variant::Vdf,
        Variant::Standard,
        Variant::LargeInputs,
        Variant::SizeAware,
        Variant::Nlw,
        Variant::Nhw,
        Variant::Trivial,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Variant::Vdf => "vdf",
            Variant::Standard => "standard",
            Variant::LargeInputs => "large-inputs",
            Variant::SizeAware => "size-aware",
            Variant::Nlw => "nlw",
            Variant::Nhw => "nhw",
            Variant::Trivial => "trivial",
        }
    }

    pub fn from_id(id: &str) -> Result<Variant> {
        Variant::ALL
            .into_iter()
            .find(|v| v.id() == id)
            .ok_or_else(|| Error::input(format!("unknown tester variant '{id}'")))
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Accept,
    Reject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TesterOutcome {
    pub decision: Decision,
    /// Draws in order, with multiplicity.
    pub sample: Vec<usize>,
    /// The distinct sampled set whose induced graph caused a rejection.
    pub evidence: Option<Vec<usize>>,
}

impl TesterOutcome {
    pub fn accepted(&self) -> bool {
        self.decision == Decision::Accept
    }

    fn decide(sample: Vec<usize>, ok: bool) -> Self {
        let evidence = (!ok).then(|| distinct(&sample).to_vec());
        TesterOutcome {
            decision: if ok { Decision::Accept } else { Decision::Reject },
            sample,
            evidence,
        }
    }
}

/// `s` independent draws from `dist`, reproducible from the seed.
pub fn sample_vertices(dist: &VertexDistribution, s: usize, seed: u64) -> Vec<usize> {
    let w = WeightedIndex::new(dist.masses()).expect("distributions have positive total mass");
    let mut r = rng(seed, stream_id("sample", 0));
    (0..s).map(|_| w.sample(&mut r)).collect()
}

fn distinct(sample: &[usize]) -> VertexSet {
    sample.iter().collect()
}

fn check_size(s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::input("sample size must be at least 1"));
    }
    Ok(())
}

fn check_unit(name: &str, x: &Rational) -> Result<()> {
    if !x.is_positive() || *x > Rational::one() {
        return Err(Error::input(format!("{name} must lie in (0, 1]")));
    }
    Ok(())
}

/// Accepts iff the graph induced by the distinct sampled vertices lies in `P`.
pub fn vdf_tester(wg: &WeightedGraph, p: &Property, s: usize, seed: u64) -> Result<TesterOutcome> {
    check_size(s)?;
    let sample = sample_vertices(wg.dist(), s, seed);
    let ok = p.satisfies(&wg.graph().induced(distinct(&sample)));
    Ok(TesterOutcome::decide(sample, ok))
}

/// The dense-model tester: uniform draws, whatever the input distribution.
pub fn standard_tester(wg: &WeightedGraph, p: &Property, s: usize, seed: u64) -> Result<TesterOutcome> {
    vdf_tester(&WeightedGraph::uniform(wg.graph().clone()), p, s, seed)
}

/// Samples and tests membership in the hereditary and extendable core of
/// `P`, certified up to order `m`. Inputs must have at least `m` vertices,
/// which makes the tester complete on members of `P`.
pub fn large_inputs_tester(wg: &WeightedGraph, p: &Property, s: usize, m: usize, seed: u64) -> Result<TesterOutcome> {
    if wg.n() < m {
        return Err(Error::Precondition(format!("input has {} < M = {m} vertices", wg.n())));
    }
    let core = hereditary_core(p, m)?;
    vdf_tester(wg, &core, s, seed)
}

/// `⌈M·ln(3M)/ε⌉`.
pub fn size_aware_sample_size(m: usize, eps: &Rational) -> Result<usize> {
    check_unit("eps", eps)?;
    let e = eps.to_f64().unwrap();
    let mf = m.max(1) as f64;
    Ok(((mf * (3.0 * mf).ln() / e).ceil() as usize).max(1))
}

/// For inputs with at least `m` vertices, the large-inputs tester with `s`
/// draws. Smaller inputs get `⌈M·ln(3M)/ε⌉` draws and are accepted iff some
/// `n`-vertex member of `P` contains the sampled induced graph.
pub fn size_aware_tester(
    wg: &WeightedGraph,
    p: &Property,
    n: usize,
    eps: &Rational,
    m: usize,
    s: usize,
    seed: u64,
) -> Result<TesterOutcome> {
    if n != wg.n() {
        return Err(Error::input(format!("declared size {n} but the graph has {} vertices", wg.n())));
    }
    if n >= m {
        return large_inputs_tester(wg, p, s, m, seed);
    }
    let t = size_aware_sample_size(m, eps)?;
    let sample = sample_vertices(wg.dist(), t, seed);
    let f = wg.graph().induced(distinct(&sample));
    let ok = extension_exists(p, &f, n)?;
    Ok(TesterOutcome::decide(sample, ok))
}

/// `t` draws on inputs whose every weight is at least `δ/n`.
pub fn nlw_tester(wg: &WeightedGraph, p: &Property, delta: &Rational, t: usize, seed: u64) -> Result<TesterOutcome> {
    check_unit("delta", delta)?;
    let floor = delta / Rational::from_integer(wg.n().into());
    if *wg.dist().min_weight() < floor {
        return Err(Error::Precondition(format!("a vertex weighs less than delta/n = {floor}")));
    }
    vdf_tester(wg, p, t, seed)
}

/// `q` draws on inputs whose every weight is at most `1/(3q²)`.
pub fn nhw_tester(wg: &WeightedGraph, p: &Property, q: usize, seed: u64) -> Result<TesterOutcome> {
    check_size(q)?;
    let cap = Rational::new(BigInt::one(), BigInt::from(3 * q * q));
    if *wg.dist().max_weight() > cap {
        return Err(Error::Precondition(format!("a vertex weighs more than 1/(3q^2) = {cap}")));
    }
    vdf_tester(wg, p, q, seed)
}

/// Which restricted model the trivial-property tester runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrivialBranch {
    LargeInputs,
    Nlw,
    SizeAware,
}

/// Tester for properties that every graph on at least `M` vertices is close to.
///
/// Large inputs: accept without sampling. NLW: draw `⌈2M·ln(3M)/δ⌉`
/// vertices and accept if at least `M` are distinct, otherwise decide on
/// the sampled graph. Size-aware: accept when `n ≥ M`, otherwise accept iff
/// some `n`-vertex member contains the sampled graph.
pub fn trivial_property_tester(
    wg: &WeightedGraph,
    p: &Property,
    branch: TrivialBranch,
    m: usize,
    delta: &Rational,
    eps: &Rational,
    seed: u64,
) -> Result<TesterOutcome> {
    let accept = || TesterOutcome {
        decision: Decision::Accept,
        sample: Vec::new(),
        evidence: None,
    };
    match branch {
        TrivialBranch::LargeInputs => {
            if wg.n() < m {
                return Err(Error::Precondition(format!("input has {} < M = {m} vertices", wg.n())));
            }
            Ok(accept())
        }
        TrivialBranch::Nlw => {
            check_unit("delta", delta)?;
            let floor = delta / Rational::from_integer(wg.n().into());
            if *wg.dist().min_weight() < floor {
                return Err(Error::Precondition(format!("a vertex weighs less than delta/n = {floor}")));
            }
            let mf = m.max(1) as f64;
            let t = ((2.0 * mf * (3.0 * mf).ln() / delta.to_f64().unwrap()).ceil() as usize).max(1);
            let sample = sample_vertices(wg.dist(), t, seed);
            let u = distinct(&sample);
            let ok = u.len() >= m || p.satisfies(&wg.graph().induced(u));
            Ok(TesterOutcome::decide(sample, ok))
        }
        TrivialBranch::SizeAware => {
            if wg.n() >= m {
                return Ok(accept());
            }
            let t = size_aware_sample_size(m, eps)?;
            let sample = sample_vertices(wg.dist(), t, seed);
            let f = wg.graph().induced(distinct(&sample));
            let ok = extension_exists(p, &f, wg.n())?;
            Ok(TesterOutcome::decide(sample, ok))
        }
    }
}

/// Parameters for [`run_tester`]; each variant reads the fields it needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterConfig {
    pub variant: Variant,
    /// Draws for sample-size driven variants (`s`, `t` or `q`).
    pub sample_size: usize,
    /// Proximity parameter, as `p/q`.
    #[serde(default = "default_eps")]
    pub eps: String,
    /// Weight floor factor for the NLW model, as `p/q`.
    #[serde(default = "default_delta")]
    pub delta: String,
    /// Size threshold `M` (large-inputs, size-aware and trivial variants).
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub branch: Option<TrivialBranch>,
}

fn default_eps() -> String {
    "1/4".into()
}

fn default_delta() -> String {
    "1".into()
}

impl TesterConfig {
    pub fn new(variant: Variant, sample_size: usize) -> Self {
        TesterConfig {
            variant,
            sample_size,
            eps: default_eps(),
            delta: default_delta(),
            m: None,
            branch: None,
        }
    }
}

/// Dispatches to the tester selected by `cfg.variant`. `M` defaults to the
/// number of vertices, and the trivial tester defaults to the NLW branch.
pub fn run_tester(wg: &WeightedGraph, p: &Property, cfg: &TesterConfig, seed: u64) -> Result<TesterOutcome> {
    let eps = crate::wgraph::parse_rational(&cfg.eps)?;
    let delta = crate::wgraph::parse_rational(&cfg.delta)?;
    let m = cfg.m.unwrap_or(wg.n());
    let s = cfg.sample_size;
    match cfg.variant {
        Variant::Vdf => vdf_tester(wg, p, s, seed),
        Variant::Standard => standard_tester(wg, p, s, seed),
        Variant::LargeInputs => large_inputs_tester(wg, p, s, m, seed),
        Variant::SizeAware => size_aware_tester(wg, p, wg.n(), &eps, m, s, seed),
        Variant::Nlw => nlw_tester(wg, p, &delta, s, seed),
        Variant::Nhw => nhw_tester(wg, p, s, seed),
        Variant::Trivial => {
            trivial_property_tester(wg, p, cfg.branch.unwrap_or(TrivialBranch::Nlw), m, &delta, &eps, seed)
        }
    }
}

/// Exact probability that `s` draws from `D` give a distinct set `U` with
/// `G[U] ∉ P`.
///
/// Uses `P(distinct set = U) = Σ_{W ⊆ U} (−1)^{|U∖W|} D(W)^s` over the
/// support, so the cost is `3^{|support|}`.
pub fn exact_rejection_probability(wg: &WeightedGraph, p: &Property, s: usize) -> Result<Rational> {
    let support = wg.dist().support();
    if support.len() > 16 {
        return Err(Error::resource("support size for exact rejection probability", 16));
    }
    let scale = BigInt::from(wg.dist().scale());
    let mut total = BigInt::zero();
    for u in support.subsets() {
        if u.is_empty() || p.satisfies(&wg.graph().induced(u)) {
            continue;
        }
        for w in u.subsets() {
            let term = BigInt::from(wg.dist().set_mass(w)).pow(s as u32);
            if (u.len() - w.len()) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(Rational::new(total, scale.pow(s as u32)))
}

#[cfg(test)]
mod tests;
