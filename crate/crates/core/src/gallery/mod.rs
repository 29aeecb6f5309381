//! Pairs of inputs whose sample laws agree (exactly or nearly) while one is
//! in the property and the other is far from it, each with a computed
//! distance certificate.

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distance::{distance_auto, BRUTE_FORCE_CAP};
use crate::error::{Error, Result};
use crate::property::{is_extendable_at, Property};
use crate::sampling::{rng, stream_id, WeightedIndex};
use crate::wgraph::canon::{canonical_form, ENUMERATION_CAP};
use crate::wgraph::io::format_wgraph;
use crate::wgraph::{Graph, Rational, VertexDistribution, VertexSet, WeightedGraph};

/// Serialized next to the two weighted-graph files of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub property: String,
    /// Exact distance of the second instance, as `p/q`.
    pub distance: String,
    pub method: String,
}

#[derive(Clone, Debug)]
pub struct GalleryPair {
    pub name: String,
    pub property: Property,
    /// The instance in the property.
    pub first: WeightedGraph,
    /// The instance that should be far.
    pub second: WeightedGraph,
    pub first_member: bool,
    pub distance: Rational,
    /// Lower bound the construction promises for `distance`; `None` when
    /// only a positive constant is promised.
    pub target: Option<Rational>,
    pub method: String,
    /// The big clique of each instance, for pairs built from cliques.
    pub cliques: Option<[VertexSet; 2]>,
}

impl GalleryPair {
    /// The first instance is a member and the second is as far as promised.
    pub fn certified(&self) -> bool {
        self.first_member
            && self.distance > Rational::zero()
            && self.target.as_ref().map_or(true, |t| self.distance >= *t)
    }

    pub fn certificate(&self) -> Certificate {
        Certificate {
            property: self.property.name().to_string(),
            distance: self.distance.to_string(),
            method: self.method.clone(),
        }
    }

    /// Writes `<name>.1.wgraph`, `<name>.2.wgraph` and `<name>.cert.json`.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{}.1.wgraph", self.name)), format_wgraph(&self.first))?;
        std::fs::write(dir.join(format!("{}.2.wgraph", self.name)), format_wgraph(&self.second))?;
        let json = serde_json::to_string_pretty(&self.certificate()).map_err(|e| Error::input(e.to_string()))?;
        std::fs::write(dir.join(format!("{}.cert.json", self.name)), json + "\n")?;
        Ok(())
    }
}

fn method_for(wg: &WeightedGraph, p: &Property) -> &'static str {
    if p.closed_form().is_some() {
        "closed-form"
    } else if wg.n() <= BRUTE_FORCE_CAP {
        "brute-force"
    } else {
        "hitting-set search"
    }
}

fn inv_square(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(k * k))
}

/// `G1` plus a vertex joined to `attachment`, with `G1` uniform and the new
/// vertex weightless. Needs `G1 ∈ P` with no one-vertex extension in `P`.
pub fn non_extendable_pair(p: &Property, g1: &Graph, attachment: VertexSet) -> Result<GalleryPair> {
    let n = g1.n();
    if !p.satisfies(g1) {
        return Err(Error::Precondition(format!("G1 does not satisfy {}", p.name())));
    }
    if is_extendable_at(p, g1)? {
        return Err(Error::Precondition(format!("G1 has a one-vertex extension in {}", p.name())));
    }
    if !attachment.is_subset(g1.vertices()) {
        return Err(Error::input("attachment outside V(G1)"));
    }
    let mut g2 = g1.clone();
    g2.add_vertex(attachment)?;
    let mut masses = vec![1u64; n];
    masses.push(0);
    let second = WeightedGraph::new(g2, VertexDistribution::from_masses(&masses)?)?;
    let distance = distance_auto(&second, p)?.distance;
    Ok(GalleryPair {
        name: "non-extendable".into(),
        property: p.clone(),
        method: method_for(&second, p).into(),
        first: WeightedGraph::uniform(g1.clone()),
        second,
        first_member: true,
        distance,
        target: Some(inv_square(n)),
        cliques: None,
    })
}

/// `(G1, uniform on S)` against `(G1[S], uniform)` where `G1 ∈ P` and
/// `G1[S] ∉ P`.
pub fn non_hereditary_pair(p: &Property, g1: &Graph, s: VertexSet) -> Result<GalleryPair> {
    if p.is_hereditary() {
        return Err(Error::Precondition(format!("{} is hereditary", p.name())));
    }
    if s.is_empty() || !s.is_subset(g1.vertices()) {
        return Err(Error::input("S must be a nonempty subset of V(G1)"));
    }
    let g2 = g1.induced(s);
    if !p.satisfies(g1) || p.satisfies(&g2) {
        return Err(Error::Precondition(format!("need G1 in {0} and G1[S] not in {0}", p.name())));
    }
    let masses: Vec<u64> = (0..g1.n()).map(|v| s.contains(v) as u64).collect();
    let first = WeightedGraph::new(g1.clone(), VertexDistribution::from_masses(&masses)?)?;
    let second = WeightedGraph::uniform(g2);
    let distance = distance_auto(&second, p)?.distance;
    Ok(GalleryPair {
        name: "non-hereditary".into(),
        property: p.clone(),
        method: method_for(&second, p).into(),
        first,
        second,
        first_member: true,
        distance,
        target: Some(inv_square(s.len())),
        cliques: None,
    })
}

/// `(C_M, uniform)` against `C_M` plus an isolated weightless vertex, for
/// cycle-star-freeness. The promised distance is `1/M²`.
pub fn cycle_star_pair(m: usize) -> Result<GalleryPair> {
    if m < 3 {
        return Err(Error::input("M must be at least 3"));
    }
    let p = Property::cycle_star_free();
    let g = Graph::cycle(m);
    let mut g2 = g.clone();
    g2.add_vertex(VertexSet::default())?;
    let mut masses = vec![1u64; m];
    masses.push(0);
    let second = WeightedGraph::new(g2, VertexDistribution::from_masses(&masses)?)?;
    let distance = distance_auto(&second, &p)?.distance;
    Ok(GalleryPair {
        name: format!("cycle-star-{m}"),
        method: method_for(&second, &p).into(),
        first_member: p.satisfies(&g),
        property: p,
        first: WeightedGraph::uniform(g),
        second,
        distance,
        target: Some(inv_square(m)),
        cliques: None,
    })
}

/// For edge density at most 1/4: a clique on `n/2` of `n` uniform vertices,
/// against a clique on `3n/4` vertices of weight `2/(3n)` each beside `n/4`
/// isolated vertices of weight `2/n` each.
pub fn density_pair(n: usize) -> Result<GalleryPair> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::input("n must be a positive multiple of 4"));
    }
    let p = Property::edge_density_le(Rational::new(1.into(), 4.into()));
    let k1 = n / 2;
    let k2 = 3 * n / 4;
    let clique_on = |k: usize| {
        let mut g = Graph::empty(n);
        for j in 0..k {
            for i in 0..j {
                g.add_edge(i, j);
            }
        }
        g
    };
    let g1 = clique_on(k1);
    let masses: Vec<u64> = (0..n).map(|v| if v < k2 { 1 } else { 3 }).collect();
    let second = WeightedGraph::new(clique_on(k2), VertexDistribution::from_masses(&masses)?)?;
    let distance = distance_auto(&second, &p)?.distance;
    Ok(GalleryPair {
        name: format!("density-{n}"),
        method: method_for(&second, &p).into(),
        first_member: p.satisfies(&g1),
        property: p,
        first: WeightedGraph::uniform(g1),
        second,
        distance,
        target: None,
        cliques: Some([VertexSet::full(k1), VertexSet::full(k2)]),
    })
}

/// Names accepted by [`gallery_by_name`].
pub const GALLERY_NAMES: [&str; 5] = ["ab-c5", "connected-p2", "hamiltonian-c4", "cycle-star:<M>", "density:<n>"];

/// Builds a named pair: `ab-c5` (AB-freeness with a weightless vertex added
/// to C5), `connected-p2`, `hamiltonian-c4`, `cycle-star:<M>`, `density:<n>`.
pub fn gallery_by_name(name: &str) -> Result<GalleryPair> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let num = || -> Result<usize> {
        arg.ok_or_else(|| Error::input(format!("gallery '{head}' needs a size argument")))?
            .parse()
            .map_err(|_| Error::input(format!("bad size in '{name}'")))
    };
    match head {
        "ab-c5" => {
            let mut p = non_extendable_pair(&Property::ab_free(), &Graph::cycle(5), VertexSet::singleton(0))?;
            p.name = "ab-c5".into();
            Ok(p)
        }
        "connected-p2" => {
            let mut p = non_hereditary_pair(&Property::connected(), &Graph::path(2), [0, 2].iter().collect())?;
            p.name = "connected-p2".into();
            Ok(p)
        }
        "hamiltonian-c4" => {
            let mut p = non_hereditary_pair(&Property::hamiltonian(), &Graph::cycle(4), VertexSet::full(3))?;
            p.name = "hamiltonian-c4".into();
            Ok(p)
        }
        "cycle-star" => cycle_star_pair(num()?),
        "density" => density_pair(num()?),
        _ => Err(Error::input(format!(
            "unknown gallery pair '{name}'; known: {}",
            GALLERY_NAMES.join(", ")
        ))),
    }
}

/// Edge density `2|E|/n²` of the unweighted graph.
pub fn edge_density(g: &Graph) -> Rational {
    if g.n() == 0 {
        return Rational::zero();
    }
    Rational::new(BigInt::from(2 * g.edge_count()), BigInt::from(g.n() * g.n()))
}

/// Whether the two instances have the same sample law for every sample
/// size: their restrictions to positive-weight vertices are isomorphic by a
/// weight-preserving map.
pub fn identical_sample_laws(a: &WeightedGraph, b: &WeightedGraph) -> Result<bool> {
    let ra = a.induced(a.dist().support())?;
    let rb = b.induced(b.dist().support())?;
    Ok(weighted_isomorphic(&ra, &rb))
}

fn weighted_isomorphic(a: &WeightedGraph, b: &WeightedGraph) -> bool {
    let n = a.n();
    if n != b.n() || a.graph().edge_count() != b.graph().edge_count() {
        return false;
    }
    let key = |wg: &WeightedGraph, v: usize| (wg.dist().weight(v).clone(), wg.graph().degree(v));
    fn go(a: &WeightedGraph, b: &WeightedGraph, phi: &mut Vec<usize>, used: &mut Vec<bool>, key: &dyn Fn(&WeightedGraph, usize) -> (Rational, usize)) -> bool {
        let u = phi.len();
        if u == a.n() {
            return true;
        }
        let ku = key(a, u);
        for x in 0..b.n() {
            if used[x] || key(b, x) != ku {
                continue;
            }
            if (0..u).all(|w| a.graph().has_edge(u, w) == b.graph().has_edge(x, phi[w])) {
                phi.push(x);
                used[x] = true;
                if go(a, b, phi, used, key) {
                    return true;
                }
                used[x] = false;
                phi.pop();
            }
        }
        false
    }
    go(a, b, &mut Vec::with_capacity(n), &mut vec![false; n], &key)
}

/// Total variation estimate between the laws of the graphs induced by `q`
/// draws from each instance, bucketed by isomorphism class.
#[derive(Clone, Debug, PartialEq)]
pub struct TvEstimate {
    pub q: usize,
    pub trials: usize,
    pub estimate: f64,
    /// 95% percentile bootstrap interval.
    pub ci: (f64, f64),
    pub classes: usize,
}

const BOOTSTRAP_ROUNDS: usize = 200;

fn sampled_classes(wg: &WeightedGraph, q: usize, trials: usize, seed: u64, stream: &str, ids: &mut HashMap<Graph, usize>) -> Vec<usize> {
    let w = WeightedIndex::new(wg.dist().masses()).expect("positive total mass");
    let mut r = rng(seed, stream_id(stream, 0));
    (0..trials)
        .map(|_| {
            let u: VertexSet = (0..q).map(|_| w.sample(&mut r)).collect();
            let c = canonical_form(&wg.graph().induced(u));
            let next = ids.len();
            *ids.entry(c).or_insert(next)
        })
        .collect()
}

fn tv_from(xs: &[usize], ys: &[usize], classes: usize) -> f64 {
    let mut cx = vec![0f64; classes];
    let mut cy = vec![0f64; classes];
    for &x in xs {
        cx[x] += 1.0;
    }
    for &y in ys {
        cy[y] += 1.0;
    }
    let (nx, ny) = (xs.len() as f64, ys.len() as f64);
    0.5 * cx.iter().zip(&cy).map(|(a, b)| (a / nx - b / ny).abs()).sum::<f64>()
}

/// Plug-in total variation estimate with a bootstrap interval.
pub fn tv_distance_estimate(a: &WeightedGraph, b: &WeightedGraph, q: usize, trials: usize, seed: u64) -> Result<TvEstimate> {
    if q > ENUMERATION_CAP {
        return Err(Error::resource("TV sample size", ENUMERATION_CAP));
    }
    if trials == 0 {
        return Err(Error::input("trials must be positive"));
    }
    let mut ids = HashMap::new();
    let xs = sampled_classes(a, q, trials, seed, "tv-first", &mut ids);
    let ys = sampled_classes(b, q, trials, seed, "tv-second", &mut ids);
    let k = ids.len();
    let estimate = tv_from(&xs, &ys, k);
    let mut r = rng(seed, stream_id("tv-bootstrap", 0));
    let mut reps: Vec<f64> = (0..BOOTSTRAP_ROUNDS)
        .map(|_| {
            let bx: Vec<usize> = (0..trials).map(|_| xs[r.gen_range(0..trials)]).collect();
            let by: Vec<usize> = (0..trials).map(|_| ys[r.gen_range(0..trials)]).collect();
            tv_from(&bx, &by, k)
        })
        .collect();
    reps.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let at = |f: f64| reps[((f * BOOTSTRAP_ROUNDS as f64) as usize).min(BOOTSTRAP_ROUNDS - 1)];
    Ok(TvEstimate {
        q,
        trials,
        estimate,
        ci: (at(0.025), at(0.975)),
        classes: k,
    })
}

/// Counts over `trials` runs of the number of distinct clique vertices among
/// `q` draws; entry `k` counts runs with exactly `k`.
pub fn clique_size_histogram(wg: &WeightedGraph, clique: VertexSet, q: usize, trials: usize, seed: u64) -> Vec<u64> {
    let w = WeightedIndex::new(wg.dist().masses()).expect("positive total mass");
    let mut r = rng(seed, stream_id("clique-histogram", 0));
    let mut h = vec![0u64; q + 1];
    for _ in 0..trials {
        let u: VertexSet = (0..q).map(|_| w.sample(&mut r)).collect();
        h[(u & clique).len()] += 1;
    }
    h
}

/// Exact law of the number of distinct clique vertices among `q` draws.
/// Clique vertices must share one weight.
pub fn exact_clique_size_law(wg: &WeightedGraph, clique: VertexSet, q: usize) -> Result<Vec<Rational>> {
    let m = clique.len();
    let w = match clique.first() {
        Some(v) => wg.dist().weight(v).clone(),
        None => Rational::zero(),
    };
    if clique.iter().any(|v| *wg.dist().weight(v) != w) {
        return Err(Error::input("clique vertices must have equal weight"));
    }
    let outside = Rational::one() - &w * Rational::from_integer(m.into());
    let mut law = vec![Rational::zero(); q + 1];
    law[0] = Rational::one();
    for _ in 0..q {
        let mut next = vec![Rational::zero(); q + 1];
        for j in 0..=q {
            if law[j].is_zero() {
                continue;
            }
            let stay = &w * Rational::from_integer(j.into()) + &outside;
            next[j] += &law[j] * stay;
            if j < m && j < q {
                next[j + 1] += &law[j] * &w * Rational::from_integer((m - j).into());
            }
        }
        law = next;
    }
    Ok(law)
}

/// `binom(q, k)·2^{-q}` for `k = 0..=q`.
pub fn binomial_half_law(q: usize) -> Vec<Rational> {
    let den = BigInt::one() << q;
    let mut c = BigInt::one();
    (0..=q)
        .map(|k| {
            let r = Rational::new(c.clone(), den.clone());
            c = c.clone() * BigInt::from(q - k) / BigInt::from(k + 1);
            r
        })
        .collect()
}

#[cfg(test)]
mod tests;
