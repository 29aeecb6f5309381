//! Heavy/light split, the structured decomposition with a certified item
//! report, and the cleanup that makes each part homogeneous.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::regularity::{
    certify_pair, internal_pair_weight, low_internal_partition, representatives, turan_ramsey_sets, Partition,
};
use crate::sampling::stream_id;
use crate::wgraph::{Graph, Rational, VertexSet, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyLight {
    /// Layers before the light one; every vertex weighs at least `1/s`.
    pub x: VertexSet,
    /// The rest; every vertex weighs less than `1/s_i`.
    pub y: VertexSet,
    /// The first layer of mass at most ε/2.
    pub z: VertexSet,
    /// `s_{i−1}`, or 1 when the first layer is already light.
    pub s: u64,
    /// 1-based index `i` of the light layer.
    pub layer: usize,
}

fn int(v: impl Into<num_bigint::BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Peels layers `X_i = {v not yet taken : D(v) ≥ 1/s_i}` and stops at the
/// first one of mass at most ε/2, which exists among the first `⌈2/ε⌉`.
pub fn heavy_light_split(wg: &WeightedGraph, eps: &Rational, thresholds: &[u64]) -> Result<HeavyLight> {
    if !eps.is_positive() {
        return Err(Error::input("eps must be positive"));
    }
    if thresholds.first() == Some(&0) || thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("thresholds must be positive and strictly increasing"));
    }
    let dist = wg.dist();
    let half = eps / int(2);
    let limit = (int(2) / eps).ceil().to_integer();
    let mut taken = VertexSet::EMPTY;
    for (i, &s_i) in thresholds.iter().enumerate() {
        let floor = Rational::new(1.into(), s_i.into());
        let layer: VertexSet = (0..wg.n())
            .filter(|&v| !taken.contains(v) && *dist.weight(v) >= floor)
            .collect();
        if dist.set_weight(layer) <= half {
            if int(i + 1) > Rational::from_integer(limit.clone()) {
                return Err(Error::Contract("no light layer among the first 2/eps".into()));
            }
            let s = if i == 0 { 1 } else { thresholds[i - 1] };
            let y = VertexSet::full(wg.n()) - taken - layer;
            let heavy = Rational::new(1.into(), s.into());
            if taken.iter().any(|v| *dist.weight(v) < heavy) || y.iter().any(|v| *dist.weight(v) >= floor) {
                return Err(Error::Contract("weight dichotomy of the split".into()));
            }
            return Ok(HeavyLight {
                x: taken,
                y,
                z: layer,
                s,
                layer: i + 1,
            });
        }
        taken = taken | layer;
    }
    Err(Error::input(format!(
        "threshold schedule of length {} ran out before a layer of mass at most eps/2 (need up to {limit} entries)",
        thresholds.len()
    )))
}

/// Inputs of `structured_partition` other than the Ψ schedule.
#[derive(Clone, Debug)]
pub struct DecompositionParams {
    pub eps: Rational,
    /// Increasing thresholds `s_1 < s_2 < …` for the heavy/light split.
    pub thresholds: Vec<u64>,
    /// The size bound `S` checked by the weight items.
    pub size_bound: u64,
    /// Mass fraction handed to the homogeneous-set search inside each `Q_i`.
    pub zeta: Rational,
    pub seed: u64,
}

/// Outcome of one item of the decomposition guarantee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemCheck {
    pub item: usize,
    pub pass: bool,
    /// Exact margin of the quantitative part of the item, when it has one.
    pub slack: Option<Rational>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct StructuredDecomposition {
    pub eps: Rational,
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
    pub parts: Vec<VertexSet>,
    pub reps: Vec<VertexSet>,
    /// `Q_{i,1}, …, Q_{i,t}` for each `i`.
    pub sub_reps: Vec<Vec<VertexSet>>,
    pub t: usize,
    /// `1/Ψ(|X| + r)`.
    pub delta: Rational,
    pub size_bound: u64,
    pub items: Vec<ItemCheck>,
}

impl StructuredDecomposition {
    pub fn all_items_pass(&self) -> bool {
        self.items.iter().all(|c| c.pass)
    }
}

fn lift(sub: VertexSet, verts: &[usize]) -> VertexSet {
    sub.iter().map(|i| verts[i]).collect()
}

fn restrict(set: VertexSet, verts: &[usize]) -> VertexSet {
    verts.iter().enumerate().filter(|&(_, &v)| set.contains(v)).map(|(i, _)| i).collect()
}

/// Runs the decomposition pipeline and certifies every item exactly.
///
/// Heavy/light split; a low-internal-weight partition of the light side,
/// refined by the neighbourhood of every heavy vertex; representatives of a
/// strongly regular refinement under `E(r) = min{ε/2, 1/Ψ(s + r)}`; then
/// homogeneous regular sets of size `t = Ψ(|X| + r)` inside each
/// representative. Ψ is replaced by its running maximum. Items are
/// reported, never assumed; sub-procedure failures carry a stage label.
pub fn structured_partition(
    wg: &WeightedGraph,
    psi: &dyn Fn(usize) -> usize,
    params: &DecompositionParams,
) -> Result<StructuredDecomposition> {
    let eps = &params.eps;
    if !eps.is_positive() || *eps > Rational::one() {
        return Err(Error::input("eps must lie in (0, 1]"));
    }
    if params.size_bound == 0 {
        return Err(Error::input("size bound must be positive"));
    }
    let psi_mono = |m: usize| (0..=m).map(psi).max().unwrap();
    let dist = wg.dist();
    let hl = heavy_light_split(wg, eps, &params.thresholds).map_err(|e| e.at_stage("heavy/light split"))?;
    let half = eps / int(2);
    let mut z = hl.z;
    let mut parts = Vec::new();
    let mut reps = Vec::new();
    if dist.set_weight(hl.y) < half {
        z = z | hl.y;
    } else {
        let verts = hl.y.to_vec();
        let low = low_internal_partition(hl.y, dist, eps).map_err(|e| e.at_stage("low internal partition"))?;
        let mut p0 = low;
        for x in hl.x.iter() {
            let nb = wg.graph().neighbors(x) & hl.y;
            p0 = p0.common_refinement(&Partition::from_nonempty([nb, hl.y - nb])?)?;
        }
        let sub = wg.induced(hl.y)?;
        let p0_sub = Partition::new(p0.parts().iter().map(|&p| restrict(p, &verts)).collect())?;
        let s = hl.s as usize;
        let e_fn = |r: usize| {
            let p = psi_mono(s + r).max(1);
            half.clone().min(Rational::new(1.into(), p.into()))
        };
        let rep = representatives(&sub, &e_fn, p0_sub.len(), &p0_sub, params.seed)
            .map_err(|e| e.at_stage("representatives"))?;
        z = z | lift(rep.exceptional, &verts);
        parts = rep.parts.iter().map(|&p| lift(p, &verts)).collect();
        reps = rep.reps.iter().map(|&q| lift(q, &verts)).collect();
    }
    let y: VertexSet = parts.iter().fold(VertexSet::EMPTY, |a, &b| a | b);
    let r = parts.len();
    let t = psi_mono(hl.x.len() + r);
    if t == 0 {
        return Err(Error::input(format!("Psi({}) must be positive", hl.x.len() + r)));
    }
    let delta = Rational::new(1.into(), t.into());
    let mut sub_reps = Vec::with_capacity(r);
    for (i, &q) in reps.iter().enumerate() {
        if t == 1 {
            sub_reps.push(vec![q]);
            continue;
        }
        let verts = q.to_vec();
        let sub = wg.induced(q)?;
        let seed = params.seed ^ stream_id("structured_partition", i as u64);
        let tr = turan_ramsey_sets(&sub, t, &delta, &params.zeta, seed).map_err(|e| e.at_stage("homogeneous sets"))?;
        sub_reps.push(tr.sets.iter().map(|&s| lift(s, &verts)).collect());
    }
    let mut dec = StructuredDecomposition {
        eps: eps.clone(),
        x: hl.x,
        y,
        z,
        parts,
        reps,
        sub_reps,
        t,
        delta,
        size_bound: params.size_bound,
        items: Vec::new(),
    };
    dec.items = certify_items(wg, &dec)?;
    Ok(dec)
}

fn check(item: usize, pass: bool, slack: Option<Rational>, detail: impl Into<String>) -> ItemCheck {
    ItemCheck {
        item,
        pass,
        slack,
        detail: detail.into(),
    }
}

fn certify_items(wg: &WeightedGraph, d: &StructuredDecomposition) -> Result<Vec<ItemCheck>> {
    let dist = wg.dist();
    let g = wg.graph();
    let eps = &d.eps;
    let inv_s = Rational::new(1.into(), d.size_bound.into());
    let covered = d.x | d.y | d.z;
    if covered != VertexSet::full(wg.n()) || !d.x.is_disjoint(d.y) || !d.x.is_disjoint(d.z) || !d.y.is_disjoint(d.z) {
        return Err(Error::Contract("X, Y, Z do not partition V(G)".into()));
    }
    for (i, (&p, &q)) in d.parts.iter().zip(&d.reps).enumerate() {
        let subs = &d.sub_reps[i];
        let disjoint = subs.iter().enumerate().all(|(k, &a)| subs[k + 1..].iter().all(|&b| a.is_disjoint(b)));
        if !q.is_subset(p) || !disjoint || subs.iter().any(|s| !s.is_subset(q)) || subs.len() != d.t {
            return Err(Error::Contract(format!("containments fail at part {i}")));
        }
    }
    let mut items = Vec::with_capacity(8);

    let s1 = eps - dist.set_weight(d.z);
    items.push(check(1, s1.is_positive(), Some(s1), "eps - D(Z)"));

    let s2 = d.x.iter().map(|v| dist.weight(v) - &inv_s).min();
    items.push(check(2, s2.as_ref().map_or(true, |s| !s.is_negative()), s2, "min_X D(x) - 1/S"));

    let mut mixed = 0;
    for x in d.x.iter() {
        for &p in &d.parts {
            let nb = g.neighbors(x) & p;
            if !nb.is_empty() && nb != p {
                mixed += 1;
            }
        }
    }
    items.push(check(3, mixed == 0, None, format!("{mixed} (x, P_i) pairs with mixed adjacency")));

    let part = Partition::new(d.parts.clone())?;
    let s4 = eps - internal_pair_weight(&part, dist)?;
    items.push(check(4, !s4.is_negative(), Some(s4), "eps - internal pair weight"));

    let mut dev = Rational::zero();
    for i in 0..d.parts.len() {
        for j in i + 1..d.parts.len() {
            let w = dist.set_weight(d.parts[i]) * dist.set_weight(d.parts[j]);
            let diff = wg.pair_density(d.reps[i], d.reps[j])? - wg.pair_density(d.parts[i], d.parts[j])?;
            dev += w * diff.abs();
        }
    }
    let s5 = eps - dev;
    items.push(check(5, !s5.is_negative(), Some(s5), "eps - weighted representative deviation"));

    let half = Rational::new(1.into(), 2.into());
    let mut pass6 = true;
    let mut s6: Option<Rational> = None;
    let mut irregular6 = 0;
    for subs in &d.sub_reps {
        let mut dens = Vec::new();
        for k in 0..subs.len() {
            for l in k + 1..subs.len() {
                let rep = certify_pair(wg, subs[k], subs[l], &d.delta)?;
                if !rep.is_regular() {
                    irregular6 += 1;
                }
                dens.push(rep.density);
            }
        }
        if dens.is_empty() {
            continue;
        }
        let lo = dens.iter().min().unwrap();
        let hi = dens.iter().max().unwrap();
        let margin = if *lo >= half { lo - &half } else { &half - hi };
        if !(*lo >= half || *hi < half) {
            pass6 = false;
        }
        s6 = Some(s6.map_or(margin.clone(), |m: Rational| m.min(margin)));
    }
    items.push(check(
        6,
        pass6 && irregular6 == 0,
        s6,
        format!("{irregular6} irregular inner pairs; slack is the distance of the densities from 1/2"),
    ));

    let mut worst = Rational::zero();
    let mut irregular7 = 0;
    for i in 0..d.parts.len() {
        for j in i + 1..d.parts.len() {
            let base = wg.pair_density(d.reps[i], d.reps[j])?;
            for &a in &d.sub_reps[i] {
                for &b in &d.sub_reps[j] {
                    let rep = certify_pair(wg, a, b, &d.delta)?;
                    if !rep.is_regular() {
                        irregular7 += 1;
                    }
                    worst = worst.max((&rep.density - &base).abs());
                }
            }
        }
    }
    let s7 = &d.delta - worst;
    items.push(check(
        7,
        irregular7 == 0 && !s7.is_negative(),
        Some(s7),
        format!("{irregular7} irregular cross pairs; slack is 1/Psi minus the largest density shift"),
    ));

    let s8 = d.sub_reps.iter().flatten().map(|&q| dist.set_weight(q) - &inv_s).min();
    items.push(check(8, s8.as_ref().map_or(true, |s| !s.is_negative()), s8, "min D(Q_ik) - 1/S"));
    Ok(items)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cleanup {
    pub graph: Graph,
    /// Total weight of changed pairs.
    pub change: Rational,
    /// `P_i` was made a clique (otherwise independent).
    pub cliques: Vec<bool>,
}

/// The cleaned graph `G′`: each `P_i` becomes a clique when its inner pairs
/// `(Q_{i,k}, Q_{i,l})` are dense (density ≥ 1/2) and an independent set when
/// they are sparse; cross pairs `(P_i, P_j)` are completed when
/// `d(Q_i, Q_j) > 1 − ε/4`, emptied when `< ε/4`, and left alone otherwise.
///
/// When the inner pairs are mixed (or there are none) the majority decides,
/// and a tie goes to the cheaper of the two edits. If the decomposition was
/// built with parameter at most ε/4 and all its items hold, the change must
/// weigh less than 3ε/4; a violation is a contract error.
pub fn regularity_cleanup(wg: &WeightedGraph, d: &StructuredDecomposition, eps: &Rational) -> Result<Cleanup> {
    if !eps.is_positive() {
        return Err(Error::input("eps must be positive"));
    }
    let g = wg.graph();
    let mut out = g.clone();
    let half = Rational::new(1.into(), 2.into());
    let mut cliques = Vec::with_capacity(d.parts.len());
    for (i, &p) in d.parts.iter().enumerate() {
        let subs = &d.sub_reps[i];
        let (mut dense, mut sparse) = (0usize, 0usize);
        for k in 0..subs.len() {
            for l in k + 1..subs.len() {
                if wg.pair_density(subs[k], subs[l])? >= half {
                    dense += 1;
                } else {
                    sparse += 1;
                }
            }
        }
        let clique = if dense != sparse {
            dense > sparse
        } else {
            let edges = wg.internal_edge_mass(p);
            wg.internal_mass(p) - edges <= edges
        };
        cliques.push(clique);
        for u in p.iter() {
            for v in p.iter().filter(|&v| v > u) {
                out.set_edge(u, v, clique);
            }
        }
    }
    let quarter = eps / int(4);
    let upper = Rational::one() - &quarter;
    for i in 0..d.parts.len() {
        for j in i + 1..d.parts.len() {
            let dq = wg.pair_density(d.reps[i], d.reps[j])?;
            let fill = if dq > upper {
                Some(true)
            } else if dq < quarter {
                Some(false)
            } else {
                None
            };
            if let Some(fill) = fill {
                for u in d.parts[i].iter() {
                    for v in d.parts[j].iter() {
                        out.set_edge(u, v, fill);
                    }
                }
            }
        }
    }
    let mut units = 0u128;
    for v in 0..g.n() {
        for u in 0..v {
            if g.has_edge(u, v) != out.has_edge(u, v) {
                if d.x.contains(u) || d.x.contains(v) {
                    return Err(Error::Contract(format!("cleanup changed pair {u} {v} meeting X")));
                }
                units += wg.pair_mass(u, v);
            }
        }
    }
    let change = wg.scaled(units);
    if d.eps <= quarter && d.all_items_pass() && change >= eps * int(3) / int(4) {
        return Err(Error::Contract(format!("cleanup changed weight {change}, not below 3eps/4")));
    }
    Ok(Cleanup {
        graph: out,
        change,
        cliques,
    })
}
