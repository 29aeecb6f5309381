//! Randomized corollaries of the regularity lemmas: homogeneous regular
//! sets, and heavy regular representatives of a strongly regular partition.

use num_traits::{One, Signed, Zero};

use super::certify::certify_pair;
use super::refine::{monotone, strong_partition, szemeredi_partition};
use super::{balanced_partition, Partition};
use crate::error::{Error, Result};
use crate::sampling::{rng, stream_id, WeightedIndex};
use crate::wgraph::{Graph, Rational, VertexSet, WeightedGraph};

/// Attempts allowed for each randomized selection.
pub const REPRESENTATIVE_RETRIES: usize = 64;

/// The lexicographically first `t`-set that is a clique or an independent
/// set of `g`; the flag is true for a clique.
pub fn ramsey_set(g: &Graph, t: usize) -> Option<(Vec<usize>, bool)> {
    fn go(g: &Graph, t: usize, start: usize, cur: &mut Vec<usize>, clique: bool) -> bool {
        if cur.len() == t {
            return true;
        }
        for v in start..g.n() {
            if cur.iter().all(|&u| g.has_edge(u, v) == clique) {
                cur.push(v);
                if go(g, t, v + 1, cur, clique) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut best: Option<(Vec<usize>, bool)> = None;
    for clique in [true, false] {
        let mut cur = Vec::new();
        if go(g, t, 0, &mut cur, clique) && best.as_ref().map_or(true, |(b, _)| cur < *b) {
            best = Some((cur, clique));
        }
    }
    best
}

#[derive(Clone, Debug)]
pub struct TuranRamseySets {
    pub sets: Vec<VertexSet>,
    /// All pairs have density at least 1/2 (otherwise all below 1/2).
    pub dense: bool,
    pub partition: Partition,
    pub attempts: usize,
}

/// `t` disjoint sets of mass at least ζ, pairwise δ-regular, with all pair
/// densities on the same side of 1/2. Every vertex must weigh less than ζ.
///
/// Takes `a = 4^t` balanced parts, refines them to a `δ/(4a⁴)`-regular
/// partition, samples one part inside each balanced part proportionally to
/// mass until the mass and regularity conditions hold, and finally picks a
/// homogeneous `t`-set in the auxiliary density graph. ζ is an input; the
/// outputs are certified instead.
pub fn turan_ramsey_sets(
    wg: &WeightedGraph,
    t: usize,
    delta: &Rational,
    zeta: &Rational,
    seed: u64,
) -> Result<TuranRamseySets> {
    if t == 0 {
        return Err(Error::input("t must be positive"));
    }
    if !delta.is_positive() || !zeta.is_positive() || *zeta > Rational::one() {
        return Err(Error::input("delta must be positive and zeta in (0, 1]"));
    }
    let dist = wg.dist();
    if let Some(v) = (0..wg.n()).find(|&v| dist.weight(v) >= zeta) {
        return Err(Error::Precondition(format!("vertex {v} weighs at least zeta")));
    }
    let all = VertexSet::full(wg.n());
    if t == 1 {
        return Ok(TuranRamseySets {
            sets: vec![all],
            dense: true,
            partition: Partition::trivial(all),
            attempts: 0,
        });
    }
    if t > 3 {
        return Err(Error::resource("t (4^t balanced parts must fit the vertex cap)", 3));
    }
    let a = 1usize << (2 * t);
    let p0 = balanced_partition(all, dist, a).map_err(|e| e.at_stage("balanced partition"))?;
    let a4 = Rational::from_integer((a.pow(4) * 4).into());
    let eps = delta / a4;
    let part = szemeredi_partition(wg, &eps, &p0).map_err(|e| e.at_stage("regular partition"))?;
    let inside: Vec<Vec<VertexSet>> = p0
        .parts()
        .iter()
        .map(|&u| part.parts().iter().copied().filter(|p| p.is_subset(u)).collect())
        .collect();
    let pickers: Vec<WeightedIndex> = inside
        .iter()
        .map(|ps| {
            let masses: Vec<u64> = ps.iter().map(|&p| dist.set_mass(p)).collect();
            WeightedIndex::new(&masses).ok_or(Error::ZeroMass)
        })
        .collect::<Result<_>>()?;
    let half = Rational::new(1.into(), 2.into());
    let mut last = String::new();
    for attempt in 0..REPRESENTATIVE_RETRIES {
        let mut r = rng(seed, stream_id("turan_ramsey", attempt as u64));
        let chosen: Vec<VertexSet> = pickers.iter().zip(&inside).map(|(w, ps)| ps[w.sample(&mut r)]).collect();
        if let Some(i) = chosen.iter().position(|&c| dist.set_weight(c) < *zeta) {
            last = format!("attempt {attempt}: part {i} lighter than zeta");
            continue;
        }
        let mut aux = Graph::empty(a);
        let mut bad = None;
        'pairs: for i in 0..a {
            for j in i + 1..a {
                let rep = certify_pair(wg, chosen[i], chosen[j], delta)?;
                if !rep.is_regular() {
                    bad = Some((i, j));
                    break 'pairs;
                }
                if rep.density >= half {
                    aux.add_edge(i, j);
                }
            }
        }
        if let Some((i, j)) = bad {
            last = format!("attempt {attempt}: parts {i}, {j} not delta-regular");
            continue;
        }
        let (idx, dense) = ramsey_set(&aux, t).ok_or_else(|| Error::Contract("no homogeneous t-set among 4^t parts".into()))?;
        return Ok(TuranRamseySets {
            sets: idx.iter().map(|&i| chosen[i]).collect(),
            dense,
            partition: part,
            attempts: attempt + 1,
        });
    }
    Err(Error::RetriesExhausted {
        attempts: REPRESENTATIVE_RETRIES,
        diagnostics: last,
    })
}

#[derive(Clone, Debug)]
pub struct Representatives {
    /// `P_0`, the union of the light parts.
    pub exceptional: VertexSet,
    /// `P_1, …, P_r`.
    pub parts: Vec<VertexSet>,
    /// `Q_i ⊆ P_i`.
    pub reps: Vec<VertexSet>,
    /// The strongly regular refinement the representatives were drawn from.
    pub refinement: Partition,
    /// Certified lower bound `D(Q_i) ≥ ε/(3|Q|²)` in place of the a-priori `1/S`.
    pub mass_floor: Rational,
    pub seed: u64,
    pub attempts: usize,
}

/// A partition `{P_0, P_1, …, P_r}` with `D(P_0) < E(0)`, each `P_i`
/// (i ≥ 1) inside a part of `P0`, and representatives `Q_i ⊆ P_i` that are
/// pairwise `E(r)`-regular and whose densities deviate from those of the
/// `P_i` by at most `E(0)` in weighted sum.
///
/// The representatives are drawn from a strongly regular refinement with
/// probability proportional to mass and redrawn until every item holds.
pub fn representatives(
    wg: &WeightedGraph,
    e_fn: &dyn Fn(usize) -> Rational,
    m: usize,
    p0: &Partition,
    seed: u64,
) -> Result<Representatives> {
    let eps = e_fn(0);
    if !eps.is_positive() {
        return Err(Error::input("E(0) must be positive"));
    }
    let third = &eps / Rational::from_integer(3.into());
    let e_prime = |r: usize| -> Rational {
        let mut v = monotone(e_fn, r).min(third.clone());
        if r > 0 {
            let r4 = Rational::from_integer((2 * (r as u64).pow(4)).into());
            v = v.min(&eps * &eps / r4);
        }
        v
    };
    let strong = strong_partition(wg, &e_prime, m, p0).map_err(|e| e.at_stage("strong partition"))?;
    let dist = wg.dist();
    let np = Rational::from_integer(strong.p.len().into());
    let floor_p = &eps / &np;
    let mut exceptional = VertexSet::EMPTY;
    let mut parts = Vec::new();
    for &p in strong.p.parts() {
        if dist.set_weight(p) < floor_p {
            exceptional = exceptional | p;
        } else {
            parts.push(p);
        }
    }
    if dist.set_weight(exceptional) >= eps {
        return Err(Error::Contract("exceptional part reaches E(0)".into()));
    }
    if !parts.iter().all(|&p| p0.parts().iter().any(|&c| p.is_subset(c))) {
        return Err(Error::Contract("part outside the initial partition".into()));
    }
    let r = parts.len();
    let nq = strong.q.len();
    let inside: Vec<Vec<VertexSet>> = parts
        .iter()
        .map(|&p| strong.q.parts().iter().copied().filter(|b| b.is_subset(p)).collect())
        .collect();
    let pickers: Vec<WeightedIndex> = inside
        .iter()
        .map(|qs| {
            let masses: Vec<u64> = qs.iter().map(|&q| dist.set_mass(q)).collect();
            WeightedIndex::new(&masses).ok_or(Error::ZeroMass)
        })
        .collect::<Result<_>>()?;
    let er = e_fn(r);
    let three_q = Rational::from_integer((3 * nq).into());
    let mass_floor = &eps / (&three_q * Rational::from_integer(nq.into()));
    let mut last = String::new();
    for attempt in 0..REPRESENTATIVE_RETRIES {
        let mut g = rng(seed, stream_id("representatives", attempt as u64));
        let reps: Vec<VertexSet> = pickers.iter().zip(&inside).map(|(w, qs)| qs[w.sample(&mut g)]).collect();
        if let Some(i) = (0..r).find(|&i| dist.set_weight(reps[i]) < dist.set_weight(parts[i]) / &three_q) {
            last = format!("attempt {attempt}: representative {i} too light");
            continue;
        }
        let mut irregular = None;
        'pairs: for i in 0..r {
            for j in i + 1..r {
                if !certify_pair(wg, reps[i], reps[j], &er)?.is_regular() {
                    irregular = Some((i, j));
                    break 'pairs;
                }
            }
        }
        if let Some((i, j)) = irregular {
            last = format!("attempt {attempt}: representatives {i}, {j} not E(r)-regular");
            continue;
        }
        let mut dev = Rational::zero();
        for i in 0..r {
            for j in i + 1..r {
                let w = dist.set_weight(parts[i]) * dist.set_weight(parts[j]);
                let diff = wg.pair_density(reps[i], reps[j])? - wg.pair_density(parts[i], parts[j])?;
                dev += w * diff.abs();
            }
        }
        if dev > eps {
            last = format!("attempt {attempt}: deviation {dev} above E(0)");
            continue;
        }
        if reps.iter().any(|&q| dist.set_weight(q) < mass_floor) {
            return Err(Error::Contract("representative below eps/(3|Q|^2)".into()));
        }
        return Ok(Representatives {
            exceptional,
            parts,
            reps,
            refinement: strong.q,
            mass_floor,
            seed,
            attempts: attempt + 1,
        });
    }
    Err(Error::RetriesExhausted {
        attempts: REPRESENTATIVE_RETRIES,
        diagnostics: last,
    })
}
