//! The index, index-boosting refinements, and regular partitions.

use num_traits::{One, Signed, Zero};

use super::certify::{irregular_mass, irregular_pairs, PairReport};
use super::{big, Partition};
use crate::error::{Error, Result};
use crate::wgraph::{Rational, VertexSet, WeightedGraph};

fn pair_term(wg: &WeightedGraph, a: VertexSet, b: VertexSet) -> Rational {
    // D(A)D(B) d²(A,B) = e² / (m_A m_B s²), all in integer units
    let d = wg.dist();
    let (ma, mb) = (d.set_mass(a) as u128, d.set_mass(b) as u128);
    if ma == 0 || mb == 0 {
        return Rational::zero();
    }
    let e = big(wg.edge_mass(a, b));
    let s = big(d.scale() as u128);
    Rational::new(&e * &e, big(ma) * big(mb) * &s * &s)
}

/// `q(P) = Σ_{i<j} D(P_i)D(P_j) d²(P_i, P_j)`.
pub fn partition_index(wg: &WeightedGraph, partition: &Partition) -> Result<Rational> {
    wg.dist().check_range(partition.ground())?;
    let parts = partition.parts();
    let mut q = Rational::zero();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            q += pair_term(wg, parts[i], parts[j]);
        }
    }
    Ok(q)
}

#[derive(Clone, Debug)]
pub struct Boost {
    pub partition: Partition,
    pub index_before: Rational,
    pub index_after: Rational,
}

/// Splits every part along the witnesses of its irregular pairs.
///
/// Requires the irregular pairs to weigh more than ε in total; the refined
/// partition has at most `|P|·2^|P|` parts and index larger by at least ε⁵,
/// both checked exactly.
pub fn boost_refinement(
    wg: &WeightedGraph,
    partition: &Partition,
    eps: &Rational,
    irregular: &[PairReport],
) -> Result<Boost> {
    if irregular_mass(wg, partition, irregular) <= *eps {
        return Err(Error::Contract("boost requires a partition that is not eps-regular".into()));
    }
    let parts = partition.parts();
    let mut cuts: Vec<Vec<VertexSet>> = vec![Vec::new(); parts.len()];
    for r in irregular {
        let w = r
            .report
            .witness
            .as_ref()
            .ok_or_else(|| Error::Contract(format!("pair ({}, {}) has no witness", r.i, r.j)))?;
        if !w.x.is_subset(parts[r.i]) || !w.y.is_subset(parts[r.j]) {
            return Err(Error::Contract(format!("witness of pair ({}, {}) leaves its parts", r.i, r.j)));
        }
        cuts[r.i].push(w.x);
        cuts[r.j].push(w.y);
    }
    let mut refined = Vec::new();
    for (p, cs) in parts.iter().zip(&cuts) {
        let mut atoms = vec![*p];
        for &c in cs {
            atoms = atoms.into_iter().flat_map(|a| [a & c, a - c]).filter(|a| !a.is_empty()).collect();
        }
        refined.extend(atoms);
    }
    let next = Partition::new(refined)?;
    let k = parts.len();
    if k < 58 && next.len() > k << k {
        return Err(Error::Contract("refinement exceeds |P|·2^|P| parts".into()));
    }
    let before = partition_index(wg, partition)?;
    let after = partition_index(wg, &next)?;
    let e2 = eps * eps;
    if after < &before + &e2 * &e2 * eps {
        return Err(Error::Contract("index gain below eps^5".into()));
    }
    Ok(Boost {
        partition: next,
        index_before: before,
        index_after: after,
    })
}

fn incomplete(stage: &str, partial: &Partition, e: Error) -> Error {
    Error::Incomplete {
        stage: stage.into(),
        reason: e.to_string(),
        partial: partial.to_vecs(),
    }
}

/// An ε-regular partition refining `P0`, by repeated index boosts; every
/// pair is certified exactly. At most `ε⁻⁵` rounds can occur since the
/// index never exceeds 1.
pub fn szemeredi_partition(wg: &WeightedGraph, eps: &Rational, p0: &Partition) -> Result<Partition> {
    if p0.ground() != VertexSet::full(wg.n()) {
        return Err(Error::input("initial partition must cover V(G)"));
    }
    if !eps.is_positive() {
        return Err(Error::input("eps must be positive"));
    }
    let e5 = eps * eps * eps * eps * eps;
    let mut cur = p0.clone();
    let mut rounds = 0usize;
    loop {
        let irr = irregular_pairs(wg, &cur, eps).map_err(|e| incomplete("szemeredi", &cur, e))?;
        if irregular_mass(wg, &cur, &irr) <= *eps {
            return Ok(cur);
        }
        rounds += 1;
        if Rational::from_integer(rounds.into()) * &e5 > Rational::one() {
            return Err(Error::Contract("more than eps^-5 boosting rounds".into()));
        }
        cur = boost_refinement(wg, &cur, eps, &irr)?.partition;
    }
}

/// Weighted density deviations of a refinement `Q` of `P`, over unordered
/// pairs of distinct parts of `P` and the parts of `Q` inside them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviationSums {
    /// `Σ D(Q1)D(Q2)·|d(Q1,Q2) − d(P1,P2)|`
    pub abs: Rational,
    /// `Σ D(Q1)D(Q2)·(d(Q1,Q2) − d(P1,P2))²`
    pub sq: Rational,
}

pub fn deviation_sums(wg: &WeightedGraph, p: &Partition, q: &Partition) -> Result<DeviationSums> {
    if !q.refines(p) {
        return Err(Error::input("second partition must refine the first"));
    }
    let ps = p.parts();
    let inside: Vec<Vec<VertexSet>> = ps
        .iter()
        .map(|&a| q.parts().iter().copied().filter(|b| b.is_subset(a)).collect())
        .collect();
    let mut abs = Rational::zero();
    let mut sq = Rational::zero();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let dp = wg.pair_density(ps[i], ps[j])?;
            for &a in &inside[i] {
                for &b in &inside[j] {
                    let w = wg.dist().set_weight(a) * wg.dist().set_weight(b);
                    let dev = wg.pair_density(a, b)? - &dp;
                    sq += &w * &dev * &dev;
                    abs += w * dev.abs();
                }
            }
        }
    }
    Ok(DeviationSums { abs, sq })
}

#[derive(Clone, Debug)]
pub struct StrongPartition {
    pub p: Partition,
    pub q: Partition,
    pub rounds: usize,
    pub deviation: DeviationSums,
}

/// `E'(r) = min_{s ≤ r} E(s)`.
pub(crate) fn monotone(e_fn: &dyn Fn(usize) -> Rational, r: usize) -> Rational {
    (0..=r).map(e_fn).min().unwrap()
}

/// Partitions `P` refining `P0` and `Q` refining `P`, with `Q`
/// `E(|P|)`-regular and the weighted density deviation of `Q` from `P` at
/// most `E(0)`.
///
/// Iterates regular partitions with parameter `E(|P_i|)` until the index
/// grows by at most `E(0)²`; `E` is replaced by its running minimum.
pub fn strong_partition(
    wg: &WeightedGraph,
    e_fn: &dyn Fn(usize) -> Rational,
    m: usize,
    p0: &Partition,
) -> Result<StrongPartition> {
    if p0.len() > m {
        return Err(Error::input(format!("initial partition has {} > m = {m} parts", p0.len())));
    }
    let e0 = e_fn(0);
    if !e0.is_positive() {
        return Err(Error::input("E(0) must be positive"));
    }
    let e0sq = &e0 * &e0;
    let mut p = szemeredi_partition(wg, &e0, p0)?;
    let mut qp = partition_index(wg, &p)?;
    let mut rounds = 1usize;
    loop {
        let eps = monotone(e_fn, p.len());
        if !eps.is_positive() {
            return Err(Error::input(format!("E({}) must be positive", p.len())));
        }
        let q = szemeredi_partition(wg, &eps, &p)?;
        let qq = partition_index(wg, &q)?;
        rounds += 1;
        if qq <= &qp + &e0sq {
            let deviation = deviation_sums(wg, &p, &q)?;
            if deviation.sq > e0sq || deviation.abs > e0 {
                return Err(Error::Contract("density deviation above E(0)".into()));
            }
            return Ok(StrongPartition { p, q, rounds, deviation });
        }
        if Rational::from_integer((rounds - 1).into()) * &e0sq > Rational::one() {
            return Err(Error::Contract("more than E(0)^-2 strong-regularity rounds".into()));
        }
        p = q;
        qp = qq;
    }
}
