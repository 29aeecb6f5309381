//! Regularity method for vertex-weighted graphs: partitions, the index,
//! exact regular-pair certification, and regular partitions.

mod certify;
mod corollaries;
mod counting;
mod refine;

pub use certify::{
    atypical_vertices, certify_pair, certify_pair_capped, irregular_mass, irregular_pairs, subpair_bounds_check,
    PairReport, PairStatus, RegularityReport, SubpairReport, Witness, SUBSET_CAP,
};
pub use corollaries::{
    representatives, ramsey_set, turan_ramsey_sets, Representatives, TuranRamseySets, REPRESENTATIVE_RETRIES,
};
pub use counting::{counting_lemma_check, delta_counting, weighted_copy_mass, CountingCheck};
pub use refine::{
    boost_refinement, deviation_sums, partition_index, szemeredi_partition, strong_partition, Boost, DeviationSums,
    StrongPartition,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::wgraph::{ratio, Rational, VertexDistribution, VertexSet};

/// Disjoint nonempty vertex sets, ordered by least element.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(mut parts: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for p in &parts {
            if p.is_empty() {
                return Err(Error::input("empty part"));
            }
            if !p.is_disjoint(seen) {
                return Err(Error::input(format!("parts overlap on {}", *p & seen)));
            }
            seen = seen | *p;
        }
        parts.sort_by_key(|p| p.first());
        Ok(Partition { parts })
    }

    /// Drops empty sets before building the partition.
    pub fn from_nonempty(parts: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        Self::new(parts.into_iter().filter(|p| !p.is_empty()).collect())
    }

    pub fn trivial(ground: VertexSet) -> Self {
        Partition {
            parts: if ground.is_empty() { vec![] } else { vec![ground] },
        }
    }

    pub fn singletons(ground: VertexSet) -> Self {
        Partition {
            parts: ground.iter().map(VertexSet::singleton).collect(),
        }
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn ground(&self) -> VertexSet {
        self.parts.iter().fold(VertexSet::EMPTY, |a, &b| a | b)
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    /// Every part of `self` lies inside a part of `coarser`, on the same ground set.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.ground() == coarser.ground()
            && self
                .parts
                .iter()
                .all(|p| coarser.parts.iter().any(|c| p.is_subset(*c)))
    }

    pub fn common_refinement(&self, other: &Partition) -> Result<Partition> {
        if self.ground() != other.ground() {
            return Err(Error::input("partitions of different ground sets"));
        }
        Partition::from_nonempty(
            self.parts
                .iter()
                .flat_map(|&a| other.parts.iter().map(move |&b| a & b)),
        )
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|p| p.to_vec()).collect()
    }

    /// One line per part, space-separated vertex ids.
    pub fn to_text(&self) -> String {
        self.parts.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Partition> {
        let mut parts = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut p = VertexSet::EMPTY;
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("bad vertex '{tok}'"),
                })?;
                if v >= crate::wgraph::MAX_VERTICES || p.contains(v) {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("vertex {v} out of range or repeated"),
                    });
                }
                p.insert(v);
            }
            parts.push(p);
        }
        Partition::new(parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.parts.iter()).finish()
    }
}

/// Total weight of pairs lying inside a part: `Σ_W Σ_{{x,y} ⊆ W} D(x)D(y)`.
pub fn internal_pair_weight(partition: &Partition, dist: &VertexDistribution) -> Result<Rational> {
    dist.check_range(partition.ground())?;
    let s = dist.scale() as u128;
    Ok(ratio(internal_units(partition, dist.masses()), s * s))
}

fn internal_units(partition: &Partition, m: &[u64]) -> u128 {
    partition
        .parts()
        .iter()
        .map(|p| {
            let t: u128 = p.iter().map(|v| m[v] as u128).sum();
            let sq: u128 = p.iter().map(|v| m[v] as u128 * m[v] as u128).sum();
            (t * t - sq) / 2
        })
        .sum()
}

/// Partition of `U` into at most `⌈1/η⌉` parts whose internal pair weight,
/// under `D` conditioned on `U`, is at most `η`.
///
/// Vertices are placed heaviest first, each into the currently lightest
/// part; this is the conditional-expectation derandomization of a uniformly
/// random assignment, so the bound holds by construction. Empty parts are dropped.
pub fn low_internal_partition(u: VertexSet, dist: &VertexDistribution, eta: &Rational) -> Result<Partition> {
    dist.check_range(u)?;
    if *eta <= Rational::zero() {
        return Err(Error::input("eta must be positive"));
    }
    let k = (Rational::one() / eta).ceil().to_integer();
    let k: usize = usize::try_from(k).unwrap_or(usize::MAX).clamp(1, u.len().max(1));
    let m = dist.masses();
    let mut order = u.to_vec();
    order.sort_by_key(|&v| std::cmp::Reverse(m[v]));
    let mut parts = vec![VertexSet::EMPTY; k];
    let mut load = vec![0u128; k];
    for v in order {
        let j = (0..k).min_by_key(|&j| (load[j], j)).unwrap();
        parts[j].insert(v);
        load[j] += m[v] as u128;
    }
    let p = Partition::from_nonempty(parts)?;
    let total: u128 = u.iter().map(|v| m[v] as u128).sum();
    if total > 0 {
        let bound = eta * ratio(total * total, 1);
        if ratio(internal_units(&p, m), 1) > bound {
            return Err(Error::Contract("internal pair weight above eta".into()));
        }
    }
    Ok(p)
}

/// Partition of `U` into `a` parts each of mass at least `1/(2a)` under `D`
/// conditioned on `U`, which requires every conditioned weight `≤ 1/(2a)`.
///
/// Peels a smallest set of heaviest vertices reaching `1/(2a)`, then recurses
/// on the rest, conditioned, with `a − 1`.
pub fn balanced_partition(u: VertexSet, dist: &VertexDistribution, a: usize) -> Result<Partition> {
    dist.check_range(u)?;
    if a == 0 {
        return Err(Error::input("a must be positive"));
    }
    let m = dist.masses();
    let total: u128 = u.iter().map(|v| m[v] as u128).sum();
    if total == 0 {
        return Err(Error::ZeroMass);
    }
    // D_U(v) ≤ 1/(2a)  ⇔  2a·m(v) ≤ M(U)
    if let Some(v) = u.iter().find(|&v| 2 * a as u128 * m[v] as u128 > total) {
        return Err(Error::input(format!(
            "vertex {v} has conditioned weight above 1/(2a) = 1/{}",
            2 * a
        )));
    }
    let mut order = u.to_vec();
    order.sort_by_key(|&v| std::cmp::Reverse(m[v]));
    let mut parts = Vec::with_capacity(a);
    let mut rest = order.as_slice();
    let mut rest_mass = total;
    for b in (2..=a).rev() {
        // smallest set of heaviest vertices with D_rest(part) ≥ 1/(2b)
        let mut part = VertexSet::EMPTY;
        let mut mass = 0u128;
        let mut taken = 0;
        while 2 * b as u128 * mass < rest_mass {
            part.insert(rest[taken]);
            mass += m[rest[taken]] as u128;
            taken += 1;
        }
        parts.push(part);
        rest = &rest[taken..];
        rest_mass -= mass;
    }
    parts.push(rest.iter().collect());
    let p = Partition::new(parts)?;
    for part in p.parts() {
        let pm: u128 = part.iter().map(|v| m[v] as u128).sum();
        if 2 * a as u128 * pm < total {
            return Err(Error::Contract(format!("part {part} below 1/(2a)")));
        }
    }
    Ok(p)
}

pub(crate) fn big(x: u128) -> BigInt {
    BigInt::from(x)
}

#[cfg(test)]
mod tests;
