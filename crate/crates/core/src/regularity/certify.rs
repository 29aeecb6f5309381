//! Exhaustive certification of ε-regular pairs.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use super::{big, Partition};
use crate::error::{Error, Result};
use crate::wgraph::{ratio, Rational, VertexSet, WeightedGraph};

/// Default largest side for subset enumeration.
pub const SUBSET_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairStatus {
    Regular,
    Irregular,
}

/// Subsets `X' ⊆ X`, `Y' ⊆ Y` of large enough mass whose density deviates by more than ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: VertexSet,
    pub y: VertexSet,
    pub density: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub x: VertexSet,
    pub y: VertexSet,
    pub density: Rational,
    pub status: PairStatus,
    /// The lexicographically least witness, by `(X' mask, Y' mask)`.
    pub witness: Option<Witness>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.status == PairStatus::Regular
    }
}

/// A certified pair of parts `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub report: RegularityReport,
}

trait Arith: Clone + PartialOrd + Signed + From<u64> {}
impl<T: Clone + PartialOrd + Signed + From<u64>> Arith for T {}

struct Sides<'a> {
    xs: Vec<usize>,
    ys: Vec<usize>,
    mx: Vec<u64>,
    my: Vec<u64>,
    /// neighbours of `ys[j]` in `X`, as a local mask over `xs`
    nbr: Vec<u64>,
    wg: &'a WeightedGraph,
}

fn subset_sums(ms: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; 1 << ms.len()];
    for mask in 1..out.len() {
        let low = mask.trailing_zeros() as usize;
        out[mask] = out[mask & (mask - 1)] + ms[low];
    }
    out
}

impl Sides<'_> {
    fn local_to_set(idx: &[usize], mask: u64) -> VertexSet {
        idx.iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }

    /// Lexicographically least witness, or `None` if the pair is regular.
    fn search<T: Arith>(&self, p: T, q: T) -> Option<(u64, u64)> {
        let sx = subset_sums(&self.mx);
        let sy = subset_sums(&self.my);
        let t = |x: u64| T::from(x);
        let mxt = t(*sx.last().unwrap());
        let myt = t(*sy.last().unwrap());
        let exy: T = (0..self.ys.len())
            .map(|j| t(sx[self.nbr[j] as usize]) * t(self.my[j]))
            .fold(T::zero(), |a, b| a + b);
        let mxmy = mxt.clone() * myt.clone();
        let mxmyq = mxmy.clone() * q.clone();
        let hi_c = exy.clone() * q.clone() + p.clone() * mxmy.clone();
        let lo_c = exy * q.clone() - p.clone() * mxmy;
        let need_x = p.clone() * mxt;
        let need_y = p.clone() * myt;
        let ky = self.ys.len();
        for xm in 1..sx.len() as u64 {
            let mxp = t(sx[xm as usize]);
            if mxp.clone() * q.clone() < need_x {
                continue;
            }
            let kh = hi_c.clone() * mxp.clone();
            let kl = lo_c.clone() * mxp.clone();
            let mut hi = Vec::with_capacity(ky);
            let mut lo = Vec::with_capacity(ky);
            for j in 0..ky {
                let e = t(sx[(xm & self.nbr[j]) as usize]) * t(self.my[j]);
                let scaled = e * mxmyq.clone();
                hi.push(scaled.clone() - kh.clone() * t(self.my[j]));
                lo.push(kl.clone() * t(self.my[j]) - scaled);
            }
            if exists(&hi, &self.my, &q, &need_y) || exists(&lo, &self.my, &q, &need_y) {
                let ym = first_y(&hi, &lo, &sy, &q, &need_y);
                return Some((xm, ym));
            }
        }
        None
    }
}

/// Whether some `Y'` with `m(Y')·q ≥ need` has positive value sum.
fn exists<T: Arith>(vals: &[T], ms: &[u64], q: &T, need: &T) -> bool {
    let pos: Vec<usize> = (0..vals.len()).filter(|&j| vals[j].is_positive()).collect();
    if pos.is_empty() {
        return false;
    }
    let pos_mass: u64 = pos.iter().map(|&j| ms[j]).sum();
    if T::from(pos_mass) * q.clone() >= *need {
        return true;
    }
    let gain: T = pos.iter().fold(T::zero(), |a, &j| a + vals[j].clone());
    let rest: Vec<usize> = (0..vals.len())
        .filter(|&j| !vals[j].is_positive() && ms[j] > 0)
        .collect();
    // cheapest completion of the mass requirement from non-positive entries
    let mut best: Option<T> = None;
    let mut sum_m = vec![0u64; 1 << rest.len()];
    let mut sum_v = vec![T::zero(); 1 << rest.len()];
    for mask in 1usize..1 << rest.len() {
        let low = mask.trailing_zeros() as usize;
        let prev = mask & (mask - 1);
        sum_m[mask] = sum_m[prev] + ms[rest[low]];
        sum_v[mask] = sum_v[prev].clone() + vals[rest[low]].clone();
        if T::from(pos_mass + sum_m[mask]) * q.clone() >= *need && best.as_ref().map_or(true, |b| sum_v[mask] > *b) {
            best = Some(sum_v[mask].clone());
        }
    }
    best.is_some_and(|b| (gain + b).is_positive())
}

fn first_y<T: Arith>(hi: &[T], lo: &[T], sy: &[u64], q: &T, need: &T) -> u64 {
    let n = sy.len();
    let mut sh = vec![T::zero(); n];
    let mut sl = vec![T::zero(); n];
    for mask in 1..n {
        let low = mask.trailing_zeros() as usize;
        let prev = mask & (mask - 1);
        sh[mask] = sh[prev].clone() + hi[low].clone();
        sl[mask] = sl[prev].clone() + lo[low].clone();
        if T::from(sy[mask]) * q.clone() >= *need && (sh[mask].is_positive() || sl[mask].is_positive()) {
            return mask as u64;
        }
    }
    unreachable!("a witness was shown to exist")
}

/// Decides whether `(X, Y)` is ε-regular by checking every pair of subsets
/// `X' ⊆ X`, `Y' ⊆ Y` with `D(X') ≥ εD(X)` and `D(Y') ≥ εD(Y)`.
///
/// All arithmetic is exact: integer cross-multiplication, in `i128` when the
/// magnitudes allow it and in big integers otherwise.
pub fn certify_pair(wg: &WeightedGraph, x: VertexSet, y: VertexSet, eps: &Rational) -> Result<RegularityReport> {
    certify_pair_capped(wg, x, y, eps, SUBSET_CAP)
}

pub fn certify_pair_capped(
    wg: &WeightedGraph,
    x: VertexSet,
    y: VertexSet,
    eps: &Rational,
    cap: usize,
) -> Result<RegularityReport> {
    let density = wg.pair_density(x, y)?;
    if !eps.is_positive() {
        return Err(Error::input("eps must be positive"));
    }
    if x.len() > cap || y.len() > cap {
        return Err(Error::resource("part size for exact regularity certification", cap));
    }
    let dist = wg.dist();
    let xs = x.to_vec();
    let ys = y.to_vec();
    let sides = Sides {
        mx: xs.iter().map(|&v| dist.mass(v)).collect(),
        my: ys.iter().map(|&v| dist.mass(v)).collect(),
        nbr: ys
            .iter()
            .map(|&w| {
                xs.iter()
                    .enumerate()
                    .filter(|&(_, &u)| wg.graph().has_edge(u, w))
                    .fold(0u64, |a, (i, _)| a | 1 << i)
            })
            .collect(),
        xs,
        ys,
        wg,
    };
    let regular = RegularityReport {
        x,
        y,
        density: density.clone(),
        status: PairStatus::Regular,
        witness: None,
    };
    let (mx, my) = (dist.set_mass(x), dist.set_mass(y));
    if mx == 0 || my == 0 {
        return Ok(regular);
    }
    let (p, q) = (eps.numer().clone(), eps.denom().clone());
    // every term is at most 2^7 · B^4 · (p + q) in magnitude, B = max side mass
    let b = BigInt::from(mx.max(my));
    let bound = BigInt::from(128u32) * &b * &b * &b * &b * (&p + &q);
    let found = match (bound < BigInt::one() << 126u32, p.to_i128(), q.to_i128()) {
        (true, Some(pi), Some(qi)) => sides.search::<i128>(pi, qi),
        _ => sides.search::<BigInt>(p, q),
    };
    let Some((xm, ym)) = found else {
        return Ok(regular);
    };
    let wx = Sides::local_to_set(&sides.xs, xm);
    let wy = Sides::local_to_set(&sides.ys, ym);
    let wd = sides.wg.pair_density(wx, wy)?;
    Ok(RegularityReport {
        status: PairStatus::Irregular,
        witness: Some(Witness { x: wx, y: wy, density: wd }),
        ..regular
    })
}

/// Certifies every pair of parts, in order `(0,1), (0,2), …`.
pub fn irregular_pairs(wg: &WeightedGraph, partition: &Partition, eps: &Rational) -> Result<Vec<PairReport>> {
    let parts = partition.parts();
    let pairs: Vec<(usize, usize)> = (0..parts.len())
        .flat_map(|i| (i + 1..parts.len()).map(move |j| (i, j)))
        .collect();
    let reports = pairs
        .par_iter()
        .map(|&(i, j)| {
            certify_pair(wg, parts[i], parts[j], eps).map(|report| PairReport { i, j, report })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(reports.into_iter().filter(|r| !r.report.is_regular()).collect())
}

/// `Σ D(P_i)D(P_j)` over the given pairs.
pub fn irregular_mass(wg: &WeightedGraph, partition: &Partition, pairs: &[PairReport]) -> Rational {
    let d = wg.dist();
    let parts = partition.parts();
    let units: u128 = pairs
        .iter()
        .map(|r| d.set_mass(parts[r.i]) as u128 * d.set_mass(parts[r.j]) as u128)
        .sum();
    wg.scaled(units)
}

/// Density bounds and regularity of a large sub-pair of a regular pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubpairReport {
    pub density: Rational,
    pub sub_density: Rational,
    /// `max{ε/α, 2ε}`
    pub eps_prime: Rational,
    pub within_bounds: bool,
    pub sub_regular: bool,
}

/// For an ε-regular `(X, Y)` and `X' ⊆ X`, `Y' ⊆ Y` of relative mass at least
/// `α ≥ ε`, checks `|d(X',Y') − d(X,Y)| ≤ ε` and certifies `(X', Y')` at
/// `max{ε/α, 2ε}`.
pub fn subpair_bounds_check(
    wg: &WeightedGraph,
    (x, y): (VertexSet, VertexSet),
    (xp, yp): (VertexSet, VertexSet),
    eps: &Rational,
    alpha: &Rational,
) -> Result<SubpairReport> {
    if !xp.is_subset(x) || !yp.is_subset(y) {
        return Err(Error::input("sub-pair not contained in the pair"));
    }
    if alpha < eps {
        return Err(Error::Precondition("alpha must be at least eps".into()));
    }
    let d = wg.dist();
    if d.set_weight(xp) < alpha * d.set_weight(x) || d.set_weight(yp) < alpha * d.set_weight(y) {
        return Err(Error::Precondition("sub-pair lighter than alpha times the pair".into()));
    }
    let outer = certify_pair(wg, x, y, eps)?;
    if !outer.is_regular() {
        return Err(Error::Precondition("pair is not eps-regular".into()));
    }
    let two = Rational::from_integer(2.into());
    let eps_prime = (eps / alpha).max(&two * eps);
    let sub_density = wg.pair_density(xp, yp)?;
    let within_bounds = (&sub_density - &outer.density).abs() <= *eps;
    let sub_regular = certify_pair(wg, xp, yp, &eps_prime)?.is_regular();
    if !within_bounds || !sub_regular {
        return Err(Error::Contract("sub-pair of a regular pair violates the slicing bounds".into()));
    }
    Ok(SubpairReport {
        density: outer.density,
        sub_density,
        eps_prime,
        within_bounds,
        sub_regular,
    })
}

/// `{x ∈ X : |d({x}, Y) − d(X, Y)| > ε}`.
///
/// When `(X, Y)` is certified ε-regular (sizes within the cap), the result is
/// checked to weigh less than `2ε·D(X)`.
pub fn atypical_vertices(wg: &WeightedGraph, x: VertexSet, y: VertexSet, eps: &Rational) -> Result<VertexSet> {
    let d = wg.pair_density(x, y)?;
    let mut out = VertexSet::EMPTY;
    for v in x.iter() {
        if (wg.pair_density(VertexSet::singleton(v), y)? - &d).abs() > *eps {
            out.insert(v);
        }
    }
    if x.len() <= SUBSET_CAP && y.len() <= SUBSET_CAP && certify_pair(wg, x, y, eps)?.is_regular() {
        let dist = wg.dist();
        let lhs = ratio(dist.set_mass(out) as u128, 1);
        let rhs = Rational::from_integer(big(2 * dist.set_mass(x) as u128)) * eps;
        if dist.set_mass(x) > 0 && lhs >= rhs {
            return Err(Error::Contract("atypical vertices of a regular pair are too heavy".into()));
        }
    }
    Ok(out)
}
