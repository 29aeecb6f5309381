//! Weighted counting of role-wise induced copies across disjoint sets.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::certify::certify_pair;
use crate::error::{Error, Result};
use crate::wgraph::{Graph, Rational, VertexSet, WeightedGraph};

/// `δ(2, η) = η`, and for `h ≥ 3`
/// `δ(h, η) = min{1/(4(h−1)), η/2, ½(η/2)^{h−1}·δ(h−1, η/2)}`.
pub fn delta_counting(h: usize, eta: &Rational) -> Result<Rational> {
    if h < 2 {
        return Err(Error::input("h must be at least 2"));
    }
    if !eta.is_positive() || *eta >= Rational::one() {
        return Err(Error::input("eta must lie in (0, 1)"));
    }
    let two = Rational::from_integer(2.into());
    let mut eta_k = eta.clone();
    // unroll: η_k = η / 2^(h−2) at depth 2
    let mut etas = Vec::with_capacity(h - 1);
    for _ in 2..=h {
        etas.push(eta_k.clone());
        eta_k /= &two;
    }
    let mut delta = etas[h - 2].clone();
    for k in 3..=h {
        let e = &etas[h - k];
        let half = e / &two;
        let mut pow = Rational::one();
        for _ in 0..k - 1 {
            pow *= &half;
        }
        let a = Rational::new(BigInt::one(), BigInt::from(4 * (k - 1)));
        let c = pow * delta / &two;
        delta = a.min(half).min(c);
    }
    Ok(delta)
}

/// `Σ Π D(u_i)` over tuples `(u_1, …, u_h) ∈ U_1 × … × U_h` in which `u_i`
/// plays the role of vertex `i` of an induced copy of `H`.
pub fn weighted_copy_mass(wg: &WeightedGraph, h: &Graph, sets: &[VertexSet]) -> Result<Rational> {
    check_sets(wg, h, sets)?;
    let m = wg.dist().masses();
    let g = wg.graph();
    let k = h.n();
    let mut chosen = Vec::with_capacity(k);
    let mut total = BigInt::zero();
    fn go(
        i: usize,
        chosen: &mut Vec<usize>,
        prod: &BigInt,
        g: &Graph,
        h: &Graph,
        sets: &[VertexSet],
        m: &[u64],
        total: &mut BigInt,
    ) {
        if i == sets.len() {
            *total += prod;
            return;
        }
        for u in sets[i].iter() {
            if m[u] == 0 {
                continue;
            }
            if chosen.iter().enumerate().all(|(j, &w)| g.has_edge(u, w) == h.has_edge(i, j)) {
                chosen.push(u);
                go(i + 1, chosen, &(prod * m[u]), g, h, sets, m, total);
                chosen.pop();
            }
        }
    }
    go(0, &mut chosen, &BigInt::one(), g, h, sets, m, &mut total);
    let s = BigInt::from(wg.dist().scale());
    Ok(Rational::new(total, s.pow(k as u32)))
}

fn check_sets(wg: &WeightedGraph, h: &Graph, sets: &[VertexSet]) -> Result<()> {
    if sets.len() != h.n() {
        return Err(Error::input(format!("{} sets for a graph on {} vertices", sets.len(), h.n())));
    }
    let mut seen = VertexSet::EMPTY;
    for &s in sets {
        wg.dist().check_range(s)?;
        if !s.is_disjoint(seen) {
            return Err(Error::input("sets must be pairwise disjoint"));
        }
        seen = seen | s;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingCheck {
    pub delta: Rational,
    pub copy_mass: Rational,
    /// `δ · Π D(U_i)`
    pub bound: Rational,
    pub margin: Rational,
}

/// Verifies the density and `δ(h, η)`-regularity hypotheses on every pair of
/// sets, then checks that the weighted copy mass is at least `δ·Π D(U_i)`.
///
/// Unmet hypotheses are a precondition error; a violated bound is reported
/// as a counterexample.
pub fn counting_lemma_check(wg: &WeightedGraph, h: &Graph, sets: &[VertexSet], eta: &Rational) -> Result<CountingCheck> {
    check_sets(wg, h, sets)?;
    let delta = delta_counting(h.n(), eta)?;
    let mut prod = Rational::one();
    for &s in sets {
        prod *= wg.dist().set_weight(s);
    }
    if !prod.is_zero() {
        let hi = Rational::one() - eta;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let d = wg.pair_density(sets[i], sets[j])?;
                let ok = if h.has_edge(i, j) { d >= *eta } else { d <= hi };
                if !ok {
                    return Err(Error::Precondition(format!("density of sets {i}, {j} is {d}")));
                }
                if !certify_pair(wg, sets[i], sets[j], &delta)?.is_regular() {
                    return Err(Error::Precondition(format!("sets {i}, {j} are not delta-regular")));
                }
            }
        }
    }
    let copy_mass = weighted_copy_mass(wg, h, sets)?;
    let bound = &delta * prod;
    if copy_mass < bound {
        return Err(Error::Counterexample(format!("copy mass {copy_mass} below {bound}")));
    }
    Ok(CountingCheck {
        margin: &copy_mass - &bound,
        delta,
        copy_mass,
        bound,
    })
}
