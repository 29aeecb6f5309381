use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Rational, VertexSet};
use crate::error::{Error, Result};

/// A probability distribution on `0..n` with rational weights.
///
/// Besides the weights, the distribution keeps an integer representation
/// `D(v) = mass[v] / scale` with `scale` the least common denominator, so
/// that hot loops work on machine integers. `scale` must fit in `u64`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexDistribution {
    weights: Vec<Rational>,
    scale: u64,
    masses: Vec<u64>,
}

impl VertexDistribution {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        let mut sum = Rational::zero();
        let mut lcm = BigInt::one();
        for (v, w) in weights.iter().enumerate() {
            if w < &Rational::zero() {
                return Err(Error::input(format!("negative weight {w} at vertex {v}")));
            }
            sum += w;
            lcm = lcm.lcm(w.denom());
        }
        if sum != Rational::one() {
            return Err(Error::input(format!("weights sum to {sum}, not 1")));
        }
        let scale = lcm
            .to_u64()
            .ok_or_else(|| Error::resource("common weight denominator (u64)", usize::MAX))?;
        let masses = weights
            .iter()
            .map(|w| (w.numer() * (&lcm / w.denom())).to_u64().unwrap())
            .collect();
        Ok(VertexDistribution {
            weights,
            scale,
            masses,
        })
    }

    /// Distribution with `D(v) = masses[v] / Σ masses`.
    pub fn from_masses(masses: &[u64]) -> Result<Self> {
        let total: u128 = masses.iter().map(|&m| m as u128).sum();
        if total == 0 {
            return Err(Error::ZeroMass);
        }
        let total = BigInt::from(total);
        Self::new(
            masses
                .iter()
                .map(|&m| Rational::new(BigInt::from(m), total.clone()))
                .collect(),
        )
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution on zero vertices");
        Self::from_masses(&vec![1; n]).unwrap()
    }

    pub fn point_mass(n: usize, v: usize) -> Self {
        let mut m = vec![0; n];
        m[v] = 1;
        Self::from_masses(&m).unwrap()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Common denominator of all weights.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Integer masses: `D(v) = masses()[v] / scale()`.
    pub fn masses(&self) -> &[u64] {
        &self.masses
    }

    pub fn mass(&self, v: usize) -> u64 {
        self.masses[v]
    }

    pub fn set_mass(&self, set: VertexSet) -> u64 {
        set.iter().map(|v| self.masses[v]).sum()
    }

    pub fn set_weight(&self, set: VertexSet) -> Rational {
        Rational::new(BigInt::from(self.set_mass(set)), BigInt::from(self.scale))
    }

    pub fn support(&self) -> VertexSet {
        (0..self.len()).filter(|&v| self.masses[v] > 0).collect()
    }

    pub fn min_weight(&self) -> &Rational {
        self.weights.iter().min().expect("empty distribution")
    }

    pub fn max_weight(&self) -> &Rational {
        self.weights.iter().max().expect("empty distribution")
    }

    /// `D` conditioned on `w`, indexed by the elements of `w` in increasing order.
    pub fn conditioned(&self, w: VertexSet) -> Result<VertexDistribution> {
        if w.last().is_some_and(|m| m >= self.len()) {
            return Err(Error::input("conditioning set out of range"));
        }
        let masses: Vec<u64> = w.iter().map(|v| self.masses[v]).collect();
        Self::from_masses(&masses)
    }

    pub fn check_range(&self, set: VertexSet) -> Result<()> {
        match set.last() {
            Some(m) if m >= self.len() => Err(Error::input(format!("vertex {m} out of range"))),
            _ => Ok(()),
        }
    }
}
