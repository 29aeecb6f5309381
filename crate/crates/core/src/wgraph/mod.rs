//! Graphs, rational vertex distributions and weighted pair densities.

mod dist;
mod graph;
mod set;

pub mod canon;
pub mod io;
pub mod iso;

use num_bigint::BigInt;
use num_traits::Zero;

pub use dist::VertexDistribution;
pub use graph::{Graph, MAX_VERTICES};
pub use iso::{induced_copies, induced_copy_exists, subgraph_copy_exists};
pub use set::VertexSet;

use crate::error::{Error, Result};

/// Exact rational number in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub(crate) fn ratio(p: u128, q: u128) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| Error::input(format!("bad rational '{s}'")))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::input(format!("bad rational '{s}'")))?;
            if q.is_zero() {
                return Err(Error::input(format!("zero denominator in '{s}'")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(
            s.parse().map_err(|_| Error::input(format!("bad rational '{s}'")))?,
        ),
    };
    Ok(r)
}

/// A graph together with a distribution on its vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedGraph {
    graph: Graph,
    dist: VertexDistribution,
}

impl WeightedGraph {
    pub fn new(graph: Graph, dist: VertexDistribution) -> Result<Self> {
        if graph.n() != dist.len() {
            return Err(Error::input(format!(
                "distribution has {} weights for {} vertices",
                dist.len(),
                graph.n()
            )));
        }
        Ok(WeightedGraph { graph, dist })
    }

    pub fn uniform(graph: Graph) -> Self {
        let dist = VertexDistribution::uniform(graph.n());
        WeightedGraph { graph, dist }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dist(&self) -> &VertexDistribution {
        &self.dist
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn into_parts(self) -> (Graph, VertexDistribution) {
        (self.graph, self.dist)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::input(format!("vertex {v} out of range")));
        }
        Ok(())
    }

    /// `D(x)·D(y)`, whether or not `{x, y}` is an edge.
    pub fn edge_weight(&self, x: usize, y: usize) -> Result<Rational> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::input("edge weight of a vertex with itself"));
        }
        Ok(self.dist.weight(x) * self.dist.weight(y))
    }

    pub fn set_weight(&self, set: VertexSet) -> Result<Rational> {
        self.dist.check_range(set)?;
        Ok(self.dist.set_weight(set))
    }

    /// `(G[X], D_X)`, relabeled in increasing vertex order.
    pub fn induced(&self, set: VertexSet) -> Result<WeightedGraph> {
        self.dist.check_range(set)?;
        let dist = self.dist.conditioned(set)?;
        Ok(WeightedGraph {
            graph: self.graph.induced(set),
            dist,
        })
    }

    /// `m(x)·m(y)` in units of `1/scale²`.
    pub fn pair_mass(&self, x: usize, y: usize) -> u128 {
        self.dist.mass(x) as u128 * self.dist.mass(y) as u128
    }

    /// Edge mass between disjoint `X` and `Y` in units of `1/scale²`.
    pub fn edge_mass(&self, x: VertexSet, y: VertexSet) -> u128 {
        let m = self.dist.masses();
        x.iter()
            .map(|u| {
                let s: u128 = (self.graph.neighbors(u) & y).iter().map(|v| m[v] as u128).sum();
                s * m[u] as u128
            })
            .sum()
    }

    /// Total weight of pairs inside `X`, in units of `1/scale²`.
    pub fn internal_mass(&self, x: VertexSet) -> u128 {
        let m = self.dist.masses();
        let total: u128 = x.iter().map(|v| m[v] as u128).sum();
        let sq: u128 = x.iter().map(|v| m[v] as u128 * m[v] as u128).sum();
        (total * total - sq) / 2
    }

    /// Total weight of edges inside `X`, in units of `1/scale²`.
    pub fn internal_edge_mass(&self, x: VertexSet) -> u128 {
        let m = self.dist.masses();
        x.iter()
            .map(|u| {
                let above = VertexSet(x.0 & !((2u128 << u) - 1));
                let s: u128 = (self.graph.neighbors(u) & above).iter().map(|v| m[v] as u128).sum();
                s * m[u] as u128
            })
            .sum()
    }

    /// The density `d(X, Y)`, defined as 0 when either side has zero mass.
    pub fn pair_density(&self, x: VertexSet, y: VertexSet) -> Result<Rational> {
        self.dist.check_range(x)?;
        self.dist.check_range(y)?;
        if !x.is_disjoint(y) {
            return Err(Error::input("pair density of overlapping sets"));
        }
        let (mx, my) = (self.dist.set_mass(x), self.dist.set_mass(y));
        if mx == 0 || my == 0 {
            return Ok(Rational::zero());
        }
        Ok(ratio(self.edge_mass(x, y), mx as u128 * my as u128))
    }

    /// Weight of a set of pairs given in units of `1/scale²`.
    pub fn scaled(&self, units: u128) -> Rational {
        let s = self.dist.scale() as u128;
        Rational::new(BigInt::from(units), BigInt::from(s) * BigInt::from(s))
    }
}
