use std::fmt;

use super::VertexSet;
use crate::error::{Error, Result};

/// Largest supported vertex count; vertex sets are single `u128` masks.
pub const MAX_VERTICES: usize = 128;

/// Simple undirected labeled graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<u128>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::resource("graph vertex count", MAX_VERTICES));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Panics past the vertex cap; for internal construction of small graphs.
    pub fn empty(n: usize) -> Self {
        Graph::new(n).expect("vertex count above cap")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = VertexSet::full(n).without(v).0;
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n);
            }
        }
        g
    }

    /// Path with `k` edges (so `k + 1` vertices).
    pub fn path(k: usize) -> Self {
        let mut g = Graph::empty(k + 1);
        for v in 0..k {
            g.add_edge(v, v + 1);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Parses names like `K3`, `C5`, `P2` (path with 2 edges), `E4` (edgeless).
    pub fn from_name(name: &str) -> Option<Self> {
        let (kind, rest) = name.split_at(name.char_indices().nth(1)?.0);
        let k: usize = rest.parse().ok()?;
        if k > MAX_VERTICES {
            return None;
        }
        match kind {
            "K" => Some(Graph::complete(k)),
            "C" if k >= 3 => Some(Graph::cycle(k)),
            "P" if k < MAX_VERTICES => Some(Graph::path(k)),
            "E" => Some(Graph::empty(k)),
            _ => None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u128 << u) - 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// Adds a vertex adjacent to `nbrs`; returns its index.
    pub fn add_vertex(&mut self, nbrs: VertexSet) -> Result<usize> {
        if self.n >= MAX_VERTICES {
            return Err(Error::resource("graph vertex count", MAX_VERTICES));
        }
        let v = self.n;
        self.n += 1;
        self.adj.push(0);
        for u in nbrs.iter().filter(|&u| u < v) {
            self.add_edge(u, v);
        }
        Ok(v)
    }

    /// Subgraph induced on `verts`, relabeled in the given order.
    pub fn induced_ordered(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Subgraph induced on `set`, relabeled in increasing vertex order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        self.induced_ordered(&set.to_vec())
    }

    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.induced(self.vertices().without(v))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & VertexSet::full(self.n).without(v).0;
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::new(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    /// Relabels so that vertex `perm[i]` of `self` becomes vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        self.induced_ordered(perm)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next | self.neighbors(v);
            }
            frontier = next - seen;
            seen = seen | next;
        }
        seen == self.vertices()
    }

    /// True iff there is no odd cycle.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v).iter() {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        stack.push(u);
                    } else if color[u] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_forest(&self) -> bool {
        // a graph is a forest iff |E| = |V| - #components
        let mut comps = 0;
        let mut seen = VertexSet::EMPTY;
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            comps += 1;
            let mut frontier = VertexSet::singleton(s);
            seen = seen | frontier;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next | self.neighbors(v);
                }
                frontier = next - seen;
                seen = seen | next;
            }
        }
        self.edge_count() + comps == self.n
    }

    pub fn has_triangle(&self) -> bool {
        self.edges()
            .any(|(u, v)| self.adj[u] & self.adj[v] != 0)
    }

    /// Hamiltonian cycle check by subset dynamic programming.
    /// Graphs on 0 or 1 vertex count as hamiltonian, on 2 vertices never.
    pub fn is_hamiltonian(&self) -> bool {
        let n = self.n;
        if n <= 1 {
            return true;
        }
        if n == 2 || n > 24 {
            return n != 2 && self.hamiltonian_backtrack();
        }
        // reach[mask] = set of end vertices of paths from 0 covering mask
        let full = (1usize << n) - 1;
        let mut reach = vec![0u64; 1 << n];
        reach[1] = 1;
        for mask in 1..=full {
            if mask & 1 == 0 || reach[mask] == 0 {
                continue;
            }
            for v in VertexSet(reach[mask] as u128).iter() {
                let ext = self.adj[v] & !(mask as u128);
                for u in VertexSet(ext).iter() {
                    reach[mask | 1 << u] |= 1 << u;
                }
            }
        }
        reach[full] as u128 & self.adj[0] != 0
    }

    fn hamiltonian_backtrack(&self) -> bool {
        fn go(g: &Graph, v: usize, seen: u128, full: u128) -> bool {
            if seen == full {
                return g.has_edge(v, 0);
            }
            VertexSet(g.adj[v] & !seen)
                .iter()
                .any(|u| go(g, u, seen | 1 << u, full))
        }
        go(self, 0, 1, VertexSet::full(self.n).0)
    }

    /// Exact k-colorability by backtracking.
    pub fn is_k_colorable(&self, k: usize) -> bool {
        if self.n == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut color = vec![usize::MAX; self.n];
        fn go(g: &Graph, order: &[usize], i: usize, k: usize, color: &mut [usize], used: usize) -> bool {
            if i == order.len() {
                return true;
            }
            let v = order[i];
            // symmetry: only one fresh color needs to be tried
            let limit = (used + 1).min(k);
            for c in 0..limit {
                if g.neighbors(v).iter().all(|u| color[u] != c) {
                    color[v] = c;
                    if go(g, order, i + 1, k, color, used.max(c + 1)) {
                        return true;
                    }
                    color[v] = usize::MAX;
                }
            }
            false
        }
        go(self, &order, 0, k, &mut color, 0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
