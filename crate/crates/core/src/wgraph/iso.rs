//! Backtracking search for (induced) copies of a small pattern graph.

use super::{Graph, VertexSet};

fn search_order(f: &Graph) -> Vec<usize> {
    let k = f.n();
    let mut order = Vec::with_capacity(k);
    let mut placed = VertexSet::EMPTY;
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| ((f.neighbors(v) & placed).len(), f.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    f: &'a Graph,
    order: Vec<usize>,
    induced: bool,
    map: Vec<usize>,
}

impl Search<'_> {
    fn candidates(&self, depth: usize, used: VertexSet) -> VertexSet {
        let u = self.order[depth];
        let mut cand = self.g.vertices() - used;
        for &w in &self.order[..depth] {
            let img = self.map[w];
            if self.f.has_edge(u, w) {
                cand = cand & self.g.neighbors(img);
            } else if self.induced {
                cand = cand - self.g.neighbors(img);
            }
        }
        let du = self.f.degree(u);
        VertexSet(
            cand.iter()
                .filter(|&v| {
                    self.g.degree(v) >= du
                        && (!self.induced || self.g.n() - self.g.degree(v) >= self.f.n() - du)
                })
                .fold(0u128, |acc, v| acc | 1 << v),
        )
    }

    fn run(&mut self, depth: usize, used: VertexSet, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        for v in self.candidates(depth, used).iter() {
            self.map[self.order[depth]] = v;
            if self.run(depth + 1, used.with(v), visit) {
                return true;
            }
        }
        false
    }
}

fn search(g: &Graph, f: &Graph, induced: bool, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if f.n() > g.n() {
        return;
    }
    let mut s = Search {
        g,
        f,
        order: search_order(f),
        induced,
        map: vec![0; f.n()],
    };
    s.run(0, VertexSet::EMPTY, visit);
}

/// True iff some injective map `V(F) → V(G)` preserves adjacency and non-adjacency.
pub fn induced_copy_exists(g: &Graph, f: &Graph) -> bool {
    let mut found = false;
    search(g, f, true, &mut |_| {
        found = true;
        true
    });
    found
}

/// All maps `φ` (with `φ[i]` the image of vertex `i` of `F`) embedding `F`
/// as an induced subgraph, in lexicographic order.
pub fn induced_copies(g: &Graph, f: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(g, f, true, &mut |m| {
        out.push(m.to_vec());
        false
    });
    out.sort();
    out
}

/// True iff `F` is a (not necessarily induced) subgraph of `G`.
pub fn subgraph_copy_exists(g: &Graph, f: &Graph) -> bool {
    let mut found = false;
    search(g, f, false, &mut |_| {
        found = true;
        true
    });
    found
}

/// All (not necessarily induced) copies of `F`, as maps in lexicographic order.
pub fn subgraph_copies(g: &Graph, f: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(g, f, false, &mut |m| {
        out.push(m.to_vec());
        false
    });
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_induced(g: &Graph, f: &Graph) -> Vec<Vec<usize>> {
        fn rec(g: &Graph, f: &Graph, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == f.n() {
                let ok = (0..f.n()).all(|i| {
                    (0..i).all(|j| f.has_edge(i, j) == g.has_edge(cur[i], cur[j]))
                });
                if ok {
                    out.push(cur.clone());
                }
                return;
            }
            for v in 0..g.n() {
                if !cur.contains(&v) {
                    cur.push(v);
                    rec(g, f, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(g, f, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn spec_examples() {
        assert!(induced_copy_exists(&Graph::cycle(4), &Graph::empty(1)));
        assert!(!induced_copy_exists(&Graph::cycle(5), &Graph::complete(3)));
        assert!(!induced_copy_exists(&Graph::complete(3), &Graph::path(2)));
        assert!(subgraph_copy_exists(&Graph::complete(3), &Graph::path(2)));
        assert!(induced_copy_exists(&Graph::empty(0), &Graph::empty(0)));
    }

    #[test]
    fn matches_brute_force() {
        let patterns = [
            Graph::path(2),
            Graph::complete(3),
            Graph::cycle(4),
            Graph::empty(2),
            Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(),
        ];
        let hosts = [
            Graph::cycle(6),
            Graph::complete(4),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (1, 5)]).unwrap(),
            Graph::path(5),
        ];
        for g in &hosts {
            for f in &patterns {
                assert_eq!(induced_copies(g, f), brute_induced(g, f), "{g:?} {f:?}");
            }
        }
    }
}
