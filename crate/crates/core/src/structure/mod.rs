//! Embedding schemes, the scheme function Ψ of a graph family, and the
//! heavy/light decomposition with its cleanup.
//!
//! A scheme on `k` vertices numbers its uncoloured `A` vertices `0..a` and
//! its coloured `B` vertices `a..k`.

mod decomposition;

pub use decomposition::{
    heavy_light_split, regularity_cleanup, structured_partition, Cleanup, DecompositionParams, HeavyLight,
    ItemCheck, StructuredDecomposition,
};

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::wgraph::Graph;

/// Largest scheme order `psi_family` enumerates.
pub const SCHEME_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
    Grey,
}

impl Color {
    fn code(self) -> char {
        match self {
            Color::Black => 'b',
            Color::White => 'w',
            Color::Grey => 'g',
        }
    }

    fn from_code(s: &str) -> Option<Color> {
        match s {
            "b" => Some(Color::Black),
            "w" => Some(Color::White),
            "g" => Some(Color::Grey),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EmbeddingScheme {
    a: usize,
    /// Colours of the `B` vertices; never grey.
    b: Vec<Color>,
    /// Row-major `k × k`, symmetric; the diagonal is unused.
    edges: Vec<Color>,
}

impl EmbeddingScheme {
    /// All edges start black.
    pub fn new(a: usize, b: Vec<Color>) -> Result<Self> {
        if b.contains(&Color::Grey) {
            return Err(Error::input("B vertices are black or white"));
        }
        let k = a + b.len();
        Ok(EmbeddingScheme {
            a,
            b,
            edges: vec![Color::Black; k * k],
        })
    }

    pub fn order(&self) -> usize {
        self.a + self.b.len()
    }

    pub fn a_count(&self) -> usize {
        self.a
    }

    pub fn is_a(&self, v: usize) -> bool {
        v < self.a
    }

    /// Colour of a `B` vertex; `None` for `A` vertices.
    pub fn vertex_color(&self, v: usize) -> Option<Color> {
        v.checked_sub(self.a).map(|i| self.b[i])
    }

    pub fn edge(&self, i: usize, j: usize) -> Color {
        self.edges[i * self.order() + j]
    }

    pub fn set_edge(&mut self, i: usize, j: usize, c: Color) -> Result<()> {
        let k = self.order();
        if i >= k || j >= k || i == j {
            return Err(Error::input(format!("no scheme edge {i} {j}")));
        }
        if c == Color::Grey && (self.is_a(i) || self.is_a(j)) {
            return Err(Error::input(format!("edge {i} {j} meets A and cannot be grey")));
        }
        self.edges[i * k + j] = c;
        self.edges[j * k + i] = c;
        Ok(())
    }

    /// `A <count>`, `B <b|w>…`, then one `edge <i> <j> <b|w|g>` line per pair.
    pub fn to_text(&self) -> String {
        let mut s = format!("A {}\nB", self.a);
        for c in &self.b {
            s.push(' ');
            s.push(c.code());
        }
        s.push('\n');
        for j in 0..self.order() {
            for i in 0..j {
                s.push_str(&format!("edge {i} {j} {}\n", self.edge(i, j).code()));
            }
        }
        s
    }

    /// Every pair must be listed exactly once.
    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let mut a = None;
        let mut b = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "A" if toks.len() == 2 && a.is_none() => {
                    a = Some(toks[1].parse::<usize>().map_err(|_| perr(ln, "bad A count".into()))?);
                }
                "B" if b.is_none() => {
                    let cs = toks[1..]
                        .iter()
                        .map(|t| match Color::from_code(t) {
                            Some(c) if c != Color::Grey => Ok(c),
                            _ => Err(perr(ln, format!("bad B colour '{t}'"))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    b = Some(cs);
                }
                "edge" if toks.len() == 4 => {
                    let i: usize = toks[1].parse().map_err(|_| perr(ln, "bad vertex".into()))?;
                    let j: usize = toks[2].parse().map_err(|_| perr(ln, "bad vertex".into()))?;
                    let c = Color::from_code(toks[3]).ok_or_else(|| perr(ln, format!("bad colour '{}'", toks[3])))?;
                    edges.push((ln, i, j, c));
                }
                _ => return Err(perr(ln, format!("unexpected line '{line}'"))),
            }
        }
        let mut k = EmbeddingScheme::new(
            a.ok_or_else(|| perr(0, "missing A line".into()))?,
            b.ok_or_else(|| perr(0, "missing B line".into()))?,
        )?;
        let mut seen = HashSet::new();
        for (ln, i, j, c) in edges {
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(perr(ln, format!("edge {i} {j} listed twice")));
            }
            k.set_edge(i, j, c).map_err(|e| perr(ln, e.to_string()))?;
        }
        let n = k.order();
        if seen.len() != n * n.saturating_sub(1) / 2 {
            return Err(perr(0, "every pair of scheme vertices needs a colour".into()));
        }
        Ok(k)
    }

    /// Lexicographically least encoding over relabelings that keep `A` and `B` in place.
    fn canonical_key(&self) -> Vec<u8> {
        let k = self.order();
        let mut best: Option<Vec<u8>> = None;
        for pa in permutations(self.a) {
            for pb in permutations(k - self.a) {
                let perm: Vec<usize> = pa.iter().copied().chain(pb.iter().map(|&v| v + self.a)).collect();
                let mut key: Vec<u8> = (0..k - self.a).map(|i| self.b[pb[i]] as u8).collect();
                for j in 0..k {
                    for i in 0..j {
                        key.push(self.edge(perm[i], perm[j]) as u8);
                    }
                }
                if best.as_ref().map_or(true, |b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.unwrap_or_default()
    }
}

impl fmt::Debug for EmbeddingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text().replace('\n', "; "))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The lexicographically first embedding `φ: V(F) → V(K)`, as the list of images.
///
/// Each `A` vertex receives at most one vertex of `F`; a black (white) `B`
/// vertex receives a clique (independent set); a black (white) scheme edge
/// forces a complete (empty) bipartite graph between the two fibers.
pub fn embeds(f: &Graph, k: &EmbeddingScheme) -> Option<Vec<usize>> {
    fn go(f: &Graph, k: &EmbeddingScheme, phi: &mut Vec<usize>) -> bool {
        let u = phi.len();
        if u == f.n() {
            return true;
        }
        for alpha in 0..k.order() {
            let ok = phi.iter().enumerate().all(|(w, &beta)| {
                let adj = f.has_edge(u, w);
                if beta == alpha {
                    match k.vertex_color(alpha) {
                        None => false,
                        Some(c) => adj == (c == Color::Black),
                    }
                } else {
                    match k.edge(alpha, beta) {
                        Color::Black => adj,
                        Color::White => !adj,
                        Color::Grey => true,
                    }
                }
            });
            if ok {
                phi.push(alpha);
                if go(f, k, phi) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    let mut phi = Vec::with_capacity(f.n());
    go(f, k, &mut phi).then_some(phi)
}

/// Every scheme on exactly `k` vertices, one per class under relabelings
/// within `A` and within `B`.
pub fn schemes_of_order(k: usize) -> Result<Vec<EmbeddingScheme>> {
    if k > SCHEME_CAP {
        return Err(Error::resource("scheme order", SCHEME_CAP));
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    for a in 0..=k {
        let nb = k - a;
        for bmask in 0..1u32 << nb {
            let bcols: Vec<Color> = (0..nb)
                .map(|i| if bmask >> i & 1 == 1 { Color::White } else { Color::Black })
                .collect();
            let choices: Vec<&[Color]> = pairs
                .iter()
                .map(|&(i, j)| -> &[Color] {
                    if i < a || j < a {
                        &[Color::Black, Color::White]
                    } else {
                        &[Color::Black, Color::White, Color::Grey]
                    }
                })
                .collect();
            let mut idx = vec![0usize; pairs.len()];
            loop {
                let mut s = EmbeddingScheme::new(a, bcols.clone())?;
                for (p, &(i, j)) in pairs.iter().enumerate() {
                    s.set_edge(i, j, choices[p][idx[p]])?;
                }
                if seen.insert((a, s.canonical_key())) {
                    out.push(s);
                }
                let mut p = 0;
                while p < idx.len() {
                    idx[p] += 1;
                    if idx[p] < choices[p].len() {
                        break;
                    }
                    idx[p] = 0;
                    p += 1;
                }
                if p == idx.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// `Ψ_F(m)`: over schemes on at most `m` vertices into which some member of
/// the family embeds, the largest value of the least order of an embeddable
/// member; 0 when no scheme admits a member.
pub fn psi_family(family: &[Graph], m: usize) -> Result<usize> {
    let mut best = 0;
    for k in 0..=m {
        for s in schemes_of_order(k)? {
            if let Some(least) = family.iter().filter(|f| embeds(f, &s).is_some()).map(Graph::n).min() {
                best = best.max(least);
            }
        }
    }
    Ok(best)
}
