//! Simple undirected graphs stored as dense symmetric bit matrices.
//!
//! Vertices are the integers `0..n`. Every constructor returns a fresh,
//! immutable [`Graph`]; the algebra (complement, join, disjoint union) follows
//! the usual conventions, with the second operand of a binary operation
//! relabeled by shifting its vertices past the first.

mod io;

pub use io::{parse_edge_list, parse_graph6, read_graph};

use std::fmt;

use crate::error::{invalid, Error, Result};

const WORD: usize = 64;

/// A simple graph on the vertex set `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    edge_count: usize,
}

/// The edges joining two disjoint vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBoundary {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub size: usize,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(WORD).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("repeated edge {u}-{v}")));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set(u, v);
                }
            }
        }
        g
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
        self.edge_count += 1;
    }

    /// `K_n`.
    pub fn complete(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(invalid("complete graph needs at least one vertex"));
        }
        Ok(Graph::from_fn(n, |_, _| true))
    }

    /// `C_n` with edges `i ~ i+1 (mod n)`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `P_n` with edges `i ~ i+1`.
    pub fn path(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(invalid("path needs at least one vertex"));
        }
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// `m K_2`: a perfect matching `2i ~ 2i+1` on `2m` vertices.
    pub fn matching(m: usize) -> Graph {
        Graph::from_fn(2 * m, |u, v| u / 2 == v / 2)
    }

    /// The complement of `m K_2` (cocktail-party graph): `(2m-2)`-regular on
    /// `2m` vertices, vertex `2i` missing only `2i+1`.
    pub fn matching_complement(m: usize) -> Result<Graph> {
        if m == 0 {
            return Err(invalid("matching complement needs m >= 1"));
        }
        Ok(Graph::from_fn(2 * m, |u, v| u / 2 != v / 2))
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn is_regular(&self) -> Option<usize> {
        let mut degrees = (0..self.n).map(|v| self.degree(v));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// `self ∨ other`: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Graph {
        let k = self.n;
        Graph::from_fn(self.n + other.n, |u, v| match (u < k, v < k) {
            (true, true) => self.has_edge(u, v),
            (false, false) => other.has_edge(u - k, v - k),
            _ => true,
        })
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let k = self.n;
        Graph::from_fn(self.n + other.n, |u, v| match (u < k, v < k) {
            (true, true) => self.has_edge(u, v),
            (false, false) => other.has_edge(u - k, v - k),
            _ => false,
        })
    }

    /// Returns a copy with the extra edges added.
    pub fn with_edges<I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_edges(self.n, self.edges().chain(edges))
    }

    /// `G[S]`, relabeled `0..|S|` in the order the vertices appear in `s`.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph> {
        if s.is_empty() {
            return Err(invalid("induced subgraph of an empty vertex set"));
        }
        self.check_subset(s)?;
        Ok(Graph::from_fn(s.len(), |i, j| self.has_edge(s[i], s[j])))
    }

    fn check_subset(&self, s: &[usize]) -> Result<Vec<bool>> {
        let mut mark = vec![false; self.n];
        for &v in s {
            if v >= self.n {
                return Err(invalid(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut mark[v], true) {
                return Err(invalid(format!("vertex {v} listed twice")));
            }
        }
        Ok(mark)
    }

    /// `[S, T]`: the edges with one end in `s` and the other in `t`.
    pub fn edge_boundary(&self, s: &[usize], t: &[usize]) -> Result<EdgeBoundary> {
        let in_s = self.check_subset(s)?;
        let in_t = self.check_subset(t)?;
        if let Some(v) = (0..self.n).find(|&v| in_s[v] && in_t[v]) {
            return Err(invalid(format!("vertex {v} lies in both sets")));
        }
        let size = s
            .iter()
            .map(|&u| self.neighbors(u).filter(|&v| in_t[v]).count())
            .sum();
        Ok(EdgeBoundary {
            s: s.to_vec(),
            t: t.to_vec(),
            size,
        })
    }

    /// `|[S, V \ S]|`.
    pub fn cut_size(&self, s: &[usize]) -> Result<usize> {
        let rest = self.complement_of(s)?;
        Ok(self.edge_boundary(s, &rest)?.size)
    }

    /// `V \ S` in increasing order.
    pub fn complement_of(&self, s: &[usize]) -> Result<Vec<usize>> {
        let mark = self.check_subset(s)?;
        Ok((0..self.n).filter(|&v| !mark[v]).collect())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Dense adjacency matrix, row-major.
    pub fn adjacency_entries(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        for (u, v) in self.edges() {
            a[u * self.n + v] = 1.0;
            a[v * self.n + u] = 1.0;
        }
        a
    }

    /// Dense Laplacian `D - A`, row-major.
    pub fn laplacian_entries(&self) -> Vec<f64> {
        let mut l = self.adjacency_entries();
        for x in l.iter_mut() {
            *x = -*x;
        }
        for v in 0..self.n {
            l[v * self.n + v] = self.degree(v) as f64;
        }
        l
    }

    /// The canonical edge-list text: `n m` followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}
