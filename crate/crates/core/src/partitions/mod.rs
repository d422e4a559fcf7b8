//! Vertex partitions, quotient matrices, and the eigenvalue relations between
//! a graph and its quotients.

mod tridiagonal;

pub use tridiagonal::{tridiagonal_reduce, Scalar, Tridiagonal, TridiagonalRowSum};

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::{adjacency_spectrum, sym_eigenvalues, Spectrum, SymMatrix};
use crate::verdict::Verdict;

/// Tolerance for interlacing comparisons.
pub const INTERLACE_TOL: f64 = 1e-9;
/// Tolerance for matching quotient eigenvalues against graph eigenvalues.
pub const LIFT_TOL: f64 = 1e-7;

/// An ordered sequence of non-empty, pairwise disjoint blocks covering
/// `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<VertexPartition> {
        let bad = |msg: String| Error::InvalidPartition(msg);
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(bad(format!("block {b} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(bad(format!("vertex {v} is out of range for {n} vertices")));
                }
                if block_of[v] != usize::MAX {
                    return Err(bad(format!("vertex {v} appears twice")));
                }
                block_of[v] = b;
            }
        }
        Ok(VertexPartition { blocks, block_of })
    }

    /// Consecutive blocks of the given sizes: `[0, s0)`, `[s0, s0 + s1)`, ...
    pub fn from_sizes(sizes: &[usize]) -> Result<VertexPartition> {
        let mut start = 0;
        let blocks = sizes
            .iter()
            .map(|&s| {
                let block = (start..start + s).collect();
                start += s;
                block
            })
            .collect();
        VertexPartition::new(blocks)
    }

    /// One block per vertex.
    pub fn discrete(n: usize) -> VertexPartition {
        VertexPartition::new((0..n).map(|v| vec![v]).collect()).expect("singletons partition 0..n")
    }

    /// A single block with every vertex.
    pub fn trivial(n: usize) -> Result<VertexPartition> {
        VertexPartition::new(vec![(0..n).collect()])
    }

    /// Parses `"0,1,2;3,4;5"`: blocks separated by `;`, vertices by `,`.
    pub fn parse(text: &str) -> Result<VertexPartition> {
        let blocks = text
            .trim()
            .split(';')
            .map(|block| {
                block
                    .split(',')
                    .map(|v| {
                        v.trim().parse::<usize>().map_err(|_| {
                            Error::InvalidPartition(format!("`{}` is not a vertex label", v.trim()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        VertexPartition::new(blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of vertices covered.
    pub fn order(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.order() != g.order() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices but the graph has {}",
                self.order(),
                g.order()
            )));
        }
        Ok(())
    }

    // counts[v * s + j] = number of neighbours of v in block j.
    fn neighbour_counts(&self, g: &Graph) -> Vec<u64> {
        let s = self.len();
        let mut counts = vec![0u64; g.order() * s];
        for (u, v) in g.edges() {
            counts[u * s + self.block_of[v]] += 1;
            counts[v * s + self.block_of[u]] += 1;
        }
        counts
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks.iter().enumerate() {
            if b > 0 {
                f.write_str(";")?;
            }
            for (i, v) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// The quotient matrix of a graph with respect to a vertex partition.
///
/// Entry `(i, j)` is the average number of neighbours a vertex of block `i`
/// has in block `j`: `|[V_i, V_j]| / |V_i|` off the diagonal and
/// `2 |E(G[V_i])| / |V_i|` on it. Entries are kept as exact fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    counts: Vec<u64>,
    sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.sizes.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `|[V_i, V_j]|` for `i != j`, twice the edge count of `G[V_i]` for `i == j`.
    pub fn edge_count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.order() + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational64 {
        Rational64::new(self.edge_count(i, j) as i64, self.sizes[i] as i64)
    }

    pub fn entry_f64(&self, i: usize, j: usize) -> f64 {
        self.edge_count(i, j) as f64 / self.sizes[i] as f64
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational64>> {
        let s = self.order();
        (0..s).map(|i| (0..s).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn row_sums(&self) -> Vec<Rational64> {
        let s = self.order();
        (0..s)
            .map(|i| (0..s).map(|j| self.entry(i, j)).sum())
            .collect()
    }

    /// Eigenvalues, sorted non-increasing. The quotient is similar to the
    /// symmetric matrix `|[V_i, V_j]| / sqrt(|V_i| |V_j|)`, so they are real.
    pub fn eigenvalues(&self) -> Result<Spectrum> {
        let sizes = &self.sizes;
        let sym = SymMatrix::from_fn(self.order(), |i, j| {
            self.edge_count(i, j) as f64 / ((sizes[i] * sizes[j]) as f64).sqrt()
        })?;
        sym_eigenvalues(&sym)
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn quotient_matrix(g: &Graph, p: &VertexPartition) -> Result<QuotientMatrix> {
    p.check_graph(g)?;
    let s = p.len();
    let mut counts = vec![0u64; s * s];
    for (u, v) in g.edges() {
        let (a, b) = (p.block_of(u), p.block_of(v));
        counts[a * s + b] += 1;
        counts[b * s + a] += 1;
    }
    Ok(QuotientMatrix {
        counts,
        sizes: p.sizes(),
    })
}

/// Whether every vertex of block `i` has the same number of neighbours in
/// block `j`, for all `i`, `j`.
pub fn is_equitable(g: &Graph, p: &VertexPartition) -> Result<bool> {
    p.check_graph(g)?;
    let s = p.len();
    let counts = p.neighbour_counts(g);
    Ok(p.blocks().iter().all(|block| {
        let first = &counts[block[0] * s..block[0] * s + s];
        block[1..].iter().all(|&v| &counts[v * s..v * s + s] == first)
    }))
}

/// Cauchy interlacing of `inner` (length `m`) in `outer` (length `n > m`):
/// `outer_i >= inner_i >= outer_{n-m+i}` for every `i`, up to
/// [`INTERLACE_TOL`].
pub fn interlaces(outer: &Spectrum, inner: &Spectrum) -> Result<bool> {
    let (n, m) = (outer.len(), inner.len());
    if m == 0 || m >= n {
        return Err(crate::error::invalid(format!(
            "interlacing needs 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let a = outer.descending();
    let b = inner.descending();
    Ok((0..m).all(|i| a[i] + INTERLACE_TOL >= b[i] && b[i] + INTERLACE_TOL >= a[n - m + i]))
}

/// For an equitable partition, checks that every quotient eigenvalue is a
/// graph eigenvalue, matching greedily as multisets within [`LIFT_TOL`].
/// The margin is `LIFT_TOL` minus the worst matched distance.
pub fn equitable_lift_check(g: &Graph, p: &VertexPartition) -> Result<Verdict> {
    if !is_equitable(g, p)? {
        return Err(Error::NotEquitable);
    }
    let quotient = quotient_matrix(g, p)?.eigenvalues()?;
    let spectrum = adjacency_spectrum(g)?;
    Ok(multiset_containment(quotient.values(), spectrum.values(), LIFT_TOL))
}

/// Greedy nearest matching of `needles` into `haystack`; each haystack value
/// is used at most once.
pub fn multiset_containment(needles: &[f64], haystack: &[f64], tol: f64) -> Verdict {
    let mut used = vec![false; haystack.len()];
    let mut worst: f64 = 0.0;
    for &x in needles {
        let best = haystack
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()));
        match best {
            Some((i, y)) => {
                used[i] = true;
                worst = worst.max((y - x).abs());
            }
            None => {
                return Verdict::Fails {
                    margin: f64::NEG_INFINITY,
                    detail: format!("no value left to match {x}"),
                }
            }
        }
    }
    Verdict::from_margin(tol - worst, || format!("a value is off by {worst:.3e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::SpectrumOrder;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn parse_and_display() {
        let p = VertexPartition::parse("0,1,2;3,4;5").unwrap();
        assert_eq!(p.sizes(), vec![3, 2, 1]);
        assert_eq!(p.to_string(), "0,1,2;3,4;5");
        assert_eq!(p.block_of(4), 1);
        assert!(VertexPartition::parse("0,1;1,2").is_err());
        assert!(VertexPartition::parse("0,2").is_err());
        assert!(VertexPartition::parse("0;;1").is_err());
        assert!(VertexPartition::parse("0,x").is_err());
    }

    #[test]
    fn cycle_quotients() {
        let c4 = Graph::cycle(4).unwrap();
        let p = VertexPartition::parse("0,2;1,3").unwrap();
        let q = quotient_matrix(&c4, &p).unwrap();
        assert_eq!(q.to_rows(), vec![vec![r(0), r(2)], vec![r(2), r(0)]]);

        let c5 = Graph::cycle(5).unwrap();
        assert!(!is_equitable(&c5, &VertexPartition::parse("0;1,2,3,4").unwrap()).unwrap());
        assert!(is_equitable(&c5, &VertexPartition::discrete(5)).unwrap());
    }

    #[test]
    fn trivial_partition_of_regular_graph() {
        let g = crate::graph::parse_graph6("IheA@GUAo").unwrap();
        let q = quotient_matrix(&g, &VertexPartition::trivial(10).unwrap()).unwrap();
        assert_eq!(q.to_rows(), vec![vec![r(3)]]);
    }

    #[test]
    fn diagonal_entry_counts_induced_edges() {
        let c5 = Graph::cycle(5).unwrap();
        let p = VertexPartition::parse("0,1,2;3,4").unwrap();
        let q = quotient_matrix(&c5, &p).unwrap();
        let inside = c5.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(q.entry(0, 0), Rational64::new(2 * inside.edge_count() as i64, 3));
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(q.entry(i, j) * r(p.sizes()[i] as i64), q.entry(j, i) * r(p.sizes()[j] as i64));
            }
        }
    }

    #[test]
    fn interlacing_examples() {
        let s = |v: Vec<f64>| Spectrum::new(v, SpectrumOrder::NonIncreasing);
        assert!(interlaces(&s(vec![3.0, 1.0, -1.0]), &s(vec![1.0, -1.0])).unwrap());
        assert!(!interlaces(&s(vec![2.0, 0.0, -2.0]), &s(vec![3.0])).unwrap());
        assert!(interlaces(&s(vec![1.0]), &s(vec![1.0])).is_err());
    }

    #[test]
    fn lift_on_six_cycle() {
        let c6 = Graph::cycle(6).unwrap();
        let p = VertexPartition::parse("0,3;1,2,4,5").unwrap();
        assert!(is_equitable(&c6, &p).unwrap());
        assert!(equitable_lift_check(&c6, &p).unwrap().holds());
        let k4 = Graph::complete(4).unwrap();
        assert!(equitable_lift_check(&k4, &VertexPartition::discrete(4)).unwrap().holds());
        let c5 = Graph::cycle(5).unwrap();
        assert!(matches!(
            equitable_lift_check(&c5, &VertexPartition::parse("0;1,2,3,4").unwrap()),
            Err(Error::NotEquitable)
        ));
    }

    #[test]
    fn containment_is_a_multiset_relation() {
        assert!(multiset_containment(&[1.0, 1.0], &[1.0, 0.0, 1.0], 1e-9).holds());
        assert!(multiset_containment(&[1.0, 1.0], &[1.0, 0.0, 2.0], 1e-9).fails());
        assert!(multiset_containment(&[1.0, 1.0], &[1.0], 1e-9).fails());
    }

    #[test]
    fn partition_must_match_graph_order() {
        let g = Graph::cycle(5).unwrap();
        assert!(quotient_matrix(&g, &VertexPartition::discrete(4)).is_err());
    }
}
