//! Eigenvalues of real symmetric matrices and the graph spectra built on them.
//!
//! The kernel is a cyclic Jacobi eigensolver ([`sym_eigenvalues`]). A
//! Householder tridiagonalization followed by implicit QL
//! ([`sym_eigenvalues_ql`]) is kept alongside it for the bulk verification
//! sweeps, where graphs of order 60 are processed by the million; each solver
//! is tested against the other.

mod jacobi;
mod poly;
mod ql;

pub use jacobi::sym_eigenvalues;
pub use poly::{eval_poly, largest_real_root};
pub use ql::sym_eigenvalues_ql;
pub(crate) use ql::tridiagonal_ql;

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// A real symmetric matrix, stored dense and row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// Validates finiteness and symmetrizes by averaging `(i,j)` with `(j,i)`.
    pub fn new(order: usize, mut entries: Vec<f64>) -> Result<SymMatrix> {
        if order == 0 {
            return Err(invalid("matrix order must be at least 1"));
        }
        if entries.len() != order * order {
            return Err(invalid(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        if let Some(k) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                row: k / order,
                col: k % order,
            });
        }
        for i in 0..order {
            for j in i + 1..order {
                let avg = 0.5 * (entries[i * order + j] + entries[j * order + i]);
                entries[i * order + j] = avg;
                entries[j * order + i] = avg;
            }
        }
        Ok(SymMatrix { order, entries })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> f64) -> Result<SymMatrix> {
        let entries = (0..order * order).map(|k| f(k / order, k % order)).collect();
        SymMatrix::new(order, entries)
    }

    pub fn identity(order: usize) -> Result<SymMatrix> {
        SymMatrix::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn adjacency(g: &Graph) -> Result<SymMatrix> {
        SymMatrix::new(g.order(), g.adjacency_entries())
    }

    pub fn laplacian(g: &Graph) -> Result<SymMatrix> {
        SymMatrix::new(g.order(), g.laplacian_entries())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }
}

/// Which end of the spectrum comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumOrder {
    /// `λ_1 ≥ λ_2 ≥ ...`, the adjacency convention.
    NonIncreasing,
    /// `μ_1 ≤ μ_2 ≤ ...`, the Laplacian convention.
    NonDecreasing,
}

/// Sorted real eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    order: SpectrumOrder,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>, order: SpectrumOrder) -> Spectrum {
        match order {
            SpectrumOrder::NonIncreasing => values.sort_by(|a, b| b.total_cmp(a)),
            SpectrumOrder::NonDecreasing => values.sort_by(|a, b| a.total_cmp(b)),
        }
        Spectrum { values, order }
    }

    /// Values in the spectrum's own convention.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn order(&self) -> SpectrumOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values sorted non-increasing regardless of convention.
    pub fn descending(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Values sorted non-decreasing regardless of convention.
    pub fn ascending(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    /// The `i`-th value (1-based) in the spectrum's own convention.
    pub fn nth(&self, i: usize) -> Option<f64> {
        i.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_sq(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }
}

/// Fixed-point with nine decimals, non-increasing, one value per line.
pub fn format_value(x: f64) -> String {
    let s = format!("{x:.9}");
    if s == "-0.000000000" {
        "0.000000000".to_string()
    } else {
        s
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.descending() {
            writeln!(f, "{}", format_value(x))?;
        }
        Ok(())
    }
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    let values = sym_eigenvalues(&SymMatrix::adjacency(g)?)?;
    Ok(Spectrum::new(values.descending(), SpectrumOrder::NonIncreasing))
}

pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    let values = sym_eigenvalues(&SymMatrix::laplacian(g)?)?;
    Ok(Spectrum::new(values.ascending(), SpectrumOrder::NonDecreasing))
}

/// Second largest adjacency eigenvalue.
pub fn lambda2(g: &Graph) -> Result<f64> {
    if g.order() < 2 {
        return Err(invalid("lambda2 needs at least two vertices"));
    }
    Ok(adjacency_spectrum(g)?.values()[1])
}

/// Second smallest Laplacian eigenvalue (algebraic connectivity).
pub fn mu2(g: &Graph) -> Result<f64> {
    if g.order() < 2 {
        return Err(invalid("mu2 needs at least two vertices"));
    }
    Ok(laplacian_spectrum(g)?.values()[1])
}

/// `λ_2` through the Householder-QL kernel; used by the bulk sweeps.
pub fn lambda2_fast(g: &Graph) -> Result<f64> {
    if g.order() < 2 {
        return Err(invalid("lambda2 needs at least two vertices"));
    }
    let mut v = sym_eigenvalues_ql(&SymMatrix::adjacency(g)?)?;
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn symmetrizes_on_ingestion() {
        let m = SymMatrix::new(2, vec![0.0, 1.0, 3.0, 0.0]).unwrap();
        assert_eq!(m.get(0, 1), 2.0);
        assert_eq!(m.get(1, 0), 2.0);
        assert!(SymMatrix::new(2, vec![0.0, f64::NAN, 0.0, 0.0]).is_err());
        assert!(SymMatrix::new(0, vec![]).is_err());
    }

    #[test]
    fn small_closed_forms() {
        let id = SymMatrix::identity(3).unwrap();
        assert!(close(&sym_eigenvalues(&id).unwrap().descending(), &[1.0; 3], 1e-12));
        let swap = SymMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(close(&sym_eigenvalues(&swap).unwrap().descending(), &[1.0, -1.0], 1e-12));
    }

    #[test]
    fn complete_and_cycle_spectra() {
        let k4 = Graph::complete(4).unwrap();
        assert!(close(adjacency_spectrum(&k4).unwrap().values(), &[3.0, -1.0, -1.0, -1.0], 1e-10));
        assert!((lambda2(&k4).unwrap() + 1.0).abs() < 1e-10);

        let c4 = Graph::cycle(4).unwrap();
        let adj = adjacency_spectrum(&c4).unwrap();
        let lap = laplacian_spectrum(&c4).unwrap();
        assert!(close(adj.values(), &[2.0, 0.0, 0.0, -2.0], 1e-10));
        assert!(close(lap.values(), &[0.0, 2.0, 2.0, 4.0], 1e-10));
        for (l, m) in adj.values().iter().zip(lap.values()) {
            assert!((l - (2.0 - m)).abs() < 1e-9);
        }
    }

    #[test]
    fn laplacian_of_k2() {
        let k2 = Graph::complete(2).unwrap();
        assert!(close(laplacian_spectrum(&k2).unwrap().values(), &[0.0, 2.0], 1e-12));
    }

    #[test]
    fn disconnected_graph_has_zero_algebraic_connectivity() {
        let k3 = Graph::complete(3).unwrap();
        assert!(mu2(&k3.disjoint_union(&k3)).unwrap().abs() < 1e-10);
        assert!(mu2(&Graph::cycle(5).unwrap()).unwrap() > 0.0);
    }

    #[test]
    fn lambda2_needs_two_vertices() {
        assert!(lambda2(&Graph::complete(1).unwrap()).is_err());
        assert!(mu2(&Graph::complete(1).unwrap()).is_err());
    }

    #[test]
    fn spectrum_display_is_stable() {
        let s = Spectrum::new(vec![-1.0, 3.0, -1e-17], SpectrumOrder::NonIncreasing);
        assert_eq!(s.to_string(), "3.000000000\n0.000000000\n-1.000000000\n");
        let lap = Spectrum::new(vec![2.0, 0.0], SpectrumOrder::NonDecreasing);
        assert_eq!(lap.nth(1), Some(0.0));
        assert_eq!(lap.to_string(), "2.000000000\n0.000000000\n");
    }

    #[test]
    fn disjoint_union_spectrum_is_multiset_union() {
        let a = Graph::cycle(5).unwrap();
        let b = Graph::complete(4).unwrap();
        let mut expect = adjacency_spectrum(&a).unwrap().descending();
        expect.extend(adjacency_spectrum(&b).unwrap().descending());
        expect.sort_by(|x, y| y.total_cmp(x));
        let got = adjacency_spectrum(&a.disjoint_union(&b)).unwrap();
        assert!(close(got.values(), &expect, 1e-9));
    }

    #[test]
    fn cycle_matches_cosine_closed_form() {
        for n in 3..12 {
            let mut expect: Vec<f64> = (0..n)
                .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
                .collect();
            expect.sort_by(|a, b| b.total_cmp(a));
            let got = adjacency_spectrum(&Graph::cycle(n).unwrap()).unwrap();
            assert!(close(got.values(), &expect, 1e-10), "n = {n}");
        }
    }

    #[test]
    fn complement_spectrum_law_on_regular_graphs() {
        // d-regular g: complement has n-1-d and -1-λ_i for i >= 2.
        let g = crate::graph::parse_graph6("IheA@GUAo").unwrap();
        let (n, d) = (10.0, 3.0);
        let values = adjacency_spectrum(&g).unwrap().descending();
        let mut expect = vec![n - 1.0 - d];
        expect.extend(values[1..].iter().map(|l| -1.0 - l));
        expect.sort_by(|a, b| b.total_cmp(a));
        let got = adjacency_spectrum(&g.complement()).unwrap();
        assert!(close(got.values(), &expect, 1e-9));
    }

    #[test]
    fn matching_complement_spectrum() {
        let g = Graph::matching_complement(3).unwrap();
        let got = adjacency_spectrum(&g).unwrap();
        assert!(close(got.values(), &[4.0, 0.0, 0.0, 0.0, -2.0, -2.0], 1e-10));
    }
}
