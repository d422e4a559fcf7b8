//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use spectralcut::Graph;

/// Adjacency rows as bit masks (n <= 64).
pub fn masks(g: &Graph) -> Vec<u64> {
    (0..g.order())
        .map(|u| g.neighbors(u).fold(0u64, |m, v| m | 1 << v))
        .collect()
}

/// Minimum edge cut by trying every vertex subset that avoids the last vertex.
pub fn brute_force_edge_connectivity(g: &Graph) -> usize {
    let n = g.order();
    assert!((2..=20).contains(&n));
    let rows = masks(g);
    let full = (1u64 << n) - 1;
    (1u64..1 << (n - 1))
        .map(|s| {
            (0..n)
                .filter(|&v| s >> v & 1 == 1)
                .map(|v| (rows[v] & !s & full).count_ones() as usize)
                .sum::<usize>()
        })
        .min()
        .unwrap()
}

/// Eigenvalues of a symmetric matrix, largest first.
pub fn symmetric_eigenvalues(n: usize, entries: &[f64]) -> Vec<f64> {
    let m = DMatrix::from_row_slice(n, n, entries);
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn adjacency_eigenvalues(g: &Graph) -> Vec<f64> {
    symmetric_eigenvalues(g.order(), &g.adjacency_entries())
}

/// Eigenvalues of a general real matrix with real spectrum, largest first.
/// Panics if an eigenvalue has a noticeable imaginary part.
///
/// Francis iterations can stall on highly structured inputs, so on failure
/// the matrix is first conjugated by a seeded near-identity matrix.
pub fn real_eigenvalues(n: usize, entries: &[f64]) -> Vec<f64> {
    let m = DMatrix::from_row_slice(n, n, entries);
    let mut schur = Schur::try_new(m.clone(), 1e-14, 10_000);
    let mut seed = 0u64;
    while schur.is_none() {
        seed += 1;
        assert!(seed <= 8, "Schur decomposition keeps failing");
        let mut state = seed;
        let p = DMatrix::from_fn(n, n, |i, j| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let noise = (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            let diagonal = if i == j { 1.0 } else { 0.0 };
            diagonal + 0.2 * noise
        });
        let inverse = p.clone().try_inverse().expect("near-identity matrix is invertible");
        schur = Schur::try_new(&p * &m * inverse, 1e-14, 10_000);
    }
    let mut v: Vec<f64> = schur
        .unwrap()
        .complex_eigenvalues()
        .iter()
        .map(|z| {
            assert!(z.im.abs() < 1e-6, "complex eigenvalue {z}");
            z.re
        })
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// `trace(A^k)` for `k = 1..=n` in exact integers.
pub fn adjacency_power_traces(g: &Graph) -> Vec<i128> {
    let n = g.order();
    let a: Vec<i128> = g.adjacency_entries().iter().map(|&x| x as i128).collect();
    let mut p = a.clone();
    let mut traces = Vec::with_capacity(n);
    for k in 1..=n {
        traces.push((0..n).map(|i| p[i * n + i]).sum());
        if k < n {
            let mut next = vec![0i128; n * n];
            for i in 0..n {
                for l in 0..n {
                    let x = p[i * n + l];
                    if x != 0 {
                        for j in 0..n {
                            next[i * n + j] += x * a[l * n + j];
                        }
                    }
                }
            }
            p = next;
        }
    }
    traces
}

/// Sorted multisets equal entry by entry within `tol`.
pub fn same_multiset(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Lexicographically largest upper-triangle code over all relabellings.
pub fn canonical_code(g: &Graph) -> Vec<bool> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Vec<bool> = Vec::new();
    loop {
        let code: Vec<bool> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| g.has_edge(perm[u], perm[v]))
            .collect();
        if code > best {
            best = code;
        }
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return best;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}
