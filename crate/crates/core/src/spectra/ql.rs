use super::SymMatrix;
use crate::error::{Error, Result};

const MAX_ITER: usize = 60;

/// Eigenvalues (unsorted) by Householder reduction to tridiagonal form and
/// implicit QL with Wilkinson shifts.
pub fn sym_eigenvalues_ql(m: &SymMatrix) -> Result<Vec<f64>> {
    let n = m.order();
    let mut a = m.entries().to_vec();
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    householder(&mut a, n, &mut diag, &mut off);
    tridiagonal_ql(&mut diag, &mut off)?;
    Ok(diag)
}

// Reduces the symmetric matrix in `a` to tridiagonal form. On return `diag`
// holds the diagonal and `off[i]` the subdiagonal entry (i, i-1), off[0] = 0.
fn householder(a: &mut [f64], n: usize, diag: &mut [f64], off: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i * n + k].abs()).sum();
            if scale == 0.0 {
                off[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                off[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    off[j] = g / h;
                    f += off[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = off[j] - hh * f;
                    off[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * off[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            off[i] = a[i * n + l];
        }
        diag[i] = h;
    }
    off[0] = 0.0;
    for (i, d) in diag.iter_mut().enumerate() {
        *d = a[i * n + i];
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// subdiagonal `off[1..]` (`off[0]` ignored). Results are left in `diag`.
pub(crate) fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        off[i - 1] = off[i];
    }
    off[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == MAX_ITER {
                return Err(Error::NoConvergence { sweeps: iter });
            }
            iter += 1;

            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::sym_eigenvalues;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn agrees_with_jacobi_on_random_symmetric_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..25);
            let mut e = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let x = rng.gen_range(-5.0..5.0);
                    e[i * n + j] = x;
                    e[j * n + i] = x;
                }
            }
            let m = SymMatrix::new(n, e).unwrap();
            let mut ql = sym_eigenvalues_ql(&m).unwrap();
            ql.sort_by(|a, b| b.total_cmp(a));
            let jac = sym_eigenvalues(&m).unwrap().descending();
            for (a, b) in ql.iter().zip(&jac) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn handles_already_diagonal_and_repeated_values() {
        let m = SymMatrix::identity(5).unwrap();
        assert_eq!(sym_eigenvalues_ql(&m).unwrap(), vec![1.0; 5]);
        let k = crate::graph::Graph::complete(30).unwrap();
        let mut v = sym_eigenvalues_ql(&SymMatrix::adjacency(&k).unwrap()).unwrap();
        v.sort_by(|a, b| b.total_cmp(a));
        assert!((v[0] - 29.0).abs() < 1e-10);
        assert!(v[1..].iter().all(|x| (x + 1.0).abs() < 1e-10));
    }
}
