use super::{SymMatrix, Spectrum, SpectrumOrder};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// All eigenvalues of `m` by cyclic Jacobi rotations, sorted non-increasing.
///
/// Iterates row-by-row sweeps over the strict upper triangle until the
/// off-diagonal Frobenius norm drops below `1e-12 * (‖m‖_F + 1)`.
pub fn sym_eigenvalues(m: &SymMatrix) -> Result<Spectrum> {
    let n = m.order();
    let mut a = m.entries().to_vec();
    let target = 1e-12 * (m.frobenius_sq().sqrt() + 1.0);

    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) >= target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }

    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok(Spectrum::new(values, SpectrumOrder::NonIncreasing))
}
