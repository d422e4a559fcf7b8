use crate::error::{invalid, Error, Result};

const SCAN_STEP: f64 = 1.0 / 64.0;
const BISECT_WIDTH: f64 = 1e-12;

/// Evaluates `coeffs[0] x^k + coeffs[1] x^(k-1) + ... + coeffs[k]` (Horner).
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// The largest real root of a polynomial given by its coefficients, highest
/// degree first.
///
/// Scans `[-R, R]` downward in steps of 1/64, where `R = 1 + max |c_i / c_0|`
/// bounds every root, and bisects the first bracket with a sign change to a
/// width below `1e-12`. A root of even multiplicity produces no sign change
/// and is not found.
pub fn largest_real_root(coeffs: &[f64]) -> Result<f64> {
    if coeffs.len() < 2 {
        return Err(invalid("polynomial must have degree at least 1"));
    }
    let lead = coeffs[0];
    if lead == 0.0 || !lead.is_finite() {
        return Err(invalid("leading coefficient must be finite and nonzero"));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(invalid("coefficients must be finite"));
    }
    let bound = 1.0 + coeffs[1..].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let f = |x: f64| eval_poly(coeffs, x);

    let mut hi = bound;
    let mut fhi = f(hi);
    while hi > -bound {
        let lo = (hi - SCAN_STEP).max(-bound);
        let flo = f(lo);
        if fhi == 0.0 {
            return Ok(hi);
        }
        if flo == 0.0 {
            return Ok(lo);
        }
        if flo.signum() != fhi.signum() {
            return Ok(bisect(&f, lo, hi, flo));
        }
        hi = lo;
        fhi = flo;
    }
    Err(Error::NoRootFound {
        lo: -bound,
        hi: bound,
    })
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    while hi - lo > BISECT_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots() {
        assert!((largest_real_root(&[1.0, 0.0, -1.0]).unwrap() - 1.0).abs() < 1e-11);
        for c in [-3.5, 0.0, 0.25, 17.0] {
            assert!((largest_real_root(&[1.0, -c]).unwrap() - c).abs() < 1e-11);
        }
        assert!((largest_real_root(&[2.0, -8.0]).unwrap() - 4.0).abs() < 1e-11);
    }

    #[test]
    fn cubic_for_degree_three() {
        // x^3 - 7x - 2 changes sign on [2.7, 2.8]; bisection there gives the oracle value.
        let p = [1.0, 0.0, -7.0, -2.0];
        assert!(eval_poly(&p, 2.7) < 0.0 && eval_poly(&p, 2.8) > 0.0);
        let (mut lo, mut hi) = (2.7, 2.8);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if eval_poly(&p, mid) < 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        let root = largest_real_root(&p).unwrap();
        assert!((root - lo).abs() < 1e-10);
        assert!((root - 2.778457118258389).abs() < 1e-10);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(largest_real_root(&[1.0]).is_err());
        assert!(largest_real_root(&[0.0, 1.0]).is_err());
        assert!(matches!(
            largest_real_root(&[1.0, 0.0, 1.0]),
            Err(Error::NoRootFound { .. })
        ));
    }
}
