//! Spectral thresholds for edge-connectivity and the extremal graphs that
//! attain them.
//!
//! For `t >= 3`, a `d`-regular graph with `λ₂ < ρ(d, t)` has `κ' >= t + 1`,
//! where
//!
//! ```text
//! ρ(d, t) = (d - 4 + sqrt((d + 4)² - 8t)) / 2   for odd t
//! ρ(d, t) = (d - 3 + sqrt((d + 3)² - 8t)) / 2   for even t
//! ```
//!
//! The graphs `G_{d,t}` built here have `κ' = t` and `λ₂ = ρ(d, t)`, so the
//! threshold cannot be raised.

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::partitions::VertexPartition;
use crate::spectra::largest_real_root;

/// Slack used when comparing a measured `λ₂` against a threshold.
pub const THRESHOLD_TOL: f64 = 1e-9;

fn root_formula(shift: f64, disc: f64) -> Result<f64> {
    if disc < 0.0 {
        return Err(invalid(format!("negative discriminant {disc}")));
    }
    Ok((shift + disc.sqrt()) / 2.0)
}

fn check_degree(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(invalid(format!("degree must be at least 3, got {d}")));
    }
    Ok(d as f64)
}

/// `(d - 4 + sqrt((d + 4)² - 8t)) / 2`, the odd-`t` threshold.
pub fn rho_odd(d: usize, t: usize) -> Result<f64> {
    let df = check_degree(d)?;
    root_formula(df - 4.0, (df + 4.0).powi(2) - 8.0 * t as f64)
}

/// `(d - 3 + sqrt((d + 3)² - 8t)) / 2`, the even-`t` threshold.
pub fn rho_even(d: usize, t: usize) -> Result<f64> {
    let df = check_degree(d)?;
    root_formula(df - 3.0, (df + 3.0).powi(2) - 8.0 * t as f64)
}

/// `ρ(d, t)`, choosing the branch by the parity of `t`.
///
/// `t = 2` reproduces the classical bound for 3-edge-connectivity; `t = 1`
/// is computed by the odd formula although 2-edge-connectivity is governed by
/// [`pi`] instead.
///
/// ```
/// let r = spectralcut::extremal::rho(5, 3).unwrap();
/// assert!((r - (1.0 + 57f64.sqrt()) / 2.0).abs() < 1e-12);
/// ```
pub fn rho(d: usize, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(invalid("t must be at least 1"));
    }
    if t % 2 == 1 {
        rho_odd(d, t)
    } else {
        rho_even(d, t)
    }
}

/// Coefficients of `x³ - (d - 3)x² - (3d - 2)x - 2`.
pub fn pi_cubic(d: usize) -> [f64; 4] {
    let df = d as f64;
    [1.0, -(df - 3.0), -(3.0 * df - 2.0), -2.0]
}

/// The largest root of [`pi_cubic`]: for odd `d`, a `d`-regular graph with
/// `λ₂ < π(d)` is 2-edge-connected.
pub fn pi(d: usize) -> Result<f64> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(invalid(format!("pi(d) is defined for odd d >= 3, got {d}")));
    }
    largest_real_root(&pi_cubic(d))
}

/// `d - 2t / (d + 1)`: the older, weaker sufficient threshold for `κ' >= t + 1`.
pub fn cioaba_weak_bound(d: usize, t: usize) -> f64 {
    d as f64 - 2.0 * t as f64 / (d as f64 + 1.0)
}

/// Degree and cut size of an extremal construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThresholdParams {
    pub d: usize,
    pub t: usize,
}

impl ThresholdParams {
    /// Requires `3 <= t <= d - 1`, and `d` odd whenever `t` is odd.
    pub fn new(d: usize, t: usize) -> Result<ThresholdParams> {
        if t < 3 || t + 1 > d {
            return Err(invalid(format!("need 3 <= t <= d - 1, got d = {d}, t = {t}")));
        }
        if t % 2 == 1 && d.is_multiple_of(2) {
            return Err(invalid(format!(
                "t = {t} is odd, so d must be odd (a d-regular graph with an odd cut has odd d), got d = {d}"
            )));
        }
        Ok(ThresholdParams { d, t })
    }

    /// Whether `t <= d - 2`, where `λ₂(G_{d,t}) = ρ(d, t)` is guaranteed.
    pub fn is_sharp(&self) -> bool {
        self.t + 2 <= self.d
    }

    pub fn rho(&self) -> f64 {
        rho(self.d, self.t).expect("valid parameters have a real threshold")
    }

    /// Order of `H_{d,t}`: `d + 2` for odd `t`, `d + 1` for even `t`.
    pub fn h_order(&self) -> usize {
        if self.t % 2 == 1 {
            self.d + 2
        } else {
            self.d + 1
        }
    }

    /// Every valid pair with `d` in `dmin..=dmax`, ordered by `(d, t)`.
    pub fn all(dmin: usize, dmax: usize, sharp_only: bool) -> Vec<ThresholdParams> {
        (dmin..=dmax)
            .flat_map(|d| (3..d).map(move |t| (d, t)))
            .filter_map(|(d, t)| ThresholdParams::new(d, t).ok())
            .filter(|p| !sharp_only || p.is_sharp())
            .collect()
    }
}

/// `H_{d,t}`: the complement of a perfect matching on `d + 2 - t` vertices
/// joined with the complement of `C_t` (odd `t`), or `K_{d+1-t}` joined with
/// the complement of a perfect matching on `t` vertices (even `t`).
///
/// The `t` vertices of degree `d - 1` take the last `t` labels; all others
/// have degree `d`.
///
/// ```
/// use spectralcut::extremal::build_h;
///
/// let h = build_h(5, 3).unwrap();
/// assert_eq!(h.degree_sequence(), vec![5, 5, 5, 5, 4, 4, 4]);
/// ```
pub fn build_h(d: usize, t: usize) -> Result<Graph> {
    let p = ThresholdParams::new(d, t)?;
    let h = if t % 2 == 1 {
        Graph::matching_complement((d + 2 - t) / 2)?.join(&Graph::cycle(t)?.complement())
    } else {
        Graph::complete(d + 1 - t)?.join(&Graph::matching_complement(t / 2)?)
    };
    debug_assert_eq!(h.order(), p.h_order());
    Ok(h)
}

/// `G_{d,t}`: two copies of `H_{d,t}` with the `i`-th deficient vertex of the
/// first copy joined to the `i`-th deficient vertex of the second.
///
/// The result is `d`-regular with `κ' = t`.
pub fn build_g(d: usize, t: usize) -> Result<Graph> {
    let h = build_h(d, t)?;
    let m = h.order();
    let bridge = (m - t..m).map(|v| (v, v + m));
    h.disjoint_union(&h).with_edges(bridge)
}

/// The four blocks of `G_{d,t}`: full part of copy one, deficient part of
/// copy one, deficient part of copy two, full part of copy two.
pub fn canonical_partition(d: usize, t: usize) -> Result<VertexPartition> {
    let p = ThresholdParams::new(d, t)?;
    let m = p.h_order();
    VertexPartition::new(vec![
        (0..m - t).collect(),
        (m - t..m).collect(),
        (2 * m - t..2 * m).collect(),
        (m..2 * m - t).collect(),
    ])
}

/// The quotient of [`canonical_partition`] as integer neighbour counts.
pub fn expected_quotient(d: usize, t: usize) -> Result<[[i64; 4]; 4]> {
    ThresholdParams::new(d, t)?;
    let (d, t) = (d as i64, t as i64);
    // Neighbours of a deficient vertex inside its own part and in the full part.
    let (inner, outer) = if t % 2 == 1 {
        (t - 3, d + 2 - t)
    } else {
        (t - 2, d + 1 - t)
    };
    Ok([
        [d - t, t, 0, 0],
        [outer, inner, 1, 0],
        [0, 1, inner, outer],
        [0, 0, t, d - t],
    ])
}

/// The largest `k` that a `d`-regular graph with second eigenvalue `lambda2`
/// is guaranteed to reach as its edge-connectivity.
///
/// Combines the `ρ(d, t)` thresholds for `3 <= t <= d - 1`, the `π(d)` and
/// `ρ(d, 2)` thresholds for `t = 1, 2`, and the weak bound `d - 2t/(d + 1)`.
/// Every comparison keeps a margin of [`THRESHOLD_TOL`]. The floor is `1`,
/// since `λ₂ < d` already forces connectivity.
pub fn guaranteed_edge_connectivity(d: usize, lambda2: f64) -> Result<usize> {
    let df = check_degree(d)?;
    if !lambda2.is_finite() || lambda2 >= df {
        return Err(invalid(format!(
            "lambda2 = {lambda2} is not below d = {d}, so the graph need not be connected"
        )));
    }
    let below = |threshold: f64| lambda2 < threshold - THRESHOLD_TOL;
    let mut best = 1;
    for t in 1..d {
        if below(cioaba_weak_bound(d, t)) {
            best = best.max(t + 1);
        }
    }
    if d % 2 == 1 && below(pi(d)?) {
        best = best.max(2);
    }
    for t in 2..d {
        if below(rho(d, t)?) {
            best = best.max(t + 1);
        }
    }
    Ok(best)
}
