//! Numerical checks of the matrix argument behind the `ρ(d, t)` threshold.
//!
//! A minimum cut `[S, S̄]` with `r` edges gives the two-block quotient `Q₀`,
//! whose second eigenvalue `d - r/s - r/s'` bounds `λ₂` from below. When
//! `r = t`, splitting off the cut endpoints gives the four-block tridiagonal
//! quotient `Q₁`; removing its trivial eigenvalue `d` leaves a 3×3 matrix
//! whose largest eigenvalue is pushed down, step by step, to `ρ(d, t)`.
//! Each step is checked here on concrete parameters.

mod sweep;

pub use sweep::{run_sweeps, write_sweep_csv, FamilyReport, SweepConfig};

use nalgebra::{DMatrix, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_rational::Rational64;

use crate::error::{invalid, Error, Result};
use crate::extremal::{rho_even, rho_odd};
use crate::partitions::{tridiagonal_reduce, Tridiagonal, TridiagonalRowSum};
use crate::verdict::Verdict;

/// Tolerance for comparisons between eigenvalues of small matrices.
pub const EIGEN_TOL: f64 = 1e-9;

fn ratio(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// The two-block quotient of a cut with `r` edges between sides of sizes
/// `s` and `s_prime` in a `d`-regular graph.
pub fn q0_matrix(d: usize, r: usize, s: usize, s_prime: usize) -> Result<[[Rational64; 2]; 2]> {
    if s == 0 || s_prime == 0 {
        return Err(invalid("cut sides must be non-empty"));
    }
    let (d, r, s, sp) = (d as i64, r as i64, s as i64, s_prime as i64);
    Ok([
        [ratio(d * s - r, s), ratio(r, s)],
        [ratio(r, sp), ratio(d * sp - r, sp)],
    ])
}

/// `d - r/s - r/s'`, the smaller eigenvalue of [`q0_matrix`].
pub fn q0_lambda2(d: usize, r: usize, s: usize, s_prime: usize) -> Result<f64> {
    if s == 0 || s_prime == 0 {
        return Err(invalid("cut sides must be non-empty"));
    }
    Ok(d as f64 - r as f64 / s as f64 - r as f64 / s_prime as f64)
}

/// For cuts smaller than `t`: `d - 2(t-1)/(d+1) > ρ_even(d, t)`, together
/// with the completed square `[4(t-1)/(d+1)]² - 16(t-1)/(d+1) + 8 > 0` that
/// drives it. The margin is the smaller of the two slacks.
pub fn case1_chain_check(d: usize, t: usize) -> Result<Verdict> {
    if t < 3 || t + 1 > d {
        return Err(invalid(format!("need 3 <= t <= d - 1, got d = {d}, t = {t}")));
    }
    let x = 4.0 * (t as f64 - 1.0) / (d as f64 + 1.0);
    let square = x * x - 4.0 * x + 8.0;
    let chain = d as f64 - 2.0 * (t as f64 - 1.0) / (d as f64 + 1.0) - rho_even(d, t)?;
    let margin = chain.min(square);
    if chain > 0.0 && square > 0.0 {
        Ok(Verdict::Holds { margin })
    } else {
        Ok(Verdict::Fails {
            margin,
            detail: format!("d = {d}, t = {t}: chain slack {chain}, square {square}"),
        })
    }
}

/// Parameters of the four-block partition used when the cut has exactly `t`
/// edges: `S = V₁ ∪ V₂`, `S̄ = V₃ ∪ V₄`, where `V₂` and `V₃` are the cut
/// endpoints on either side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseTwoParams {
    pub d: usize,
    pub t: usize,
    /// `|S|`.
    pub s: usize,
    /// `|S̄|`.
    pub s_prime: usize,
    /// `|V₂|`.
    pub alpha: usize,
    /// `|V₃|`.
    pub beta: usize,
    /// Edges inside `V₂`.
    pub k: usize,
    /// Edges inside `V₃`.
    pub l: usize,
}

impl CaseTwoParams {
    /// Checks the size relations and that every entry of `Q₁` is nonnegative.
    pub fn new(
        d: usize,
        t: usize,
        (s, s_prime): (usize, usize),
        (alpha, beta): (usize, usize),
        (k, l): (usize, usize),
    ) -> Result<CaseTwoParams> {
        let p = CaseTwoParams {
            d,
            t,
            s,
            s_prime,
            alpha,
            beta,
            k,
            l,
        };
        p.validate()?;
        Ok(p)
    }

    /// Sides of exactly `d + 1` vertices with `k`, `l` forced by the degree
    /// sum: `k = α(α-1)/2 - t/2`. Requires `t` even.
    pub fn tight(d: usize, t: usize, alpha: usize, beta: usize) -> Result<CaseTwoParams> {
        if t % 2 == 1 {
            return Err(Error::Infeasible(format!(
                "t = {t} is odd, so k = α(α-1)/2 - t/2 is not an integer"
            )));
        }
        let forced = |a: usize| {
            let twice = a * a.saturating_sub(1);
            if twice < t {
                Err(Error::Infeasible(format!("block of size {a} cannot absorb {t} cut edges")))
            } else {
                Ok((twice - t) / 2)
            }
        };
        CaseTwoParams::new(d, t, (d + 1, d + 1), (alpha, beta), (forced(alpha)?, forced(beta)?))
    }

    /// The same blocks and internal edge counts with different side sizes.
    pub fn with_sides(&self, s: usize, s_prime: usize) -> Result<CaseTwoParams> {
        let mut p = *self;
        p.s = s;
        p.s_prime = s_prime;
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Infeasible(msg));
        if self.d == 0 || self.t == 0 {
            return bad("d and t must be positive".into());
        }
        if self.alpha == 0 || self.alpha > self.t.min(self.s) {
            return bad(format!("alpha = {} outside [1, min(t, s)]", self.alpha));
        }
        if self.beta == 0 || self.beta > self.t.min(self.s_prime) {
            return bad(format!("beta = {} outside [1, min(t, s')]", self.beta));
        }
        if self.s <= self.alpha || self.s_prime <= self.beta {
            return bad("V₁ and V₄ must be non-empty".into());
        }
        let m = self.q1_matrix_unchecked();
        if let Some(x) = m.to_dense().iter().find(|x| **x < Rational64::from_integer(0)) {
            return bad(format!("Q₁ has the negative entry {x}"));
        }
        Ok(())
    }

    fn q1_matrix_unchecked(&self) -> Tridiagonal<Rational64> {
        let i = |x: usize| x as i64;
        let (d, t, s, sp) = (i(self.d), i(self.t), i(self.s), i(self.s_prime));
        let (a, b, k, l) = (i(self.alpha), i(self.beta), i(self.k), i(self.l));
        let out_a = d * a - 2 * k - t;
        let out_b = d * b - 2 * l - t;
        Tridiagonal {
            diag: vec![
                ratio(d * (s - a) - out_a, s - a),
                ratio(2 * k, a),
                ratio(2 * l, b),
                ratio(d * (sp - b) - out_b, sp - b),
            ],
            upper: vec![ratio(out_a, s - a), ratio(t, a), ratio(out_b, b)],
            lower: vec![ratio(out_a, a), ratio(t, b), ratio(out_b, sp - b)],
        }
    }

    /// The 4×4 quotient `Q₁` of `(V₁, V₂, V₃, V₄)`; every row sums to `d`.
    pub fn q1_matrix(&self) -> TridiagonalRowSum<Rational64> {
        TridiagonalRowSum::new(self.q1_matrix_unchecked()).expect("validated parameters")
    }

    /// `Q₁` with its trivial eigenvalue removed by the row-sum reduction.
    pub fn q1_reduced(&self) -> Tridiagonal<Rational64> {
        tridiagonal_reduce(&self.q1_matrix())
    }

    /// The reduced matrix written out entry by entry, independent of the
    /// general reduction.
    pub fn q1_reduced_explicit(&self) -> Tridiagonal<Rational64> {
        let i = |x: usize| x as i64;
        let (d, t, s, sp) = (i(self.d), i(self.t), i(self.s), i(self.s_prime));
        let (a, b, k, l) = (i(self.alpha), i(self.beta), i(self.k), i(self.l));
        let d_r = Rational64::from_integer(d);
        Tridiagonal {
            diag: vec![
                ratio(2 * k + t, a) - ratio(d * a - 2 * k - t, s - a),
                d_r - ratio(t, a) - ratio(t, b),
                ratio(2 * l + t, b) - ratio(d * b - 2 * l - t, sp - b),
            ],
            upper: vec![ratio(t, a), d_r - ratio(2 * l + t, b)],
            lower: vec![d_r - ratio(2 * k + t, a), ratio(t, b)],
        }
    }
}

fn check_blocks(t: usize, alpha: usize, beta: usize) -> Result<()> {
    if alpha == 0 || beta == 0 || alpha > t || beta > t {
        return Err(invalid(format!("need 1 <= alpha, beta <= t, got {alpha}, {beta}, t = {t}")));
    }
    Ok(())
}

/// The reduced matrix for sides of size `d + 1` with `k`, `l` forced:
/// corners `-1`, valid for any `1 <= α, β <= t`.
pub fn q1_prime_even(d: usize, t: usize, alpha: usize, beta: usize) -> Result<Tridiagonal<Rational64>> {
    check_blocks(t, alpha, beta)?;
    let i = |x: usize| x as i64;
    let (d, t, a, b) = (i(d), i(t), i(alpha), i(beta));
    let one = Rational64::from_integer(1);
    Tridiagonal::new(
        vec![-one, Rational64::from_integer(d) - ratio(t, a) - ratio(t, b), -one],
        vec![ratio(t, a), Rational64::from_integer(d - b + 1)],
        vec![Rational64::from_integer(d - a + 1), ratio(t, b)],
    )
}

/// The reduced matrix for sides of size `d + 2` with internal edge slack
/// expressed through `a_slack = 2ε/α` and `b_slack = 2ε'/β` in `[0, 1]`.
pub fn q1_prime_odd(
    d: usize,
    t: usize,
    alpha: usize,
    beta: usize,
    a_slack: f64,
    b_slack: f64,
) -> Result<Tridiagonal<f64>> {
    check_blocks(t, alpha, beta)?;
    if !(0.0..=1.0).contains(&a_slack) || !(0.0..=1.0).contains(&b_slack) {
        return Err(invalid("slack parameters must lie in [0, 1]"));
    }
    if alpha >= d + 2 || beta >= d + 2 {
        return Err(Error::Infeasible("blocks must leave room on each side".into()));
    }
    let (d, t, a, b) = (d as f64, t as f64, alpha as f64, beta as f64);
    Tridiagonal::new(
        vec![
            -2.0 + (d + 2.0) * a_slack / (d + 2.0 - a),
            d - t / a - t / b,
            -2.0 + (d + 2.0) * b_slack / (d + 2.0 - b),
        ],
        vec![t / a, d - b + 2.0 - b_slack],
        vec![d - a + 2.0 - a_slack, t / b],
    )
}

fn largest_root(shift: f64, constant: f64, d: usize, t: usize, alpha: usize, beta: usize) -> Result<f64> {
    check_blocks(t, alpha, beta)?;
    let (d, t, a, b) = (d as f64, t as f64, alpha as f64, beta as f64);
    let lin = d - shift - t / a - t / b;
    let disc = lin * lin + 4.0 * (constant * d + d * t / a + d * t / b - 2.0 * t);
    if disc < 0.0 {
        return Err(invalid(format!("negative discriminant {disc}")));
    }
    Ok((lin + disc.sqrt()) / 2.0)
}

/// Closed-form largest eigenvalue of [`q1_prime_even`]:
/// `(d - 1 - t/α - t/β + sqrt((d - 1 - t/α - t/β)² + 4(d + dt/α + dt/β - 2t))) / 2`.
pub fn largest_root_even(d: usize, t: usize, alpha: usize, beta: usize) -> Result<f64> {
    largest_root(1.0, 1.0, d, t, alpha, beta)
}

/// Closed-form largest eigenvalue of [`q1_prime_odd`] with zero slack:
/// `(d - 2 - t/α - t/β + sqrt((d - 2 - t/α - t/β)² + 4(2d + dt/α + dt/β - 2t))) / 2`.
pub fn largest_root_odd(d: usize, t: usize, alpha: usize, beta: usize) -> Result<f64> {
    largest_root(2.0, 2.0, d, t, alpha, beta)
}

/// `(d + c + t/a + t/b)² - (d - c - t/a - t/b)² - 4(c·d + dt/a + dt/b - 2t) - 8t`
/// with `c = 1` (even case) or `c = 2` (odd case). The expression is
/// identically zero; the monotonicity argument rests on it.
pub fn eight_t_residual(c: f64, d: f64, t: f64, a: f64, b: f64) -> f64 {
    let x = t / a + t / b;
    (d + c + x).powi(2) - (d - c - x).powi(2) - 4.0 * (c * d + d * t / a + d * t / b - 2.0 * t) - 8.0 * t
}

/// `g(x)`: the characteristic polynomial of [`q1_prime_odd`] with
/// `a_slack = 0`, in factored form.
pub fn case3_g(d: usize, t: usize, alpha: usize, beta: usize, b_slack: f64, x: f64) -> f64 {
    let (d, t, a, b) = (d as f64, t as f64, alpha as f64, beta as f64);
    let corner = x + 2.0 - (d + 2.0) * b_slack / (d + 2.0 - b);
    (x + 2.0) * ((x - d + t / a + t / b) * corner - (d - b + 2.0 - b_slack) * t / b)
        - t / a * (d - a + 2.0) * corner
}

/// `det(xI - m)` for a 3×3 tridiagonal matrix.
pub fn char_poly_3(m: &Tridiagonal<f64>, x: f64) -> f64 {
    let (a, u, l) = (&m.diag, &m.upper, &m.lower);
    (x - a[0]) * ((x - a[1]) * (x - a[2]) - u[1] * l[1]) - u[0] * l[0] * (x - a[2])
}

/// Slack in the odd-cut argument: raising `a_slack` or `b_slack` from zero
/// never lowers the largest eigenvalue of [`q1_prime_odd`], and `g(d-2) <= 0`.
///
/// The margin is the smaller of `λ₁(slack) - λ₁(0) + EIGEN_TOL` and
/// `-g(d - 2)`.
pub fn case3_perturbed_root_check(
    d: usize,
    t: usize,
    alpha: usize,
    beta: usize,
    a_slack: f64,
    b_slack: f64,
) -> Result<Verdict> {
    if t >= d {
        return Err(invalid(format!("need t < d, got d = {d}, t = {t}")));
    }
    let perturbed = q1_prime_odd(d, t, alpha, beta, a_slack, b_slack)?.eigenvalues()?.values()[0];
    let base = q1_prime_odd(d, t, alpha, beta, 0.0, 0.0)?.eigenvalues()?.values()[0];
    let g_at = case3_g(d, t, alpha, beta, b_slack, d as f64 - 2.0);
    let root_margin = perturbed - base + EIGEN_TOL;
    let margin = root_margin.min(-g_at);
    Ok(Verdict::from_margin(margin, || {
        format!(
            "d = {d}, t = {t}, alpha = {alpha}, beta = {beta}, A = {a_slack}, B = {b_slack}: \
             λ₁ {perturbed} vs {base}, g(d-2) = {g_at}"
        )
    }))
}

/// Largest real part among the eigenvalues of a square matrix given by rows.
pub fn largest_real_eigenvalue(rows: &[Vec<f64>]) -> Result<f64> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(invalid("matrix must be square and non-empty"));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(invalid("matrix entries must be finite"));
    }
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let mut schur = Schur::try_new(m.clone(), 1e-14, 10_000);
    // Francis steps can cycle on structured matrices; a random similarity
    // keeps the spectrum and breaks the structure.
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    for _ in 0..8 {
        if schur.is_some() {
            break;
        }
        let p = DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(i == j)) + rng.gen_range(-0.1..0.1));
        if let Some(inv) = p.clone().try_inverse() {
            schur = Schur::try_new(&p * &m * inv, 1e-14, 10_000);
        }
    }
    let schur = schur.ok_or_else(|| invalid("Schur decomposition did not converge"))?;
    Ok(schur.complex_eigenvalues().iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
}

/// Perron-Frobenius comparison: if `m1 >= m2` entrywise, then after shifting
/// both by `Δ = 1 + max |entry|` to make them nonnegative, `λ₁(m1) >= λ₁(m2)`.
pub fn perron_domination_check(m1: &[Vec<f64>], m2: &[Vec<f64>]) -> Result<Verdict> {
    let n = m1.len();
    if m2.len() != n || m1.iter().chain(m2).any(|r| r.len() != n) {
        return Err(invalid("matrices must be square and of the same order"));
    }
    for i in 0..n {
        for j in 0..n {
            if m1[i][j] - m2[i][j] < -1e-12 {
                return Err(Error::Infeasible(format!(
                    "entry ({i}, {j}) is not dominated: {} < {}",
                    m1[i][j], m2[i][j]
                )));
            }
        }
    }
    let delta = 1.0 + m1.iter().chain(m2).flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let shift = |m: &[Vec<f64>]| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| m[i][j] + if i == j { delta } else { 0.0 }).collect())
            .collect()
    };
    let l1 = largest_real_eigenvalue(&shift(m1))? - delta;
    let l2 = largest_real_eigenvalue(&shift(m2))? - delta;
    Ok(Verdict::from_margin(l1 - l2 + EIGEN_TOL, || {
        format!("λ₁ of the dominating matrix {l1} is below {l2}")
    }))
}

/// Distance between the closed form at `α = β = t` and `ρ` of the given parity.
pub fn endpoint_gap(d: usize, t: usize, odd: bool) -> Result<f64> {
    Ok(if odd {
        (largest_root_odd(d, t, t, t)? - rho_odd(d, t)?).abs()
    } else {
        (largest_root_even(d, t, t, t)? - rho_even(d, t)?).abs()
    })
}
