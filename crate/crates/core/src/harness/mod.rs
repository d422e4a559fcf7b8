//! Corpus generation and end-to-end checks of the spectral threshold theorem.
//!
//! Every graph in a corpus is checked once: `λ₂`, `κ'` with a minimum cut,
//! the two-block quotient bound on that cut, the side-size bound for cuts
//! below the degree, and (for small graphs) Fiedler's `μ₂ <= κ`. Each
//! threshold `t` then yields one [`ThresholdReport`] row.

mod enumerate;
mod generate;
mod profile;

use std::fmt;
use std::io::Write;
use std::ops::ControlFlow;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::connectivity::{check_cut_side_sizes, edge_connectivity, vertex_connectivity, CutCertificate};
use crate::error::{invalid, Error, Result};
use crate::extremal::{build_g, rho, ThresholdParams};
use crate::graph::Graph;
use crate::prooflab::q0_lambda2;
use crate::spectra::{format_value, lambda2, lambda2_fast, mu2};
use crate::verdict::Verdict;

pub use enumerate::{count_regular, enumerate_regular, for_each_regular, Labelling, MAX_ENUMERATION_ORDER};
pub use generate::{derive_seed, random_regular};
pub use profile::Profile;

/// Tolerance separating tight, consistent and violating rows.
pub const REPORT_TOL: f64 = 1e-9;
/// Largest order for which Fiedler's inequality is checked.
pub const FIEDLER_MAX_ORDER: usize = 12;
/// Failures kept in a [`Summary`]; later ones are only counted.
pub const MAX_RECORDED_FAILURES: usize = 16;

const BATCH: usize = 2048;

/// Header of the report CSV.
pub const CSV_HEADER: &str = "d,t,n,graph_id,lambda2,rho,kappa_prime,verdict";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowVerdict {
    Consistent,
    /// `λ₂` equals the threshold to within [`REPORT_TOL`].
    Tight,
    /// `λ₂` is below the threshold yet `κ' <= t`.
    Violation,
}

impl fmt::Display for RowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowVerdict::Consistent => "consistent",
            RowVerdict::Tight => "tight",
            RowVerdict::Violation => "VIOLATION",
        })
    }
}

/// One graph measured against one threshold `ρ(d, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub d: usize,
    pub t: usize,
    pub n: usize,
    pub graph_id: String,
    pub lambda2: f64,
    pub rho: f64,
    pub kappa_prime: usize,
    pub verdict: RowVerdict,
}

impl ThresholdReport {
    pub fn classify(lambda2: f64, rho: f64, kappa_prime: usize, t: usize) -> RowVerdict {
        if lambda2 < rho - REPORT_TOL && kappa_prime <= t {
            RowVerdict::Violation
        } else if (lambda2 - rho).abs() <= REPORT_TOL {
            RowVerdict::Tight
        } else {
            RowVerdict::Consistent
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.d,
            self.t,
            self.n,
            self.graph_id,
            format_value(self.lambda2),
            format_value(self.rho),
            self.kappa_prime,
            self.verdict
        )
    }
}

/// First 8 bytes of the SHA-256 of the canonical edge list, in hex.
pub fn graph_id(g: &Graph) -> String {
    Sha256::digest(g.to_edge_list().as_bytes())[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Everything measured on a single regular graph.
#[derive(Debug, Clone)]
pub struct GraphCheck {
    pub d: usize,
    pub n: usize,
    pub graph_id: String,
    pub lambda2: f64,
    pub kappa_prime: usize,
    pub certificate: CutCertificate,
    /// `λ₂ - (d - r/s - r/s')` for the minimum cut found.
    pub chain_margin: f64,
    pub cut_sides: Verdict,
    /// `κ - μ₂`, when the graph is small, connected and not complete.
    pub fiedler_margin: Option<f64>,
}

/// Runs every per-graph check on a regular graph with at least two vertices.
pub fn check_graph(g: &Graph) -> Result<GraphCheck> {
    let d = g.is_regular().ok_or(Error::NotRegular)?;
    let n = g.order();
    let lambda2 = lambda2_fast(g)?;
    let (kappa_prime, certificate) = edge_connectivity(g)?;
    let (s, s_bar) = certificate.side_sizes(n);
    let chain_margin = lambda2 - q0_lambda2(d, kappa_prime, s, s_bar)?;
    let cut_sides = check_cut_side_sizes(g, &certificate)?;
    let fiedler_margin = if n <= FIEDLER_MAX_ORDER && !g.is_complete() && kappa_prime > 0 {
        Some(vertex_connectivity(g)? as f64 - mu2(g)?)
    } else {
        None
    };
    Ok(GraphCheck {
        d,
        n,
        graph_id: graph_id(g),
        lambda2,
        kappa_prime,
        certificate,
        chain_margin,
        cut_sides,
        fiedler_margin,
    })
}

impl GraphCheck {
    /// Thresholds checked when none are given: `2 <= t <= d - 1`.
    pub fn default_thresholds(&self) -> Vec<usize> {
        (2..self.d).collect()
    }

    /// One row per `t`; thresholds outside `1..d` are skipped.
    pub fn reports(&self, ts: &[usize]) -> Result<Vec<ThresholdReport>> {
        ts.iter()
            .filter(|&&t| t >= 1 && t < self.d)
            .map(|&t| {
                let rho = rho(self.d, t)?;
                Ok(ThresholdReport {
                    d: self.d,
                    t,
                    n: self.n,
                    graph_id: self.graph_id.clone(),
                    lambda2: self.lambda2,
                    rho,
                    kappa_prime: self.kappa_prime,
                    verdict: ThresholdReport::classify(self.lambda2, rho, self.kappa_prime, t),
                })
            })
            .collect()
    }
}

/// A graph that failed some check, with a description.
#[derive(Debug, Clone)]
pub struct Failure {
    pub graph: Graph,
    pub what: String,
}

/// Aggregated outcome of a corpus run.
#[derive(Debug, Clone)]
pub struct Summary {
    pub graphs: u64,
    pub rows: u64,
    pub consistent: u64,
    pub tight: u64,
    pub violations: u64,
    pub chain_failures: u64,
    pub cut_checks: u64,
    pub cut_failures: u64,
    pub fiedler_checks: u64,
    pub fiedler_failures: u64,
    pub worst_chain_margin: f64,
    pub worst_cut_margin: f64,
    pub worst_fiedler_margin: f64,
    pub failures: Vec<Failure>,
}

impl Default for Summary {
    fn default() -> Summary {
        Summary {
            graphs: 0,
            rows: 0,
            consistent: 0,
            tight: 0,
            violations: 0,
            chain_failures: 0,
            cut_checks: 0,
            cut_failures: 0,
            fiedler_checks: 0,
            fiedler_failures: 0,
            worst_chain_margin: f64::INFINITY,
            worst_cut_margin: f64::INFINITY,
            worst_fiedler_margin: f64::INFINITY,
            failures: Vec::new(),
        }
    }
}

impl Summary {
    /// No violating row and no failed side check.
    pub fn is_clean(&self) -> bool {
        self.violations + self.chain_failures + self.cut_failures + self.fiedler_failures == 0
    }

    fn record(&mut self, g: &Graph, what: String) {
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure { graph: g.clone(), what });
        }
    }

    fn absorb(&mut self, g: &Graph, check: &GraphCheck, rows: &[ThresholdReport]) {
        self.graphs += 1;
        self.rows += rows.len() as u64;
        for row in rows {
            match row.verdict {
                RowVerdict::Consistent => self.consistent += 1,
                RowVerdict::Tight => self.tight += 1,
                RowVerdict::Violation => {
                    self.violations += 1;
                    self.record(
                        g,
                        format!(
                            "lambda2 = {:.9} < rho({}, {}) = {:.9} but kappa' = {}",
                            row.lambda2, row.d, row.t, row.rho, row.kappa_prime
                        ),
                    );
                }
            }
        }
        self.worst_chain_margin = self.worst_chain_margin.min(check.chain_margin);
        if check.chain_margin < -REPORT_TOL {
            self.chain_failures += 1;
            self.record(g, format!("quotient bound on the minimum cut misses by {}", -check.chain_margin));
        }
        if let Some(margin) = check.cut_sides.margin() {
            self.cut_checks += 1;
            self.worst_cut_margin = self.worst_cut_margin.min(margin);
        }
        if let Verdict::Fails { detail, .. } = &check.cut_sides {
            self.cut_failures += 1;
            self.record(g, format!("minimum cut sides too small: {detail}"));
        }
        if let Some(margin) = check.fiedler_margin {
            self.fiedler_checks += 1;
            self.worst_fiedler_margin = self.worst_fiedler_margin.min(margin);
            if margin < -REPORT_TOL {
                self.fiedler_failures += 1;
                self.record(g, format!("mu2 exceeds vertex connectivity by {}", -margin));
            }
        }
    }

    /// Combines two summaries; counts add and margins take the minimum.
    pub fn merge(&mut self, other: Summary) {
        self.graphs += other.graphs;
        self.rows += other.rows;
        self.consistent += other.consistent;
        self.tight += other.tight;
        self.violations += other.violations;
        self.chain_failures += other.chain_failures;
        self.cut_checks += other.cut_checks;
        self.cut_failures += other.cut_failures;
        self.fiedler_checks += other.fiedler_checks;
        self.fiedler_failures += other.fiedler_failures;
        self.worst_chain_margin = self.worst_chain_margin.min(other.worst_chain_margin);
        self.worst_cut_margin = self.worst_cut_margin.min(other.worst_cut_margin);
        self.worst_fiedler_margin = self.worst_fiedler_margin.min(other.worst_fiedler_margin);
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

fn fmt_margin(x: f64) -> String {
    if x.is_finite() {
        format_value(x)
    } else {
        "NA".into()
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graphs={} rows={}", self.graphs, self.rows)?;
        writeln!(
            f,
            "consistent={} tight={} violations={}",
            self.consistent, self.tight, self.violations
        )?;
        writeln!(
            f,
            "quotient_bound failures={} worst_margin={}",
            self.chain_failures,
            fmt_margin(self.worst_chain_margin)
        )?;
        writeln!(
            f,
            "cut_sides checks={} failures={} worst_margin={}",
            self.cut_checks,
            self.cut_failures,
            fmt_margin(self.worst_cut_margin)
        )?;
        write!(
            f,
            "fiedler checks={} failures={} worst_margin={}",
            self.fiedler_checks,
            self.fiedler_failures,
            fmt_margin(self.worst_fiedler_margin)
        )
    }
}

type RowSink<'a> = Box<dyn FnMut(&ThresholdReport) -> Result<()> + 'a>;

/// Checks graphs in parallel batches while keeping results in input order.
pub struct Verifier<'a> {
    thresholds: Option<Vec<usize>>,
    sink: Option<RowSink<'a>>,
    summary: Summary,
}

impl<'a> Verifier<'a> {
    /// `thresholds = None` checks `2 <= t <= d - 1` for each graph.
    pub fn new(thresholds: Option<Vec<usize>>) -> Verifier<'a> {
        Verifier { thresholds, sink: None, summary: Summary::default() }
    }

    /// Receives every row, in corpus order.
    pub fn with_sink(mut self, sink: impl FnMut(&ThresholdReport) -> Result<()> + 'a) -> Verifier<'a> {
        self.sink = Some(Box::new(sink));
        self
    }

    /// Writes every row as CSV, starting with [`CSV_HEADER`].
    pub fn with_csv(self, mut out: impl Write + 'a) -> Result<Verifier<'a>> {
        writeln!(out, "{CSV_HEADER}")?;
        Ok(self.with_sink(move |row| Ok(writeln!(out, "{}", row.csv_row())?)))
    }

    /// Builds each item into a graph and checks it; building runs in
    /// parallel too.
    pub fn run_batch<T: Send>(
        &mut self,
        items: Vec<T>,
        build: impl Fn(T) -> Result<Graph> + Sync,
    ) -> Result<()> {
        let thresholds = self.thresholds.as_deref();
        let results: Vec<Result<(Graph, GraphCheck, Vec<ThresholdReport>)>> = items
            .into_par_iter()
            .map(|item| {
                let g = build(item)?;
                let check = check_graph(&g)?;
                let rows = match thresholds {
                    Some(ts) => check.reports(ts)?,
                    None => check.reports(&check.default_thresholds())?,
                };
                Ok((g, check, rows))
            })
            .collect();
        for result in results {
            let (g, check, rows) = result?;
            self.summary.absorb(&g, &check, &rows);
            if let Some(sink) = self.sink.as_mut() {
                for row in &rows {
                    sink(row)?;
                }
            }
        }
        Ok(())
    }

    pub fn run<I: IntoIterator<Item = Graph>>(&mut self, corpus: I) -> Result<()> {
        let mut iter = corpus.into_iter().peekable();
        while iter.peek().is_some() {
            let batch: Vec<Graph> = iter.by_ref().take(BATCH).collect();
            self.run_batch(batch, Ok)?;
        }
        Ok(())
    }

    /// All connected `d`-regular graphs with `3 <= d < n <= nmax`, one or
    /// more labelled representatives per isomorphism class. Degrees above
    /// `(n - 1) / 2` are reached as complements of sparser graphs.
    pub fn run_exhaustive(&mut self, nmax: usize) -> Result<()> {
        if nmax > MAX_ENUMERATION_ORDER {
            return Err(invalid(format!("exhaustive corpus supports n <= {MAX_ENUMERATION_ORDER}")));
        }
        for n in 4..=nmax {
            for d in (3..n).filter(|d| n * d % 2 == 0) {
                let (base, flip) = if 2 * d > n - 1 { (n - 1 - d, true) } else { (d, false) };
                let mut batch = Vec::new();
                let mut failure = None;
                let _ = for_each_regular(n, base, Labelling::Normalized, &mut |g| {
                    let g = if flip { g.complement() } else { g.clone() };
                    if g.is_connected() {
                        batch.push(g);
                    }
                    if batch.len() == BATCH {
                        if let Err(e) = self.run_batch(std::mem::take(&mut batch), Ok) {
                            failure = Some(e);
                            return ControlFlow::Break(());
                        }
                    }
                    ControlFlow::Continue(())
                })?;
                if let Some(e) = failure {
                    return Err(e);
                }
                self.run_batch(batch, Ok)?;
            }
        }
        Ok(())
    }

    /// `samples` random `d`-regular graphs for every cell
    /// `dmin <= d <= dmax`, `d < n <= nmax`, `n * d` even.
    pub fn run_random(&mut self, nmax: usize, dmin: usize, dmax: usize, samples: usize, seed: u64) -> Result<()> {
        for d in dmin..=dmax {
            for n in (d + 1..=nmax).filter(|n| n * d % 2 == 0) {
                for start in (0..samples).step_by(BATCH) {
                    let items: Vec<usize> = (start..samples.min(start + BATCH)).collect();
                    self.run_batch(items, |i| {
                        random_regular(n, d, derive_seed(seed, &[n as u64, d as u64, i as u64]))
                    })?;
                }
            }
        }
        Ok(())
    }

    /// Every extremal graph `G_{d,t}` with `4 <= d <= dmax`.
    pub fn run_extremal(&mut self, dmax: usize) -> Result<()> {
        let params = ThresholdParams::all(4, dmax, false);
        self.run_batch(params, |p| build_g(p.d, p.t))
    }

    pub fn summary(&self) -> &Summary {
        &self.summary
    }

    pub fn finish(self) -> Summary {
        self.summary
    }
}

/// Checks every graph of `corpus` against the given thresholds (or
/// `2 <= t <= d - 1` when `None`).
///
/// ```
/// use spectralcut::harness::verify_main_theorem;
/// use spectralcut::Graph;
///
/// let corpus = vec![Graph::complete(6).unwrap(), Graph::matching_complement(4).unwrap()];
/// let summary = verify_main_theorem(corpus, None).unwrap();
/// assert!(summary.is_clean());
/// assert_eq!(summary.graphs, 2);
/// ```
pub fn verify_main_theorem<I: IntoIterator<Item = Graph>>(corpus: I, thresholds: Option<Vec<usize>>) -> Result<Summary> {
    let mut v = Verifier::new(thresholds);
    v.run(corpus)?;
    Ok(v.finish())
}

/// One extremal graph compared with its threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessRow {
    pub report: ThresholdReport,
    /// Whether sharpness is claimed for this pair (`t <= d - 2`).
    pub claimed: bool,
    /// `|λ₂ - ρ| < 1e-9` and `κ' = t`.
    pub attained: bool,
}

/// Measures `G_{d,t}` for every valid pair with `4 <= d <= dmax`, including
/// `t = d - 1`, where attainment is reported but not claimed.
pub fn verify_sharpness(dmax: usize) -> Result<Vec<SharpnessRow>> {
    if dmax < 4 {
        return Err(invalid(format!("dmax must be at least 4, got {dmax}")));
    }
    ThresholdParams::all(4, dmax, false)
        .into_par_iter()
        .map(|p| {
            let g = build_g(p.d, p.t)?;
            let lambda2 = lambda2(&g)?;
            let (kappa_prime, _) = edge_connectivity(&g)?;
            let rho = p.rho();
            Ok(SharpnessRow {
                report: ThresholdReport {
                    d: p.d,
                    t: p.t,
                    n: g.order(),
                    graph_id: graph_id(&g),
                    lambda2,
                    rho,
                    kappa_prime,
                    verdict: ThresholdReport::classify(lambda2, rho, kappa_prime, p.t),
                },
                claimed: p.is_sharp(),
                attained: (lambda2 - rho).abs() < REPORT_TOL && kappa_prime == p.t,
            })
        })
        .collect()
}

pub fn write_report_csv<'r>(
    rows: impl IntoIterator<Item = &'r ThresholdReport>,
    mut out: impl Write,
) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_row())?;
    }
    Ok(())
}

/// Runs `f` on a pool of `jobs` threads (`0` picks the default).
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Results of a full profile run.
#[derive(Debug, Clone)]
pub struct ProfileRun {
    pub exhaustive: Summary,
    pub random: Summary,
    pub extremal: Summary,
    pub sharpness: Vec<SharpnessRow>,
}

impl ProfileRun {
    /// All corpora clean and every claimed sharpness row attained.
    pub fn is_clean(&self) -> bool {
        self.exhaustive.is_clean()
            && self.random.is_clean()
            && self.extremal.is_clean()
            && self.sharpness.iter().all(|r| !r.claimed || r.attained)
    }
}

/// Runs the exhaustive, random and extremal corpora of `profile`, passing
/// every row to `sink` in a fixed order.
pub fn run_profile(profile: &Profile, mut sink: impl FnMut(&ThresholdReport) -> Result<()>) -> Result<ProfileRun> {
    let mut exhaustive = Verifier::new(None).with_sink(&mut sink);
    exhaustive.run_exhaustive(profile.nmax_exhaustive)?;
    let exhaustive = exhaustive.finish();

    let mut random = Verifier::new(None).with_sink(&mut sink);
    random.run_random(
        profile.nmax_random,
        profile.dmin_random,
        profile.dmax_random,
        profile.samples_per_cell,
        profile.seed,
    )?;
    let random = random.finish();

    let mut extremal = Verifier::new(None).with_sink(&mut sink);
    extremal.run_extremal(profile.dmax_extremal)?;
    let extremal = extremal.finish();

    let sharpness = if profile.dmax_extremal >= 4 { verify_sharpness(profile.dmax_extremal)? } else { Vec::new() };
    Ok(ProfileRun { exhaustive, random, extremal, sharpness })
}
