use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectralcut::connectivity::{edge_connectivity, vertex_connectivity};
use spectralcut::extremal::{build_g, build_h, guaranteed_edge_connectivity, pi, rho};
use spectralcut::harness::{
    random_regular, run_profile, verify_sharpness, with_jobs, Failure, Profile, ProfileRun, CSV_HEADER,
};
use spectralcut::partitions::{is_equitable, quotient_matrix, VertexPartition};
use spectralcut::prooflab::{run_sweeps, write_sweep_csv, SweepConfig};
use spectralcut::spectra::{adjacency_spectrum, format_value, laplacian_spectrum};
use spectralcut::{graph::read_graph, Graph};

const PROFILE_ENV: &str = "SPECTRALCUT_PROFILE";

#[derive(Parser)]
#[command(
    name = "spectralcut",
    version,
    about = "Spectral thresholds for edge-connectivity of regular graphs",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an extremal or random regular graph as an edge list
    Build(BuildArgs),
    /// Eigenvalues of a graph, one per line, largest first
    Spectrum(SpectrumArgs),
    /// Edge and vertex connectivity with a minimum edge cut
    Connectivity(GraphInput),
    /// Quotient matrix of a vertex partition
    Quotient(QuotientArgs),
    /// Threshold values for a degree and cut size
    Threshold(ThresholdArgs),
    /// Check the threshold theorem over the corpora of a profile (CSV)
    Verify(VerifyArgs),
    /// Numerical checks of the proof's inequalities (CSV)
    Sweep(SweepArgs),
    /// Second eigenvalue and edge-connectivity of every extremal graph (CSV)
    Table(TableArgs),
}

#[derive(Args)]
struct GraphInput {
    /// Edge-list or graph6 file; standard input when omitted
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Part {
    /// Two joined copies of H, d-regular with edge-connectivity t
    #[value(name = "G")]
    G,
    /// The building block with t vertices of degree d - 1
    #[value(name = "H")]
    H,
    /// A random d-regular graph on n vertices
    #[value(name = "random")]
    Random,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    d: usize,
    /// Required for G and H
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_enum, default_value = "G")]
    part: Part,
    /// Order of a random graph
    #[arg(long, required_if_eq("part", "random"))]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Laplacian instead of adjacency eigenvalues
    #[arg(long)]
    laplacian: bool,
}

#[derive(Args)]
struct QuotientArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Blocks separated by ';', vertices by ',' (e.g. "0,1;2,3")
    #[arg(long)]
    partition: String,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, required_unless_present = "lambda2")]
    t: Option<usize>,
    /// Report the edge-connectivity guaranteed by this second eigenvalue
    #[arg(long, allow_negative_numbers = true)]
    lambda2: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// key = value profile; overridden by $SPECTRALCUT_PROFILE
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where the edge list of an offending graph is written
    #[arg(long, default_value = "spectralcut-violation.txt")]
    dump: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 15)]
    dmax: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random tuples per randomized family
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 12)]
    dmax: usize,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Exit {
    Usage(String),
    Violation(String),
    Failure(String),
    Closed,
}

impl From<spectralcut::Error> for Exit {
    fn from(e: spectralcut::Error) -> Exit {
        Exit::Failure(e.to_string())
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Exit {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Exit::Closed;
        }
        Exit::Failure(e.to_string())
    }
}

type Outcome = Result<(), Exit>;

fn read_input(input: &GraphInput) -> Result<Graph, Exit> {
    let text = match &input.file {
        Some(path) => fs::read_to_string(path).map_err(|e| Exit::Failure(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(read_graph(&text)?)
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write + Send>, Exit> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            fs::File::create(path).map_err(|e| Exit::Failure(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn build(args: &BuildArgs) -> Outcome {
    let t = || args.t.ok_or_else(|| Exit::Usage("--t is required for --part G and H".into()));
    let g = match args.part {
        Part::G => build_g(args.d, t()?)?,
        Part::H => build_h(args.d, t()?)?,
        Part::Random => random_regular(args.n.unwrap_or_default(), args.d, args.seed)?,
    };
    write!(io::stdout(), "{}", g.to_edge_list())?;
    Ok(())
}

fn spectrum(args: &SpectrumArgs) -> Outcome {
    let g = read_input(&args.input)?;
    let s = if args.laplacian { laplacian_spectrum(&g)? } else { adjacency_spectrum(&g)? };
    write!(io::stdout(), "{s}")?;
    Ok(())
}

fn connectivity(input: &GraphInput) -> Outcome {
    let mut out = io::stdout().lock();
    let g = read_input(input)?;
    let (r, cert) = edge_connectivity(&g)?;
    let side: Vec<String> = cert.side.iter().map(|v| v.to_string()).collect();
    writeln!(out, "edge_connectivity={r}")?;
    writeln!(out, "vertex_connectivity={}", vertex_connectivity(&g)?)?;
    writeln!(out, "min_cut_side={}", side.join(","))?;
    Ok(())
}

fn quotient(args: &QuotientArgs) -> Outcome {
    let mut out = io::stdout().lock();
    let g = read_input(&args.input)?;
    let p = VertexPartition::parse(&args.partition)?;
    let q = quotient_matrix(&g, &p)?;
    writeln!(out, "equitable={}", if is_equitable(&g, &p)? { "yes" } else { "no" })?;
    writeln!(out, "matrix:")?;
    write!(out, "{q}")?;
    writeln!(out, "eigenvalues:")?;
    write!(out, "{}", q.eigenvalues()?)?;
    Ok(())
}

fn threshold(args: &ThresholdArgs) -> Outcome {
    let mut out = io::stdout().lock();
    if let Some(t) = args.t {
        writeln!(out, "rho={}", format_value(rho(args.d, t)?))?;
        if t == 1 && args.d % 2 == 1 {
            writeln!(out, "pi={}", format_value(pi(args.d)?))?;
        }
    }
    if let Some(l2) = args.lambda2 {
        writeln!(out, "guaranteed_edge_connectivity={}", guaranteed_edge_connectivity(args.d, l2)?)?;
    }
    Ok(())
}

fn load_profile(flag: Option<&Path>) -> Result<Profile, Exit> {
    let path = std::env::var_os(PROFILE_ENV).map(PathBuf::from).or_else(|| flag.map(Path::to_path_buf));
    match path {
        Some(p) => {
            let text = fs::read_to_string(&p).map_err(|e| Exit::Failure(format!("{}: {e}", p.display())))?;
            Ok(text.parse()?)
        }
        None => Ok(Profile::default()),
    }
}

fn dump_failure(path: &Path, failure: &Failure) -> io::Result<()> {
    let mut text = String::new();
    for line in failure.what.lines() {
        text.push_str(&format!("# {line}\n"));
    }
    text.push_str(&failure.graph.to_edge_list());
    fs::write(path, text)
}

fn verify(args: &VerifyArgs) -> Outcome {
    let profile = load_profile(args.profile.as_deref())?;
    let mut out = output(args.out.as_deref())?;
    writeln!(out, "{CSV_HEADER}")?;
    let run: ProfileRun = with_jobs(args.jobs, || {
        run_profile(&profile, |row| Ok(writeln!(out, "{}", row.csv_row())?))
    })??;
    out.flush()?;
    for (name, summary) in [("exhaustive", &run.exhaustive), ("random", &run.random), ("extremal", &run.extremal)] {
        eprintln!("[{name}]\n{summary}");
    }
    let unattained = run.sharpness.iter().filter(|r| r.claimed && !r.attained).count();
    eprintln!("[sharpness]\nrows={} unattained={unattained}", run.sharpness.len());
    if run.is_clean() {
        return Ok(());
    }
    let first = [&run.exhaustive, &run.random, &run.extremal]
        .into_iter()
        .find_map(|s| s.failures.first());
    match first {
        Some(f) => {
            dump_failure(&args.dump, f)?;
            Err(Exit::Violation(format!("{} (graph written to {})", f.what, args.dump.display())))
        }
        None => Err(Exit::Violation(format!("{unattained} extremal graphs miss their threshold"))),
    }
}

fn sweep(args: &SweepArgs) -> Outcome {
    let cfg = SweepConfig { dmax: args.dmax, seed: args.seed, random_trials: args.trials, ..SweepConfig::default() };
    let reports = with_jobs(args.jobs, || run_sweeps(&cfg))?;
    let mut out = output(args.out.as_deref())?;
    write_sweep_csv(&reports, &mut out)?;
    out.flush()?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.all_passed()).map(|r| r.family).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Exit::Violation(format!("failing families: {}", failed.join(", "))))
    }
}

fn table(args: &TableArgs) -> Outcome {
    let rows = with_jobs(args.jobs, || verify_sharpness(args.dmax))??;
    let mut out = output(args.out.as_deref())?;
    writeln!(out, "d,t,rho,pi,lambda2,kappa_prime")?;
    for r in &rows {
        let (d, t) = (r.report.d, r.report.t);
        let pi = if d % 2 == 1 { format_value(pi(d)?) } else { String::new() };
        writeln!(
            out,
            "{d},{t},{},{pi},{},{}",
            format_value(r.report.rho),
            format_value(r.report.lambda2),
            r.report.kappa_prime
        )?;
    }
    out.flush()?;
    let missed: Vec<String> = rows
        .iter()
        .filter(|r| r.claimed && !r.attained)
        .map(|r| format!("({}, {})", r.report.d, r.report.t))
        .collect();
    if missed.is_empty() {
        Ok(())
    } else {
        Err(Exit::Violation(format!("threshold not attained for {}", missed.join(" "))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Build(a) => build(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Connectivity(a) => connectivity(a),
        Command::Quotient(a) => quotient(a),
        Command::Threshold(a) => threshold(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Table(a) => table(a),
    };
    match outcome {
        Ok(()) | Err(Exit::Closed) => ExitCode::SUCCESS,
        Err(Exit::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Exit::Violation(msg)) => {
            eprintln!("VIOLATION: {msg}");
            ExitCode::from(2)
        }
        Err(Exit::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
