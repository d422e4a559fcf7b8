use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spectralcut"))
        .args(args)
        .env_remove("SPECTRALCUT_PROFILE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn help_matches_golden_file() {
    assert_eq!(stdout(&["--help"], ""), include_str!("golden/help.txt"));
    let help = stdout(&["--help"], "");
    for verb in ["build", "spectrum", "connectivity", "quotient", "threshold", "verify", "sweep", "table"] {
        assert!(help.contains(verb), "{verb}");
    }
}

#[test]
fn build_prints_the_extremal_graph() {
    let text = stdout(&["build", "--d", "5", "--t", "3", "--part", "G"], "");
    assert!(text.starts_with("14 35\n"));
    assert_eq!(text.lines().count(), 36);
    let h = stdout(&["build", "--d", "5", "--t", "3", "--part", "H"], "");
    assert!(h.starts_with("7 "));
}

#[test]
fn threshold_values() {
    assert_eq!(stdout(&["threshold", "--d", "5", "--t", "3"], ""), "rho=4.274917218\n");
    assert_eq!(stdout(&["threshold", "--d", "3", "--t", "1"], ""), "rho=2.701562119\npi=2.778457118\n");
    assert_eq!(
        stdout(&["threshold", "--d", "5", "--lambda2", "4.5"], ""),
        "guaranteed_edge_connectivity=2\n"
    );
}

#[test]
fn build_output_round_trips() {
    let g = stdout(&["build", "--d", "5", "--t", "3"], "");
    let spectrum = stdout(&["spectrum"], &g);
    let values: Vec<&str> = spectrum.lines().collect();
    assert_eq!(values.len(), 14);
    assert_eq!(&values[..2], ["5.000000000", "4.274917218"]);
    assert_eq!(
        stdout(&["connectivity"], &g),
        "edge_connectivity=3\nvertex_connectivity=3\nmin_cut_side=0,1,2,3,4,5,6\n"
    );
    let laplacian = stdout(&["spectrum", "--laplacian"], &g);
    assert_eq!(laplacian.lines().last(), Some("0.000000000"));
}

#[test]
fn reads_files_and_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.g6");
    std::fs::write(&path, "Dhc\n").unwrap();
    let text = stdout(&["connectivity", path.to_str().unwrap()], "");
    assert!(text.starts_with("edge_connectivity=2\nvertex_connectivity=2\n"));
}

#[test]
fn quotient_of_the_four_cycle() {
    let c4 = "4 4\n0 1\n1 2\n2 3\n0 3\n";
    assert_eq!(
        stdout(&["quotient", "--partition", "0,2;1,3"], c4),
        "equitable=yes\nmatrix:\n0 2\n2 0\neigenvalues:\n2.000000000\n-2.000000000\n"
    );
}

#[test]
fn random_builds_are_deterministic() {
    let args = ["build", "--part", "random", "--n", "12", "--d", "4", "--seed", "9"];
    let a = stdout(&args, "");
    assert_eq!(a, stdout(&args, ""));
    assert!(a.starts_with("12 24\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(run(&["build", "--d", "5"], "").status.code(), Some(1));
    assert_eq!(run(&["threshold", "--d", "5", "--t", "3", "--bogus"], "").status.code(), Some(1));
    // Odd t needs odd d.
    assert_eq!(run(&["build", "--d", "6", "--t", "3"], "").status.code(), Some(3));
    assert_eq!(run(&["spectrum"], "not a graph at all").status.code(), Some(3));
    assert_eq!(run(&["quotient", "--partition", "0;1"], "3 0\n").status.code(), Some(3));
}

#[test]
fn verify_small_profile_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("ci.cfg");
    std::fs::write(
        &profile,
        "nmax_exhaustive = 7\nsamples_per_cell = 2\nseed = 5\ndmax_extremal = 6\nnmax_random = 12\n",
    )
    .unwrap();
    let args = ["verify", "--profile", profile.to_str().unwrap(), "--jobs", "2"];
    let csv = stdout(&args, "");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("d,t,n,graph_id,lambda2,rho,kappa_prime,verdict"));
    assert!(lines.all(|l| l.split(',').count() == 8 && !l.ends_with("VIOLATION")));
    assert_eq!(csv, stdout(&args, ""));

    let out = dir.path().join("report.csv");
    let via_env = Command::new(env!("CARGO_BIN_EXE_spectralcut"))
        .args(["verify", "--profile", "/nonexistent", "--out", out.to_str().unwrap()])
        .env("SPECTRALCUT_PROFILE", &profile)
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), csv);

    std::fs::write(&profile, "samples = 3\n").unwrap();
    assert_eq!(run(&args, "").status.code(), Some(3));
}

#[test]
fn sweep_and_table_csv() {
    let sweep = stdout(&["sweep", "--dmax", "7", "--trials", "20"], "");
    assert!(sweep.starts_with("family,pass,fail,skip,worst_margin\n"));
    assert!(sweep.lines().skip(1).all(|l| l.split(',').nth(2) == Some("0")), "{sweep}");

    let table = stdout(&["table", "--dmax", "6"], "");
    assert!(table.starts_with("d,t,rho,pi,lambda2,kappa_prime\n"));
    assert!(table.contains("\n5,3,4.274917218,4.796963318,4.274917218,3\n"));
    assert!(table.ends_with("\n6,4,5.000000000,,5.000000000,4\n"));
}
