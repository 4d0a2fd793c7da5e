use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use squaretour::cli::{run, Outcome, EXIT_INVALID, EXIT_OK, EXIT_TOO_LARGE};
use squaretour::instances::{parse_instance, serialize_instance};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("squaretour-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn cli(args: &[&str]) -> Outcome {
    let mut argv = vec!["squaretour"];
    argv.extend_from_slice(args);
    run(argv, &mut std::io::empty())
}

fn donut_text(k: usize) -> String {
    let out = cli(&["donut", "--k", &k.to_string()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    out.stdout
}

#[test]
fn donut_into_tour() {
    let text = donut_text(2);
    let out = run(["squaretour", "tour"], &mut text.as_bytes());
    assert_eq!(out.code, EXIT_OK);
    let first = out.stdout.lines().next().unwrap();
    assert!(first.starts_with("cx=28/2 "), "{first}");
    assert!(first.ends_with(" bound=OK"), "{first}");
    assert!(out.stdout.lines().nth(1).unwrap().starts_with("cycle="));
}

#[test]
fn validate_reports_class_or_witness() {
    let donut = scratch("donut2.txt", &donut_text(2));
    let out = cli(&["validate", donut.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "SQUARE\n"));

    // square 0-1-2-3 with 1-paths 0-4-1 and 2-5-3
    let bad = "POINT 6\nE 0 1 1 1\nE 1 2 1 1\nE 2 3 1 1\nE 0 3 1 1\nE 0 4 2 1\nE 1 4 2 1\nE 2 5 2 1\nE 3 5 2 1\nEND\n";
    let out = cli(&["validate", scratch("bad.txt", bad).to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert_eq!(out.stdout, "INVALID cut x=2/2 side={0,1,4}\n");
}

#[test]
fn oracle_opt_and_size_cap() {
    let out = cli(&["oracle", "opt", scratch("opt2.txt", &donut_text(2)).to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "OPT=14\n"));
    let out = cli(&["oracle", "opt", scratch("opt4.txt", &donut_text(4)).to_str().unwrap()]);
    assert_eq!(out.code, EXIT_TOO_LARGE);
    assert!(out.stdout.is_empty());
}

#[test]
fn ham_prints_cost_and_cycle() {
    let out = cli(&["ham", scratch("ham2.txt", &donut_text(2)).to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("cost=14"));
    let cycle: Vec<usize> = lines.next().unwrap()["cycle=".len()..]
        .split(' ')
        .map(|t| t.parse().unwrap())
        .collect();
    let mut sorted = cycle.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..12).collect::<Vec<_>>());
}

#[test]
fn kotzig_prints_darts() {
    let bts = "BTS 2\nE 0 0 1\nE 1 0 1\nE 2 0 1\nE 3 0 1\nF 0 0.0 1.0 2.0 3.0\nF 1 0.1 1.1 2.1 3.1\nEND\n";
    let out = cli(&["kotzig", scratch("theta.txt", bts).to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout.split_whitespace().count(), 8);
    let out = cli(&["kotzig", scratch("not-bts.txt", &donut_text(2)).to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn random_square_is_byte_stable_and_round_trips() {
    let args = ["random-square", "--squares", "3", "--max-path", "2", "--seed", "7"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let again = serialize_instance(&parse_instance(&a.stdout).unwrap()).unwrap();
    assert_eq!(again, a.stdout);

    let path = std::env::temp_dir().join(format!("squaretour-cli-{}-out.txt", std::process::id()));
    let out = cli(&["random-square", "--squares", "3", "--max-path", "2", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a.stdout);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(cli(&["validate", "/nonexistent/file"]).code, EXIT_INVALID);
    assert_eq!(cli(&["donut", "--k", "1"]).code, EXIT_INVALID);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_INVALID);
    let garbage = scratch("garbage.txt", "POINT 3\nE 0 1 3 1\nEND\n");
    assert_eq!(cli(&["tour", garbage.to_str().unwrap()]).code, EXIT_INVALID);
}

#[test]
fn binary_pipeline() {
    let bin = env!("CARGO_BIN_EXE_squaretour");
    let donut = Command::new(bin).args(["donut", "--k", "3"]).output().unwrap();
    assert!(donut.status.success());
    let mut tour = Command::new(bin)
        .args(["tour", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    tour.stdin.take().unwrap().write_all(&donut.stdout).unwrap();
    let out = tour.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("cx=60/2 "), "{text}");

    let failed = Command::new(bin).args(["validate", "/nonexistent/file"]).output().unwrap();
    assert_eq!(failed.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&failed.stderr).starts_with("error:"));
}
