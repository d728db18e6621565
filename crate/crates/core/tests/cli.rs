use std::path::PathBuf;
use std::process::Command;

use treeconn::cli::run;
use treeconn::constructions::{build_extremal, figure_fixture};
use treeconn::io::{emit_graph6, parse_certificate, parse_edge_list, parse_graph6};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn treeconn(args: &[&str], stdin: &str) -> Out {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("treeconn").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn kappa3_on_fixture_files() {
    let r = treeconn(&["kappa3", &fixture("figure1.edges")], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("kappa3 = 2"));
    let r = treeconn(&["kappa3", &fixture("figure2.edges")], "");
    assert_eq!(r.stdout, "kappa3 = 1, witness {0,1,2}\n");
}

#[test]
fn kappa3_reads_stdin_and_graph6() {
    let text = std::fs::read_to_string(fixture("figure6.edges")).unwrap();
    assert!(treeconn(&["kappa3", "-"], &text)
        .stdout
        .starts_with("kappa3 = 2"));
    let r = treeconn(&["kappa3", "--format", "g6"], "GhcHKC\nBw\n");
    assert_eq!(r.stdout.lines().count(), 2);
    assert!(r.stdout.lines().nth(1).unwrap().starts_with("kappa3 = 1"));
}

#[test]
fn kappa3_parse_errors_name_the_line() {
    let r = treeconn(&["kappa3"], "0 1\n1 2\nfoo\n");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
    assert_eq!(treeconn(&["kappa3", "/no/such/file"], "").code, 2);
}

#[test]
fn kappa3_over_limit_is_an_input_error() {
    let r = treeconn(&["kappa3", "--limit", "8", &fixture("figure1.edges")], "");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("limit"), "{}", r.stderr);
}

#[test]
fn certificates_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let dot = dir.path().join("g.dot");
    let r = treeconn(
        &[
            "kappa3",
            &fixture("figure5.edges"),
            "--certificates",
            cert.to_str().unwrap(),
            "--dot",
            dot.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (g, result) = parse_certificate(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(g, figure_fixture(5).unwrap());
    assert_eq!(result.kappa, 2);
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert!(dot.contains("penwidth"));
    assert_eq!(dot.matches(" -- ").count(), 12);
}

#[test]
fn json_output_is_a_certificate() {
    let r = treeconn(&["kappa3", "--json", &fixture("figure6.edges")], "");
    let (_, result) = parse_certificate(&r.stdout).unwrap();
    assert_eq!(result.kappa, 2);
}

#[test]
fn kappa_set_prints_trees() {
    let r = treeconn(
        &["kappa-set", &fixture("figure1.edges"), "--set", "1,3,8"],
        "",
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("kappa(S) = 2, set {1,3,8}"));
    assert_eq!(
        r.stdout.lines().filter(|l| l.starts_with("tree ")).count(),
        2
    );
    let r = treeconn(
        &["kappa-set", &fixture("figure2.edges"), "--set", "0,1,3"],
        "",
    );
    assert!(r.stdout.starts_with("kappa(S) = 1"));
}

#[test]
fn kappa_set_rejects_bad_sets() {
    for set in ["0,0,1", "0,1,99", "0,x,2"] {
        let r = treeconn(&["kappa-set", &fixture("figure1.edges"), "--set", set], "");
        assert_eq!(r.code, 2, "{set}");
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn construct_commands() {
    let r = treeconn(&["construct", "h", "--k", "3"], "");
    let g = parse_edge_list(&r.stdout).unwrap();
    assert_eq!((g.order(), g.size()), (15, 18));

    let r = treeconn(&["construct", "extremal", "--n", "9"], "");
    assert_eq!(
        parse_edge_list(&r.stdout).unwrap(),
        figure_fixture(5).unwrap()
    );

    let r = treeconn(&["construct", "figure", "--id", "6", "--format", "g6"], "");
    assert_eq!(r.stdout.lines().count(), 1);
    assert_eq!(
        parse_graph6(r.stdout.trim()).unwrap(),
        figure_fixture(6).unwrap()
    );

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.g6");
    let r = treeconn(
        &[
            "construct",
            "extremal",
            "--n",
            "13",
            "--format",
            "g6",
            "--output",
            path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let written = std::fs::read_to_string(path).unwrap();
    assert_eq!(
        written.trim(),
        emit_graph6(&build_extremal(13).unwrap()).unwrap()
    );
}

#[test]
fn construct_smooth() {
    let r = treeconn(
        &[
            "construct",
            "smooth",
            "--vertex",
            "9",
            &fixture("figure1.edges"),
        ],
        "",
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let g = parse_edge_list(&r.stdout).unwrap();
    assert!(g.is_isomorphic(&figure_fixture(5).unwrap()).unwrap());
    let r = treeconn(
        &[
            "construct",
            "smooth",
            "--vertex",
            "0",
            &fixture("figure6.edges"),
        ],
        "",
    );
    assert_eq!(r.code, 2);
}

#[test]
fn construct_rejects_bad_parameters() {
    for args in [
        &["construct", "h", "--k", "0"][..],
        &["construct", "extremal", "--n", "3"],
        &["construct", "figure", "--id", "7"],
        &["construct", "h"],
    ] {
        assert_eq!(treeconn(args, "").code, 2, "{args:?}");
    }
}

#[test]
fn verify_campaigns() {
    let r = treeconn(&["verify", "theorem1", "--max-k", "3"], "");
    assert_eq!(r.code, 0, "{}", r.stdout);
    for row in [
        "n=15 e=18",
        "n=14 e=17",
        "n=13 e=16",
        "n=12 e=15",
        "n=11 e=14",
    ] {
        assert!(r.stdout.contains(row), "{row}");
    }
    let r = treeconn(&["verify", "lemma5", "--samples", "200", "--seed", "7"], "");
    assert_eq!(r.code, 0);
    let r = treeconn(&["verify", "lemma4", "--json"], "");
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(treeconn(&["verify", "lemma3"], "").code, 0);
    assert_eq!(treeconn(&["verify", "lemma9"], "").code, 2);
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let strip = |s: String| {
        s.lines()
            .filter(|l| !l.starts_with("elapsed"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let runs: Vec<String> = ["1", "4", "8"]
        .iter()
        .map(|p| strip(treeconn(&["verify", "lemma4", "--parallel", p], "").stdout))
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

fn six_figures() -> String {
    (1..=6)
        .map(|id| emit_graph6(&figure_fixture(id).unwrap()).unwrap() + "\n")
        .collect()
}

#[test]
fn filter_selects_kappa_two_figures() {
    let input = six_figures();
    let r = treeconn(&["filter", "--kappa3", "2"], &input);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = input.lines().collect();
    assert_eq!(
        r.stdout,
        format!("{}\n{}\n{}\n", lines[0], lines[4], lines[5])
    );
    assert!(r.stderr.contains("examined 6 matched 3 errors 0"));
    let r = treeconn(&["filter", "--max-kappa3", "1"], &input);
    assert_eq!(r.stdout.lines().count(), 3);
    let r = treeconn(&["filter", "--kappa3", "5"], &input);
    assert_eq!((r.code, r.stdout.as_str()), (0, ""));
}

#[test]
fn filter_corrupt_lines() {
    let input = format!("{}garbage line\n", six_figures());
    let r = treeconn(&["filter", "--kappa3", "2"], &input);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 3);
    assert!(r.stderr.contains("line 7"));
    assert_eq!(
        treeconn(&["filter", "--kappa3", "2", "--strict"], &input).code,
        2
    );
    assert_eq!(
        treeconn(&["filter", "--kappa3", "2", "--min-kappa3", "1"], &input).code,
        2
    );
}

#[test]
fn help_and_usage_exit_codes() {
    let r = treeconn(&["--help"], "");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("kappa3"));
    assert_eq!(treeconn(&[], "").code, 2);
    assert_eq!(treeconn(&["kappa3", "--format", "xml"], "").code, 2);
    assert_eq!(
        treeconn(&["kappa3", "--parallel", "0"], "0 1\n1 2\n").code,
        2
    );
}

#[test]
fn binary_honours_limit_environment() {
    let exe = env!("CARGO_BIN_EXE_treeconn");
    let out = Command::new(exe)
        .args(["kappa3", &fixture("figure1.edges")])
        .env("TREECONN_SOLVER_LIMIT", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(exe)
        .args(["kappa3", &fixture("figure1.edges"), "--limit", "12"])
        .env("TREECONN_SOLVER_LIMIT", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("kappa3 = 2"));
}
