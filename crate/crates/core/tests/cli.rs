use std::fs;
use std::process::Command;

use quandlekit::cli::run;
use quandlekit::quandle::{parse_table_file, write_table_file};
use quandlekit::report::parse_kv;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quandlekit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn kv(args: &[&str]) -> (i32, Vec<(String, String)>) {
    let mut full = args.to_vec();
    full.extend(["--format", "kv"]);
    let r = cli(&full);
    (r.code, parse_kv(&r.stdout).unwrap())
}

fn value<'a>(pairs: &'a [(String, String)], key: &str) -> &'a str {
    pairs
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .unwrap_or_else(|| panic!("missing key {key}"))
}

fn values<'a>(pairs: &'a [(String, String)], key: &str) -> Vec<&'a str> {
    pairs
        .iter()
        .filter(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .collect()
}

#[test]
fn idempotents_of_r3() {
    let (code, pairs) = kv(&[
        "idempotents",
        "--quandle",
        "R3",
        "--ring",
        "z",
        "--bound",
        "3",
        "--expect-count",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(values(&pairs, "idempotent"), ["a0", "a1", "a2"]);
}

#[test]
fn maximal_quandles_of_r3_mod_two() {
    let (code, pairs) = kv(&[
        "maximal-quandles",
        "--quandle",
        "R3",
        "--ring",
        "zmod:2",
        "--expect-count",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        values(&pairs, "maximal_quandle"),
        [
            "{a0 + a1 + a2} ~ T1",
            "{a0, a1, a2} ~ R3",
            "{a0 + a1, a0 + a2, a1 + a2} ~ R3"
        ]
    );
}

#[test]
fn cw_r4_writes_verified_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cw.cert");
    let (code, pairs) = kv(&[
        "cw",
        "--quandle",
        "R4",
        "--samples",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&pairs, "verified"), "100");
    assert_eq!(value(&pairs, "cw"), "1");
    let (code, pairs) = kv(&["verify-certificate", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(value(&pairs, "certificates"), "100");
    assert_eq!(value(&pairs, "verdict"), "accepted");
}

#[test]
fn expectation_mismatch_exits_two() {
    let r = cli(&["idempotents", "--quandle", "R3", "--bound", "3", "--expect-count", "4"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("check failed"), "{}", r.stderr);
    // The report is still printed.
    assert!(r.stdout.contains("count: 3"));
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(cli(&["idempotents", "--quandle", "R3", "--bogus"]).code, 1);
    assert_eq!(cli(&["no-such-verb"]).code, 1);
    assert_eq!(cli(&["idempotents"]).code, 1);
    let r = cli(&["predicates", "--quandle", "Q7"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error:"));
    assert_eq!(cli(&["idempotents", "--quandle", "R3", "--ring", "zmod:0"]).code, 1);
    assert_eq!(cli(&["verify", "--table", "/nonexistent/table.txt"]).code, 1);
    assert_eq!(cli(&["idempotents", "--quandle", "R3", "--format", "json"]).code, 1);
}

#[test]
fn help_and_version_exit_zero() {
    let r = cli(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("verify-certificate"));
    assert_eq!(cli(&["--version"]).code, 0);
}

#[test]
fn names_are_case_insensitive() {
    let (code, pairs) = kv(&["predicates", "--quandle", "conj(s3)"]);
    assert_eq!(code, 0);
    assert_eq!(value(&pairs, "quandle"), "Conj(S3)");
    assert_eq!(value(&pairs, "order"), "6");
}

#[test]
fn make_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["Cs4", "R5", "Conj(S3)", "T3", "Alex(Z5,2)"] {
        let path = dir.path().join("q.txt");
        let p = path.to_str().unwrap();
        assert_eq!(cli(&["make", "--quandle", name, "--out", p]).code, 0);
        let text = fs::read_to_string(&path).unwrap();
        let q = parse_table_file(&text).unwrap();
        assert_eq!(write_table_file(&q), text, "{name}");
        let (code, pairs) = kv(&["verify", "--table", p]);
        assert_eq!(code, 0);
        assert_eq!(value(&pairs, "valid"), "true");
        assert_eq!(value(&pairs, "isomorphic_to"), name);
        // Without --out the table goes to standard output unchanged.
        assert_eq!(cli(&["make", "--quandle", name]).stdout, text);
    }
}

#[test]
fn labels_survive_make() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.txt");
    let p = path.to_str().unwrap();
    assert_eq!(
        cli(&["make", "--quandle", "R3", "--labels", "p q r", "--out", p]).code,
        0
    );
    let q = parse_table_file(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(q.labels(), ["p", "q", "r"]);
    let (code, pairs) = kv(&["idempotents", "--table", p, "--bound", "1"]);
    assert_eq!(code, 0);
    assert_eq!(values(&pairs, "idempotent"), ["p", "q", "r"]);
}

#[test]
fn invalid_table_fails_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "2\n0 0\n0 1\n").unwrap();
    let r = cli(&["verify", "--table", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("valid: false"));
    // A file that is not a table at all is an input error.
    fs::write(&path, "two\n").unwrap();
    assert_eq!(cli(&["verify", "--table", path.to_str().unwrap()]).code, 1);
}

#[test]
fn certificates_from_every_emitter_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let cases: Vec<(Vec<String>, String)> = vec![
        (
            vec!["zero-divisor".into(), "--quandle".into(), "R4".into()],
            out("zd.cert"),
        ),
        (
            vec!["zero-divisor".into(), "--quandle".into(), "T2".into()],
            out("zd2.cert"),
        ),
        (
            vec!["idempotents".into(), "--quandle".into(), "Cs4".into()],
            out("id.cert"),
        ),
        (
            vec!["automorphisms".into(), "--quandle".into(), "R3".into()],
            out("aut.cert"),
        ),
        (
            vec![
                "commutators".into(),
                "--quandle".into(),
                "R4".into(),
                "--element".into(),
                "a0 - a1".into(),
            ],
            out("cl.cert"),
        ),
        (
            vec![
                "cw".into(),
                "--quandle".into(),
                "Cs4".into(),
                "--samples".into(),
                "5".into(),
            ],
            out("cw.cert"),
        ),
        (
            vec![
                "cw".into(),
                "--quandle".into(),
                "T3".into(),
                "--ring".into(),
                "q".into(),
                "--samples".into(),
                "5".into(),
            ],
            out("cwq.cert"),
        ),
    ];
    for (args, path) in cases {
        let mut argv: Vec<&str> = args.iter().map(String::as_str).collect();
        argv.extend(["--out", &path]);
        let r = cli(&argv);
        assert_eq!(r.code, 0, "{argv:?}: {}{}", r.stdout, r.stderr);
        let v = cli(&["verify-certificate", &path]);
        assert_eq!(v.code, 0, "{argv:?}: {}", v.stderr);
        assert!(v.stdout.contains("verdict: accepted"));
    }
}

#[test]
fn corrupted_decompositions_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cl.cert");
    let p = path.to_str().unwrap();
    let r = cli(&["commutators", "--quandle", "R4", "--element", "a0 - a1", "--out", p]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read(&path).unwrap();
    let good = String::from_utf8(text.clone()).unwrap();
    let mut offset = 0;
    let mut tried = 0;
    for line in good.split_inclusive('\n') {
        if line.starts_with("term = ") || line.starts_with("element = ") {
            for k in offset..offset + line.len() - 1 {
                for replacement in *b"7x " {
                    if text[k] == replacement {
                        continue;
                    }
                    let mut bad = text.clone();
                    bad[k] = replacement;
                    fs::write(&path, &bad).unwrap();
                    let v = cli(&["verify-certificate", p]);
                    assert_eq!(
                        v.code,
                        2,
                        "byte {k} -> {}: {}",
                        replacement as char,
                        String::from_utf8_lossy(&bad)
                    );
                    tried += 1;
                }
            }
        }
        offset += line.len();
    }
    assert!(tried > 30);
}

#[test]
fn reports_are_byte_identical_for_equal_seeds() {
    let commands: [&[&str]; 5] = [
        &["zero-divisor", "--quandle", "CoreZ", "--samples", "300", "--seed", "9"],
        &["zero-divisor", "--quandle", "FQ2", "--samples", "50", "--seed", "9"],
        &[
            "identities",
            "--quandle",
            "Cs4",
            "--trials",
            "200",
            "--seed",
            "4",
            "--power",
        ],
        &["cw", "--quandle", "R4", "--samples", "20", "--seed", "5"],
        &["order", "--quandle", "CoreZ", "--samples", "500", "--seed", "2"],
    ];
    for args in commands {
        let a = cli(args);
        let b = cli(args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    // Omitting the seed means seed 0.
    let a = cli(&["cw", "--quandle", "R4", "--samples", "7"]);
    let b = cli(&["cw", "--quandle", "R4", "--samples", "7", "--seed", "0"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kv_reports_keep_stable_keys() {
    let (code, pairs) = kv(&["lie-analysis", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(values(&pairs, "l2_basis"), ["x1 - x2", "x2 - x3", "x3 - x4"]);
    assert_eq!(value(&pairs, "l2_rank"), "3");
    assert_eq!(value(&pairs, "j2_equals_j"), "true");
    let keys: Vec<&str> = pairs.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(keys[0], "command");
}

#[test]
fn automorphism_counts() {
    let (code, pairs) = kv(&["automorphisms", "--quandle", "R3", "--expect-count", "6"]);
    assert_eq!(code, 0);
    assert_eq!(values(&pairs, "matrix").len(), 6);
    assert_eq!(kv(&["automorphisms", "--quandle", "Cs4", "--expect-count", "2"]).0, 0);
    let (code, pairs) = kv(&[
        "automorphisms",
        "--quandle",
        "R4",
        "--closure",
        "--expect-group-order",
        "8",
        "--relations",
    ]);
    assert_eq!(code, 0, "{pairs:?}");
}

#[test]
fn orders_and_unique_products() {
    let (code, pairs) = kv(&["order", "--quandle", "CoreZ", "--samples", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(value(&pairs, "left_violations"), "0");
    assert_ne!(value(&pairs, "right_violations"), "0");
    let (code, pairs) = kv(&["unique-products", "--quandle", "CoreZ", "--a", "0,1,2", "--b", "5,6"]);
    assert_eq!(code, 0);
    assert_eq!(value(&pairs, "unique"), "8, 9, 11, 12");
    let (_, pairs) = kv(&["order", "--quandle", "T3"]);
    assert_ne!(value(&pairs, "right_order"), "none");
    assert_eq!(value(&pairs, "left_order"), "none");
}

#[test]
fn list_catalog_has_one_line_per_entry() {
    let r = cli(&["list-catalog"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 1 + quandlekit::catalog::entries().len());
    assert!(r.stdout.contains("Cs4: order 3;"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_quandlekit");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(
        status(&["idempotents", "--quandle", "R3", "--bound", "3", "--expect-count", "3"]),
        Some(0)
    );
    assert_eq!(
        status(&["idempotents", "--quandle", "R3", "--bound", "3", "--expect-count", "2"]),
        Some(2)
    );
    assert_eq!(status(&["idempotents", "--quandle", "R3", "--nope"]), Some(1));
}
