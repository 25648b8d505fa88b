use std::process::{Command, Output};

fn coalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coalg"))
        .args(args)
        .output()
        .expect("failed to launch coalg")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = coalg(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

#[test]
fn dist_glued_pair_is_zero() {
    assert_eq!(ok(&["dist", "l.T", "r.B"]), "0\n");
    assert_eq!(ok(&["dist", "l.B", "r.T"]), "1\n");
}

#[test]
fn dist_two_halvings() {
    assert_eq!(ok(&["dist", "aa.T", "aa.L"]), "1/2^2\n");
}

#[test]
fn dist_bad_letter_names_token() {
    let out = coalg(&["dist", "l.B", "x.B"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`x`"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn dist_alphabet_mismatch() {
    assert_eq!(coalg(&["dist", "l.B", "a.L"]).status.code(), Some(2));
}

#[test]
fn dist_of_streams_is_an_interval() {
    assert_eq!(
        ok(&["dist", "(l)*", "(l)*", "--depth", "4"]),
        "[0, 1/2^3]\n"
    );
}

#[test]
fn fold_and_equiv() {
    assert_eq!(ok(&["fold", "lr.T"]), "1/2^1\n");
    assert_eq!(ok(&["fold", "b.R"]), "(1/2^1, 0·√3/2)\n");
    assert_eq!(ok(&["equiv", "b.R", "c.L"]), "true\n");
    assert_eq!(ok(&["equiv", "b.R", "c.R"]), "false\n");
}

#[test]
fn approx_interval_near_three_eighths() {
    let text = ok(&["approx", "interval-e", "3/8", "6"]);
    assert_eq!(text, "word: llrrrr.T\nfold: 1/2^2\nerror: 1/2^6\n");
}

#[test]
fn approx_interval_at_one() {
    let text = ok(&["approx", "interval-e", "1", "4"]);
    assert_eq!(text, "word: rrrr.T\nfold: 1\nerror: 1/2^4\n");
}

#[test]
fn approx_triangle_apex() {
    let text = ok(&["approx", "triangle-e", "apex", "3"]);
    assert!(
        text.starts_with("word: aaa.T\ncoords: (1/2^1, 1·√3/2)\n"),
        "{text}"
    );
}

#[test]
fn approx_rejects_bad_inputs() {
    assert_eq!(
        coalg(&["approx", "no-such", "0", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        coalg(&["approx", "freyd-i", "3/2", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        coalg(&["approx", "triangle-e", "1/2,1", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn eval_algebras_and_mediating_maps() {
    assert_eq!(ok(&["eval", "bip-alg", "rr.T"]), "T\n");
    assert_eq!(ok(&["eval", "bip-alg", "rl.T"]), "B\n");
    assert_eq!(ok(&["eval", "trip-alg", "aa.T"]), "T\n");
    assert_eq!(
        ok(&["eval", "interval-e", "3/8"]),
        "stream: ll(r)*\nvalue: 1/2^2\n"
    );
    assert_eq!(
        ok(&["eval", "freyd-i", "5/8"]),
        "stream: rll(r)*\nvalue: 5/2^3\n"
    );
    assert_eq!(coalg(&["eval", "nothing", "x"]).status.code(), Some(2));
}

#[test]
fn verify_passing_suites() {
    let text = ok(&["verify", "oracle", "4"]);
    assert!(text.contains("oracle/bi: pass"), "{text}");
    assert!(text.ends_with("pass: 2 checks, 0 failed\n"), "{text}");

    let text = ok(&["verify", "lipschitz", "10"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("n=")).count(), 10);
    assert!(
        text.contains("n=10 ") && text.contains("ratio=2048"),
        "{text}"
    );
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    assert_eq!(coalg(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_over_cap_is_usage_error() {
    assert_eq!(
        coalg(&["verify", "isometry-ck", "40"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "tensor-maps", "60", "--seed", "7"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn lipschitz_table_to_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lip.csv");
    let text = ok(&[
        "table",
        "lipschitz",
        "--nmax",
        "5",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(text.starts_with("wrote 5 rows"), "{text}");

    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["n", "ratio_num", "ratio_exp"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    for (i, row) in rows.iter().enumerate() {
        let n = i + 1;
        assert_eq!(row[0].parse::<usize>().unwrap(), n);
        assert_eq!(row[1].parse::<u64>().unwrap(), 1 << (n + 1));
        assert_eq!(&row[2], "0");
    }
}

#[test]
fn claims_table_values() {
    let text = ok(&["table", "claims", "--nmax", "3", "--samples", "2"]);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        reader.headers().unwrap(),
        vec!["n", "x_num", "x_exp", "f_num", "f_exp"]
    );
    for row in reader.records().map(Result::unwrap) {
        let n: u32 = row[0].parse().unwrap();
        let f = (
            row[3].parse::<i64>().unwrap(),
            row[4].parse::<u32>().unwrap(),
        );
        assert!(f == (0, 0) || f == (1, n), "row {row:?}");
    }
}

#[test]
fn table_out_of_range_is_usage_error() {
    assert_eq!(
        coalg(&["table", "claims", "--nmax", "0"]).status.code(),
        Some(2)
    );
}
