//! End-to-end CLI checks: subcommands, report formats, and exit codes.

use std::process::{Command, Output};

fn funmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_funmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn trace_reports_anchor_cardinality() {
    let out = funmat(&["trace", "--gen", "kron-laplacian:10", "--f", "inv", "--k", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, "n,k,trace,delta11,max_submatrix,bound_estimate,wall_ms");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "100");
    // k²/2 + k + 1 at k = 8
    assert_eq!(row[3], "41");
}

#[test]
fn element_matches_library_value() {
    let out = funmat(&[
        "element", "--gen", "tridiag:-1,2,120", "--f", "exp", "--k", "10", "--i", "60", "--j",
        "61",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let cli_value: f64 = row[4].parse().unwrap();

    let mut col = vec![0.0; 120];
    col[0] = 2.0;
    col[1] = -1.0;
    let t = funmat::matstore::ToeplitzMatrix::symmetric(col).unwrap();
    let a = t.to_diag_matrix(0.0);
    let (lib_value, _) =
        funmat::approx::element_approx(&a, &funmat::densefun::ScalarFunction::Exp, 60, 61, 10)
            .unwrap();
    assert!((cli_value - lib_value).abs() < 1e-12 * lib_value.abs().max(1.0));
}

#[test]
fn json_format_is_well_formed() {
    let out = funmat(&[
        "toeplitz", "--gen", "tridiag:1,-2,300", "--f", "exp", "--k", "8", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["rows"].is_array());
    let row = &doc["rows"][0];
    assert_eq!(row["n"], 300);
    assert!(row["delta_max"].as_i64().unwrap() > 0);
}

#[test]
fn diag_emits_one_row_per_index() {
    let out = funmat(&[
        "diag", "--gen", "banded-random:40,2,7", "--f", "exp", "--k", "6", "--batch", "8",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 41); // header + 40 records
}

#[test]
fn closedform_sweep_reports_small_errors() {
    let out = funmat(&[
        "closedform", "--symbol", "4,-1", "--f", "exp", "--n", "60", "--step", "25",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let err: f64 = cells[2].parse().unwrap();
        let n: usize = cells[0].parse().unwrap();
        if n > 50 {
            assert!(err < 1e-6, "n={n} err={err}");
        }
    }
}

#[test]
fn decay_bound_dominates_in_report() {
    let out = funmat(&[
        "decay-bound", "--gen", "toeplitz-random:60,4,11", "--f", "exp", "--norm", "0.5",
        "--tau", "3", "--k", "0..30", "--scale", "-1",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut checked = 0;
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let measured: f64 = cells[1].parse().unwrap();
        let bound: f64 = cells[3].parse().unwrap();
        assert!(measured <= bound, "{line}");
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn oracle_reports_error_columns() {
    let out = funmat(&[
        "oracle", "--engine", "banded", "--gen", "tridiag:-1,2,200", "--f", "exp", "--k", "10",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let err: f64 = row[3].parse().unwrap(); // 2-norm error in the value slot
    assert!(err < 1e-6, "error column {err}");
}

#[test]
fn matrix_market_file_round_trip() {
    let dir = std::env::temp_dir().join("funmat-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("small.mtx");
    std::fs::write(
        &path,
        "%%MatrixMarket matrix coordinate real symmetric\n\
         3 3 5\n\
         1 1 4.0\n\
         2 2 4.0\n\
         3 3 4.0\n\
         2 1 -1.0\n\
         3 2 -1.0\n",
    )
    .unwrap();
    let out = funmat(&["trace", "--mtx", path.to_str().unwrap(), "--f", "inv", "--k", "4"]);
    assert!(out.status.success());
    // eigenvalues of tridiag(-1,4,-1) at n=3: 4, 4 ± sqrt(2)
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let trace: f64 = row[2].parse().unwrap();
    let expect = 1.0 / 4.0 + 1.0 / (4.0 - 2f64.sqrt()) + 1.0 / (4.0 + 2f64.sqrt());
    assert!((trace - expect).abs() < 1e-9, "trace {trace} vs {expect}");
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let strip_wall = |text: String| -> Vec<String> {
        // wall_ms is the last column; everything before it must be identical
        text.lines()
            .map(|l| {
                let mut cells: Vec<&str> = l.split(',').collect();
                cells.pop();
                cells.join(",")
            })
            .collect()
    };
    let args = ["trace", "--gen", "kron-laplacian:12", "--f", "sqrt", "--k", "10"];
    let one = funmat(&[&args[..], &["--threads", "1"]].concat());
    let many = funmat(&[&args[..], &["--threads", "8"]].concat());
    assert!(one.status.success() && many.status.success());
    assert_eq!(strip_wall(stdout(&one)), strip_wall(stdout(&many)));
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    // usage: no input source
    let out = funmat(&["trace", "--f", "inv", "--k", "4"]);
    assert_eq!(out.status.code(), Some(1));
    // usage: unknown subcommand (clap)
    let out = funmat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    // input: missing file
    let out = funmat(&["trace", "--mtx", "/nonexistent/x.mtx", "--f", "inv", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // numerical: log of an indefinite non-Hermitian matrix has no kernel
    let out = funmat(&[
        "element", "--gen", "toeplitz-random:30,3,5", "--f", "log", "--k", "4", "--i", "1",
        "--j", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
