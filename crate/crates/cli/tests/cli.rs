use std::fs;
use std::process::{Command, Output};

use kn_core::MultiPoly;

fn kndeform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kndeform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn canonical(text: &str) -> String {
    text.parse::<MultiPoly>().unwrap().to_canonical()
}

#[test]
fn gamma_table_has_one_row_per_pair() {
    let o = kndeform(&["tables", "--what", "gamma", "--route", "closed", "--window", "4", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,m,gamma,route");
    assert_eq!(lines.len(), 1 + 81);
    let pairs: Vec<(i64, i64)> = lines[1..]
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f[3], "closed");
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    let mut sorted = pairs.clone();
    sorted.sort();
    assert_eq!(pairs, sorted);
    assert!(lines.contains(&"2,-2,-2,closed"));
    assert!(lines.contains(&"-3,3,3,closed"));
}

#[test]
fn laurent_products_are_graded() {
    let o = kndeform(&["tables", "--what", "products", "--spec", "laurent", "--window", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 25);
    for row in rows {
        let f: Vec<i64> = row.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[2], f[0] + f[1]);
        assert_eq!(f[3], 1);
    }
}

#[test]
fn elliptic_product_of_odd_generators() {
    let o = kndeform(&["tables", "--what", "products", "--spec", "elliptic", "--window", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("1,1,")).collect();
    assert_eq!(
        rows,
        [
            format!("1,1,-2,{}", canonical("(e1-e2)*(2*e1+e2)")),
            format!("1,1,0,{}", canonical("3*e1")),
            "1,1,2,1".to_string(),
        ]
    );
}

#[test]
fn json_tables_nest_coefficients() {
    let o = kndeform(&["tables", "--what", "products", "--window", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let one_one = rows.iter().find(|r| r["n"] == 1 && r["m"] == 1).unwrap();
    let coeffs = one_one["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 3);
    assert_eq!(coeffs[0]["degree"], -2);
    assert_eq!(coeffs[0]["poly"], canonical("(e1-e2)*(2*e1+e2)"));
}

#[test]
fn bracket_table_uses_one_based_indices() {
    let o = kndeform(&["tables", "--what", "brackets", "--spec", "laurent", "--window", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("a,n,b,m,c,j,coefficient\n"));
    // [h A_0, e A_1] = 2 e A_1 and [e A_1, f A_-1] = h A_0
    assert!(text.lines().any(|l| l == "1,0,2,1,2,1,2"));
    assert!(text.lines().any(|l| l == "2,1,3,-1,1,0,1"));
}

#[test]
fn gamma_routes_agree_in_tables() {
    let body = |route: &str| {
        let o = kndeform(&["tables", "--what", "gamma", "--route", route, "--window", "5", "--order", "18"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        stdout(&o).replace(route, "ROUTE")
    };
    let closed = body("closed");
    assert_eq!(closed, body("residue"));
    assert_eq!(closed, body("recursion"));
}

#[test]
fn output_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = kndeform(&[
            "tables", "--what", "brackets", "--spec", "line-s", "--window", "2", "--format", "json",
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        assert!(o.stdout.is_empty());
        fs::read(path).unwrap()
    };
    let first = run("a.json");
    assert!(!first.is_empty());
    assert_eq!(first, run("b.json"));
}

#[test]
fn suites_pass() {
    let cases: &[&[&str]] = &[
        &["verify", "--suite", "gamma-agreement", "--window", "10", "--order", "28"],
        &["verify", "--suite", "coboundary", "--window", "8"],
        &["verify", "--suite", "jacobi", "--spec", "threepoint", "--lie", "sl2", "--window", "4"],
        &["verify", "--suite", "associativity", "--window", "4"],
        &["verify", "--suite", "gamma-properties", "--window", "4", "--p", "1 + e1*e2"],
        &["verify", "--suite", "harrison", "--window", "6"],
        &["verify", "--suite", "rescale", "--window", "6"],
        &["verify", "--suite", "degeneration", "--window", "5"],
        &["verify", "--suite", "grading", "--window", "5"],
    ];
    for args in cases {
        let o = kndeform(args);
        assert_eq!(code(&o), 0, "{args:?}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).starts_with("PASS"), "{args:?}");
    }
}

#[test]
fn verify_json_report() {
    let o = kndeform(&["verify", "--suite", "grading", "--spec", "line-infinity", "--window", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["witness"].is_null());
    assert_eq!(v["checked"], 1);
}

fn write_lie(dir: &tempfile::TempDir, h_e: i64) -> String {
    let path = dir.path().join("lie.json");
    let body = serde_json::json!({
        "dim": 3,
        "entries": [
            {"a": 1, "b": 2, "c": 2, "value": h_e},
            {"a": 1, "b": 3, "c": 3, "value": -2},
            {"a": 2, "b": 3, "c": 1, "value": "1"},
        ]
    });
    fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn lie_algebra_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_lie(&dir, 2);
    let o = kndeform(&["verify", "--suite", "jacobi", "--spec", "elliptic", "--lie", &good, "--window", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn corrupted_structure_constant_exits_two_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_lie(&dir, 3);
    let o = kndeform(&["verify", "--suite", "jacobi", "--lie", &bad, "--window", "2"]);
    assert_eq!(code(&o), 2);
    let text = stdout(&o);
    assert!(text.starts_with("FAIL"), "{text}");
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["tables", "--what", "nothing"],
        &["tables", "--what", "products", "--window", "0"],
        &["tables", "--what", "products", "--spec", "torus"],
        &["tables", "--what", "gamma", "--route", "residue", "--window", "6", "--order", "19"],
        &["tables", "--what", "gamma", "--route", "residue", "--spec", "three-point", "--window", "2"],
        &["tables", "--what", "products", "--out", "/nonexistent-dir/table.csv"],
        &["verify", "--suite", "rescale", "--spec", "elliptic"],
        &["verify", "--suite", "jacobi", "--lie", "/nonexistent-dir/lie.json"],
        &["specialize", "--e1", "x^"],
        &["specialize", "--spec", "laurent", "--e", "1"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = kndeform(args);
        assert_eq!(code(&o), 1, "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(code(&kndeform(&["--help"])), 0);
}

#[test]
fn specialize_singular_line_warns_but_succeeds() {
    let o = kndeform(&["specialize", "--s", "1", "--e", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"));
    let text = stdout(&o);
    assert!(text.contains("isomorphic to: three-point with alpha^2 = 3"), "{text}");
    assert!(text.contains("discriminant = 0"));
    assert!(text.contains("singular: yes"));
}

#[test]
fn specialize_origin_gives_laurent() {
    let o = kndeform(&["specialize", "--e1", "0", "--e2", "0"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("family: laurent\n"));
    assert!(text.contains("rule: A_n A_m = A_{n+m}\n"));
}

#[test]
fn specialize_reports_j() {
    let o = kndeform(&["specialize", "--s", "0", "--e", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).is_empty());
    let text = stdout(&o);
    assert!(text.contains("j = 1728\n"), "{text}");
    assert!(text.contains("singular: no"));
    // e = (2, 0, -2): 16 * (2)^2 (4)^2 (2)^2
    assert!(text.contains("discriminant = 4096\n"));

    let o = kndeform(&["specialize", "--s", "inf", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "line-infinity");
    assert_eq!(v["j"], "1728");
}

#[test]
fn specialize_w_line() {
    let o = kndeform(&["specialize", "--s", "-1/2", "--e", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("isomorphic to: subalgebra-w with alpha^2 = -3"));
}
