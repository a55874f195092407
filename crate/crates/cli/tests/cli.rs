use std::io::Write;
use std::process::{Command, Output};

const TORUS: &str = "prod(S1,S1)";
const WEDGE: &str = "wedge(wedge(S1,S1),sphere(2))";

fn loday(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loday"))
        .args(args)
        .env_remove("LODAY_MAX_BASIS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn compare(field: &str, format: &str) -> Output {
    loday(&[
        "compare",
        "--space-a",
        TORUS,
        "--space-b",
        WEDGE,
        "--algebra",
        "truncpoly(2)",
        "--field",
        field,
        "--coeff",
        "unit",
        "--max-degree",
        "2",
        "--format",
        format,
    ])
}

#[test]
fn discrepancy_exits_with_ten() {
    let o = compare("F3", "text");
    assert_eq!(o.status.code(), Some(10));
    let out = stdout(&o);
    assert!(out.contains("2: 3 vs 4"), "{out}");
    assert!(out.contains("first discrepancy in degree 2"));
    assert!(o.stderr.is_empty());
}

#[test]
fn characteristic_two_agrees() {
    let o = compare("F2", "text");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2: 4 vs 4"));
}

#[test]
fn point_has_trivial_homology() {
    let o = loday(&[
        "compute",
        "--space",
        "pt",
        "--algebra",
        "truncpoly(2)",
        "--field",
        "F5",
        "--coeff",
        "unit",
        "--max-degree",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "degree,weight,dimension\n0,0,1\n");
}

#[test]
fn csv_headers() {
    let o = compare("F3", "csv");
    let out = stdout(&o);
    assert!(out.starts_with("degree,weight,left,right\n"));
    assert!(out.lines().any(|l| l == "2,2,2,3"));
}

#[test]
fn json_is_stable_and_round_trips() {
    let a = stdout(&compare("F3", "json"));
    let b = stdout(&compare("F3", "json"));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", a);
    assert_eq!(v["verdict"]["kind"], "first-discrepancy");
    assert_eq!(v["totals"]["left"]["2"], 3);
    assert_eq!(v["totals"]["right"]["2"], 4);
}

#[test]
fn usage_errors_exit_with_two() {
    let o = loday(&[
        "compute",
        "--space",
        "S1",
        "--algebra",
        "poly",
        "--field",
        "Q",
        "--coeff",
        "unit",
        "--max-degree",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-weight"));
    assert_eq!(loday(&["compute", "--space", "S1", "--bogus"]).status.code(), Some(2));
    assert_eq!(loday(&["compute"]).status.code(), Some(2));
    assert_eq!(
        loday(&["check-product", "--space-a", "S1", "--space-b", "wedge(S1,S1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn basis_ceiling_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_loday"))
        .args(["compute", "--space", TORUS, "--no-normalize"])
        .env("LODAY_MAX_BASIS", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("50"));
    let flag = loday(&["compute", "--space", TORUS, "--no-normalize", "--max-basis", "50"]);
    assert_eq!(flag.status.code(), Some(1));
}

#[test]
fn product_check_with_polynomial_algebra() {
    let o = loday(&[
        "check-product",
        "--space-a",
        "S1",
        "--space-b",
        "S1",
        "--algebra",
        "poly",
        "--field",
        "F3",
        "--max-weight",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = loday(&["check-product", "--space-a", "S1", "--space-b", "S1"]);
    assert_eq!(o.status.code(), Some(10));
}

#[test]
fn bicomplex_oracle_agrees() {
    for field in ["F3", "F2", "Q"] {
        let o = loday(&["oracle-bicomplex", "--field", field]);
        assert_eq!(o.status.code(), Some(0), "{field}: {}", stdout(&o));
    }
}

fn temp_json(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const SQUARE_ZERO: &str = r#"{
    "field": "Fp:3",
    "basis": [{"name": "1", "weight": 0}, {"name": "e", "weight": 1}],
    "unit": "1",
    "structure": [{"left": "e", "right": "e", "value": []}],
    "augmentation": [{"basis": "1", "coeff": 1}]
}"#;

#[test]
fn algebra_files() {
    let f = temp_json(SQUARE_ZERO);
    let spec = format!("file({})", f.path().display());
    let o = loday(&["compute", "--space", TORUS, "--algebra", &spec, "--field", "F3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("totals by degree: 1 2 3"));
    let o = loday(&["compute", "--space", TORUS, "--algebra", &spec, "--field", "F5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--field"));

    let bad = temp_json(&SQUARE_ZERO.replace(r#""value": []"#, r#""value": [{"basis": "e", "coeff": 1}]"#));
    let spec = format!("file({})", bad.path().display());
    let o = loday(&["validate", "--space", "S1", "--algebra", &spec, "--field", "F3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("weight fails at (e, e)"), "{}", stdout(&o));
    let o = loday(&["compute", "--space", "S1", "--algebra", &spec, "--field", "F3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_builtin_inputs() {
    let o = loday(&[
        "validate",
        "--space",
        WEDGE,
        "--algebra",
        "poly",
        "--field",
        "Q",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn self_coefficients_and_coefficient_files() {
    let o = loday(&[
        "compute",
        "--space",
        "S1",
        "--coeff",
        "self",
        "--max-degree",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = SQUARE_ZERO.replace(
        r#""augmentation""#,
        r#""action": [{"source": "t", "value": [{"basis": "e", "coeff": 1}]}], "augmentation""#,
    );
    let c = temp_json(&doc);
    let spec = format!("file({})", c.path().display());
    let own = loday(&["compute", "--space", TORUS, "--coeff", &spec]);
    let builtin = loday(&["compute", "--space", TORUS, "--coeff", "self"]);
    assert_eq!(own.status.code(), Some(0), "{}", String::from_utf8_lossy(&own.stderr));
    let body = |o: &Output| stdout(o).lines().skip(2).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&own), body(&builtin));
}
