use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cradix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cradix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(name: &str, args: &[&str]) {
    let out = cradix(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "{name}");
}

const EXAMPLE_ALPHA: &str = "0.[](-4,0,4)*";

#[test]
fn golden_reports() {
    let cases: &[(&str, &[&str])] = &[
        ("neighbours_n3_fundamental.json", &["neighbours", "--n", "3", "--tile", "fundamental"]),
        ("dim_example.json", &["dim", "--n", "3", "--digits", "0,4", "--alpha", EXAMPLE_ALPHA]),
        ("sep_int_example.json", &["sep", "--kind", "int", "--seq", "0.[](0,4,0)*"]),
        ("sep_set.json", &["sep", "--kind", "set", "--seq", "0.[{0}]({0,4})*"]),
        (
            "selfsim_example.json",
            &["selfsim", "--n", "3", "--digits", "0,4", "--alpha", EXAMPLE_ALPHA, "--depth", "9"],
        ),
        (
            "oracle_example.json",
            &["oracle", "--n", "3", "--digits", "0,4", "--alpha", EXAMPLE_ALPHA, "--depth", "4"],
        ),
        (
            "build_translation.json",
            &["build-translation", "--n", "3", "--digits", "0,4,8", "--lambda", "1/3", "--prefix", "-4,8"],
        ),
        ("eval_example.json", &["eval", "--n", "3", "--seq", "0.[](5,0)*"]),
        ("member_zero.json", &["member", "--n", "3", "--digits", "0,4", "--z", "0"]),
        ("encode_example.json", &["encode", "--n", "3", "--z", "-5+2i"]),
    ];
    for (name, args) in cases {
        assert_golden(name, args);
    }
}

#[test]
fn neighbours_of_t3() {
    let v = stdout_json(&cradix(&["neighbours", "--n", "3", "--tile", "fundamental"]));
    let pts: Vec<(i64, i64)> = v["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| (m["re"].as_i64().unwrap(), m["im"].as_i64().unwrap()))
        .collect();
    assert_eq!(pts, vec![(-3, -1), (-2, -1), (-1, 0), (0, 0), (1, 0), (2, 1), (3, 1)]);
    assert_eq!(v["reim_bound"], true);
}

#[test]
fn dimension_of_example() {
    let v = stdout_json(&cradix(&["dim", "--n", "3", "--digits", "0,4", "--alpha", "0.[](−4,0,4)*"]));
    assert_eq!(v["coefficient"], "1/3");
    assert_eq!(v["base_log"], "log(2)/log(sqrt(10))");
    assert_eq!(v["decimal"], "0.2007");
    assert_eq!(v["m_cycle"], serde_json::json!([1, 2, 1]));
}

#[test]
fn selfsim_example() {
    let v = stdout_json(&cradix(&[
        "selfsim", "--n", "3", "--digits", "0,4", "--alpha", EXAMPLE_ALPHA, "--depth", "9",
    ]));
    assert_eq!(v["sep"], true);
    assert_eq!(v["p"], 3);
    assert_eq!(v["ssc"], true);
    assert_eq!(v["ifs"].as_array().unwrap().len(), 2);
    assert_eq!(v["cylinder_words"]["match"], true);
    assert_eq!(v["dimension"]["coefficient"], "1/3");
}

#[test]
fn output_is_deterministic() {
    let args = ["neighbours", "--n", "4", "--tile", "extended"];
    assert_eq!(cradix(&args).stdout, cradix(&args).stdout);
}

#[test]
fn text_output() {
    let out = cradix(&["sep", "--kind", "int", "--seq", "0.[](0,4,0)*", "--output", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "p: 3"), "{text}");
    assert!(text.lines().any(|l| l == "sep: true"), "{text}");
}

#[test]
fn hypothesis_violation_exits_2() {
    let out = cradix(&["dim", "--n", "3", "--digits", "0,1", "--regime", "bounded", "--alpha", "0.[](1)*"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "hypothesis");
    assert_eq!(err["violations"][0], "|δ−δ′| ≠ 1 fails (1−0)");

    // D = {0, 1, 2} satisfies no regime at all
    let out = cradix(&["dim", "--n", "3", "--digits", "0,1,2", "--alpha", "0.[](1)*"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_1() {
    for args in [
        &["dim", "--n", "3", "--digits", "0,4", "--alpha", "garbage"][..],
        &["dim", "--n", "3", "--digits", "0,40", "--alpha", "0.[](0)*"][..],
        &["encode", "--n", "1", "--z", "3"][..],
        &["sep", "--kind", "int"][..],
        &["no-such-command"][..],
        &["neighbours", "--n", "3", "--tile", "custom"][..],
        &["build-translation", "--n", "3", "--digits", "0,4", "--lambda", "3/2"][..],
    ] {
        assert_eq!(cradix(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn render_writes_ppm() {
    let dir = std::env::temp_dir().join(format!("cradix-render-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.ppm");
    let out = cradix(&[
        "render", "--n", "3", "--digits", "0,4", "--alpha", EXAMPLE_ALPHA, "--depth", "5",
        "--size", "32", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let img = fs::read_to_string(&path).unwrap();
    assert!(img.starts_with("P3\n32 32\n255\n"));
    fs::remove_dir_all(&dir).unwrap();

    let out = cradix(&["render", "--n", "3", "--digits", "0,4", "--alpha", EXAMPLE_ALPHA, "--depth", "3", "--size", "8"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("P3\n"));
}
