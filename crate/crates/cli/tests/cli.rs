//! End-to-end checks of the `matcorr` binary: exit codes, output formats and file inputs.

use std::path::PathBuf;
use std::process::Command;

use matcorr::{Derivation, Matroid};
use matcorr_cli::output::csv_to_json_lines;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_matcorr");

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("matcorr-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn spike_compare_reports_the_ratio() {
    let (code, out, err) = run(&[
        "spike",
        "--p",
        "2",
        "--d",
        "5",
        "--closed-form",
        "--enumerate",
        "--compare",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("ratio = 8/7, match = true"), "{err}");
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["source"], "closed-form");
    assert_eq!(rows[1]["source"], "enumeration");
    assert!(rows
        .iter()
        .all(|r| r["ratio"] == "8/7" && r["matches"] == true));
}

#[test]
fn theorem1_on_the_steiner_example() {
    let (code, out, _) = run(&["theorem1", "--catalog", "steiner", "--weights", "unit"]);
    assert_eq!(code, 0);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_eq!(r["satisfied"], true);
    assert_eq!(r["bound"], "5/3");
    assert_eq!(r["s_both"], "7315/1");
    let approx = r["ratio_approx"].as_f64().unwrap();
    assert!((approx - 1.02984).abs() < 1e-4, "{approx}");
}

#[test]
fn alpha_grid_on_s8_reaches_nine_eighths() {
    let (code, out, _) = run(&[
        "alpha",
        "--catalog",
        "s8",
        "--strategy",
        "grid",
        "--levels",
        "4",
    ]);
    assert_eq!(code, 0);
    let r = &json_lines(&out)[0];
    let best = matcorr::arith::parse_rational(r["best_ratio"].as_str().unwrap()).unwrap();
    assert!(best >= matcorr::BigRational::new(9.into(), 8.into()));
    assert_eq!(r["positively_correlated"], true);
}

#[test]
fn verify_examples_variants() {
    let (code, out, err) = run(&["verify-examples"]);
    assert_eq!(code, 0);
    assert!(err.contains("4/4 PASS"));
    let totals: Vec<String> = json_lines(&out)
        .iter()
        .map(|r| r["total"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(totals, ["46608", "384", "309", "124740"]);
    let (code, _, err) = run(&["verify-examples", "--only", "simplicial"]);
    assert_eq!(code, 0);
    assert!(err.contains("1/1 PASS"));
    let (code, _, err) = run(&["verify-examples", "--only", "graphic", "--corrupt"]);
    assert_eq!(code, 1);
    assert!(
        err.contains("expected") && err.contains("0/1 PASS"),
        "{err}"
    );
    let (code, _, _) = run(&["verify-examples", "--only", "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes_for_errors() {
    // Non-free elements for the free-pair bound: domain error naming the element.
    let (code, _, err) = run(&["theorem2", "--catalog", "s8"]);
    assert_eq!(code, 2);
    assert!(err.contains("element 7"), "{err}");
    let (code, _, _) = run(&["ratio", "--catalog", "s8", "--i", "2", "--j", "2"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["ratio", "--catalog", "spike-2-40"]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = run(&["ratio", "--matroid", "/nonexistent/m.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["ratio"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["entropy", "--catalog", "s8", "--seed", "xyz"]);
    assert_eq!(code, 2);
}

#[test]
fn file_inputs_and_loops() {
    let m = Matroid::uniform(2, 4)
        .unwrap()
        .derive(Derivation::FreeExtend(2))
        .unwrap();
    let path = temp_file("ext.json", &serde_json::to_string(&m.to_doc()).unwrap());
    let p = path.to_str().unwrap();
    let (code, out, err) = run(&["theorem2", "--matroid", p]);
    assert_eq!(code, 0, "{err}");
    // The extension is U_{2,6}: every element is free, so all 15 pairs are swept.
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 15);
    let last = &rows[14];
    assert_eq!((last["i"].as_u64(), last["j"].as_u64()), (Some(4), Some(5)));
    assert!(rows
        .iter()
        .all(|r| r["ratio"] == "3/8" && r["bound"] == "1/2"));

    let weights = temp_file("w.json", r#"[1, 2, "3/2", 1, 1, "1/4"]"#);
    let (code, out, _) = run(&[
        "ratio",
        "--matroid",
        p,
        "--i",
        "0",
        "--j",
        "5",
        "--weights",
        weights.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(json_lines(&out)[0]["weights"]
        .as_str()
        .unwrap()
        .ends_with("w.json"));
    let bad = temp_file("bad.json", "[1, 2]");
    let (code, _, _) = run(&["ratio", "--matroid", p, "--weights", bad.to_str().unwrap()]);
    assert_eq!(code, 2);

    let looped = temp_file(
        "loop.json",
        r#"{"type":"linear_gfp","p":2,"columns":[[1,0],[0,1],[1,1],[0,0]]}"#,
    );
    let (code, _, err) = run(&[
        "ratio",
        "--matroid",
        looped.to_str().unwrap(),
        "--i",
        "0",
        "--j",
        "3",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("element 3 is a loop"), "{err}");
    for f in [path, weights, bad, looped] {
        let _ = std::fs::remove_file(f);
    }
}

#[test]
fn csv_rows_round_trip_through_the_json_schema() {
    let commands: [&[&str]; 10] = [
        &["verify-examples", "--only", "transversal"],
        &[
            "ratio",
            "--catalog",
            "s8",
            "--all-pairs",
            "--weights",
            "random",
        ],
        &[
            "theorem1",
            "--catalog",
            "spike-3-3",
            "--all-pairs",
            "--weights",
            "random",
        ],
        &["theorem1", "--catalog", "transversal-2-3", "--all-pairs"],
        &["mason", "--catalog", "graphic"],
        &[
            "hodge",
            "--catalog",
            "s8",
            "--all-pairs",
            "--weights",
            "random",
        ],
        &["entropy", "--catalog", "transversal"],
        &["spike", "--m", "2", "--d", "4", "--compare"],
        &["spike", "--p", "3", "--d", "3", "--closed-form"],
        &[
            "alpha",
            "--catalog",
            "s8",
            "--strategy",
            "ascent",
            "--max-iter",
            "3",
        ],
    ];
    for args in commands {
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let (c1, json, _) = run(&json_args);
        let (c2, csv, _) = run(&csv_args);
        assert_eq!((c1, c2), (0, 0), "{args:?}");
        assert!(!json.is_empty());
        assert_eq!(csv_to_json_lines(args[0], &csv).unwrap(), json, "{args:?}");
    }
}

#[test]
fn in_process_runner_matches_the_binary() {
    let args = ["matcorr", "mason", "--catalog", "s8", "--format", "csv"];
    let (code, out, _) = matcorr_cli::run_args(args);
    let (bin_code, bin_out, _) = run(&args[1..]);
    assert_eq!((code, out), (bin_code, bin_out));
}
