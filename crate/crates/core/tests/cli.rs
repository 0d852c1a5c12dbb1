//! End-to-end runs of the `slopegeo` binary.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    out: Vec<u8>,
    stderr: String,
}

impl Run {
    fn text(&self) -> &str {
        std::str::from_utf8(&self.out).unwrap()
    }

    fn json(&self) -> Value {
        serde_json::from_slice(&self.out).unwrap()
    }

    /// CSV data rows (header and `#` footer lines dropped).
    fn rows(&self) -> Vec<Vec<String>> {
        self.text()
            .lines()
            .skip(1)
            .filter(|l| !l.starts_with('#'))
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect()
    }
}

fn run_raw(command: &str, config_text: &str, extra: &[&str]) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, config_text).unwrap();
    let out: PathBuf = dir.path().join("out");
    let output = Command::new(env!("CARGO_BIN_EXE_slopegeo"))
        .arg(command)
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .args(extra)
        .output()
        .unwrap();
    Run {
        code: output.status.code().unwrap(),
        out: std::fs::read(&out).unwrap_or_default(),
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
    }
}

fn run(command: &str, config: Value, extra: &[&str]) -> Run {
    run_raw(command, &config.to_string(), extra)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s:?}"))
}

fn full_turn() -> f64 {
    2.0 * std::f64::consts::PI
}

#[test]
fn convexity_exit_codes() {
    let ok = run(
        "convexity",
        serde_json::json!({"surface": {"family": "gaussian-bump"}}),
        &[],
    );
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert_eq!(ok.rows()[0][1], "true");

    let steep = run(
        "convexity",
        serde_json::json!({"surface": {"family": "plane", "params": {"p": 1, "q": 0}}}),
        &[],
    );
    assert_eq!(steep.code, 2, "{}", steep.stderr);
    assert_eq!(
        steep.rows()[0][1],
        "false",
        "report is written on failure too"
    );

    assert_eq!(run_raw("convexity", "{bad", &[]).code, 1);
    assert_eq!(
        run(
            "convexity",
            serde_json::json!({"surface": {"family": "plane"}, "colour": 3}),
            &[]
        )
        .code,
        1
    );
    assert_eq!(
        run(
            "convexity",
            serde_json::json!({"surface": {"family": "no-such-surface"}}),
            &[]
        )
        .code,
        1
    );
}

#[test]
fn usage_errors_exit_one() {
    let status = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_slopegeo"))
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
            .unwrap()
    };
    assert_eq!(status(&["wobble", "--config", "x.json"]), 1);
    assert_eq!(status(&["convexity"]), 1);
    assert_eq!(
        status(&["convexity", "--config", "/nonexistent/config.json"]),
        1
    );
    assert_eq!(status(&["--help"]), 0);
}

#[test]
fn geodesic_meridian_and_parallel_runs() {
    let meridian = run(
        "geodesic",
        serde_json::json!({"surface": {"family": "revolution-sqrt"}, "geodesic": {"u0": 2.0, "angle": 0.0, "length": 3}}),
        &["--format", "json"],
    );
    assert_eq!(meridian.code, 0, "{}", meridian.stderr);
    let doc = meridian.json();
    assert!(doc["stats"]["max_clairaut_drift"].as_f64().unwrap() < 1e-12);
    for st in doc["states"].as_array().unwrap() {
        assert_eq!(st["nu_F"].as_f64().unwrap(), 0.0);
    }

    let parallel = run(
        "geodesic",
        serde_json::json!({"surface": {"family": "revolution-sqrt"}, "geodesic": {"u0": 1.0, "angle": full_turn() / 4.0, "length": 5}}),
        &[],
    );
    assert_eq!(parallel.code, 0, "{}", parallel.stderr);
    let rows = parallel.rows();
    let nu0 = num(&rows[0][6]);
    assert!((nu0 - 5f64.sqrt()).abs() <= 1e-9, "nu_F = {nu0}");
    assert!(
        parallel.stderr.contains("nu = 2.23606797749"),
        "{}",
        parallel.stderr
    );
    for r in &rows {
        assert!(
            (num(&r[5]) - 1.0).abs() < 1e-7,
            "unit speed violated: {r:?}"
        );
    }
}

#[test]
fn geodesic_long_run_keeps_clairaut_constant() {
    let r = run(
        "geodesic",
        serde_json::json!({"surface": {"family": "revolution-sqrt"}, "geodesic": {"u0": 1.5, "angle": 1.0, "length": 10}}),
        &["--format", "json"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = r.json();
    assert_eq!(doc["exit_reason"], "completed");
    assert!(doc["stats"]["max_clairaut_drift"].as_f64().unwrap() <= 1e-7);
}

#[test]
fn geodesic_errors() {
    // heading outward from the outer edge of the chart
    let log_hi = 1.0 / (2.0 * 6f64.sqrt()) - 1e-3;
    let edge = run(
        "geodesic",
        serde_json::json!({"surface": {"family": "revolution-log"}, "geodesic": {"u0": log_hi - 1e-6, "angle": full_turn() / 2.0}}),
        &[],
    );
    let downhill = run(
        "geodesic",
        serde_json::json!({"surface": {"family": "revolution-log"}, "geodesic": {"u0": log_hi - 1e-6, "angle": 0.0}}),
        &[],
    );
    assert_eq!(edge.code, 2, "{}", edge.stderr);
    assert!(!edge.out.is_empty(), "partial trace is still written");
    // the opposite direction also leaves the chart, but only after more than 1% of the length
    assert_eq!(downhill.code, 0, "{}", downhill.stderr);
    assert!(downhill.stderr.contains("DomainExit"));

    let graph = run(
        "geodesic",
        serde_json::json!({"surface": {"family": "paraboloid"}, "geodesic": {"u0": 0.1}}),
        &[],
    );
    assert_eq!(graph.code, 1);
    let missing = run(
        "geodesic",
        serde_json::json!({"surface": {"family": "revolution-sqrt"}}),
        &[],
    );
    assert_eq!(missing.code, 1);
    let outside = run(
        "geodesic",
        serde_json::json!({"surface": {"family": "revolution-sqrt"}, "geodesic": {"u0": -4.0}}),
        &[],
    );
    assert_eq!(outside.code, 1);
}

#[test]
fn indicatrix_samples() {
    let r = run(
        "indicatrix",
        serde_json::json!({"indicatrix": {"c": 1, "a": 0.4}}),
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows = r.rows();
    assert_eq!(rows.len(), 720);
    for row in &rows {
        assert!((num(&row[3]) - 1.0).abs() <= 1e-12);
    }

    let circle = run(
        "indicatrix",
        serde_json::json!({"indicatrix": {"c": 1, "a": 0}}),
        &[],
    );
    assert_eq!(circle.code, 0);
    for row in circle.rows() {
        assert!((num(&row[1]).hypot(num(&row[2])) - 1.0).abs() <= 1e-15);
    }

    assert_eq!(
        run(
            "indicatrix",
            serde_json::json!({"indicatrix": {"c": 1, "a": 0.5}}),
            &[]
        )
        .code,
        2
    );
    assert_eq!(
        run(
            "indicatrix",
            serde_json::json!({"indicatrix": {"c": -1, "a": 0}}),
            &[]
        )
        .code,
        1
    );
}

#[test]
fn indicatrix_at_surface_point_matches_slope_norm() {
    let r = run(
        "indicatrix",
        serde_json::json!({"surface": {"family": "revolution-sqrt"}, "indicatrix": {"point": [1.3, 0.2], "samples": 90}}),
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    for row in r.rows() {
        assert!((num(&row[4]) - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn area_of_empty_region_is_zero() {
    let r = run(
        "area",
        serde_json::json!({"surface": {"family": "revolution-sqrt"}, "area": {"region": {"rect": {"c1": [1.5, 1.5], "c2": [0, 1]}}}}),
        &["--format", "json"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = r.json();
    for key in ["area_alpha", "area_BH", "area_HT"] {
        assert_eq!(doc[key].as_f64().unwrap(), 0.0, "{key}");
    }
}

#[test]
fn area_rejects_region_outside_chart() {
    let r = run(
        "area",
        serde_json::json!({"surface": {"family": "revolution-sqrt"}, "area": {"region": {"rect": {"c1": [-3, 2], "c2": [0, 1]}}}}),
        &[],
    );
    assert_eq!(r.code, 1);
}

fn reference_strip() -> Value {
    serde_json::json!({
        "surface": {"family": "revolution-sqrt"},
        "area": {"region": {"rect": {"c1": [1, 2], "c2": [0, full_turn()]}}, "random_subregions": 5},
    })
}

#[test]
fn area_on_reference_strip_passes_all_verdicts() {
    let r = run("area", reference_strip(), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn area_ht_bh_ratio_column_is_within_bounds() {
    let r = run("area", reference_strip(), &[]);
    let upper = 5.0 * 3f64.sqrt() / 8.0;
    let rows = r.rows();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let ratio = num(&row[10]);
        assert!(
            (1.0..=upper).contains(&ratio),
            "HT/BH = {ratio} outside [1, {upper}]"
        );
    }
}

#[test]
fn area_reports_riemannian_area_of_reference_strip() {
    // ∫₁² √(42u² - 1) du · 2π with the closed-form antiderivative
    let prim = |u: f64| {
        let r = (42.0 * u * u - 1.0).sqrt();
        0.5 * u * r - (1.0 / (2.0 * 42f64.sqrt())) * (42f64.sqrt() * u + r).ln()
    };
    let expected = full_turn() * (prim(2.0) - prim(1.0));
    let r = run("area", reference_strip(), &["--format", "json"]);
    let got = r.json()["area_alpha"].as_f64().unwrap();
    assert!(
        (got - expected).abs() <= 1e-9 * expected,
        "{got} vs {expected}"
    );
}

#[test]
fn volcoeff_default_grid() {
    let r = run("volcoeff", serde_json::json!({}), &[]);
    assert_eq!(r.rows().len(), 49);
    assert!(
        r.text().ends_with("# monotonicity: pass\n"),
        "footer: {:?}",
        r.text().lines().last()
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn volcoeff_single_zero_row_and_range_errors() {
    let r = run(
        "volcoeff",
        serde_json::json!({"volcoeff": {"values": [0.0]}}),
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows = r.rows();
    assert_eq!(rows.len(), 1);
    let values: Vec<f64> = rows[0].iter().map(|s| num(s)).collect();
    assert_eq!(values[0], 0.0);
    for v in &values[1..] {
        assert!((v - 1.0).abs() <= 1e-12, "{values:?}");
    }

    assert_eq!(
        run(
            "volcoeff",
            serde_json::json!({"volcoeff": {"values": [0.5]}}),
            &[]
        )
        .code,
        1
    );
    assert_eq!(
        run(
            "volcoeff",
            serde_json::json!({"volcoeff": {"b_min": 0.1, "b_max": 0.6}}),
            &[]
        )
        .code,
        1
    );
}

fn all_commands() -> Vec<(&'static str, Value)> {
    vec![
        (
            "convexity",
            serde_json::json!({"surface": {"family": "arctan-slope"}}),
        ),
        (
            "geodesic",
            serde_json::json!({"surface": {"family": "revolution-sqrt"}, "geodesic": {"u0": 1.2, "angle": 2.0, "length": 4}}),
        ),
        (
            "indicatrix",
            serde_json::json!({"indicatrix": {"c": 2, "a": 0.7, "samples": 100}}),
        ),
        (
            "area",
            serde_json::json!({"surface": {"family": "gaussian-bump"}, "area": {"random_subregions": 3}, "seed": 9}),
        ),
        (
            "volcoeff",
            serde_json::json!({"volcoeff": {"b_min": 0.05, "b_max": 0.45, "step": 0.05}}),
        ),
    ]
}

#[test]
fn outputs_are_byte_deterministic() {
    for (command, config) in all_commands() {
        for format in ["csv", "json"] {
            let a = run(command, config.clone(), &["--format", format]);
            let b = run(command, config.clone(), &["--format", format]);
            assert!(!a.out.is_empty(), "{command} {format}: {}", a.stderr);
            assert_eq!(a.out, b.out, "{command} {format}");
        }
    }
}

#[test]
fn csv_layout_is_plain_and_round_trips() {
    for (command, config) in all_commands() {
        let r = run(command, config, &[]);
        let text = r.text();
        assert!(!text.contains('\r'), "{command}: CR in output");
        assert!(text.ends_with('\n'));
        let header_len = text.lines().next().unwrap().split(',').count();
        for row in r.rows() {
            assert_eq!(row.len(), header_len, "{command}: ragged row");
            for field in row {
                if field.parse::<f64>().map_or(true, |x| !x.is_finite()) {
                    continue;
                }
                let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
                assert_eq!(
                    mantissa.chars().filter(char::is_ascii_digit).count(),
                    17,
                    "{command}: {field} is not 17 significant digits"
                );
                let x = num(&field);
                assert_eq!(
                    format!("{x:.16e}"),
                    field,
                    "{command}: {field} does not round-trip"
                );
            }
        }
    }
}

#[test]
fn format_flag_overrides_config() {
    let config = serde_json::json!({"format": "json", "indicatrix": {"samples": 4}});
    assert!(run("indicatrix", config.clone(), &[])
        .text()
        .starts_with('{'));
    assert!(run("indicatrix", config, &["--format", "csv"])
        .text()
        .starts_with("theta,"));
}

#[test]
fn stdout_matches_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    std::fs::write(
        &config,
        r#"{"indicatrix": {"c": 1, "a": 0.2, "samples": 16}}"#,
    )
    .unwrap();
    let stdout = Command::new(env!("CARGO_BIN_EXE_slopegeo"))
        .args(["indicatrix", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    let file = run_raw(
        "indicatrix",
        r#"{"indicatrix": {"c": 1, "a": 0.2, "samples": 16}}"#,
        &[],
    );
    assert_eq!(stdout.stdout, file.out);
}
