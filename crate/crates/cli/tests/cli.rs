//! End-to-end runs of the `sawsis` binary.

use std::process::{Command, Output};

use num_bigint::BigUint;
use sawsis::{ModelParams, Walk};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sawsis"))
        .args(args)
        .env_remove("SAWSIS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        &[
            "sample",
            "--model",
            "crossing",
            "--k",
            "6",
            "--n",
            "50",
            "--seed",
            "9",
            "--threads",
            "1",
        ][..],
        &[
            "estimate",
            "--model",
            "nes",
            "--k",
            "3",
            "--l",
            "5",
            "--n",
            "2000",
            "--seed",
            "9",
            "--threads",
            "1",
        ],
        &[
            "estimate",
            "--model",
            "crossing",
            "--k",
            "5",
            "--n",
            "2000",
            "--seed",
            "3",
            "--threads",
            "4",
        ],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
    let a = stdout(&[
        "sample", "--model", "directed", "--k", "8", "--n", "20", "--seed", "1",
    ]);
    let b = stdout(&[
        "sample", "--model", "directed", "--k", "8", "--n", "20", "--seed", "2",
    ]);
    assert_ne!(a, b);
}

#[test]
fn sample_lines_round_trip() {
    let cases: [(&[&str], ModelParams); 4] = [
        (
            &["--model", "crossing", "--k", "7"],
            ModelParams::Crossing { k: 7 },
        ),
        (
            &["--model", "directed", "--k", "9"],
            ModelParams::Directed { k: 9 },
        ),
        (
            &["--model", "nes", "--k", "4", "--l", "6"],
            ModelParams::Nes { k: 4, l: 6 },
        ),
        (
            &["--model", "untrapped", "--length", "80"],
            ModelParams::Untrapped { n: 80 },
        ),
    ];
    for (flags, params) in cases {
        let mut args = vec!["sample", "--n", "40", "--seed", "5", "--threads", "3"];
        args.extend_from_slice(flags);
        let text = stdout(&args);
        assert_eq!(text.lines().count(), 40);
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            let walk: Walk = v["steps"].as_str().unwrap().parse().unwrap();
            let trace = params.retrace(&walk).unwrap();
            assert_eq!(v["a"].as_u64().unwrap(), u64::from(trace.a), "{line}");
            assert_eq!(v["b"].as_u64().unwrap(), u64::from(trace.b), "{line}");
            let inv: BigUint = v["inverse_probability"].as_str().unwrap().parse().unwrap();
            assert_eq!(inv, trace.inverse_probability());
        }
    }
}

#[test]
fn nes_moment_rows() {
    let v = json(&["moments", "--model", "nes", "--k", "2", "--lmax", "2"]);
    let rows: Vec<(u64, String, String)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["l"].as_u64().unwrap(),
                r["mean_square"].as_str().unwrap().to_string(),
                r["second_moment"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        rows,
        vec![(1, "9".into(), "10".into()), (2, "81".into(), "96".into())]
    );
}

#[test]
fn directed_moments_as_csv() {
    let text = stdout(&[
        "moments", "--model", "directed", "--lmax", "2", "--format", "csv",
    ]);
    assert_eq!(
        text,
        "k,mean,mean_square,second_moment\n1,2,4,4\n2,6,36,40\n"
    );
}

#[test]
fn enumerate_small_square() {
    let v = json(&["enumerate", "--model", "crossing", "--k", "2"]);
    assert_eq!(v["count"], "12");
    assert_eq!(v["weighted_sum"], "152");
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn estimate_is_near_the_count() {
    let v = json(&[
        "estimate", "--model", "crossing", "--k", "3", "--n", "20000", "--seed", "1",
    ]);
    let mean: f64 = v["mean"].as_str().unwrap().parse().unwrap();
    let se: f64 = v["std_error"].as_str().unwrap().parse().unwrap();
    assert!((mean - 184.0).abs() < 5.0 * se, "{mean} +- {se}");
    assert!(v["mean"].as_str().unwrap().contains('e'));
}

#[test]
fn bounds_and_asymptotics() {
    let v = json(&["bounds", "--k", "2"]);
    let lambda = v["lambda_lb"].as_f64().unwrap();
    assert!((lambda - 12f64.powf(1.0 / 9.0)).abs() < 1e-12);
    assert_eq!(v["table"][1]["d"], "152");

    let v = json(&["asymptotics", "--k", "2", "--digits", "30"]);
    let rho: f64 = v["rho"].as_str().unwrap().parse().unwrap();
    assert!((rho - (105f64.sqrt() - 9.0) / 12.0).abs() < 1e-15);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walks.svg");
    let p = path.to_str().unwrap();
    stdout(&[
        "render", "--model", "crossing", "--k", "3", "--all", "--svg", p,
    ]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 184);

    let svg = stdout(&[
        "render",
        "--model",
        "untrapped",
        "--length",
        "30",
        "--n",
        "4",
    ]);
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<polyline").count(), 4);

    let path = dir.path().join("samples.svg");
    let p = path.to_str().unwrap();
    let lines = stdout(&[
        "sample", "--model", "nes", "--k", "2", "--l", "3", "--n", "5", "--svg", p,
    ]);
    assert_eq!(lines.lines().count(), 5);
    assert!(std::fs::read_to_string(&path).unwrap().contains("</svg>"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["enumerate", "--model", "crossing", "--k", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["sample", "--model", "nes", "--k", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["sample", "--model", "crossing", "--k", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["sample", "--model", "knight", "--k", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["moments", "--model", "crossing", "--k", "2", "--lmax", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn thread_count_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_sawsis"))
        .args([
            "estimate", "--model", "directed", "--k", "6", "--n", "500", "--seed", "2",
        ])
        .env("SAWSIS_THREADS", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(v["threads"], 3);
    let explicit = stdout(&[
        "estimate",
        "--model",
        "directed",
        "--k",
        "6",
        "--n",
        "500",
        "--seed",
        "2",
        "--threads",
        "3",
    ]);
    assert_eq!(String::from_utf8(with_env.stdout).unwrap(), explicit);
}
