use std::fs;
use std::path::PathBuf;
use std::process::Command;

use helixforge_cli::dispatch_with_config;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run_with(args: &[&str], config: Option<PathBuf>) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("helixforge").chain(args.iter().copied());
    let code = dispatch_with_config(argv, config, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with(args, None)
}

#[test]
fn seq_lists() {
    let r = run(&["seq", "--P", "1", "--k-max", "7", "--kind", "lucas"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out, "2,1,3,4,7,11,18,29\n");

    let r = run(&["seq", "--P", "1", "--k-max", "8", "--kind", "fibonacci"]);
    assert_eq!(r.out, "0,1,1,2,3,5,8,13,21\n");

    let r = run(&["seq", "--P", "1", "--k-min", "-3", "--k-max", "2"]);
    assert_eq!(r.out, "lucas: -4,3,-1,2,1,3\nfibonacci: 2,-1,1,0,1,1\n");
}

#[test]
fn helix_csv_has_radius_four() {
    let r = run(&[
        "helix", "--map", "psi3", "--P", "2", "--tmin", "0", "--tmax", "15", "--dt", "0.005",
        "--format", "csv",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("t,x,y,z"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3001);
    for row in &rows {
        assert!((row[1].hypot(row[2]) - 4.0).abs() <= 1e-6 * 4.0, "{row:?}");
        assert_eq!(row[0], row[3]);
    }
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--P", "1", "--k-min", "0", "--k-max", "100"]);
    assert_eq!(ok.code, 0, "{}{}", ok.out, ok.err);
    assert!(ok.out.contains("status: AllPass"));
    assert!(!ok.out.contains("status: Failures"));

    let bad = run(&[
        "verify",
        "--P",
        "1",
        "--k-min",
        "0",
        "--k-max",
        "4",
        "--identity",
        "psi6-printed",
    ]);
    assert_eq!(bad.code, 2);
    assert!(bad.out.contains("status: Failures"));

    let all = run(&[
        "verify",
        "--P",
        "3",
        "--k-min",
        "-5",
        "--k-max",
        "5",
        "--identity",
        "all",
    ]);
    assert_eq!(all.code, 2);

    let unknown = run(&["verify", "--identity", "no-such"]);
    assert_eq!(unknown.code, 1);
}

#[test]
fn usage_errors_exit_one() {
    let r = run(&["seq", "--bogus"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("Usage"));
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&[]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["helix", "--help"]).code, 0);
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["seq", "--P", "0"][..],
        &["seq", "--P", "-3"],
        &["seq", "--P", "1.5"],
        &["seq", "--k-min", "5", "--k-max", "1"],
        &["helix", "--map", "psi9"],
        &["helix", "--dt", "0"],
        &["helix", "--format", "csv", "--map", "psi1,psi2"],
        &["helix", "--format", "csv", "--projection", "xy"],
        &["eval", "--P", "1", "--t", "1e6"],
        &["discover", "--template", "psi7-free"],
        &[
            "discover",
            "--template",
            "psi4",
            "--p-set",
            "1",
            "--k-set",
            "0,1",
        ],
    ] {
        let r = run(args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.out);
        assert!(r.err.starts_with("error:"), "{args:?}: {}", r.err);
    }
}

#[test]
fn eval_prints_both_forms() {
    let r = run(&["eval", "--P", "3", "--map", "psi1", "--t", "0"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert!(lines[0].starts_with("def 13"), "{}", r.out);
    assert!(lines[1].starts_with("closed 13.0 0.0"), "{}", r.out);

    let r = run(&["eval", "--P", "1", "--map", "g", "--t", "5"]);
    let re: f64 = r.out.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((re - 11.0).abs() < 1e-9);
}

#[test]
fn pell_and_discover() {
    let r = run(&["pell", "--P", "1", "--k-min", "-1", "--k-max", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.out,
        "P=1 D=5\nk=-1 x=-1 y=1 x^2-5*y^2=-4\nk=0 x=2 y=0 x^2-5*y^2=4\nk=1 x=1 y=1 x^2-5*y^2=-4\n"
    );

    let r = run(&[
        "discover",
        "--template",
        "psi6",
        "--p-set",
        "1,2,3",
        "--k-set",
        "-2..8",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("reverified: P in [4, 5]"), "{}", r.out);
}

#[test]
fn files_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json", "obj", "svg"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for path in [&a, &b] {
            let r = run(&[
                "compose",
                "--P",
                "1",
                "--P-b",
                "2",
                "--map-b",
                "psi2",
                "--tmax",
                "4",
                "--dt",
                "0.01",
                "--format",
                format,
                "--out",
                path.to_str().unwrap(),
            ]);
            if format == "csv" {
                assert_eq!(r.code, 1, "CSV holds one curve");
                continue;
            }
            assert_eq!(r.code, 0, "{format}: {}", r.err);
        }
        if format != "csv" {
            assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{format}");
        }
    }
    let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 6, "no temporary files remain");
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("hf.conf");
    fs::write(&cfg, "# test config\nP = 2\nk-max = 3\nkind = lucas\n").unwrap();

    let r = run_with(&["seq"], Some(cfg.clone()));
    assert_eq!(r.out, "2,2,6,14\n");
    let r = run_with(&["seq", "--P", "1"], Some(cfg.clone()));
    assert_eq!(r.out, "2,1,3,4\n");
    let r = run_with(&["seq", "--kind", "fibonacci"], Some(cfg.clone()));
    assert_eq!(r.out, "0,1,2,5\n");

    fs::write(&cfg, "dt = 0.5\n").unwrap();
    let r = run_with(
        &["helix", "--map", "psi2", "--tmax", "1"],
        Some(cfg.clone()),
    );
    assert_eq!(r.out.lines().count(), 1 + 3);
    let r = run_with(
        &["helix", "--map", "psi2", "--tmax", "1", "--dt", "0.25"],
        Some(cfg.clone()),
    );
    assert_eq!(r.out.lines().count(), 1 + 5);

    let r = run_with(&["helix", "--map", "psi2", "--tmax", "1"], None);
    assert_eq!(r.out.lines().count(), 1 + 201, "default dt is 0.005");

    fs::write(&cfg, "dt = fast\n").unwrap();
    assert_eq!(run_with(&["helix"], Some(cfg.clone())).code, 1);
    assert_eq!(run_with(&["seq"], Some(dir.path().join("missing"))).code, 1);
}

#[test]
fn binary_reads_config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("hf.conf");
    fs::write(&cfg, "P=3\nk-max=2\nkind=fibonacci\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_helixforge"))
        .args(["seq"])
        .env("HELIXFORGE_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0,1,3\n");

    let out = Command::new(env!("CARGO_BIN_EXE_helixforge"))
        .args(["verify", "--identity", "psi7-printed", "--k-max", "3"])
        .env_remove("HELIXFORGE_CONFIG")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
