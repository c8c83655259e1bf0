//! End-to-end checks of the command-line surface through temp files.

use gauss_ptf::cli::run_from;
use gauss_ptf::poly::{Basis, MultiIndex, Poly};
use gauss_ptf::prg::gaussian_point;
use std::path::Path;

fn write_sample_poly(path: &Path) -> Poly {
    let p = Poly::from_terms(
        3,
        3,
        Basis::Hermite,
        [
            (MultiIndex::from_exponents(&[0, 0, 0]), 0.4),
            (MultiIndex::from_exponents(&[1, 1, 0]), -0.8),
            (MultiIndex::from_exponents(&[3, 0, 0]), 0.25),
            (MultiIndex::from_exponents(&[0, 0, 2]), 1.1),
        ],
    )
    .unwrap();
    p.write_json(path).unwrap();
    p
}

#[test]
fn restrict_output_satisfies_evaluation_identity() {
    let dir = tempfile::tempdir().unwrap();
    let p_path = dir.path().join("p.json");
    let q_path = dir.path().join("q.json");
    let p = write_sample_poly(&p_path);

    let lambda = 0.01f64;
    let code = run_from([
        "gauss-ptf",
        "restrict",
        "--poly",
        p_path.to_str().unwrap(),
        "--lambda",
        "0.01",
        "--x-seed",
        "3",
        "--out",
        q_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    let q = Poly::read_json(&q_path).unwrap();
    let x = gaussian_point(3, 0, 3);
    for t in 0..20u64 {
        let y = gaussian_point(90 + t, 0, 3);
        let mixed: Vec<f64> = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (1.0 - lambda).sqrt() * a + lambda.sqrt() * b)
            .collect();
        let lhs = q.eval(&y).unwrap();
        let rhs = p.eval(&mixed).unwrap();
        assert!(
            (lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0),
            "draw {t}: {lhs} vs {rhs}"
        );
    }
}

#[test]
fn convert_round_trips_between_bases() {
    let dir = tempfile::tempdir().unwrap();
    let p_path = dir.path().join("p.json");
    let s_path = dir.path().join("s.json");
    let h_path = dir.path().join("h.json");
    let p = write_sample_poly(&p_path);

    assert_eq!(
        run_from([
            "gauss-ptf",
            "convert",
            "--poly",
            p_path.to_str().unwrap(),
            "--to",
            "standard",
            "--out",
            s_path.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(
        run_from([
            "gauss-ptf",
            "convert",
            "--poly",
            s_path.to_str().unwrap(),
            "--to",
            "hermite",
            "--out",
            h_path.to_str().unwrap(),
        ]),
        0
    );
    let s = Poly::read_json(&s_path).unwrap();
    assert_eq!(s.basis(), Basis::Standard);
    let back = Poly::read_json(&h_path).unwrap();
    for (alpha, c) in p.terms() {
        assert!((back.coeff(alpha) - c).abs() <= 1e-9 * c.abs().max(1.0));
    }
}

#[test]
fn moments_audit_reports_tiny_residuals() {
    let bin = env!("CARGO_BIN_EXE_gauss-ptf");
    let out = std::process::Command::new(bin)
        .args(["moments", "--k", "6", "--audit"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("M = 4 nodes"));
    // residual lines for each matched moment must stay below 1e-9
    let mut seen = 0;
    for line in text.lines() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() == 3 {
            if let (Ok(m), Ok(res)) = (fields[0].parse::<usize>(), fields[2].parse::<f64>()) {
                if m <= 7 {
                    assert!(res <= 1e-9, "moment {m} residual {res}");
                    seen += 1;
                }
            }
        }
    }
    assert_eq!(seen, 8);
    assert!(text.contains("seed accounting"));
}

#[test]
fn corpus_writes_readable_instances() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run_from([
            "gauss-ptf",
            "corpus",
            "--corpus",
            "mixed",
            "--count",
            "5",
            "--n",
            "3",
            "--d",
            "2",
            "--seed",
            "11",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ]),
        0
    );
    let mut files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 5);
    for f in files {
        let p = Poly::read_json(&f).unwrap();
        assert_eq!(p.n(), 3);
        assert!(!p.is_zero());
    }
}

#[test]
fn jobs_env_var_is_honored_and_output_invariant() {
    let bin = env!("CARGO_BIN_EXE_gauss-ptf");
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, env_jobs: Option<&str>, flag_jobs: Option<&str>| {
        let path = dir.path().join(name);
        let mut cmd = std::process::Command::new(bin);
        cmd.args([
            "anticoncentration",
            "--eps",
            "0.05",
            "--trials",
            "20000",
            "--seed",
            "3",
            "--out",
            path.to_str().unwrap(),
        ]);
        if let Some(j) = env_jobs {
            cmd.env("GAUSS_PTF_JOBS", j);
        }
        if let Some(j) = flag_jobs {
            cmd.args(["--jobs", j]);
        }
        assert!(cmd.status().unwrap().success());
        std::fs::read(path).unwrap()
    };
    let via_env = run("env.csv", Some("1"), None);
    let via_flag = run("flag.csv", None, Some("2"));
    assert_eq!(via_env, via_flag);
}

#[test]
fn fool_runs_reproduce_byte_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let code = run_from([
            "gauss-ptf",
            "fool",
            "--n",
            "3",
            "--d",
            "2",
            "--L",
            "8",
            "--R",
            "2",
            "--count",
            "3",
            "--trials",
            "10000",
            "--mc-draws",
            "10000",
            "--seed",
            "13",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv");
    let b = run("b.csv");
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 4); // header + one row per instance
    assert!(text.starts_with("experiment,n,d,lambda,eps,delta,L,R,trials,seed,estimate,ci_radius"));
}
