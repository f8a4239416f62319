//! End-to-end checks of the binary: exit codes, determinism of generated
//! files, manifest verification including an injected fault, and the oracle
//! subcommands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclescrub"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cyclescrub-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn gen_is_byte_deterministic() {
    let dir = workdir("gen");
    for name in ["a.txt", "b.txt"] {
        let out = run_in(
            &dir,
            &["gen", "--n", "100", "--d", "10", "--seed", "7", "--out", name],
        );
        assert!(out.status.success(), "{}", stderr(&out));
    }
    assert_eq!(
        std::fs::read(dir.join("a.txt")).unwrap(),
        std::fs::read(dir.join("b.txt")).unwrap()
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn gen_rejects_degree_above_n_minus_one() {
    let dir = workdir("gen-bad");
    let out = run_in(&dir, &["gen", "--n", "10", "--d", "20", "--out", "x.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("degree bound"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn planted_instances_contain_triangles() {
    let dir = workdir("planted");
    let out = run_in(
        &dir,
        &["gen", "--kind", "planted", "--n", "60", "--d", "6", "--seed", "3", "--out", "p.txt"],
    );
    assert!(out.status.success());
    let out = run_in(
        &dir,
        &["oracle", "triangles", "--input", "p.txt", "--tripartite"],
    );
    assert!(out.status.success());
    let count: usize = stdout(&out).trim().parse().unwrap();
    assert!(count >= 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn girth_of_c7_is_seven() {
    let dir = workdir("girth");
    std::fs::write(
        dir.join("c7.txt"),
        "7 7\n0 1\n0 6\n1 2\n2 3\n3 4\n4 5\n5 6\n",
    )
    .unwrap();
    let out = run_in(&dir, &["oracle", "girth", "--input", "c7.txt"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "7");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn scrub_all4_audit_reports_zero_four_cycles() {
    let dir = workdir("scrub");
    let out = run_in(
        &dir,
        &["gen", "--n", "80", "--d", "8", "--seed", "5", "--out", "g.txt"],
    );
    assert!(out.status.success());
    let out = run_in(
        &dir,
        &[
            "scrub", "--input", "g.txt", "--mode", "all4", "--seed", "11", "--out-dir", "out",
            "--audit", "--density-floor", "20",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("audit: 4-cycles: 0"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("out/manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["four_cycle_free"], serde_json::json!(true));
    assert_eq!(manifest["audit_total_cycles"]["4"], serde_json::json!(0));

    // verify passes on the untouched directory
    let out = run_in(&dir, &["verify", "manifest", "--graph", "g.txt", "--dir", "out"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn scrub_triangle_free_input_has_empty_e_prime() {
    let dir = workdir("trifree");
    // even cycle: bipartite, triangle-free
    let n = 24;
    let mut text = format!("{n} {n}\n");
    for v in 0..n {
        let mut e = [v, (v + 1) % n];
        e.sort_unstable();
        text.push_str(&format!("{} {}\n", e[0], e[1]));
    }
    // the writer sorts edges, do the same to keep the parser happy
    let mut lines: Vec<&str> = text.lines().skip(1).collect();
    lines.sort_by_key(|l| {
        let mut it = l.split_whitespace().map(|t| t.parse::<u32>().unwrap());
        (it.next().unwrap(), it.next().unwrap())
    });
    let text = format!("{n} {n}\n{}\n", lines.join("\n"));
    std::fs::write(dir.join("cyc.txt"), text).unwrap();
    let out = run_in(
        &dir,
        &[
            "scrub", "--input", "cyc.txt", "--mode", "most", "--k", "5", "--seed", "2",
            "--out-dir", "out",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("|E'| = 0"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn tampered_slice_fails_verification_naming_the_cycle() {
    let dir = workdir("tamper");
    let out = run_in(
        &dir,
        &["gen", "--n", "60", "--d", "7", "--seed", "9", "--out", "g.txt"],
    );
    assert!(out.status.success());
    let out = run_in(
        &dir,
        &[
            "scrub", "--input", "g.txt", "--mode", "all4", "--seed", "4", "--out-dir", "out",
            "--density-floor", "25",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));

    // splice a 4-cycle into the first slice file that has an edge
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("out/manifest.json")).unwrap())
            .unwrap();
    let entry = manifest["slices"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["edges"].as_u64().unwrap() >= 1)
        .expect("a slice with an edge");
    let file = entry["file"].as_str().unwrap();
    let path = dir.join("out").join(file);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let header: Vec<usize> = lines[0]
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    let (u, v) = {
        let mut it = lines[1].split_whitespace().map(|t| t.parse::<u32>().unwrap());
        (it.next().unwrap(), it.next().unwrap())
    };
    // close a 4-cycle u - v - x - y - u through two fresh vertices
    let existing: std::collections::HashSet<String> = lines[1..].iter().cloned().collect();
    let mut fresh = Vec::new();
    for cand in 0..header[0] as u32 {
        if cand != u && cand != v && fresh.len() < 2 {
            let adjacent = lines[1..].iter().any(|l| {
                let mut it = l.split_whitespace().map(|t| t.parse::<u32>().unwrap());
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                a == cand || b == cand
            });
            if !adjacent {
                fresh.push(cand);
            }
        }
    }
    let (x, y) = (fresh[0], fresh[1]);
    for (a, b) in [(v, x), (x, y), (y, u)] {
        let line = format!("{} {}", a.min(b), a.max(b));
        assert!(!existing.contains(&line));
        lines.push(line);
    }
    lines[0] = format!("{} {}", header[0], header[1] + 3);
    std::fs::write(&path, format!("{}\n", lines[1..].iter().fold(lines[0].clone(), |acc, l| acc + "\n" + l))).unwrap();

    let out = run_in(&dir, &["verify", "manifest", "--graph", "g.txt", "--dir", "out"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("4-cycle"),
        "expected the violation to name the cycle: {}",
        stderr(&out)
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn reduce_and_verify_zero_triangle_instances() {
    let dir = workdir("reduce");
    for seed in 0..10 {
        let seed = seed.to_string();
        let out = run_in(
            &dir,
            &[
                "gen", "--kind", "weighted", "--n", "18", "--d", "5", "--w", "4", "--seed", &seed,
                "--out", "w.txt",
            ],
        );
        assert!(out.status.success());
        let out = run_in(
            &dir,
            &[
                "reduce", "--gadget", "zero-triangle", "--input", "w.txt", "--out", "zt.txt",
                "--cert-out", "zt.json",
            ],
        );
        assert!(out.status.success(), "{}", stderr(&out));
        let out = run_in(
            &dir,
            &[
                "verify", "reduction", "--cert", "zt.json", "--source", "w.txt", "--source-kind",
                "weighted", "--target", "zt.txt",
            ],
        );
        assert_eq!(out.status.code(), Some(0), "seed {seed}: {}", stderr(&out));
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn triangle_to_kcycle_power_of_two_is_refused() {
    let dir = workdir("pow2");
    let out = run_in(
        &dir,
        &["gen", "--kind", "tripartite", "--n", "30", "--d", "5", "--out", "t.txt"],
    );
    assert!(out.status.success());
    let out = run_in(
        &dir,
        &[
            "reduce", "--gadget", "triangle-to-kcycle", "--input", "t.txt", "--k", "8",
            "--cert-out", "route.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("power of two"));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("route.json")).unwrap()).unwrap();
    assert_eq!(cert["kind"], serde_json::json!("four-cycle-route"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn scrub_rejects_degree_violation_without_force() {
    let dir = workdir("force");
    let out = run_in(
        &dir,
        &["gen", "--n", "30", "--d", "12", "--seed", "1", "--out", "dense.txt"],
    );
    assert!(out.status.success());
    let out = run_in(
        &dir,
        &["scrub", "--input", "dense.txt", "--out-dir", "out"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("force"));
    let out = run_in(
        &dir,
        &["scrub", "--input", "dense.txt", "--out-dir", "out", "--force"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn iteration_cap_yields_warning_exit_code() {
    let dir = workdir("cap");
    let out = run_in(
        &dir,
        &["gen", "--n", "80", "--d", "8", "--seed", "2", "--out", "g.txt"],
    );
    assert!(out.status.success());
    let out = run_in(
        &dir,
        &[
            "scrub", "--input", "g.txt", "--out-dir", "out", "--density-floor", "1",
            "--iteration-cap", "1",
        ],
    );
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("iteration cap"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn tampered_e_prime_fails_verification() {
    let dir = workdir("eprime");
    let out = run_in(
        &dir,
        &["gen", "--n", "60", "--d", "7", "--seed", "3", "--out", "g.txt"],
    );
    assert!(out.status.success());
    let out = run_in(
        &dir,
        &["scrub", "--input", "g.txt", "--out-dir", "out", "--density-floor", "25"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    // claim an extra certified edge that is in no triangle: the coverage
    // and soundness checks must both object
    let path = dir.join("out/manifest.json");
    let mut manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let graph_n = manifest["graph_n"].as_u64().unwrap();
    manifest["e_prime_pipeline"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!([0, graph_n as u32 - 1]));
    std::fs::write(&path, serde_json::to_string_pretty(&manifest).unwrap()).unwrap();
    let out = run_in(&dir, &["verify", "manifest", "--graph", "g.txt", "--dir", "out"]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn distance_harness_loop_closes_through_files() {
    let dir = workdir("harness");
    let out = run_in(
        &dir,
        &["gen", "--kind", "tripartite", "--n", "72", "--d", "8", "--seed", "6", "--out", "t.txt"],
    );
    assert!(out.status.success());
    std::fs::write(dir.join("params.conf"), "k = 4\nseed = 9\ndensity_floor = 18\n").unwrap();
    let out = run_in(
        &dir,
        &[
            "scrub", "--input", "t.txt", "--tripartite", "--params", "params.conf", "--out-dir",
            "out",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let out = run_in(
        &dir,
        &[
            "reduce", "--gadget", "distance-instances", "--input", "t.txt", "--tripartite",
            "--manifest-dir", "out", "--out-dir", "dist", "--with-answers",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let out = run_in(
        &dir,
        &[
            "verify", "distance", "--graph", "t.txt", "--tripartite", "--dir", "out",
            "--answers", "dist/answers.txt",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    // the update-script route gives the same verdicts
    let out = run_in(
        &dir,
        &[
            "reduce", "--gadget", "update-script", "--input", "t.txt", "--tripartite",
            "--manifest-dir", "out", "--out", "script.txt",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let out = run_in(
        &dir,
        &[
            "verify", "distance", "--graph", "t.txt", "--tripartite", "--dir", "out",
            "--script", "script.txt", "--init", "init.txt",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bench_csv_has_fixed_header() {
    let dir = workdir("bench");
    let out = run_in(
        &dir,
        &["bench", "--sizes", "32", "--seeds", "0", "--out", "report.csv"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.join("report.csv")).unwrap();
    assert!(csv.starts_with(
        "phase,n,seed,wall_ms,edges_in,edges_removed,edges_reported,pieces,slices"
    ));
    let _ = std::fs::remove_dir_all(&dir);
}
