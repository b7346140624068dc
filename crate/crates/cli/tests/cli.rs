//! End-to-end behavior of the `anchoredpack` binary.

use serde_json::Value;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    if dir.exists() {
        fs::remove_dir_all(&dir).unwrap();
    }
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_with_env(dir: &Path, args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_anchoredpack"));
    cmd.args(args).current_dir(dir);
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.output().expect("binary should run")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    run_with_env(dir, args, &[])
}

fn run_ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn tile_pack_on_diagonal_two_covers_three_quarters() {
    let dir = workdir("diag2");
    run_ok(&dir, &["generate", "diagonal", "2", "--out", "inst.json"]);
    let stdout = run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "tile",
            "--in",
            "inst.json",
            "--out",
            "tile.json",
        ],
    );
    assert!(stdout.contains("coverage: 3/4"), "stdout: {stdout}");

    let result = json(&dir.join("tile.json"));
    assert_eq!(result["algorithm"], "tile");
    assert_eq!(result["coverage"], "3/4");
    assert_eq!(result["coverage_float"], 0.75);
    assert_eq!(result["rects"].as_array().unwrap().len(), 2);
    assert_eq!(result["tiles"].as_array().unwrap().len(), 2);

    let report: Value = serde_json::from_str(&run_ok(
        &dir,
        &["verify", "--in", "inst.json", "--result", "tile.json"],
    ))
    .unwrap();
    assert_eq!(report["passed"], true);
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"tile areas sum to 1"), "{names:?}");
    assert!(
        names.contains(&"below-right triangles contain no input point"),
        "{names:?}"
    );
    assert!(
        names.contains(&"rectangles are the tile maxima"),
        "{names:?}"
    );
}

#[test]
fn greedy_results_pass_the_per_anchor_comparison() {
    let dir = workdir("greedy60");
    run_ok(
        &dir,
        &[
            "generate",
            "random",
            "60",
            "--seed",
            "7",
            "--out",
            "inst.json",
        ],
    );
    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "greedy",
            "--in",
            "inst.json",
            "--out",
            "greedy.json",
        ],
    );
    let report: Value = serde_json::from_str(&run_ok(
        &dir,
        &["verify", "--in", "inst.json", "--result", "greedy.json"],
    ))
    .unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "per-anchor area at least the tile rectangle's"));
}

#[test]
fn generation_and_rendering_are_deterministic() {
    let dir = workdir("determinism");
    run_ok(
        &dir,
        &[
            "generate", "random", "100", "--seed", "42", "--out", "a.json",
        ],
    );
    run_ok(
        &dir,
        &[
            "generate", "random", "100", "--seed", "42", "--out", "b.json",
        ],
    );
    assert_eq!(
        fs::read(dir.join("a.json")).unwrap(),
        fs::read(dir.join("b.json")).unwrap()
    );

    run_ok(&dir, &["generate", "diagonal", "10", "--out", "d10.json"]);
    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "tile",
            "--in",
            "d10.json",
            "--out",
            "d10_tile.json",
        ],
    );
    run_ok(
        &dir,
        &[
            "render",
            "--in",
            "d10.json",
            "--result",
            "d10_tile.json",
            "--out",
            "x.svg",
        ],
    );
    run_ok(
        &dir,
        &[
            "render",
            "--in",
            "d10.json",
            "--result",
            "d10_tile.json",
            "--out",
            "y.svg",
        ],
    );
    let x = fs::read(dir.join("x.svg")).unwrap();
    assert_eq!(x, fs::read(dir.join("y.svg")).unwrap());
    assert_eq!(
        String::from_utf8(x).unwrap().matches("<path").count(),
        10,
        "one outlined tile per point"
    );
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = workdir("usage");
    assert_eq!(run(&dir, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&dir, &["bounds", "--mode", "simple", "--beta", "12.75"])
            .status
            .code(),
        Some(2),
        "--lambda is required in simple mode"
    );
    assert_eq!(
        run(
            &dir,
            &["pack", "--algo", "bogus", "--in", "a", "--out", "b"]
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn validation_failures_exit_with_one() {
    let dir = workdir("validation");
    let out = run(
        &dir,
        &[
            "pack",
            "--algo",
            "tile",
            "--in",
            "missing.json",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(out.status.code(), Some(1));

    let out = run(&dir, &["generate", "diagonal", "0", "--out", "inst.json"]);
    assert_eq!(out.status.code(), Some(1));

    run_ok(
        &dir,
        &["generate", "permutation", "0,2,1", "--out", "p.json"],
    );
    let out = run(&dir, &["generate", "permutation", "1,0", "--out", "p.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn the_exact_solver_cap_is_enforced_and_adjustable() {
    let dir = workdir("solvercap");
    run_ok(
        &dir,
        &["generate", "random", "8", "--seed", "3", "--out", "r8.json"],
    );
    let out = run(&dir, &["optimal", "--in", "r8.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("instance too large"),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = run_with_env(
        &dir,
        &["optimal", "--in", "r8.json"],
        &[("ANCHOREDPACK_MAX_N", "8")],
    );
    assert!(out.status.success());

    let out = run(
        &dir,
        &[
            "optimal", "--in", "r8.json", "--max-n", "8", "--out", "opt.json",
        ],
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("optimal"), "{stdout}");
    assert!(stdout.contains("greedy"), "{stdout}");
    assert!(stdout.contains("tile"), "{stdout}");

    let report: Value = serde_json::from_str(&run_ok(
        &dir,
        &["verify", "--in", "r8.json", "--result", "opt.json"],
    ))
    .unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn optimal_prints_the_coverage_sandwich() {
    let dir = workdir("sandwich");
    run_ok(&dir, &["generate", "diagonal", "2", "--out", "inst.json"]);
    let stdout = run_ok(&dir, &["optimal", "--in", "inst.json"]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(lines
        .iter()
        .any(|l| l.starts_with("optimal") && l.contains("3/4")));
    assert!(lines
        .iter()
        .any(|l| l.starts_with("greedy") && l.contains("3/4")));
    assert!(lines
        .iter()
        .any(|l| l.starts_with("tile") && l.contains("3/4")));
}

#[test]
fn tampered_results_fail_verification() {
    let dir = workdir("tamper");
    run_ok(&dir, &["generate", "diagonal", "4", "--out", "inst.json"]);
    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "tile",
            "--in",
            "inst.json",
            "--out",
            "tile.json",
        ],
    );

    let mut result = json(&dir.join("tile.json"));
    result["rects"][0]["hi"] = serde_json::json!(["1", "1"]);
    fs::write(
        dir.join("tampered.json"),
        serde_json::to_string(&result).unwrap(),
    )
    .unwrap();

    let out = run(
        &dir,
        &["verify", "--in", "inst.json", "--result", "tampered.json"],
    );
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report["passed"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(
        failed.contains(&"pairwise disjoint interiors")
            || failed.contains(&"no rectangle holds an input point in its interior"),
        "failed checks: {failed:?}"
    );
}

#[test]
fn adversary_orders_replay_below_their_target() {
    let dir = workdir("adversary");
    run_ok(&dir, &["generate", "adversary", "4/5", "--out", "adv.json"]);
    let inst = json(&dir.join("adv.json"));
    let n = inst["points"].as_array().unwrap().len();
    assert_eq!(inst["order"].as_array().unwrap().len(), n);

    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "greedy",
            "--order",
            "file",
            "--in",
            "adv.json",
            "--out",
            "replay.json",
        ],
    );
    let result = json(&dir.join("replay.json"));
    assert_eq!(result["algorithm"], "greedy-custom");
    assert!(result["coverage_float"].as_f64().unwrap() < 0.8);

    let report: Value = serde_json::from_str(&run_ok(
        &dir,
        &["verify", "--in", "adv.json", "--result", "replay.json"],
    ))
    .unwrap();
    assert_eq!(report["passed"], true);

    // sweep order is not bound by the adversary's target
    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "greedy",
            "--in",
            "adv.json",
            "--out",
            "sweep.json",
        ],
    );

    // an instance without an embedded order cannot be replayed
    run_ok(&dir, &["generate", "diagonal", "3", "--out", "d3.json"]);
    let out = run(
        &dir,
        &[
            "pack", "--algo", "greedy", "--order", "file", "--in", "d3.json", "--out", "r.json",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn a_single_point_renders_as_one_filled_square() {
    let dir = workdir("unitsquare");
    run_ok(&dir, &["generate", "diagonal", "1", "--out", "one.json"]);
    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "tile",
            "--in",
            "one.json",
            "--out",
            "one_tile.json",
        ],
    );
    run_ok(
        &dir,
        &[
            "render",
            "--in",
            "one.json",
            "--result",
            "one_tile.json",
            "--out",
            "one.svg",
        ],
    );
    let svg = fs::read_to_string(dir.join("one.svg")).unwrap();
    assert!(svg.contains("viewBox=\"0 0 1000 1000\""));
    assert_eq!(
        svg.matches("x=\"0.00\" y=\"0.00\" width=\"1000.00\" height=\"1000.00\"")
            .count(),
        1,
        "exactly one filled unit square"
    );
    assert_eq!(svg.matches("<circle").count(), 1);
}

#[test]
fn densified_instances_pack_the_same_under_greedy_and_tile() {
    let dir = workdir("densify");
    run_ok(
        &dir,
        &[
            "generate",
            "random",
            "8",
            "--seed",
            "3",
            "--out",
            "inst.json",
        ],
    );
    run_ok(
        &dir,
        &[
            "generate",
            "densify",
            "--in",
            "inst.json",
            "--eps",
            "1/1099511627776",
            "--out",
            "dense.json",
        ],
    );
    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "greedy",
            "--in",
            "dense.json",
            "--out",
            "g.json",
        ],
    );
    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "tile",
            "--in",
            "dense.json",
            "--out",
            "t.json",
        ],
    );
    let greedy = json(&dir.join("g.json"));
    let tile = json(&dir.join("t.json"));
    assert_eq!(greedy["rects"], tile["rects"]);
    assert_eq!(greedy["coverage"], tile["coverage"]);
}

#[test]
fn hyperbola_instances_tile_with_the_staircase_at_the_origin() {
    let dir = workdir("hyperbola");
    run_ok(
        &dir,
        &["generate", "hyperbola", "5", "64", "--out", "hyp.json"],
    );
    let inst = json(&dir.join("hyp.json"));
    assert_eq!(inst["points"].as_array().unwrap().len(), 65);

    run_ok(
        &dir,
        &[
            "pack",
            "--algo",
            "tile",
            "--in",
            "hyp.json",
            "--out",
            "tile.json",
        ],
    );
    let result = json(&dir.join("tile.json"));
    // The origin's tile reaches up to the corner frontier: its steps sit
    // between consecutive staircase corners, one fewer than the corners.
    let tile = &result["tiles"][0];
    assert_eq!(tile["anchor"], serde_json::json!(["0", "0"]));
    let steps = tile["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 63);
    assert_eq!(steps[0][1], "1");
    assert_eq!(steps[62][0], "1");

    let report: Value = serde_json::from_str(&run_ok(
        &dir,
        &["verify", "--in", "hyp.json", "--result", "tile.json"],
    ))
    .unwrap();
    assert_eq!(report["passed"], true);
}
