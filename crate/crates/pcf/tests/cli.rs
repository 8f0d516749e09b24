//! End-to-end tests of the `pcf` binary: file formats, verdicts, and the
//! exit-code contract (0 success, 1 negative result, 2 input error).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn pcf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcf"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_then_oracle_flower() {
    let dir = TempDir::new().unwrap();
    let out = pcf(dir.path(), &["gen", "flower", "--n", "2", "-o", "flower"]);
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("flower.graph").exists());
    assert!(dir.path().join("flower.lists").exists());

    let out = pcf(
        dir.path(),
        &["oracle", "--graph", "flower.graph", "--lists", "flower.lists"],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("unsolvable"));
}

#[test]
fn exact_color_on_star_reports_unsolvable() {
    let dir = TempDir::new().unwrap();
    pcf(dir.path(), &["gen", "star", "--n", "4", "-o", "star"]);
    let out = pcf(
        dir.path(),
        &[
            "color",
            "--graph",
            "star.graph",
            "--lists",
            "star.lists",
            "--algo",
            "exact",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("unsolvable"));
}

#[test]
fn tree_color_writes_verified_deterministic_output() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("t.graph"),
        "5 4\n0 1\n1 2\n2 3\n2 4\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("t.lists"),
        "0: 1 2\n1: 1 2 3\n2: 1 2 3 4\n3: 1 2\n4: 2 3\n",
    )
    .unwrap();
    let args = [
        "color", "--graph", "t.graph", "--lists", "t.lists", "--algo", "tree", "--trace", "-o",
        "t.coloring",
    ];
    let out = pcf(dir.path(), &args);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("verified"));
    let first = fs::read(dir.path().join("t.coloring")).unwrap();

    let out = pcf(dir.path(), &args);
    assert_eq!(code(&out), 0);
    let second = fs::read(dir.path().join("t.coloring")).unwrap();
    assert_eq!(first, second, "identical runs produce identical bytes");

    let check = pcf(
        dir.path(),
        &[
            "check",
            "--graph",
            "t.graph",
            "--lists",
            "t.lists",
            "--coloring",
            "t.coloring",
        ],
    );
    assert_eq!(code(&check), 0);
    assert!(stdout(&check).contains("valid"));
}

#[test]
fn trace_lists_reduction_steps() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("p6.graph"),
        "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("p6.lists"),
        "0: 1 2\n1: 1 2 3\n2: 1 2 3\n3: 1 2 3\n4: 1 2 3\n5: 1 2\n",
    )
    .unwrap();
    let out = pcf(
        dir.path(),
        &[
            "color", "--graph", "p6.graph", "--lists", "p6.lists", "--algo", "tree", "--trace",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("R2 removed=[0, 1, 2]"));
}

#[test]
fn greedy_rejects_undersized_lists() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("p3.graph"), "3 2\n0 1\n1 2\n").unwrap();
    fs::write(dir.path().join("p3.lists"), "0: 1 2\n1: 1 2 3\n2: 1 2\n").unwrap();
    let out = pcf(
        dir.path(),
        &[
            "color", "--graph", "p3.graph", "--lists", "p3.lists", "--algo", "greedy",
        ],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn check_flags_conflict_free_failure() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("star.graph"), "4 3\n0 1\n0 2\n0 3\n").unwrap();
    fs::write(dir.path().join("bad.coloring"), "0 2\n1 1\n2 1\n3 1\n").unwrap();
    let out = pcf(
        dir.path(),
        &[
            "check",
            "--graph",
            "star.graph",
            "--coloring",
            "bad.coloring",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("vertex 0"));
}

#[test]
fn check_flags_list_violation_and_rainbow_passes() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("c5.graph"),
        "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("rainbow.coloring"),
        "0 1\n1 2\n2 3\n3 4\n4 5\n",
    )
    .unwrap();
    let out = pcf(
        dir.path(),
        &[
            "check",
            "--graph",
            "c5.graph",
            "--coloring",
            "rainbow.coloring",
        ],
    );
    assert_eq!(code(&out), 0);

    fs::write(dir.path().join("c5.lists"), "0: 2 3\n1: 2\n2: 3\n3: 4\n4: 5\n").unwrap();
    let out = pcf(
        dir.path(),
        &[
            "check",
            "--graph",
            "c5.graph",
            "--lists",
            "c5.lists",
            "--coloring",
            "rainbow.coloring",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("list violation"));
}

#[test]
fn check_rejects_partial_coloring() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("k2.graph"), "2 1\n0 1\n").unwrap();
    fs::write(dir.path().join("partial.coloring"), "0 1\n").unwrap();
    let out = pcf(
        dir.path(),
        &[
            "check",
            "--graph",
            "k2.graph",
            "--coloring",
            "partial.coloring",
        ],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn degeneracy_values() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("t.graph"), "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let out = pcf(dir.path(), &["degeneracy", "--graph", "t.graph"]);
    assert!(stdout(&out).contains("d=1"));

    fs::write(
        dir.path().join("k5.graph"),
        "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",
    )
    .unwrap();
    let out = pcf(dir.path(), &["degeneracy", "--graph", "k5.graph"]);
    assert!(stdout(&out).contains("d=4"));
}

#[test]
fn refute_star_finds_witness_and_k2_does_not() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("star.graph"), "4 3\n0 1\n0 2\n0 3\n").unwrap();
    let out = pcf(
        dir.path(),
        &[
            "refute",
            "--graph",
            "star.graph",
            "--k",
            "0",
            "--universe",
            "4",
            "-o",
            "witness.lists",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("witness.lists").exists());

    fs::write(dir.path().join("k2.graph"), "2 1\n0 1\n").unwrap();
    let out = pcf(
        dir.path(),
        &[
            "refute", "--graph", "k2.graph", "--k", "1", "--universe", "4",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("no witness"));
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.graph"), "2 1\n0 2\n").unwrap();
    let out = pcf(dir.path(), &["degeneracy", "--graph", "bad.graph"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}
