//! The `skewbench` binary end to end.

use std::process::{Command, Output};

use skewbench::read_rows;

fn skewbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewbench")).args(args).env_remove("SKEWBENCH_SEED").output().unwrap()
}

#[test]
fn lists_seven_presets() {
    let out = skewbench(&["presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    for name in ["uniform-small", "zipfian-medium", "leafs-handshake-1e8", "wave-nonshuffle-5e3"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn single_cell_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = skewbench(&[
        "run",
        "--structure",
        "coarse-lock-bst",
        "--threads",
        "1",
        "--repeats",
        "1",
        "--duration-ms",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_rows(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].is_ok());
    assert_eq!(rows[0].final_size, rows[0].expected_size);
    assert_eq!(rows[0].duration_ms, 100);
}

#[test]
fn desk_scale_preset_gives_three_rows_per_cell() {
    let out = skewbench(&["run", "--preset", "wave-nonshuffle-5e3", "--desk-scale", "--structure", "eager-bst", "--threads", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_rows(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows.iter().map(|r| r.repeat).collect::<Vec<_>>(), [0, 1, 2]);
    assert!(rows.iter().all(|r| r.is_ok() && r.duration_ms == 1000 && r.preset == "wave-nonshuffle-5e3"));
    assert!(rows.windows(2).all(|w| w[0].config_hash == w[1].config_hash));
}

#[test]
fn env_seed_wins() {
    let out = Command::new(env!("CARGO_BIN_EXE_skewbench"))
        .args(["run", "--structure", "coarse-lock-bst", "--threads", "1", "--repeats", "2", "--duration-ms", "20", "--seed", "5"])
        .env("SKEWBENCH_SEED", "40")
        .output()
        .unwrap();
    let rows = read_rows(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.iter().map(|r| r.seed).collect::<Vec<_>>(), [40, 41]);
}

#[test]
fn usage_errors_exit_nonzero() {
    let out = skewbench(&["run", "--range", "100", "--initial", "200"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("initial size exceeds range"));
    let out = skewbench(&["run", "--keygen", "temporary-skewed", "--state-count", "2", "--hot-probs", "0.9"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 2 values"));
    let out = skewbench(&["run", "--no-such-flag"]);
    assert!(!out.status.success());
}
