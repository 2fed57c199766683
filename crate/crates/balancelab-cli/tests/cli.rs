use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_balancelab"))
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn generate_writes_word_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["generate", "--source", "tribonacci", "--len", "12"])
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let word = read(dir.path(), "generate.word");
    assert!(word.contains("abacabaabaca"));
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "generate.manifest.json")).unwrap();
    assert_eq!(manifest["command"], "generate");
    assert_eq!(manifest["outputs"][0], "generate.word");
}

#[test]
fn zero_length_generate_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["generate", "--source", "fibonacci-word", "--len", "0"])
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn unknown_source_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["generate", "--source", "no-such-word", "--len", "5"])
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn malformed_spec_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.json");
    std::fs::write(&spec, "{ not json").unwrap();
    let status = bin()
        .args(["toeplitz", "--len", "8"])
        .arg("--spec")
        .arg(&spec)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn balance_report_has_global_max_2() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "balance",
            "--source",
            "tribonacci",
            "--umax",
            "3",
            "--nmax",
            "100",
            "--horizon",
            "20000",
        ])
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "balance.json")).unwrap();
    assert_eq!(report["global_max"], 2);
}

#[test]
fn identical_runs_reproduce_identical_reports() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let status = bin()
            .args([
                "balance",
                "--source",
                "fibonacci-word",
                "--pattern",
                "01",
                "--nmax",
                "50",
                "--horizon",
                "5000",
                "--jobs",
                "2",
            ])
            .arg("--out")
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(read(a.path(), "balance.json"), read(b.path(), "balance.json"));
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, jobs) in [(&a, "1"), (&b, "4")] {
        let status = bin()
            .args([
                "complexity",
                "--source",
                "chacon",
                "--nmax",
                "20",
                "--horizon",
                "20000",
                "--jobs",
                jobs,
            ])
            .arg("--out")
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        read(a.path(), "complexity.json"),
        read(b.path(), "complexity.json")
    );
}

#[test]
fn dfao_spec_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    // The marker-word automaton in the on-disk format.
    let spec = serde_json::json!({
        "states": ["0","1","2","3","4","5","6","7","8","9"],
        "initial": "0",
        "transitions": {
            "0": {"0": "0", "1": "1"},
            "1": {"0": "2"},
            "2": {"0": "3", "1": "4"},
            "3": {"0": "5", "1": "6"},
            "4": {"0": "7"},
            "5": {"0": "8", "1": "9"},
            "6": {"0": "8"},
            "7": {"0": "3", "1": "4"},
            "8": {"0": "8", "1": "9"},
            "9": {"0": "5"}
        },
        "output": {
            "0": "*", "1": "1", "2": "1", "3": "0", "4": "0",
            "5": "0", "6": "1", "7": "0", "8": "1", "9": "0"
        },
        "numeration": "fibonacci"
    });
    let path = dir.path().join("dfao.json");
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    let status = bin()
        .args(["dfao", "--len", "24"])
        .arg("--spec")
        .arg(&path)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let word = read(dir.path(), "dfao.word");
    assert!(word.contains("*11000101010010010010100"), "{word}");
}

#[test]
fn substitution_file_source_works() {
    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("fib.json");
    std::fs::write(&rules, r#"{"rules": {"0": "01", "1": "0"}, "seed": "0"}"#).unwrap();
    let status = bin()
        .args(["generate", "--len", "13"])
        .arg("--sub")
        .arg(&rules)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(read(dir.path(), "generate.word").contains("0100101001001"));
}

#[test]
fn cache_is_semantically_invisible() {
    let cache = tempfile::tempdir().unwrap();
    let plain = tempfile::tempdir().unwrap();
    let cached = tempfile::tempdir().unwrap();
    let warm = tempfile::tempdir().unwrap();
    let run = |dir: &Path, env: Option<&Path>| {
        let mut cmd = bin();
        cmd.args(["generate", "--source", "period-doubling", "--len", "2048"])
            .arg("--out")
            .arg(dir);
        match env {
            Some(cache_dir) => cmd.env("BALANCELAB_CACHE_DIR", cache_dir),
            None => cmd.env_remove("BALANCELAB_CACHE_DIR"),
        };
        assert!(cmd.status().unwrap().success());
    };
    run(plain.path(), None);
    run(cached.path(), Some(cache.path()));
    run(warm.path(), Some(cache.path())); // second run hits the cache
    let reference = read(plain.path(), "generate.word");
    assert_eq!(reference, read(cached.path(), "generate.word"));
    assert_eq!(reference, read(warm.path(), "generate.word"));
    assert!(cache.path().read_dir().unwrap().count() > 0, "cache populated");
}

#[test]
fn appendix_a_table_matches() {
    let dir = tempfile::tempdir().unwrap();
    let output = bin()
        .args(["appendix-a", "--nmax", "6", "--horizon", "5000"])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("n=2 predicted=14"));
    let report: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "appendix-a.json")).unwrap();
    assert_eq!(report["all_match"], true);
}
