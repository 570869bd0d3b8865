use std::path::PathBuf;
use std::process::{Command, Output};

fn regcycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regcycle"))
        .args(args)
        .env_remove("REGCYCLE_MT_TABLE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `REGCYCLE_BLESS=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("REGCYCLE_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, want, "golden {name} differs");
}

#[test]
fn decide_intro_example() {
    let o = regcycle(&["decide", "--group", "sym:10", "--element", "(1 2)(3 4 5)(6 7 8 9 10)", "--action", "ksets:2"]);
    assert_eq!(o.status.code(), Some(0));
    golden("decide_intro.json", &stdout(&o));
}

#[test]
fn decide_six_cycle_on_pgl2_5_cosets() {
    let o = regcycle(&[
        "decide", "--group", "sym:6", "--element", "(1 2 3 4 5 6)", "--action", "cosets:pgl2:5", "--output", "tsv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    golden("decide_s6.tsv", &stdout(&o));
}

#[test]
fn decide_affine() {
    let o = regcycle(&["decide", "--group", "agl:2,3", "--element", "[[1,1],[0,1]]+[1,0]", "--action", "affine"]);
    assert_eq!(o.status.code(), Some(0));
    golden("decide_affine.json", &stdout(&o));
}

#[test]
fn decide_by_cycle_type_uses_the_rule() {
    let o = regcycle(&["decide", "--group", "sym:40", "--element", "type:7,5,3,2", "--action", "ksets:4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("\"verdict\": true") && s.contains("kset_combinatorial"), "{s}");
    // four cycles are needed to reach order 210, more fixed points do not help
    for degree in ["sym:17", "sym:40"] {
        let o = regcycle(&["decide", "--group", degree, "--element", "type:7,5,3,2", "--action", "ksets:3"]);
        assert!(stdout(&o).contains("\"verdict\": false"));
    }
}

#[test]
fn scans() {
    let o = regcycle(&["scan", "--action", "ksets:3", "--m", "6..17", "--output", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    golden("scan_ksets3.tsv", &stdout(&o));
    let o = regcycle(&["scan", "--action", "ksets:2", "--m", "10", "--output", "tsv"]);
    assert_eq!(stdout(&o), "m\taction\tcycle_type\n10\tksets:2\t[5,3,2]\n");
    let o = regcycle(&["scan", "--action", "partitions:2x3", "--m", "6", "--output", "tsv"]);
    assert_eq!(stdout(&o), "m\taction\tcycle_type\n");
    let o = regcycle(&["scan", "--action", "partitions:2x2", "--m", "4", "--output", "json"]);
    assert!(stdout(&o).contains("\"cycle_type\": [\n        4\n      ]"), "{}", stdout(&o));
}

#[test]
fn verify_passing_suites() {
    let o = regcycle(&["verify", "--suite", "s6-exception"]);
    assert_eq!(o.status.code(), Some(0));
    golden("verify_s6.json", &stdout(&o));
    let o = regcycle(&["verify", "--suite", "ksets", "--m", "4..13", "--output", "tsv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn bounds_all_reports_its_failures() {
    let o = regcycle(&["verify", "--suite", "bounds-all", "--output", "tsv"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("m=2 p=2 k=1 alpha=4/7"), "{s}");
    assert!(s.contains("inconclusive\tStirling"), "{s}");
}

#[test]
fn bounds_table() {
    let o = regcycle(&["bounds", "--m", "47..52", "--output", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    golden("bounds_47_52.tsv", &stdout(&o));
}

#[test]
fn sampled_reports_are_identical_across_runs_and_threads() {
    let a = regcycle(&["--threads", "1", "--seed", "7", "verify", "--suite", "partitions"]);
    let b = regcycle(&["--threads", "2", "--seed", "7", "verify", "--suite", "partitions"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = regcycle(&["--threads", "2", "--seed", "8", "verify", "--suite", "partitions"]);
    assert!(stdout(&c).contains("\"seed\": 8"));
}

#[test]
fn exit_codes() {
    let bad_group = regcycle(&["decide", "--group", "sym:x", "--element", "(1 2)", "--action", "natural"]);
    assert_eq!(bad_group.status.code(), Some(2));
    let not_in_group = regcycle(&["decide", "--group", "alt:4", "--element", "(1 2)", "--action", "natural"]);
    assert_eq!(not_in_group.status.code(), Some(2));
    let no_flag = regcycle(&["decide", "--group", "sym:4"]);
    assert_eq!(no_flag.status.code(), Some(2));
    let unknown = regcycle(&["verify", "--suite", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
    let cap = regcycle(&["--cap", "1", "decide", "--group", "sym:40", "--element", "(1 2 3)", "--action", "natural"]);
    assert_eq!(cap.status.code(), Some(3));
}

#[test]
fn user_mt_table() {
    let dir = std::env::temp_dir().join(format!("regcycle-mt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.tsv");
    std::fs::write(&bad, "alt\tfive\t5\t3\n").unwrap();
    let run = |path: &std::path::Path| {
        Command::new(env!("CARGO_BIN_EXE_regcycle"))
            .args(["verify", "--suite", "s6-exception"])
            .env("REGCYCLE_MT_TABLE", path)
            .output()
            .unwrap()
    };
    assert_eq!(run(&bad).status.code(), Some(2));
    assert_eq!(run(&dir.join("missing.tsv")).status.code(), Some(2));
    let good = dir.join("good.tsv");
    std::fs::write(&good, "# family\tparameter\tm(T)\tomega\nsz\t8\t65\t4\n").unwrap();
    assert_eq!(run(&good).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}
