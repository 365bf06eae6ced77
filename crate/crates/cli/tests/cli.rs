use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cascade-lab"));
    c.env_remove("CASCADE_LAB_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// CSV body with the comment header stripped.
fn body(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect()
}

#[test]
fn tail_constant_prints_ten_digits() {
    let o = run(&["theory", "--what", "tail-constant", "--theta", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0.7978845608");
}

#[test]
fn theory_rows() {
    let o = run(&[
        "theory",
        "--what",
        "connectivity",
        "--c",
        "1",
        "--p2",
        "0.5",
        "--d",
        "2.5",
    ]);
    assert_eq!(stdout(&o).trim(), "0.5134171190,0.3976911903");
    let o = run(&["theory", "--what", "gamma", "--x", "0.75"]);
    assert_eq!(stdout(&o).trim(), "1.2254167025");
    let o = run(&["theory", "--what", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["cascade-tail", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    let o = run(&["cascade-tail", "--k", "100,50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("--reps"),
        "flag table missing"
    );
    assert_eq!(
        run(&["census", "--family", "star", "--i", "3"])
            .status
            .code(),
        Some(1)
    );
    assert!(run(&["--help"]).status.success());
}

#[test]
fn runtime_failure_exits_two() {
    let o = run(&["graph-gen", "--out", "/proc/definitely/not/writable.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cascade_tail_writes_schema_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tails.csv");
    let rows = dir.path().join("rows.csv");
    let o = run(&[
        "cascade-tail",
        "--family",
        "cm-erased",
        "--n",
        "400",
        "--theta",
        "1",
        "--k",
        "5,10,20",
        "--reps",
        "200",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
        "--rows",
        rows.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# cascade-lab "));
    assert!(text.contains("# master_seed = 7"));
    assert!(text.contains("# family = cm-erased"));
    let b = body(&out);
    assert_eq!(b[0], "k,p_hat,se,ci_low,ci_high,theory");
    assert_eq!(b.len(), 4);
    let r = body(&rows);
    assert_eq!(r[0], "rep,m,theta,A,A_hat,A_tilde,T,reached_disconnection");
    assert_eq!(r.len(), 201);
}

#[test]
fn output_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for t in ["1", "3"] {
        let out = dir.path().join(format!("t{t}.csv"));
        let o = run(&[
            "cascade-tail",
            "--n",
            "200",
            "--k",
            "5,10",
            "--reps",
            "150",
            "--seed",
            "11",
            "--threads",
            t,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        files.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.conf");
    std::fs::write(
        &cfg,
        "# disconnection run\nfamily = cm\nn = 200\nreps = 40\nseed = 3\n",
    )
    .unwrap();
    let out = dir.path().join("d.csv");
    let o = run(&[
        "first-disconnect",
        "--config",
        cfg.to_str().unwrap(),
        "--reps",
        "25",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# reps = 25"));
    assert!(text.contains("# master_seed = 3"));
    let b = body(&out);
    assert_eq!(b[0], "rep,t_scaled");
    assert_eq!(b.len(), 26);
}

#[test]
fn env_var_sets_default_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args([
            "outside-giant",
            "--n",
            "400",
            "--reps",
            "20",
            "--checkpoints",
            "5,20",
        ])
        .env("CASCADE_LAB_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let b = body(&dir.path().join("outside-giant.csv"));
    assert_eq!(b[0], "i,ratio_mean,ratio_se,theory");
    assert_eq!(b.len(), 3);
}

#[test]
fn remaining_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n);
    let cases: [(&[&str], &str, &str); 4] = [
        (
            &[
                "census", "--n", "2000", "--i", "40", "--k-max", "4", "--reps", "20",
            ],
            "census.csv",
            "k,count_mean,theory",
        ),
        (
            &["connectivity", "--n", "400", "--c", "0.5,1", "--reps", "50"],
            "conn.csv",
            "c,q,conditioned,p_hat,se,theory",
        ),
        (
            &[
                "fpt",
                "--boundary",
                "gplus",
                "--gamma",
                "0.3",
                "--l",
                "k^0.6",
                "--k",
                "100,400",
                "--reps",
                "500",
            ],
            "fpt.csv",
            "k,boundary,p_hat,se,theory",
        ),
        (
            &["graph-gen", "--family", "lattice", "--n", "3"],
            "g.csv",
            "u,v",
        ),
    ];
    for (args, file, header) in cases {
        let out = path(file);
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", out.to_str().unwrap()]);
        let o = run(&full);
        assert!(
            o.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert_eq!(body(&out)[0], header, "{args:?}");
    }
    assert_eq!(body(&path("fpt.csv")).len(), 1 + 2 * 2);
    assert_eq!(body(&path("g.csv")).len(), 1 + 12);
}
