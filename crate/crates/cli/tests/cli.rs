use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str], config_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ladderlab"));
    cmd.args(args).env_remove("LADDERLAB_CONFIG");
    if let Some(p) = config_env {
        cmd.env("LADDERLAB_CONFIG", p);
    }
    cmd.output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn exit_codes() {
    let found = run(
        &["homothetic", "--expr", "all", "--n", "3", "--N", "10"],
        None,
    );
    assert_eq!(found.status.code(), Some(0));
    let none = run(
        &["homothetic", "--expr", "odds", "--n", "2", "--N", "100"],
        None,
    );
    assert_eq!(none.status.code(), Some(1));
    assert!(stderr(&none).contains("none"));
    let usage = run(
        &[
            "vdw", "--expr", "all", "--len", "0", "--colors", "2", "--nmax", "9",
        ],
        None,
    );
    assert_eq!(usage.status.code(), Some(2));
    let bad_expr = run(&["eval", "union(odds evens)", "--N", "5"], None);
    assert_eq!(bad_expr.status.code(), Some(2));
    assert!(stderr(&bad_expr).contains("byte 11"));
    let interrupted = run(
        &[
            "vdw",
            "--expr",
            "all",
            "--len",
            "4",
            "--colors",
            "2",
            "--nmax",
            "40",
            "--node-budget",
            "1000",
        ],
        None,
    );
    assert_eq!(interrupted.status.code(), Some(3));
    let capped = run(&["eval", "odds", "--N", "1000", "--window-cap", "10"], None);
    assert_eq!(capped.status.code(), Some(3));
    let refused = run(
        &["adversarial", "--expr", "all", "--k", "1", "--N", "100"],
        None,
    );
    assert_eq!(refused.status.code(), Some(1));
}

#[test]
fn out_flag_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let out = run(
        &[
            "vdw",
            "--expr",
            "modset(2)",
            "--len",
            "3",
            "--colors",
            "2",
            "--nmax",
            "30",
            "--out",
            cert.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\"N\":17"), "{text}");
    assert_eq!(
        run(&["verify", cert.to_str().unwrap()], None).status.code(),
        Some(0)
    );

    // claim one less than the truth: the exhaustive replay finds an avoider
    let forged = text
        .replace("\"N\":17", "\"N\":16")
        .replacen(",0]", "]", 1)
        .replacen(",1]", "]", 1);
    fs::write(&cert, forged).unwrap();
    let v = run(&["verify", cert.to_str().unwrap()], None);
    assert_eq!(v.status.code(), Some(1), "{}", stderr(&v));

    fs::write(&cert, "{\"version\":7}").unwrap();
    assert_eq!(
        run(&["verify", cert.to_str().unwrap()], None).status.code(),
        Some(2)
    );
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("limits.toml");
    fs::write(&cfg, "workers = 4\nnode_budget = 1000\n").unwrap();
    let args = [
        "vdw", "--expr", "all", "--len", "4", "--colors", "2", "--nmax", "40",
    ];

    // the file's tiny budget applies through the environment variable
    let via_env = run(&args, cfg.to_str());
    assert_eq!(via_env.status.code(), Some(3), "{}", stderr(&via_env));
    let via_flag = run(
        &[&args[..], &["--config", cfg.to_str().unwrap()]].concat(),
        None,
    );
    assert_eq!(via_flag.status.code(), Some(3));
    // a flag beats the file
    let overridden = run(
        &[&args[..], &["--node-budget", "100000000", "--workers", "2"]].concat(),
        cfg.to_str(),
    );
    assert_eq!(overridden.status.code(), Some(0), "{}", stderr(&overridden));

    fs::write(&cfg, "workers = 2\nnode_budgte = 5\n").unwrap();
    let bad = run(&args, cfg.to_str());
    assert_eq!(bad.status.code(), Some(2));
    let msg = stderr(&bad);
    assert!(
        msg.contains("node_budgte") && msg.contains("line 2"),
        "{msg}"
    );
}

#[test]
fn inputs_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("c.txt");
    fs::write(&col, "[1, 0, 1, 0, 1, 0]").unwrap();
    let none = run(
        &[
            "mono-ap",
            "--expr",
            "odds",
            "--coloring",
            col.to_str().unwrap(),
            "--len",
            "2",
        ],
        None,
    );
    assert_eq!(none.status.code(), Some(1));
    let some = run(
        &[
            "mono-ap",
            "--expr",
            "evens",
            "--coloring",
            col.to_str().unwrap(),
            "--len",
            "3",
        ],
        None,
    );
    assert_eq!(some.status.code(), Some(0));
    let text = String::from_utf8(some.stdout).unwrap();
    assert!(
        text.contains(r#""witness":{"kind":"ap","start":1,"diff":2,"len":3,"color":1}"#),
        "{text}"
    );

    let graph = dir.path().join("g.txt");
    fs::write(&graph, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    let part = run(&["digraph-partition", graph.to_str().unwrap()], None);
    assert_eq!(part.status.code(), Some(0));
    let text = String::from_utf8(part.stdout).unwrap();
    assert!(
        text.contains(r#""e1":[[0,1],[1,2]]"#) && text.contains(r#""e2":[[2,0]]"#),
        "{text}"
    );
    fs::write(&graph, "2 1\n1 1\n").unwrap();
    assert_eq!(
        run(&["digraph-partition", graph.to_str().unwrap()], None)
            .status
            .code(),
        Some(2)
    );

    let growth = run(&["chromatic-growth", "--expr", "all", "--ns", "3,5"], None);
    assert_eq!(
        String::from_utf8(growth.stdout).unwrap(),
        "N,colors\n3,3\n5,5\n"
    );
}
