use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_cohprobe");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("COHPROBE_THREADS")
        .output()
        .unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Schema line and column row of a CSV output.
fn schema_and_columns(csv: &str) -> (String, String) {
    let schema = csv.lines().find(|l| l.starts_with("#! schema = ")).unwrap().to_string();
    let columns = csv.lines().find(|l| !l.starts_with('#')).unwrap().to_string();
    (schema, columns)
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn golden_schemas() {
    let cases: [(&[&str], &str, &str); 6] = [
        (
            &["scan", "--model", "tfim", "--lambda", "0.5:0.6:0.05"],
            "scan/v1",
            "param,coherence,chi,error",
        ),
        (
            &["point", "--model", "kitaev", "--jx", "0.25"],
            "point/v1",
            "param,coherence,chi",
        ),
        (
            &["locus", "--model", "tfim", "--kbt", "0.1,0.2,0.3,0.4,0.5,0.6"],
            "locus/v1",
            "kbt,lambda_m,chi_max,tie",
        ),
        (
            &["discord", "--kbt", "0.2", "--lambda", "0:1:0.5"],
            "discord/v1",
            "kbt,lambda,discord",
        ),
        (
            &["discord", "--kbt", "0.2", "--lambda", "0:2:0.1", "--maximum", "true"],
            "discord-max/v1",
            "kbt,lambda_max,discord_max,tie,out_of_range",
        ),
        (
            &["oracle", "--model", "xx", "--n", "6", "--lambda", "0.5"],
            "oracle/v1",
            "observable,ed,formula,difference,flagged",
        ),
    ];
    for (args, schema, columns) in cases {
        let out = run_ok(args);
        assert!(out.starts_with("# cohprobe "), "{args:?}");
        assert_eq!(
            schema_and_columns(&out),
            (format!("#! schema = {schema}"), columns.to_string()),
            "{args:?}"
        );
    }
}

#[test]
fn fig1_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["figures", "--which", "fig1", "--outdir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    assert_eq!(
        schema_and_columns(&csv),
        (
            "#! schema = fig1/v1".into(),
            "lambda,C_symbroken,C_thermalground,chi_thermalground".into()
        )
    );
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 201);
    let first: Vec<f64> = rows[0].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!((first[1] - 1.0).abs() < 1e-9 && (first[2] - 1.0).abs() < 1e-9);
}

fn replay_matches(args: &[&str], file: &str) {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join(file);
    let b = dir.path().join(format!("again-{file}"));
    let mut first: Vec<&str> = args.to_vec();
    first.extend(["-o", a.to_str().unwrap()]);
    run_ok(&first);
    let sub = args[0];
    let fmt = if file.ends_with(".json") { "json" } else { "csv" };
    run_ok(&[
        sub,
        "--config",
        a.to_str().unwrap(),
        "--format",
        fmt,
        "-o",
        b.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{args:?}");
}

#[test]
fn outputs_replay_bit_identically() {
    replay_matches(
        &[
            "scan",
            "--model",
            "tfim",
            "--kbt",
            "0.3",
            "--lambda",
            "0.7:1.3:0.05",
            "--refine",
            "true",
        ],
        "scan.csv",
    );
    replay_matches(
        &["scan", "--model", "xx", "--lambda", "0.2:1.2:0.1", "--abs-tol", "1e-9"],
        "xx.csv",
    );
    replay_matches(
        &["point", "--model", "kitaev", "--jx", "0.6", "--format", "json"],
        "point.json",
    );
    replay_matches(
        &["discord", "--kbt", "0.1:0.3:0.1", "--lambda", "0:2:0.25"],
        "discord.csv",
    );
    replay_matches(
        &[
            "oracle", "--model", "tfim", "--n", "6", "--lambda", "1.2", "--kbt", "0.5",
        ],
        "oracle.csv",
    );
}

#[test]
fn plain_config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(
        &conf,
        "# thermal-ground sweep\nmodel = tfim\nstate = thermalground\nlambda = 0.5:1.5:0.25\n",
    )
    .unwrap();
    let out = run_ok(&["scan", "--config", conf.to_str().unwrap()]);
    assert_eq!(data_rows(&out).len(), 5);
    assert!(out.contains("# state = thermalground"));
    let narrowed = run_ok(&["scan", "--config", conf.to_str().unwrap(), "--lambda", "0.5:1:0.25"]);
    assert_eq!(data_rows(&narrowed).len(), 3);
    let wrong = run(&["point", "--config", conf.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn locus_writes_fit_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("locus.csv");
    run_ok(&[
        "locus",
        "--model",
        "tfim",
        "--kbt",
        "0.05:0.6:0.05",
        "-o",
        out.to_str().unwrap(),
    ]);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(data_rows(&csv).len(), 12);
    assert!(csv.contains("#! fit.knee_kbt = "));
    let fit: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("locus.fit.json")).unwrap()).unwrap();
    assert_eq!(fit["schema"], "locus-fit/v1");
    for key in ["slope", "intercept", "knee_kbt", "upper_slope", "fit_residual"] {
        assert!(fit[key].is_f64(), "{key}");
    }
    assert_eq!(fit["locus"].as_array().unwrap().len(), 12);
}

#[test]
fn exit_codes() {
    let usage: [&[&str]; 8] = [
        &["scan", "--model", "tfim", "--lambda", "1:0:0.1"],
        &["scan", "--model", "kitaev", "--kbt", "0.3"],
        &["scan", "--model", "kitaev", "--lambda", "0:2:0.1"],
        &["point", "--model", "tfim", "--state", "gibbs", "--lambda", "1"],
        &["scan", "--model", "tfim", "--no-such-flag"],
        &[
            "oracle", "--model", "tfim", "--n", "13", "--lambda", "1", "--kbt", "0.5",
        ],
        &["discord", "--kbt", "0.9", "--maximum", "true"],
        &["locus", "--model", "xx"],
    ];
    for args in usage {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let failed = run(&["scan", "--model", "xx", "--xx-yy", "omitted", "--lambda", "0:0.5:0.25"]);
    assert_eq!(failed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&failed.stderr).contains("at parameter 0"));
    let threads = Command::new(BIN)
        .args(["point", "--model", "xx", "--lambda", "0.5"])
        .env("COHPROBE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(2));
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let args = ["scan", "--model", "tfim", "--kbt", "0.2", "--lambda", "0.5:1.5:0.01"];
    let with = |n: &str| {
        Command::new(BIN)
            .args(args)
            .env("COHPROBE_THREADS", n)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(with("1"), with("4"));
}

#[test]
fn json_output_parses() {
    let out = run_ok(&["scan", "--model", "xx", "--lambda", "0:2:0.5", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], "scan/v1");
    assert_eq!(doc["columns"].as_array().unwrap().len(), 4);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][1], 0.0);
    assert!(Path::new(BIN).exists());
}
