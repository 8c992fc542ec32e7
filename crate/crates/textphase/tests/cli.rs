//! End-to-end tests of the `textphase` binary: flag coverage, exit codes,
//! and byte-stable outputs against committed golden files.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use textphase::fixtures;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_textphase"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn textphase");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("run textphase")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

/// Deterministic single-text fixture: a 9-word cycle with seeded vectors.
fn write_text_fixture(dir: &Path) -> (PathBuf, PathBuf) {
    let lexicon = fixtures::word_lexicon(16);
    let table = fixtures::gaussian_table(&lexicon, 50, 1);
    let embeddings = dir.join("embeddings.txt");
    textphase::embeddings_io::write_embeddings(&table, &embeddings).unwrap();
    let text = fixtures::cycle_tokens(&lexicon[..9], 2600).join(" ");
    let text_path = dir.join("periodic.txt");
    std::fs::write(&text_path, text).unwrap();
    (embeddings, text_path)
}

fn assert_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("testdata/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden {name} ({e}); run with UPDATE_GOLDEN=1"));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

// ---------------------------------------------------------------------------
// Help / flag coverage
// ---------------------------------------------------------------------------

#[test]
fn help_documents_every_global_flag_and_subcommand() {
    let output = run(&["--help"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    for flag in ["--embeddings", "--dim", "--config", "--out", "--format", "--seed"] {
        assert!(text.contains(flag), "top-level help missing {flag}");
    }
    for sub in [
        "analyze", "acf", "spectrum", "fit", "classify", "sweep", "transition", "generate",
        "fixtures",
    ] {
        assert!(text.contains(sub), "top-level help missing subcommand {sub}");
    }
    assert!(text.contains("Exit codes"));
}

#[test]
fn subcommand_help_documents_their_flags() {
    let acf = stdout_of(&run(&["acf", "--help"]));
    assert!(acf.contains("--lags"));
    assert!(acf.contains("periodic-scan"));
    assert!(acf.contains("--stdin"));

    let fit = stdout_of(&run(&["fit", "--help"]));
    assert!(fit.contains("--range"));

    let analyze = stdout_of(&run(&["analyze", "--help"]));
    assert!(analyze.contains("--stdin"));
    assert!(analyze.contains("--corpus"));
    assert!(analyze.contains("--plot-script"));

    let generate = stdout_of(&run(&["generate", "--help"]));
    for flag in [
        "--endpoint",
        "--model",
        "--prompt-file",
        "--temperatures",
        "--seeds",
        "--target-tokens",
        "--max-tokens-per-call",
        "TEXTPHASE_API_KEY",
    ] {
        assert!(generate.contains(flag), "generate help missing {flag}");
    }

    let sweep = stdout_of(&run(&["sweep", "--help"]));
    assert!(sweep.contains("--corpus"));
}

// ---------------------------------------------------------------------------
// Exit codes
// ---------------------------------------------------------------------------

#[test]
fn missing_embeddings_file_exits_2_and_names_the_path() {
    let output = run_with_stdin(
        &["analyze", "--embeddings", "/no/such/vectors.txt", "--stdin"],
        "some words here",
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("/no/such/vectors.txt"));
}

#[test]
fn empty_stdin_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, _) = write_text_fixture(dir.path());
    let output = run_with_stdin(
        &[
            "analyze",
            "--embeddings",
            embeddings.to_str().unwrap(),
            "--stdin",
            "--out",
            dir.path().join("out").to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn all_oov_text_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, _) = write_text_fixture(dir.path());
    let output = run_with_stdin(
        &["classify", "--embeddings", embeddings.to_str().unwrap(), "--stdin"],
        "entirely unknown vocabulary everywhere",
    );
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn too_short_text_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, _) = write_text_fixture(dir.path());
    let output = run_with_stdin(
        &["classify", "--embeddings", embeddings.to_str().unwrap(), "--stdin"],
        &fixtures::word_lexicon(16)[..9].join(" ").repeat(10),
    );
    assert_eq!(output.status.code(), Some(4));
    assert!(stderr_of(&output).contains("too short"));
}

#[test]
fn bad_lag_list_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, text) = write_text_fixture(dir.path());
    let output = run(&[
        "acf",
        "--embeddings",
        embeddings.to_str().unwrap(),
        "--lags",
        "5,4,3",
        text.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

// ---------------------------------------------------------------------------
// Golden outputs
// ---------------------------------------------------------------------------

#[test]
fn acf_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, text) = write_text_fixture(dir.path());
    let args = [
        "acf",
        "--embeddings",
        embeddings.to_str().unwrap(),
        "--lags",
        "1,2,3,5,9,18,27,100",
        text.to_str().unwrap(),
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", stderr_of(&first));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");
    assert_golden("acf.csv", &stdout_of(&first));
}

#[test]
fn classify_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, text) = write_text_fixture(dir.path());
    let args = [
        "classify",
        "--embeddings",
        embeddings.to_str().unwrap(),
        text.to_str().unwrap(),
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", stderr_of(&first));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_golden("classify.json", &stdout_of(&first));

    let json: serde_json::Value = serde_json::from_str(&stdout_of(&first)).unwrap();
    assert_eq!(json["label"], "periodic");
}

#[test]
fn spectrum_emits_csv_and_json_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, text) = write_text_fixture(dir.path());
    let out = dir.path().join("spec-out");
    let output = run(&[
        "spectrum",
        "--embeddings",
        embeddings.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        text.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let csv = std::fs::read_to_string(out.join("periodic_spectrum.csv")).unwrap();
    assert!(csv.starts_with("k,magnitude\n"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("periodic_spectrum.json")).unwrap())
            .unwrap();
    // A 9-word cycle: implied period reads ~9 whichever harmonic wins.
    let period = json["implied_period"].as_f64().unwrap();
    assert!((period - 9.0).abs() <= 1.0, "period {period}");
    assert!(json["metric"].as_f64().unwrap() > 0.05);
    assert_golden("spectrum.json", &serde_json::to_string_pretty(&json).unwrap());
}

#[test]
fn fit_reports_undefined_for_periodic_text() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, text) = write_text_fixture(dir.path());
    let output = run(&[
        "fit",
        "--embeddings",
        embeddings.to_str().unwrap(),
        "--range",
        "1:600",
        text.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(json["status"], "undefined_nonpositive_acf");
    assert_eq!(json["fit_range"], serde_json::json!([1, 600]));
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

#[test]
fn analyze_writes_a_complete_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let (embeddings, text) = write_text_fixture(dir.path());
    let out = dir.path().join("bundle");
    let output = run(&[
        "analyze",
        "--embeddings",
        embeddings.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--plot-script",
        text.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert!(stdout_of(&output).contains("periodic"));
    let bundle = out.join("periodic");
    for name in [
        "acf_scan.csv",
        "acf_fit.csv",
        "spectrum.csv",
        "spectrum.json",
        "fit.json",
        "label.json",
        "metadata.json",
        "plot.py",
    ] {
        assert!(bundle.join(name).exists(), "missing {name}");
    }
    let label: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(bundle.join("label.json")).unwrap()).unwrap();
    assert_eq!(label["label"], "periodic");
    let metadata: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(bundle.join("metadata.json")).unwrap())
            .unwrap();
    assert_eq!(metadata["embedding_dim"], 50);
}

#[test]
fn sweep_pipeline_end_to_end_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let embeddings = fixtures::write_sweep_fixture(
        dir.path(),
        &[0.1, 0.4, 1.0, 1.3],
        &[1, 2],
        2600,
        7,
    )
    .unwrap();
    let corpus = dir.path().join("corpus");

    let run_once = |out: &Path| {
        let output = run(&[
            "sweep",
            "--embeddings",
            embeddings.to_str().unwrap(),
            "--corpus",
            corpus.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{}", stderr_of(&output));
        output
    };
    let out1 = dir.path().join("out1");
    let out2 = dir.path().join("out2");
    let output = run_once(&out1);
    run_once(&out2);

    for name in ["sweep.csv", "transition.csv", "gapelmaper.csv", "sweep_summary.json"] {
        let a = std::fs::read(out1.join(name)).unwrap();
        let b = std::fs::read(out2.join(name)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{name} differs between runs");
    }

    // Low temperatures classify periodic, high ones do not.
    let stdout = stdout_of(&output);
    assert!(stdout.contains("t=0.1: 2 text(s) — periodic 2"));
    assert!(stdout.contains("t=1.3: 2 text(s) — periodic 0"));

    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out1.join("sweep_summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["summaries"].as_array().unwrap().len(), 4);
}

#[test]
fn transition_outputs_ordered_table() {
    let dir = tempfile::tempdir().unwrap();
    let embeddings =
        fixtures::write_sweep_fixture(dir.path(), &[0.4, 1.0], &[1], 2600, 3).unwrap();
    let corpus = dir.path().join("corpus");
    let output = run(&[
        "transition",
        "--embeddings",
        embeddings.to_str().unwrap(),
        "--corpus",
        corpus.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let text = stdout_of(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("temperature,mean_metric,std_metric"));
    let first: f64 = lines.next().unwrap().split(',').next().unwrap().parse().unwrap();
    assert_eq!(first, 0.4);
}

#[test]
fn fixtures_subcommand_writes_a_usable_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fx");
    let output = run(&[
        "--seed",
        "9",
        "--out",
        out.to_str().unwrap(),
        "fixtures",
        "--temperatures",
        "0.1,1.0",
        "--seeds",
        "1",
        "--words",
        "2600",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert!(out.join("embeddings.txt").exists());
    assert!(out.join("corpus").join("fixture_t0.1_s1.txt").exists());
    assert!(out.join("corpus").join("fixture_t1_s1.txt").exists());
}
