//! `textphase` — measure the statistical phase of a text.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use textphase_core::{
    acf_fft, acf_spectrum, embed_and_center, gapelmaper, phase, tokenize, AcfCurve,
    AnalysisConfig, EmbeddingTable, LagGrid, LagRange, PhaseLabel, VectorSequence,
};

use textphase::config::Settings;
use textphase::corpus::{read_text, scan_corpus};
use textphase::embeddings_io::load_embeddings;
use textphase::fixtures;
use textphase::genclient::{self, GenerationConfig};
use textphase::report::{
    self, to_json_pretty, write_acf_csv, write_analyze_bundle, write_gapelmaper_table_csv,
    write_spectrum_csv, write_sweep_rows_csv, write_transition_csv, AnalyzeProducts,
    ClassifySummary, FitSummary, RunMetadata, SpectrumSummary,
};
use textphase::sweep::sweep;

const EXIT_INPUT: i32 = 2;
const EXIT_EMPTY: i32 = 3;
const EXIT_COMPUTE: i32 = 4;
const EXIT_GENERATION: i32 = 5;

#[derive(Parser)]
#[command(
    name = "textphase",
    version,
    about = "Measure the statistical phase of a text: periodic, critical, or amorphous",
    long_about = "Embeds words as vectors, computes lag autocorrelations, analyzes their \
                  spectrum, and fits decay laws. Texts classify as periodic (repeating), \
                  critical (power-law autocorrelation decay), amorphous (exponential \
                  decay), or indeterminate.",
    after_help = "Exit codes: 0 success, 2 input error, 3 empty input, 4 computation error, \
                  5 generation/network error."
)]
struct Cli {
    /// Path to a word-embedding file (text format: `word v1 v2 ...` per line)
    #[arg(long, global = true)]
    embeddings: Option<PathBuf>,

    /// Expected embedding dimension; loading fails if the file disagrees
    #[arg(long, global = true)]
    dim: Option<usize>,

    /// Analysis settings file (TOML; see `Settings` keys in the README)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; most commands print to stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Format for tabular outputs
    #[arg(long, global = true, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,

    /// Seed for synthetic fixture generation
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on each input text: tokenize, embed, autocorrelate,
    /// spectrum, decay fits, classification; writes a bundle per text
    Analyze {
        /// Input text files
        files: Vec<PathBuf>,
        /// Read a single text from standard input
        #[arg(long)]
        stdin: bool,
        /// Analyze every text in a sweep corpus directory
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Write a self-contained plotting script next to the data
        #[arg(long)]
        plot_script: bool,
    },
    /// Autocorrelation curve of a text (CSV: lag,value,pair_count)
    Acf {
        files: Vec<PathBuf>,
        #[arg(long)]
        stdin: bool,
        /// Lag grid: periodic-scan, medium-range, long-range, or a
        /// comma-separated list of positive integers
        #[arg(long, default_value = "periodic-scan")]
        lags: String,
    },
    /// DFT of the short-range autocorrelation (CSV: k,magnitude) plus a
    /// JSON summary {peak_index, implied_period, metric}
    Spectrum {
        files: Vec<PathBuf>,
        #[arg(long)]
        stdin: bool,
    },
    /// Power-law and exponential fits of the autocorrelation decay with
    /// their MAPE ratio (JSON)
    Fit {
        files: Vec<PathBuf>,
        #[arg(long)]
        stdin: bool,
        /// Lag interval, MIN:MAX inclusive
        #[arg(long, default_value = "1:600")]
        range: String,
    },
    /// Classify a text as periodic, critical, amorphous, or indeterminate
    Classify {
        files: Vec<PathBuf>,
        #[arg(long)]
        stdin: bool,
    },
    /// Classify a whole sweep corpus and aggregate per temperature
    Sweep {
        /// Corpus directory of `<model>_t<temperature>_s<seed>.txt` files
        #[arg(long)]
        corpus: PathBuf,
        /// Write a self-contained plotting script next to the data
        #[arg(long)]
        plot_script: bool,
    },
    /// Periodicity-metric-vs-temperature table for a sweep corpus
    /// (CSV: temperature,mean_metric,std_metric)
    Transition {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Drive an OpenAI-compatible completion endpoint through a
    /// temperature sweep and store the texts as a corpus.
    /// Bearer token read from the TEXTPHASE_API_KEY environment variable.
    Generate {
        /// Base URL of the endpoint (POST <endpoint>/v1/completions)
        #[arg(long)]
        endpoint: String,
        /// Model name to request
        #[arg(long)]
        model: String,
        /// File holding the starting passage (default: a built-in
        /// public-domain opening paragraph)
        #[arg(long)]
        prompt_file: Option<PathBuf>,
        /// Comma-separated temperatures (default: 0.1 to 2.5 step 0.3)
        #[arg(long)]
        temperatures: Option<String>,
        /// Comma-separated integer seeds (default: 1 to 10)
        #[arg(long)]
        seeds: Option<String>,
        /// Completion tokens to accumulate per text
        #[arg(long, default_value_t = 10_000)]
        target_tokens: usize,
        #[arg(long, default_value_t = 512)]
        max_tokens_per_call: u32,
        /// Concurrent (temperature, seed) pairs in flight
        #[arg(long, default_value_t = 4)]
        concurrency: usize,
    },
    /// Write a synthetic sweep corpus plus matching embeddings (periodic
    /// texts below the cut temperature, i.i.d. texts above); useful for
    /// exercising sweep/transition without real data
    Fixtures {
        /// Temperatures to synthesize
        #[arg(long, default_value = "0.1,0.4,0.7,1.0,1.3")]
        temperatures: String,
        /// Seeds per temperature
        #[arg(long, default_value = "1,2")]
        seeds: String,
        /// Words per synthetic text
        #[arg(long, default_value_t = 3000)]
        words: usize,
    },
}

struct CliError {
    code: i32,
    message: String,
}

type CliResult<T> = Result<T, CliError>;

fn err(code: i32, message: impl Into<String>) -> CliError {
    CliError {
        code,
        message: message.into(),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn load_settings(cli: &Cli) -> CliResult<Settings> {
    match &cli.config {
        Some(path) => Settings::load(path).map_err(|e| err(EXIT_INPUT, format!("{e:#}"))),
        None => Ok(Settings::default()),
    }
}

fn load_table(cli: &Cli) -> CliResult<EmbeddingTable> {
    let path = cli.embeddings.as_ref().ok_or_else(|| {
        err(
            EXIT_INPUT,
            "this command needs --embeddings PATH (word-embedding text file)",
        )
    })?;
    let table =
        load_embeddings(path, cli.dim).map_err(|e| err(EXIT_INPUT, e.to_string()))?;
    if table.duplicate_count() > 0 {
        eprintln!(
            "warning: {} duplicate word(s) in {} (first occurrence kept)",
            table.duplicate_count(),
            path.display()
        );
    }
    Ok(table)
}

/// Resolve the input texts of a single-text command.
fn gather_texts(
    files: &[PathBuf],
    stdin: bool,
    corpus: Option<&PathBuf>,
) -> CliResult<Vec<(String, String)>> {
    let mut texts = Vec::new();
    if stdin {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| err(EXIT_INPUT, format!("cannot read stdin: {e}")))?;
        texts.push(("stdin".to_string(), text));
    }
    for file in files {
        let text = read_text(file).map_err(|e| err(EXIT_INPUT, e.to_string()))?;
        let id = file
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("text")
            .to_string();
        texts.push((id, text));
    }
    if let Some(dir) = corpus {
        let manifest = scan_corpus(dir).map_err(|e| err(EXIT_INPUT, e.to_string()))?;
        for entry in &manifest.entries {
            let text = read_text(&entry.path).map_err(|e| err(EXIT_INPUT, e.to_string()))?;
            let id = entry
                .path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("text")
                .to_string();
            texts.push((id, text));
        }
    }
    if texts.is_empty() {
        return Err(err(
            EXIT_INPUT,
            "no input: pass text files, --stdin, or --corpus DIR",
        ));
    }
    Ok(texts)
}

fn embed_text(text: &str, id: &str, table: &EmbeddingTable) -> CliResult<(VectorSequence, usize)> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(err(EXIT_EMPTY, format!("{id}: no words in input")));
    }
    let word_count = tokens.len();
    let seq = embed_and_center(&tokens, table)
        .map_err(|e| err(EXIT_EMPTY, format!("{id}: {e}")))?
        .with_source_id(id);
    Ok((seq, word_count))
}

fn compute(id: &str, message: impl std::fmt::Display) -> CliError {
    err(EXIT_COMPUTE, format!("{id}: {message}"))
}

/// File-system-safe version of a source id.
fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}

fn write_or_print(out: Option<&Path>, name: &str, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| err(EXIT_INPUT, format!("cannot create {}: {e}", dir.display())))?;
            let path = dir.join(name);
            std::fs::write(&path, bytes)
                .map_err(|e| err(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            use std::io::Write as _;
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| err(EXIT_INPUT, format!("cannot write stdout: {e}")))
        }
    }
}

/// Commands that stream one table per text need --out for multiple texts.
fn per_text_out<'a>(
    cli_out: Option<&'a PathBuf>,
    n_texts: usize,
) -> CliResult<Option<&'a PathBuf>> {
    if n_texts > 1 && cli_out.is_none() {
        return Err(err(
            EXIT_INPUT,
            "multiple input texts: pass --out DIR to write one file per text",
        ));
    }
    Ok(cli_out)
}

fn parse_lag_grid(spec: &str) -> CliResult<LagGrid> {
    match spec {
        "periodic-scan" => Ok(LagGrid::periodic_scan()),
        "medium-range" => Ok(LagGrid::medium_range()),
        "long-range" => Ok(LagGrid::long_range()),
        list => {
            let lags: Result<Vec<usize>, _> =
                list.split(',').map(|s| s.trim().parse::<usize>()).collect();
            let lags = lags.map_err(|_| {
                err(
                    EXIT_INPUT,
                    format!("--lags must be a preset name or a comma-separated integer list, got `{list}`"),
                )
            })?;
            LagGrid::custom(lags).map_err(|e| err(EXIT_INPUT, e.to_string()))
        }
    }
}

fn parse_lag_range(spec: &str) -> CliResult<LagRange> {
    let parse = || -> Option<LagRange> {
        let (min, max) = spec.split_once(':')?;
        let min: usize = min.trim().parse().ok()?;
        let max: usize = max.trim().parse().ok()?;
        (min >= 1 && min <= max).then(|| LagRange::new(min, max))
    };
    parse().ok_or_else(|| err(EXIT_INPUT, format!("--range must be MIN:MAX, got `{spec}`")))
}

fn parse_f64_list(spec: &str, flag: &str) -> CliResult<Vec<f64>> {
    spec.split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|_| err(EXIT_INPUT, format!("{flag} must be a comma-separated number list")))
}

fn parse_u64_list(spec: &str, flag: &str) -> CliResult<Vec<u64>> {
    spec.split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<Vec<u64>, _>>()
        .map_err(|_| err(EXIT_INPUT, format!("{flag} must be a comma-separated integer list")))
}

fn acf_rows_json(curve: &AcfCurve) -> Vec<serde_json::Value> {
    curve
        .points()
        .iter()
        .map(|p| {
            serde_json::json!({
                "lag": p.lag,
                "value": report::round_g9(p.value),
                "pair_count": p.pair_count,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Analyze {
            files,
            stdin,
            corpus,
            plot_script,
        } => cmd_analyze(&cli, files, *stdin, corpus.as_ref(), *plot_script),
        Command::Acf { files, stdin, lags } => cmd_acf(&cli, files, *stdin, lags),
        Command::Spectrum { files, stdin } => cmd_spectrum(&cli, files, *stdin),
        Command::Fit { files, stdin, range } => cmd_fit(&cli, files, *stdin, range),
        Command::Classify { files, stdin } => cmd_classify(&cli, files, *stdin),
        Command::Sweep {
            corpus,
            plot_script,
        } => cmd_sweep(&cli, corpus, *plot_script),
        Command::Transition { corpus } => cmd_transition(&cli, corpus),
        Command::Generate {
            endpoint,
            model,
            prompt_file,
            temperatures,
            seeds,
            target_tokens,
            max_tokens_per_call,
            concurrency,
        } => cmd_generate(
            &cli,
            endpoint,
            model,
            prompt_file.as_ref(),
            temperatures.as_deref(),
            seeds.as_deref(),
            *target_tokens,
            *max_tokens_per_call,
            *concurrency,
        ),
        Command::Fixtures {
            temperatures,
            seeds,
            words,
        } => cmd_fixtures(&cli, temperatures, seeds, *words),
    }
}

/// The classification procedure shared by analyze/classify/sweep paths,
/// returning all intermediate products.
fn analyze_sequence(
    seq: &VectorSequence,
    config: &AnalysisConfig,
) -> Result<(AcfCurve, AcfCurve, textphase_core::SpectrumResult, PhaseLabel), String> {
    let required = config.required_len();
    if seq.len() < required {
        return Err(format!(
            "sequence of {} words is too short to classify (need at least {required})",
            seq.len()
        ));
    }
    let scan_curve =
        acf_fft(seq, &LagGrid::contiguous(config.scan_max_lag)).map_err(|e| e.to_string())?;
    let spectrum = acf_spectrum(&scan_curve).map_err(|e| e.to_string())?;
    let fit_curve =
        acf_fft(seq, &LagGrid::contiguous(config.fit_range.max)).map_err(|e| e.to_string())?;
    let gap = gapelmaper(&fit_curve, config.fit_range);
    let label = phase::decide(
        spectrum.periodicity_metric,
        &gap,
        config.periodicity_threshold,
        config.gapelmaper_threshold,
    );
    let label = PhaseLabel {
        label,
        periodicity_metric: spectrum.periodicity_metric,
        gapelmaper: gap,
        thresholds_used: (config.periodicity_threshold, config.gapelmaper_threshold),
    };
    Ok((scan_curve, fit_curve, spectrum, label))
}

fn cmd_analyze(
    cli: &Cli,
    files: &[PathBuf],
    stdin: bool,
    corpus: Option<&PathBuf>,
    plot_script: bool,
) -> CliResult<()> {
    let settings = load_settings(cli)?;
    let config = settings.analysis_config();
    let table = load_table(cli)?;
    let texts = gather_texts(files, stdin, corpus)?;
    let out_root = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("textphase-out"));

    for (id, text) in &texts {
        let (seq, word_count) = embed_text(text, id, &table)?;
        let (scan_curve, fit_curve, spectrum, label) =
            analyze_sequence(&seq, &config).map_err(|m| compute(id, m))?;
        let products = AnalyzeProducts {
            source_id: id.clone(),
            scan_curve,
            fit_curve,
            spectrum,
            word_count,
            oov_count: seq.oov_count(),
            label,
        };
        let metadata = RunMetadata::new(table.dim(), table.word_count(), &settings);
        let dir = out_root.join(sanitize(id));
        write_analyze_bundle(&dir, &products, &metadata, plot_script)
            .map_err(|e| err(EXIT_INPUT, format!("cannot write bundle: {e}")))?;
        println!(
            "{id}: {} (periodicity metric {}, decay ratio {})",
            products.label.label,
            report::fmt_g9(products.label.periodicity_metric),
            products
                .label
                .gapelmaper
                .value
                .map(report::fmt_g9)
                .unwrap_or_else(|| products.label.gapelmaper.status.as_str().to_string()),
        );
        eprintln!("bundle written to {}", dir.display());
    }
    Ok(())
}

fn cmd_acf(cli: &Cli, files: &[PathBuf], stdin: bool, lags: &str) -> CliResult<()> {
    let grid = parse_lag_grid(lags)?;
    let table = load_table(cli)?;
    let texts = gather_texts(files, stdin, None)?;
    let out = per_text_out(cli.out.as_ref(), texts.len())?;

    for (id, text) in &texts {
        let (seq, _) = embed_text(text, id, &table)?;
        let curve = acf_fft(&seq, &grid).map_err(|e| compute(id, e))?;
        let bytes = match cli.format {
            TableFormat::Csv => {
                let mut buf = Vec::new();
                write_acf_csv(&mut buf, &curve).map_err(|e| compute(id, e))?;
                buf
            }
            TableFormat::Json => {
                to_json_pretty(&acf_rows_json(&curve)).into_bytes()
            }
        };
        let ext = if cli.format == TableFormat::Csv { "csv" } else { "json" };
        write_or_print(out.map(|p| p.as_path()), &format!("{}_acf.{ext}", sanitize(id)), &bytes)?;
    }
    Ok(())
}

fn cmd_spectrum(cli: &Cli, files: &[PathBuf], stdin: bool) -> CliResult<()> {
    let settings = load_settings(cli)?;
    let table = load_table(cli)?;
    let texts = gather_texts(files, stdin, None)?;
    let out = per_text_out(cli.out.as_ref(), texts.len())?;

    for (id, text) in &texts {
        let (seq, _) = embed_text(text, id, &table)?;
        let curve = acf_fft(&seq, &LagGrid::contiguous(settings.scan_max_lag))
            .map_err(|e| compute(id, e))?;
        let spectrum = acf_spectrum(&curve).map_err(|e| compute(id, e))?;
        let mut csv_buf = Vec::new();
        write_spectrum_csv(&mut csv_buf, &spectrum).map_err(|e| compute(id, e))?;
        let summary = to_json_pretty(&SpectrumSummary::new(&spectrum));
        match out {
            Some(dir) => {
                write_or_print(Some(dir), &format!("{}_spectrum.csv", sanitize(id)), &csv_buf)?;
                write_or_print(
                    Some(dir),
                    &format!("{}_spectrum.json", sanitize(id)),
                    summary.as_bytes(),
                )?;
            }
            None => {
                write_or_print(None, "", &csv_buf)?;
                write_or_print(None, "", summary.as_bytes())?;
            }
        }
    }
    Ok(())
}

fn cmd_fit(cli: &Cli, files: &[PathBuf], stdin: bool, range: &str) -> CliResult<()> {
    let range = parse_lag_range(range)?;
    let table = load_table(cli)?;
    let texts = gather_texts(files, stdin, None)?;
    let out = per_text_out(cli.out.as_ref(), texts.len())?;

    for (id, text) in &texts {
        let (seq, _) = embed_text(text, id, &table)?;
        let curve = acf_fft(&seq, &LagGrid::contiguous(range.max)).map_err(|e| compute(id, e))?;
        let gap = gapelmaper(&curve, range);
        let summary = to_json_pretty(&FitSummary::new(&gap));
        match out {
            Some(dir) => write_or_print(
                Some(dir),
                &format!("{}_fit.json", sanitize(id)),
                summary.as_bytes(),
            )?,
            None => write_or_print(None, "", summary.as_bytes())?,
        }
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, files: &[PathBuf], stdin: bool) -> CliResult<()> {
    let settings = load_settings(cli)?;
    let config = settings.analysis_config();
    let table = load_table(cli)?;
    let texts = gather_texts(files, stdin, None)?;
    let out = per_text_out(cli.out.as_ref(), texts.len())?;

    for (id, text) in &texts {
        let (seq, word_count) = embed_text(text, id, &table)?;
        let (_, _, _, label) = analyze_sequence(&seq, &config).map_err(|m| compute(id, m))?;
        let summary = to_json_pretty(&ClassifySummary::new(
            id,
            &label,
            word_count,
            seq.oov_count(),
            table.dim(),
        ));
        match out {
            Some(dir) => write_or_print(
                Some(dir),
                &format!("{}_label.json", sanitize(id)),
                summary.as_bytes(),
            )?,
            None => write_or_print(None, "", summary.as_bytes())?,
        }
    }
    Ok(())
}

fn cmd_sweep(cli: &Cli, corpus: &PathBuf, plot_script: bool) -> CliResult<()> {
    let settings = load_settings(cli)?;
    let config = settings.analysis_config();
    let table = load_table(cli)?;
    let manifest = scan_corpus(corpus).map_err(|e| err(EXIT_INPUT, e.to_string()))?;
    if manifest.is_empty() {
        return Err(err(
            EXIT_EMPTY,
            format!(
                "no corpus files matching <model>_t<temperature>_s<seed>.txt under {}",
                corpus.display()
            ),
        ));
    }
    if !manifest.skipped.is_empty() {
        eprintln!(
            "warning: skipped {} non-conforming file(s)",
            manifest.skipped.len()
        );
    }
    let report = sweep(&manifest, &table, &config);

    let out = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("textphase-out"));
    match cli.format {
        TableFormat::Csv => {
            let mut rows = Vec::new();
            write_sweep_rows_csv(&mut rows, &report).map_err(|e| compute("sweep", e))?;
            write_or_print(Some(&out), "sweep.csv", &rows)?;
        }
        TableFormat::Json => {
            write_or_print(
                Some(&out),
                "sweep.json",
                to_json_pretty(&report.rows).as_bytes(),
            )?;
        }
    }
    let mut transition = Vec::new();
    write_transition_csv(&mut transition, &report.transition).map_err(|e| compute("sweep", e))?;
    write_or_print(Some(&out), "transition.csv", &transition)?;

    let mut gap_table = Vec::new();
    write_gapelmaper_table_csv(&mut gap_table, &report.gapelmaper_by_temperature)
        .map_err(|e| compute("sweep", e))?;
    write_or_print(Some(&out), "gapelmaper.csv", &gap_table)?;

    let metadata = RunMetadata::new(table.dim(), table.word_count(), &settings);
    write_or_print(
        Some(&out),
        "sweep_summary.json",
        to_json_pretty(&serde_json::json!({
            "summaries": report.summaries,
            "metadata": metadata,
        }))
        .as_bytes(),
    )?;
    if plot_script {
        write_or_print(Some(&out), "plot.py", report::PLOT_SCRIPT.as_bytes())?;
    }

    for summary in &report.summaries {
        println!(
            "t={}: {} text(s) — periodic {}, critical {}, amorphous {}, indeterminate {}, errors {}",
            report::fmt_g9(summary.temperature),
            summary.texts,
            summary.periodic,
            summary.critical,
            summary.amorphous,
            summary.indeterminate,
            summary.errors
        );
    }
    Ok(())
}

fn cmd_transition(cli: &Cli, corpus: &PathBuf) -> CliResult<()> {
    let settings = load_settings(cli)?;
    let config = settings.analysis_config();
    let table = load_table(cli)?;
    let manifest = scan_corpus(corpus).map_err(|e| err(EXIT_INPUT, e.to_string()))?;
    if manifest.is_empty() {
        return Err(err(EXIT_EMPTY, "corpus has no conforming files"));
    }
    let report = sweep(&manifest, &table, &config);
    let mut buf = Vec::new();
    write_transition_csv(&mut buf, &report.transition).map_err(|e| compute("transition", e))?;
    match &cli.out {
        Some(dir) => write_or_print(Some(dir), "transition.csv", &buf),
        None => write_or_print(None, "", &buf),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    cli: &Cli,
    endpoint: &str,
    model: &str,
    prompt_file: Option<&PathBuf>,
    temperatures: Option<&str>,
    seeds: Option<&str>,
    target_tokens: usize,
    max_tokens_per_call: u32,
    concurrency: usize,
) -> CliResult<()> {
    let out = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("generated"));
    let mut config = GenerationConfig::new(endpoint, model, out);
    if let Some(path) = prompt_file {
        config.prompt = std::fs::read_to_string(path).map_err(|e| {
            err(
                EXIT_INPUT,
                format!("cannot read prompt file {}: {e}", path.display()),
            )
        })?;
    }
    if let Some(list) = temperatures {
        config.temperatures = parse_f64_list(list, "--temperatures")?;
    }
    if let Some(list) = seeds {
        config.seeds = parse_u64_list(list, "--seeds")?;
    }
    config.target_tokens = target_tokens;
    config.max_tokens_per_call = max_tokens_per_call;
    config.max_in_flight = concurrency;

    let manifest =
        genclient::generate_corpus(&config).map_err(|e| err(EXIT_GENERATION, e.to_string()))?;
    println!(
        "generated {} text(s) into {}",
        manifest.len(),
        config.output_dir.display()
    );
    for entry in &manifest.entries {
        println!(
            "  t={} seed={}: {} tokens, {} words{}",
            report::fmt_g9(entry.temperature),
            entry.seed,
            entry.token_count.unwrap_or(0),
            entry.word_count.unwrap_or(0),
            if entry.truncated { " (truncated)" } else { "" }
        );
    }
    Ok(())
}

fn cmd_fixtures(cli: &Cli, temperatures: &str, seeds: &str, words: usize) -> CliResult<()> {
    let temperatures = parse_f64_list(temperatures, "--temperatures")?;
    let seeds = parse_u64_list(seeds, "--seeds")?;
    let out = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("fixtures"));
    let embeddings = fixtures::write_sweep_fixture(&out, &temperatures, &seeds, words, cli.seed)
        .map_err(|e| err(EXIT_INPUT, format!("cannot write fixture: {e}")))?;
    println!(
        "fixture corpus in {}, embeddings at {}",
        out.join("corpus").display(),
        embeddings.display()
    );
    println!(
        "try: textphase sweep --embeddings {} --corpus {}",
        embeddings.display(),
        out.join("corpus").display()
    );
    Ok(())
}
