//! Machine-readable outputs: CSV tables, JSON summaries, bundle layout.
//!
//! Every float that reaches a file goes through the same 9-significant-digit
//! formatting so that fixed inputs produce byte-identical outputs across
//! runs and platforms.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use textphase_core::{
    AcfCurve, FitResult, GapelmaperResult, PhaseLabel, SpectrumResult, TransitionRow,
};

use crate::config::Settings;
use crate::sweep::{GapelmaperTableRow, SweepReport};

/// Format with 9 significant digits, `%.9g` style: fixed-point notation for
/// exponents in [-4, 9), exponential otherwise, trailing zeros trimmed.
pub fn fmt_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..9).contains(&exp) {
        let s = format!("{x:.8e}");
        let (mantissa, exponent) = s.split_once('e').expect("exponential format");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    } else {
        let decimals = (8 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

/// Round to the value `fmt_g9` prints, so JSON numbers match the CSVs.
pub fn round_g9(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    fmt_g9(x).parse().expect("fmt_g9 output parses back")
}

fn option_g9(x: Option<f64>) -> Option<f64> {
    x.map(round_g9)
}

// ---------------------------------------------------------------------------
// CSV tables
// ---------------------------------------------------------------------------

pub fn write_acf_csv<W: Write>(out: W, curve: &AcfCurve) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lag", "value", "pair_count"])?;
    for p in curve.points() {
        w.write_record([
            p.lag.to_string(),
            fmt_g9(p.value),
            p.pair_count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectrum_csv<W: Write>(out: W, spectrum: &SpectrumResult) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "magnitude"])?;
    for (k, m) in spectrum.magnitudes.iter().enumerate() {
        w.write_record([k.to_string(), fmt_g9(*m)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_transition_csv<W: Write>(out: W, rows: &[TransitionRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["temperature", "mean_metric", "std_metric"])?;
    for r in rows {
        w.write_record([
            fmt_g9(r.temperature),
            fmt_g9(r.mean_metric),
            fmt_g9(r.std_metric),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_gapelmaper_table_csv<W: Write>(
    out: W,
    rows: &[GapelmaperTableRow],
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "temperature",
        "mean_gapelmaper",
        "std_gapelmaper",
        "defined",
        "undefined",
    ])?;
    for r in rows {
        w.write_record([
            fmt_g9(r.temperature),
            r.mean.map(fmt_g9).unwrap_or_default(),
            r.std.map(fmt_g9).unwrap_or_default(),
            r.defined.to_string(),
            r.undefined.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_rows_csv<W: Write>(out: W, report: &SweepReport) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "model",
        "temperature",
        "seed",
        "label",
        "periodicity_metric",
        "gapelmaper",
        "gapelmaper_status",
        "word_count",
        "error",
    ])?;
    for r in &report.rows {
        w.write_record([
            r.model.clone(),
            fmt_g9(r.temperature),
            r.seed.to_string(),
            r.label.map(|l| l.to_string()).unwrap_or_default(),
            r.periodicity_metric.map(fmt_g9).unwrap_or_default(),
            r.gapelmaper.map(fmt_g9).unwrap_or_default(),
            r.gapelmaper_status.clone().unwrap_or_default(),
            r.word_count.to_string(),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// JSON summaries
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub peak_index: usize,
    pub period_index: usize,
    pub implied_period: f64,
    pub metric: f64,
}

impl SpectrumSummary {
    pub fn new(spectrum: &SpectrumResult) -> Self {
        Self {
            peak_index: spectrum.peak_index,
            period_index: spectrum.period_index,
            implied_period: round_g9(spectrum.implied_period),
            metric: round_g9(spectrum.periodicity_metric),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitLawSummary {
    pub a: f64,
    pub b: f64,
    pub mape: f64,
    pub n_points: usize,
}

impl FitLawSummary {
    fn new(fit: &FitResult) -> Self {
        Self {
            a: round_g9(fit.amplitude),
            b: round_g9(fit.rate),
            mape: round_g9(fit.mape),
            n_points: fit.n_points,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<FitLawSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponential: Option<FitLawSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gapelmaper: Option<f64>,
    pub status: String,
    pub fit_range: [usize; 2],
}

impl FitSummary {
    pub fn new(gap: &GapelmaperResult) -> Self {
        Self {
            power: gap.power.as_ref().map(FitLawSummary::new),
            exponential: gap.exponential.as_ref().map(FitLawSummary::new),
            gapelmaper: option_g9(gap.value),
            status: gap.status.as_str().to_string(),
            fit_range: [gap.fit_range.0, gap.fit_range.1],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifySummary {
    pub source_id: String,
    pub label: String,
    pub periodicity_metric: f64,
    pub periodicity_threshold: f64,
    pub gapelmaper_threshold: f64,
    pub gapelmaper: FitSummary,
    pub word_count: usize,
    pub oov_count: usize,
    pub embedding_dim: usize,
}

impl ClassifySummary {
    pub fn new(
        source_id: &str,
        label: &PhaseLabel,
        word_count: usize,
        oov_count: usize,
        embedding_dim: usize,
    ) -> Self {
        Self {
            source_id: source_id.to_string(),
            label: label.label.to_string(),
            periodicity_metric: round_g9(label.periodicity_metric),
            periodicity_threshold: round_g9(label.thresholds_used.0),
            gapelmaper_threshold: round_g9(label.thresholds_used.1),
            gapelmaper: FitSummary::new(&label.gapelmaper),
            word_count,
            oov_count,
            embedding_dim,
        }
    }
}

/// Configuration block attached to every bundle so its tables can be
/// regenerated: tool version, embedding stats, thresholds, lag windows.
#[derive(Debug, Clone, Serialize)]
pub struct RunMetadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub embedding_dim: usize,
    pub embedding_words: usize,
    pub settings: Settings,
    pub scan_lags: String,
    pub fit_lags: String,
}

impl RunMetadata {
    pub fn new(embedding_dim: usize, embedding_words: usize, settings: &Settings) -> Self {
        Self {
            tool: "textphase",
            version: env!("CARGO_PKG_VERSION"),
            embedding_dim,
            embedding_words,
            settings: settings.clone(),
            scan_lags: format!("1..{} step 1", settings.scan_max_lag),
            fit_lags: format!("1..{} step 1", settings.fit_max_lag),
        }
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Analyze bundle
// ---------------------------------------------------------------------------

/// Everything `analyze` computes for one text.
pub struct AnalyzeProducts {
    pub source_id: String,
    pub scan_curve: AcfCurve,
    pub fit_curve: AcfCurve,
    pub spectrum: SpectrumResult,
    pub label: PhaseLabel,
    pub word_count: usize,
    pub oov_count: usize,
}

/// Write one text's bundle into `dir` (created if missing). Returns the
/// paths written.
pub fn write_analyze_bundle(
    dir: &Path,
    products: &AnalyzeProducts,
    metadata: &RunMetadata,
    plot_script: bool,
) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut save = |name: &str, bytes: Vec<u8>| -> std::io::Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, bytes)?;
        written.push(path);
        Ok(())
    };

    let mut acf_scan = Vec::new();
    write_acf_csv(&mut acf_scan, &products.scan_curve).map_err(csv_to_io)?;
    save("acf_scan.csv", acf_scan)?;

    let mut acf_fit = Vec::new();
    write_acf_csv(&mut acf_fit, &products.fit_curve).map_err(csv_to_io)?;
    save("acf_fit.csv", acf_fit)?;

    let mut spectrum_csv = Vec::new();
    write_spectrum_csv(&mut spectrum_csv, &products.spectrum).map_err(csv_to_io)?;
    save("spectrum.csv", spectrum_csv)?;

    save(
        "spectrum.json",
        to_json_pretty(&SpectrumSummary::new(&products.spectrum)).into_bytes(),
    )?;
    save(
        "fit.json",
        to_json_pretty(&FitSummary::new(&products.label.gapelmaper)).into_bytes(),
    )?;
    save(
        "label.json",
        to_json_pretty(&ClassifySummary::new(
            &products.source_id,
            &products.label,
            products.word_count,
            products.oov_count,
            metadata.embedding_dim,
        ))
        .into_bytes(),
    )?;
    save("metadata.json", to_json_pretty(metadata).into_bytes())?;
    if plot_script {
        save("plot.py", PLOT_SCRIPT.as_bytes().to_vec())?;
    }
    Ok(written)
}

pub fn csv_to_io(err: csv::Error) -> std::io::Error {
    std::io::Error::new(std::io::ErrorKind::Other, err)
}

/// Self-contained plotting companion written next to the data on request.
pub const PLOT_SCRIPT: &str = r#"#!/usr/bin/env python3
"""Render the CSV tables in this directory as PNG figures."""
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def read_csv(name):
    path = os.path.join(HERE, name)
    if not os.path.exists(path):
        return None
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return rows or None


def fvals(rows, key):
    out = []
    for r in rows:
        try:
            out.append(float(r[key]))
        except (ValueError, KeyError):
            out.append(float("nan"))
    return out


def plot_acf(name, title):
    rows = read_csv(name)
    if not rows:
        return
    lags, values = fvals(rows, "lag"), fvals(rows, "value")
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].plot(lags, values, lw=0.8)
    axes[0].set_xlabel("lag (words)")
    axes[0].set_ylabel("autocorrelation")
    axes[0].set_title(title)
    pos = [(l, v) for l, v in zip(lags, values) if v > 0]
    if pos:
        axes[1].loglog([l for l, _ in pos], [v for _, v in pos], ".", ms=3)
        axes[1].set_xlabel("lag (words)")
        axes[1].set_title(title + " (log-log, positive values)")
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, name.replace(".csv", ".png")), dpi=150)
    plt.close(fig)


def plot_spectrum():
    rows = read_csv("spectrum.csv")
    if not rows:
        return
    k, mag = fvals(rows, "k"), fvals(rows, "magnitude")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(k[1:], mag[1:], lw=0.8)
    ax.set_xlabel("frequency bin k")
    ax.set_ylabel("|X_k| / M")
    ax.set_title("autocorrelation spectrum (DC omitted)")
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, "spectrum.png"), dpi=150)
    plt.close(fig)


def plot_table(name, ykey, title, logy=False):
    rows = read_csv(name)
    if not rows:
        return
    t = fvals(rows, "temperature")
    y = fvals(rows, ykey)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(t, y, "o-")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel("temperature")
    ax.set_ylabel(ykey)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, name.replace(".csv", ".png")), dpi=150)
    plt.close(fig)


def main():
    plot_acf("acf_scan.csv", "short-range ACF")
    plot_acf("acf_fit.csv", "fit-window ACF")
    plot_acf("acf.csv", "ACF")
    plot_spectrum()
    plot_table("transition.csv", "mean_metric", "periodicity metric vs temperature", logy=True)
    plot_table("gapelmaper.csv", "mean_gapelmaper", "decay-law ratio vs temperature")
    print("wrote figures into", HERE)
    return 0


if __name__ == "__main__":
    sys.exit(main())
"#;
