//! Corpus-wide classification sweeps and their per-temperature aggregates.

use rayon::prelude::*;
use serde::Serialize;
use textphase_core::{
    classify_detailed, embed_and_center, AnalysisConfig, EmbeddingTable, GenerationMeta, Phase,
    SpectrumResult, TokenSequence, TransitionRow,
};

use crate::corpus::{read_text, CorpusManifest};
use crate::report::round_g9;

/// Outcome for one manifest entry. Failures land in `error` and leave the
/// analysis fields empty; they never abort the sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub model: String,
    pub temperature: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<Phase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodicity_metric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gapelmaper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gapelmaper_status: Option<String>,
    pub word_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Phase counts and mean metrics for one temperature.
#[derive(Debug, Clone, Serialize)]
pub struct TemperatureSummary {
    pub temperature: f64,
    pub texts: usize,
    pub periodic: usize,
    pub critical: usize,
    pub amorphous: usize,
    pub indeterminate: usize,
    pub errors: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_periodicity_metric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_gapelmaper: Option<f64>,
}

/// Mean/std of the decay-law ratio per temperature, with how often the
/// ratio was computable at all.
#[derive(Debug, Clone, Serialize)]
pub struct GapelmaperTableRow {
    pub temperature: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std: Option<f64>,
    pub defined: usize,
    pub undefined: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summaries: Vec<TemperatureSummary>,
    pub transition: Vec<TransitionRow>,
    pub gapelmaper_by_temperature: Vec<GapelmaperTableRow>,
}

struct EntryOutcome {
    row: SweepRow,
    spectrum: Option<(f64, SpectrumResult)>,
}

fn analyze_entry(
    entry: &crate::corpus::ManifestEntry,
    table: &EmbeddingTable,
    config: &AnalysisConfig,
) -> EntryOutcome {
    let base = SweepRow {
        model: entry.model.clone(),
        temperature: entry.temperature,
        seed: entry.seed,
        label: None,
        periodicity_metric: None,
        gapelmaper: None,
        gapelmaper_status: None,
        word_count: 0,
        error: None,
    };
    let fail = |mut row: SweepRow, message: String| EntryOutcome {
        row: {
            row.error = Some(message);
            row
        },
        spectrum: None,
    };

    let text = match read_text(&entry.path) {
        Ok(t) => t,
        Err(e) => return fail(base, e.to_string()),
    };
    let source_id = entry.path.file_name().and_then(|n| n.to_str()).unwrap_or("");
    let tokens = TokenSequence::from_text(&text, source_id).with_meta(GenerationMeta {
        model: entry.model.clone(),
        temperature: entry.temperature,
        seed: entry.seed,
    });
    let mut row = SweepRow {
        word_count: tokens.len(),
        ..base
    };
    let seq = match embed_and_center(&tokens.tokens, table) {
        Ok(s) => s.with_source_id(&tokens.source_id),
        Err(e) => return fail(row, e.to_string()),
    };
    let detail = match classify_detailed(&seq, config) {
        Ok(d) => d,
        Err(e) => return fail(row, e.to_string()),
    };

    row.label = Some(detail.label.label);
    row.periodicity_metric = Some(round_g9(detail.spectrum.periodicity_metric));
    row.gapelmaper = detail.label.gapelmaper.value.map(round_g9);
    row.gapelmaper_status = Some(detail.label.gapelmaper.status.as_str().to_string());
    EntryOutcome {
        spectrum: Some((entry.temperature, detail.spectrum)),
        row,
    }
}

/// Classify every manifest entry (in parallel) and aggregate per
/// temperature. Row order follows the manifest's (model, temperature, seed)
/// order, so the report is deterministic for a given corpus.
pub fn sweep(
    manifest: &CorpusManifest,
    table: &EmbeddingTable,
    config: &AnalysisConfig,
) -> SweepReport {
    let outcomes: Vec<EntryOutcome> = manifest
        .entries
        .par_iter()
        .map(|entry| analyze_entry(entry, table, config))
        .collect();

    let mut rows = Vec::with_capacity(outcomes.len());
    let mut spectra = Vec::new();
    for outcome in outcomes {
        if let Some(s) = outcome.spectrum {
            spectra.push(s);
        }
        rows.push(outcome.row);
    }

    let summaries = summarize(&rows);
    let transition = textphase_core::transition_curve(&spectra).unwrap_or_default();
    let gapelmaper_by_temperature = gapelmaper_table(&rows);
    SweepReport {
        rows,
        summaries,
        transition,
        gapelmaper_by_temperature,
    }
}

fn group_temperatures(rows: &[SweepRow]) -> Vec<f64> {
    let mut temps: Vec<f64> = rows.iter().map(|r| r.temperature).collect();
    temps.sort_by(f64::total_cmp);
    temps.dedup_by(|a, b| a.total_cmp(b).is_eq());
    temps
}

fn summarize(rows: &[SweepRow]) -> Vec<TemperatureSummary> {
    group_temperatures(rows)
        .into_iter()
        .map(|temperature| {
            let group: Vec<&SweepRow> = rows
                .iter()
                .filter(|r| r.temperature.total_cmp(&temperature).is_eq())
                .collect();
            let count_label = |want: Phase| {
                group
                    .iter()
                    .filter(|r| r.label == Some(want))
                    .count()
            };
            let metrics: Vec<f64> = group
                .iter()
                .filter_map(|r| r.periodicity_metric)
                .collect();
            let gaps: Vec<f64> = group.iter().filter_map(|r| r.gapelmaper).collect();
            let mean = |xs: &[f64]| {
                if xs.is_empty() {
                    None
                } else {
                    Some(round_g9(xs.iter().sum::<f64>() / xs.len() as f64))
                }
            };
            TemperatureSummary {
                temperature,
                texts: group.len(),
                periodic: count_label(Phase::Periodic),
                critical: count_label(Phase::Critical),
                amorphous: count_label(Phase::Amorphous),
                indeterminate: count_label(Phase::Indeterminate),
                errors: group.iter().filter(|r| r.error.is_some()).count(),
                mean_periodicity_metric: mean(&metrics),
                mean_gapelmaper: mean(&gaps),
            }
        })
        .collect()
}

fn gapelmaper_table(rows: &[SweepRow]) -> Vec<GapelmaperTableRow> {
    group_temperatures(rows)
        .into_iter()
        .map(|temperature| {
            let group: Vec<&SweepRow> = rows
                .iter()
                .filter(|r| r.temperature.total_cmp(&temperature).is_eq())
                .collect();
            let values: Vec<f64> = group.iter().filter_map(|r| r.gapelmaper).collect();
            let undefined = group
                .iter()
                .filter(|r| {
                    r.gapelmaper.is_none()
                        && r.gapelmaper_status
                            .as_deref()
                            .is_some_and(|s| s != "ok")
                })
                .count();
            let (mean, std) = if values.is_empty() {
                (None, None)
            } else {
                let n = values.len() as f64;
                let mean = values.iter().sum::<f64>() / n;
                let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
                (Some(round_g9(mean)), Some(round_g9(var.sqrt())))
            };
            GapelmaperTableRow {
                temperature,
                mean,
                std,
                defined: values.len(),
                undefined,
            }
        })
        .collect()
}
