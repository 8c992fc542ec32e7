//! Spectral periodicity of an autocorrelation curve.
//!
//! The curve values (contiguous lags 1..M) are mean-subtracted, a length-M
//! DFT is applied, and magnitudes are scaled by 1/M. The periodicity metric
//! is the largest magnitude beyond the DC coefficient; a repeating text
//! concentrates autocorrelation energy at its repetition frequency, so the
//! metric jumps by orders of magnitude between degenerate and mixed texts.
//!
//! The DFT here is evaluated directly (O(M²) with M ≤ a few hundred). It is
//! deliberately a separate code path from the radix-2 FFT in the
//! correlation kernel, so the two never hide each other's mistakes.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::acf::AcfCurve;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    /// The spectrum needs a unit-step lag grid starting at 1.
    NonContiguousLags,
    /// Fewer than 8 lags cannot carry a meaningful spectrum.
    TooFewLags { found: usize },
    /// No data at all.
    EmptyInput,
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::NonContiguousLags => {
                write!(f, "spectrum requires contiguous lags 1..M")
            }
            SpectrumError::TooFewLags { found } => {
                write!(f, "spectrum requires at least 8 lags, found {found}")
            }
            SpectrumError::EmptyInput => write!(f, "no input rows"),
        }
    }
}

impl core::error::Error for SpectrumError {}

/// DFT summary of an autocorrelation curve.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumResult {
    /// `|X_k| / M` for k = 0..=⌊M/2⌋.
    pub magnitudes: Vec<f64>,
    /// Index of the largest magnitude beyond DC (ties resolve to the
    /// smallest index).
    pub peak_index: usize,
    /// `magnitudes[peak_index]`.
    pub periodicity_metric: f64,
    /// `peak_index` corrected for octave errors: a repeating text is a
    /// comb in lag space, so its harmonics carry comparable energy and the
    /// raw argmax lands on an arbitrary multiple of the true repetition
    /// frequency. This is the smallest integer subdivision of the peak bin
    /// that still carries a comparable magnitude (see
    /// [`subharmonic_period_index`]).
    pub period_index: usize,
    /// `M / period_index`, in words.
    pub implied_period: f64,
}

/// Mean-subtract the curve values and take the scaled DFT magnitudes.
pub fn acf_spectrum(curve: &AcfCurve) -> Result<SpectrumResult, SpectrumError> {
    let points = curve.points();
    let m = points.len();
    if m < 8 {
        return Err(SpectrumError::TooFewLags { found: m });
    }
    for (i, p) in points.iter().enumerate() {
        if p.lag != i + 1 {
            return Err(SpectrumError::NonContiguousLags);
        }
    }

    let mean = points.iter().map(|p| p.value).sum::<f64>() / m as f64;
    let centered: Vec<f64> = points.iter().map(|p| p.value - mean).collect();

    let half = m / 2;
    let mut magnitudes = Vec::with_capacity(half + 1);
    for k in 0..=half {
        let mut re = 0.0;
        let mut im = 0.0;
        for (t, &y) in centered.iter().enumerate() {
            let angle = -2.0 * PI * (k * t) as f64 / m as f64;
            re += y * libm::cos(angle);
            im += y * libm::sin(angle);
        }
        magnitudes.push(libm::sqrt(re * re + im * im) / m as f64);
    }

    let mut peak_index = 1usize;
    for k in 2..=half {
        if magnitudes[k] > magnitudes[peak_index] {
            peak_index = k;
        }
    }
    let period_index = subharmonic_period_index(&magnitudes, peak_index);
    Ok(SpectrumResult {
        periodicity_metric: magnitudes[peak_index],
        implied_period: m as f64 / period_index as f64,
        peak_index,
        period_index,
        magnitudes,
    })
}

/// Fraction of the peak magnitude a subharmonic bin must carry to be
/// accepted as the fundamental. A harmonic that falls between two bins
/// splits its energy ~0.64/0.64 across them, so the threshold sits below
/// that split but far above the noise floor of a genuinely periodic curve.
const SUBHARMONIC_SUPPORT: f64 = 0.4;

/// Resolve octave errors in a peak pick: walk the integer subdivisions
/// `peak/m` (checking both straddling bins when the division is inexact)
/// and return the smallest bin whose magnitude is at least
/// [`SUBHARMONIC_SUPPORT`] of the peak's. For a single isolated tone no
/// subdivision qualifies and the peak bin itself comes back.
pub fn subharmonic_period_index(magnitudes: &[f64], peak_index: usize) -> usize {
    let support = SUBHARMONIC_SUPPORT * magnitudes[peak_index];
    let mut best = peak_index;
    for m in 2..=peak_index {
        let lo = peak_index / m;
        if lo == 0 {
            break;
        }
        let hi = (peak_index + m - 1) / m;
        let mut candidate: Option<usize> = None;
        for k in [lo, hi] {
            if k >= 1 && k < best && k < magnitudes.len() && magnitudes[k] >= support {
                candidate = match candidate {
                    None => Some(k),
                    Some(c) => Some(if magnitudes[k] > magnitudes[c] { k } else { c }),
                };
            }
        }
        if let Some(k) = candidate {
            best = k;
        }
    }
    best
}

/// One row of a periodicity-vs-temperature table.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransitionRow {
    pub temperature: f64,
    pub mean_metric: f64,
    pub std_metric: f64,
}

/// Group spectra by temperature and average the periodicity metric across
/// seeds. Rows come back ordered by temperature; the spread is the
/// population standard deviation.
pub fn transition_curve(
    results: &[(f64, SpectrumResult)],
) -> Result<Vec<TransitionRow>, SpectrumError> {
    if results.is_empty() {
        return Err(SpectrumError::EmptyInput);
    }
    let mut pairs: Vec<(f64, f64)> = results
        .iter()
        .map(|(t, s)| (*t, s.periodicity_metric))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut rows = Vec::new();
    let mut i = 0usize;
    while i < pairs.len() {
        let temperature = pairs[i].0;
        let mut j = i;
        while j < pairs.len() && pairs[j].0.total_cmp(&temperature).is_eq() {
            j += 1;
        }
        let group = &pairs[i..j];
        let n = group.len() as f64;
        let mean = group.iter().map(|(_, m)| m).sum::<f64>() / n;
        let var = group.iter().map(|(_, m)| (m - mean) * (m - mean)).sum::<f64>() / n;
        rows.push(TransitionRow {
            temperature,
            mean_metric: mean,
            std_metric: libm::sqrt(var),
        });
        i = j;
    }
    Ok(rows)
}
