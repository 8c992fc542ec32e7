//! Lag autocorrelation of a vector sequence.
//!
//! The autocorrelation at lag `τ` is the average cosine similarity between
//! vectors `τ` positions apart:
//!
//! ```text
//! C(τ) = (1/(N−τ)) Σ_{i=1}^{N−τ} cos(V_i, V_{i+τ})
//! ```
//!
//! Two routes compute it: [`acf_direct`] sums pair by pair in a fixed
//! left-to-right order, and [`acf_fft`] normalizes every vector once and
//! turns the lag sums into per-dimension spectral products. The two agree
//! to better than 1e-9 per lag and the direct path is the reference.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::embeddings::VectorSequence;
use crate::fft::fft;

/// Estimates with fewer than this many pairs are too noisy to report;
/// lags are clamped so that `N − τ` never drops below it.
pub const MIN_PAIR_COUNT: usize = 32;

const PERIODIC_SCAN_MAX_LAG: usize = 100;
const MEDIUM_RANGE_MAX_LAG: usize = 600;
const LONG_RANGE_MAX_LAG: usize = 6000;
const LONG_RANGE_LAGS_PER_DECADE: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcfError {
    /// Vectors of different dimensions were compared.
    DimMismatch { left: usize, right: usize },
    /// After clamping lags to `min(N/2, N − MIN_PAIR_COUNT)` nothing is left.
    SequenceTooShort { len: usize, max_admissible: usize },
    /// A custom lag grid violates the grid rules.
    InvalidGrid { reason: &'static str },
}

impl fmt::Display for AcfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcfError::DimMismatch { left, right } => {
                write!(f, "vector dimension mismatch: {left} vs {right}")
            }
            AcfError::SequenceTooShort {
                len,
                max_admissible,
            } => write!(
                f,
                "sequence of length {len} admits no requested lag (max admissible lag {max_admissible})"
            ),
            AcfError::InvalidGrid { reason } => write!(f, "invalid lag grid: {reason}"),
        }
    }
}

impl core::error::Error for AcfError {}

/// Named lag-grid families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum LagPreset {
    /// Contiguous lags 1..=100, the grid the periodicity spectrum needs.
    PeriodicScan,
    /// Contiguous lags 1..=600, the default decay-law fitting window.
    MediumRange,
    /// Geometrically spaced lags up to 6000 (60 per decade, unique integers).
    LongRange,
    Custom,
}

impl LagPreset {
    pub fn as_str(&self) -> &'static str {
        match self {
            LagPreset::PeriodicScan => "periodic-scan",
            LagPreset::MediumRange => "medium-range",
            LagPreset::LongRange => "long-range",
            LagPreset::Custom => "custom",
        }
    }
}

/// A strictly increasing list of positive lags.
#[derive(Debug, Clone)]
pub struct LagGrid {
    lags: Vec<usize>,
    preset: LagPreset,
}

impl LagGrid {
    pub fn periodic_scan() -> Self {
        Self {
            lags: (1..=PERIODIC_SCAN_MAX_LAG).collect(),
            preset: LagPreset::PeriodicScan,
        }
    }

    pub fn medium_range() -> Self {
        Self {
            lags: (1..=MEDIUM_RANGE_MAX_LAG).collect(),
            preset: LagPreset::MediumRange,
        }
    }

    /// Geometric grid: `round(10^(j/60))` for j = 0, 1, …, deduplicated,
    /// with the endpoint forced in.
    pub fn long_range() -> Self {
        Self {
            lags: geometric_lags(LONG_RANGE_MAX_LAG, LONG_RANGE_LAGS_PER_DECADE),
            preset: LagPreset::LongRange,
        }
    }

    /// Contiguous lags `1..=max_lag`.
    pub fn contiguous(max_lag: usize) -> Self {
        assert!(max_lag >= 1, "max_lag must be positive");
        Self {
            lags: (1..=max_lag).collect(),
            preset: LagPreset::Custom,
        }
    }

    /// An explicit lag list; must be non-empty, strictly increasing, min ≥ 1.
    pub fn custom(lags: Vec<usize>) -> Result<Self, AcfError> {
        if lags.is_empty() {
            return Err(AcfError::InvalidGrid {
                reason: "empty lag list",
            });
        }
        if lags[0] < 1 {
            return Err(AcfError::InvalidGrid {
                reason: "lags must be >= 1",
            });
        }
        if lags.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AcfError::InvalidGrid {
                reason: "lags must be strictly increasing",
            });
        }
        Ok(Self {
            lags,
            preset: LagPreset::Custom,
        })
    }

    pub fn lags(&self) -> &[usize] {
        &self.lags
    }

    pub fn preset(&self) -> LagPreset {
        self.preset
    }

    pub fn max_lag(&self) -> usize {
        *self.lags.last().expect("grids are non-empty")
    }

    /// Largest lag a sequence of length `n` can estimate.
    pub fn max_admissible_lag(n: usize) -> usize {
        (n / 2).min(n.saturating_sub(MIN_PAIR_COUNT))
    }

    fn bind(&self, n: usize) -> Result<Vec<usize>, AcfError> {
        let max = Self::max_admissible_lag(n);
        let kept: Vec<usize> = self.lags.iter().copied().take_while(|&t| t <= max).collect();
        if kept.is_empty() {
            return Err(AcfError::SequenceTooShort {
                len: n,
                max_admissible: max,
            });
        }
        Ok(kept)
    }
}

fn geometric_lags(max_lag: usize, per_decade: usize) -> Vec<usize> {
    let mut lags = Vec::new();
    let mut j = 0usize;
    loop {
        let lag = libm::round(libm::pow(10.0, j as f64 / per_decade as f64)) as usize;
        if lag > max_lag {
            break;
        }
        if lags.last() != Some(&lag) {
            lags.push(lag);
        }
        j += 1;
    }
    if lags.last() != Some(&max_lag) {
        lags.push(max_lag);
    }
    lags
}

/// One sampled autocorrelation value.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AcfPoint {
    pub lag: usize,
    pub value: f64,
    pub pair_count: usize,
}

/// A sampled autocorrelation curve over a lag grid.
#[derive(Debug, Clone)]
pub struct AcfCurve {
    points: Vec<AcfPoint>,
    n: usize,
    source_id: String,
}

impl AcfCurve {
    /// Build a curve from raw lag/value pairs. Lags must be strictly
    /// increasing; pair counts are derived as `n − lag`. Synthetic curves
    /// (model evaluations, fixtures) are allowed to leave `[-1, 1]`.
    pub fn from_values(lags: &[usize], values: &[f64], n: usize, source_id: &str) -> Self {
        assert_eq!(lags.len(), values.len(), "lags and values must pair up");
        assert!(!lags.is_empty(), "curve must have at least one point");
        assert!(lags[0] >= 1, "lags start at 1");
        assert!(
            lags.windows(2).all(|w| w[0] < w[1]),
            "lags must be strictly increasing"
        );
        assert!(n > lags[lags.len() - 1], "n must exceed the largest lag");
        let points = lags
            .iter()
            .zip(values)
            .map(|(&lag, &value)| AcfPoint {
                lag,
                value,
                pair_count: n - lag,
            })
            .collect();
        Self {
            points,
            n,
            source_id: String::from(source_id),
        }
    }

    pub fn points(&self) -> &[AcfPoint] {
        &self.points
    }

    pub fn lags(&self) -> impl Iterator<Item = usize> + '_ {
        self.points.iter().map(|p| p.lag)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.value)
    }

    pub fn value_at(&self, lag: usize) -> Option<f64> {
        self.points
            .binary_search_by_key(&lag, |p| p.lag)
            .ok()
            .map(|i| self.points[i].value)
    }

    /// Source sequence length `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    /// A copy with every value multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        for p in out.points.iter_mut() {
            p.value *= c;
        }
        out
    }
}

/// Cosine similarity `(u·v)/(‖u‖‖v‖)`, with the convention that any
/// zero-norm operand makes the similarity exactly 0.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, AcfError> {
    if u.len() != v.len() {
        return Err(AcfError::DimMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    Ok(dot / (libm::sqrt(nu) * libm::sqrt(nv)))
}

/// Unit-normalize every vector of the sequence into a fresh flat buffer;
/// zero vectors stay zero. After this, cosine similarity is a dot product.
fn normalized_vectors(seq: &VectorSequence) -> Vec<f64> {
    let dim = seq.dim();
    let mut data = seq.data().to_vec();
    for row in data.chunks_exact_mut(dim) {
        let norm_sq: f64 = row.iter().map(|v| v * v).sum();
        if norm_sq > 0.0 {
            let inv = 1.0 / libm::sqrt(norm_sq);
            for v in row.iter_mut() {
                *v *= inv;
            }
        }
    }
    data
}

/// Reference route: explicit pair sums, fixed left-to-right order.
pub fn acf_direct(seq: &VectorSequence, grid: &LagGrid) -> Result<AcfCurve, AcfError> {
    let n = seq.len();
    let dim = seq.dim();
    let lags = grid.bind(n)?;
    let unit = normalized_vectors(seq);
    let mut points = Vec::with_capacity(lags.len());
    for &lag in &lags {
        let pair_count = n - lag;
        let mut sum = 0.0;
        for i in 0..pair_count {
            let a = &unit[i * dim..(i + 1) * dim];
            let b = &unit[(i + lag) * dim..(i + lag + 1) * dim];
            let mut dot = 0.0;
            for (x, y) in a.iter().zip(b) {
                dot += x * y;
            }
            sum += dot;
        }
        points.push(AcfPoint {
            lag,
            value: sum / pair_count as f64,
            pair_count,
        });
    }
    Ok(AcfCurve {
        points,
        n,
        source_id: String::from(seq.source_id()),
    })
}

/// Fast route: per-dimension autocorrelation through zero-padded FFTs.
///
/// Vectors are unit-normalized exactly as in [`acf_direct`]; each dimension
/// series is forward-transformed, magnitudes squared are accumulated across
/// dimensions, and a single inverse transform yields all lag sums at once.
/// Padding to a power of two ≥ 2N keeps the correlation linear.
pub fn acf_fft(seq: &VectorSequence, grid: &LagGrid) -> Result<AcfCurve, AcfError> {
    let n = seq.len();
    let dim = seq.dim();
    let lags = grid.bind(n)?;
    let unit = normalized_vectors(seq);

    let padded = (2 * n).next_power_of_two();
    let mut acc = vec![0.0; padded];
    let mut re = vec![0.0; padded];
    let mut im = vec![0.0; padded];
    for d in 0..dim {
        for v in re.iter_mut() {
            *v = 0.0;
        }
        for v in im.iter_mut() {
            *v = 0.0;
        }
        for i in 0..n {
            re[i] = unit[i * dim + d];
        }
        fft(&mut re, &mut im, false);
        for k in 0..padded {
            acc[k] += re[k] * re[k] + im[k] * im[k];
        }
    }
    let mut acc_im = vec![0.0; padded];
    fft(&mut acc, &mut acc_im, true);

    let points = lags
        .iter()
        .map(|&lag| {
            let pair_count = n - lag;
            AcfPoint {
                lag,
                value: acc[lag] / pair_count as f64,
                pair_count,
            }
        })
        .collect();
    Ok(AcfCurve {
        points,
        n,
        source_id: String::from(seq.source_id()),
    })
}
