//! Decay-law fitting: power law vs exponential, scored by MAPE.
//!
//! Both models are fit by ordinary least squares in the coordinates that
//! linearize them — `(ln τ, ln C)` for `a·τ^(−b)`, `(τ, ln C)` for
//! `a·exp(−b·τ)` — and scored by the mean absolute percentage error in the
//! original space. The ratio `MAPE_power / MAPE_exponential` is the
//! decay-law verdict: below 1 the power law describes the curve better
//! (hierarchical, long-range structure), above 1 the exponential wins.
//!
//! Any non-positive autocorrelation inside the fit range makes the log
//! transforms meaningless, so the ratio is reported as undefined rather
//! than silently dropping points (dropping would bias MAPE downward).

use alloc::vec::Vec;
use core::fmt;

use crate::acf::AcfCurve;

/// Inclusive lag interval for fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LagRange {
    pub min: usize,
    pub max: usize,
}

impl LagRange {
    pub fn new(min: usize, max: usize) -> Self {
        assert!(min >= 1 && min <= max, "invalid lag range");
        Self { min, max }
    }

    pub fn contains(&self, lag: usize) -> bool {
        lag >= self.min && lag <= self.max
    }
}

impl fmt::Display for LagRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.min, self.max)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitError {
    /// An in-range value is ≤ 0; log-space fitting is refused outright.
    NonPositiveValues { lag: usize },
    /// Fewer than 3 points in range.
    TooFewPoints { found: usize },
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::NonPositiveValues { lag } => {
                write!(f, "non-positive autocorrelation at lag {lag}")
            }
            FitError::TooFewPoints { found } => {
                write!(f, "need at least 3 points to fit, found {found}")
            }
        }
    }
}

impl core::error::Error for FitError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DecayLaw {
    Power,
    Exponential,
}

/// Fitted decay model: `a·τ^(−b)` or `a·exp(−b·τ)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FitResult {
    pub law: DecayLaw,
    /// Amplitude `a` (> 0 by construction of the log-space fit).
    pub amplitude: f64,
    /// Decay rate `b`; the fitted slope is `−b`.
    pub rate: f64,
    /// Mean absolute percentage error in the original space.
    pub mape: f64,
    pub n_points: usize,
    pub fit_range: (usize, usize),
}

impl FitResult {
    /// Model prediction at lag τ.
    pub fn predict(&self, lag: usize) -> f64 {
        let t = lag as f64;
        match self.law {
            DecayLaw::Power => self.amplitude * libm::pow(t, -self.rate),
            DecayLaw::Exponential => self.amplitude * libm::exp(-self.rate * t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GapelmaperStatus {
    Ok,
    UndefinedNonpositiveAcf,
    TooFewPoints,
}

impl GapelmaperStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            GapelmaperStatus::Ok => "ok",
            GapelmaperStatus::UndefinedNonpositiveAcf => "undefined_nonpositive_acf",
            GapelmaperStatus::TooFewPoints => "too_few_points",
        }
    }
}

/// MAPE ratio of the two decay fits over one lag range.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GapelmaperResult {
    /// `MAPE_power / MAPE_exponential`; present iff `status` is `Ok`.
    pub value: Option<f64>,
    pub status: GapelmaperStatus,
    pub power: Option<FitResult>,
    pub exponential: Option<FitResult>,
    pub fit_range: (usize, usize),
}

fn collect_range(curve: &AcfCurve, range: LagRange) -> Result<(Vec<f64>, Vec<f64>), FitError> {
    let mut taus = Vec::new();
    let mut values = Vec::new();
    for p in curve.points() {
        if !range.contains(p.lag) {
            continue;
        }
        if p.value <= 0.0 {
            return Err(FitError::NonPositiveValues { lag: p.lag });
        }
        taus.push(p.lag as f64);
        values.push(p.value);
    }
    if taus.len() < 3 {
        return Err(FitError::TooFewPoints { found: taus.len() });
    }
    Ok((taus, values))
}

fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn mape(taus: &[f64], values: &[f64], predict: impl Fn(f64) -> f64) -> f64 {
    let mut total = 0.0;
    for (&t, &c) in taus.iter().zip(values) {
        total += libm::fabs(c - predict(t)) / libm::fabs(c);
    }
    total / taus.len() as f64
}

/// Least-squares fit of `C(τ) = a·τ^(−b)` over the in-range points.
pub fn fit_power(curve: &AcfCurve, range: LagRange) -> Result<FitResult, FitError> {
    let (taus, values) = collect_range(curve, range)?;
    let xs: Vec<f64> = taus.iter().map(|&t| libm::log(t)).collect();
    let ys: Vec<f64> = values.iter().map(|&c| libm::log(c)).collect();
    let (slope, intercept) = ols(&xs, &ys);
    let amplitude = libm::exp(intercept);
    let rate = -slope;
    let mape = mape(&taus, &values, |t| amplitude * libm::pow(t, -rate));
    Ok(FitResult {
        law: DecayLaw::Power,
        amplitude,
        rate,
        mape,
        n_points: taus.len(),
        fit_range: (range.min, range.max),
    })
}

/// Least-squares fit of `C(τ) = a·exp(−b·τ)` over the in-range points.
pub fn fit_exponential(curve: &AcfCurve, range: LagRange) -> Result<FitResult, FitError> {
    let (taus, values) = collect_range(curve, range)?;
    let ys: Vec<f64> = values.iter().map(|&c| libm::log(c)).collect();
    let (slope, intercept) = ols(&taus, &ys);
    let amplitude = libm::exp(intercept);
    let rate = -slope;
    let mape = mape(&taus, &values, |t| amplitude * libm::exp(-rate * t));
    Ok(FitResult {
        law: DecayLaw::Exponential,
        amplitude,
        rate,
        mape,
        n_points: taus.len(),
        fit_range: (range.min, range.max),
    })
}

/// Fit both laws and report the MAPE ratio, or why it is undefined.
pub fn gapelmaper(curve: &AcfCurve, range: LagRange) -> GapelmaperResult {
    let fit_range = (range.min, range.max);
    match collect_range(curve, range) {
        Err(FitError::NonPositiveValues { .. }) => GapelmaperResult {
            value: None,
            status: GapelmaperStatus::UndefinedNonpositiveAcf,
            power: None,
            exponential: None,
            fit_range,
        },
        Err(FitError::TooFewPoints { .. }) => GapelmaperResult {
            value: None,
            status: GapelmaperStatus::TooFewPoints,
            power: None,
            exponential: None,
            fit_range,
        },
        Ok(_) => {
            let power = fit_power(curve, range).expect("range already validated");
            let exponential = fit_exponential(curve, range).expect("range already validated");
            let value = power.mape / exponential.mape;
            GapelmaperResult {
                value: Some(value),
                status: GapelmaperStatus::Ok,
                power: Some(power),
                exponential: Some(exponential),
                fit_range,
            }
        }
    }
}
