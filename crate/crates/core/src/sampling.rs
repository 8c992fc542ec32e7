//! Temperature-reshaped softmax, the reference form of the sampling
//! distribution a completion endpoint applies to its logits.

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SoftmaxError {
    /// A logit is NaN or infinite.
    NonFinite,
    /// Temperature must be a finite positive number.
    NonPositiveTemperature,
    /// No logits given.
    EmptyInput,
}

impl fmt::Display for SoftmaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SoftmaxError::NonFinite => write!(f, "logits must be finite"),
            SoftmaxError::NonPositiveTemperature => {
                write!(f, "temperature must be a finite positive number")
            }
            SoftmaxError::EmptyInput => write!(f, "no logits"),
        }
    }
}

impl core::error::Error for SoftmaxError {}

/// `p_l = exp(u_l/T) / Σ exp(u_l'/T)`, computed with max subtraction so
/// large logits cannot overflow. T < 1 sharpens the distribution towards
/// high-probability entries, T > 1 flattens it.
pub fn temperature_softmax(logits: &[f64], temperature: f64) -> Result<Vec<f64>, SoftmaxError> {
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(SoftmaxError::NonPositiveTemperature);
    }
    if logits.is_empty() {
        return Err(SoftmaxError::EmptyInput);
    }
    let mut max = f64::NEG_INFINITY;
    for &u in logits {
        if !u.is_finite() {
            return Err(SoftmaxError::NonFinite);
        }
        max = max.max(u);
    }
    let mut out: Vec<f64> = logits
        .iter()
        .map(|&u| libm::exp((u - max) / temperature))
        .collect();
    let sum: f64 = out.iter().sum();
    for p in out.iter_mut() {
        *p /= sum;
    }
    Ok(out)
}
