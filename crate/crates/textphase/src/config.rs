//! Analysis settings file (TOML key-value format).
//!
//! ```toml
//! # thresholds
//! periodicity_threshold = 0.010
//! gapelmaper_threshold = 1.0
//! # lag windows
//! scan_max_lag = 100
//! fit_min_lag = 1
//! fit_max_lag = 600
//! ```

use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use textphase_core::{AnalysisConfig, LagRange};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Periodicity metric at or above this classifies a text as periodic.
    pub periodicity_threshold: f64,
    /// Decay-law MAPE ratio below this is critical, at or above amorphous.
    pub gapelmaper_threshold: f64,
    /// The periodicity spectrum scans contiguous lags 1..=scan_max_lag.
    pub scan_max_lag: usize,
    pub fit_min_lag: usize,
    pub fit_max_lag: usize,
}

impl Default for Settings {
    fn default() -> Self {
        let config = AnalysisConfig::default();
        Self {
            periodicity_threshold: config.periodicity_threshold,
            gapelmaper_threshold: config.gapelmaper_threshold,
            scan_max_lag: config.scan_max_lag,
            fit_min_lag: config.fit_range.min,
            fit_max_lag: config.fit_range.max,
        }
    }
}

impl Settings {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let settings: Settings = toml::from_str(&text)
            .with_context(|| format!("invalid config file {}", path.display()))?;
        settings.validate()?;
        Ok(settings)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        anyhow::ensure!(
            self.periodicity_threshold.is_finite() && self.periodicity_threshold > 0.0,
            "periodicity_threshold must be a positive number"
        );
        anyhow::ensure!(
            self.gapelmaper_threshold.is_finite() && self.gapelmaper_threshold > 0.0,
            "gapelmaper_threshold must be a positive number"
        );
        anyhow::ensure!(self.scan_max_lag >= 8, "scan_max_lag must be at least 8");
        anyhow::ensure!(
            self.fit_min_lag >= 1 && self.fit_min_lag <= self.fit_max_lag,
            "fit lag range must satisfy 1 <= min <= max"
        );
        Ok(())
    }

    pub fn analysis_config(&self) -> AnalysisConfig {
        AnalysisConfig {
            periodicity_threshold: self.periodicity_threshold,
            gapelmaper_threshold: self.gapelmaper_threshold,
            scan_max_lag: self.scan_max_lag,
            fit_range: LagRange::new(self.fit_min_lag, self.fit_max_lag),
        }
    }
}
