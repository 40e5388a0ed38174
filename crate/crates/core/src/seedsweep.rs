//! Seed-sweep noise floor and effect classification.
//!
//! A candidate run is meaningful only if it falls outside the min–max
//! envelope of the same configuration trained under different seeds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub range: f64,
    /// `std / mean`.
    pub cv: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    WithinNoise,
    ExceedsNoiseHigh,
    ExceedsNoiseLow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectVerdict {
    pub candidate: f64,
    pub delta_vs_mean: f64,
    pub classification: Classification,
}

pub fn summarize(values: &[f64]) -> Result<SweepSummary> {
    if values.len() < 2 {
        return Err(Error::validation(format!(
            "a seed sweep needs at least 2 runs, got {}",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation("seed sweep contains a non-finite value"));
    }
    let s = crate::metrics::summarize_values(values)?;
    Ok(SweepSummary {
        n: s.n,
        mean: s.mean,
        std: s.std,
        min: s.min,
        max: s.max,
        range: s.max - s.min,
        cv: if s.mean != 0.0 {
            s.std / s.mean.abs()
        } else {
            0.0
        },
    })
}

/// Boundaries are inclusive: a candidate equal to the sweep max is noise.
pub fn classify_effect(candidate: f64, sweep: &SweepSummary) -> EffectVerdict {
    let classification = if candidate > sweep.max {
        Classification::ExceedsNoiseHigh
    } else if candidate < sweep.min {
        Classification::ExceedsNoiseLow
    } else {
        Classification::WithinNoise
    };
    EffectVerdict {
        candidate,
        delta_vs_mean: candidate - sweep.mean,
        classification,
    }
}
