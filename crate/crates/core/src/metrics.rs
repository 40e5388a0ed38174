//! Transition metrics between consecutive hexagrams and the surprise model.
//!
//! Surprise of a transition `a → b` is `−ln sim(a, b)`, where `sim` blends a
//! line-level score over all six lines with the same score restricted to the
//! nuclear window (lines 2–5):
//!
//! ```text
//! sim = (1 − λ)·ext + λ·int
//! ext = Σ_k w_k · s_k      s_k = 1 (unchanged), c_up (yin→yang), 0.7·c_up (yang→yin)
//! int = same over lines 2..5 with w_2..w_5 renormalized to sum 1
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexagram::{Hexagram, Ordering};

/// Score ratio of a yang→yin change relative to a yin→yang change.
pub const YANG_TO_YIN_FACTOR: f64 = 0.7;

pub const DEFAULT_LINE_WEIGHTS: [f64; 6] = [0.03, 0.07, 0.15, 0.20, 0.25, 0.30];
pub const DEFAULT_CHANGE_SCORE: f64 = 0.3;
pub const DEFAULT_NUCLEAR_WEIGHT: f64 = 0.4;

pub fn hamming(a: Hexagram, b: Hexagram) -> u32 {
    (a.code() ^ b.code()).count_ones()
}

/// Number of trigram slots (lower, upper) whose trigrams differ.
pub fn trigram_distance(a: Hexagram, b: Hexagram) -> u32 {
    let (al, au) = a.trigrams();
    let (bl, bu) = b.trigrams();
    u32::from(al != bl) + u32::from(au != bu)
}

pub fn nuclear_distance(a: Hexagram, b: Hexagram) -> u32 {
    ((a.code() ^ b.code()) & 0b01_1110).count_ones()
}

/// Similarity kernel configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSurpriseModel")]
pub struct SurpriseModel {
    line_weights: [f64; 6],
    change_score: f64,
    nuclear_weight: f64,
}

#[derive(Deserialize)]
struct RawSurpriseModel {
    line_weights: [f64; 6],
    change_score: f64,
    nuclear_weight: f64,
}

impl TryFrom<RawSurpriseModel> for SurpriseModel {
    type Error = Error;

    fn try_from(raw: RawSurpriseModel) -> Result<Self> {
        SurpriseModel::new(raw.line_weights, raw.change_score, raw.nuclear_weight)
    }
}

impl Default for SurpriseModel {
    fn default() -> Self {
        SurpriseModel {
            line_weights: DEFAULT_LINE_WEIGHTS,
            change_score: DEFAULT_CHANGE_SCORE,
            nuclear_weight: DEFAULT_NUCLEAR_WEIGHT,
        }
    }
}

impl SurpriseModel {
    pub fn new(line_weights: [f64; 6], change_score: f64, nuclear_weight: f64) -> Result<Self> {
        if line_weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::validation(
                "line weights must be finite and positive",
            ));
        }
        let total: f64 = line_weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::validation(format!(
                "line weights must sum to 1, got {total}"
            )));
        }
        if !(change_score > 0.0 && change_score < 1.0) {
            return Err(Error::validation(format!(
                "change score must lie in (0, 1), got {change_score}"
            )));
        }
        if !(0.0..=1.0).contains(&nuclear_weight) {
            return Err(Error::validation(format!(
                "nuclear weight must lie in [0, 1], got {nuclear_weight}"
            )));
        }
        Ok(SurpriseModel {
            line_weights,
            change_score,
            nuclear_weight,
        })
    }

    pub fn line_weights(&self) -> &[f64; 6] {
        &self.line_weights
    }

    pub fn change_score(&self) -> f64 {
        self.change_score
    }

    pub fn nuclear_weight(&self) -> f64 {
        self.nuclear_weight
    }

    fn line_score(&self, from: u8, to: u8) -> f64 {
        match (from, to) {
            (0, 1) => self.change_score,
            (1, 0) => YANG_TO_YIN_FACTOR * self.change_score,
            _ => 1.0,
        }
    }

    /// Pattern similarity in (0, 1]; equals 1 iff `a == b`.
    pub fn similarity(&self, a: Hexagram, b: Hexagram) -> f64 {
        let (la, lb) = (a.lines(), b.lines());
        let external: f64 = (0..6)
            .map(|k| self.line_weights[k] * self.line_score(la[k], lb[k]))
            .sum();

        let inner_total: f64 = self.line_weights[1..5].iter().sum();
        let internal: f64 = (1..5)
            .map(|k| self.line_weights[k] / inner_total * self.line_score(la[k], lb[k]))
            .sum();

        (1.0 - self.nuclear_weight) * external + self.nuclear_weight * internal
    }

    /// Natural-log surprise `−ln sim(a, b)`.
    pub fn surprise(&self, a: Hexagram, b: Hexagram) -> f64 {
        // -ln(1.0) is -0.0; normalise so identical states report +0.
        (-self.similarity(a, b).ln()).max(0.0)
    }

    pub fn profile(&self, ordering: &Ordering) -> SurpriseProfile {
        let values = ordering
            .sequence()
            .windows(2)
            .map(|w| self.surprise(w[0], w[1]))
            .collect();
        SurpriseProfile {
            ordering: ordering.name().to_owned(),
            values,
        }
    }
}

/// One surprise value per consecutive transition of an ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurpriseProfile {
    pub ordering: String,
    pub values: Vec<f64>,
}

/// Sample summary with n − 1 denominators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub variance: f64,
    pub min: f64,
    pub max: f64,
}

impl SurpriseProfile {
    pub fn summary(&self) -> Result<Summary> {
        summarize_values(&self.values)
    }
}

pub fn hamming_series(ordering: &Ordering) -> Vec<f64> {
    ordering
        .sequence()
        .windows(2)
        .map(|w| hamming(w[0], w[1]) as f64)
        .collect()
}

pub fn summarize_values(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::validation("cannot summarize an empty sample"));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let variance = if n > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    Ok(Summary {
        n,
        mean,
        std: variance.sqrt(),
        variance,
        min,
        max,
    })
}
