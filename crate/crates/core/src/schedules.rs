//! Training interventions emitted as data: per-step learning-rate
//! multipliers, 64-slot curriculum permutations and batch difficulty scores.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::io::Write;

use flate2::write::GzEncoder;
use flate2::Compression;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexagram::{Ordering, ShaoYongConvention, HEXAGRAM_COUNT};
use crate::metrics::SurpriseModel;
use crate::rng::{self, Domain};

/// Transitions per profile cycle.
pub const PROFILE_LEN: usize = HEXAGRAM_COUNT - 1;
/// Micro-batches per curriculum buffer.
pub const BUFFER_LEN: usize = HEXAGRAM_COUNT;
/// DEFLATE level used by [`compression_ratio`].
pub const COMPRESSION_LEVEL: u32 = 6;

/// Affine min–max map onto [−1, 1]; a constant input maps to zeros.
pub fn center_profile(raw: &[f64]) -> Vec<f64> {
    let (lo, hi) = raw
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if raw.is_empty() || hi <= lo {
        return vec![0.0; raw.len()];
    }
    let span = hi - lo;
    raw.iter()
        .map(|&v| (2.0 * (v - lo) / span - 1.0).clamp(-1.0, 1.0))
        .collect()
}

/// 63 i.i.d. uniform draws on [−1, 1], re-centered.
pub fn random_profile(seed: u64) -> Vec<f64> {
    let mut rng = rng::substream(seed, Domain::RandomProfile, 0);
    let raw: Vec<f64> = (0..PROFILE_LEN)
        .map(|_| rng.random_range(-1.0..=1.0))
        .collect();
    center_profile(&raw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ProfileSource {
    Kingwen,
    Shaoyong { convention: ShaoYongConvention },
    Random { seed: u64 },
}

impl fmt::Display for ProfileSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileSource::Kingwen => f.write_str("kingwen"),
            ProfileSource::Shaoyong { .. } => f.write_str("shaoyong"),
            ProfileSource::Random { seed } => write!(f, "random({seed})"),
        }
    }
}

/// Cyclic learning-rate modulation `1 + A·s[t mod 63]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulationSchedule {
    pub source: ProfileSource,
    pub amplitude: f64,
    pub profile: Vec<f64>,
}

impl ModulationSchedule {
    pub fn new(source: ProfileSource, amplitude: f64, model: &SurpriseModel) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(Error::validation(format!(
                "amplitude must be finite and non-negative, got {amplitude}"
            )));
        }
        let profile = match source {
            ProfileSource::Kingwen => center_profile(&model.profile(&Ordering::king_wen()).values),
            ProfileSource::Shaoyong { convention } => {
                center_profile(&model.profile(&Ordering::shao_yong(convention)).values)
            }
            ProfileSource::Random { seed } => random_profile(seed),
        };
        Ok(ModulationSchedule {
            source,
            amplitude,
            profile,
        })
    }

    /// True when the amplitude is large enough that multipliers may reach zero.
    pub fn amplitude_warning(&self) -> bool {
        self.amplitude >= 1.0
    }

    /// Multiplier for each of `n_steps` steps.
    pub fn lr_multipliers(&self, n_steps: usize) -> Result<Vec<f64>> {
        if n_steps == 0 {
            return Err(Error::validation("schedule needs at least one step"));
        }
        if self.profile.is_empty() {
            return Err(Error::validation("schedule profile is empty"));
        }
        let cycle: Vec<f64> = self
            .profile
            .iter()
            .map(|s| 1.0 + self.amplitude * s)
            .collect();
        if let Some(bad) = cycle.iter().find(|&&m| m <= 0.0) {
            return Err(Error::validation(format!(
                "amplitude {} drives a multiplier to {bad}",
                self.amplitude
            )));
        }
        Ok((0..n_steps).map(|t| cycle[t % cycle.len()]).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Strategy {
    Sequential,
    Random { seed: u64 },
    EasyToHard,
    HardToEasy,
    Kingwen,
}

/// Buffer slot → emission position, a bijection on `0..64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurriculumMapping {
    pub strategy: Strategy,
    pub scores: Vec<f64>,
    /// `emit_position[buffer_index]`.
    pub emit_position: Vec<usize>,
}

impl CurriculumMapping {
    /// Buffer indices in emission order.
    pub fn emission_order(&self) -> Vec<usize> {
        let mut order = vec![0; self.emit_position.len()];
        for (buffer, &pos) in self.emit_position.iter().enumerate() {
            order[pos] = buffer;
        }
        order
    }
}

/// Stable rank of each finite element (0 = first in sort order), ties by index.
fn ranks(values: &[f64], descending: bool) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        let ord = values[a].partial_cmp(&values[b]).expect("finite scores");
        if descending {
            ord.reverse()
        } else {
            ord
        }
    });
    let mut rank = vec![0; values.len()];
    for (r, &i) in idx.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

/// Surprise of the transition into each King Wen position; position 1 gets 0.
pub fn king_wen_position_surprise(model: &SurpriseModel) -> Vec<f64> {
    let profile = model.profile(&Ordering::king_wen());
    std::iter::once(0.0).chain(profile.values).collect()
}

pub fn curriculum_map(
    scores: &[f64],
    strategy: Strategy,
    model: &SurpriseModel,
) -> Result<CurriculumMapping> {
    if scores.len() != BUFFER_LEN {
        return Err(Error::validation(format!(
            "curriculum buffer holds {BUFFER_LEN} scores, got {}",
            scores.len()
        )));
    }
    if let Some(bad) = scores.iter().find(|s| !s.is_finite()) {
        return Err(Error::validation(format!(
            "non-finite difficulty score {bad}"
        )));
    }

    let emit_position = match strategy {
        Strategy::Sequential => (0..BUFFER_LEN).collect(),
        Strategy::Random { seed } => {
            let mut perm: Vec<usize> = (0..BUFFER_LEN).collect();
            let mut rng = rng::substream(seed, Domain::Curriculum, 0);
            rng::fisher_yates(&mut perm, &mut rng);
            perm
        }
        Strategy::EasyToHard => ranks(scores, false),
        Strategy::HardToEasy => ranks(scores, true),
        Strategy::Kingwen => {
            // Difficulty rank k goes to the position whose incoming surprise has rank k.
            let position_rank = ranks(&king_wen_position_surprise(model), false);
            let mut position_of_rank = vec![0; BUFFER_LEN];
            for (pos, &r) in position_rank.iter().enumerate() {
                position_of_rank[r] = pos;
            }
            ranks(scores, false)
                .into_iter()
                .map(|r| position_of_rank[r])
                .collect()
        }
    };

    Ok(CurriculumMapping {
        strategy,
        scores: scores.to_vec(),
        emit_position,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DifficultyMetric {
    TokenDiversity,
    CompressionRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifficultyScore {
    pub metric: DifficultyMetric,
    pub value: f64,
}

/// Unique tokens over total tokens.
pub fn token_diversity<T: Eq + Hash>(tokens: &[T]) -> Result<DifficultyScore> {
    if tokens.is_empty() {
        return Err(Error::validation("token diversity of an empty batch"));
    }
    let unique: HashSet<&T> = tokens.iter().collect();
    Ok(DifficultyScore {
        metric: DifficultyMetric::TokenDiversity,
        value: unique.len() as f64 / tokens.len() as f64,
    })
}

/// Gzip-compressed size (DEFLATE level 6) over original size.
pub fn compression_ratio(payload: &[u8]) -> Result<DifficultyScore> {
    if payload.is_empty() {
        return Err(Error::validation("compression ratio of an empty payload"));
    }
    let mut enc = GzEncoder::new(Vec::new(), Compression::new(COMPRESSION_LEVEL));
    enc.write_all(payload)
        .and_then(|_| enc.finish())
        .map(|compressed| DifficultyScore {
            metric: DifficultyMetric::CompressionRatio,
            value: compressed.len() as f64 / payload.len() as f64,
        })
        .map_err(|e| Error::validation(format!("compression failed: {e}")))
}

/// Decodes little-endian `u32` token ids.
pub fn decode_tokens(bytes: &[u8]) -> Result<Vec<u32>> {
    if !bytes.len().is_multiple_of(4) {
        return Err(Error::validation(format!(
            "token file length {} is not a multiple of 4",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect())
}
