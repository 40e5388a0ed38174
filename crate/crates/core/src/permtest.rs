//! Sequence statistics and their Monte Carlo null distributions.
//!
//! The null is the uniform distribution over orderings of the 64 hexagrams.
//! Each Monte Carlo sample `i` is a Fisher–Yates shuffle of `0..64` driven by
//! its own substream `(master_seed, i)`; the reduction runs over samples in
//! index order, so a report is bit-identical for any worker count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexagram::{Hexagram, Ordering, HEXAGRAM_COUNT};
use crate::metrics::hamming;
use crate::rng::{self, Domain};

/// Smallest accepted Monte Carlo sample count.
pub const MIN_SAMPLES: usize = 100;

const TIE_TOLERANCE: f64 = 1e-12;

pub fn mean_transition_distance(ordering: &Ordering) -> f64 {
    mean_distance(ordering.sequence())
}

/// Sample lag-1 autocorrelation `Σ (x_t − x̄)(x_{t+1} − x̄) / Σ (x_t − x̄)²`.
pub fn lag1_autocorrelation(series: &[f64]) -> Result<f64> {
    if series.len() < 3 {
        return Err(Error::validation(format!(
            "lag-1 autocorrelation needs at least 3 values, got {}",
            series.len()
        )));
    }
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    let denom: f64 = series.iter().map(|x| (x - mean).powi(2)).sum();
    if denom == 0.0 {
        return Err(Error::undefined(
            "lag-1 autocorrelation of a constant series",
        ));
    }
    let numer: f64 = series
        .windows(2)
        .map(|w| (w[0] - mean) * (w[1] - mean))
        .sum();
    Ok(numer / denom)
}

/// Count of the 16 disjoint blocks of four positions holding exactly 12 yang lines.
pub fn yang_balanced_group_count(ordering: &Ordering) -> u32 {
    balanced_groups(ordering.sequence())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairAsymmetry {
    pub within_mean: f64,
    pub between_mean: f64,
    pub diff: f64,
}

/// Within-pair (positions 2k−1, 2k) versus between-pair (2k, 2k+1) mean distance.
pub fn pair_asymmetry(ordering: &Ordering) -> PairAsymmetry {
    asymmetry(ordering.sequence())
}

fn distances(seq: &[Hexagram]) -> impl Iterator<Item = u32> + '_ {
    seq.windows(2).map(|w| hamming(w[0], w[1]))
}

fn mean_distance(seq: &[Hexagram]) -> f64 {
    let total: u32 = distances(seq).sum();
    total as f64 / (seq.len() - 1) as f64
}

fn hamming_lag1(seq: &[Hexagram]) -> Result<f64> {
    let series: Vec<f64> = distances(seq).map(f64::from).collect();
    lag1_autocorrelation(&series)
}

fn balanced_groups(seq: &[Hexagram]) -> u32 {
    seq.chunks_exact(4)
        .filter(|g| g.iter().map(|h| h.yang_count()).sum::<u32>() == 12)
        .count() as u32
}

fn asymmetry(seq: &[Hexagram]) -> PairAsymmetry {
    let (mut within, mut n_within, mut between, mut n_between) = (0u32, 0u32, 0u32, 0u32);
    for (t, d) in distances(seq).enumerate() {
        if t % 2 == 0 {
            within += d;
            n_within += 1;
        } else {
            between += d;
            n_between += 1;
        }
    }
    let within_mean = within as f64 / n_within as f64;
    let between_mean = between as f64 / n_between as f64;
    PairAsymmetry {
        within_mean,
        between_mean,
        diff: within_mean - between_mean,
    }
}

/// The four ordering statistics with a permutation null.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    MeanTransitionDistance,
    Lag1Autocorrelation,
    YangBalancedGroups,
    PairAsymmetry,
}

/// Which tail of the null is extreme for a statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Upper,
    Lower,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [
        Statistic::MeanTransitionDistance,
        Statistic::Lag1Autocorrelation,
        Statistic::YangBalancedGroups,
        Statistic::PairAsymmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::MeanTransitionDistance => "mean_transition_distance",
            Statistic::Lag1Autocorrelation => "lag1_autocorrelation",
            Statistic::YangBalancedGroups => "yang_balanced_groups",
            Statistic::PairAsymmetry => "pair_asymmetry",
        }
    }

    pub fn tail(self) -> Tail {
        match self {
            Statistic::Lag1Autocorrelation => Tail::Lower,
            _ => Tail::Upper,
        }
    }

    /// Scalar value of the statistic; pair asymmetry reports its `diff`.
    pub fn evaluate(self, ordering: &Ordering) -> Result<f64> {
        self.eval_seq(ordering.sequence())
    }

    fn eval_seq(self, seq: &[Hexagram]) -> Result<f64> {
        Ok(match self {
            Statistic::MeanTransitionDistance => mean_distance(seq),
            Statistic::Lag1Autocorrelation => hamming_lag1(seq)?,
            Statistic::YangBalancedGroups => balanced_groups(seq) as f64,
            Statistic::PairAsymmetry => asymmetry(seq).diff,
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::validation(format!("unknown statistic {s:?}")))
    }
}

/// Observed statistic against its permutation null.
///
/// `percentile` is the share of null samples at or below the observed value,
/// in percent. `percentile_midrank` counts ties as one half. `p_value` is
/// the tail probability in the statistic's extreme direction: the share at
/// or below for a lower-tail statistic, the share strictly above for an
/// upper-tail one (that is, `1 − percentile/100`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub statistic: Statistic,
    pub tail: Tail,
    pub observed: f64,
    pub null_mean: f64,
    pub null_std: f64,
    pub percentile: f64,
    pub percentile_midrank: f64,
    pub p_value: f64,
    pub n_samples: usize,
    pub master_seed: u64,
}

/// Monte Carlo settings shared by every statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub n_samples: usize,
    pub master_seed: u64,
    /// Worker threads; 0 lets the runtime choose.
    pub threads: usize,
}

impl MonteCarloConfig {
    pub fn new(n_samples: usize, master_seed: u64) -> Self {
        MonteCarloConfig {
            n_samples,
            master_seed,
            threads: 0,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_samples < MIN_SAMPLES {
            return Err(Error::validation(format!(
                "Monte Carlo needs at least {MIN_SAMPLES} samples, got {}",
                self.n_samples
            )));
        }
        Ok(())
    }
}

/// Null permutation for sample `index`.
pub fn null_permutation(master_seed: u64, index: u64) -> Vec<Hexagram> {
    let mut seq: Vec<Hexagram> = Hexagram::all().collect();
    let mut rng = rng::substream(master_seed, Domain::MonteCarlo, index);
    rng::fisher_yates(&mut seq, &mut rng);
    debug_assert_eq!(seq.len(), HEXAGRAM_COUNT);
    seq
}

pub(crate) fn run_in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::validation(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(job))
}

/// Runs one statistic against its permutation null.
pub fn monte_carlo(
    statistic: Statistic,
    ordering: &Ordering,
    config: MonteCarloConfig,
) -> Result<MonteCarloReport> {
    let mut reports = monte_carlo_many(&[statistic], ordering, config)?;
    Ok(reports.remove(0))
}

/// Evaluates several statistics on the same null permutations.
pub fn monte_carlo_many(
    statistics: &[Statistic],
    ordering: &Ordering,
    config: MonteCarloConfig,
) -> Result<Vec<MonteCarloReport>> {
    config.validate()?;
    let seed = config.master_seed;
    let samples: Vec<Vec<f64>> = run_in_pool(config.threads, || {
        (0..config.n_samples as u64)
            .into_par_iter()
            .map(|i| {
                let seq = null_permutation(seed, i);
                statistics
                    .iter()
                    .map(|st| st.eval_seq(&seq))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()
    })??;

    statistics
        .iter()
        .enumerate()
        .map(|(j, &st)| {
            let observed = st.evaluate(ordering)?;
            let null: Vec<f64> = samples.iter().map(|row| row[j]).collect();
            Ok(summarize_null(st, observed, &null, seed))
        })
        .collect()
}

fn summarize_null(
    statistic: Statistic,
    observed: f64,
    null: &[f64],
    seed: u64,
) -> MonteCarloReport {
    let n = null.len() as f64;
    let mean = null.iter().sum::<f64>() / n;
    let var = null.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);

    let tol = TIE_TOLERANCE * observed.abs().max(1.0);
    let (mut below, mut equal) = (0usize, 0usize);
    for &x in null {
        if (x - observed).abs() <= tol {
            equal += 1;
        } else if x < observed {
            below += 1;
        }
    }
    let at_or_below = (below + equal) as f64 / n;
    let percentile = 100.0 * at_or_below;
    let percentile_midrank = 100.0 * (below as f64 + 0.5 * equal as f64) / n;
    let p_value = match statistic.tail() {
        Tail::Lower => at_or_below,
        Tail::Upper => 1.0 - at_or_below,
    };

    MonteCarloReport {
        statistic,
        tail: statistic.tail(),
        observed,
        null_mean: mean,
        null_std: var.sqrt(),
        percentile,
        percentile_midrank,
        p_value,
        n_samples: null.len(),
        master_seed: seed,
    }
}
