//! End-to-end characterization pipeline and its JSON report.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexagram::{Hexagram, Ordering, ShaoYongConvention};
use crate::metrics::{hamming_series, summarize_values, Summary, SurpriseModel};
use crate::permtest::{
    self, monte_carlo_many, run_in_pool, MonteCarloConfig, MonteCarloReport, PairAsymmetry,
    Statistic,
};
use crate::rng::{self, Domain};
use crate::stattests::{ks_two_sample, levene, ljung_box, Centering, TestKind, TestResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const RANDOM_NAME: &str = "random";
/// Significance level used for the random-baseline Ljung–Box rejection rate.
pub const REJECTION_ALPHA: f64 = 0.05;

/// Which per-transition series the tests run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    #[default]
    Surprise,
    Hamming,
}

/// Named canonical ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingName {
    Kingwen,
    Shaoyong,
    Binary,
}

impl OrderingName {
    pub fn build(self, convention: ShaoYongConvention) -> Ordering {
        match self {
            OrderingName::Kingwen => Ordering::king_wen(),
            OrderingName::Shaoyong => Ordering::shao_yong(convention),
            OrderingName::Binary => Ordering::binary(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "kingwen" => Ok(OrderingName::Kingwen),
            "shaoyong" => Ok(OrderingName::Shaoyong),
            "binary" => Ok(OrderingName::Binary),
            other => Err(Error::validation(format!("unknown ordering {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareConfig {
    pub orderings: Vec<OrderingName>,
    pub convention: ShaoYongConvention,
    /// Random permutations pooled into the "random" group; 0 disables it.
    pub random_baseline: usize,
    pub tests: Vec<TestKind>,
    pub series: SeriesKind,
    pub ljung_box_lags: usize,
    pub levene_centering: Centering,
    pub seed: u64,
    #[serde(skip)]
    pub threads: usize,
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig {
            orderings: vec![
                OrderingName::Kingwen,
                OrderingName::Binary,
                OrderingName::Shaoyong,
            ],
            convention: ShaoYongConvention::default(),
            random_baseline: 1000,
            tests: vec![
                TestKind::KolmogorovSmirnov,
                TestKind::Levene,
                TestKind::LjungBox,
            ],
            series: SeriesKind::default(),
            ljung_box_lags: 5,
            levene_centering: Centering::default(),
            seed: 42,
            threads: 0,
        }
    }
}

/// Table-style summary of one ordering's series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub ordering: String,
    pub mean: f64,
    pub std: f64,
    pub variance: f64,
    pub min: f64,
    pub max: f64,
}

impl ProfileRow {
    fn from_summary(name: &str, s: &Summary) -> Self {
        ProfileRow {
            ordering: name.to_owned(),
            mean: s.mean,
            std: s.std,
            variance: s.variance,
            min: s.min,
            max: s.max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTest {
    pub a: String,
    pub b: String,
    pub result: TestResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleTest {
    pub ordering: String,
    pub result: TestResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomLjungBox {
    pub permutations: usize,
    pub alpha: f64,
    pub rejection_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub schema_version: u32,
    pub config: CompareConfig,
    /// One row per ordering; the random row averages each statistic over
    /// the baseline permutations.
    pub profiles: Vec<ProfileRow>,
    /// Summary of all random-baseline values pooled into one sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_pooled: Option<ProfileRow>,
    pub pairwise: Vec<PairwiseTest>,
    pub ljung_box: Vec<SingleTest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_ljung_box: Option<RandomLjungBox>,
}

fn series_of(ordering: &Ordering, kind: SeriesKind, model: &SurpriseModel) -> Vec<f64> {
    match kind {
        SeriesKind::Surprise => model.profile(ordering).values,
        SeriesKind::Hamming => hamming_series(ordering),
    }
}

/// Baseline permutation `index`, independent of the Monte Carlo streams.
pub fn baseline_permutation(seed: u64, index: u64) -> Ordering {
    let mut seq: Vec<Hexagram> = Hexagram::all().collect();
    let mut r = rng::substream(seed, Domain::RandomBaseline, index);
    rng::fisher_yates(&mut seq, &mut r);
    Ordering::new(RANDOM_NAME, seq).expect("shuffle is a permutation")
}

/// Pairwise KS/Levene and per-ordering Ljung–Box tests over transition series.
pub fn compare(config: &CompareConfig, model: &SurpriseModel) -> Result<ComparisonReport> {
    if config.orderings.is_empty() && config.random_baseline == 0 {
        return Err(Error::validation("nothing to compare"));
    }
    let mut groups: Vec<(String, Vec<f64>)> = config
        .orderings
        .iter()
        .map(|name| {
            let ord = name.build(config.convention);
            (ord.name().to_owned(), series_of(&ord, config.series, model))
        })
        .collect();

    let mut profiles = groups
        .iter()
        .map(|(name, values)| Ok(ProfileRow::from_summary(name, &summarize_values(values)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut random_pooled = None;
    let mut random_ljung_box = None;
    if config.random_baseline > 0 {
        let series_kind = config.series;
        let seed = config.seed;
        let lags = config.ljung_box_lags;
        let want_lb = config.tests.contains(&TestKind::LjungBox);
        let baseline: Vec<(Vec<f64>, Option<f64>)> = run_in_pool(config.threads, || {
            (0..config.random_baseline as u64)
                .into_par_iter()
                .map(|i| {
                    let ord = baseline_permutation(seed, i);
                    let values = series_of(&ord, series_kind, model);
                    let p = if want_lb {
                        Some(ljung_box(&values, lags)?.p_value)
                    } else {
                        None
                    };
                    Ok((values, p))
                })
                .collect::<Result<Vec<_>>>()
        })??;

        let summaries = baseline
            .iter()
            .map(|(v, _)| summarize_values(v))
            .collect::<Result<Vec<_>>>()?;
        let n = summaries.len() as f64;
        let avg = |f: fn(&Summary) -> f64| summaries.iter().map(f).sum::<f64>() / n;
        profiles.push(ProfileRow {
            ordering: RANDOM_NAME.into(),
            mean: avg(|s| s.mean),
            std: avg(|s| s.std),
            variance: avg(|s| s.variance),
            min: avg(|s| s.min),
            max: avg(|s| s.max),
        });

        let pooled: Vec<f64> = baseline
            .iter()
            .flat_map(|(v, _)| v.iter().copied())
            .collect();
        random_pooled = Some(ProfileRow::from_summary(
            RANDOM_NAME,
            &summarize_values(&pooled)?,
        ));

        if want_lb {
            let rejected = baseline
                .iter()
                .filter(|(_, p)| p.is_some_and(|p| p < REJECTION_ALPHA))
                .count();
            random_ljung_box = Some(RandomLjungBox {
                permutations: baseline.len(),
                alpha: REJECTION_ALPHA,
                rejection_rate: rejected as f64 / baseline.len() as f64,
            });
        }
        groups.push((RANDOM_NAME.into(), pooled));
    }

    let mut pairwise = Vec::new();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            let (a, xa) = &groups[i];
            let (b, xb) = &groups[j];
            for test in &config.tests {
                let result = match test {
                    TestKind::KolmogorovSmirnov => ks_two_sample(xa, xb)?,
                    TestKind::Levene => levene(&[xa, xb], config.levene_centering)?,
                    TestKind::LjungBox => continue,
                };
                pairwise.push(PairwiseTest {
                    a: a.clone(),
                    b: b.clone(),
                    result,
                });
            }
        }
    }

    let mut lb = Vec::new();
    if config.tests.contains(&TestKind::LjungBox) {
        for (name, values) in groups.iter().filter(|(n, _)| n != RANDOM_NAME) {
            lb.push(SingleTest {
                ordering: name.clone(),
                result: ljung_box(values, config.ljung_box_lags)?,
            });
        }
    }

    Ok(ComparisonReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        profiles,
        random_pooled,
        pairwise,
        ljung_box: lb,
        random_ljung_box,
    })
}

impl ComparisonReport {
    pub fn pairwise_result(&self, a: &str, b: &str, test: TestKind) -> Option<&TestResult> {
        self.pairwise
            .iter()
            .find(|p| p.result.test == test && ((p.a == a && p.b == b) || (p.a == b && p.b == a)))
            .map(|p| &p.result)
    }

    pub fn ljung_box_for(&self, ordering: &str) -> Option<&TestResult> {
        self.ljung_box
            .iter()
            .find(|t| t.ordering == ordering)
            .map(|t| &t.result)
    }

    pub fn profile(&self, ordering: &str) -> Option<&ProfileRow> {
        self.profiles.iter().find(|p| p.ordering == ordering)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub ordering: OrderingName,
    pub convention: ShaoYongConvention,
    pub mc_samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub threads: usize,
    pub random_baseline: usize,
    pub series: SeriesKind,
    pub ljung_box_lags: usize,
    pub levene_centering: Centering,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            ordering: OrderingName::Kingwen,
            convention: ShaoYongConvention::default(),
            mc_samples: 100_000,
            seed: 42,
            threads: 0,
            random_baseline: 1000,
            series: SeriesKind::default(),
            ljung_box_lags: 5,
            levene_centering: Centering::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingInfo {
    pub name: String,
    pub convention: ShaoYongConvention,
    pub codes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservedStatistics {
    pub mean_transition_distance: f64,
    pub lag1_autocorrelation: f64,
    pub yang_balanced_groups: u32,
    pub pair_asymmetry: PairAsymmetry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub master_seed: u64,
    pub monte_carlo_stream: String,
    pub random_baseline_stream: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: AnalysisConfig,
    pub surprise_model: SurpriseModel,
    pub ordering: OrderingInfo,
    pub observed: ObservedStatistics,
    pub monte_carlo: Vec<MonteCarloReport>,
    pub comparison: ComparisonReport,
    pub seeds: SeedRecord,
    pub duration_seconds: f64,
}

impl AnalysisReport {
    pub fn monte_carlo_for(&self, statistic: Statistic) -> Option<&MonteCarloReport> {
        self.monte_carlo.iter().find(|r| r.statistic == statistic)
    }

    /// Table rows in the order mean, std, variance, min, max.
    pub fn table_csv(&self) -> String {
        let mut out = String::from("ordering,mean,std,variance,min,max\n");
        for row in &self.comparison.profiles {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.ordering,
                crate::formats::fmt_sig(row.mean, 9),
                crate::formats::fmt_sig(row.std, 9),
                crate::formats::fmt_sig(row.variance, 9),
                crate::formats::fmt_sig(row.min, 9),
                crate::formats::fmt_sig(row.max, 9),
            ));
        }
        out
    }
}

/// Orderings → profiles → Monte Carlo → tests.
pub fn run_full_analysis(config: &AnalysisConfig, model: &SurpriseModel) -> Result<AnalysisReport> {
    let started = Instant::now();
    let ordering = config.ordering.build(config.convention);

    let series = hamming_series(&ordering);
    let observed = ObservedStatistics {
        mean_transition_distance: permtest::mean_transition_distance(&ordering),
        lag1_autocorrelation: permtest::lag1_autocorrelation(&series)?,
        yang_balanced_groups: permtest::yang_balanced_group_count(&ordering),
        pair_asymmetry: permtest::pair_asymmetry(&ordering),
    };

    let mc = MonteCarloConfig::new(config.mc_samples, config.seed).with_threads(config.threads);
    let monte_carlo = monte_carlo_many(&Statistic::ALL, &ordering, mc)?;

    let mut orderings = vec![config.ordering];
    for name in [
        OrderingName::Kingwen,
        OrderingName::Binary,
        OrderingName::Shaoyong,
    ] {
        if !orderings.contains(&name) {
            orderings.push(name);
        }
    }
    let comparison = compare(
        &CompareConfig {
            orderings,
            convention: config.convention,
            random_baseline: config.random_baseline,
            tests: vec![
                TestKind::KolmogorovSmirnov,
                TestKind::Levene,
                TestKind::LjungBox,
            ],
            series: config.series,
            ljung_box_lags: config.ljung_box_lags,
            levene_centering: config.levene_centering,
            seed: config.seed,
            threads: config.threads,
        },
        model,
    )?;

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_owned(),
        config: config.clone(),
        surprise_model: model.clone(),
        ordering: OrderingInfo {
            name: ordering.name().to_owned(),
            convention: config.convention,
            codes: ordering.codes(),
        },
        observed,
        monte_carlo,
        comparison,
        seeds: SeedRecord {
            master_seed: config.seed,
            monte_carlo_stream: "pcg64mcg/splitmix64(seed, domain=1, sample)".into(),
            random_baseline_stream: "pcg64mcg/splitmix64(seed, domain=2, permutation)".into(),
        },
        duration_seconds: started.elapsed().as_secs_f64(),
    })
}
