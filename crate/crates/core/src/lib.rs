//! Sequence-statistics toolkit for orderings of the 64 hexagrams.
//!
//! - [`hexagram`]: the six-line binary space and the King Wen, Shao Yong and
//!   binary orderings.
//! - [`metrics`]: transition distances and the surprise kernel.
//! - [`permtest`]: ordering statistics with seeded Monte Carlo permutation nulls.
//! - [`stattests`] and [`special`]: KS, Levene and Ljung–Box tests.
//! - [`schedules`]: learning-rate multipliers, curriculum mappings, difficulty scores.
//! - [`seedsweep`]: seed-variance noise floor and effect classification.
//! - [`report`]: the full characterization pipeline behind the `hexlab` CLI.

pub mod error;
pub mod formats;
pub mod hexagram;
pub mod metrics;
pub mod permtest;
pub mod report;
pub mod rng;
pub mod schedules;
pub mod seedsweep;
pub mod special;
pub mod stattests;

pub use error::{Error, Result};
pub use hexagram::{Hexagram, Ordering, ShaoYongConvention, Trigram};
pub use metrics::{SurpriseModel, SurpriseProfile};
pub use permtest::{MonteCarloConfig, MonteCarloReport, Statistic};
pub use report::{AnalysisConfig, AnalysisReport, CompareConfig, ComparisonReport};
pub use schedules::{CurriculumMapping, ModulationSchedule, ProfileSource, Strategy};
pub use seedsweep::{EffectVerdict, SweepSummary};
pub use stattests::{TestKind, TestResult};
