//! C ABI for hexlab.
//!
//! Conventions:
//! - Every fallible function returns a [`HexlabStatus`]; on failure the
//!   message is available from [`hexlab_last_error_message`] on the same thread.
//! - Objects are opaque handles created by `*_new`-style functions and
//!   released by the matching `*_free`.
//! - Array outputs are written into caller buffers whose capacity is passed
//!   alongside; too small a buffer yields `HEXLAB_STATUS_BUFFER_TOO_SMALL`.
//! - Enumerations are passed in as `uint32_t`; out-of-range values are
//!   validation errors.
//! - Panics never cross the boundary.

use std::ffi::{c_char, CStr};

use hexlab::hexagram::{Ordering, ShaoYongConvention};
use hexlab::metrics::SurpriseModel;
use hexlab::permtest::{monte_carlo, MonteCarloConfig, Statistic};
use hexlab::schedules::{curriculum_map, ModulationSchedule, ProfileSource, Strategy};
use hexlab::seedsweep::{classify_effect, summarize, Classification};
use hexlab::special;
use hexlab::stattests::{self, Centering};

mod error;

pub use error::HexlabStatus;
use error::{fill, guard, non_null, slice, write, FfiError};

/// Number of transitions in a surprise profile.
pub const HEXLAB_PROFILE_LEN: usize = 63;
/// Number of hexagrams in an ordering and batches in a curriculum buffer.
pub const HEXLAB_BUFFER_LEN: usize = 64;

pub const HEXLAB_CONVENTION_REVERSED: u32 = 0;
pub const HEXLAB_CONVENTION_DIRECT: u32 = 1;

pub const HEXLAB_STATISTIC_MEAN_TRANSITION_DISTANCE: u32 = 0;
pub const HEXLAB_STATISTIC_LAG1_AUTOCORRELATION: u32 = 1;
pub const HEXLAB_STATISTIC_YANG_BALANCED_GROUPS: u32 = 2;
pub const HEXLAB_STATISTIC_PAIR_ASYMMETRY: u32 = 3;

pub const HEXLAB_PROFILE_KINGWEN: u32 = 0;
pub const HEXLAB_PROFILE_SHAOYONG: u32 = 1;
pub const HEXLAB_PROFILE_RANDOM: u32 = 2;

pub const HEXLAB_STRATEGY_SEQUENTIAL: u32 = 0;
pub const HEXLAB_STRATEGY_RANDOM: u32 = 1;
pub const HEXLAB_STRATEGY_EASY_TO_HARD: u32 = 2;
pub const HEXLAB_STRATEGY_HARD_TO_EASY: u32 = 3;
pub const HEXLAB_STRATEGY_KINGWEN: u32 = 4;

pub const HEXLAB_CENTERING_MEAN: u32 = 0;
pub const HEXLAB_CENTERING_MEDIAN: u32 = 1;

/// Seed-sweep verdict for a candidate value.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HexlabClassification {
    WithinNoise = 0,
    ExceedsNoiseHigh = 1,
    ExceedsNoiseLow = 2,
}

/// Opaque hexagram ordering.
pub struct HexlabOrdering(Ordering);

/// Opaque surprise kernel.
pub struct HexlabSurpriseModel(SurpriseModel);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HexlabMonteCarloResult {
    pub observed: f64,
    pub null_mean: f64,
    pub null_std: f64,
    /// Share of null samples at or below the observed value, in percent.
    pub percentile: f64,
    pub percentile_midrank: f64,
    pub p_value: f64,
    pub n_samples: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HexlabTestResult {
    pub statistic: f64,
    pub p_value: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HexlabSweepVerdict {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub range: f64,
    pub cv: f64,
    pub delta_vs_mean: f64,
    pub classification: HexlabClassification,
}

fn invalid(what: &str, value: u32) -> FfiError {
    FfiError::Core(hexlab::Error::validation(format!("unknown {what} {value}")))
}

fn convention(v: u32) -> Result<ShaoYongConvention, FfiError> {
    match v {
        HEXLAB_CONVENTION_REVERSED => Ok(ShaoYongConvention::Reversed),
        HEXLAB_CONVENTION_DIRECT => Ok(ShaoYongConvention::Direct),
        _ => Err(invalid("convention", v)),
    }
}

fn statistic(v: u32) -> Result<Statistic, FfiError> {
    Statistic::ALL
        .get(v as usize)
        .copied()
        .ok_or_else(|| invalid("statistic", v))
}

fn centering(v: u32) -> Result<Centering, FfiError> {
    match v {
        HEXLAB_CENTERING_MEAN => Ok(Centering::Mean),
        HEXLAB_CENTERING_MEDIAN => Ok(Centering::Median),
        _ => Err(invalid("centering", v)),
    }
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), FfiError> {
    write(out, Box::into_raw(Box::new(value)), "out")
}

unsafe fn borrow<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, FfiError> {
    non_null(p, name)?;
    Ok(&*p)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hexlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL after a success.
///
/// The pointer stays valid until the next hexlab call on the same thread.
#[no_mangle]
pub extern "C" fn hexlab_last_error_message() -> *const c_char {
    error::last_error_ptr()
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hexlab_ordering_king_wen(out: *mut *mut HexlabOrdering) -> HexlabStatus {
    guard(|| emit(out, HexlabOrdering(Ordering::king_wen())))
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hexlab_ordering_shao_yong(
    conv: u32,
    out: *mut *mut HexlabOrdering,
) -> HexlabStatus {
    guard(|| emit(out, HexlabOrdering(Ordering::shao_yong(convention(conv)?))))
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hexlab_ordering_binary(out: *mut *mut HexlabOrdering) -> HexlabStatus {
    guard(|| emit(out, HexlabOrdering(Ordering::binary())))
}

/// Builds an ordering from 64 distinct codes in 0..63, line 1 in bit 0.
///
/// # Safety
/// `codes` must point to `len` bytes; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hexlab_ordering_from_codes(
    codes: *const u8,
    len: usize,
    out: *mut *mut HexlabOrdering,
) -> HexlabStatus {
    guard(|| {
        let codes = slice(codes, len, "codes")?;
        emit(out, HexlabOrdering(Ordering::from_codes("custom", codes)?))
    })
}

/// Copies the 64 codes of `ordering` into `out`.
///
/// # Safety
/// `ordering` must be a live handle; `out` must be writable for `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn hexlab_ordering_codes(
    ordering: *const HexlabOrdering,
    out: *mut u8,
    capacity: usize,
) -> HexlabStatus {
    guard(|| {
        fill(
            &borrow(ordering, "ordering")?.0.codes(),
            out,
            capacity,
            "out",
        )
    })
}

/// # Safety
/// `ordering` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hexlab_ordering_free(ordering: *mut HexlabOrdering) {
    if !ordering.is_null() {
        drop(Box::from_raw(ordering));
    }
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hexlab_surprise_model_default(
    out: *mut *mut HexlabSurpriseModel,
) -> HexlabStatus {
    guard(|| emit(out, HexlabSurpriseModel(SurpriseModel::default())))
}

/// Custom kernel: six line weights summing to one, the yin-to-yang change
/// score, and the nuclear-window weight.
///
/// # Safety
/// `line_weights` must point to 6 doubles; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hexlab_surprise_model_new(
    line_weights: *const f64,
    change_score: f64,
    nuclear_weight: f64,
    out: *mut *mut HexlabSurpriseModel,
) -> HexlabStatus {
    guard(|| {
        non_null(line_weights, "line_weights")?;
        let w: [f64; 6] = std::ptr::read(line_weights.cast());
        emit(
            out,
            HexlabSurpriseModel(SurpriseModel::new(w, change_score, nuclear_weight)?),
        )
    })
}

/// Parses a kernel from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn hexlab_surprise_model_from_json(
    json: *const c_char,
    out: *mut *mut HexlabSurpriseModel,
) -> HexlabStatus {
    guard(|| {
        non_null(json, "json")?;
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| hexlab::Error::validation(format!("model JSON is not UTF-8: {e}")))?;
        let model: SurpriseModel = serde_json::from_str(text)
            .map_err(|e| hexlab::Error::validation(format!("invalid surprise model: {e}")))?;
        emit(out, HexlabSurpriseModel(model))
    })
}

/// # Safety
/// `model` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hexlab_surprise_model_free(model: *mut HexlabSurpriseModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Writes the 63 transition surprises of `ordering` into `out`.
///
/// # Safety
/// Handles must be live; `out` must be writable for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn hexlab_surprise_profile(
    model: *const HexlabSurpriseModel,
    ordering: *const HexlabOrdering,
    out: *mut f64,
    capacity: usize,
) -> HexlabStatus {
    guard(|| {
        let profile = borrow(model, "model")?
            .0
            .profile(&borrow(ordering, "ordering")?.0);
        fill(&profile.values, out, capacity, "out")
    })
}

/// Permutation test of one statistic; `threads = 0` uses all cores.
/// Results depend only on `seed` and `n_samples`.
///
/// # Safety
/// `ordering` must be a live handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hexlab_monte_carlo(
    ordering: *const HexlabOrdering,
    stat: u32,
    n_samples: usize,
    seed: u64,
    threads: usize,
    out: *mut HexlabMonteCarloResult,
) -> HexlabStatus {
    guard(|| {
        let config = MonteCarloConfig::new(n_samples, seed).with_threads(threads);
        let r = monte_carlo(statistic(stat)?, &borrow(ordering, "ordering")?.0, config)?;
        let result = HexlabMonteCarloResult {
            observed: r.observed,
            null_mean: r.null_mean,
            null_std: r.null_std,
            percentile: r.percentile,
            percentile_midrank: r.percentile_midrank,
            p_value: r.p_value,
            n_samples: r.n_samples,
        };
        write(out, result, "out")
    })
}

/// Two-sample Kolmogorov–Smirnov test.
///
/// # Safety
/// `x` and `y` must point to `nx` and `ny` doubles; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hexlab_ks_two_sample(
    x: *const f64,
    nx: usize,
    y: *const f64,
    ny: usize,
    out: *mut HexlabTestResult,
) -> HexlabStatus {
    guard(|| {
        let r = stattests::ks_two_sample(slice(x, nx, "x")?, slice(y, ny, "y")?)?;
        write(
            out,
            HexlabTestResult {
                statistic: r.statistic,
                p_value: r.p_value,
            },
            "out",
        )
    })
}

/// Levene test over `k` groups; group `i` has `sizes[i]` values at `groups[i]`.
///
/// # Safety
/// `groups` and `sizes` must point to `k` entries, each group to its size in doubles.
#[no_mangle]
pub unsafe extern "C" fn hexlab_levene(
    groups: *const *const f64,
    sizes: *const usize,
    k: usize,
    center: u32,
    out: *mut HexlabTestResult,
) -> HexlabStatus {
    guard(|| {
        let ptrs = slice(groups, k, "groups")?;
        let sizes = slice(sizes, k, "sizes")?;
        let data = ptrs
            .iter()
            .zip(sizes)
            .map(|(&p, &n)| slice(p, n, "groups[i]"))
            .collect::<Result<Vec<_>, _>>()?;
        let r = stattests::levene(&data, centering(center)?)?;
        write(
            out,
            HexlabTestResult {
                statistic: r.statistic,
                p_value: r.p_value,
            },
            "out",
        )
    })
}

/// Ljung–Box portmanteau test up to `lags`.
///
/// # Safety
/// `series` must point to `n` doubles; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hexlab_ljung_box(
    series: *const f64,
    n: usize,
    lags: usize,
    out: *mut HexlabTestResult,
) -> HexlabStatus {
    guard(|| {
        let r = stattests::ljung_box(slice(series, n, "series")?, lags)?;
        write(
            out,
            HexlabTestResult {
                statistic: r.statistic,
                p_value: r.p_value,
            },
            "out",
        )
    })
}

/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hexlab_chi_square_cdf(x: f64, df: u32, out: *mut f64) -> HexlabStatus {
    guard(|| write(out, special::chi_square_cdf(x, df)?, "out"))
}

/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hexlab_f_cdf(x: f64, d1: u32, d2: u32, out: *mut f64) -> HexlabStatus {
    guard(|| write(out, special::f_cdf(x, d1, d2)?, "out"))
}

/// Per-step learning-rate multipliers `1 + A·s`, cycling the centered profile.
/// `conv` applies to the Shao Yong profile and `seed` to the random one.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn hexlab_lr_multipliers(
    model: *const HexlabSurpriseModel,
    profile: u32,
    conv: u32,
    seed: u64,
    amplitude: f64,
    steps: usize,
    out: *mut f64,
    capacity: usize,
) -> HexlabStatus {
    guard(|| {
        let source = match profile {
            HEXLAB_PROFILE_KINGWEN => ProfileSource::Kingwen,
            HEXLAB_PROFILE_SHAOYONG => ProfileSource::Shaoyong {
                convention: convention(conv)?,
            },
            HEXLAB_PROFILE_RANDOM => ProfileSource::Random { seed },
            _ => return Err(invalid("profile", profile)),
        };
        if capacity < steps {
            return Err(FfiError::Buffer {
                needed: steps,
                capacity,
            });
        }
        let schedule = ModulationSchedule::new(source, amplitude, &borrow(model, "model")?.0)?;
        fill(&schedule.lr_multipliers(steps)?, out, capacity, "out")
    })
}

/// Maps 64 buffered batch scores to emission positions; `out[b]` is the
/// position of batch `b`. `seed` applies to the random strategy.
///
/// # Safety
/// `model` must be a live handle; `scores` must point to `n` doubles and
/// `out` be writable for `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn hexlab_curriculum_map(
    model: *const HexlabSurpriseModel,
    scores: *const f64,
    n: usize,
    strategy: u32,
    seed: u64,
    out: *mut usize,
    capacity: usize,
) -> HexlabStatus {
    guard(|| {
        let strategy = match strategy {
            HEXLAB_STRATEGY_SEQUENTIAL => Strategy::Sequential,
            HEXLAB_STRATEGY_RANDOM => Strategy::Random { seed },
            HEXLAB_STRATEGY_EASY_TO_HARD => Strategy::EasyToHard,
            HEXLAB_STRATEGY_HARD_TO_EASY => Strategy::HardToEasy,
            HEXLAB_STRATEGY_KINGWEN => Strategy::Kingwen,
            _ => return Err(invalid("strategy", strategy)),
        };
        let m = curriculum_map(
            slice(scores, n, "scores")?,
            strategy,
            &borrow(model, "model")?.0,
        )?;
        fill(&m.emit_position, out, capacity, "out")
    })
}

/// Summarizes a seed sweep and classifies `candidate` against its min–max envelope.
///
/// # Safety
/// `values` must point to `n` doubles; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hexlab_seed_sweep_classify(
    values: *const f64,
    n: usize,
    candidate: f64,
    out: *mut HexlabSweepVerdict,
) -> HexlabStatus {
    guard(|| {
        let s = summarize(slice(values, n, "values")?)?;
        let v = classify_effect(candidate, &s);
        let classification = match v.classification {
            Classification::WithinNoise => HexlabClassification::WithinNoise,
            Classification::ExceedsNoiseHigh => HexlabClassification::ExceedsNoiseHigh,
            Classification::ExceedsNoiseLow => HexlabClassification::ExceedsNoiseLow,
        };
        let verdict = HexlabSweepVerdict {
            n: s.n,
            mean: s.mean,
            std: s.std,
            min: s.min,
            max: s.max,
            range: s.range,
            cv: s.cv,
            delta_vs_mean: v.delta_vs_mean,
            classification,
        };
        write(out, verdict, "out")
    })
}
