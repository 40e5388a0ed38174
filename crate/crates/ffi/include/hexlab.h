#ifndef HEXLAB_H
#define HEXLAB_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Number of transitions in a surprise profile.
#define HEXLAB_PROFILE_LEN 63

// Number of hexagrams in an ordering and batches in a curriculum buffer.
#define HEXLAB_BUFFER_LEN 64

#define HEXLAB_CONVENTION_REVERSED 0

#define HEXLAB_CONVENTION_DIRECT 1

#define HEXLAB_STATISTIC_MEAN_TRANSITION_DISTANCE 0

#define HEXLAB_STATISTIC_LAG1_AUTOCORRELATION 1

#define HEXLAB_STATISTIC_YANG_BALANCED_GROUPS 2

#define HEXLAB_STATISTIC_PAIR_ASYMMETRY 3

#define HEXLAB_PROFILE_KINGWEN 0

#define HEXLAB_PROFILE_SHAOYONG 1

#define HEXLAB_PROFILE_RANDOM 2

#define HEXLAB_STRATEGY_SEQUENTIAL 0

#define HEXLAB_STRATEGY_RANDOM 1

#define HEXLAB_STRATEGY_EASY_TO_HARD 2

#define HEXLAB_STRATEGY_HARD_TO_EASY 3

#define HEXLAB_STRATEGY_KINGWEN 4

#define HEXLAB_CENTERING_MEAN 0

#define HEXLAB_CENTERING_MEDIAN 1

// Status returned by every fallible entry point.
//
// Codes 2, 3 and 4 mirror the command-line exit codes.
typedef enum HexlabStatus {
  HEXLAB_STATUS_OK = 0,
  HEXLAB_STATUS_VALIDATION = 2,
  HEXLAB_STATUS_IO = 3,
  HEXLAB_STATUS_UNDEFINED_STATISTIC = 4,
  HEXLAB_STATUS_NULL_POINTER = 5,
  HEXLAB_STATUS_BUFFER_TOO_SMALL = 6,
  HEXLAB_STATUS_PANIC = 7,
} HexlabStatus;

// Seed-sweep verdict for a candidate value.
enum HexlabClassification
#if __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // __STDC_VERSION__ >= 202311L
 {
  HEXLAB_CLASSIFICATION_WITHIN_NOISE = 0,
  HEXLAB_CLASSIFICATION_EXCEEDS_NOISE_HIGH = 1,
  HEXLAB_CLASSIFICATION_EXCEEDS_NOISE_LOW = 2,
};
#if __STDC_VERSION__ >= 202311L
typedef enum HexlabClassification HexlabClassification;
#else
typedef uint32_t HexlabClassification;
#endif // __STDC_VERSION__ >= 202311L

// Opaque hexagram ordering.
typedef struct HexlabOrdering HexlabOrdering;

// Opaque surprise kernel.
typedef struct HexlabSurpriseModel HexlabSurpriseModel;

typedef struct HexlabMonteCarloResult {
  double observed;
  double null_mean;
  double null_std;
  // Share of null samples at or below the observed value, in percent.
  double percentile;
  double percentile_midrank;
  double p_value;
  size_t n_samples;
} HexlabMonteCarloResult;

typedef struct HexlabTestResult {
  double statistic;
  double p_value;
} HexlabTestResult;

typedef struct HexlabSweepVerdict {
  size_t n;
  double mean;
  double std;
  double min;
  double max;
  double range;
  double cv;
  double delta_vs_mean;
  HexlabClassification classification;
} HexlabSweepVerdict;

// Library version as a static NUL-terminated string.
const char *hexlab_version(void);

// Message for the last failed call on this thread, or NULL after a success.
//
// The pointer stays valid until the next hexlab call on the same thread.
const char *hexlab_last_error_message(void);

// # Safety
// `out` must be valid for writing one pointer.
enum HexlabStatus hexlab_ordering_king_wen(struct HexlabOrdering **out);

// # Safety
// `out` must be valid for writing one pointer.
enum HexlabStatus hexlab_ordering_shao_yong(uint32_t conv, struct HexlabOrdering **out);

// # Safety
// `out` must be valid for writing one pointer.
enum HexlabStatus hexlab_ordering_binary(struct HexlabOrdering **out);

// Builds an ordering from 64 distinct codes in 0..63, line 1 in bit 0.
//
// # Safety
// `codes` must point to `len` bytes; `out` must be valid for writing one pointer.
enum HexlabStatus hexlab_ordering_from_codes(const uint8_t *codes,
                                             size_t len,
                                             struct HexlabOrdering **out);

// Copies the 64 codes of `ordering` into `out`.
//
// # Safety
// `ordering` must be a live handle; `out` must be writable for `capacity` bytes.
enum HexlabStatus hexlab_ordering_codes(const struct HexlabOrdering *ordering,
                                        uint8_t *out,
                                        size_t capacity);

// # Safety
// `ordering` must be NULL or a handle not yet freed.
void hexlab_ordering_free(struct HexlabOrdering *ordering);

// # Safety
// `out` must be valid for writing one pointer.
enum HexlabStatus hexlab_surprise_model_default(struct HexlabSurpriseModel **out);

// Custom kernel: six line weights summing to one, the yin-to-yang change
// score, and the nuclear-window weight.
//
// # Safety
// `line_weights` must point to 6 doubles; `out` must be valid for writing one pointer.
enum HexlabStatus hexlab_surprise_model_new(const double *line_weights,
                                            double change_score,
                                            double nuclear_weight,
                                            struct HexlabSurpriseModel **out);

// Parses a kernel from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be valid for writing one pointer.
enum HexlabStatus hexlab_surprise_model_from_json(const char *json,
                                                  struct HexlabSurpriseModel **out);

// # Safety
// `model` must be NULL or a handle not yet freed.
void hexlab_surprise_model_free(struct HexlabSurpriseModel *model);

// Writes the 63 transition surprises of `ordering` into `out`.
//
// # Safety
// Handles must be live; `out` must be writable for `capacity` doubles.
enum HexlabStatus hexlab_surprise_profile(const struct HexlabSurpriseModel *model,
                                          const struct HexlabOrdering *ordering,
                                          double *out,
                                          size_t capacity);

// Permutation test of one statistic; `threads = 0` uses all cores.
// Results depend only on `seed` and `n_samples`.
//
// # Safety
// `ordering` must be a live handle; `out` must be valid for one write.
enum HexlabStatus hexlab_monte_carlo(const struct HexlabOrdering *ordering,
                                     uint32_t stat,
                                     size_t n_samples,
                                     uint64_t seed,
                                     size_t threads,
                                     struct HexlabMonteCarloResult *out);

// Two-sample Kolmogorov–Smirnov test.
//
// # Safety
// `x` and `y` must point to `nx` and `ny` doubles; `out` must be valid for one write.
enum HexlabStatus hexlab_ks_two_sample(const double *x,
                                       size_t nx,
                                       const double *y,
                                       size_t ny,
                                       struct HexlabTestResult *out);

// Levene test over `k` groups; group `i` has `sizes[i]` values at `groups[i]`.
//
// # Safety
// `groups` and `sizes` must point to `k` entries, each group to its size in doubles.
enum HexlabStatus hexlab_levene(const double *const *groups,
                                const size_t *sizes,
                                size_t k,
                                uint32_t center,
                                struct HexlabTestResult *out);

// Ljung–Box portmanteau test up to `lags`.
//
// # Safety
// `series` must point to `n` doubles; `out` must be valid for one write.
enum HexlabStatus hexlab_ljung_box(const double *series,
                                   size_t n,
                                   size_t lags,
                                   struct HexlabTestResult *out);

// # Safety
// `out` must be valid for one write.
enum HexlabStatus hexlab_chi_square_cdf(double x, uint32_t df, double *out);

// # Safety
// `out` must be valid for one write.
enum HexlabStatus hexlab_f_cdf(double x, uint32_t d1, uint32_t d2, double *out);

// Per-step learning-rate multipliers `1 + A·s`, cycling the centered profile.
// `conv` applies to the Shao Yong profile and `seed` to the random one.
//
// # Safety
// `model` must be a live handle; `out` must be writable for `capacity` doubles.
enum HexlabStatus hexlab_lr_multipliers(const struct HexlabSurpriseModel *model,
                                        uint32_t profile,
                                        uint32_t conv,
                                        uint64_t seed,
                                        double amplitude,
                                        size_t steps,
                                        double *out,
                                        size_t capacity);

// Maps 64 buffered batch scores to emission positions; `out[b]` is the
// position of batch `b`. `seed` applies to the random strategy.
//
// # Safety
// `model` must be a live handle; `scores` must point to `n` doubles and
// `out` be writable for `capacity` entries.
enum HexlabStatus hexlab_curriculum_map(const struct HexlabSurpriseModel *model,
                                        const double *scores,
                                        size_t n,
                                        uint32_t strategy,
                                        uint64_t seed,
                                        size_t *out,
                                        size_t capacity);

// Summarizes a seed sweep and classifies `candidate` against its min–max envelope.
//
// # Safety
// `values` must point to `n` doubles; `out` must be valid for one write.
enum HexlabStatus hexlab_seed_sweep_classify(const double *values,
                                             size_t n,
                                             double candidate,
                                             struct HexlabSweepVerdict *out);

#endif  /* HEXLAB_H */
