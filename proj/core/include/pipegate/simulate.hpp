#pragma once
// Seeded Monte Carlo oracle for the screened validation pipeline.
//
// Patches are abstract Bernoulli-labelled items: good with probability pi.
// The screener and the validator are independent Bernoulli filters with
// constant per-item latency.
//
// Random streams: every (seed, trial, stream) triple owns a std::mt19937_64
// seeded through std::seed_seq with the 32-bit words
//   {seed_lo, seed_hi, trial_lo, trial_hi, stream}
// where stream 0 drives the baseline pipeline and stream 1 the augmented one.
// Both the engine and seed_seq::generate are fully specified by the C++
// standard, and uniforms are built from the top 53 bits of each draw, so
// outcomes are bit-stable across platforms and worker counts. Each baseline
// patch consumes two draws (label, validator); each augmented patch three
// (label, screener, validator), which keeps streams aligned under coupling.

#include <cstdint>
#include <optional>
#include <string_view>

#include "pipegate/bounds.hpp"
#include "pipegate/metrics.hpp"

namespace pipegate::simulate {

// Identity of the random stream construction. Part of the output contract.
inline constexpr std::string_view kGeneratorId = "mt19937_64/seed_seq(seed,trial,stream)/v1";

inline constexpr std::uint32_t kDefaultTrials = 100;
inline constexpr std::uint64_t kDefaultPatches = 100000;

enum class PrecisionMode { AsPublished, PrevalenceConsistent };

std::string_view to_string(PrecisionMode m) noexcept;
std::optional<PrecisionMode> parse_precision_mode(std::string_view text) noexcept;

struct SimConfig {
    double prevalence = 0.38;
    std::uint64_t n = kDefaultPatches;
    std::uint64_t extra = 0;             // dn, additional candidates for the augmented pipeline
    metrics::RateTriple screener;        // tpr = R_M, fpr = Far_M
    metrics::RateTriple validator{1.0, 0.0};
    double screener_latency = 0.0;
    double validator_latency = 1.0;
    std::uint32_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    PrecisionMode precision_mode = PrecisionMode::AsPublished;
    std::optional<double> published_precision;  // P_M used by the as-published analytics

    void validate() const;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

enum class EmpiricalVerdict { Convenient, NotConvenient, Inconclusive };
std::string_view to_string(EmpiricalVerdict v) noexcept;

struct BaselineStats {
    Estimate tp;
    Estimate fp;  // bad patches the validator lets through
    Estimate time;
};

struct AugmentedStats {
    Estimate tp;
    Estimate fp;
    Estimate time;
    Estimate survivors;            // patches passed by the screener
    Estimate screener_precision;   // per-trial TP_M / (TP_M + FP_M), trials with no survivors skipped
};

struct SimOutcome {
    BaselineStats baseline;
    AugmentedStats augmented;
    EmpiricalVerdict verdict = EmpiricalVerdict::Inconclusive;
    std::uint32_t trials = 0;
};

// Closed-form expectations for the same configuration, via the bounds model.
struct AnalyticPrediction {
    double screener_precision = 0.0;  // the P_M the analytics used (depends on precision_mode)
    bounds::BoundsReport report;
};

struct PrecisionProbe {
    Estimate empirical;
    double prevalence_consistent = 0.0;
    std::optional<double> as_published;
};

// workers == 0 selects std::thread::hardware_concurrency(). Results never depend on it.
BaselineStats run_baseline(const SimConfig& cfg, unsigned workers = 1);
AugmentedStats run_augmented(const SimConfig& cfg, unsigned workers = 1);
SimOutcome compare(const SimConfig& cfg, unsigned workers = 1);
PrecisionProbe survivor_precision_probe(const SimConfig& cfg, unsigned workers = 1);

AnalyticPrediction analytic_prediction(const SimConfig& cfg);

// Empirical verdict from two pipelines' estimates, by the 3-standard-error rule.
EmpiricalVerdict empirical_verdict(const BaselineStats& base, const AugmentedStats& aug, double z = 3.0);

// Whether an analytic verdict is resolvable at the given standard errors:
// some margin below -z*se (not convenient) or both margins above z*se (convenient).
std::optional<EmpiricalVerdict> resolvable_verdict(const bounds::BoundsReport& analytic, const BaselineStats& base,
                                                   const AugmentedStats& aug, double z = 3.0);

// |empirical - expected| <= z * se, with a 1e-9 relative floor for deterministic quantities.
bool within_standard_errors(const Estimate& e, double expected, double z = 3.0) noexcept;

}  // namespace pipegate::simulate
