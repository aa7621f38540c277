#pragma once
// Linear-cost model of a validator V optionally pre-screened by a model M.
//
// Baseline:  n patches go straight to V.
// Augmented: n + dn patches go through M; only M's survivors reach V.
// All counts are expectations and are never rounded here.

#include <optional>
#include <string_view>

#include "pipegate/metrics.hpp"

namespace pipegate::bounds {

// Relative tolerance under which two throughput or time figures count as equal.
inline constexpr double kTieTolerance = 1e-9;

struct PipelineConfig {
    double prevalence = 0.38;  // fraction of good patches among generated candidates
    double n = 0.0;            // baseline candidate count
    metrics::ClassifierSpec validator;  // recall and latency required
    metrics::ClassifierSpec screener;   // screener-side P_M, R_M, latency tau_M

    void validate() const;
};

enum class Verdict { Convenient, NotConvenient, Boundary };

// Which requirement decides the verdict.
enum class Constraint { None, Throughput, Time, Both };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(Constraint c) noexcept;

struct ModelTimeBound {
    double relaxed = 0.0;          // tau_V * (R_M/P_M) * (P_M - pi), clamped at 0
    std::optional<double> tight;   // tau_V * (1/(1+dn) - (R_M/P_M) * pi), clamped at 0
    bool headroom = false;         // P_M > pi
};

struct ValidatorTimeBound {
    std::optional<double> seconds;  // empty when there is no precision headroom
    bool headroom = false;
};

struct BoundsReport {
    double baseline_tp = 0.0;
    double augmented_tp = 0.0;
    double baseline_time = 0.0;
    double augmented_time = 0.0;
    double survivors = 0.0;

    double extra_ratio = 0.0;      // dn/n the report was evaluated at
    double min_extra_ratio = 0.0;
    std::optional<double> max_model_time_tight;
    double max_model_time_relaxed = 0.0;
    std::optional<double> min_validator_time;
    bool headroom = false;

    Verdict verdict = Verdict::NotConvenient;
    Constraint binding = Constraint::None;
};

double baseline_tp(double prevalence, double n, double validator_recall);
double baseline_time(double n, double validator_latency);
double ml_survivors(double prevalence, double n_total, double screener_recall, double screener_precision);
double augmented_time(double prevalence, double n_total, double screener_latency, double validator_latency,
                      double screener_recall, double screener_precision);
double augmented_tp(double prevalence, double n_total, double screener_recall, double validator_recall);

// 1/R_M - 1.
double min_extra_ratio(double screener_recall);

ModelTimeBound max_model_time(double validator_latency, double screener_recall, double screener_precision,
                              double prevalence, std::optional<double> extra_ratio = std::nullopt);

// The slowest validator for which a screener of latency tau_M breaks even.
ValidatorTimeBound min_validator_time(double screener_latency, double screener_recall, double screener_precision,
                                      double prevalence);

// Compare the two pipelines at dn/n = extra_ratio. Needs validator and screener latency.
BoundsReport evaluate(const PipelineConfig& config, double extra_ratio);

// -1, 0, +1 for a < b, a == b (within kTieTolerance relative), a > b.
int compare_relative(double a, double b, double tolerance = kTieTolerance) noexcept;

}  // namespace pipegate::bounds
