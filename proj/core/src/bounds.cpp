#include "pipegate/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pipegate/errors.hpp"

namespace pipegate::bounds {
namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

bool unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }
bool open_unit(double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; }
bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

void require_precision(double p) {
    require(std::isfinite(p) && p > 0.0 && p <= 1.0, "screener precision must lie in (0,1], got " + std::to_string(p));
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Convenient: return "convenient";
        case Verdict::NotConvenient: return "not-convenient";
        case Verdict::Boundary: return "boundary";
    }
    return "unknown";
}

std::string_view to_string(Constraint c) noexcept {
    switch (c) {
        case Constraint::None: return "none";
        case Constraint::Throughput: return "throughput";
        case Constraint::Time: return "time";
        case Constraint::Both: return "both";
    }
    return "unknown";
}

void PipelineConfig::validate() const {
    if (!open_unit(prevalence)) throw ValidationError("prevalence", "must lie in (0,1)");
    if (!std::isfinite(n) || n <= 0.0) throw ValidationError("n", "must be > 0");
    validator.validate();
    screener.validate();
    if (!validator.latency) throw ValidationError("validator.latency", "required");
    if (*validator.latency <= 0.0) throw ValidationError("validator.latency", "must be > 0");
    if (validator.recall <= 0.0) throw ValidationError("validator.recall", "must lie in (0,1]");
}

double baseline_tp(double prevalence, double n, double validator_recall) {
    require(open_unit(prevalence), "prevalence must lie in (0,1)");
    require(std::isfinite(n) && n > 0.0, "n must be > 0");
    require(unit(validator_recall), "validator recall must lie in [0,1]");
    return validator_recall * prevalence * n;
}

double baseline_time(double n, double validator_latency) {
    require(non_negative(n), "n must be >= 0");
    require(non_negative(validator_latency), "validator latency must be >= 0");
    return n * validator_latency;
}

double ml_survivors(double prevalence, double n_total, double screener_recall, double screener_precision) {
    require(unit(prevalence), "prevalence must lie in [0,1]");
    require(non_negative(n_total), "n_total must be >= 0");
    require(unit(screener_recall), "screener recall must lie in [0,1]");
    require_precision(screener_precision);
    return screener_recall * prevalence * n_total / screener_precision;
}

double augmented_time(double prevalence, double n_total, double screener_latency, double validator_latency,
                      double screener_recall, double screener_precision) {
    require(non_negative(screener_latency), "screener latency must be >= 0");
    require(non_negative(validator_latency), "validator latency must be >= 0");
    require(unit(prevalence), "prevalence must lie in [0,1]");
    require(non_negative(n_total), "n_total must be >= 0");
    require(unit(screener_recall), "screener recall must lie in [0,1]");
    require_precision(screener_precision);
    return (screener_latency + validator_latency * (screener_recall / screener_precision) * prevalence) * n_total;
}

double augmented_tp(double prevalence, double n_total, double screener_recall, double validator_recall) {
    require(unit(prevalence), "prevalence must lie in [0,1]");
    require(non_negative(n_total), "n_total must be >= 0");
    require(unit(screener_recall), "screener recall must lie in [0,1]");
    require(unit(validator_recall), "validator recall must lie in [0,1]");
    return validator_recall * screener_recall * prevalence * n_total;
}

double min_extra_ratio(double screener_recall) {
    require(std::isfinite(screener_recall) && screener_recall > 0.0 && screener_recall <= 1.0,
            "screener recall must lie in (0,1]; no extra volume compensates a screener that rejects everything");
    return 1.0 / screener_recall - 1.0;
}

ModelTimeBound max_model_time(double validator_latency, double screener_recall, double screener_precision,
                              double prevalence, std::optional<double> extra_ratio) {
    require(non_negative(validator_latency), "validator latency must be >= 0");
    require(std::isfinite(screener_recall) && screener_recall > 0.0 && screener_recall <= 1.0,
            "screener recall must lie in (0,1]");
    require_precision(screener_precision);
    require(open_unit(prevalence), "prevalence must lie in (0,1)");

    ModelTimeBound out;
    out.headroom = screener_precision > prevalence;
    const double pass_ratio = screener_recall / screener_precision;
    out.relaxed = std::max(0.0, validator_latency * pass_ratio * (screener_precision - prevalence));
    if (extra_ratio) {
        require(non_negative(*extra_ratio), "extra ratio must be >= 0");
        out.tight = std::max(0.0, validator_latency * (1.0 / (1.0 + *extra_ratio) - pass_ratio * prevalence));
    }
    return out;
}

ValidatorTimeBound min_validator_time(double screener_latency, double screener_recall, double screener_precision,
                                      double prevalence) {
    require(non_negative(screener_latency), "screener latency must be >= 0");
    require(std::isfinite(screener_recall) && screener_recall > 0.0 && screener_recall <= 1.0,
            "screener recall must lie in (0,1]");
    require_precision(screener_precision);
    require(open_unit(prevalence), "prevalence must lie in (0,1)");

    ValidatorTimeBound out;
    out.headroom = screener_precision > prevalence;
    if (!out.headroom) return out;
    out.seconds = screener_latency / ((screener_recall / screener_precision) * (screener_precision - prevalence));
    return out;
}

int compare_relative(double a, double b, double tolerance) noexcept {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (std::abs(a - b) <= tolerance * scale) return 0;
    return a < b ? -1 : 1;
}

BoundsReport evaluate(const PipelineConfig& config, double extra_ratio) {
    config.validate();
    require(non_negative(extra_ratio), "extra ratio must be >= 0");
    if (!config.screener.latency) throw LatencyUnknownError("screener latency unknown");

    const double pi = config.prevalence;
    const double tau_v = *config.validator.latency;
    const double tau_m = *config.screener.latency;
    const double r_v = config.validator.recall;
    const double r_m = config.screener.recall;
    const double p_m = config.screener.precision;
    const double n_total = config.n * (1.0 + extra_ratio);

    BoundsReport r;
    r.extra_ratio = extra_ratio;
    r.baseline_tp = baseline_tp(pi, config.n, r_v);
    r.baseline_time = baseline_time(config.n, tau_v);
    r.augmented_tp = augmented_tp(pi, n_total, r_m, r_v);
    r.augmented_time = augmented_time(pi, n_total, tau_m, tau_v, r_m, p_m);
    r.survivors = ml_survivors(pi, n_total, r_m, p_m);
    r.min_extra_ratio = min_extra_ratio(r_m);

    const auto model_bound = max_model_time(tau_v, r_m, p_m, pi, extra_ratio);
    r.max_model_time_relaxed = model_bound.relaxed;
    r.max_model_time_tight = model_bound.tight;
    r.headroom = model_bound.headroom;
    r.min_validator_time = min_validator_time(tau_m, r_m, p_m, pi).seconds;

    // +1 means the augmented pipeline is strictly better on that requirement.
    const int tp_cmp = compare_relative(r.augmented_tp, r.baseline_tp);
    const int time_cmp = compare_relative(r.baseline_time, r.augmented_time);

    if (tp_cmp < 0 || time_cmp < 0) {
        r.verdict = Verdict::NotConvenient;
        r.binding = (tp_cmp < 0 && time_cmp < 0) ? Constraint::Both
                    : tp_cmp < 0                 ? Constraint::Throughput
                                                 : Constraint::Time;
    } else if (tp_cmp == 0 && time_cmp == 0) {
        r.verdict = Verdict::Boundary;
        r.binding = Constraint::Both;
    } else {
        r.verdict = Verdict::Convenient;
        r.binding = tp_cmp == 0 ? Constraint::Throughput : time_cmp == 0 ? Constraint::Time : Constraint::None;
    }
    return r;
}

}  // namespace pipegate::bounds
