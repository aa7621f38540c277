#include "pipegate/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pipegate/errors.hpp"

namespace pipegate::simulate {
namespace {

enum Stream : std::uint32_t { kBaselineStream = 0, kAugmentedStream = 1 };

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t trial, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

// Uniform on [0,1) from the top 53 bits.
inline double uniform(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

struct BaselineTrial {
    double tp = 0.0;
    double fp = 0.0;
    double time = 0.0;
};

struct AugmentedTrial {
    double tp = 0.0;
    double fp = 0.0;
    double time = 0.0;
    double survivors = 0.0;
    double good_survivors = 0.0;
};

BaselineTrial baseline_trial(const SimConfig& cfg, std::uint64_t trial) {
    auto eng = make_engine(cfg.seed, trial, kBaselineStream);
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    for (std::uint64_t i = 0; i < cfg.n; ++i) {
        const bool good = uniform(eng) < cfg.prevalence;
        const double u_valid = uniform(eng);
        if (good) {
            tp += u_valid < cfg.validator.tpr;
        } else {
            fp += u_valid < cfg.validator.fpr;
        }
    }
    return {static_cast<double>(tp), static_cast<double>(fp),
            static_cast<double>(cfg.n) * cfg.validator_latency};
}

AugmentedTrial augmented_trial(const SimConfig& cfg, std::uint64_t trial) {
    auto eng = make_engine(cfg.seed, trial, kAugmentedStream);
    const std::uint64_t total = cfg.n + cfg.extra;
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t survivors = 0;
    std::uint64_t good_survivors = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        const bool good = uniform(eng) < cfg.prevalence;
        const double u_screen = uniform(eng);
        const double u_valid = uniform(eng);
        if (good) {
            if (u_screen < cfg.screener.tpr) {
                ++survivors;
                ++good_survivors;
                tp += u_valid < cfg.validator.tpr;
            }
        } else if (u_screen < cfg.screener.fpr) {
            ++survivors;
            fp += u_valid < cfg.validator.fpr;
        }
    }
    AugmentedTrial out;
    out.tp = static_cast<double>(tp);
    out.fp = static_cast<double>(fp);
    out.survivors = static_cast<double>(survivors);
    out.good_survivors = static_cast<double>(good_survivors);
    out.time = cfg.screener_latency * static_cast<double>(total) + cfg.validator_latency * out.survivors;
    return out;
}

unsigned resolve_workers(unsigned workers, std::uint32_t trials) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return std::max(1u, std::min<unsigned>(workers, trials));
}

// Each trial writes its own slot; the result is independent of the worker count.
template <typename Result, typename Fn>
std::vector<Result> run_trials(std::uint32_t trials, unsigned workers, Fn fn) {
    std::vector<Result> results(trials);
    workers = resolve_workers(workers, trials);
    if (workers == 1) {
        for (std::uint32_t t = 0; t < trials; ++t) results[t] = fn(t);
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint32_t t = w; t < trials; t += workers) results[t] = fn(t);
        });
    }
    return results;
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

Estimate estimate(std::vector<double> xs) {
    Estimate e;
    if (xs.empty()) return e;
    const double count = static_cast<double>(xs.size());
    e.mean = pairwise_sum(xs) / count;
    if (xs.size() < 2) return e;
    for (double& x : xs) x = (x - e.mean) * (x - e.mean);
    const double variance = pairwise_sum(xs) / (count - 1.0);
    e.std_error = std::sqrt(variance / count);
    return e;
}

template <typename Trial, typename Field>
Estimate collect(const std::vector<Trial>& trials, Field field) {
    std::vector<double> xs;
    xs.reserve(trials.size());
    for (const auto& t : trials) xs.push_back(field(t));
    return estimate(std::move(xs));
}

// +1 clearly positive, -1 clearly negative, 0 unresolved.
int classify(double margin, double se, double scale, double z) {
    const double threshold = z * se + bounds::kTieTolerance * scale;
    if (margin > threshold) return 1;
    if (margin < -threshold) return -1;
    return 0;
}

}  // namespace

std::string_view to_string(PrecisionMode m) noexcept {
    return m == PrecisionMode::AsPublished ? "as-published" : "prevalence-consistent";
}

std::optional<PrecisionMode> parse_precision_mode(std::string_view text) noexcept {
    if (text == "as-published") return PrecisionMode::AsPublished;
    if (text == "prevalence-consistent") return PrecisionMode::PrevalenceConsistent;
    return std::nullopt;
}

std::string_view to_string(EmpiricalVerdict v) noexcept {
    switch (v) {
        case EmpiricalVerdict::Convenient: return "convenient";
        case EmpiricalVerdict::NotConvenient: return "not-convenient";
        case EmpiricalVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

void SimConfig::validate() const {
    if (!std::isfinite(prevalence) || prevalence <= 0.0 || prevalence >= 1.0) {
        throw ValidationError("prevalence", "must lie in (0,1)");
    }
    if (n == 0) throw ValidationError("n", "must be > 0");
    try {
        screener.validate();
    } catch (const ValidationError& e) {
        throw ValidationError("screener." + e.field(), e.detail());
    }
    try {
        validator.validate();
    } catch (const ValidationError& e) {
        throw ValidationError("validator." + e.field(), e.detail());
    }
    if (!std::isfinite(screener_latency) || screener_latency < 0.0) {
        throw ValidationError("screener_latency", "must be finite and >= 0");
    }
    if (!std::isfinite(validator_latency) || validator_latency < 0.0) {
        throw ValidationError("validator_latency", "must be finite and >= 0");
    }
    if (trials < 1) throw ValidationError("trials", "must be >= 1");
    if (published_precision && (!std::isfinite(*published_precision) || *published_precision <= 0.0 ||
                                *published_precision > 1.0)) {
        throw ValidationError("published_precision", "must lie in (0,1]");
    }
}

BaselineStats run_baseline(const SimConfig& cfg, unsigned workers) {
    cfg.validate();
    const auto trials =
        run_trials<BaselineTrial>(cfg.trials, workers, [&](std::uint32_t t) { return baseline_trial(cfg, t); });
    return {
        .tp = collect(trials, [](const BaselineTrial& t) { return t.tp; }),
        .fp = collect(trials, [](const BaselineTrial& t) { return t.fp; }),
        .time = collect(trials, [](const BaselineTrial& t) { return t.time; }),
    };
}

AugmentedStats run_augmented(const SimConfig& cfg, unsigned workers) {
    cfg.validate();
    const auto trials =
        run_trials<AugmentedTrial>(cfg.trials, workers, [&](std::uint32_t t) { return augmented_trial(cfg, t); });

    std::vector<double> precisions;
    precisions.reserve(trials.size());
    for (const auto& t : trials) {
        if (t.survivors > 0.0) precisions.push_back(t.good_survivors / t.survivors);
    }
    return {
        .tp = collect(trials, [](const AugmentedTrial& t) { return t.tp; }),
        .fp = collect(trials, [](const AugmentedTrial& t) { return t.fp; }),
        .time = collect(trials, [](const AugmentedTrial& t) { return t.time; }),
        .survivors = collect(trials, [](const AugmentedTrial& t) { return t.survivors; }),
        .screener_precision = estimate(std::move(precisions)),
    };
}

EmpiricalVerdict empirical_verdict(const BaselineStats& base, const AugmentedStats& aug, double z) {
    const double tp_se = std::hypot(base.tp.std_error, aug.tp.std_error);
    const double time_se = std::hypot(base.time.std_error, aug.time.std_error);
    const int tp = classify(aug.tp.mean - base.tp.mean, tp_se, std::max(aug.tp.mean, base.tp.mean), z);
    const int time = classify(base.time.mean - aug.time.mean, time_se, std::max(aug.time.mean, base.time.mean), z);
    if (tp < 0 || time < 0) return EmpiricalVerdict::NotConvenient;
    if (tp > 0 && time > 0) return EmpiricalVerdict::Convenient;
    return EmpiricalVerdict::Inconclusive;
}

std::optional<EmpiricalVerdict> resolvable_verdict(const bounds::BoundsReport& analytic, const BaselineStats& base,
                                                   const AugmentedStats& aug, double z) {
    const double tp_se = std::hypot(base.tp.std_error, aug.tp.std_error);
    const double time_se = std::hypot(base.time.std_error, aug.time.std_error);
    const int tp = classify(analytic.augmented_tp - analytic.baseline_tp, tp_se,
                            std::max(analytic.augmented_tp, analytic.baseline_tp), z);
    const int time = classify(analytic.baseline_time - analytic.augmented_time, time_se,
                              std::max(analytic.augmented_time, analytic.baseline_time), z);
    if (tp < 0 || time < 0) return EmpiricalVerdict::NotConvenient;
    if (tp > 0 && time > 0) return EmpiricalVerdict::Convenient;
    return std::nullopt;
}

SimOutcome compare(const SimConfig& cfg, unsigned workers) {
    SimOutcome out;
    out.baseline = run_baseline(cfg, workers);
    out.augmented = run_augmented(cfg, workers);
    out.verdict = empirical_verdict(out.baseline, out.augmented);
    out.trials = cfg.trials;
    return out;
}

PrecisionProbe survivor_precision_probe(const SimConfig& cfg, unsigned workers) {
    const auto aug = run_augmented(cfg, workers);
    return {
        .empirical = aug.screener_precision,
        .prevalence_consistent = cfg.screener.precision_at(cfg.prevalence),
        .as_published = cfg.published_precision,
    };
}

AnalyticPrediction analytic_prediction(const SimConfig& cfg) {
    cfg.validate();
    AnalyticPrediction out;
    if (cfg.precision_mode == PrecisionMode::AsPublished) {
        if (!cfg.published_precision) {
            throw ValidationError("published_precision", "required in as-published precision mode");
        }
        out.screener_precision = *cfg.published_precision;
    } else {
        out.screener_precision = cfg.screener.precision_at(cfg.prevalence);
    }

    bounds::PipelineConfig pipeline;
    pipeline.prevalence = cfg.prevalence;
    pipeline.n = static_cast<double>(cfg.n);
    pipeline.validator.recall = cfg.validator.tpr;
    pipeline.validator.precision = 1.0;
    pipeline.validator.latency = cfg.validator_latency;
    pipeline.screener.recall = cfg.screener.tpr;
    pipeline.screener.precision = out.screener_precision;
    pipeline.screener.latency = cfg.screener_latency;

    out.report = bounds::evaluate(pipeline, static_cast<double>(cfg.extra) / static_cast<double>(cfg.n));
    return out;
}

bool within_standard_errors(const Estimate& e, double expected, double z) noexcept {
    const double floor = bounds::kTieTolerance * std::max(std::abs(expected), std::abs(e.mean));
    return std::abs(e.mean - expected) <= z * e.std_error + floor;
}

}  // namespace pipegate::simulate
