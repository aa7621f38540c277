#pragma once
// Published detector specs and validator timing benchmarks.
//
// File format (UTF-8 JSON, unknown keys rejected):
//   {
//     "models": [
//       {"name": "...", "source": "...", "precision": 0.97, "recall": 0.86,
//        "fpr": 0.002,                  // optional; Bayes-completed when absent
//        "latency_seconds": 1.5,        // optional; absent means unknown
//        "latency_kind": "lower_bound", // "reported" (default) | "lower_bound"
//        "prevalence": 0.06}
//     ],
//     "benchmark": {"q25": 9.17, "median": 27.04, "q75": 74.5, "mean": 337.83,
//                   "prevalence": 0.38}  // optional
//   }

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pipegate/metrics.hpp"

namespace pipegate::catalog {

// Allowed drift between a starred (Bayes-estimated) FPR and its recomputation.
inline constexpr double kBayesRoundTripTolerance = 0.005;

enum class FprProvenance { Reported, BayesEstimated };
enum class LatencyProvenance { ReportedWithPreprocessing, LowerBound, Unknown };

std::string_view to_string(FprProvenance p) noexcept;
std::string_view to_string(LatencyProvenance p) noexcept;

struct ModelRecord {
    std::string name;
    std::string source;
    metrics::ClassifierSpec spec;  // detector-side metrics; eval_prevalence always set
    FprProvenance fpr_provenance = FprProvenance::Reported;
    LatencyProvenance latency_provenance = LatencyProvenance::Unknown;

    // Detector-to-screener inversion, evaluated on the record as published.
    double screener_precision() const;
    metrics::RateTriple screener_rates() const;

    // Throws LatencyUnknownError when the record has no latency.
    double latency() const;

    friend bool operator==(const ModelRecord&, const ModelRecord&) = default;
};

struct BenchmarkTimes {
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double mean = 0.0;

    void validate() const;
    friend bool operator==(const BenchmarkTimes&, const BenchmarkTimes&) = default;
};

struct Benchmark {
    BenchmarkTimes times;
    double prevalence = 0.38;  // good-patch prevalence of the repair generator

    friend bool operator==(const Benchmark&, const Benchmark&) = default;
};

struct CatalogWarning {
    std::string model;
    std::string code;  // e.g. "inconsistent-metrics"
    std::string message;

    friend bool operator==(const CatalogWarning&, const CatalogWarning&) = default;
};

class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<ModelRecord> models, std::optional<Benchmark> benchmark = std::nullopt);

    const std::vector<ModelRecord>& models() const noexcept { return models_; }
    const std::optional<Benchmark>& benchmark() const noexcept { return benchmark_; }
    const std::vector<CatalogWarning>& warnings() const noexcept { return warnings_; }

    // Case-insensitive; spaces, hyphens and underscores are ignored.
    const ModelRecord* find(std::string_view name) const noexcept;
    // Throws UnknownEntityError.
    const ModelRecord& lookup(std::string_view name) const;

    bool empty() const noexcept { return models_.empty(); }
    std::size_t size() const noexcept { return models_.size(); }

    friend bool operator==(const Catalog& a, const Catalog& b) {
        return a.models_ == b.models_ && a.benchmark_ == b.benchmark_;
    }

private:
    std::vector<ModelRecord> models_;
    std::optional<Benchmark> benchmark_;
    std::vector<CatalogWarning> warnings_;
};

// Name normalisation used for lookup and uniqueness.
std::string normalize_name(std::string_view name);

// The seven published detector rows.
Catalog builtin_catalog();

// Vul4J test-suite time quartiles and the APR4Vul good-patch prevalence (30/78 rounded).
Benchmark builtin_benchmark();

// Throws ParseError, ValidationError or DuplicateNameError.
Catalog parse_catalog(std::string_view text, std::string_view origin = "<memory>");
Catalog load_catalog(const std::filesystem::path& path);

// Serialises to the file format. Bayes-estimated FPRs are written as absent so
// that reparsing re-derives them identically.
std::string serialize_catalog(const Catalog& catalog);

}  // namespace pipegate::catalog
