#pragma once
// One function per subcommand. Each returns a record and leaves exit-code
// policy to the dispatcher, except for the regression status.

#include <cstdint>
#include <optional>
#include <string>

#include "pipegate/catalog.hpp"
#include "pipegate/output.hpp"
#include "pipegate/simulate.hpp"

namespace pipegate::cli {

struct InvertOptions {
    std::optional<std::string> model;  // name or catalog file; all models when empty
    std::optional<double> pi;
};

struct BoundsOptions {
    std::string model;
    std::optional<double> pi;
    std::optional<double> tau_v;
    std::optional<double> tau_m;
    std::optional<double> delta_ratio;
    double validator_recall = 1.0;
    double n = 1e5;
    simulate::PrecisionMode precision_mode = simulate::PrecisionMode::AsPublished;
};

struct LimitsOptions {
    std::optional<double> pi;
    std::string benchmark = "builtin";  // "builtin" or a catalog file with a benchmark section
    simulate::PrecisionMode precision_mode = simulate::PrecisionMode::AsPublished;
};

struct SimulateOptions {
    std::optional<std::string> model;
    std::optional<double> screener_tpr;
    std::optional<double> screener_fpr;
    std::optional<double> screener_precision;
    std::optional<double> pi;
    std::uint64_t n = simulate::kDefaultPatches;
    std::optional<double> delta_ratio;
    std::optional<std::uint64_t> delta;
    double tau_v = 0.0;
    std::optional<double> tau_m;
    double validator_recall = 1.0;
    double validator_fpr = 0.0;
    std::uint32_t trials = simulate::kDefaultTrials;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    simulate::PrecisionMode precision_mode = simulate::PrecisionMode::AsPublished;
};

struct ReproduceOptions {
    bool simulation = true;
    std::uint64_t seed = 0;
};

OutputRecord cmd_invert(const catalog::Catalog& cat, const InvertOptions& opt);
OutputRecord cmd_bounds(const catalog::Catalog& cat, const BoundsOptions& opt);
OutputRecord cmd_limits(const catalog::Catalog& cat, const LimitsOptions& opt);
OutputRecord cmd_simulate(const catalog::Catalog& cat, const SimulateOptions& opt);
OutputRecord cmd_reproduce(const ReproduceOptions& opt);

}  // namespace pipegate::cli
