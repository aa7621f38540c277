#include "pipegate/cli.hpp"

#include <cstdlib>
#include <optional>

#include <CLI11.hpp>

#include "pipegate/commands.hpp"
#include "pipegate/errors.hpp"

namespace pipegate::cli {
namespace {

const std::vector<std::string> kModes{"as-published", "prevalence-consistent"};

simulate::PrecisionMode mode_from(const std::string& text) {
    const auto mode = simulate::parse_precision_mode(text);
    if (!mode) throw ValidationError("precision-mode", "unknown mode " + text);
    return *mode;
}

catalog::Catalog load(const std::optional<std::string>& flag) {
    if (flag) return catalog::load_catalog(*flag);
    if (const char* env = std::getenv("PIPEGATE_CATALOG"); env != nullptr && *env != '\0') {
        return catalog::load_catalog(env);
    }
    return catalog::builtin_catalog();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plan and check ML pre-screeners in front of a patch validator", "pipegate"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> catalog_path;
    std::string format_text = "table";
    app.add_option("--catalog", catalog_path, "Catalog JSON file (default: $PIPEGATE_CATALOG or builtin)");
    app.add_option("--format", format_text, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));

    InvertOptions inv;
    auto* invert = app.add_subcommand("invert", "Invert detector metrics into screener metrics");
    invert->add_option("--model", inv.model, "Model name or catalog file (default: all models)");
    invert->add_option("--pi", inv.pi, "Good-patch prevalence for the prevalence-consistent precision");

    BoundsOptions bnd;
    std::string bounds_mode = "as-published";
    auto* bounds = app.add_subcommand("bounds", "Convenience bounds for one model");
    bounds->add_option("--model", bnd.model, "Model name or catalog file")->required();
    bounds->add_option("--pi", bnd.pi, "Good-patch prevalence");
    bounds->add_option("--tau-v", bnd.tau_v, "Validator seconds per patch");
    bounds->add_option("--tau-m", bnd.tau_m, "Screener seconds per patch");
    bounds->add_option("--delta-ratio", bnd.delta_ratio, "Extra candidates as a fraction of n (default: minimum)");
    bounds->add_option("--validator-recall", bnd.validator_recall, "Validator recall")->capture_default_str();
    bounds->add_option("--n", bnd.n, "Baseline candidates for absolute counts")->capture_default_str();
    bounds->add_option("--precision-mode", bounds_mode, "Screener precision route")->check(CLI::IsMember(kModes))->capture_default_str();

    LimitsOptions lim;
    std::string limits_mode = "as-published";
    auto* limits = app.add_subcommand("limits", "Maximum screener time per model and benchmark statistic");
    limits->add_option("--pi", lim.pi, "Good-patch prevalence (default: benchmark prevalence)");
    limits->add_option("--benchmark", lim.benchmark, "builtin or a catalog file with a benchmark section")->capture_default_str();
    limits->add_option("--precision-mode", limits_mode, "Screener precision route")->check(CLI::IsMember(kModes))->capture_default_str();

    SimulateOptions sim;
    std::string sim_mode = "as-published";
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the closed forms");
    simulate->add_option("--model", sim.model, "Model name or catalog file");
    simulate->add_option("--screener-tpr", sim.screener_tpr, "Screener true positive rate");
    simulate->add_option("--screener-fpr", sim.screener_fpr, "Screener false positive rate");
    simulate->add_option("--screener-precision", sim.screener_precision, "Published screener precision");
    simulate->add_option("--pi", sim.pi, "Good-patch prevalence");
    simulate->add_option("--n", sim.n, "Baseline candidates")->capture_default_str();
    auto* ratio = simulate->add_option("--delta-ratio", sim.delta_ratio, "Extra candidates as a fraction of n");
    simulate->add_option("--delta", sim.delta, "Extra candidates")->excludes(ratio);
    simulate->add_option("--tau-v", sim.tau_v, "Validator seconds per patch")->required();
    simulate->add_option("--tau-m", sim.tau_m, "Screener seconds per patch (default: catalog latency)");
    simulate->add_option("--validator-recall", sim.validator_recall, "Validator recall")->capture_default_str();
    simulate->add_option("--validator-fpr", sim.validator_fpr, "Validator false positive rate")->capture_default_str();
    simulate->add_option("--trials", sim.trials, "Independent trials")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    simulate->add_option("--workers", sim.workers, "Worker threads, 0 for hardware concurrency")->capture_default_str();
    simulate->add_option("--precision-mode", sim_mode, "Screener precision route")->check(CLI::IsMember(kModes))->capture_default_str();

    ReproduceOptions rep;
    bool no_simulation = false;
    auto* reproduce = app.add_subcommand("reproduce", "Recompute the published reference values");
    reproduce->add_flag("--no-simulation", no_simulation, "Skip the simulation oracle section");
    reproduce->add_option("--seed", rep.seed, "Seed for the simulation oracle")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        const auto format = *parse_format(format_text);
        OutputRecord record;
        if (invert->parsed()) {
            record = cmd_invert(load(catalog_path), inv);
        } else if (bounds->parsed()) {
            bnd.precision_mode = mode_from(bounds_mode);
            record = cmd_bounds(load(catalog_path), bnd);
        } else if (limits->parsed()) {
            lim.precision_mode = mode_from(limits_mode);
            record = cmd_limits(load(catalog_path), lim);
        } else if (simulate->parsed()) {
            sim.precision_mode = mode_from(sim_mode);
            record = cmd_simulate(load(catalog_path), sim);
        } else {
            rep.simulation = !no_simulation;
            record = cmd_reproduce(rep);
        }
        out << render(record, format);
        return record.status == "ok" ? kExitOk : kExitRegression;
    } catch (const UnknownEntityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUnknownEntity;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
}

}  // namespace pipegate::cli
