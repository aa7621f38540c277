#include "pipegate/commands.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "pipegate/bounds.hpp"
#include "pipegate/errors.hpp"
#include "pipegate/metrics.hpp"

namespace pipegate::cli {
namespace {

using catalog::Catalog;
using catalog::FprProvenance;
using catalog::LatencyProvenance;
using catalog::ModelRecord;
using simulate::PrecisionMode;

constexpr double kOracleSeSpan = 3.0;

struct Resolved {
    std::vector<ModelRecord> models;
    std::vector<std::string> warnings;
    std::string origin;
};

bool looks_like_file(const std::string& s) {
    return s.ends_with(".json") || std::filesystem::is_regular_file(s);
}

std::vector<std::string> warnings_for(const Catalog& cat, const std::vector<ModelRecord>& models) {
    std::vector<std::string> out;
    for (const auto& w : cat.warnings())
        for (const auto& m : models)
            if (m.name == w.model) out.push_back(w.model + ": " + w.code + ": " + w.message);
    return out;
}

Resolved resolve_models(const Catalog& cat, const std::optional<std::string>& model) {
    Resolved r;
    if (!model) {
        r.models = cat.models();
        r.origin = "catalog";
    } else if (looks_like_file(*model)) {
        const auto file = catalog::load_catalog(*model);
        if (file.empty()) throw ValidationError("model", "file " + *model + " contains no models");
        r.models = file.models();
        r.warnings = warnings_for(file, r.models);
        r.origin = "file";
        return r;
    } else {
        r.models = {cat.lookup(*model)};
        r.origin = "catalog";
    }
    r.warnings = warnings_for(cat, r.models);
    return r;
}

const ModelRecord& single(const Resolved& r) {
    if (r.models.size() != 1) throw ValidationError("model", "file must contain exactly one model");
    return r.models.front();
}

std::string fpr_tag(const ModelRecord& m) {
    return std::string(catalog::to_string(m.fpr_provenance));
}

std::string derived_tag(const ModelRecord& m) {
    return m.fpr_provenance == FprProvenance::BayesEstimated ? "derived:bayes-estimated" : "derived";
}

std::string latency_tag(const ModelRecord& m) {
    return m.latency_provenance == LatencyProvenance::LowerBound ? "optimistic"
                                                                  : std::string(catalog::to_string(m.latency_provenance));
}

double default_prevalence(const Catalog& cat) {
    return cat.benchmark() ? cat.benchmark()->prevalence : catalog::builtin_benchmark().prevalence;
}

double resolve_pi(const std::optional<double>& pi, double fallback, std::vector<Field>& inputs) {
    const double value = pi.value_or(fallback);
    if (!std::isfinite(value) || value <= 0.0 || value >= 1.0) throw ValidationError("pi", "must lie in (0,1)");
    inputs.push_back({"pi", Value::number(value, Unit::Probability, pi ? "user" : "default")});
    return value;
}

double screener_precision(const ModelRecord& m, double pi, PrecisionMode mode) {
    if (mode == PrecisionMode::AsPublished) return m.screener_precision();
    const auto rates = m.screener_rates();
    return metrics::precision_at_prevalence(rates.tpr, rates.fpr, pi);
}

void require_headroom(const std::string& name, double p_m, double pi) {
    if (p_m <= pi) {
        std::ostringstream msg;
        msg << "no precision headroom for " << name << ": screener precision " << p_m << " <= prevalence " << pi;
        throw DomainError(msg.str());
    }
}

Value prob(double v, std::string provenance) { return Value::number(v, Unit::Probability, std::move(provenance)); }
Value secs(double v, std::string provenance) { return Value::number(v, Unit::Seconds, std::move(provenance)); }
Value pct(double v, std::string provenance) { return Value::number(v, Unit::Percent, std::move(provenance)); }
Value count(double v, std::string provenance) { return Value::number(v, Unit::Count, std::move(provenance)); }

std::string mode_name(PrecisionMode m) { return std::string(simulate::to_string(m)); }

// Published reference values for the reproduction.
struct StarredFpr {
    const char* model;
    double published;
};
constexpr std::array<StarredFpr, 5> kStarredFprs{{
    {"LineVul", 0.002},
    {"LineVD", 0.09},
    {"IVDetect on Reveal", 0.08},
    {"VulDeePecker on Reveal", 0.11},
    {"CodeJIT RGCN", 0.20},
}};
constexpr double kStarredTolerance = 0.005;

struct FixedModel {
    const char* model;
    double min_validator_time;  // seconds
    double min_extra_ratio;
    double extra_tolerance;     // absolute
};
constexpr double kFixedScreenerLatency = 156.0;
constexpr double kFixedPrevalence = 0.38;
constexpr double kFixedTimeTolerance = 0.03;
constexpr std::array<FixedModel, 2> kFixedModels{{
    {"VulDeePecker", 4.56 * 60.0, 0.0526, 0.0005},
    {"VulDeePecker on Reveal", 5.07 * 60.0, 0.121, 0.01},
}};

struct LimitsRow {
    const char* model;
    std::array<double, 4> published;  // q25, median, q75, mean
};
constexpr std::array<LimitsRow, 7> kPublishedLimits{{
    {"VulDeePecker", {5.23, 15.6, 42.5, 193.0}},
    {"VulDeePecker on Reveal", {4.70, 14.0, 38.2, 173.0}},
    {"IVDetect on Reveal", {4.95, 14.8, 40.2, 182.0}},
    {"LineVul", {5.67, 16.9, 46.1, 209.0}},
    {"LineVD", {4.85, 14.5, 39.4, 179.0}},
    {"CodeJIT FastRGCN", {3.67, 11.0, 29.8, 135.0}},
    {"CodeJIT RGCN", {3.87, 11.6, 31.5, 143.0}},
}};
constexpr double kLimitsTolerance = 0.05;
constexpr double kLimitsToleranceCodeJit = 0.10;
constexpr std::array<const char*, 4> kStatNames{"q25", "median", "q75", "mean"};

std::array<double, 4> stat_values(const catalog::BenchmarkTimes& t) { return {t.q25, t.median, t.q75, t.mean}; }

Row check_row(std::string label, double published, double computed, double tolerance, bool relative, Unit unit,
              bool& all_pass) {
    const double error = relative ? (computed - published) / published : computed - published;
    const bool pass = std::abs(error) <= tolerance;
    all_pass = all_pass && pass;
    const Unit error_unit = relative ? Unit::Percent : unit;
    return {std::move(label),
            {{"published", Value::number(published, unit, "published")},
             {"computed", Value::number(computed, unit, "derived")},
             {"error", Value::number(error, error_unit, "derived")},
             {"tolerance", Value::number(tolerance, error_unit, "documented")},
             {"tolerance_kind", Value::text(relative ? "relative" : "absolute")},
             {"pass", Value::flag(pass)}}};
}

}  // namespace

OutputRecord cmd_invert(const Catalog& cat, const InvertOptions& opt) {
    OutputRecord rec;
    rec.command = "invert";
    const auto resolved = resolve_models(cat, opt.model);
    rec.inputs.push_back({"model", Value::text(opt.model.value_or("all"), resolved.origin)});
    const double pi = resolve_pi(opt.pi, default_prevalence(cat), rec.inputs);

    Section s{"inversion", {}};
    for (const auto& m : resolved.models) {
        const auto rates = m.screener_rates();
        const auto eval_pi = *m.spec.eval_prevalence;
        const auto tag = derived_tag(m);
        s.rows.push_back(
            {m.name,
             {{"precision", prob(m.spec.precision, "reported")},
              {"recall", prob(m.spec.recall, "reported")},
              {"fpr", prob(*m.spec.fpr, fpr_tag(m))},
              {"eval_prevalence", prob(eval_pi, "reported")},
              {"screener_precision", prob(m.screener_precision(), tag)},
              {"screener_recall", prob(rates.tpr, tag)},
              {"screener_fpr", prob(rates.fpr, "derived")},
              {"screener_precision_eval", prob(metrics::precision_at_prevalence(rates.tpr, rates.fpr, 1.0 - eval_pi), tag)},
              {"screener_precision_at_pi", prob(metrics::precision_at_prevalence(rates.tpr, rates.fpr, pi), tag)}}});
    }
    rec.sections.push_back(std::move(s));
    rec.warnings = resolved.warnings;
    return rec;
}

OutputRecord cmd_bounds(const Catalog& cat, const BoundsOptions& opt) {
    OutputRecord rec;
    rec.command = "bounds";
    const auto resolved = resolve_models(cat, opt.model);
    const auto& m = single(resolved);
    rec.inputs.push_back({"model", Value::text(m.name, resolved.origin)});
    const double pi = resolve_pi(opt.pi, default_prevalence(cat), rec.inputs);
    if (!opt.tau_v && !opt.tau_m) throw ValidationError("tau", "at least one of --tau-v or --tau-m is required");
    if (opt.tau_v && !(*opt.tau_v > 0.0)) throw ValidationError("tau-v", "must be > 0");
    if (opt.tau_m && !(*opt.tau_m >= 0.0)) throw ValidationError("tau-m", "must be >= 0");
    if (opt.delta_ratio && !(*opt.delta_ratio >= 0.0)) throw ValidationError("delta-ratio", "must be >= 0");
    rec.inputs.push_back({"precision_mode", Value::text(mode_name(opt.precision_mode), "user")});
    if (opt.tau_v) rec.inputs.push_back({"tau_v", secs(*opt.tau_v, "user")});
    if (opt.tau_m) rec.inputs.push_back({"tau_m", secs(*opt.tau_m, "user")});

    const auto rates = m.screener_rates();
    const double p_m = screener_precision(m, pi, opt.precision_mode);
    require_headroom(m.name, p_m, pi);
    const auto tag = derived_tag(m);
    const double min_extra = bounds::min_extra_ratio(rates.tpr);
    const double extra = opt.delta_ratio.value_or(min_extra);

    Row row{m.name,
            {{"screener_precision", prob(p_m, tag)},
             {"screener_recall", prob(rates.tpr, tag)},
             {"min_extra_ratio", pct(min_extra, tag)}}};
    if (opt.tau_m) {
        const auto v = bounds::min_validator_time(*opt.tau_m, rates.tpr, p_m, pi);
        row.fields.push_back({"min_validator_time", secs(*v.seconds, tag)});
    }
    if (opt.tau_v) {
        const auto b = bounds::max_model_time(*opt.tau_v, rates.tpr, p_m, pi, extra);
        row.fields.push_back({"max_model_time_relaxed", secs(b.relaxed, tag)});
        row.fields.push_back({"max_model_time_tight", secs(*b.tight, tag)});
    }

    std::optional<std::pair<double, std::string>> tau_m;
    if (opt.tau_m) tau_m = {*opt.tau_m, "user"};
    else if (opt.tau_v && m.spec.latency) tau_m = {*m.spec.latency, latency_tag(m)};

    if (opt.tau_v && tau_m) {
        bounds::PipelineConfig config;
        config.prevalence = pi;
        config.n = opt.n;
        config.validator.precision = 1.0;
        config.validator.recall = opt.validator_recall;
        config.validator.latency = *opt.tau_v;
        config.screener.precision = p_m;
        config.screener.recall = rates.tpr;
        config.screener.latency = tau_m->first;
        const auto report = bounds::evaluate(config, extra);
        const std::string verdict_tag = tau_m->second == "optimistic" ? "optimistic" : "derived";
        row.fields.push_back({"tau_m", secs(tau_m->first, tau_m->second)});
        row.fields.push_back({"extra_ratio", pct(extra, opt.delta_ratio ? "user" : "default")});
        row.fields.push_back({"baseline_tp", count(report.baseline_tp, "derived")});
        row.fields.push_back({"augmented_tp", count(report.augmented_tp, tag)});
        row.fields.push_back({"baseline_time", secs(report.baseline_time, "derived")});
        row.fields.push_back({"augmented_time", secs(report.augmented_time, tag)});
        row.fields.push_back({"verdict", Value::text(std::string(bounds::to_string(report.verdict)), verdict_tag)});
        row.fields.push_back({"binding", Value::text(std::string(bounds::to_string(report.binding)), verdict_tag)});
        if (verdict_tag == "optimistic") {
            rec.warnings.push_back(m.name + ": verdict uses the catalog latency, which is a lower bound; it is optimistic");
        }
    }
    rec.sections.push_back({"bounds", {std::move(row)}});
    rec.warnings.insert(rec.warnings.begin(), resolved.warnings.begin(), resolved.warnings.end());
    return rec;
}

OutputRecord cmd_limits(const Catalog& cat, const LimitsOptions& opt) {
    OutputRecord rec;
    rec.command = "limits";
    catalog::Benchmark bench = catalog::builtin_benchmark();
    std::string bench_origin = "builtin";
    if (opt.benchmark != "builtin") {
        const auto file = catalog::load_catalog(opt.benchmark);
        if (!file.benchmark()) throw ValidationError("benchmark", opt.benchmark + " has no benchmark section");
        bench = *file.benchmark();
        bench_origin = "file";
    }
    bench.times.validate();
    rec.inputs.push_back({"benchmark", Value::text(opt.benchmark, bench_origin)});
    const double pi = resolve_pi(opt.pi, bench.prevalence, rec.inputs);
    rec.inputs.push_back({"precision_mode", Value::text(mode_name(opt.precision_mode), "user")});
    const auto stats = stat_values(bench.times);
    for (std::size_t i = 0; i < stats.size(); ++i) rec.inputs.push_back({std::string("tau_v_") + kStatNames[i], secs(stats[i], "reported")});

    Section s{"max_model_time", {}};
    for (const auto& m : cat.models()) {
        const auto rates = m.screener_rates();
        const double p_m = screener_precision(m, pi, opt.precision_mode);
        const auto tag = derived_tag(m);
        Row row{m.name, {}};
        bool headroom = false;
        for (std::size_t i = 0; i < stats.size(); ++i) {
            const auto b = bounds::max_model_time(stats[i], rates.tpr, p_m, pi);
            headroom = b.headroom;
            row.fields.push_back({kStatNames[i], secs(b.relaxed, tag)});
        }
        row.fields.push_back({"headroom", Value::flag(headroom, tag)});
        if (!headroom) rec.warnings.push_back(m.name + ": screener precision does not exceed prevalence; no time budget");
        s.rows.push_back(std::move(row));
    }
    rec.sections.push_back(std::move(s));
    const auto w = warnings_for(cat, cat.models());
    rec.warnings.insert(rec.warnings.begin(), w.begin(), w.end());
    return rec;
}

OutputRecord cmd_simulate(const Catalog& cat, const SimulateOptions& opt) {
    OutputRecord rec;
    rec.command = "simulate";
    simulate::SimConfig cfg;
    std::string rate_tag = "user";
    std::string precision_tag = "user";
    std::optional<ModelRecord> model;

    if (opt.model) {
        if (opt.screener_tpr || opt.screener_fpr || opt.screener_precision) {
            throw ValidationError("model", "--model cannot be combined with explicit screener rates");
        }
        const auto resolved = resolve_models(cat, opt.model);
        model = single(resolved);
        rec.inputs.push_back({"model", Value::text(model->name, resolved.origin)});
        cfg.screener = model->screener_rates();
        cfg.published_precision = model->screener_precision();
        rate_tag = derived_tag(*model);
        precision_tag = rate_tag;
        rec.warnings = resolved.warnings;
    } else {
        if (!opt.screener_tpr || !opt.screener_fpr) {
            throw ValidationError("screener", "either --model or both --screener-tpr and --screener-fpr are required");
        }
        cfg.screener = {*opt.screener_tpr, *opt.screener_fpr};
        cfg.published_precision = opt.screener_precision;
    }

    cfg.prevalence = resolve_pi(opt.pi, default_prevalence(cat), rec.inputs);
    if (opt.n == 0) throw ValidationError("n", "must be > 0");
    cfg.n = opt.n;
    if (opt.delta && opt.delta_ratio) throw ValidationError("delta", "--delta and --delta-ratio are exclusive");
    if (opt.delta_ratio && !(*opt.delta_ratio >= 0.0)) throw ValidationError("delta-ratio", "must be >= 0");
    cfg.extra = opt.delta ? *opt.delta
                          : static_cast<std::uint64_t>(std::llround(opt.delta_ratio.value_or(0.0) * static_cast<double>(opt.n)));
    if (!(opt.tau_v > 0.0)) throw ValidationError("tau-v", "must be > 0");
    cfg.validator_latency = opt.tau_v;

    std::string tau_m_tag = "user";
    if (opt.tau_m) {
        cfg.screener_latency = *opt.tau_m;
    } else if (model) {
        cfg.screener_latency = model->latency();
        tau_m_tag = latency_tag(*model);
    } else {
        throw ValidationError("tau-m", "required when no catalog model supplies a latency");
    }
    cfg.validator = {opt.validator_recall, opt.validator_fpr};
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.precision_mode = opt.precision_mode;
    cfg.validate();

    rec.inputs.push_back({"n", count(static_cast<double>(cfg.n), "user")});
    rec.inputs.push_back({"extra", count(static_cast<double>(cfg.extra), opt.delta || opt.delta_ratio ? "user" : "default")});
    rec.inputs.push_back({"screener_tpr", prob(cfg.screener.tpr, rate_tag)});
    rec.inputs.push_back({"screener_fpr", prob(cfg.screener.fpr, model ? "derived" : "user")});
    rec.inputs.push_back({"tau_v", secs(cfg.validator_latency, "user")});
    rec.inputs.push_back({"tau_m", secs(cfg.screener_latency, tau_m_tag)});
    rec.inputs.push_back({"validator_recall", prob(cfg.validator.tpr, "user")});
    rec.inputs.push_back({"validator_fpr", prob(cfg.validator.fpr, "user")});
    rec.inputs.push_back({"trials", count(cfg.trials, "user")});
    rec.inputs.push_back({"seed", Value::text(std::to_string(cfg.seed), "user")});
    rec.inputs.push_back({"precision_mode", Value::text(mode_name(cfg.precision_mode), "user")});
    rec.inputs.push_back({"generator", Value::text(std::string(simulate::kGeneratorId))});

    const auto analytic = simulate::analytic_prediction(cfg);
    const auto outcome = simulate::compare(cfg, opt.workers);
    const auto& rep = analytic.report;

    const double n_total = static_cast<double>(cfg.n + cfg.extra);
    const double baseline_fp = (1.0 - cfg.prevalence) * static_cast<double>(cfg.n) * cfg.validator.fpr;
    const double screened_bad = rep.survivors - cfg.screener.tpr * cfg.prevalence * n_total;
    const double augmented_fp = screened_bad * cfg.validator.fpr;

    Section est{"estimates", {}};
    const auto add = [&](const std::string& label, const simulate::Estimate& e, double expected, Unit unit,
                         const std::string& tag) {
        est.rows.push_back({label,
                            {{"empirical", Value::number(e.mean, unit, "simulated")},
                             {"std_error", Value::number(e.std_error, unit, "simulated")},
                             {"analytic", Value::number(expected, unit, tag)},
                             {"agrees", Value::flag(simulate::within_standard_errors(e, expected, kOracleSeSpan))}}});
    };
    add("baseline_tp", outcome.baseline.tp, rep.baseline_tp, Unit::Count, "derived");
    add("baseline_fp", outcome.baseline.fp, baseline_fp, Unit::Count, "derived");
    add("baseline_time", outcome.baseline.time, rep.baseline_time, Unit::Seconds, "derived");
    add("augmented_tp", outcome.augmented.tp, rep.augmented_tp, Unit::Count, rate_tag);
    add("augmented_fp", outcome.augmented.fp, augmented_fp, Unit::Count, precision_tag);
    add("augmented_time", outcome.augmented.time, rep.augmented_time, Unit::Seconds, precision_tag);
    add("survivors", outcome.augmented.survivors, rep.survivors, Unit::Count, precision_tag);
    add("screener_precision", outcome.augmented.screener_precision, analytic.screener_precision, Unit::Probability,
        precision_tag);
    rec.sections.push_back(std::move(est));

    const auto resolvable = simulate::resolvable_verdict(rep, outcome.baseline, outcome.augmented, kOracleSeSpan);
    const bool agrees = !resolvable || *resolvable == outcome.verdict;
    rec.sections.push_back(
        {"verdict",
         {{"verdict",
           {{"empirical", Value::text(std::string(simulate::to_string(outcome.verdict)), "simulated")},
            {"analytic", Value::text(std::string(bounds::to_string(rep.verdict)), "derived")},
            {"binding", Value::text(std::string(bounds::to_string(rep.binding)), "derived")},
            {"resolvable", resolvable ? Value::text(std::string(simulate::to_string(*resolvable)), "derived")
                                      : Value::missing()},
            {"agrees", Value::flag(agrees)}}}}});

    const double consistent = cfg.screener.precision_at(cfg.prevalence);
    rec.sections.push_back(
        {"screener_precision",
         {{"screener_precision",
           {{"as_published", cfg.published_precision ? prob(*cfg.published_precision, precision_tag) : Value::missing(Unit::Probability)},
            {"prevalence_consistent", prob(consistent, rate_tag)},
            {"empirical", prob(outcome.augmented.screener_precision.mean, "simulated")},
            {"std_error", prob(outcome.augmented.screener_precision.std_error, "simulated")}}}}});

    if (cfg.precision_mode == PrecisionMode::AsPublished && cfg.published_precision &&
        std::abs(*cfg.published_precision - consistent) > metrics::kConsistencyTolerance) {
        std::ostringstream msg;
        msg << "as-published screener precision " << *cfg.published_precision << " differs from the prevalence-consistent "
            << consistent << "; analytic survivors and times use the former";
        rec.warnings.push_back(msg.str());
    }
    if (!agrees) {
        if (cfg.precision_mode == PrecisionMode::PrevalenceConsistent) rec.status = "regression";
        rec.warnings.push_back("resolvable analytic verdict " + std::string(simulate::to_string(*resolvable)) +
                               " contradicts the empirical verdict " +
                               std::string(simulate::to_string(outcome.verdict)));
    }
    return rec;
}

OutputRecord cmd_reproduce(const ReproduceOptions& opt) {
    OutputRecord rec;
    rec.command = "reproduce";
    const auto cat = catalog::builtin_catalog();
    const auto bench = catalog::builtin_benchmark();
    rec.inputs.push_back({"catalog", Value::text("builtin", "builtin")});
    rec.inputs.push_back({"pi", prob(bench.prevalence, "reported")});
    bool all_pass = true;

    Section starred{"bayes_fpr", {}};
    for (const auto& s : kStarredFprs) {
        const auto& m = cat.lookup(s.model);
        const double computed = metrics::bayes_fpr(m.spec.precision, m.spec.recall, *m.spec.eval_prevalence);
        starred.rows.push_back(check_row(m.name, s.published, computed, kStarredTolerance, false, Unit::Probability, all_pass));
    }
    rec.sections.push_back(std::move(starred));

    Section fixed{"fixed_model", {}};
    for (const auto& f : kFixedModels) {
        const auto& m = cat.lookup(f.model);
        const auto rates = m.screener_rates();
        const double p_m = m.screener_precision();
        const auto v = bounds::min_validator_time(kFixedScreenerLatency, rates.tpr, p_m, kFixedPrevalence);
        fixed.rows.push_back(check_row(m.name + "/min_validator_time", f.min_validator_time, *v.seconds,
                                       kFixedTimeTolerance, true, Unit::Seconds, all_pass));
        fixed.rows.push_back(check_row(m.name + "/min_extra_ratio", f.min_extra_ratio, bounds::min_extra_ratio(rates.tpr),
                                       f.extra_tolerance, false, Unit::Percent, all_pass));
    }
    rec.sections.push_back(std::move(fixed));

    Section limits{"max_model_time", {}};
    const auto stats = stat_values(bench.times);
    for (const auto& row : kPublishedLimits) {
        const auto& m = cat.lookup(row.model);
        const auto rates = m.screener_rates();
        const double p_m = m.screener_precision();
        const double tolerance = m.name.starts_with("CodeJIT") ? kLimitsToleranceCodeJit : kLimitsTolerance;
        for (std::size_t i = 0; i < stats.size(); ++i) {
            const double computed = bounds::max_model_time(stats[i], rates.tpr, p_m, bench.prevalence).relaxed;
            limits.rows.push_back(check_row(m.name + "/" + kStatNames[i], row.published[i], computed, tolerance, true,
                                            Unit::Seconds, all_pass));
        }
    }
    rec.sections.push_back(std::move(limits));

    if (opt.simulation) {
        rec.inputs.push_back({"seed", Value::text(std::to_string(opt.seed), "user")});
        rec.inputs.push_back({"generator", Value::text(std::string(simulate::kGeneratorId))});
        Section oracle{"simulation_oracle", {}};
        for (const auto& m : cat.models()) {
            simulate::SimConfig cfg;
            cfg.prevalence = bench.prevalence;
            cfg.n = 20000;
            cfg.trials = 20;
            cfg.seed = opt.seed;
            cfg.screener = m.screener_rates();
            cfg.precision_mode = PrecisionMode::PrevalenceConsistent;
            cfg.validator_latency = bench.times.mean;
            cfg.screener_latency = m.spec.latency.value_or(1.0);
            const double ratio = bounds::min_extra_ratio(cfg.screener.tpr) + 0.02;
            cfg.extra = static_cast<std::uint64_t>(std::llround(ratio * static_cast<double>(cfg.n)));
            const auto analytic = simulate::analytic_prediction(cfg);
            const auto outcome = simulate::compare(cfg);
            const auto& rep = analytic.report;
            const bool tp = simulate::within_standard_errors(outcome.baseline.tp, rep.baseline_tp) &&
                            simulate::within_standard_errors(outcome.augmented.tp, rep.augmented_tp);
            const bool survivors = simulate::within_standard_errors(outcome.augmented.survivors, rep.survivors);
            const bool time = simulate::within_standard_errors(outcome.augmented.time, rep.augmented_time) &&
                              simulate::within_standard_errors(outcome.baseline.time, rep.baseline_time);
            const auto resolvable = simulate::resolvable_verdict(rep, outcome.baseline, outcome.augmented);
            const bool verdict = !resolvable || *resolvable == outcome.verdict;
            const bool pass = tp && survivors && time && verdict;
            all_pass = all_pass && pass;
            oracle.rows.push_back({m.name,
                                   {{"tau_m", secs(cfg.screener_latency, m.spec.latency ? latency_tag(m) : "assumed")},
                                    {"tp", Value::flag(tp)},
                                    {"survivors", Value::flag(survivors)},
                                    {"time", Value::flag(time)},
                                    {"verdict", Value::flag(verdict)},
                                    {"pass", Value::flag(pass)}}});
        }
        rec.sections.push_back(std::move(oracle));
    }

    for (const auto& s : rec.sections)
        for (const auto& row : s.rows)
            for (const auto& f : row.fields)
                if (f.name == "pass" && std::get<bool>(f.value.data) == false)
                    rec.warnings.push_back(s.name + ": " + row.label + " outside tolerance");
    if (!all_pass) rec.status = "regression";
    return rec;
}

}  // namespace pipegate::cli
