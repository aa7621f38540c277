#include "pipegate/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pipegate/errors.hpp"

namespace pipegate::catalog {
namespace {

using json = nlohmann::ordered_json;

const std::set<std::string> kModelKeys = {"name", "source", "precision", "recall", "fpr",
                                          "latency_seconds", "latency_kind", "prevalence"};
const std::set<std::string> kBenchmarkKeys = {"q25", "median", "q75", "mean", "prevalence"};
const std::set<std::string> kRootKeys = {"models", "benchmark"};

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Byte offset to 1-based line/column.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) throw ValidationError(where + "." + key, "unknown field");
    }
}

double number_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(where + "." + key, "required field missing");
    if (!it->is_number()) throw ValidationError(where + "." + key, "must be a number");
    return it->get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw ValidationError(where + "." + key, "must be a number");
    return it->get<double>();
}

std::optional<std::string> optional_string(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw ValidationError(where + "." + key, "must be a string");
    return it->get<std::string>();
}

ModelRecord parse_model(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ValidationError(where, "must be an object");
    reject_unknown_keys(obj, kModelKeys, where);

    ModelRecord rec;
    const auto name = optional_string(obj, "name", where);
    if (!name || name->empty()) throw ValidationError(where + ".name", "required non-empty string");
    rec.name = *name;
    rec.source = optional_string(obj, "source", where).value_or("");

    rec.spec.precision = number_field(obj, "precision", where);
    rec.spec.recall = number_field(obj, "recall", where);
    rec.spec.eval_prevalence = number_field(obj, "prevalence", where);
    rec.spec.fpr = optional_number(obj, "fpr", where);
    rec.spec.latency = optional_number(obj, "latency_seconds", where);

    const auto kind = optional_string(obj, "latency_kind", where);
    if (kind && !rec.spec.latency) {
        throw ValidationError(where + ".latency_kind", "given without latency_seconds");
    }
    if (!rec.spec.latency) {
        rec.latency_provenance = LatencyProvenance::Unknown;
    } else if (!kind || *kind == "reported") {
        rec.latency_provenance = LatencyProvenance::ReportedWithPreprocessing;
    } else if (*kind == "lower_bound") {
        rec.latency_provenance = LatencyProvenance::LowerBound;
    } else {
        throw ValidationError(where + ".latency_kind", "must be \"reported\" or \"lower_bound\", got \"" + *kind + "\"");
    }

    try {
        rec.spec.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(where + "." + e.field(), e.detail());
    }

    if (rec.spec.fpr) {
        rec.fpr_provenance = FprProvenance::Reported;
    } else {
        rec.spec.fpr = metrics::bayes_fpr(rec.spec.precision, rec.spec.recall, *rec.spec.eval_prevalence);
        rec.fpr_provenance = FprProvenance::BayesEstimated;
    }
    return rec;
}

Benchmark parse_benchmark(const json& obj) {
    const std::string where = "benchmark";
    if (!obj.is_object()) throw ValidationError(where, "must be an object");
    reject_unknown_keys(obj, kBenchmarkKeys, where);
    Benchmark b;
    b.times.q25 = number_field(obj, "q25", where);
    b.times.median = number_field(obj, "median", where);
    b.times.q75 = number_field(obj, "q75", where);
    b.times.mean = number_field(obj, "mean", where);
    b.prevalence = number_field(obj, "prevalence", where);
    try {
        b.times.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(where + "." + e.field(), e.detail());
    }
    if (!(b.prevalence > 0.0 && b.prevalence < 1.0)) throw ValidationError(where + ".prevalence", "must lie in (0,1)");
    return b;
}

ModelRecord builtin_row(std::string name, std::string source, std::optional<double> latency,
                        LatencyProvenance latency_kind, double precision, double recall, double fpr,
                        FprProvenance fpr_kind, double prevalence) {
    ModelRecord r;
    r.name = std::move(name);
    r.source = std::move(source);
    r.spec.precision = precision;
    r.spec.recall = recall;
    r.spec.fpr = fpr;
    r.spec.latency = latency;
    r.spec.eval_prevalence = prevalence;
    r.fpr_provenance = fpr_kind;
    r.latency_provenance = latency_kind;
    return r;
}

}  // namespace

std::string_view to_string(FprProvenance p) noexcept {
    return p == FprProvenance::Reported ? "reported" : "bayes-estimated";
}

std::string_view to_string(LatencyProvenance p) noexcept {
    switch (p) {
        case LatencyProvenance::ReportedWithPreprocessing: return "reported-with-preprocessing";
        case LatencyProvenance::LowerBound: return "lower-bound";
        case LatencyProvenance::Unknown: return "unknown";
    }
    return "unknown";
}

double ModelRecord::screener_precision() const {
    if (!spec.fpr) throw ValidationError("fpr", "required to invert detector metrics");
    return metrics::invert_detector_precision(spec.precision, spec.recall, *spec.fpr);
}

metrics::RateTriple ModelRecord::screener_rates() const { return metrics::screener_rates(spec); }

double ModelRecord::latency() const {
    if (!spec.latency) throw LatencyUnknownError("latency unknown for model \"" + name + "\"");
    return *spec.latency;
}

void BenchmarkTimes::validate() const {
    for (auto [v, field] : {std::pair{q25, "q25"}, {median, "median"}, {q75, "q75"}, {mean, "mean"}}) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "must be finite and >= 0");
    }
    if (!(q25 <= median)) throw ValidationError("median", "must be >= q25");
    if (!(median <= q75)) throw ValidationError("q75", "must be >= median");
    if (!(mean > 0.0)) throw ValidationError("mean", "must be > 0");
}

std::string normalize_name(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (unsigned char c : name) {
        if (c == ' ' || c == '-' || c == '_' || c == '\t') continue;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

Catalog::Catalog(std::vector<ModelRecord> models, std::optional<Benchmark> benchmark)
    : models_(std::move(models)), benchmark_(std::move(benchmark)) {
    std::set<std::string> seen;
    for (const auto& m : models_) {
        if (!seen.insert(normalize_name(m.name)).second) {
            throw DuplicateNameError("duplicate model name \"" + m.name + "\"");
        }
        if (!m.spec.fpr) throw ValidationError(m.name + ".fpr", "must be present or Bayes-completed");
        if (!m.spec.eval_prevalence) throw ValidationError(m.name + ".prevalence", "required");

        if (m.fpr_provenance == FprProvenance::BayesEstimated) {
            const double recomputed = metrics::bayes_fpr(m.spec.precision, m.spec.recall, *m.spec.eval_prevalence);
            if (std::abs(recomputed - *m.spec.fpr) > kBayesRoundTripTolerance) {
                throw ValidationError(m.name + ".fpr", "Bayes-estimated value " + format_double(*m.spec.fpr) +
                                                           " does not match recomputed " + format_double(recomputed));
            }
        }
        if (const auto gap = m.spec.consistency_gap(); gap && *gap > metrics::kConsistencyTolerance) {
            warnings_.push_back({m.name, "inconsistent-metrics",
                                 "precision differs from the value implied by recall, fpr and prevalence by " +
                                     format_double(*gap)});
        }
    }
}

const ModelRecord* Catalog::find(std::string_view name) const noexcept {
    const std::string key = normalize_name(name);
    const auto it = std::find_if(models_.begin(), models_.end(),
                                 [&](const ModelRecord& m) { return normalize_name(m.name) == key; });
    return it == models_.end() ? nullptr : &*it;
}

const ModelRecord& Catalog::lookup(std::string_view name) const {
    if (const auto* rec = find(name)) return *rec;
    throw UnknownEntityError("unknown model \"" + std::string(name) + "\"");
}

Catalog builtin_catalog() {
    using FP = FprProvenance;
    using LP = LatencyProvenance;
    // Starred FPRs are the published Bayes estimates, kept at their published rounding.
    std::vector<ModelRecord> rows = {
        builtin_row("VulDeePecker", "VulDeePecker, original HY-ALL evaluation", 156.0, LP::ReportedWithPreprocessing,
                    0.87, 0.84, 0.05, FP::Reported, 0.29),
        builtin_row("VulDeePecker on Reveal", "VulDeePecker evaluated on the ReVeal dataset", 156.0,
                    LP::ReportedWithPreprocessing, 0.11, 0.14, 0.11, FP::BayesEstimated, 0.09),
        builtin_row("IVDetect on Reveal", "IVDetect evaluated on the ReVeal dataset", 1.5, LP::LowerBound, 0.39, 0.52,
                    0.08, FP::BayesEstimated, 0.09),
        builtin_row("LineVul", "LineVul", std::nullopt, LP::Unknown, 0.97, 0.86, 0.002, FP::BayesEstimated, 0.06),
        builtin_row("LineVD", "LineVD", 1.0, LP::LowerBound, 0.27, 0.53, 0.09, FP::BayesEstimated, 0.06),
        builtin_row("CodeJIT FastRGCN", "CodeJIT, FastRGCN variant", 0.75, LP::LowerBound, 0.77, 0.71, 0.22,
                    FP::Reported, 0.5),
        builtin_row("CodeJIT RGCN", "CodeJIT, RGCN variant", 1.42, LP::LowerBound, 0.78, 0.70, 0.20,
                    FP::BayesEstimated, 0.5),
    };
    return Catalog(std::move(rows), builtin_benchmark());
}

Benchmark builtin_benchmark() {
    return {.times = {.q25 = 9.17, .median = 27.04, .q75 = 74.5, .mean = 337.83}, .prevalence = 0.38};
}

Catalog parse_catalog(std::string_view text, std::string_view origin) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string(origin), line, column, e.what());
    }
    if (!doc.is_object()) throw ParseError(std::string(origin), 1, 1, "top-level value must be an object");
    reject_unknown_keys(doc, kRootKeys, "$");

    std::vector<ModelRecord> models;
    if (const auto it = doc.find("models"); it != doc.end()) {
        if (!it->is_array()) throw ValidationError("models", "must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            models.push_back(parse_model((*it)[i], "models[" + std::to_string(i) + "]"));
        }
    } else {
        throw ValidationError("models", "required field missing");
    }

    std::optional<Benchmark> benchmark;
    if (const auto it = doc.find("benchmark"); it != doc.end() && !it->is_null()) {
        benchmark = parse_benchmark(*it);
    }
    return Catalog(std::move(models), benchmark);
}

Catalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), path.string());
}

std::string serialize_catalog(const Catalog& catalog) {
    json doc;
    json models = json::array();
    for (const auto& m : catalog.models()) {
        json obj;
        obj["name"] = m.name;
        obj["source"] = m.source;
        obj["precision"] = m.spec.precision;
        obj["recall"] = m.spec.recall;
        if (m.fpr_provenance == FprProvenance::Reported && m.spec.fpr) obj["fpr"] = *m.spec.fpr;
        if (m.spec.latency) {
            obj["latency_seconds"] = *m.spec.latency;
            obj["latency_kind"] = m.latency_provenance == LatencyProvenance::LowerBound ? "lower_bound" : "reported";
        }
        obj["prevalence"] = *m.spec.eval_prevalence;
        models.push_back(std::move(obj));
    }
    doc["models"] = std::move(models);
    if (const auto& b = catalog.benchmark()) {
        doc["benchmark"] = {{"q25", b->times.q25},
                            {"median", b->times.median},
                            {"q75", b->times.q75},
                            {"mean", b->times.mean},
                            {"prevalence", b->prevalence}};
    }
    return doc.dump(2) + "\n";
}

}  // namespace pipegate::catalog
