#include "pipegate/metrics.hpp"

#include <cmath>
#include <string>

#include "pipegate/errors.hpp"

namespace pipegate::metrics {
namespace {

bool finite_in(double v, double lo, double hi) { return std::isfinite(v) && v >= lo && v <= hi; }

void require_unit(double v, const char* what) {
    if (!finite_in(v, 0.0, 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0,1], got " + std::to_string(v));
    }
}

void require_open_prevalence(double pi) {
    if (!std::isfinite(pi) || pi <= 0.0 || pi >= 1.0) {
        throw DomainError("prevalence must lie in (0,1), got " + std::to_string(pi));
    }
}

}  // namespace

double ConfusionCounts::precision() const {
    const double passed = tp + fp;
    if (passed <= 0.0) throw UndefinedPrecisionError("precision undefined: no predicted positives");
    return tp / passed;
}

double ConfusionCounts::recall() const {
    const double positives = tp + fn;
    if (positives <= 0.0) throw DomainError("recall undefined: no actual positives");
    return tp / positives;
}

double ConfusionCounts::fpr() const {
    const double negatives = fp + tn;
    if (negatives <= 0.0) throw DomainError("fpr undefined: no actual negatives");
    return fp / negatives;
}

double ConfusionCounts::prevalence() const {
    const double n = total();
    if (n <= 0.0) throw DomainError("prevalence undefined: empty confusion matrix");
    return (tp + fn) / n;
}

void ConfusionCounts::validate() const {
    const auto check = [](double v, const char* field) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "count must be finite and >= 0");
    };
    check(tp, "tp");
    check(fp, "fp");
    check(fn, "fn");
    check(tn, "tn");
}

void ClassifierSpec::validate() const {
    if (!std::isfinite(precision) || precision <= 0.0 || precision > 1.0) {
        throw ValidationError("precision", "must lie in (0,1], got " + std::to_string(precision));
    }
    if (!finite_in(recall, 0.0, 1.0)) {
        throw ValidationError("recall", "must lie in [0,1], got " + std::to_string(recall));
    }
    if (fpr && !finite_in(*fpr, 0.0, 1.0)) {
        throw ValidationError("fpr", "must lie in [0,1], got " + std::to_string(*fpr));
    }
    if (latency && (!std::isfinite(*latency) || *latency < 0.0)) {
        throw ValidationError("latency_seconds", "must be finite and >= 0, got " + std::to_string(*latency));
    }
    if (eval_prevalence && (!std::isfinite(*eval_prevalence) || *eval_prevalence <= 0.0 || *eval_prevalence >= 1.0)) {
        throw ValidationError("prevalence", "must lie in (0,1), got " + std::to_string(*eval_prevalence));
    }
}

std::optional<double> ClassifierSpec::consistency_gap() const {
    if (!fpr || !eval_prevalence) return std::nullopt;
    const double pi = *eval_prevalence;
    const double denom = pi * recall + (1.0 - pi) * *fpr;
    if (denom <= 0.0) return std::nullopt;
    return std::abs(precision - pi * recall / denom);
}

bool ClassifierSpec::is_consistent(double tolerance) const {
    const auto gap = consistency_gap();
    return !gap || *gap <= tolerance;
}

double RateTriple::precision_at(double prevalence) const { return precision_at_prevalence(tpr, fpr, prevalence); }

void RateTriple::validate() const {
    if (!finite_in(tpr, 0.0, 1.0)) throw ValidationError("tpr", "must lie in [0,1], got " + std::to_string(tpr));
    if (!finite_in(fpr, 0.0, 1.0)) throw ValidationError("fpr", "must lie in [0,1], got " + std::to_string(fpr));
}

double bayes_fpr(double precision, double recall, double prevalence) {
    require_open_prevalence(prevalence);
    if (!std::isfinite(precision) || precision <= 0.0 || precision > 1.0) {
        throw DomainError("precision must lie in (0,1], got " + std::to_string(precision));
    }
    require_unit(recall, "recall");
    if (precision == 1.0 || recall == 0.0) return 0.0;
    return prevalence * recall * (1.0 - precision) / (precision * (1.0 - prevalence));
}

ConfusionCounts counts_from_rates(double tpr, double fpr, double prevalence, double total) {
    require_unit(tpr, "tpr");
    require_unit(fpr, "fpr");
    require_open_prevalence(prevalence);
    if (!std::isfinite(total) || total <= 0.0) {
        throw DomainError("total must be finite and > 0, got " + std::to_string(total));
    }
    const double positives = prevalence * total;
    const double negatives = (1.0 - prevalence) * total;
    return {.tp = tpr * positives, .fp = fpr * negatives, .fn = (1.0 - tpr) * positives, .tn = (1.0 - fpr) * negatives};
}

ConfusionCounts swap_labels(const ConfusionCounts& c) noexcept {
    return {.tp = c.tn, .fp = c.fn, .fn = c.fp, .tn = c.tp};
}

double invert_detector_precision(double precision_mvd, double recall_mvd, double fpr_mvd) {
    require_unit(precision_mvd, "precision");
    require_unit(recall_mvd, "recall");
    require_unit(fpr_mvd, "fpr");
    if (precision_mvd == 0.0) throw DomainError("detector precision must be > 0");

    if (precision_mvd == 1.0) {
        // P = 1 means no false positives at any prevalence.
        if (fpr_mvd > 0.0) throw DomainError("inconsistent detector: precision 1 with nonzero fpr");
        return 1.0;
    }
    // No missed vulnerabilities or no false alarms: the screener passes no bad patch.
    if (recall_mvd == 1.0 || fpr_mvd == 0.0) return 1.0;
    if (recall_mvd == 0.0) throw DomainError("detector recall must be > 0");
    if (fpr_mvd == 1.0) throw DomainError("detector fpr must be < 1");

    const double ratio =
        (fpr_mvd * precision_mvd * (1.0 - recall_mvd)) / ((1.0 - fpr_mvd) * (1.0 - precision_mvd) * recall_mvd);
    return 1.0 / (1.0 + ratio);
}

double invert_detector_recall(double fpr_mvd) {
    require_unit(fpr_mvd, "fpr");
    return 1.0 - fpr_mvd;
}

double invert_detector_fpr(double recall_mvd) {
    require_unit(recall_mvd, "recall");
    return 1.0 - recall_mvd;
}

double precision_at_prevalence(double tpr, double fpr, double prevalence) {
    require_unit(tpr, "tpr");
    require_unit(fpr, "fpr");
    require_open_prevalence(prevalence);
    if (tpr == 0.0 && fpr == 0.0) {
        throw UndefinedPrecisionError("precision undefined: classifier passes nothing");
    }
    if (fpr == 0.0) return 1.0;
    if (tpr == 0.0) return 0.0;
    const double hits = prevalence * tpr;
    return hits / (hits + (1.0 - prevalence) * fpr);
}

RateTriple screener_rates(const ClassifierSpec& detector) {
    if (!detector.fpr) throw ValidationError("fpr", "required to derive screener rates");
    return {.tpr = invert_detector_recall(*detector.fpr), .fpr = invert_detector_fpr(detector.recall)};
}

}  // namespace pipegate::metrics
