#pragma once
// Confusion-matrix algebra for binary filters.
//
// Two label conventions meet here. A vulnerability detector (MVD) calls
// "vulnerable" positive; a patch screener (M) calls "good patch" positive.
// Running a detector as a screener swaps the labels, so
//   TP_M = TN_MVD, FP_M = FN_MVD, FN_M = FP_MVD, TN_M = TP_MVD
// and the screener's rates follow from the detector's published ones.

#include <optional>

namespace pipegate::metrics {

// Mutual-consistency tolerance for published (P, R, FPR, prevalence) rows.
// Published tables round to two decimals.
inline constexpr double kConsistencyTolerance = 0.02;

// Expected (possibly fractional) outcome counts.
struct ConfusionCounts {
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    double tn = 0.0;

    double total() const noexcept { return tp + fp + fn + tn; }

    // Rates below throw UndefinedPrecisionError / DomainError on empty denominators.
    double precision() const;
    double recall() const;
    double fpr() const;
    double prevalence() const;

    void validate() const;

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Published performance of one binary filter.
struct ClassifierSpec {
    double precision = 1.0;
    double recall = 1.0;
    std::optional<double> fpr;
    std::optional<double> latency;          // seconds per item
    std::optional<double> eval_prevalence;  // prevalence of the evaluation dataset

    // Throws ValidationError naming the first field out of range.
    void validate() const;

    // |P - implied P| when all four of P, R, FPR, prevalence are present.
    std::optional<double> consistency_gap() const;
    bool is_consistent(double tolerance = kConsistencyTolerance) const;

    friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

// Prevalence-free description of a filter. Precision is derived on demand.
struct RateTriple {
    double tpr = 1.0;
    double fpr = 0.0;

    double precision_at(double prevalence) const;
    void validate() const;

    friend bool operator==(const RateTriple&, const RateTriple&) = default;
};

// FPR completed from precision, recall and prevalence via Bayes' rule.
double bayes_fpr(double precision, double recall, double prevalence);

// Expected counts for `total` items at the given prevalence.
ConfusionCounts counts_from_rates(double tpr, double fpr, double prevalence, double total);

// Relabel positives as negatives. An involution.
ConfusionCounts swap_labels(const ConfusionCounts& c) noexcept;

// Screener precision from the detector's published precision, recall and FPR,
// evaluated as the closed form on the given triple (no consistency repair).
double invert_detector_precision(double precision_mvd, double recall_mvd, double fpr_mvd);

// Screener recall: the good patches the detector does not flag, 1 - FPR_MVD.
double invert_detector_recall(double fpr_mvd);

// Screener FPR: the vulnerable patches the detector misses, 1 - R_MVD.
double invert_detector_fpr(double recall_mvd);

// pi*tpr / (pi*tpr + (1-pi)*fpr).
double precision_at_prevalence(double tpr, double fpr, double prevalence);

// Screener rates from a detector spec; requires spec.fpr.
RateTriple screener_rates(const ClassifierSpec& detector);

}  // namespace pipegate::metrics
