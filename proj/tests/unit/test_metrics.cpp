#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "pipegate/errors.hpp"
#include "pipegate/metrics.hpp"

using namespace pipegate;
using namespace pipegate::metrics;

TEST(BayesFpr, LineVulStarredValue) {
    // Published as 0.002*.
    EXPECT_NEAR(bayes_fpr(0.97, 0.86, 0.06), 0.0016977407326168, 1e-12);
    EXPECT_NEAR(bayes_fpr(0.97, 0.86, 0.06), 0.002, 0.0005);
}

TEST(BayesFpr, LineVDStarredValue) {
    EXPECT_NEAR(bayes_fpr(0.27, 0.53, 0.06), 0.0914657210401891, 1e-12);
}

TEST(BayesFpr, PerfectPrecisionHasNoFalsePositives) {
    EXPECT_EQ(bayes_fpr(1.0, 0.3, 0.2), 0.0);
    EXPECT_EQ(bayes_fpr(1.0, 1.0, 0.9), 0.0);
}

TEST(BayesFpr, DomainErrors) {
    EXPECT_THROW(bayes_fpr(0.5, 0.5, 0.0), DomainError);
    EXPECT_THROW(bayes_fpr(0.5, 0.5, 1.0), DomainError);
    EXPECT_THROW(bayes_fpr(0.0, 0.5, 0.5), DomainError);
    EXPECT_THROW(bayes_fpr(0.5, 1.5, 0.5), DomainError);
}

TEST(BayesFpr, InvertsPrecisionAtPrevalence) {
    oracle::Gen gen(11);
    for (int i = 0; i < 5000; ++i) {
        const double p = gen.uniform(0.01, 0.99);
        const double r = gen.uniform(0.01, 0.99);
        const double pi = gen.uniform(0.01, 0.99);
        const double far = bayes_fpr(p, r, pi);
        if (far > 1.0) continue;  // unreachable precision for this (r, pi)
        EXPECT_NEAR(precision_at_prevalence(r, far, pi), p, 1e-12) << p << " " << r << " " << pi;
    }
}

TEST(CountsFromRates, PerfectClassifier) {
    const auto c = counts_from_rates(1.0, 0.0, 0.5, 100.0);
    EXPECT_EQ(c, (ConfusionCounts{50.0, 0.0, 0.0, 50.0}));
}

TEST(CountsFromRates, UninformativeSymmetric) {
    const auto c = counts_from_rates(0.5, 0.5, 0.5, 4.0);
    EXPECT_EQ(c, (ConfusionCounts{1.0, 1.0, 1.0, 1.0}));
}

TEST(CountsFromRates, VulDeePeckerGadgets) {
    // Exact rational values for 61,638 gadgets at the rounded prevalence 0.29.
    const auto c = counts_from_rates(0.84, 0.05, 0.29, 61638.0);
    EXPECT_NEAR(c.tp, 15015.0168, 1e-8);
    EXPECT_NEAR(c.fp, 2188.149, 1e-8);
    EXPECT_NEAR(c.fn, 2860.0032, 1e-8);
    EXPECT_NEAR(c.tn, 41574.831, 1e-8);
}

TEST(CountsFromRates, RejectsOutOfRange) {
    EXPECT_THROW(counts_from_rates(1.1, 0.0, 0.5, 10.0), DomainError);
    EXPECT_THROW(counts_from_rates(0.5, -0.1, 0.5, 10.0), DomainError);
    EXPECT_THROW(counts_from_rates(0.5, 0.5, 0.0, 10.0), DomainError);
    EXPECT_THROW(counts_from_rates(0.5, 0.5, 0.5, 0.0), DomainError);
}

TEST(SwapLabels, Definitional) {
    EXPECT_EQ(swap_labels({1, 2, 3, 4}), (ConfusionCounts{4, 3, 2, 1}));
    EXPECT_EQ(swap_labels({50, 0, 0, 50}), (ConfusionCounts{50, 0, 0, 50}));
}

TEST(SwapLabels, VulDeePeckerCounts) {
    const auto s = swap_labels(counts_from_rates(0.84, 0.05, 0.29, 61638.0));
    EXPECT_NEAR(s.tp, 41574.831, 1e-8);
    EXPECT_NEAR(s.fp, 2860.0032, 1e-8);
    EXPECT_NEAR(s.fn, 2188.149, 1e-8);
    EXPECT_NEAR(s.tn, 15015.0168, 1e-8);
}

TEST(SwapLabels, IsAnInvolution) {
    oracle::Gen gen(3);
    for (int i = 0; i < 1000; ++i) {
        const ConfusionCounts c{gen.uniform(0, 1e6), gen.uniform(0, 1e6), gen.uniform(0, 1e6), gen.uniform(0, 1e6)};
        EXPECT_EQ(swap_labels(swap_labels(c)), c);
    }
}

TEST(InvertDetectorPrecision, VulDeePecker) {
    EXPECT_NEAR(invert_detector_precision(0.87, 0.84, 0.05), 0.9371273712737127, 1e-12);
}

TEST(InvertDetectorPrecision, VulDeePeckerOnReveal) {
    EXPECT_NEAR(invert_detector_precision(0.11, 0.14, 0.11), 0.9142126957955482, 1e-12);
}

TEST(InvertDetectorPrecision, PerfectRecallGivesPerfectScreener) {
    EXPECT_EQ(invert_detector_precision(0.4, 1.0, 0.3), 1.0);
    EXPECT_EQ(invert_detector_precision(0.4, 0.7, 0.0), 1.0);
}

TEST(InvertDetectorPrecision, InconsistentPerfectPrecision) {
    EXPECT_THROW(invert_detector_precision(1.0, 0.5, 0.1), DomainError);
    EXPECT_EQ(invert_detector_precision(1.0, 0.5, 0.0), 1.0);
}

TEST(InvertDetectorPrecision, DomainErrors) {
    EXPECT_THROW(invert_detector_precision(0.0, 0.5, 0.1), DomainError);
    EXPECT_THROW(invert_detector_precision(0.5, 0.0, 0.1), DomainError);
    EXPECT_THROW(invert_detector_precision(0.5, 0.5, 1.0), DomainError);
}

TEST(InvertDetectorPrecision, CrossCheckAgainstSwappedCountsAtImpliedPrevalence) {
    // For VulDeePecker the implied eval prevalence is the one where 0.87 is exact.
    const double r = 0.84;
    const double far = 0.05;
    oracle::Gen gen(5);
    for (int i = 0; i < 200; ++i) {
        const double pi = gen.uniform(0.02, 0.98);
        const double implied = precision_at_prevalence(r, far, pi);
        const long double expected = oracle::oracle_swapped_precision(r, far, pi, 1000.0L);
        EXPECT_NEAR(invert_detector_precision(implied, r, far), static_cast<double>(expected), 1e-12);
    }
}

TEST(InvertDetectorRecall, Values) {
    EXPECT_DOUBLE_EQ(invert_detector_recall(0.05), 0.95);
    EXPECT_EQ(invert_detector_recall(0.0), 1.0);
    EXPECT_DOUBLE_EQ(invert_detector_recall(0.11), 0.89);
}

TEST(InvertDetectorFpr, Values) {
    EXPECT_DOUBLE_EQ(invert_detector_fpr(0.84), 0.16);
    EXPECT_EQ(invert_detector_fpr(1.0), 0.0);
    EXPECT_DOUBLE_EQ(invert_detector_fpr(0.14), 0.86);
}

TEST(InvertDetectorRates, AgreeWithSwappedCounts) {
    oracle::Gen gen(17);
    for (int i = 0; i < 1000; ++i) {
        const double r = gen.uniform(0, 1);
        const double far = gen.uniform(0, 1);
        const double pi = gen.uniform(0.01, 0.99);
        const auto swapped = swap_labels(counts_from_rates(r, far, pi, 1234.0));
        EXPECT_NEAR(invert_detector_recall(far), swapped.recall(), 1e-12);
        EXPECT_NEAR(invert_detector_fpr(r), swapped.fpr(), 1e-12);
    }
}

TEST(PrecisionAtPrevalence, Values) {
    EXPECT_NEAR(precision_at_prevalence(0.95, 0.16, 0.71), 0.9356360105423775, 1e-12);
    EXPECT_EQ(precision_at_prevalence(1.0, 0.0, 0.42), 1.0);
    EXPECT_NEAR(precision_at_prevalence(0.5, 0.5, 0.3), 0.3, 1e-15);
}

TEST(PrecisionAtPrevalence, UndefinedWhenNothingPasses) {
    EXPECT_THROW(precision_at_prevalence(0.0, 0.0, 0.5), UndefinedPrecisionError);
}

TEST(PrecisionAtPrevalence, MatchesCountsRoute) {
    oracle::Gen gen(23);
    for (int i = 0; i < 2000; ++i) {
        const double tpr = gen.uniform(0.001, 1);
        const double fpr = gen.uniform(0, 1);
        const double pi = gen.uniform(0.001, 0.999);
        const double total = gen.uniform(1, 1e7);
        EXPECT_NEAR(counts_from_rates(tpr, fpr, pi, total).precision(), precision_at_prevalence(tpr, fpr, pi), 1e-12);
    }
}

TEST(ClassifierSpec, ValidateNamesField) {
    ClassifierSpec s{.precision = 1.3, .recall = 0.5};
    try {
        s.validate();
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "precision");
    }
    s.precision = 0.5;
    s.eval_prevalence = 1.0;
    EXPECT_THROW(s.validate(), ValidationError);
}

TEST(ClassifierSpec, ConsistencyGap) {
    const ClassifierSpec vdp{.precision = 0.87, .recall = 0.84, .fpr = 0.05, .eval_prevalence = 0.29};
    ASSERT_TRUE(vdp.consistency_gap().has_value());
    EXPECT_LT(*vdp.consistency_gap(), kConsistencyTolerance);
    EXPECT_TRUE(vdp.is_consistent());

    const ClassifierSpec off{.precision = 0.5, .recall = 0.84, .fpr = 0.05, .eval_prevalence = 0.29};
    EXPECT_FALSE(off.is_consistent());

    const ClassifierSpec partial{.precision = 0.5, .recall = 0.84};
    EXPECT_FALSE(partial.consistency_gap().has_value());
}

TEST(ScreenerRates, FromDetector) {
    const ClassifierSpec vdp{.precision = 0.87, .recall = 0.84, .fpr = 0.05, .eval_prevalence = 0.29};
    const auto rates = screener_rates(vdp);
    EXPECT_DOUBLE_EQ(rates.tpr, 0.95);
    EXPECT_DOUBLE_EQ(rates.fpr, 0.16);
    EXPECT_THROW(screener_rates(ClassifierSpec{.precision = 0.5, .recall = 0.5}), ValidationError);
}
