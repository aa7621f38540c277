#pragma once
// Test-only reference computations. Nothing here calls into the library, so
// the checks they back stay independent of the implementation path.

#include <cstdint>
#include <random>

namespace pipegate::oracle {

struct Counts {
    long double tp, fp, fn, tn;
};

// Expected confusion counts, in extended precision.
inline Counts oracle_counts(long double tpr, long double fpr, long double pi, long double total) {
    return {tpr * pi * total, fpr * (1 - pi) * total, (1 - tpr) * pi * total, (1 - fpr) * (1 - pi) * total};
}

// Screener precision read off the relabelled counts: TP_M = TN_MVD, FP_M = FN_MVD.
inline long double oracle_swapped_precision(long double recall_mvd, long double fpr_mvd, long double pi,
                                            long double total) {
    const Counts c = oracle_counts(recall_mvd, fpr_mvd, pi, total);
    return c.tn / (c.tn + c.fn);
}

// Per-patch expectations of the screened pipeline by enumerating the four
// (label, screener outcome) cells and the validator outcome.
struct PatchExpectation {
    long double survivors;
    long double true_positives;
};

inline PatchExpectation enumerate_patch(long double pi, long double tpr_m, long double fpr_m, long double r_v) {
    PatchExpectation e{0, 0};
    for (int good = 0; good <= 1; ++good) {
        const long double p_label = good ? pi : 1 - pi;
        for (int pass = 0; pass <= 1; ++pass) {
            const long double p_rate = good ? tpr_m : fpr_m;
            const long double p_pass = pass ? p_rate : 1 - p_rate;
            const long double cell = p_label * p_pass;
            if (pass) {
                e.survivors += cell;
                if (good) e.true_positives += cell * r_v;
            }
        }
    }
    return e;
}

// Uniform sampler for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(eng_);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace pipegate::oracle
