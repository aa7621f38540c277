#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "pipegate/catalog.hpp"
#include "pipegate/errors.hpp"

using namespace pipegate;
using namespace pipegate::catalog;

TEST(BuiltinCatalog, SevenRowsVerbatim) {
    const auto cat = builtin_catalog();
    ASSERT_EQ(cat.size(), 7u);
    EXPECT_TRUE(cat.warnings().empty());

    const auto& vdp = cat.lookup("VulDeePecker");
    EXPECT_EQ(vdp.spec.latency, 156.0);
    EXPECT_EQ(vdp.spec.precision, 0.87);
    EXPECT_EQ(vdp.spec.recall, 0.84);
    EXPECT_EQ(vdp.spec.fpr, 0.05);
    EXPECT_EQ(vdp.spec.eval_prevalence, 0.29);
    EXPECT_EQ(vdp.latency_provenance, LatencyProvenance::ReportedWithPreprocessing);
    EXPECT_EQ(vdp.fpr_provenance, FprProvenance::Reported);

    EXPECT_EQ(cat.lookup("LineVul").spec.precision, 0.97);
    EXPECT_EQ(cat.lookup("LineVul").latency_provenance, LatencyProvenance::Unknown);
    EXPECT_THROW(cat.lookup("LineVul").latency(), LatencyUnknownError);

    const auto& fast = cat.lookup("CodeJIT FastRGCN");
    EXPECT_EQ(fast.spec.fpr, 0.22);
    EXPECT_EQ(fast.fpr_provenance, FprProvenance::Reported);
    EXPECT_EQ(fast.latency_provenance, LatencyProvenance::LowerBound);

    EXPECT_EQ(cat.lookup("IVDetect on Reveal").spec.latency, 1.5);
    EXPECT_EQ(cat.lookup("LineVD").spec.latency, 1.0);
    EXPECT_EQ(cat.lookup("CodeJIT RGCN").spec.latency, 1.42);
}

TEST(BuiltinCatalog, StarredRowsReproduceViaBayes) {
    const auto cat = builtin_catalog();
    int starred = 0;
    for (const auto& m : cat.models()) {
        if (m.fpr_provenance != FprProvenance::BayesEstimated) continue;
        ++starred;
        const double recomputed = metrics::bayes_fpr(m.spec.precision, m.spec.recall, *m.spec.eval_prevalence);
        EXPECT_LE(std::abs(recomputed - *m.spec.fpr), kBayesRoundTripTolerance) << m.name;
    }
    EXPECT_EQ(starred, 5);
}

TEST(BuiltinCatalog, LookupIsForgiving) {
    const auto cat = builtin_catalog();
    EXPECT_EQ(&cat.lookup("codejit-fastrgcn"), &cat.lookup("CodeJIT FastRGCN"));
    EXPECT_EQ(&cat.lookup("VulDeePecker on ReVeal"), &cat.lookup("VulDeePecker on Reveal"));
    EXPECT_THROW(cat.lookup("NoSuchModel"), UnknownEntityError);
    EXPECT_EQ(cat.find("NoSuchModel"), nullptr);
}

TEST(BuiltinBenchmark, Values) {
    const auto b = builtin_benchmark();
    EXPECT_EQ(b.times.q25, 9.17);
    EXPECT_EQ(b.times.median, 27.04);
    EXPECT_EQ(b.times.q75, 74.5);
    EXPECT_EQ(b.times.mean, 337.83);
    EXPECT_EQ(b.prevalence, 0.38);
    EXPECT_NO_THROW(b.times.validate());
}

TEST(BenchmarkTimes, OrderingEnforced) {
    BenchmarkTimes t{.q25 = 10, .median = 5, .q75 = 20, .mean = 30};
    EXPECT_THROW(t.validate(), ValidationError);
    t = {.q25 = 1, .median = 2, .q75 = 3, .mean = 0};
    EXPECT_THROW(t.validate(), ValidationError);
}

TEST(ParseCatalog, MissingFprIsBayesCompleted) {
    const auto cat = parse_catalog(R"({"models":[{"name":"LineVul","source":"s","precision":0.97,"recall":0.86,
        "prevalence":0.06}]})");
    ASSERT_EQ(cat.size(), 1u);
    const auto& m = cat.models().front();
    EXPECT_EQ(m.fpr_provenance, FprProvenance::BayesEstimated);
    EXPECT_NEAR(*m.spec.fpr, 0.0016977407326168, 1e-12);
    EXPECT_EQ(m.latency_provenance, LatencyProvenance::Unknown);
}

TEST(ParseCatalog, OutOfRangeNamesField) {
    try {
        parse_catalog(R"({"models":[{"name":"X","precision":1.3,"recall":0.5,"prevalence":0.1}]})");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "models[0].precision");
    }
}

TEST(ParseCatalog, EmptyModelList) {
    const auto cat = parse_catalog(R"({"models":[]})");
    EXPECT_TRUE(cat.empty());
    EXPECT_FALSE(cat.benchmark().has_value());
}

TEST(ParseCatalog, MalformedReportsLine) {
    try {
        parse_catalog("{\n  \"models\": [\n    {\"name\": \"X\",, }\n  ]\n}", "bad.json");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.origin(), "bad.json");
    }
}

TEST(ParseCatalog, UnknownFieldsRejected) {
    try {
        parse_catalog(R"({"models":[{"name":"X","precison":0.5,"recall":0.5,"prevalence":0.1}]})");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "models[0].precison");
    }
    EXPECT_THROW(parse_catalog(R"({"models":[], "extra": 1})"), ValidationError);
}

TEST(ParseCatalog, DuplicateNames) {
    EXPECT_THROW(parse_catalog(R"({"models":[
        {"name":"A","precision":0.5,"recall":0.5,"prevalence":0.1},
        {"name":"a","precision":0.6,"recall":0.5,"prevalence":0.1}]})"),
                 DuplicateNameError);
}

TEST(ParseCatalog, LatencyKinds) {
    const auto cat = parse_catalog(R"({"models":[
        {"name":"A","precision":0.5,"recall":0.5,"prevalence":0.1,"latency_seconds":2,"latency_kind":"lower_bound"},
        {"name":"B","precision":0.5,"recall":0.5,"prevalence":0.1,"latency_seconds":3}]})");
    EXPECT_EQ(cat.lookup("A").latency_provenance, LatencyProvenance::LowerBound);
    EXPECT_EQ(cat.lookup("B").latency_provenance, LatencyProvenance::ReportedWithPreprocessing);
    EXPECT_THROW(parse_catalog(R"({"models":[{"name":"A","precision":0.5,"recall":0.5,"prevalence":0.1,
        "latency_seconds":2,"latency_kind":"guess"}]})"),
                 ValidationError);
    EXPECT_THROW(parse_catalog(R"({"models":[{"name":"A","precision":0.5,"recall":0.5,"prevalence":0.1,
        "latency_kind":"reported"}]})"),
                 ValidationError);
}

TEST(ParseCatalog, InconsistentRowWarns) {
    const auto cat = parse_catalog(R"({"models":[
        {"name":"A","precision":0.5,"recall":0.84,"fpr":0.05,"prevalence":0.29}]})");
    ASSERT_EQ(cat.warnings().size(), 1u);
    EXPECT_EQ(cat.warnings().front().model, "A");
    EXPECT_EQ(cat.warnings().front().code, "inconsistent-metrics");
}

TEST(ParseCatalog, Benchmark) {
    const auto cat = parse_catalog(R"({"models":[],"benchmark":{"q25":1,"median":2,"q75":3,"mean":10,"prevalence":0.2}})");
    ASSERT_TRUE(cat.benchmark().has_value());
    EXPECT_EQ(cat.benchmark()->times.mean, 10.0);
    EXPECT_THROW(parse_catalog(R"({"models":[],"benchmark":{"q25":1,"median":2,"q75":3,"mean":10}})"),
                 ValidationError);
}

TEST(SerializeCatalog, RoundTrip) {
    const auto original = parse_catalog(R"({"models":[
        {"name":"LineVul","source":"s","precision":0.97,"recall":0.86,"prevalence":0.06},
        {"name":"VulDeePecker","source":"t","precision":0.87,"recall":0.84,"fpr":0.05,"prevalence":0.29,
         "latency_seconds":156,"latency_kind":"reported"},
        {"name":"LineVD","source":"","precision":0.27,"recall":0.53,"prevalence":0.06,
         "latency_seconds":1,"latency_kind":"lower_bound"}],
        "benchmark":{"q25":9.17,"median":27.04,"q75":74.5,"mean":337.83,"prevalence":0.38}})");
    const auto text = serialize_catalog(original);
    const auto reparsed = parse_catalog(text);
    EXPECT_EQ(reparsed, original);
    EXPECT_EQ(serialize_catalog(reparsed), text);
}

TEST(LoadCatalog, FromFile) {
    const auto path = std::filesystem::temp_directory_path() / "pipegate_catalog_test.json";
    {
        std::ofstream out(path);
        out << serialize_catalog(parse_catalog(R"({"models":[{"name":"A","precision":0.5,"recall":0.5,"prevalence":0.1}]})"));
    }
    const auto cat = load_catalog(path);
    EXPECT_EQ(cat.size(), 1u);
    std::filesystem::remove(path);
    EXPECT_THROW(load_catalog(path), ParseError);
}
