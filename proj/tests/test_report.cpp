#include "ellgreen/acceptance.hpp"
#include "ellgreen/report.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ellgreen;

TEST(Report, SchemaAndStringNumbers) {
    PrecisionContext ctx(128);
    CheckReport c = make_report("dist", make_scalar<BigReal>(1, ctx) / 1000, make_scalar<BigReal>(1, ctx) / 100, 128);
    c.inputs = {{"n", "3"}};
    c.outputs = {{"lhs", "1.5"}};
    Json j = to_json(to_report(c, "check"));
    EXPECT_EQ(j["command"], "check");
    EXPECT_EQ(j["inputs"]["check"], "dist");
    EXPECT_EQ(j["inputs"]["n"], "3");
    EXPECT_EQ(j["outputs"]["lhs"], "1.5");
    EXPECT_TRUE(j["residual"].is_string());
    EXPECT_TRUE(j["tolerance"].is_string());
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["bits"], "128");
    EXPECT_EQ(j["version"], kVersion);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "inputs", "outputs", "residual", "tolerance", "passed", "bits",
                                              "version"}));
}

TEST(Report, FailingResidual) {
    PrecisionContext ctx(128);
    CheckReport c = make_report("x", make_scalar<BigReal>(1, ctx), make_scalar<BigReal>(1, ctx) / 2, 128);
    EXPECT_FALSE(c.passed);
}

TEST(Report, NdjsonIsOneLinePerObject) {
    Report r;
    r.command = "phi";
    r.bits = 256;
    std::ostringstream os;
    write_ndjson(os, r);
    write_ndjson(os, r);
    std::string s = os.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
    EXPECT_EQ(Json::parse(s.substr(0, s.find('\n')))["command"], "phi");
}

TEST(Report, SeededPointsAreDeterministic) {
    auto a = seeded_torsion_points(kDefaultSeed, 20);
    auto b = seeded_torsion_points(kDefaultSeed, 20);
    ASSERT_EQ(a.size(), 20u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].p1, b[i].p1);
        EXPECT_EQ(a[i].p2, b[i].p2);
        EXPECT_EQ(a[i].q, b[i].q);
        EXPECT_FALSE(a[i].is_zero());
        EXPECT_GE(a[i].q, 2);
        EXPECT_LE(a[i].q, 12);
    }
}

TEST(Report, CriterionSerializationIsStable) {
    AcceptanceOptions o;
    auto a = run_criterion(criteria()[0], o);
    auto b = run_criterion(criteria()[0], o);
    EXPECT_EQ(serialize({a}), serialize({b}));
    EXPECT_TRUE(a.report.passed);
}
