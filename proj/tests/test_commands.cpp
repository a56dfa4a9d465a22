#include <gtest/gtest.h>

#include "commands.hpp"

using namespace qexp;
using namespace qexp::cli;

namespace {

RunConfig config(u64 p, std::vector<i64> coeffs = {}) {
    RunConfig c;
    c.prime = p;
    c.coeffs = std::move(coeffs);
    return c;
}

}  // namespace

TEST(ParseCoeffs, AcceptsIntegersAndRejectsJunk) {
    EXPECT_EQ(parse_coeffs("1,-2, 3 ,0,0,7"), (std::vector<i64>{1, -2, 3, 0, 0, 7}));
    EXPECT_THROW(parse_coeffs("1,x,3"), UsageError);
    EXPECT_THROW(parse_coeffs("1,2.5"), UsageError);
    EXPECT_THROW(parse_coeffs("1,,2"), UsageError);
}

TEST(Eval, ReportsClassificationAndOracle) {
    Report r = cmd_eval(config(7, {1, 0, 0, 0, 0, 1}));
    EXPECT_EQ(r.results["S"], -49);
    EXPECT_EQ(r.results["C"], -1);
    EXPECT_EQ(r.results["waring_type"], "<1,1>");
    EXPECT_EQ(r.results["phi_hat"], "-1/2401");
    EXPECT_EQ(r.results["oracle"]["contraction"], -49);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.exit_code(), kPass);
}

TEST(Eval, RankOneHasNoC) {
    Report r = cmd_eval(config(5, {0, 0, 0, 0, 0, 3}));
    EXPECT_TRUE(r.results["C"].is_null());
    EXPECT_EQ(r.results["S"], 625 - 125);
}

TEST(Eval, UsageErrors) {
    EXPECT_THROW(cmd_eval(config(9, {1, 0, 0, 0, 0, 1})), UsageError);
    EXPECT_THROW(cmd_eval(config(7, {1, 0, 0})), UsageError);
    EXPECT_THROW(cmd_eval(config(0, {1, 0, 0, 0, 0, 1})), UsageError);
}

TEST(Eval, SkipsOracleWhenLarge) {
    Report r = cmd_eval(config(337, {1, 2, 3, 4, 5, 6}));
    EXPECT_FALSE(r.results.contains("oracle"));
    EXPECT_FALSE(r.notes.empty());
    EXPECT_TRUE(r.passed());
}

TEST(Render, AllFormats) {
    Report r = cmd_eval(config(3, {1, 0, 0, 0, 0, 1}));
    const std::string json = render(r, Format::json);
    EXPECT_TRUE(Json::accept(json));
    const std::string csv = render(r, Format::csv);
    EXPECT_EQ(csv.rfind("name,expected,actual,pass\n", 0), 0u);
    const std::string md = render(r, Format::md);
    EXPECT_NE(md.find("# eval (p = 3)"), std::string::npos);
    EXPECT_NE(md.find("| quantity | value |"), std::string::npos);
}

TEST(Verify, ExhaustiveSmallPrimesPass) {
    for (u64 p : {2, 3}) {
        Report r = cmd_verify(config(p));
        EXPECT_TRUE(r.passed()) << render(r, Format::md);
        EXPECT_EQ(r.results["evaluated"], p * p * p * p * p * p);
        EXPECT_EQ(r.results["mismatch_count"], 0);
    }
}

TEST(Verify, ThreadCountDoesNotChangeTheReport) {
    RunConfig a = config(13);
    a.scope = "sample";
    a.count = 150;
    a.seed = 9;
    RunConfig b = a;
    b.jobs = 4;
    EXPECT_EQ(to_json(cmd_verify(a)).dump(), to_json(cmd_verify(b)).dump());
}

TEST(Verify, BudgetAndScope) {
    RunConfig c = config(11);
    c.budget = 1e6;
    EXPECT_THROW(cmd_verify(c), BudgetExceeded);
    c.scope = "most";
    EXPECT_THROW(cmd_verify(c), UsageError);
}

TEST(Table, SmallPrimesPass) {
    for (u64 p : {2, 3}) {
        Report r = cmd_table(config(p));
        EXPECT_TRUE(r.passed()) << render(r, Format::md);
    }
}

TEST(Examples, ChecksPassWhilePrintedDisagreementsAreReported) {
    Report r = cmd_examples(RunConfig{});
    EXPECT_TRUE(r.passed()) << render(r, Format::md);
    const std::string md = render(r, Format::md);
    EXPECT_NE(md.find("DISAGREE"), std::string::npos);
    EXPECT_NE(md.find("AGREE"), std::string::npos);
}

TEST(Scan, QuinticBoundHolds) {
    RunConfig c = config(5);
    Report r = cmd_scan(c);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.results["exhaustive"], true);
    c.degree = 9;
    EXPECT_THROW(cmd_scan(c), UsageError);
}
