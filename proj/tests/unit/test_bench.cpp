#include <gtest/gtest.h>

#include <algorithm>

#include "hcp/bench.hpp"
#include "hcp/error.hpp"

namespace bench = hcp::bench;

TEST(BenchSpec, Parse) {
    const auto s = bench::parse_spec("solvers=rand,gapped;n=16,32;m=12;delta=0.1,0.2;reps=2;seed=9;early_exit=off");
    EXPECT_EQ(s.solvers, (std::vector<std::string>{"rand", "gapped"}));
    EXPECT_EQ(s.ns, (std::vector<std::size_t>{16, 32}));
    EXPECT_EQ(s.ms, (std::vector<std::size_t>{12}));
    EXPECT_EQ(s.deltas.size(), 2U);
    EXPECT_EQ(s.reps, 2U);
    EXPECT_EQ(s.seed, 9U);
    EXPECT_EQ(s.early_exit, std::optional<bool>(false));
    EXPECT_THROW((void)bench::parse_spec("bogus=1"), hcp::ParseError);
    EXPECT_THROW((void)bench::parse_spec("n=abc"), hcp::ParseError);
}

TEST(Bench, RunsGridAndVerifies) {
    auto s = bench::parse_spec("solvers=rand,det,gapped,search;n=16;m=12;delta=0.15;reps=2;seed=1;early_exit=off");
    const auto rows = bench::run(s);
    ASSERT_EQ(rows.size(), 4U);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.error.empty()) << r.solver << ": " << r.error;
        EXPECT_EQ(r.dmin, 2U);
        EXPECT_EQ(r.runs, 2U);
        EXPECT_EQ(r.checked, 2U);
        ASSERT_TRUE(r.success_rate().has_value());
        EXPECT_DOUBLE_EQ(*r.success_rate(), 1.0);
    }
    EXPECT_TRUE(rows[0].trials_match_plan);
    const auto tsv = bench::format(rows);
    EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 5);
}

TEST(Bench, RecordsCellErrors) {
    const auto rows = bench::run(bench::parse_spec("solvers=rand;n=8;m=4;delta=0.9;reps=1"));
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_FALSE(rows[0].error.empty());
    EXPECT_FALSE(rows[0].success_rate().has_value());
}

TEST(Bench, UnknownSolverIsACellError) {
    const auto rows = bench::run(bench::parse_spec("solvers=fast;n=8;m=8;delta=0.2;reps=1"));
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_FALSE(rows[0].error.empty());
}
