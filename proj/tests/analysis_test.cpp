#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tes/analysis.hpp"
#include "tes/error.hpp"

namespace tes {
namespace {

TEST(IncSets, ExhaustiveMatchesBruteForce) {
  for (unsigned w : {3u, 5u, 8u}) {
    const IncSetTable t = compute_inc_sets(w, (1u << w) - 1, Exec::serial);
    for (std::uint64_t r = 0; r < (1u << w); ++r) {
      const auto want = testing::oracle_y_set(w, r);
      ASSERT_EQ(std::vector<std::uint64_t>(want.begin(), want.end()),
                std::vector<std::uint64_t>(t.y_sets[r].begin(), t.y_sets[r].end()));
    }
  }
}

TEST(IncSets, SerialAndParallelAgree) {
  const IncSetTable a = compute_inc_sets(12, 4095, Exec::serial);
  const IncSetTable b = compute_inc_sets(12, 4095, Exec::parallel);
  EXPECT_EQ(a.y_sets, b.y_sets);
  EXPECT_EQ(a.w_sets, b.w_sets);
  EXPECT_EQ(a.w_max, b.w_max);
}

// Frozen values from a brute-force enumeration run ahead of the build.
TEST(IncSets, FrozenWMax) {
  EXPECT_EQ(compute_inc_sets(8, 255).w_max, 8u);
  EXPECT_EQ(compute_inc_sets(12, 4095).w_max, 12u);
}

TEST(IncSets, PartitionInvariants) {
  const IncSetTable t = compute_inc_sets(8, 255);
  std::set<std::uint32_t> seen;
  for (std::uint64_t r = 0; r <= 255; ++r) {
    for (std::uint32_t d : t.w_sets[r]) {
      EXPECT_TRUE(seen.insert(d).second) << "W sets overlap at r=" << r;
    }
    for (std::uint32_t d : t.y_sets[r]) EXPECT_TRUE(seen.count(d));
  }
  EXPECT_EQ(seen.size(), 256u);
  EXPECT_EQ(t.y_sets[0], std::vector<std::uint32_t>{0});
}

TEST(IncSets, Bounds) {
  EXPECT_THROW(compute_inc_sets(17, 1), Error);
  EXPECT_THROW(compute_inc_sets(8, 256), Error);
  EXPECT_THROW(carry_class_y_set(33, 1), Error);
}

TEST(CarryClass, MatchesExhaustive) {
  for (unsigned w : {4u, 8u, 10u}) {
    for (std::uint64_t r = 0; r < (1u << w); ++r) {
      const auto want = testing::oracle_y_set(w, r);
      const auto got = carry_class_y_set(w, r);
      ASSERT_EQ(std::vector<std::uint64_t>(want.begin(), want.end()), got) << "w=" << w << " r=" << r;
      for (std::uint64_t d = 0; d < (1u << w); ++d) {
        ASSERT_EQ(carry_class_contains(w, r, d), want.count(d) == 1);
      }
    }
  }
}

TEST(CarryClass, MinOffsetIndexMatchesScan) {
  for (unsigned w : {4u, 8u, 10u}) {
    const std::uint64_t m = std::uint64_t{1} << w;
    std::vector<std::uint64_t> first(m, m);
    for (std::uint64_t r = 0; r < m; ++r) {
      for (std::uint64_t d : testing::oracle_y_set(w, r)) first[d] = std::min(first[d], r);
    }
    for (std::uint64_t d = 0; d < m; ++d) ASSERT_EQ(min_offset_index(w, d), first[d]) << w << " " << d;
  }
}

TEST(CarryClass, SampledCountsMatchExhaustiveAtWidth12) {
  const IncSetTable t = compute_inc_sets(12, 4095);
  const IncSampleReport s = sample_inc_sets(12, 4095, 0, 1, Exec::serial);
  ASSERT_EQ(s.samples.size(), 4096u);
  for (const IncSample& x : s.samples) {
    ASSERT_EQ(x.y_count, t.y_sets[x.r].size());
    ASSERT_EQ(x.w_count, t.w_sets[x.r].size());
  }
  EXPECT_EQ(s.max_w, t.w_max);
}

TEST(CarryClass, Width32Sampling) {
  const IncSampleReport a = sample_w32(1u << 10, 64, 3, Exec::serial);
  const IncSampleReport b = sample_w32(1u << 10, 64, 3, Exec::parallel);
  ASSERT_EQ(a.samples.size(), 64u);
  EXPECT_EQ(a.samples.front().r, 0u);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].r, b.samples[i].r);
    EXPECT_EQ(a.samples[i].w_count, b.samples[i].w_count);
    EXPECT_LE(a.samples[i].w_count, 32u);
  }
}

TEST(Bounds, CountExpressions) {
  EXPECT_EQ(parse_count_expr("2^30"), u128{1} << 30);
  EXPECT_EQ(parse_count_expr("2^38+2^30"), (u128{1} << 38) + (u128{1} << 30));
  EXPECT_EQ(parse_count_expr("257"), u128{257});
  EXPECT_EQ(parse_count_expr("2^127"), u128{1} << 127);
  EXPECT_THROW(parse_count_expr(""), Error);
  EXPECT_THROW(parse_count_expr("3^4"), Error);
  EXPECT_THROW(parse_count_expr("2^128"), Error);
  EXPECT_THROW(parse_count_expr("2^127+2^127"), Error);
  EXPECT_THROW(parse_count_expr("2^30+"), Error);
}

TEST(Bounds, Validation) {
  BoundParams p = default_bound_params();
  EXPECT_NO_THROW(validate(p));
  p.sigma = p.q - 1;
  EXPECT_THROW(validate(p), Error);
  EXPECT_THROW(eval_bound("nope", default_bound_params()), Error);
}

TEST(Bounds, PhiOfMersenne) {
  // phi(2^16 - 1) = 2 * 4 * 16 * 256
  EXPECT_EQ(phi_mersenne(16), "32768");
  EXPECT_EQ(phi_mersenne(32), std::to_string(2ull * 4 * 16 * 256 * 65536));
  EXPECT_THROW(phi_mersenne(12), Error);
}

TEST(Bounds, ClosedFormsAtSmallSizes) {
  // With sigma = 2^a, q = 2^b and n chosen freely the log2 values are exact.
  BoundParams p;
  p.q = u128{1} << 10;
  p.sigma = u128{1} << 20;
  p.ell = 2;
  p.n = 64;
  EXPECT_NEAR(eval_bound("cmc", p).advantage_log2, std::log2(7.0) + 40 - 64, 1e-12);
  EXPECT_NEAR(eval_bound("hctr", p).advantage_log2, std::log2(4.5) + 40 - 64, 1e-12);
  EXPECT_NEAR(eval_bound("xcb-2007", p).advantage_log2, 3 + 20 + 4 - 64, 1e-12);
  EXPECT_NEAR(eval_bound("xcbv1-repaired", p).advantage_log2, std::log2(35.0) + 1 + 10 + 20 - 64, 1e-12);
  EXPECT_NEAR(eval_bound("mxcbv1", p).advantage_log2, std::log2(2.5 * 0x1p20 + 0x1p40) - 64, 1e-12);
}

TEST(Bounds, ReportShape) {
  const BoundReport r = table1_report(default_bound_params());
  ASSERT_EQ(r.rows.size(), 12u);
  EXPECT_EQ(r.rows.front().label, "TET");
  EXPECT_EQ(r.rows.back().label, "MXCBv1");
  const std::string s = r.to_structured();
  EXPECT_NE(s.find("row.0.scheme=tet\n"), std::string::npos);
  EXPECT_NE(s.find("row.11.advantage_log2="), std::string::npos);
  EXPECT_EQ(r.to_text(), table1_report(default_bound_params()).to_text());
}

}  // namespace
}  // namespace tes
