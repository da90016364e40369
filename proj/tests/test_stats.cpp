#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <gcea/random.hpp>
#include <gcea/stats.hpp>

#include "welch_reference.hpp"

using namespace gcea;

TEST(Summarize, Basics) {
  const auto s = summarize(std::vector<double>{1, 1, 1});
  EXPECT_EQ(s.mean, 1.0);
  EXPECT_EQ(s.std_dev, 0.0);
  const auto t = summarize(std::vector<double>{0, 2});
  EXPECT_EQ(t.mean, 1.0);
  EXPECT_NEAR(t.std_dev, std::sqrt(2.0), 1e-15);
  EXPECT_THROW(summarize(std::vector<double>{}), ParameterError);
}

TEST(Summarize, PermutationInvariant) {
  std::vector<double> v{0.25, 0.5, 0.125, 2.0, 4.0, 1.0};
  const auto a = summarize(v);
  std::sort(v.begin(), v.end());
  do {
    const auto b = summarize(v);
    EXPECT_DOUBLE_EQ(a.mean, b.mean);
    EXPECT_NEAR(a.std_dev, b.std_dev, 1e-14);
  } while (std::next_permutation(v.begin(), v.end()));
}

TEST(Welch, MatchesReferenceValues) {
  for (const auto& ref : gcea::testing::welch_references()) {
    const auto r = welch_t_test(ref.a, ref.b);
    EXPECT_NEAR(r.t, ref.t, 1e-6);
    EXPECT_NEAR(r.p, ref.p, 1e-6);
  }
}

TEST(Welch, IdenticalSamples) {
  const std::vector<double> a{0.3, 0.5, 0.4, 0.45};
  const auto r = welch_t_test(a, a);
  EXPECT_EQ(r.t, 0.0);
  EXPECT_NEAR(r.p, 1.0, 1e-12);
}

TEST(Welch, SwapNegatesT) {
  for (const auto& ref : gcea::testing::welch_references()) {
    const auto ab = welch_t_test(ref.a, ref.b);
    const auto ba = welch_t_test(ref.b, ref.a);
    EXPECT_DOUBLE_EQ(ab.t, -ba.t);
    EXPECT_DOUBLE_EQ(ab.p, ba.p);
  }
}

TEST(Welch, ShiftAndScaleInvariance) {
  for (const auto& ref : gcea::testing::welch_references()) {
    const auto base = welch_t_test(ref.a, ref.b);
    auto a = ref.a, b = ref.b;
    for (auto& v : a) v = 3.0 * v + 100.0;
    for (auto& v : b) v = 3.0 * v + 100.0;
    const auto moved = welch_t_test(a, b);
    EXPECT_NEAR(moved.t, base.t, 1e-8 * std::max(1.0, std::fabs(base.t)));
    EXPECT_NEAR(moved.p, base.p, 1e-8);
  }
}

TEST(Welch, DegenerateConventions) {
  const std::vector<double> ones{1, 1, 1}, twos{2, 2, 2};
  const auto same = welch_t_test(ones, ones);
  EXPECT_EQ(same.t, 0.0);
  EXPECT_EQ(same.p, 1.0);
  const auto diff = welch_t_test(twos, ones);
  EXPECT_TRUE(std::isinf(diff.t) && diff.t > 0);
  EXPECT_EQ(diff.p, 0.0);
  EXPECT_THROW(welch_t_test(std::vector<double>{1}, twos), ParameterError);
}

TEST(Welch, PValuesInUnitInterval) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(2 + rng.index(40)), b(2 + rng.index(40));
    for (auto& v : a) v = rng.uniform(0, 1);
    for (auto& v : b) v = rng.uniform(0, 1) + 0.1 * (trial % 5);
    const auto r = welch_t_test(a, b);
    EXPECT_TRUE(std::isfinite(r.t));
    EXPECT_GE(r.p, 0.0);
    EXPECT_LE(r.p, 1.0);
  }
}

TEST(Compare, IdenticalSetsAreNotSignificant) {
  const ResultSet a{"ea", Direction::maximise, {0.61, 0.62, 0.60, 0.64}};
  const auto row = compare(a, a);
  EXPECT_FALSE(row.significant);
  EXPECT_TRUE(row.better.empty());
}

TEST(Compare, SeparatedSetsAreSignificant) {
  Rng rng(2);
  ResultSet a{"low", Direction::maximise, {}}, b{"high", Direction::maximise, {}};
  for (int i = 0; i < 30; ++i) {
    a.values.push_back(0.0 + rng.uniform(-0.01, 0.01));
    b.values.push_back(1.0 + rng.uniform(-0.01, 0.01));
  }
  const auto row = compare(a, b);
  EXPECT_TRUE(row.significant);
  EXPECT_EQ(row.better, "high");
  a.direction = b.direction = Direction::minimise;
  EXPECT_EQ(compare(a, b).better, "low");
}

TEST(Compare, AlphaThreshold) {
  const ResultSet a{"a", Direction::maximise, {0.5, 0.6, 0.55}};
  const ResultSet b{"b", Direction::maximise, {0.52, 0.61, 0.57}};
  const auto row = compare(a, b, 1.0);
  EXPECT_LT(row.p, 1.0);
  EXPECT_TRUE(row.significant);
}

TEST(Compare, DirectionMismatch) {
  const ResultSet a{"a", Direction::maximise, {0.5, 0.6}};
  const ResultSet b{"b", Direction::minimise, {0.5, 0.6}};
  EXPECT_THROW(compare(a, b), ParameterError);
}
