#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include <gcea/benchmark.hpp>
#include <gcea/error.hpp>

namespace gcea {

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double std_dev = 0.0;  ///< sample standard deviation, n-1 denominator
};

inline SampleSummary summarize(std::span<const double> values) {
  if (values.empty()) throw ParameterError("cannot summarise an empty sample");
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {values.size(), mean, std::sqrt(var)};
}

struct TTestResult {
  double t = 0.0;
  double p = 1.0;  ///< two-sided
  double df = 0.0;
};

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of freedom.
///
/// When both samples have zero variance the test is degenerate: equal means
/// give t = 0, p = 1, different means give t = +/-inf, p = 0.
inline TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw ParameterError("Welch t-test needs at least two values per sample");
  }
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  const double va = sa.std_dev * sa.std_dev / static_cast<double>(sa.count);
  const double vb = sb.std_dev * sb.std_dev / static_cast<double>(sb.count);
  const double diff = sa.mean - sb.mean;
  if (va + vb == 0.0) {
    if (diff == 0.0) return {0.0, 1.0, 0.0};
    return {diff > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity(),
            0.0, 0.0};
  }
  const double se = std::sqrt(va + vb);
  const double t = diff / se;
  const double df = (va + vb) * (va + vb) /
                    (va * va / static_cast<double>(sa.count - 1) +
                     vb * vb / static_cast<double>(sb.count - 1));
  const boost::math::students_t dist(df);
  double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  if (p > 1.0) p = 1.0;
  return {t, p, df};
}

/// A labelled set of best-of-run values sharing one objective direction.
struct ResultSet {
  std::string label;
  Direction direction = Direction::maximise;
  std::vector<double> values;
};

struct ComparisonRow {
  std::string label_a;
  SampleSummary a;
  std::string label_b;
  SampleSummary b;
  double t = 0.0;
  double p = 1.0;
  bool significant = false;
  std::string better;  ///< label with the better mean, empty on an exact tie
};

inline ComparisonRow compare(const ResultSet& a, const ResultSet& b, double alpha = 0.05) {
  if (a.direction != b.direction) {
    throw ParameterError("cannot compare '" + a.label + "' (" + std::string(to_string(a.direction)) +
                         ") with '" + b.label + "' (" + std::string(to_string(b.direction)) + ")");
  }
  ComparisonRow row;
  row.label_a = a.label;
  row.label_b = b.label;
  row.a = summarize(a.values);
  row.b = summarize(b.values);
  const auto test = welch_t_test(a.values, b.values);
  row.t = test.t;
  row.p = test.p;
  row.significant = test.p < alpha;
  const double fa = to_fitness(row.a.mean, a.direction);
  const double fb = to_fitness(row.b.mean, b.direction);
  if (fa > fb) row.better = a.label;
  else if (fb > fa) row.better = b.label;
  return row;
}

}  // namespace gcea
