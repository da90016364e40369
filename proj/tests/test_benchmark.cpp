#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <gcea/benchmark.hpp>
#include <gcea/genome.hpp>
#include <gcea/problem.hpp>

#include "benchmark_oracle.hpp"

using namespace gcea;
using namespace gcea::testing;

TEST(Sphere, Definition) {
  EXPECT_EQ(sphere(std::vector<double>(7, 0.0)), 0.0);
  EXPECT_EQ(sphere(std::vector<double>{1.0, -1.0}), 2.0);
  EXPECT_THROW(sphere(std::vector<double>{}), DimensionError);
}

TEST(Rastrigin, Definition) {
  EXPECT_EQ(rastrigin(std::vector<double>(5, 0.0)), 0.0);
  EXPECT_NEAR(rastrigin(std::vector<double>(4, 1.0)), 4.0, 1e-12);
  EXPECT_THROW(rastrigin(std::vector<double>{}), DimensionError);
}

TEST(Rosenbrock, Definition) {
  EXPECT_EQ(rosenbrock(std::vector<double>(6, 1.0)), 0.0);
  EXPECT_EQ(rosenbrock(std::vector<double>{0.0, 0.0}), 1.0);
  EXPECT_THROW(rosenbrock(std::vector<double>{1.0}), DimensionError);
}

TEST(DixonPrice, Definition) {
  EXPECT_NEAR(dixon_price(std::vector<double>{1.0, std::pow(2.0, -0.5)}), 0.0, 1e-12);
  EXPECT_EQ(dixon_price(std::vector<double>{0.0, 0.0}), 1.0);
  EXPECT_THROW(dixon_price(std::vector<double>{0.5}), DimensionError);
}

TEST(Benchmarks, MatchOracles) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_real_genome(5, rng);
    EXPECT_NEAR(sphere(x), sphere_oracle(x), 1e-12);
    EXPECT_NEAR(rastrigin(x), rastrigin_oracle(x), 1e-12);
    EXPECT_NEAR(rosenbrock(x), rosenbrock_oracle(x), 1e-12);
    EXPECT_NEAR(dixon_price(x), dixon_price_oracle(x), 1e-12);
  }
}

TEST(Benchmarks, NonNegativeOnDomain) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = random_real_genome(1 + trial % 12 + 1, rng);
    for (const auto f : {BenchmarkFunction::sphere, BenchmarkFunction::rastrigin,
                         BenchmarkFunction::rosenbrock, BenchmarkFunction::dixon_price}) {
      const double v = evaluate(f, x);
      EXPECT_TRUE(std::isfinite(v));
      EXPECT_GE(v, 0.0);
    }
  }
}

TEST(Benchmarks, SeparableFunctionsChangeOneTerm) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_real_genome(8, rng);
    const std::size_t i = rng.index(8);
    const double old = x[i];
    const double before_s = sphere(x);
    const double before_r = rastrigin(x);
    x[i] = rng.uniform(-1.0, 1.0);
    const auto term_r = [](double v) { return v * v - 10.0 * std::cos(2.0 * M_PI * v); };
    EXPECT_NEAR(sphere(x) - before_s, x[i] * x[i] - old * old, 1e-12);
    EXPECT_NEAR(rastrigin(x) - before_r, term_r(x[i]) - term_r(old), 1e-12);
  }
}

TEST(ToFitness, DirectionHandling) {
  EXPECT_EQ(to_fitness(3.5, Direction::minimise), -3.5);
  EXPECT_EQ(to_fitness(0.7, Direction::maximise), 0.7);
  EXPECT_GT(to_fitness(1.0, Direction::minimise), to_fitness(2.0, Direction::minimise));
  EXPECT_EQ(from_fitness(to_fitness(2.25, Direction::minimise), Direction::minimise), 2.25);
}

TEST(Benchmarks, NamesRoundTrip) {
  for (const auto f : {BenchmarkFunction::sphere, BenchmarkFunction::rastrigin,
                       BenchmarkFunction::rosenbrock, BenchmarkFunction::dixon_price}) {
    EXPECT_EQ(parse_benchmark(to_string(f)), f);
  }
  EXPECT_FALSE(parse_benchmark("ackley"));
}

TEST(BenchmarkProblem, ChecksDimension) {
  EXPECT_THROW(BenchmarkProblem(BenchmarkFunction::rosenbrock, 1), ParameterError);
  const BenchmarkProblem p(BenchmarkFunction::sphere, 3);
  EXPECT_THROW(p.evaluate(RealGenome{1.0}), DimensionError);
  EXPECT_EQ(p.direction(), Direction::minimise);
}
