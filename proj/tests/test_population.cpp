#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <gcea/population.hpp>

using namespace gcea;

namespace {

Population<BitGenome> with_fitness(std::vector<double> fitness) {
  std::vector<Individual<BitGenome>> members;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    members.push_back({BitGenome{static_cast<std::uint8_t>(i)}, fitness[i]});
  }
  return Population<BitGenome>(std::move(members));
}

}  // namespace

TEST(Population, BestTiesGoToLowestIndex) {
  EXPECT_EQ(with_fitness({0.2, 0.9, 0.9, 0.1}).best_index(), 1u);
  EXPECT_EQ(with_fitness({0.5, 0.5}).best_index(), 0u);
}

TEST(Tournament, FitterCandidateWins) {
  const auto pop = with_fitness({0.9, 0.1});
  Rng rng(1);
  int low_wins = 0;
  for (int i = 0; i < 1000; ++i) {
    if (tournament_select(pop, rng) == 1) ++low_wins;
  }
  // Index 1 wins only when both draws land on it.
  EXPECT_NEAR(low_wins / 1000.0, 0.25, 0.05);
}

TEST(Tournament, SingleMemberAlwaysWins) {
  const auto pop = with_fitness({0.3});
  Rng rng(2);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(tournament_select(pop, rng), 0u);
}

TEST(Tournament, UniformOnEqualFitness) {
  const std::size_t P = 10;
  const auto pop = with_fitness(std::vector<double>(P, 0.5));
  Rng rng(3);
  std::vector<int> hits(P, 0);
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) ++hits[tournament_select(pop, rng)];
  const double sigma = std::sqrt(trials * (1.0 / P) * (1 - 1.0 / P));
  for (const int h : hits) EXPECT_NEAR(h, trials / double(P), 3 * sigma);
}

TEST(Replacement, NeverTouchesTheBest) {
  auto pop = with_fitness({0.9, 0.1, 0.2});
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto victim = replace_random_elitist(pop, Individual<BitGenome>{{7}, 0.0}, rng);
    EXPECT_NE(victim, 0u);
    EXPECT_EQ(pop.best_index(), 0u);
  }
}

TEST(Replacement, FitterOffspringBecomesProtectedBest) {
  auto pop = with_fitness({0.9, 0.1, 0.2});
  Rng rng(5);
  const auto victim = replace_random_elitist(pop, Individual<BitGenome>{{9}, 0.95}, rng);
  EXPECT_EQ(pop.best_index(), victim);
  EXPECT_EQ(pop.best().fitness, 0.95);
  for (int i = 0; i < 100; ++i) {
    EXPECT_NE(replace_random_elitist(pop, Individual<BitGenome>{{1}, 0.0}, rng), victim);
  }
}

TEST(Replacement, MaxFitnessNeverDecreases) {
  auto pop = with_fitness(std::vector<double>(8, 0.0));
  Rng rng(6);
  double best = pop.best().fitness;
  for (int i = 0; i < 10000; ++i) {
    replace_random_elitist(pop, Individual<BitGenome>{{0}, rng.unit()}, rng);
    EXPECT_GE(pop.best().fitness, best);
    best = pop.best().fitness;
  }
}

TEST(Replacement, RejectsSingleton) {
  auto pop = with_fitness({0.5});
  Rng rng(7);
  EXPECT_THROW(replace_random_elitist(pop, Individual<BitGenome>{{0}, 1.0}, rng),
               ConfigurationError);
}
