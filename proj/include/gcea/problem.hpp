#pragma once

#include <concepts>
#include <cstddef>
#include <string>

#include <gcea/benchmark.hpp>
#include <gcea/error.hpp>
#include <gcea/genome.hpp>
#include <gcea/nk_landscape.hpp>
#include <gcea/random.hpp>

namespace gcea {

/// What the engine needs from an optimisation problem.
template <class P>
concept Problem = requires(const P& p, const typename P::genome_type& g, Rng& rng) {
  typename P::genome_type;
  { p.size() } -> std::convertible_to<std::size_t>;
  { p.direction() } -> std::same_as<Direction>;
  { p.evaluate(g) } -> std::convertible_to<double>;
  { p.random_genome(std::size_t{}, rng) } -> std::same_as<typename P::genome_type>;
};

/// NK landscape as a maximisation problem over bit strings. Holds a reference;
/// the landscape must outlive the problem.
class NkProblem {
 public:
  using genome_type = BitGenome;

  explicit NkProblem(const NkLandscape& landscape) : landscape_(&landscape) {}

  std::size_t size() const noexcept { return landscape_->n(); }
  Direction direction() const noexcept { return Direction::maximise; }
  double evaluate(const BitGenome& g) const { return landscape_->evaluate(g); }
  BitGenome random_genome(std::size_t length, Rng& rng) const {
    return random_bit_genome(length, rng);
  }
  const NkLandscape& landscape() const noexcept { return *landscape_; }

 private:
  const NkLandscape* landscape_;
};

/// Benchmark function minimised over [-1, 1]^n.
class BenchmarkProblem {
 public:
  using genome_type = RealGenome;

  BenchmarkProblem(BenchmarkFunction f, std::size_t n) : objective_{f, n, Direction::minimise} {
    if (n < min_dimension(f)) {
      throw ParameterError(std::string(to_string(f)) + " needs n >= " +
                           std::to_string(min_dimension(f)));
    }
  }

  std::size_t size() const noexcept { return objective_.n; }
  Direction direction() const noexcept { return Direction::minimise; }
  double evaluate(const RealGenome& g) const { return objective_(g); }
  RealGenome random_genome(std::size_t length, Rng& rng) const {
    return random_real_genome(length, rng);
  }
  BenchmarkFunction function() const noexcept { return objective_.function; }

 private:
  ObjectiveFunction objective_;
};

static_assert(Problem<NkProblem>);
static_assert(Problem<BenchmarkProblem>);

}  // namespace gcea
