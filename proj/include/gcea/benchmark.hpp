#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <gcea/error.hpp>

namespace gcea {

enum class Direction { minimise, maximise };

/// Maps a raw objective value onto the engine's maximising scale.
constexpr double to_fitness(double value, Direction direction) noexcept {
  return direction == Direction::maximise ? value : -value;
}

constexpr double from_fitness(double fitness, Direction direction) noexcept {
  return direction == Direction::maximise ? fitness : -fitness;
}

constexpr std::string_view to_string(Direction d) noexcept {
  return d == Direction::maximise ? "maximise" : "minimise";
}

namespace detail {

inline void require_size(std::span<const double> x, std::size_t min_n, const char* name) {
  if (x.size() < min_n) {
    throw DimensionError(std::string(name) + " needs at least " + std::to_string(min_n) +
                         " variable(s), got " + std::to_string(x.size()));
  }
}

}  // namespace detail

inline double sphere(std::span<const double> x) {
  detail::require_size(x, 1, "sphere");
  double sum = 0.0;
  for (const double v : x) sum += v * v;
  return sum;
}

inline double rastrigin(std::span<const double> x) {
  detail::require_size(x, 1, "rastrigin");
  double sum = 10.0 * static_cast<double>(x.size());
  for (const double v : x) sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return sum;
}

inline double rosenbrock(std::span<const double> x) {
  detail::require_size(x, 2, "rosenbrock");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

/// Dixon-Price with 1-based weights: (x1 - 1)^2 + sum_{i>=2} i (2 x_i^2 - x_{i-1})^2.
inline double dixon_price(std::span<const double> x) {
  detail::require_size(x, 2, "dixon_price");
  double sum = (x[0] - 1.0) * (x[0] - 1.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double t = 2.0 * x[i] * x[i] - x[i - 1];
    sum += static_cast<double>(i + 1) * t * t;
  }
  return sum;
}

enum class BenchmarkFunction { sphere, rastrigin, rosenbrock, dixon_price };

constexpr std::string_view to_string(BenchmarkFunction f) noexcept {
  switch (f) {
    case BenchmarkFunction::sphere: return "sphere";
    case BenchmarkFunction::rastrigin: return "rastrigin";
    case BenchmarkFunction::rosenbrock: return "rosenbrock";
    case BenchmarkFunction::dixon_price: return "dixon_price";
  }
  return "?";
}

inline std::optional<BenchmarkFunction> parse_benchmark(std::string_view name) {
  for (auto f : {BenchmarkFunction::sphere, BenchmarkFunction::rastrigin,
                 BenchmarkFunction::rosenbrock, BenchmarkFunction::dixon_price}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

constexpr std::size_t min_dimension(BenchmarkFunction f) noexcept {
  return f == BenchmarkFunction::sphere || f == BenchmarkFunction::rastrigin ? 1 : 2;
}

inline double evaluate(BenchmarkFunction f, std::span<const double> x) {
  switch (f) {
    case BenchmarkFunction::sphere: return sphere(x);
    case BenchmarkFunction::rastrigin: return rastrigin(x);
    case BenchmarkFunction::rosenbrock: return rosenbrock(x);
    case BenchmarkFunction::dixon_price: return dixon_price(x);
  }
  throw ParameterError("unknown benchmark function");
}

/// A benchmark function bound to a dimension. All suite functions minimise.
struct ObjectiveFunction {
  BenchmarkFunction function = BenchmarkFunction::sphere;
  std::size_t n = 1;
  Direction direction = Direction::minimise;

  double operator()(std::span<const double> x) const {
    if (x.size() != n) throw DimensionError("input length does not match objective dimension");
    return evaluate(function, x);
  }
};

}  // namespace gcea
