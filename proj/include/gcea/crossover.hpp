#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gcea/error.hpp>
#include <gcea/genome.hpp>
#include <gcea/random.hpp>

namespace gcea {

/// Ring positions used by global crossover, sorted ascending, one per segment.
/// `segment_parents[s]` identifies the parent that donates segment `s`.
struct CrossoverPlan {
  std::vector<std::size_t> points;
  std::vector<std::size_t> segment_parents;
};

/// Half-open ring interval [start, start + length) taken modulo the genome length.
struct Segment {
  std::size_t start = 0;
  std::size_t length = 0;
};

namespace detail {

template <class A>
void require_same_length(const Genome<A>& a, const Genome<A>& b) {
  if (a.size() != b.size()) {
    throw DimensionError("parent lengths differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

}  // namespace detail

/// Head of `p1` (positions < cut) followed by the tail of `p2`.
template <class A>
Genome<A> one_point_crossover_at(const Genome<A>& p1, const Genome<A>& p2, std::size_t cut) {
  detail::require_same_length(p1, p2);
  if (cut < 1 || cut >= p1.size()) {
    throw ParameterError("one-point cut " + std::to_string(cut) + " outside [1, n-1]");
  }
  Genome<A> child(p1.begin(), p1.begin() + static_cast<std::ptrdiff_t>(cut));
  child.insert(child.end(), p2.begin() + static_cast<std::ptrdiff_t>(cut), p2.end());
  return child;
}

/// Single offspring from a cut drawn uniformly from {1..n-1}.
template <class A>
Genome<A> one_point_crossover(const Genome<A>& p1, const Genome<A>& p2, Rng& rng) {
  detail::require_same_length(p1, p2);
  if (p1.size() < 2) throw DimensionError("one-point crossover needs n >= 2");
  return one_point_crossover_at(p1, p2, rng.between(1, p1.size() - 1));
}

/// Two-parent crossover with several cuts: alleles alternate between the
/// parents across consecutive blocks, starting with `p1`. `cuts` must be
/// strictly increasing and inside [1, n-1].
template <class A>
Genome<A> k_point_crossover_at(const Genome<A>& p1, const Genome<A>& p2,
                               std::span<const std::size_t> cuts) {
  detail::require_same_length(p1, p2);
  const std::size_t n = p1.size();
  Genome<A> child(n);
  std::size_t from = 0;
  bool use_first = true;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const std::size_t to = i < cuts.size() ? cuts[i] : n;
    if (to < from || to > n || (i < cuts.size() && (to == 0 || to == n || to == from))) {
      throw ParameterError("k-point cuts must be strictly increasing inside [1, n-1]");
    }
    const auto& src = use_first ? p1 : p2;
    std::copy(src.begin() + static_cast<std::ptrdiff_t>(from),
              src.begin() + static_cast<std::ptrdiff_t>(to),
              child.begin() + static_cast<std::ptrdiff_t>(from));
    use_first = !use_first;
    from = to;
  }
  return child;
}

/// `count` distinct cut positions from {1..n-1}, sorted. Uses Floyd's
/// sampling, so a single cut is drawn exactly as one_point_crossover draws it.
inline std::vector<std::size_t> sample_cuts(std::size_t n, std::size_t count, Rng& rng) {
  if (n < 2 || count < 1 || count > n - 1) {
    throw ParameterError("crossover points must lie in [1, n-1], got " +
                         std::to_string(count) + " for n = " + std::to_string(n));
  }
  const std::size_t m = n - 1;
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  for (std::size_t j = m - count + 1; j <= m; ++j) {
    const std::size_t t = rng.between(1, j);
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

template <class A>
Genome<A> k_point_crossover(const Genome<A>& p1, const Genome<A>& p2, std::size_t points,
                            Rng& rng) {
  detail::require_same_length(p1, p2);
  const auto cuts = sample_cuts(p1.size(), points, rng);
  return k_point_crossover_at(p1, p2, std::span<const std::size_t>(cuts));
}

/// `s` independent uniform positions in {0..n-1}, duplicates allowed, sorted.
inline std::vector<std::size_t> make_random_plan(std::size_t n, std::size_t s, Rng& rng) {
  if (s < 1 || s > n) {
    throw ParameterError("s must lie in [1, n], got s = " + std::to_string(s) +
                         " for n = " + std::to_string(n));
  }
  std::vector<std::size_t> points(s);
  for (auto& p : points) p = rng.index(n);
  std::sort(points.begin(), points.end());
  return points;
}

/// Equally spaced points 0, n/s, ..., (s-1)n/s from the leftmost variable.
inline std::vector<std::size_t> make_fixed_plan(std::size_t n, std::size_t s) {
  if (s < 1 || s > n) {
    throw ParameterError("s must lie in [1, n], got s = " + std::to_string(s) +
                         " for n = " + std::to_string(n));
  }
  if (n % s != 0) {
    throw ParameterError("fixed crossover spacing requires s to divide n (n = " +
                         std::to_string(n) + ", s = " + std::to_string(s) + ")");
  }
  std::vector<std::size_t> points(s);
  for (std::size_t i = 0; i < s; ++i) points[i] = i * (n / s);
  return points;
}

/// Ring segments for sorted `points`: segment s runs from points[s] up to the
/// next point, the last one wrapping around to points[0]. Duplicate points
/// give empty segments.
inline std::vector<Segment> plan_segments(std::span<const std::size_t> points, std::size_t n) {
  if (points.empty()) throw DimensionError("crossover plan has no points");
  std::vector<Segment> segments(points.size());
  for (std::size_t s = 0; s < points.size(); ++s) {
    if (points[s] >= n) throw DimensionError("crossover point outside genome");
    if (s > 0 && points[s] < points[s - 1]) throw DimensionError("crossover points not sorted");
    const std::size_t next = s + 1 < points.size() ? points[s + 1] : points[0] + n;
    segments[s] = {points[s], next - points[s]};
  }
  return segments;
}

/// Global crossover over a ring. `parent_of(s)` returns the genome donating
/// segment s; it is called once per segment, in segment order.
template <class A, class ParentOf>
Genome<A> global_crossover(std::span<const std::size_t> points, std::size_t n,
                           ParentOf&& parent_of) {
  const auto segments = plan_segments(points, n);
  Genome<A> child(n);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const Genome<A>& parent = parent_of(s);
    if (parent.size() != n) throw DimensionError("parent length differs from plan length");
    for (std::size_t i = 0; i < segments[s].length; ++i) {
      const std::size_t pos = (segments[s].start + i) % n;
      child[pos] = parent[pos];
    }
  }
  return child;
}

template <class A>
Genome<A> global_crossover(std::span<const std::size_t> points,
                           std::span<const Genome<A>> parents) {
  if (parents.size() != points.size()) {
    throw DimensionError("global crossover needs one parent per point (" +
                         std::to_string(points.size()) + " points, " +
                         std::to_string(parents.size()) + " parents)");
  }
  return global_crossover<A>(points, parents.front().size(),
                             [&](std::size_t s) -> const Genome<A>& { return parents[s]; });
}

/// Applies a plan whose `segment_parents` index into `pool`.
template <class A>
Genome<A> global_crossover(const CrossoverPlan& plan, std::span<const Genome<A>> pool) {
  if (plan.segment_parents.size() != plan.points.size()) {
    throw DimensionError("crossover plan needs one parent per segment");
  }
  if (pool.empty()) throw DimensionError("empty parent pool");
  return global_crossover<A>(std::span<const std::size_t>(plan.points), pool.front().size(),
                             [&](std::size_t s) -> const Genome<A>& {
                               const std::size_t id = plan.segment_parents[s];
                               if (id >= pool.size()) throw DimensionError("unknown parent id");
                               return pool[id];
                             });
}

}  // namespace gcea
