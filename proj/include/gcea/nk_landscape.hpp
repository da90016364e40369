#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gcea/error.hpp>
#include <gcea/genome.hpp>
#include <gcea/random.hpp>

namespace gcea {

/// Default cap on table storage: n * 2^(k+1) doubles must fit in 2 GiB.
inline constexpr std::uint64_t default_table_cap_bytes = 2ULL << 30;

/// Kauffman's NK landscape with random neighbours.
///
/// Gene i's contribution is `tables[i][index]`, where `index` packs gene i's
/// own allele as the most significant bit followed by the alleles of
/// `neighbors[i]` in stored order. The fitness of a genome is the mean of the
/// n contributions.
class NkLandscape {
 public:
  NkLandscape() = default;

  /// Builds a landscape from explicit data, checking every invariant.
  NkLandscape(std::size_t n, std::size_t k, std::uint64_t seed,
              std::vector<std::vector<std::size_t>> neighbors,
              std::vector<std::vector<double>> tables)
      : n_(n), k_(k), seed_(seed), neighbors_(std::move(neighbors)), tables_(std::move(tables)) {
    validate();
  }

  /// Neighbours of gene i are k distinct genes other than i, drawn uniformly
  /// without replacement; table entries are independent uniform draws in [0, 1).
  static NkLandscape generate(std::size_t n, std::size_t k, std::uint64_t seed,
                              std::uint64_t cap_bytes = default_table_cap_bytes) {
    check_parameters(n, k, cap_bytes);
    Rng rng(seed);
    NkLandscape land;
    land.n_ = n;
    land.k_ = k;
    land.seed_ = seed;
    land.neighbors_.resize(n);
    land.tables_.resize(n);
    std::vector<std::size_t> others(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
      // others = {0..n-1} \ {i}; partial Fisher-Yates picks the first k.
      for (std::size_t j = 0, v = 0; v < n; ++v) {
        if (v != i) others[j++] = v;
      }
      for (std::size_t j = 0; j < k; ++j) {
        std::swap(others[j], others[j + rng.index(others.size() - j)]);
      }
      land.neighbors_[i].assign(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k));
    }
    const std::size_t width = std::size_t{1} << (k + 1);
    for (auto& table : land.tables_) {
      table.resize(width);
      for (auto& v : table) v = rng.unit();
    }
    return land;
  }

  /// Throws ParameterError unless 1 <= n and k <= n-1, ResourceError when
  /// the tables would exceed `cap_bytes`.
  static void check_parameters(std::size_t n, std::size_t k,
                               std::uint64_t cap_bytes = default_table_cap_bytes) {
    if (n < 1) throw ParameterError("NK landscape needs n >= 1");
    if (k >= n) {
      throw ParameterError("NK landscape requires k <= n-1 (n = " + std::to_string(n) +
                           ", k = " + std::to_string(k) + ")");
    }
    const std::uint64_t entry_bytes = sizeof(double);
    const bool too_big = k + 1 >= 58 ||
                         static_cast<unsigned __int128>(n) * (1ULL << (k + 1)) * entry_bytes >
                             cap_bytes;
    if (too_big) {
      throw ResourceError("NK tables for n = " + std::to_string(n) + ", k = " +
                          std::to_string(k) + " exceed the memory cap of " +
                          std::to_string(cap_bytes) + " bytes");
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::vector<std::size_t>>& neighbors() const noexcept { return neighbors_; }
  const std::vector<std::vector<double>>& tables() const noexcept { return tables_; }

  /// Table index of gene i: own allele first (most significant), then neighbours.
  std::size_t table_index(std::size_t gene, std::span<const std::uint8_t> genome) const {
    std::size_t index = genome[gene] & 1U;
    for (const std::size_t j : neighbors_[gene]) index = (index << 1) | (genome[j] & 1U);
    return index;
  }

  double contribution(std::size_t gene, std::span<const std::uint8_t> genome) const {
    check_length(genome);
    if (gene >= n_) {
      throw DimensionError("gene index " + std::to_string(gene) + " outside [0, " +
                           std::to_string(n_) + ")");
    }
    return tables_[gene][table_index(gene, genome)];
  }

  double evaluate(std::span<const std::uint8_t> genome) const {
    check_length(genome);
    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) sum += tables_[i][table_index(i, genome)];
    return sum / static_cast<double>(n_);
  }

  friend bool operator==(const NkLandscape&, const NkLandscape&) = default;

 private:
  void check_length(std::span<const std::uint8_t> genome) const {
    if (genome.size() != n_) {
      throw DimensionError("genome length " + std::to_string(genome.size()) +
                           " does not match landscape n = " + std::to_string(n_));
    }
  }

  void validate() const {
    if (n_ < 1 || k_ >= n_) {
      throw ParameterError("NK landscape requires n >= 1 and k <= n-1");
    }
    if (neighbors_.size() != n_) throw FormatError("neighbors: expected n lists");
    if (tables_.size() != n_) throw FormatError("tables: expected n tables");
    const std::size_t width = std::size_t{1} << (k_ + 1);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& nb = neighbors_[i];
      if (nb.size() != k_) {
        throw FormatError("neighbors[" + std::to_string(i) + "]: expected " +
                          std::to_string(k_) + " entries");
      }
      for (std::size_t a = 0; a < nb.size(); ++a) {
        if (nb[a] >= n_ || nb[a] == i) {
          throw FormatError("neighbors[" + std::to_string(i) + "]: invalid gene index " +
                            std::to_string(nb[a]));
        }
        for (std::size_t b = 0; b < a; ++b) {
          if (nb[a] == nb[b]) {
            throw FormatError("neighbors[" + std::to_string(i) + "]: duplicate index " +
                              std::to_string(nb[a]));
          }
        }
      }
      if (tables_[i].size() != width) {
        throw FormatError("tables[" + std::to_string(i) + "]: expected " +
                          std::to_string(width) + " entries (2^(k+1))");
      }
      for (const double v : tables_[i]) {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw FormatError("tables[" + std::to_string(i) + "]: entry " + std::to_string(v) +
                            " outside [0, 1]");
        }
      }
    }
  }

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::vector<double>> tables_;
};

inline double evaluate(const NkLandscape& land, std::span<const std::uint8_t> genome) {
  return land.evaluate(genome);
}

inline double contribution(const NkLandscape& land, std::size_t gene,
                           std::span<const std::uint8_t> genome) {
  return land.contribution(gene, genome);
}

/// Maximum enumeration size for brute_force_optimum.
inline constexpr std::size_t brute_force_max_n = 20;

struct Optimum {
  BitGenome genome;
  double fitness = 0.0;
};

/// Exhaustive maximisation over all 2^n genomes. Genomes are enumerated by
/// their integer encoding with gene 0 as the most significant bit, and the
/// first maximiser in that order wins ties.
inline Optimum brute_force_optimum(const NkLandscape& land) {
  const std::size_t n = land.n();
  if (n > brute_force_max_n) {
    throw ResourceError("brute-force enumeration limited to n <= " +
                        std::to_string(brute_force_max_n) + ", got n = " + std::to_string(n));
  }
  BitGenome genome(n, 0);
  Optimum best{genome, land.evaluate(genome)};
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t code = 1; code < count; ++code) {
    for (std::size_t i = 0; i < n; ++i) genome[i] = (code >> (n - 1 - i)) & 1U;
    const double f = land.evaluate(genome);
    if (f > best.fitness) best = {genome, f};
  }
  return best;
}

}  // namespace gcea
