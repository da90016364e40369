#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gcea/random.hpp>

namespace gcea {

/// A genome is a fixed-length vector of alleles. Binary genomes store one
/// 0/1 byte per gene; real genomes store values in [-1, 1].
template <class Allele>
using Genome = std::vector<Allele>;

using BitGenome = Genome<std::uint8_t>;
using RealGenome = Genome<double>;

inline constexpr double real_allele_min = -1.0;
inline constexpr double real_allele_max = 1.0;

inline BitGenome random_bit_genome(std::size_t n, Rng& rng) {
  BitGenome g(n);
  for (auto& a : g) a = rng.coin() ? 1 : 0;
  return g;
}

inline RealGenome random_real_genome(std::size_t n, Rng& rng) {
  RealGenome g(n);
  for (auto& a : g) a = rng.uniform(real_allele_min, real_allele_max);
  return g;
}

/// Mutates exactly one uniformly chosen gene: flips it. Returns its position.
inline std::size_t mutate_one_gene(BitGenome& genome, Rng& rng) {
  const std::size_t pos = rng.index(genome.size());
  genome[pos] ^= 1U;
  return pos;
}

/// Mutates exactly one uniformly chosen gene: replaces it with a uniform draw
/// from [-1, 1]. Returns its position.
inline std::size_t mutate_one_gene(RealGenome& genome, Rng& rng) {
  const std::size_t pos = rng.index(genome.size());
  genome[pos] = rng.uniform(real_allele_min, real_allele_max);
  return pos;
}

}  // namespace gcea
