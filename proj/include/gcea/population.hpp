#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gcea/error.hpp>
#include <gcea/genome.hpp>
#include <gcea/random.hpp>

namespace gcea {

/// A genome with its last recorded fitness on the maximising scale.
template <class G>
struct Individual {
  G genome;
  double fitness = 0.0;
};

/// Fixed-size collection tracking the index of its fittest member
/// (ties go to the lowest index).
template <class G>
class Population {
 public:
  Population() = default;
  explicit Population(std::vector<Individual<G>> members) : members_(std::move(members)) {
    update_best();
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const Individual<G>& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Individual<G>>& members() const noexcept { return members_; }
  std::size_t best_index() const noexcept { return best_; }
  const Individual<G>& best() const { return members_[best_]; }

  void set_fitness(std::size_t i, double fitness) {
    members_[i].fitness = fitness;
    update_best();
  }

  void replace(std::size_t i, Individual<G> individual) {
    members_[i] = std::move(individual);
    update_best();
  }

  void update_best() noexcept {
    best_ = 0;
    for (std::size_t i = 1; i < members_.size(); ++i) {
      if (members_[i].fitness > members_[best_].fitness) best_ = i;
    }
  }

 private:
  std::vector<Individual<G>> members_;
  std::size_t best_ = 0;
};

/// Binary tournament: two uniform draws with replacement, higher recorded
/// fitness wins, exact ties broken by a fair coin. Returns the winner's index.
template <class G>
std::size_t tournament_select(const Population<G>& pop, Rng& rng) {
  if (pop.empty()) throw ConfigurationError("tournament on an empty population");
  const std::size_t a = rng.index(pop.size());
  const std::size_t b = rng.index(pop.size());
  const double fa = pop[a].fitness;
  const double fb = pop[b].fitness;
  if (fa > fb) return a;
  if (fb > fa) return b;
  return rng.coin() ? a : b;
}

/// Replaces a uniformly chosen member other than the current best with
/// `offspring`. Returns the victim index.
template <class G>
std::size_t replace_random_elitist(Population<G>& pop, Individual<G> offspring, Rng& rng) {
  if (pop.size() < 2) {
    throw ConfigurationError("elitist replacement needs a population of at least 2");
  }
  std::size_t victim = rng.index(pop.size() - 1);
  if (victim >= pop.best_index()) ++victim;
  pop.replace(victim, std::move(offspring));
  return victim;
}

}  // namespace gcea
