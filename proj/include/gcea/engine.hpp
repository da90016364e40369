#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gcea/crossover.hpp>
#include <gcea/error.hpp>
#include <gcea/genome.hpp>
#include <gcea/population.hpp>
#include <gcea/problem.hpp>
#include <gcea/random.hpp>

namespace gcea {

enum class Algorithm { ea, gcea, gcea0, ccea1, ccea2, ea_kpoint };

inline constexpr Algorithm all_algorithms[] = {Algorithm::ea,    Algorithm::gcea,
                                               Algorithm::gcea0, Algorithm::ccea1,
                                               Algorithm::ccea2, Algorithm::ea_kpoint};

constexpr std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::ea: return "ea";
    case Algorithm::gcea: return "gcea";
    case Algorithm::gcea0: return "gcea0";
    case Algorithm::ccea1: return "ccea1";
    case Algorithm::ccea2: return "ccea2";
    case Algorithm::ea_kpoint: return "ea_kpoint";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto a : all_algorithms) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

/// Partner rule used to complete a sub-genome into a full genome.
enum class PartnerRule { best, random };

/// Ring points re-drawn per offspring (GCEA) or fixed equal spacing (GCEA-0).
enum class PlanMode { random_ring, fixed };

enum class CceaVariant { ccea1, ccea2 };

/// Everything that determines one run, apart from the problem itself.
///
/// `s` is the number of global crossover segments (gcea, gcea0), the number
/// of subpopulations (ccea1, ccea2) or the number of cut points (ea_kpoint);
/// plain `ea` ignores it.
struct RunConfig {
  Algorithm algorithm = Algorithm::ea;
  std::size_t s = 2;
  std::size_t pop_size = 50;
  std::uint64_t eval_budget = 100000;
  std::uint64_t master_seed = 0;
  std::uint64_t cell_id = 0;
  std::uint64_t run_index = 0;
  std::uint64_t trace_interval = 1000;

  std::uint64_t seed() const noexcept { return derive_seed(master_seed, cell_id, run_index); }
};

/// Throws ParameterError or ConfigurationError if `config` cannot run on a
/// problem of length n.
inline void validate(const RunConfig& config, std::size_t n) {
  const std::string ns = std::to_string(n);
  const std::string ss = std::to_string(config.s);
  if (n < 1) throw ParameterError("genome length must be >= 1");
  if (config.pop_size < 2) {
    throw ConfigurationError("pop-size must be >= 2 (elitist replacement needs a free slot)");
  }
  if (config.trace_interval < 1) throw ConfigurationError("trace interval must be >= 1");
  switch (config.algorithm) {
    case Algorithm::ea:
      break;
    case Algorithm::gcea:
      if (config.s < 1 || config.s > n) {
        throw ParameterError("gcea needs 1 <= s <= n (s = " + ss + ", n = " + ns + ")");
      }
      break;
    case Algorithm::gcea0:
      if (config.s < 1 || config.s > n) {
        throw ParameterError("gcea0 needs 1 <= s <= n (s = " + ss + ", n = " + ns + ")");
      }
      if (n % config.s != 0) {
        throw ParameterError("gcea0 needs s to divide n (s = " + ss + ", n = " + ns + ")");
      }
      break;
    case Algorithm::ccea1:
    case Algorithm::ccea2: {
      if (config.s < 2 || config.s > n) {
        throw ParameterError("ccea needs 2 <= s <= n (s = " + ss + ", n = " + ns + ")");
      }
      if (n % config.s != 0) {
        throw ParameterError("ccea needs s to divide n (s = " + ss + ", n = " + ns + ")");
      }
      const std::uint64_t init = static_cast<std::uint64_t>(config.s) * config.pop_size;
      if (init >= config.eval_budget) {
        throw ConfigurationError("ccea initial evaluation cost s*pop-size = " +
                                 std::to_string(init) + " must be below the budget " +
                                 std::to_string(config.eval_budget));
      }
      return;
    }
    case Algorithm::ea_kpoint:
      if (config.s < 1 || n < 2 || config.s > n - 1) {
        throw ParameterError("ea_kpoint needs 1 <= points <= n-1 (points = " + ss +
                             ", n = " + ns + ")");
      }
      break;
  }
  if (config.eval_budget < config.pop_size) {
    throw ConfigurationError("evaluation budget " + std::to_string(config.eval_budget) +
                             " is smaller than the population size " +
                             std::to_string(config.pop_size));
  }
}

struct TracePoint {
  std::uint64_t evaluations = 0;
  double best = 0.0;  ///< best raw objective value seen so far
};

/// Best-of-run record. `best_fitness` is on the raw objective scale.
template <class G>
struct RunResult {
  double best_fitness = 0.0;
  G best_genome;
  std::uint64_t evaluations_used = 0;
  std::uint64_t initial_evaluations = 0;
  std::uint64_t offspring = 0;
  std::uint64_t selections = 0;
  std::vector<TracePoint> trace;
};

/// Details of one offspring creation, reported to an optional observer.
template <class G>
struct OffspringEvent {
  std::size_t block = 0;                     ///< subpopulation (CCEA) or 0
  std::span<const std::size_t> parents;      ///< selected parent indices, in selection order
  std::span<const std::size_t> points;       ///< ring points (GCEA) or cuts (EA variants)
  const Population<G>* population = nullptr; ///< state before replacement
  const G* pre_mutation = nullptr;
  const G* offspring = nullptr;              ///< (sub-)genome after mutation
  std::size_t mutated_position = 0;
  double fitness = 0.0;                      ///< recorded fitness, maximising scale
  std::uint64_t evaluations_charged = 0;
};

template <class G>
using OffspringObserver = std::function<void(const OffspringEvent<G>&)>;

/// Counts objective calls against the budget and tracks the best full genome.
template <Problem P>
class BudgetedEvaluator {
 public:
  using genome_type = typename P::genome_type;

  BudgetedEvaluator(const P& problem, std::uint64_t budget, std::uint64_t trace_interval)
      : problem_(problem), budget_(budget), interval_(trace_interval) {}

  /// Evaluates `g` and returns its fitness on the maximising scale.
  double operator()(const genome_type& g) {
    if (used_ >= budget_) throw ConfigurationError("evaluation budget exhausted");
    const double raw = problem_.evaluate(g);
    const double fitness = to_fitness(raw, problem_.direction());
    ++used_;
    if (used_ == 1 || fitness > best_fitness_) {
      best_fitness_ = fitness;
      best_raw_ = raw;
      best_genome_ = g;
    }
    if (used_ % interval_ == 0) trace_.push_back({used_, best_raw_});
    return fitness;
  }

  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t remaining() const noexcept { return budget_ - used_; }

  RunResult<genome_type> finish() && {
    if (trace_.empty() || trace_.back().evaluations != used_) trace_.push_back({used_, best_raw_});
    RunResult<genome_type> r;
    r.best_fitness = best_raw_;
    r.best_genome = std::move(best_genome_);
    r.evaluations_used = used_;
    r.trace = std::move(trace_);
    return r;
  }

 private:
  const P& problem_;
  std::uint64_t budget_;
  std::uint64_t interval_;
  std::uint64_t used_ = 0;
  double best_fitness_ = 0.0;
  double best_raw_ = 0.0;
  genome_type best_genome_;
  std::vector<TracePoint> trace_;
};

namespace detail {

template <Problem P>
Population<typename P::genome_type> initial_population(const P& problem, std::size_t size,
                                                       Rng& rng, BudgetedEvaluator<P>& eval) {
  using G = typename P::genome_type;
  std::vector<Individual<G>> members(size);
  for (auto& m : members) {
    m.genome = problem.random_genome(problem.size(), rng);
    m.fitness = eval(m.genome);
  }
  return Population<G>(std::move(members));
}

/// One-point crossover, or a copy of the first parent when no cut exists (n = 1).
template <class G>
G one_point_or_copy(const G& p1, const G& p2, Rng& rng, std::vector<std::size_t>& cuts) {
  cuts.clear();
  if (p1.size() < 2) return p1;
  const std::size_t cut = rng.between(1, p1.size() - 1);
  cuts.push_back(cut);
  return one_point_crossover_at(p1, p2, cut);
}

template <class G>
void notify(const OffspringObserver<G>* observer, const OffspringEvent<G>& e) {
  if (observer != nullptr && *observer) (*observer)(e);
}

}  // namespace detail

/// Steady-state EA with two tournament parents and two-parent crossover.
/// `cut_points` = 1 is the standard one-point EA; more gives k-point crossover.
template <Problem P>
RunResult<typename P::genome_type> run_two_parent(
    const RunConfig& config, const P& problem, std::size_t cut_points,
    const OffspringObserver<typename P::genome_type>* observer = nullptr) {
  using G = typename P::genome_type;
  RunConfig checked = config;
  checked.algorithm = cut_points <= 1 ? Algorithm::ea : Algorithm::ea_kpoint;
  checked.s = cut_points;
  validate(checked, problem.size());
  Rng rng(config.seed());
  BudgetedEvaluator<P> eval(problem, config.eval_budget, config.trace_interval);
  auto pop = detail::initial_population(problem, config.pop_size, rng, eval);
  const std::uint64_t initial = eval.used();
  std::uint64_t offspring = 0;
  std::uint64_t selections = 0;
  std::vector<std::size_t> cuts;
  while (eval.remaining() >= 1) {
    const std::size_t parents[2] = {tournament_select(pop, rng), tournament_select(pop, rng)};
    selections += 2;
    const G& p1 = pop[parents[0]].genome;
    const G& p2 = pop[parents[1]].genome;
    G child;
    if (cut_points <= 1) {
      child = detail::one_point_or_copy(p1, p2, rng, cuts);
    } else {
      cuts = sample_cuts(p1.size(), cut_points, rng);
      child = k_point_crossover_at(p1, p2, std::span<const std::size_t>(cuts));
    }
    const G before = observer != nullptr ? child : G{};
    const std::size_t pos = mutate_one_gene(child, rng);
    const double fitness = eval(child);
    ++offspring;
    detail::notify(observer, OffspringEvent<G>{0, parents, cuts, &pop, &before, &child, pos,
                                               fitness, 1});
    replace_random_elitist(pop, Individual<G>{std::move(child), fitness}, rng);
  }
  auto result = std::move(eval).finish();
  result.initial_evaluations = initial;
  result.offspring = offspring;
  result.selections = selections;
  return result;
}

template <Problem P>
RunResult<typename P::genome_type> run_ea(
    const RunConfig& config, const P& problem,
    const OffspringObserver<typename P::genome_type>* observer = nullptr) {
  return run_two_parent(config, problem, 1, observer);
}

template <Problem P>
RunResult<typename P::genome_type> run_ea_kpoint(
    const RunConfig& config, const P& problem, std::size_t points,
    const OffspringObserver<typename P::genome_type>* observer = nullptr) {
  const std::size_t n = problem.size();
  if (points < 1 || n < 2 || points > n - 1) {
    throw ParameterError("ea_kpoint needs 1 <= points <= n-1 (points = " +
                         std::to_string(points) + ", n = " + std::to_string(n) + ")");
  }
  return run_two_parent(config, problem, points, observer);
}

/// Global crossover EA: every offspring takes each of its `s` ring segments
/// from a separately selected parent.
template <Problem P>
RunResult<typename P::genome_type> run_gcea(
    const RunConfig& config, const P& problem, PlanMode mode,
    const OffspringObserver<typename P::genome_type>* observer = nullptr) {
  using G = typename P::genome_type;
  RunConfig checked = config;
  checked.algorithm = mode == PlanMode::fixed ? Algorithm::gcea0 : Algorithm::gcea;
  validate(checked, problem.size());
  const std::size_t n = problem.size();
  const std::size_t s = config.s;
  Rng rng(config.seed());
  BudgetedEvaluator<P> eval(problem, config.eval_budget, config.trace_interval);
  auto pop = detail::initial_population(problem, config.pop_size, rng, eval);
  const std::uint64_t initial = eval.used();
  std::uint64_t offspring = 0;
  std::uint64_t selections = 0;

  std::vector<std::size_t> points;
  if (mode == PlanMode::fixed) points = make_fixed_plan(n, s);
  std::vector<std::size_t> parents(s);
  while (eval.remaining() >= 1) {
    if (mode == PlanMode::random_ring) points = make_random_plan(n, s, rng);
    for (auto& p : parents) p = tournament_select(pop, rng);
    selections += s;
    G child = global_crossover<typename G::value_type>(
        std::span<const std::size_t>(points), n,
        [&](std::size_t seg) -> const G& { return pop[parents[seg]].genome; });
    const G before = observer != nullptr ? child : G{};
    const std::size_t pos = mutate_one_gene(child, rng);
    const double fitness = eval(child);
    ++offspring;
    detail::notify(observer, OffspringEvent<G>{0, parents, points, &pop, &before, &child, pos,
                                               fitness, 1});
    replace_random_elitist(pop, Individual<G>{std::move(child), fitness}, rng);
  }
  auto result = std::move(eval).finish();
  result.initial_evaluations = initial;
  result.offspring = offspring;
  result.selections = selections;
  return result;
}

/// Subpopulations of a cooperative coevolutionary run. Block b owns the
/// contiguous variables [b * block_length, (b + 1) * block_length).
template <class G>
struct CceaState {
  std::size_t block_length = 0;
  std::vector<Population<G>> subpops;

  std::size_t blocks() const noexcept { return subpops.size(); }
  std::size_t genome_length() const noexcept { return block_length * subpops.size(); }
};

/// Full genome with `sub_genome` in block `block` and every other block taken
/// from that subpopulation's best member (rule best) or a uniformly chosen
/// member, drawn independently per block (rule random).
template <class G>
G compose(const CceaState<G>& state, std::size_t block, const G& sub_genome, PartnerRule rule,
          Rng& rng) {
  if (block >= state.blocks()) {
    throw DimensionError("block index " + std::to_string(block) + " outside [0, " +
                         std::to_string(state.blocks()) + ")");
  }
  if (sub_genome.size() != state.block_length) {
    throw DimensionError("sub-genome length " + std::to_string(sub_genome.size()) +
                         " does not match block length " + std::to_string(state.block_length));
  }
  G full;
  full.reserve(state.genome_length());
  for (std::size_t b = 0; b < state.blocks(); ++b) {
    const G* part = &sub_genome;
    if (b != block) {
      const auto& pop = state.subpops[b];
      part = rule == PartnerRule::best ? &pop.best().genome : &pop[rng.index(pop.size())].genome;
    }
    full.insert(full.end(), part->begin(), part->end());
  }
  return full;
}

/// Round-robin cooperative coevolution over `s` contiguous blocks.
///
/// CCEA-1 evaluates each offspring with the best member of every other
/// subpopulation. CCEA-2 also evaluates it with random partners and keeps the
/// larger fitness, costing two evaluations per offspring. The run stops when
/// the remaining budget cannot pay for the next offspring.
template <Problem P>
RunResult<typename P::genome_type> run_ccea(
    const RunConfig& config, const P& problem, CceaVariant variant,
    const OffspringObserver<typename P::genome_type>* observer = nullptr) {
  using G = typename P::genome_type;
  RunConfig checked = config;
  checked.algorithm = variant == CceaVariant::ccea1 ? Algorithm::ccea1 : Algorithm::ccea2;
  validate(checked, problem.size());
  const std::size_t s = config.s;
  const std::size_t m = problem.size() / s;
  const std::uint64_t cost = variant == CceaVariant::ccea2 ? 2 : 1;
  Rng rng(config.seed());
  BudgetedEvaluator<P> eval(problem, config.eval_budget, config.trace_interval);

  CceaState<G> state;
  state.block_length = m;
  state.subpops.reserve(s);
  for (std::size_t b = 0; b < s; ++b) {
    std::vector<Individual<G>> members(config.pop_size);
    for (auto& ind : members) ind.genome = problem.random_genome(m, rng);
    state.subpops.emplace_back(std::move(members));
  }
  for (std::size_t b = 0; b < s; ++b) {
    auto& pop = state.subpops[b];
    for (std::size_t i = 0; i < pop.size(); ++i) {
      const double f = eval(compose(state, b, pop[i].genome, PartnerRule::random, rng));
      pop.set_fitness(i, f);
    }
  }
  const std::uint64_t initial = eval.used();
  std::uint64_t offspring = 0;
  std::uint64_t selections = 0;
  std::vector<std::size_t> cuts;

  while (eval.remaining() >= cost) {
    for (std::size_t b = 0; b < s && eval.remaining() >= cost; ++b) {
      auto& pop = state.subpops[b];
      const std::size_t parents[2] = {tournament_select(pop, rng), tournament_select(pop, rng)};
      selections += 2;
      G child = detail::one_point_or_copy(pop[parents[0]].genome, pop[parents[1]].genome, rng,
                                          cuts);
      const G before = observer != nullptr ? child : G{};
      const std::size_t pos = mutate_one_gene(child, rng);
      double fitness = eval(compose(state, b, child, PartnerRule::best, rng));
      if (variant == CceaVariant::ccea2) {
        fitness = std::max(fitness, eval(compose(state, b, child, PartnerRule::random, rng)));
      }
      ++offspring;
      detail::notify(observer, OffspringEvent<G>{b, parents, cuts, &pop, &before, &child, pos,
                                                 fitness, cost});
      replace_random_elitist(pop, Individual<G>{std::move(child), fitness}, rng);
    }
  }
  auto result = std::move(eval).finish();
  result.initial_evaluations = initial;
  result.offspring = offspring;
  result.selections = selections;
  return result;
}

/// Dispatches on `config.algorithm`.
template <Problem P>
RunResult<typename P::genome_type> run(
    const RunConfig& config, const P& problem,
    const OffspringObserver<typename P::genome_type>* observer = nullptr) {
  switch (config.algorithm) {
    case Algorithm::ea: return run_ea(config, problem, observer);
    case Algorithm::gcea: return run_gcea(config, problem, PlanMode::random_ring, observer);
    case Algorithm::gcea0: return run_gcea(config, problem, PlanMode::fixed, observer);
    case Algorithm::ccea1: return run_ccea(config, problem, CceaVariant::ccea1, observer);
    case Algorithm::ccea2: return run_ccea(config, problem, CceaVariant::ccea2, observer);
    case Algorithm::ea_kpoint: return run_ea_kpoint(config, problem, config.s, observer);
  }
  throw ParameterError("unknown algorithm");
}

}  // namespace gcea
