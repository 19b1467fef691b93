#include "mpfc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "mpfc/io.hpp"
#include "mpfc/rng.hpp"

namespace mpfc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename T>
std::string hash_candidate(const std::vector<T>& x) {
  std::string s;
  for (const T& v : x) {
    if constexpr (std::is_floating_point_v<T>) {
      s += format_double(v);
    } else {
      s += std::to_string(v);
    }
    s += ',';
  }
  return fnv1a_hex(s);
}

template <typename T>
void check_bounds(const std::vector<T>& lower, const std::vector<T>& upper) {
  if (lower.size() != upper.size()) throw std::invalid_argument("bound vectors differ in length");
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!(lower[d] <= upper[d])) throw std::invalid_argument("lower bound exceeds upper bound");
  }
}

// Counts calls, caches repeats and keeps the best-so-far trace.
template <typename X>
class Evaluator {
 public:
  Evaluator(const std::function<double(const X&)>& f, OptimResult<X>& result, int max_evals, bool trace)
      : f_(f), result_(result), max_evals_(max_evals), trace_(trace) {}

  bool exhausted() const { return result_.evaluations >= max_evals_; }
  bool cached(const X& x) const { return cache_.count(x) != 0; }

  /// Value of x, evaluating it if needed; NaN when the budget is spent.
  double operator()(const X& x) {
    const auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    if (exhausted()) return std::numeric_limits<double>::quiet_NaN();
    const double v = f_(x);
    ++result_.evaluations;
    cache_.emplace(x, v);
    if (!std::isnan(v) && v < best_) best_ = v;
    result_.best_so_far.push_back(best_);
    if (trace_) result_.trace.push_back({result_.evaluations, hash_candidate(x), v});
    return v;
  }

 private:
  const std::function<double(const X&)>& f_;
  OptimResult<X>& result_;
  int max_evals_;
  bool trace_;
  std::map<X, double> cache_;
  double best_ = kInf;
};

}  // namespace

std::vector<double> project_to_bounds(std::vector<double> x, const std::vector<double>& lower,
                                      const std::vector<double>& upper) {
  check_bounds(lower, upper);
  if (x.size() != lower.size()) throw std::invalid_argument("vector and bounds differ in length");
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], lower[d], upper[d]);
  return x;
}

OptimResult<std::vector<double>> pattern_search(const RealObjective& f, std::vector<double> x0,
                                                const std::vector<double>& lower,
                                                const std::vector<double>& upper,
                                                const PatternSearchOptions& options,
                                                const RealConstraint& feasible) {
  x0 = project_to_bounds(std::move(x0), lower, upper);
  OptimResult<std::vector<double>> result;
  result.x = x0;
  result.f = std::numeric_limits<double>::quiet_NaN();
  if (options.budget.max_evaluations <= 0) return result;

  Evaluator<std::vector<double>> eval(f, result, options.budget.max_evaluations, options.record_trace);
  const std::size_t n = x0.size();
  const bool start_ok = !feasible || feasible(x0);
  std::vector<double> x = x0;
  double fx = start_ok ? eval(x0) : kInf;
  if (!start_ok) result.f = kInf;

  std::vector<double> range(n);
  for (std::size_t d = 0; d < n; ++d) range[d] = upper[d] - lower[d];
  double mesh = options.initial_mesh;

  while (result.iterations < options.budget.max_iterations && !eval.exhausted() &&
         mesh > options.mesh_tolerance) {
    ++result.iterations;
    std::vector<double> best_poll;
    double best_value = fx;
    for (std::size_t d = 0; d < n && !eval.exhausted(); ++d) {
      if (range[d] == 0.0) continue;
      for (const double sign : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[d] = std::clamp(y[d] + sign * mesh * range[d], lower[d], upper[d]);
        if (y[d] == x[d]) continue;
        if (feasible && !feasible(y)) continue;
        if (eval.exhausted() && !eval.cached(y)) break;
        const double v = eval(y);
        if (v < best_value) {
          best_value = v;
          best_poll = std::move(y);
        }
      }
    }
    if (!best_poll.empty()) {
      x = std::move(best_poll);
      fx = best_value;
      mesh = std::min(mesh * options.expansion, options.max_mesh);
    } else {
      mesh *= options.contraction;
    }
  }
  if (start_ok || fx < kInf) {
    result.x = x;
    result.f = fx;
  }
  return result;
}

OptimResult<std::vector<int>> genetic_algorithm(const IntObjective& f, const std::vector<int>& lower,
                                                const std::vector<int>& upper,
                                                const GeneticOptions& options) {
  check_bounds(lower, upper);
  if (options.population < 2) throw std::invalid_argument("population must be at least 2");
  const std::size_t dim = lower.size();
  OptimResult<std::vector<int>> result;
  result.f = std::numeric_limits<double>::quiet_NaN();
  if (options.budget.max_evaluations <= 0) {
    result.x = options.initial.empty() ? lower : options.initial.front();
    return result;
  }

  Rng rng(options.seed);
  Evaluator<std::vector<int>> eval(f, result, options.budget.max_evaluations, options.record_trace);
  const double mutation = options.mutation_rate >= 0.0
                              ? options.mutation_rate
                              : (dim > 0 ? 1.0 / static_cast<double>(dim) : 0.0);

  struct Individual {
    std::vector<int> genes;
    double fitness = kInf;
  };
  auto random_gene = [&](std::size_t d) { return static_cast<int>(rng.uniform_int(lower[d], upper[d])); };
  auto assess = [&](Individual& ind) {
    const double v = eval(ind.genes);
    ind.fitness = std::isnan(v) ? kInf : v;
  };

  std::vector<Individual> pop;
  pop.reserve(static_cast<std::size_t>(options.population));
  for (const auto& seeded : options.initial) {
    if (static_cast<int>(pop.size()) >= options.population) break;
    if (seeded.size() != dim) throw std::invalid_argument("seeded individual has the wrong length");
    Individual ind;
    ind.genes = seeded;
    for (std::size_t d = 0; d < dim; ++d) ind.genes[d] = std::clamp(ind.genes[d], lower[d], upper[d]);
    pop.push_back(std::move(ind));
  }
  while (static_cast<int>(pop.size()) < options.population) {
    Individual ind;
    ind.genes.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) ind.genes[d] = random_gene(d);
    pop.push_back(std::move(ind));
  }
  for (auto& ind : pop) assess(ind);

  auto better = [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; };
  auto tournament = [&]() -> const Individual& {
    std::size_t best = static_cast<std::size_t>(rng.uniform_int(0, options.population - 1));
    for (int t = 1; t < options.tournament; ++t) {
      const auto c = static_cast<std::size_t>(rng.uniform_int(0, options.population - 1));
      if (pop[c].fitness < pop[best].fitness) best = c;
    }
    return pop[best];
  };

  int stall = 0;
  while (result.iterations < options.budget.max_iterations && !eval.exhausted() &&
         stall < options.stall_generations) {
    ++result.iterations;
    std::vector<Individual> next;
    next.reserve(pop.size());
    std::vector<Individual> sorted = pop;
    std::stable_sort(sorted.begin(), sorted.end(), better);
    for (int e = 0; e < options.elite && e < options.population; ++e) next.push_back(sorted[static_cast<std::size_t>(e)]);

    const int before = result.evaluations;
    while (static_cast<int>(next.size()) < options.population) {
      const Individual& a = tournament();
      const Individual& b = tournament();
      Individual child;
      child.genes = a.genes;
      if (rng.uniform() < options.crossover_rate) {
        for (std::size_t d = 0; d < dim; ++d) {
          if (rng.uniform() < 0.5) child.genes[d] = b.genes[d];
        }
      }
      for (std::size_t d = 0; d < dim; ++d) {
        if (rng.uniform() < mutation) child.genes[d] = random_gene(d);
      }
      assess(child);
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    stall = (result.evaluations == before) ? stall + 1 : 0;
  }

  const auto best = std::min_element(pop.begin(), pop.end(), better);
  // The elite carries the best individual ever evaluated.
  result.x = best->genes;
  result.f = best->fitness;
  return result;
}

}  // namespace mpfc
