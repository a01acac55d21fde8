#include "aqubo/solvers.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "aqubo/errors.hpp"

namespace aqubo {

namespace {

// Diagonal plus symmetric adjacency lists of the off-diagonal entries.
class SparseModel {
 public:
  explicit SparseModel(const QuboAccumulator& q)
      : offset_(q.offset()), diag_(q.size(), 0), start_(q.size() + 1, 0) {
    for (const auto& [key, c] : q.entries()) {
      if (key.first == key.second) {
        diag_[key.first] += c;
      } else {
        ++start_[key.first + 1];
        ++start_[key.second + 1];
      }
    }
    for (std::size_t i = 0; i < diag_.size(); ++i) start_[i + 1] += start_[i];
    neighbors_.resize(start_.back());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (const auto& [key, c] : q.entries()) {
      if (key.first == key.second) continue;
      neighbors_[fill[key.first]++] = {key.second, c};
      neighbors_[fill[key.second]++] = {key.first, c};
    }
  }

  std::size_t size() const { return diag_.size(); }
  std::int64_t offset() const { return offset_; }

  /// Energy change of flipping bit i given field[i] = sum_j Q_ij x_j.
  std::int64_t delta(std::size_t i, std::uint8_t xi,
                     const std::vector<std::int64_t>& field) const {
    const std::int64_t d = diag_[i] + field[i];
    return xi ? -d : d;
  }

  /// Applies the field update for a flip of bit i whose new value is xi.
  void flip(std::size_t i, std::uint8_t xi,
            std::vector<std::int64_t>& field) const {
    for (std::size_t k = start_[i]; k < start_[i + 1]; ++k) {
      const auto& [j, c] = neighbors_[k];
      field[j] += xi ? c : -c;
    }
  }

 private:
  std::int64_t offset_;
  std::vector<std::int64_t> diag_;
  std::vector<std::size_t> start_;
  std::vector<std::pair<std::uint32_t, std::int64_t>> neighbors_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct RestartOutcome {
  Bits best;
  std::int64_t energy = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t delta_checks = 0;
};

RestartOutcome anneal_once(const SparseModel& model, const QuboAccumulator& q,
                           const SaParams& params, double t_initial,
                           std::uint64_t sub_seed) {
  const std::size_t n = model.size();
  std::mt19937_64 rng(sub_seed);
  Bits x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1U);

  RestartOutcome out;
  std::int64_t energy = q.energy(x);
  std::vector<std::int64_t> field(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i]) model.flip(i, 1, field);
  }
  out.best = x;
  out.energy = energy;

  const double ratio = params.final_temperature / t_initial;
  std::uint64_t moves = 0;
  for (std::uint32_t s = 0; s < params.sweeps; ++s) {
    const double frac =
        params.sweeps > 1 ? static_cast<double>(s) / (params.sweeps - 1) : 0.0;
    const double temperature = t_initial * std::pow(ratio, frac);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t d = model.delta(i, x[i], field);
      ++moves;
      if (params.check_every != 0 && moves % params.check_every == 0) {
        const std::int64_t before = q.energy(x);
        x[i] ^= 1U;
        const std::int64_t after = q.energy(x);
        x[i] ^= 1U;
        if (after - before != d || before != energy) {
          throw std::logic_error("incremental delta disagrees with full energy");
        }
        ++out.delta_checks;
      }
      if (d <= 0 || unit_interval(rng) < std::exp(-static_cast<double>(d) / temperature)) {
        x[i] ^= 1U;
        model.flip(i, x[i], field);
        energy += d;
        if (energy < out.energy) {
          out.energy = energy;
          out.best = x;
        }
      }
    }
  }
  out.evaluations = moves;
  return out;
}

}  // namespace

SolveResult solve_exhaustive(const QuboAccumulator& qubo, std::size_t limit) {
  const std::size_t n = qubo.size();
  if (n > limit || n > 40) {
    throw CapacityError(std::to_string(n) +
                        " variables exceed the exhaustive limit of " +
                        std::to_string(std::min<std::size_t>(limit, 40)) +
                        "; use simulated annealing");
  }
  const SparseModel model(qubo);
  std::vector<std::int64_t> field(n, 0);
  Bits x(n, 0);
  std::uint64_t mask = 0;
  std::int64_t energy = model.offset();
  std::uint64_t best_mask = 0;
  std::int64_t best_energy = energy;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    energy += model.delta(i, x[i], field);
    x[i] ^= 1U;
    model.flip(i, x[i], field);
    mask ^= std::uint64_t{1} << i;
    if (energy < best_energy) {
      best_energy = energy;
      best_mask = mask;
    } else if (energy == best_energy) {
      // x_0 is the most significant position: the smaller vector has a 0 at
      // the lowest differing index.
      const std::uint64_t diff = mask ^ best_mask;
      if (best_mask & (diff & (~diff + 1))) best_mask = mask;
    }
  }

  SolveResult result;
  result.best.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.best[i] = (best_mask >> i) & 1U;
  result.energy = best_energy;
  result.evaluations = total;
  return result;
}

SolveResult solve_sa(const QuboAccumulator& qubo, const SaParams& params) {
  if (qubo.size() == 0) throw ParameterError("model has no variables");
  if (params.sweeps == 0) throw ParameterError("sweeps must be positive");
  if (params.restarts == 0) throw ParameterError("restarts must be positive");
  if (!(params.final_temperature > 0.0)) {
    throw ParameterError("final temperature must be positive");
  }
  double t_initial = params.initial_temperature.value_or(
      std::max(static_cast<double>(qubo.max_abs_coefficient()),
               params.final_temperature));
  if (!(t_initial > 0.0)) throw ParameterError("initial temperature must be positive");
  if (t_initial < params.final_temperature) {
    throw ParameterError("initial temperature below final temperature");
  }

  const SparseModel model(qubo);
  std::vector<RestartOutcome> outcomes(params.restarts);
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::uint32_t r; (r = next.fetch_add(1)) < params.restarts;) {
      if (failed) return;
      try {
        const std::uint64_t sub_seed = splitmix64(params.seed ^ splitmix64(r));
        outcomes[r] = anneal_once(model, qubo, params, t_initial, sub_seed);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  std::uint32_t threads = params.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, params.restarts);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::uint32_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SolveResult result;
  std::size_t winner = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].energy < outcomes[winner].energy) winner = r;
    result.evaluations += outcomes[r].evaluations;
    result.delta_checks += outcomes[r].delta_checks;
  }
  result.best = std::move(outcomes[winner].best);
  result.energy = outcomes[winner].energy;
  result.restarts = params.restarts;
  result.seed = params.seed;
  return result;
}

}  // namespace aqubo
