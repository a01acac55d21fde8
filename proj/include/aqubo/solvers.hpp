#pragma once

#include <cstdint>
#include <optional>

#include "aqubo/qubo.hpp"

namespace aqubo {

struct SolveResult {
  Bits best;
  std::int64_t energy = 0;
  std::uint64_t evaluations = 0;
  std::uint32_t restarts = 0;
  std::uint64_t seed = 0;
  /// Incremental deltas compared against full re-evaluation (debug mode).
  std::uint64_t delta_checks = 0;
};

struct SaParams {
  std::uint32_t sweeps = 2000;
  /// Defaults to the largest absolute coefficient of the model.
  std::optional<double> initial_temperature;
  double final_temperature = 0.1;
  std::uint32_t restarts = 20;
  std::uint64_t seed = 0;
  /// 0 picks std::thread::hardware_concurrency().
  std::uint32_t threads = 1;
  /// When nonzero, every check_every-th proposed move compares its
  /// incremental delta with two full energy evaluations and throws
  /// std::logic_error on disagreement.
  std::uint64_t check_every = 0;
};

constexpr std::size_t kDefaultExhaustiveLimit = 24;

/// Global minimum by Gray-code enumeration. Ties go to the lexicographically
/// smallest vector (x_0 most significant). Throws CapacityError if the model
/// has more than limit variables.
SolveResult solve_exhaustive(const QuboAccumulator& qubo,
                             std::size_t limit = kDefaultExhaustiveLimit);

/// Single-bit-flip simulated annealing with a geometric temperature schedule.
/// Restart r uses a sub-seed derived from (seed, r); the result is the best
/// vector seen over all restarts, ties to the lowest restart index, so it
/// does not depend on the thread count. Throws ParameterError on invalid
/// parameters.
SolveResult solve_sa(const QuboAccumulator& qubo, const SaParams& params);

}  // namespace aqubo
