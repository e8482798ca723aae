#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "domlab/random.hpp"
#include "domlab/space.hpp"

namespace domlab {

/// Sampled checks never certify a universally quantified statement: `pass`
/// means no sample violated it.
enum class Outcome { pass, violation, inconclusive, precondition_failed };

std::string_view to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

/// Severity order used when folding verdicts: pass < inconclusive < violation < precondition_failed.
int severity(Outcome o);

struct Witness {
  std::vector<std::pair<std::string, HVector>> vectors;
  std::optional<double> t;
  std::optional<double> theta;
  /// Normalized margin (rhs − lhs)/scale; negative values violate.
  double margin = 0.0;
  std::uint64_t sample_index = 0;
  std::map<std::string, double> values;

  const HVector& vector(std::string_view name) const;
};

struct Verdict {
  std::string criterion;
  Outcome outcome = Outcome::pass;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
  std::size_t inconclusive_samples = 0;
  std::optional<Witness> witness;
  std::vector<std::string> notes;

  bool passed() const { return outcome == Outcome::pass; }
  bool violated() const { return outcome == Outcome::violation; }
};

std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n, bool include_end);

/// 13 logarithmic points from 1e-3 to 1e1.
std::vector<double> default_t_grid();
/// 64 equispaced angles in [0, 2π).
std::vector<double> default_theta_grid(int points = 64);

struct SamplingOptions {
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::vector<double> t_grid = default_t_grid();
  std::vector<double> theta_grid = default_theta_grid();
  /// 0 selects default_thread_count().
  std::size_t threads = 0;
};

struct SampleResult {
  double margin = std::numeric_limits<double>::infinity();
  bool inconclusive = false;
  std::optional<Witness> witness;
};

/// Evaluates `sample(index, rng)` for index in [0, budget) with per-index
/// derived randomness and folds the results: the worst (lowest) margin wins,
/// ties going to the lowest index, so the verdict does not depend on the
/// thread count.
Verdict run_sampled(std::string criterion, const SamplingOptions& options,
                    const std::function<SampleResult(std::uint64_t index, Rng& rng)>& sample);

/// Inequality lhs ≤ rhs expressed as a normalized margin with scale 1 + |lhs| + |rhs|.
double inequality_margin(double lhs, double rhs);

}  // namespace domlab
