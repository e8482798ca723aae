#include "domlab/verdict.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "domlab/parallel.hpp"

namespace domlab {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::violation: return "violation";
    case Outcome::inconclusive: return "inconclusive";
    case Outcome::precondition_failed: return "precondition_failed";
  }
  return "unknown";
}

Outcome outcome_from_string(std::string_view s) {
  if (s == "pass") return Outcome::pass;
  if (s == "violation") return Outcome::violation;
  if (s == "inconclusive") return Outcome::inconclusive;
  if (s == "precondition_failed") return Outcome::precondition_failed;
  throw std::invalid_argument("unknown outcome '" + std::string(s) + "'");
}

int severity(Outcome o) {
  switch (o) {
    case Outcome::pass: return 0;
    case Outcome::inconclusive: return 1;
    case Outcome::violation: return 2;
    case Outcome::precondition_failed: return 3;
  }
  return 3;
}

const HVector& Witness::vector(std::string_view name) const {
  for (const auto& [key, v] : vectors)
    if (key == name) return v;
  throw std::out_of_range("witness has no vector named '" + std::string(name) + "'");
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 1 || lo <= 0.0 || hi < lo) throw std::invalid_argument("invalid logarithmic grid");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) out[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int n, bool include_end) {
  if (n < 1) throw std::invalid_argument("invalid linear grid");
  std::vector<double> out(n);
  const int div = include_end ? std::max(1, n - 1) : n;
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / div;
  return out;
}

std::vector<double> default_t_grid() { return log_grid(1e-3, 1e1, 13); }

std::vector<double> default_theta_grid(int points) { return linear_grid(0.0, 2.0 * std::numbers::pi, points, false); }

double inequality_margin(double lhs, double rhs) { return (rhs - lhs) / (1.0 + std::abs(lhs) + std::abs(rhs)); }

namespace {

struct Partial {
  double margin = std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;
  std::optional<Witness> witness;
  std::size_t inconclusive = 0;
  bool has_nan = false;
  bool have = false;
};

bool better(double margin, std::uint64_t index, const Partial& p) {
  if (!p.have) return true;
  return margin < p.margin || (margin == p.margin && index < p.index);
}

}  // namespace

Verdict run_sampled(std::string criterion, const SamplingOptions& options,
                    const std::function<SampleResult(std::uint64_t, Rng&)>& sample) {
  constexpr std::size_t kChunks = 64;
  const std::size_t n = options.budget;
  std::vector<Partial> partials(std::min(kChunks, std::max<std::size_t>(n, 1)));
  const std::size_t threads = options.threads ? options.threads : default_thread_count();

  parallel_chunks(n, partials.size(), threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Partial& p = partials[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = derive_rng(options.seed, i);
      SampleResult r = sample(i, rng);
      if (r.inconclusive) ++p.inconclusive;
      if (std::isnan(r.margin)) {
        p.has_nan = true;
        continue;
      }
      if (better(r.margin, i, p)) {
        p.have = true;
        p.margin = r.margin;
        p.index = i;
        p.witness = std::move(r.witness);
        if (p.witness) {
          p.witness->sample_index = i;
          p.witness->margin = r.margin;
        }
      }
    }
  });

  Verdict v;
  v.criterion = std::move(criterion);
  v.samples = n;
  Partial total;
  for (auto& p : partials) {
    total.inconclusive += p.inconclusive;
    total.has_nan = total.has_nan || p.has_nan;
    if (!p.have) continue;
    if (better(p.margin, p.index, total)) {
      total.have = true;
      total.margin = p.margin;
      total.index = p.index;
      total.witness = std::move(p.witness);
    }
  }
  v.worst_margin = total.margin;
  v.inconclusive_samples = total.inconclusive;
  v.witness = std::move(total.witness);
  if (total.has_nan) v.notes.emplace_back("non-finite margins encountered");

  if (v.worst_margin < -options.tol)
    v.outcome = Outcome::violation;
  else if (v.inconclusive_samples > 0 || total.has_nan)
    v.outcome = Outcome::inconclusive;
  else
    v.outcome = Outcome::pass;
  return v;
}

}  // namespace domlab
