#include "domlab/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "domlab/cone.hpp"
#include "domlab/errors.hpp"
#include "domlab/random.hpp"

namespace domlab {

std::string_view to_string(InvarianceCondition c) {
  switch (c) {
    case InvarianceCondition::i: return "i";
    case InvarianceCondition::ii: return "ii";
    case InvarianceCondition::iii: return "iii";
    case InvarianceCondition::iv: return "iv";
    case InvarianceCondition::v: return "v";
    case InvarianceCondition::vi: return "vi";
  }
  return "?";
}

std::optional<InvarianceCondition> invariance_condition_from_string(std::string_view s) {
  using C = InvarianceCondition;
  for (C c : {C::i, C::ii, C::iii, C::iv, C::v, C::vi})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

namespace {

HVector seed_point(const SpaceDescriptor& ambient, Rng& rng) {
  if (bernoulli(rng, 0.5)) return gaussian(ambient, rng);
  HVector r = rank_one_positive(ambient, rng);
  r *= Complex((bernoulli(rng, 0.5) ? 1.0 : -1.0) / std::max(r.norm(), 1e-300));
  return r;
}

double log_uniform(Rng& rng, double lo_exp, double hi_exp) { return std::pow(10.0, uniform(rng, lo_exp, hi_exp)); }

/// A point of the set displaced by δ·g, g complex or real Gaussian.
HVector near_point(const ConvexSetOracle& set, Rng& rng, bool& converged) {
  const auto& ambient = set.ambient();
  Projection base = set.project(seed_point(ambient, rng));
  converged = base.converged;
  HVector g = gaussian(ambient, rng);
  if (bernoulli(rng, 0.5)) g = real_part(g);
  return base.point + log_uniform(rng, -4.0, 0.0) * g;
}

}  // namespace

double invariance_margin(const FormOperator& c, const ConvexSetOracle& set, InvarianceCondition condition,
                         const HVector& x, std::optional<double> t) {
  using C = InvarianceCondition;
  if (condition == C::i) {
    if (!t) throw std::invalid_argument("condition (i) needs a time t");
    const HVector moved = c.semigroup_apply(*t, x);
    const Projection back = set.project(moved);
    if (!back.converged) return std::numeric_limits<double>::quiet_NaN();
    return -(moved - back.point).norm() / (1.0 + x.norm());
  }
  const Projection pu = set.project(x);
  if (!pu.converged) return std::numeric_limits<double>::quiet_NaN();
  double lhs = 0.0, rhs = 0.0;
  switch (condition) {
    case C::ii:
    case C::v:
      lhs = c.quadratic(pu.point);
      rhs = c.quadratic(x);
      break;
    case C::iii:
    case C::vi: rhs = c(x, x - pu.point).real(); break;
    case C::iv: rhs = c(pu.point, x - pu.point).real(); break;
    case C::i: break;
  }
  return inequality_margin(lhs, rhs);
}

HVector sample_set_point(const ConvexSetOracle& set, Rng& rng) {
  return set.project(seed_point(set.ambient(), rng)).point;
}

Verdict check_c0_hypotheses(const FormOperator& c, const ConvexSetOracle& set, const ConvexSetOracle& c0,
                            const SamplingOptions& options) {
  if (!(set.ambient() == c0.ambient()) || !(c.space() == set.ambient()))
    throw ShapeError("form, set and C_0 must share the ambient space");
  std::vector<CMatrix> flows;
  for (double t : options.t_grid) flows.push_back(c.semigroup_matrix(t));
  return run_sampled("C0-hypotheses", options, [&](std::uint64_t, Rng& rng) {
    SampleResult r;
    const Projection in_c = set.project(seed_point(set.ambient(), rng));
    const Projection in_c0 = c0.project(seed_point(c0.ambient(), rng));
    r.inconclusive = !in_c.converged || !in_c0.converged;
    const Projection contained = c0.project(in_c.point);
    r.inconclusive = r.inconclusive || !contained.converged;
    r.margin = -(in_c.point - contained.point).norm() / (1.0 + in_c.point.norm());
    r.witness = Witness{{{"x", in_c.point}}, std::nullopt, std::nullopt, r.margin, 0, {{"C subset C0", 1.0}}};
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const HVector moved = domlab::apply(flows[i], in_c0.point);
      const Projection back = c0.project(moved);
      r.inconclusive = r.inconclusive || !back.converged;
      const double m = -(moved - back.point).norm() / (1.0 + in_c0.point.norm());
      if (m < r.margin) {
        r.margin = m;
        r.witness = Witness{{{"x", in_c0.point}}, options.t_grid[i], std::nullopt, m, 0, {{"R_t C0 in C0", 1.0}}};
      }
    }
    return r;
  });
}

Verdict check_invariance(const FormOperator& c, const ConvexSetOracle& set, InvarianceCondition condition,
                         const ConvexSetOracle* c0, const SamplingOptions& options) {
  if (!(c.space() == set.ambient())) throw ShapeError("form and convex set live on different spaces");
  const std::string name = "invariance:" + std::string(to_string(condition));
  using C = InvarianceCondition;

  if (condition == C::i) {
    std::vector<CMatrix> flows;
    for (double t : options.t_grid) flows.push_back(c.semigroup_matrix(t));
    return run_sampled(name, options, [&](std::uint64_t, Rng& rng) {
      SampleResult r;
      const Projection x = set.project(seed_point(set.ambient(), rng));
      r.inconclusive = !x.converged;
      for (std::size_t i = 0; i < flows.size(); ++i) {
        const HVector moved = domlab::apply(flows[i], x.point);
        const Projection back = set.project(moved);
        r.inconclusive = r.inconclusive || !back.converged;
        const double m = -(moved - back.point).norm() / (1.0 + x.point.norm());
        if (m < r.margin) {
          r.margin = m;
          r.witness = Witness{{{"x", x.point}}, options.t_grid[i], std::nullopt, m, 0, {}};
        }
      }
      return r;
    });
  }

  const bool restricted = condition == C::v || condition == C::vi;
  std::optional<Verdict> pre;
  if (restricted) {
    if (!c0) throw std::invalid_argument("conditions (v) and (vi) need a set C_0");
    pre = check_c0_hypotheses(c, set, *c0, options);
    if (pre->violated()) {
      Verdict v;
      v.criterion = name;
      v.outcome = Outcome::precondition_failed;
      v.worst_margin = pre->worst_margin;
      v.witness = pre->witness;
      v.notes.emplace_back("sampled check refutes C subset C0 or R_t C0 subset C0");
      return v;
    }
  }

  Verdict v = run_sampled(name, options, [&](std::uint64_t, Rng& rng) {
    SampleResult r;
    bool converged = true;
    HVector u = near_point(set, rng, converged);
    if (restricted) {
      const Projection in_c0 = c0->project(u);
      converged = converged && in_c0.converged;
      u = in_c0.point;
    }
    const Projection pu = set.project(u);
    r.inconclusive = !converged || !pu.converged;
    double lhs = 0.0, rhs = 0.0;
    switch (condition) {
      case C::ii:
      case C::v:
        lhs = c.quadratic(pu.point);
        rhs = c.quadratic(u);
        break;
      case C::iii:
      case C::vi:
        lhs = 0.0;
        rhs = c(u, u - pu.point).real();
        break;
      case C::iv:
        lhs = 0.0;
        rhs = c(pu.point, u - pu.point).real();
        break;
      case C::i: break;
    }
    r.margin = inequality_margin(lhs, rhs);
    r.witness = Witness{{{"u", u}}, std::nullopt, std::nullopt, r.margin, 0, {{"lhs", lhs}, {"rhs", rhs}}};
    return r;
  });
  if (restricted) {
    v.notes.emplace_back("conditional on the sampled C0 hypotheses (C subset C0, R_t C0 subset C0)");
    if (pre->outcome == Outcome::inconclusive && v.outcome == Outcome::pass) v.outcome = Outcome::inconclusive;
  }
  return v;
}

}  // namespace domlab
