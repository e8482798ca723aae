#include "domlab/domination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "domlab/cone.hpp"
#include "domlab/errors.hpp"

namespace domlab {

namespace {

constexpr std::uint64_t kPositivitySeed = 0x9e3779b97f4a7c15ULL;
constexpr std::size_t kPositivityBudget = 2000;

double unit_log_uniform(Rng& rng, double lo_exp, double hi_exp) { return std::pow(10.0, uniform(rng, lo_exp, hi_exp)); }

HVector normalized(HVector x) {
  const double n = x.norm();
  if (n > 0.0) x *= Complex(1.0 / n);
  return x;
}

std::vector<CMatrix> flows(const FormOperator& a, const std::vector<double>& ts) {
  std::vector<CMatrix> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(a.semigroup_matrix(t));
  return out;
}

double re_form(const FormOperator& a, const HVector& x, const HVector& y) { return a(x, y).real(); }

}  // namespace

Hypotheses compute_hypotheses(const FormOperator& a, const FormOperator& b) {
  Hypotheses h;
  h.a_realness_residual = realness_residual(a.matrix(), a.space());
  h.b_realness_residual = realness_residual(b.matrix(), b.space());
  h.a_real = is_real_operator(a);
  h.b_real = is_real_operator(b);
  const bool exact = a.space().is_commutative();
  h.positivity_method = exact ? "exact" : "criterion";
  SamplingOptions opts;
  opts.budget = kPositivityBudget;
  opts.seed = kPositivitySeed;
  auto positive = [&](const FormOperator& f) {
    return exact ? is_positive_commutative(f) : positivity_check(f, PositivityMethod::criterion, opts).passed();
  };
  if (h.a_real) h.a_positive = positive(a);
  if (h.b_real) h.b_positive = positive(b);
  return h;
}

DominationInstance::DominationInstance(FormOperator a, FormOperator b, std::map<std::string, std::string> metadata)
    : a_(std::move(a)), b_(std::move(b)), metadata_(std::move(metadata)) {
  if (!(a_.space() == b_.space())) throw ShapeError("forms of an instance must share the space");
  hyp_ = compute_hypotheses(a_, b_);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(a_.matrix() - b_.matrix(), Eigen::EigenvaluesOnly);
  delta_norm_ = eig.eigenvalues().size() ? eig.eigenvalues().cwiseAbs().maxCoeff() : 0.0;
}

DominationInstance DominationInstance::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("scaling factor must be positive");
  return DominationInstance(domlab::scaled(a_, c), domlab::scaled(b_, c), metadata_);
}

void require_general(const DominationInstance& inst) {
  const auto& h = inst.hypotheses();
  if (!h.a_real) throw HypothesisError("generator A is not real");
  if (!h.b_real) throw HypothesisError("generator B is not real");
  if (!h.b_positive.value_or(false)) throw HypothesisError("semigroup S is not positive");
}

void require_both_positive(const DominationInstance& inst) {
  require_general(inst);
  if (!inst.hypotheses().a_positive.value_or(false)) throw HypothesisError("semigroup T is not positive");
}

void require_theta(const DominationInstance& inst) {
  if (!inst.hypotheses().b_real) throw HypothesisError("generator B is not real");
}

// ---------------------------------------------------------------- projections

HatTilde hat_tilde(const HVector& u, const HVector& v, double tol) {
  require_same_space(u, v);
  require_real(u, tol, "u");
  require_real(v, tol, "v");
  const HVector diff_pos = project_cone(u - v);
  const HVector sum_neg = project_cone(-(u + v));
  const HVector sum_pos = project_cone(u + v);
  const HVector rev_pos = project_cone(v - u);
  return {0.5 * (diff_pos - sum_neg), 0.5 * (diff_pos + sum_neg), 0.5 * (sum_pos - rev_pos),
          0.5 * (sum_pos + rev_pos)};
}

HPair project_C(const HVector& u, const HVector& v) {
  require_same_space(u, v);
  const HVector ur = real_part(u), vr = real_part(v);
  const HVector sum_pos = project_cone(ur + vr);
  const HVector rev_pos = project_cone(vr - ur);
  return {0.5 * (sum_pos - rev_pos), 0.5 * (sum_pos + rev_pos)};
}

HPair project_Cpos(const HVector& u, const HVector& v, double tol) {
  require_same_space(u, v);
  if (!cone_margin(u, tol).is_positive || !cone_margin(v, tol).is_positive)
    throw HypothesisError("closed-form projection onto {0 <= a <= b} needs u, v in H_+; use the Dykstra oracle");
  const auto l = lattice_ops(real_part(u), real_part(v), tol);
  return {0.5 * (u + l.inf), 0.5 * (v + l.sup)};
}

HVector rotate_real(const HVector& u, double theta) { return real_part(std::polar(1.0, theta) * u); }

HPair project_C_theta(const HVector& u, const HVector& v, double theta) {
  require_same_space(u, v);
  const HVector vr = real_part(v);
  const HVector w = project_cone(rotate_real(u, theta) - vr);
  return {u - 0.5 * std::polar(1.0, -theta) * w, vr + 0.5 * w};
}

HPair project_C_theta_printed(const HVector& u, const HVector& v, double theta) {
  require_same_space(u, v);
  const HVector vr = real_part(v);
  const HVector w = project_cone(rotate_real(u, theta) - vr);
  return {u - 0.5 * w, vr + 0.5 * w};
}

// ------------------------------------------------------------------- samplers

OrderSample sample_order_interval(const SpaceDescriptor& space, Rng& rng) {
  HVector p(space), q(space);
  const double mode = uniform(rng, 0.0, 1.0);
  if (mode < 0.5) {
    p = random_positive(space, rng);
    q = random_positive(space, rng);
  } else if (mode < 0.75) {
    p = normalized(rank_one_positive(space, rng));
  } else {
    q = normalized(rank_one_positive(space, rng));
  }
  return {p - q, p + q, p, q};
}

std::pair<HVector, HVector> sample_real_pair(const SpaceDescriptor& space, Rng& rng) {
  if (bernoulli(rng, 0.25)) {
    HVector u = random_real(space, rng);
    HVector v = std::exp(standard_normal(rng)) * random_real(space, rng);
    return {u, v};
  }
  OrderSample s = sample_order_interval(space, rng);
  const double delta = unit_log_uniform(rng, -4.0, 0.0);
  HVector u = s.u + delta * random_real(space, rng);
  HVector v = s.v + delta * random_real(space, rng);
  return {u, v};
}

std::pair<HVector, HVector> sample_positive_pair(const SpaceDescriptor& space, Rng& rng) {
  const double mode = uniform(rng, 0.0, 1.0);
  if (mode < 0.25) return {random_positive(space, rng), random_positive(space, rng)};
  const double delta = unit_log_uniform(rng, -4.0, 0.0);
  HVector base = mode < 0.5 ? random_positive(space, rng) : normalized(rank_one_positive(space, rng));
  HVector moved = project_cone(base + delta * random_real(space, rng));
  if (bernoulli(rng, 0.5)) return {base, moved};
  return {moved, base};
}

std::pair<HVector, HVector> sample_theta_admissible(const SpaceDescriptor& space, Rng& rng) {
  const double mode = uniform(rng, 0.0, 1.0);
  HVector a(space), b(space);
  // Rank-one a with b = 0 and v = |a| reaches the extreme rays, where weak violations live.
  const bool rank_one = mode < 0.5;
  if (rank_one) {
    a = normalized(rank_one_positive(space, rng));
    if (bernoulli(rng, 0.5)) a = -a;
  } else {
    a = random_real(space, rng);
  }
  if (bernoulli(rng, rank_one ? 0.25 : 0.5)) b = random_real(space, rng);
  HVector v = modulus(a) + modulus(b);
  if (bernoulli(rng, 0.5)) v += unit_log_uniform(rng, -3.0, 0.0) * random_positive(space, rng);
  return {a + Complex(0.0, 1.0) * b, v};
}

std::pair<HVector, HVector> sample_theta_pair(const SpaceDescriptor& space, double theta, Rng& rng) {
  if (bernoulli(rng, 0.25)) return {gaussian(space, rng), std::exp(standard_normal(rng)) * random_real(space, rng)};
  auto [u, v] = sample_theta_admissible(space, rng);
  if (bernoulli(rng, 0.5)) {
    // Put the pair on the boundary of C_θ for this θ.
    HVector w = bernoulli(rng, 0.5) ? HVector(space) : random_positive(space, rng);
    v = rotate_real(u, theta) + w;
  }
  const double delta = unit_log_uniform(rng, -4.0, 0.0);
  u += delta * gaussian(space, rng);
  v += delta * random_real(space, rng);
  return {u, v};
}

// ------------------------------------------------------------ pointwise margins

double direct_margin(const CMatrix& tt, const CMatrix& st, const HVector& u, const HVector& v) {
  const HVector tu = domlab::apply(tt, u), sv = domlab::apply(st, v);
  const double scale = 1.0 + u.norm() + v.norm();
  return std::min(cone_margin(sv - tu).margin, cone_margin(sv + tu).margin) / scale;
}

std::string_view to_string(Thm21 c) {
  switch (c) {
    case Thm21::ii: return "ii";
    case Thm21::iii: return "iii";
    case Thm21::iv: return "iv";
    case Thm21::v: return "v";
    case Thm21::vi: return "vi";
    case Thm21::vii: return "vii";
    case Thm21::vii_corrected: return "vii_corrected";
  }
  return "?";
}

std::optional<Thm21> thm21_from_string(std::string_view s) {
  for (Thm21 c : {Thm21::ii, Thm21::iii, Thm21::iv, Thm21::v, Thm21::vi, Thm21::vii, Thm21::vii_corrected})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

double thm21_margin(const DominationInstance& inst, Thm21 c, const HVector& u, const HVector& v) {
  const auto& a = inst.a();
  const auto& b = inst.b();
  const HatTilde h = hat_tilde(u, v);
  double lhs = 0.0, rhs = 0.0;
  switch (c) {
    case Thm21::ii:
      lhs = a.quadratic(u - h.u_hat) + b.quadratic(v + h.v_hat);
      rhs = a.quadratic(u) + b.quadratic(v);
      break;
    case Thm21::iii:
      lhs = a.quadratic(h.u_tilde) + b.quadratic(h.v_tilde);
      rhs = a.quadratic(u) + b.quadratic(v);
      break;
    case Thm21::iv:
      lhs = re_form(b, v, h.v_hat);
      rhs = re_form(a, u, h.u_hat);
      break;
    case Thm21::v:
      lhs = re_form(a, u, h.u_tilde) + re_form(b, v, h.v_tilde);
      rhs = a.quadratic(u) + b.quadratic(v);
      break;
    case Thm21::vi:
      lhs = a.quadratic(h.u_hat) + b.quadratic(h.v_hat);
      rhs = re_form(a, u, h.u_hat) - re_form(b, v, h.v_hat);
      break;
    case Thm21::vii:
      lhs = a.quadratic(h.u_tilde) + b.quadratic(h.u_tilde);
      rhs = re_form(a, u, h.u_tilde) + re_form(b, v, h.v_tilde);
      break;
    case Thm21::vii_corrected:
      lhs = a.quadratic(h.u_tilde) + b.quadratic(h.v_tilde);
      rhs = re_form(a, u, h.u_tilde) + re_form(b, v, h.v_tilde);
      break;
  }
  return inequality_margin(lhs, rhs);
}

double positive_direct_margin(const CMatrix& tt, const CMatrix& st, const HVector& u) {
  return cone_margin(domlab::apply(st, u) - domlab::apply(tt, u)).margin / (1.0 + u.norm());
}

double thm31_ii_margin(const DominationInstance& inst, const HVector& u, const HVector& v) {
  const auto l = lattice_ops(real_part(u), real_part(v));
  const double lhs = inst.a().quadratic(0.5 * (u + l.inf)) + inst.b().quadratic(0.5 * (v + l.sup));
  const double rhs = inst.a().quadratic(u) + inst.b().quadratic(v);
  return inequality_margin(lhs, rhs);
}

namespace {

HVector delta_apply(const DominationInstance& inst, const HVector& p) { return inst.a().apply(p) - inst.b().apply(p); }

}  // namespace

double thm31_pairing_margin(const DominationInstance& inst, const HVector& p, const HVector& q) {
  return inner(delta_apply(inst, p), q).real() / (1.0 + inst.delta_norm() * p.norm() * q.norm());
}

double thm31_cone_margin(const DominationInstance& inst, const HVector& p) {
  return cone_margin(delta_apply(inst, p)).margin / (1.0 + inst.delta_norm() * p.norm());
}

double thm41_direct_margin(const CMatrix& tt, const CMatrix& st, const HVector& u, const HVector& v, double theta) {
  const HVector gap = domlab::apply(st, v) - rotate_real(domlab::apply(tt, u), theta);
  return cone_margin(gap).margin / (1.0 + u.norm() + v.norm());
}

double thm41_ii_margin(const DominationInstance& inst, const HVector& u, const HVector& v, double theta, bool printed) {
  const HPair proj = printed ? project_C_theta_printed(u, v, theta) : project_C_theta(u, v, theta);
  const double lhs = inst.a().quadratic(proj.first) + inst.b().quadratic(proj.second);
  const double rhs = inst.a().quadratic(u) + inst.b().quadratic(v);
  return inequality_margin(lhs, rhs);
}

double thm41_modulus_margin(const DominationInstance& inst, const ConvexSetOracle& set, const HVector& u,
                            const HVector& v) {
  const Projection p = set.project(join_pair(u, v));
  if (!p.converged) return std::numeric_limits<double>::quiet_NaN();
  auto [pu, pv] = split_pair(p.point, inst.space());
  const double lhs = inst.a().quadratic(pu) + inst.b().quadratic(pv);
  const double rhs = inst.a().quadratic(u) + inst.b().quadratic(v);
  return inequality_margin(lhs, rhs);
}

// --------------------------------------------------------------------- checks

Verdict check_domination_direct(const DominationInstance& inst, const SamplingOptions& options) {
  require_general(inst);
  const auto& space = inst.space();
  const auto tt = flows(inst.a(), options.t_grid), st = flows(inst.b(), options.t_grid);
  return run_sampled("direct", options, [&](std::uint64_t, Rng& rng) {
    const OrderSample s = sample_order_interval(space, rng);
    SampleResult r;
    for (std::size_t i = 0; i < tt.size(); ++i) {
      const double m = direct_margin(tt[i], st[i], s.u, s.v);
      if (m < r.margin) {
        r.margin = m;
        r.witness = Witness{{{"u", s.u}, {"v", s.v}}, options.t_grid[i], std::nullopt, m, 0, {}};
      }
    }
    return r;
  });
}

Verdict check_thm21(const DominationInstance& inst, Thm21 c, const SamplingOptions& options) {
  require_general(inst);
  const auto& space = inst.space();
  Verdict v = run_sampled("thm21:" + std::string(to_string(c)), options, [&](std::uint64_t, Rng& rng) {
    auto [u, w] = sample_real_pair(space, rng);
    SampleResult r;
    r.margin = thm21_margin(inst, c, u, w);
    r.witness = Witness{{{"u", u}, {"v", w}}, std::nullopt, std::nullopt, r.margin, 0, {}};
    return r;
  });
  if (c == Thm21::iv || c == Thm21::v || c == Thm21::vi || c == Thm21::vii || c == Thm21::vii_corrected)
    v.notes.emplace_back("generalized-ideal clause holds trivially: both form domains are all of H");
  return v;
}

std::string_view to_string(Thm31 c) {
  switch (c) {
    case Thm31::ii: return "ii";
    case Thm31::iii_c_sampled: return "iii_c";
    case Thm31::iii_c_exact_commutative: return "iii_c_exact";
  }
  return "?";
}

std::optional<Thm31> thm31_from_string(std::string_view s) {
  for (Thm31 c : {Thm31::ii, Thm31::iii_c_sampled, Thm31::iii_c_exact_commutative})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

Verdict check_positive_domination_direct(const DominationInstance& inst, const SamplingOptions& options) {
  require_both_positive(inst);
  const auto& space = inst.space();
  const auto tt = flows(inst.a(), options.t_grid), st = flows(inst.b(), options.t_grid);
  return run_sampled("thm31:direct", options, [&](std::uint64_t, Rng& rng) {
    const HVector u = bernoulli(rng, 0.5) ? normalized(rank_one_positive(space, rng)) : random_positive(space, rng);
    SampleResult r;
    for (std::size_t i = 0; i < tt.size(); ++i) {
      const double m = positive_direct_margin(tt[i], st[i], u);
      if (m < r.margin) {
        r.margin = m;
        r.witness = Witness{{{"u", u}}, options.t_grid[i], std::nullopt, m, 0, {}};
      }
    }
    return r;
  });
}

namespace {

struct DeltaSample {
  HVector p;
  HVector q_witness;
  HVector q_random;
  double cone;
  double pairing;
};

DeltaSample delta_sample(const DominationInstance& inst, Rng& rng) {
  const auto& space = inst.space();
  HVector p = bernoulli(rng, 0.5) ? normalized(rank_one_positive(space, rng)) : normalized(random_positive(space, rng));
  const HVector y = delta_apply(inst, p);
  const LowestEigen low = lowest_eigen(y);
  HVector q_witness = low.vector;
  HVector q_random = normalized(random_positive(space, rng));
  const double cone = thm31_cone_margin(inst, p);
  const double pairing =
      std::min(thm31_pairing_margin(inst, p, q_witness), thm31_pairing_margin(inst, p, q_random));
  return {std::move(p), std::move(q_witness), std::move(q_random), cone, pairing};
}

}  // namespace

Verdict check_thm31(const DominationInstance& inst, Thm31 c, const SamplingOptions& options) {
  require_both_positive(inst);
  const auto& space = inst.space();
  Verdict v;
  switch (c) {
    case Thm31::ii:
      v = run_sampled("thm31:ii", options, [&](std::uint64_t, Rng& rng) {
        auto [u, w] = sample_positive_pair(space, rng);
        SampleResult r;
        r.margin = thm31_ii_margin(inst, u, w);
        r.witness = Witness{{{"u", u}, {"v", w}}, std::nullopt, std::nullopt, r.margin, 0, {}};
        return r;
      });
      break;
    case Thm31::iii_c_sampled:
      v = run_sampled("thm31:iii_c", options, [&](std::uint64_t, Rng& rng) {
        DeltaSample s = delta_sample(inst, rng);
        SampleResult r;
        r.margin = s.pairing;
        const bool witness_side = thm31_pairing_margin(inst, s.p, s.q_witness) <= thm31_pairing_margin(inst, s.p, s.q_random);
        r.witness = Witness{{{"p", s.p}, {"q", witness_side ? s.q_witness : s.q_random}},
                            std::nullopt, std::nullopt, r.margin, 0, {{"cone_margin", s.cone}}};
        return r;
      });
      break;
    case Thm31::iii_c_exact_commutative: {
      if (!space.is_commutative()) throw HypothesisError("exact Δ test needs a fully commutative space");
      const CMatrix delta = inst.a().matrix() - inst.b().matrix();
      const double scale = 1.0 + inst.delta_norm();
      v.criterion = "thm31:iii_c_exact";
      v.samples = 0;
      Eigen::Index worst_r = 0, worst_c = 0;
      double worst = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < delta.rows(); ++r)
        for (Eigen::Index k = 0; k < delta.cols(); ++k) {
          const double m = delta(r, k).real() / scale;
          if (m < worst) {
            worst = m;
            worst_r = r;
            worst_c = k;
          }
        }
      v.worst_margin = worst;
      Witness w;
      w.margin = worst;
      w.vectors = {{"p", HVector::basis(space, worst_c)}, {"q", HVector::basis(space, worst_r)}};
      w.values = {{"row", static_cast<double>(worst_r)}, {"col", static_cast<double>(worst_c)}};
      v.witness = std::move(w);
      v.outcome = worst < -options.tol ? Outcome::violation : Outcome::pass;
      break;
    }
  }
  v.notes.emplace_back("domain clauses (a) and (b) hold trivially: both form domains are all of H");
  return v;
}

Verdict check_delta_cone_preserving(const DominationInstance& inst, const SamplingOptions& options) {
  require_both_positive(inst);
  return run_sampled("thm31:delta_cone", options, [&](std::uint64_t, Rng& rng) {
    DeltaSample s = delta_sample(inst, rng);
    SampleResult r;
    r.margin = s.cone;
    r.witness = Witness{{{"p", s.p}}, std::nullopt, std::nullopt, r.margin, 0, {{"pairing_margin", s.pairing}}};
    return r;
  });
}

DualityReport check_delta_duality(const DominationInstance& inst, const SamplingOptions& options) {
  DualityReport out;
  out.samples = options.budget;
  for (std::uint64_t i = 0; i < options.budget; ++i) {
    Rng rng = derive_rng(options.seed, i);
    const DeltaSample s = delta_sample(inst, rng);
    const bool cone_fail = s.cone < -options.tol;
    const bool pairing_fail = s.pairing < -options.tol;
    out.cone_failures += cone_fail;
    out.pairing_failures += pairing_fail;
    out.disagreements += cone_fail != pairing_fail;
  }
  return out;
}

Verdict check_thm41(const DominationInstance& inst, Thm41Mode mode, const SamplingOptions& options, bool real_only) {
  require_theta(inst);
  const auto& space = inst.space();
  const auto& thetas = options.theta_grid;
  if (thetas.empty()) throw std::invalid_argument("θ grid is empty");
  if (mode == Thm41Mode::direct) {
    const auto tt = flows(inst.a(), options.t_grid), st = flows(inst.b(), options.t_grid);
    return run_sampled(real_only ? "thm41:direct_real" : "thm41:direct", options, [&](std::uint64_t, Rng& rng) {
      auto [u, v] = sample_theta_admissible(space, rng);
      if (real_only) u = real_part(u);
      SampleResult r;
      for (std::size_t i = 0; i < tt.size(); ++i) {
        const HVector tu = domlab::apply(tt[i], u), sv = domlab::apply(st[i], v);
        const double scale = 1.0 + u.norm() + v.norm();
        for (double theta : thetas) {
          const double m = cone_margin(sv - rotate_real(tu, theta)).margin / scale;
          if (m < r.margin) {
            r.margin = m;
            r.witness = Witness{{{"u", u}, {"v", v}}, options.t_grid[i], theta, m, 0, {}};
          }
        }
      }
      return r;
    });
  }
  if (mode == Thm41Mode::criterion_ii) {
    // For real T, re(e^{iθ}T_t a) = T_t re(e^{iθ}a), so invariance of C_0 ∩ C_π already decides (i).
    const bool exact = space.is_commutative() || inst.hypotheses().a_real;
    const ConvexSetOracle set = modulus_set(space, exact ? 2 : 4);
    Verdict out = run_sampled("thm41:ii", options, [&](std::uint64_t, Rng& rng) {
      std::uniform_int_distribution<std::size_t> pick(0, thetas.size() - 1);
      auto [u, v] = sample_theta_pair(space, thetas[pick(rng)], rng);
      SampleResult r;
      const double m = thm41_modulus_margin(inst, set, u, v);
      r.inconclusive = std::isnan(m);
      r.margin = r.inconclusive ? std::numeric_limits<double>::infinity() : m;
      r.witness = Witness{{{"u", u}, {"v", v}}, std::nullopt, std::nullopt, r.margin, 0, {}};
      return r;
    });
    if (!space.is_commutative())
      out.notes.emplace_back(exact ? "T real: tested on the set -b <= re a <= b, which decides (i)"
                                   : "projection by Dykstra over 4 angles (outer approximation of the set)");
    return out;
  }
  const bool printed = mode == Thm41Mode::criterion_ii_printed;
  return run_sampled(printed ? "thm41:ii_printed" : "thm41:ii_per_theta", options, [&](std::uint64_t, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, thetas.size() - 1);
    const double theta = thetas[pick(rng)];
    auto [u, v] = sample_theta_pair(space, theta, rng);
    SampleResult r;
    r.margin = thm41_ii_margin(inst, u, v, theta, printed);
    r.witness = Witness{{{"u", u}, {"v", v}}, std::nullopt, theta, r.margin, 0, {}};
    return r;
  });
}

double theta_reduction_margin(const DominationInstance& inst, const HVector& u, const HVector& v, double t) {
  const CMatrix tt = inst.a().semigroup_matrix(t), st = inst.b().semigroup_matrix(t);
  return std::min(thm41_direct_margin(tt, st, u, v, 0.0), thm41_direct_margin(tt, st, u, v, std::numbers::pi));
}

Verdict commutative_matrix_domination(const DominationInstance& inst, const std::vector<double>& t_grid, double tol) {
  const auto& space = inst.space();
  if (!space.is_commutative()) throw HypothesisError("entrywise oracle needs a fully commutative space");
  Verdict v;
  v.criterion = "oracle:commutative";
  Witness w;
  double worst = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const CMatrix tt = inst.a().semigroup_matrix(t), st = inst.b().semigroup_matrix(t);
    for (Eigen::Index r = 0; r < tt.rows(); ++r)
      for (Eigen::Index c = 0; c < tt.cols(); ++c) {
        const double m = st(r, c).real() - std::abs(tt(r, c));
        if (m < worst) {
          worst = m;
          w.t = t;
          w.values = {{"row", static_cast<double>(r)}, {"col", static_cast<double>(c)}};
          w.vectors = {{"u", HVector::basis(space, c)}, {"v", HVector::basis(space, c)}};
        }
      }
  }
  w.margin = worst;
  w.values["decided"] = std::abs(worst) > kOracleDecisionMargin ? 1.0 : 0.0;
  v.worst_margin = worst;
  v.witness = std::move(w);
  v.outcome = worst < -tol ? Outcome::violation : Outcome::pass;
  if (std::abs(worst) <= kOracleDecisionMargin) v.notes.emplace_back("undecided: |margin| <= 1e-6");
  return v;
}

}  // namespace domlab
