#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "domlab/cone.hpp"
#include "domlab/convex.hpp"
#include "domlab/domination.hpp"
#include "domlab/errors.hpp"
#include "domlab/forms.hpp"
#include "domlab/instances.hpp"
#include "domlab/projections.hpp"
#include "domlab/random.hpp"
#include "helpers.hpp"

using namespace domlab;
using namespace testing_support;
using Catch::Approx;

namespace {

SamplingOptions budget(std::size_t n, std::uint64_t seed = 1) {
  SamplingOptions o;
  o.budget = n;
  o.seed = seed;
  o.t_grid = log_grid(1e-3, 10.0, 9);
  o.theta_grid = default_theta_grid(16);
  return o;
}

DominationInstance from_kind(InstanceKind kind, std::vector<int> blocks, std::uint64_t seed,
                             std::string variant = "", std::optional<double> eps = std::nullopt) {
  GenParams p;
  p.blocks = std::move(blocks);
  p.seed = seed;
  p.variant = std::move(variant);
  p.eps = eps;
  return to_domination_instance(gen_instance(kind, p));
}

DominationInstance laplacian_pair(const CMatrix& a, const CMatrix& b) {
  SpaceDescriptor s(std::vector<int>(static_cast<std::size_t>(a.rows()), 1));
  return DominationInstance(FormOperator(s, a), FormOperator(s, b));
}

}  // namespace

TEST_CASE("hat and tilde transforms", "[domination]") {
  Rng rng = derive_rng(1, 0);
  SpaceDescriptor s({2, 1});
  for (int k = 0; k < 50; ++k) {
    const HVector u = random_real(s, rng), v = random_real(s, rng);
    const double scale = 1 + u.norm() + v.norm();
    const HatTilde h = hat_tilde(u, v);
    CHECK(dist(u - h.u_hat, h.u_tilde) <= 1e-10 * scale);
    CHECK(dist(v + h.v_hat, h.v_tilde) <= 1e-10 * scale);
    auto [pu, pv] = project_C(u, v);
    CHECK(dist(pu, h.u_tilde) <= 1e-10 * scale);
    CHECK(dist(pv, h.v_tilde) <= 1e-10 * scale);

    // v = 0: (û, v̂) = (u/2, |u|/2).
    const HatTilde z = hat_tilde(u, HVector(s));
    CHECK(dist(z.u_hat, 0.5 * u) <= 1e-12 * scale);
    CHECK(dist(z.v_hat, 0.5 * modulus(u)) <= 1e-12 * scale);

    // Inside C the hats vanish.
    const HVector p = random_positive(s, rng), q = random_positive(s, rng);
    const HatTilde in = hat_tilde(p - q, p + q);
    CHECK(in.u_hat.norm() <= 1e-10 * (1 + p.norm() + q.norm()));
    CHECK(in.v_hat.norm() <= 1e-10 * (1 + p.norm() + q.norm()));
  }
  CHECK_THROWS_AS(hat_tilde(one_block(mat({{0.0, 1.0}, {0.0, 0.0}})), HVector(SpaceDescriptor({2}))), NotRealError);
}

TEST_CASE("projection onto the positive order set", "[domination]") {
  SpaceDescriptor c({1, 1});
  auto [a, b] = project_Cpos(diag_vec(c, {3.0, 1.0}), diag_vec(c, {1.0, 3.0}));
  CHECK(dist(a, diag_vec(c, {2.0, 1.0})) <= 1e-14);
  CHECK(dist(b, diag_vec(c, {2.0, 3.0})) <= 1e-14);

  Rng rng = derive_rng(2, 0);
  for (const auto& blocks : structures()) {
    SpaceDescriptor s(blocks);
    const auto oracle = positive_order_set(s);
    for (int k = 0; k < 20; ++k) {
      const HVector u = random_positive(s, rng), v = random_positive(s, rng);
      auto [pa, pb] = project_Cpos(u, v);
      const Projection ref = oracle.project(join_pair(u, v));
      REQUIRE(ref.converged);
      // Projection onto {a ≤ b}; it is the answer whenever it lands in {a ≥ 0}.
      CHECK(cone_margin(pb - pa).is_positive);
      const bool agrees = dist(join_pair(pa, pb), ref.point) <= 1e-6 * (1 + u.norm() + v.norm());
      CHECK(agrees == cone_margin(pa).is_positive);
      if (s.is_commutative()) CHECK(agrees);
      auto [ua, ub] = project_Cpos(u, u);
      CHECK(dist(ua, u) + dist(ub, u) <= 1e-10 * (1 + u.norm()));
      auto [za, zb] = project_Cpos(HVector(s), v);
      CHECK(za.norm() + dist(zb, v) <= 1e-10 * (1 + v.norm()));
    }
  }
  CHECK_THROWS_AS(project_Cpos(diag_vec(c, {-1.0, 0.0}), diag_vec(c, {1.0, 1.0})), HypothesisError);

  // Non-commutative failure: the first component leaves H_+.
  const HVector e11 = one_block(mat({{1.0, 0.0}, {0.0, 0.0}}));
  const HVector ones = one_block(mat({{1.0, 1.0}, {1.0, 1.0}}));
  auto [na, nb] = project_Cpos(e11, ones);
  CHECK(na.block(0)(1, 1).real() < -0.08);
  CHECK(dist(join_pair(na, nb), positive_order_set(e11.space()).project(join_pair(e11, ones)).point) > 0.1);
}

TEST_CASE("order interval sampler", "[domination]") {
  Rng rng = derive_rng(3, 0);
  for (const auto& blocks : structures()) {
    SpaceDescriptor s(blocks);
    for (int k = 0; k < 50; ++k) {
      const OrderSample o = sample_order_interval(s, rng);
      CHECK(cone_margin(o.v - o.u).is_positive);
      CHECK(cone_margin(o.v + o.u).is_positive);
      CHECK(dist(o.u, o.p - o.q) <= 1e-14 * (1 + o.u.norm()));
    }
  }
}

TEST_CASE("theta-admissible sampler", "[domination]") {
  Rng rng = derive_rng(4, 0);
  SpaceDescriptor s({2, 2});
  for (int k = 0; k < 50; ++k) {
    auto [u, v] = sample_theta_admissible(s, rng);
    CHECK(is_real(v));
    for (double theta : default_theta_grid(32)) CHECK(cone_margin(v - rotate_real(u, theta)).is_positive);
  }
}

TEST_CASE("commutative oracle closed form", "[domination]") {
  const CMatrix l = mat({{1.0, -1.0}, {-1.0, 1.0}});
  const auto inst = laplacian_pair(l, l);
  for (double t : {0.01, 1.0, 4.0}) {
    const CMatrix tt = inst.a().semigroup_matrix(t);
    const double e = std::exp(-2 * t);
    CHECK(tt(0, 0).real() == Approx(0.5 * (1 + e)).epsilon(1e-12));
    CHECK(tt(0, 1).real() == Approx(0.5 * (1 - e)).epsilon(1e-12));
  }
  const std::vector<double> grid = log_grid(1e-3, 10.0, 9);
  CHECK(commutative_matrix_domination(inst, grid).passed());
  CHECK(commutative_matrix_domination(laplacian_pair(l + mat({{0.5, 0.0}, {0.0, 2.0}}), l), grid).passed());

  // Sign flip at magnitude 1.5 versus a coupling of 1: (T_t)_12 ≈ −1.5t beats (S_t)_12 ≈ t.
  const auto flip = laplacian_pair(mat({{2.0, 1.5}, {1.5, 2.0}}), mat({{2.0, -1.0}, {-1.0, 2.0}}));
  const Verdict v = commutative_matrix_domination(flip, grid);
  CHECK(v.violated());
  REQUIRE(v.witness);
  CHECK(*v.witness->t <= 1.0);
  CHECK(v.witness->values.at("decided") == 1.0);

  CHECK_THROWS(commutative_matrix_domination(from_kind(InstanceKind::derivation_example, {2}, 1), grid));
}

TEST_CASE("direct domination examples", "[domination]") {
  const auto opts = budget(300);
  const auto self = from_kind(InstanceKind::derivation_example, {2, 1}, 3);
  const DominationInstance same(self.b(), self.b());
  CHECK(check_domination_direct(same, opts).passed());
  CHECK(check_domination_direct(self, opts).passed());
  const auto flip = laplacian_pair(mat({{2.0, 1.5}, {1.5, 2.0}}), mat({{2.0, -1.0}, {-1.0, 2.0}}));
  CHECK(check_domination_direct(flip, opts).violated());
  const auto non_real = from_kind(InstanceKind::adversarial, {2, 1}, 4, "non_real");
  CHECK_THROWS_AS(check_domination_direct(non_real, opts), HypothesisError);
}

TEST_CASE("theorem 2.1 criteria", "[domination]") {
  const auto opts = budget(400);
  const auto inst = from_kind(InstanceKind::derivation_example, {2, 1}, 5);
  for (auto c : {Thm21::ii, Thm21::iii, Thm21::iv, Thm21::v, Thm21::vi, Thm21::vii_corrected}) {
    const Verdict v = check_thm21(inst, c, opts);
    INFO(to_string(c));
    CHECK(v.passed());
    CHECK(v.worst_margin >= -1e-8);
  }
  // Inside C every inequality is an equality or trivial.
  Rng rng = derive_rng(6, 0);
  for (int k = 0; k < 20; ++k) {
    const OrderSample o = sample_order_interval(inst.space(), rng);
    for (auto c : {Thm21::ii, Thm21::iii, Thm21::iv, Thm21::v, Thm21::vi, Thm21::vii_corrected})
      CHECK(thm21_margin(inst, c, o.u, o.v) >= -1e-10);
  }
  const auto flip = laplacian_pair(mat({{2.0, 1.5}, {1.5, 2.0}}), mat({{2.0, -1.0}, {-1.0, 2.0}}));
  bool any = false;
  for (auto c : {Thm21::ii, Thm21::iii, Thm21::iv, Thm21::v, Thm21::vi, Thm21::vii_corrected})
    any = any || check_thm21(flip, c, opts).violated();
  CHECK(any);
}

TEST_CASE("theorem 3.1 criteria and duality", "[domination]") {
  const auto opts = budget(300);
  const auto inst = from_kind(InstanceKind::derivation_example, {2, 1}, 7);
  const DominationInstance same(inst.b(), inst.b());
  for (const auto* d : {&inst, &same}) {
    CHECK(check_positive_domination_direct(*d, opts).passed());
    CHECK(check_thm31(*d, Thm31::ii, opts).passed());
    CHECK(check_thm31(*d, Thm31::iii_c_sampled, opts).passed());
    CHECK(check_delta_cone_preserving(*d, opts).passed());
  }
  CHECK_THROWS(check_thm31(inst, Thm31::iii_c_exact_commutative, opts));

  // Commutative A = B − εW, W entrywise positive: exact Δ test fails by ≈ ε.
  const CMatrix b = mat({{2.0, -1.0}, {-1.0, 2.0}});
  const double eps = 0.1;
  const auto pert = laplacian_pair(b - eps * mat({{0.0, 1.0}, {1.0, 0.0}}), b);
  const Verdict exact = check_thm31(pert, Thm31::iii_c_exact_commutative, opts);
  CHECK(exact.violated());
  CHECK(exact.worst_margin == Approx(-eps).epsilon(0.2));
  CHECK(check_positive_domination_direct(pert, opts).violated());
  CHECK(check_thm31(pert, Thm31::ii, opts).violated());

  const DualityReport dual = check_delta_duality(pert, opts);
  CHECK(dual.samples == opts.budget);
  CHECK(dual.disagreements == 0);
  CHECK(dual.cone_failures > 0);
  CHECK(check_delta_duality(inst, opts).cone_failures == 0);
}

TEST_CASE("theorem 4.1", "[domination]") {
  const auto opts = budget(200);
  const auto inst = from_kind(InstanceKind::derivation_example, {2}, 8, "dephasing");
  CHECK(check_thm41(inst, Thm41Mode::direct, opts).passed());
  CHECK(check_thm41(inst, Thm41Mode::direct, opts, true).passed());
  CHECK(check_thm41(inst, Thm41Mode::criterion_ii, opts).passed());
  const DominationInstance same(inst.b(), inst.b());
  CHECK(check_thm41(same, Thm41Mode::direct, opts).passed());

  const auto mag = from_kind(InstanceKind::magnetic, {1, 1, 1, 1}, 9);
  CHECK(check_thm41(mag, Thm41Mode::direct, opts).passed());
  CHECK(check_thm41(mag, Thm41Mode::criterion_ii, opts).passed());

  const auto flip = laplacian_pair(mat({{2.0, 1.5}, {1.5, 2.0}}), mat({{2.0, -1.0}, {-1.0, 2.0}}));
  CHECK(check_thm41(flip, Thm41Mode::direct, opts).violated());
  CHECK(check_thm41(flip, Thm41Mode::criterion_ii, opts).violated());

  // P_θ agrees with Dykstra on C_θ.
  Rng rng = derive_rng(10, 0);
  SpaceDescriptor s({2, 1});
  for (double theta : default_theta_grid(16)) {
    const HVector u = gaussian(s, rng), v = gaussian_real(s, rng);
    auto [pu, pv] = project_C_theta(u, v, theta);
    const Projection ref = theta_set_dykstra(s, theta).project(join_pair(u, v));
    REQUIRE(ref.converged);
    CHECK(dist(join_pair(pu, pv), ref.point) <= 1e-6 * (1 + u.norm() + v.norm()));
  }
  // The phase-free variant differs away from θ = 0.
  const HVector u = one_block(mat({{-2.0}}));
  const HVector v(u.space());
  auto [a0, b0] = project_C_theta_printed(u, v, std::numbers::pi);
  CHECK(cone_margin(b0 - rotate_real(a0, std::numbers::pi)).margin < -0.1);
}

TEST_CASE("theta reduction reproduces general violations", "[domination]") {
  const auto flip = laplacian_pair(mat({{2.0, 1.5}, {1.5, 2.0}}), mat({{2.0, -1.0}, {-1.0, 2.0}}));
  const Verdict direct = check_domination_direct(flip, budget(300));
  REQUIRE(direct.violated());
  const Witness& w = *direct.witness;
  CHECK(theta_reduction_margin(flip, w.vector("u"), w.vector("v"), *w.t) < 0.0);

  // For real u with u + v ≥ 0, the θ = 0 criterion equals the thm21:ii inequality.
  const auto inst = from_kind(InstanceKind::derivation_example, {2, 1}, 11);
  Rng rng = derive_rng(12, 0);
  for (int k = 0; k < 30; ++k) {
    const HVector p = random_positive(inst.space(), rng), x = random_real(inst.space(), rng);
    const HVector u = x, v = p - x;
    CHECK(thm41_ii_margin(inst, u, v, 0.0) == Approx(thm21_margin(inst, Thm21::ii, u, v)).margin(1e-10));
  }
}

TEST_CASE("scaling invariance", "[domination]") {
  const auto opts = budget(200);
  const auto good = from_kind(InstanceKind::derivation_example, {2, 1}, 13);
  const auto flip = laplacian_pair(mat({{2.0, 1.5}, {1.5, 2.0}}), mat({{2.0, -1.0}, {-1.0, 2.0}}));
  for (double c : {0.1, 7.0}) {
    for (const auto* d : {&good, &flip}) {
      const DominationInstance sc = d->scaled(c);
      CHECK(check_thm21(sc, Thm21::iii, opts).outcome == check_thm21(*d, Thm21::iii, opts).outcome);
      SamplingOptions wide = opts;
      wide.t_grid = log_grid(1e-4, 100.0, 13);
      CHECK(check_domination_direct(sc, wide).outcome == check_domination_direct(*d, wide).outcome);
    }
  }
  CHECK_THROWS_AS(good.scaled(0.0), std::invalid_argument);
}
