#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "domlab/cone.hpp"
#include "domlab/convex.hpp"
#include "domlab/forms.hpp"
#include "domlab/invariance.hpp"
#include "domlab/projections.hpp"
#include "domlab/random.hpp"
#include "helpers.hpp"

using namespace domlab;
using namespace testing_support;

namespace {

SamplingOptions budget(std::size_t n, std::uint64_t seed = 1) {
  SamplingOptions o;
  o.budget = n;
  o.seed = seed;
  o.t_grid = log_grid(1e-2, 10.0, 5);
  return o;
}

FormOperator dephasing() {
  const HVector b = one_block(mat({{1.0, 0.0}, {0.0, -1.0}}));
  return FormOperator(b.space(), derivation_generator(b));
}

/// Random pair in H × H with complex first and second components.
HVector random_pair(const SpaceDescriptor& s, Rng& rng) { return join_pair(gaussian(s, rng), gaussian(s, rng)); }

}  // namespace

TEST_CASE("dykstra with one member is that member", "[invariance]") {
  SpaceDescriptor s({2, 1});
  Rng rng = derive_rng(1, 0);
  const auto cone = positive_cone(s);
  for (int k = 0; k < 20; ++k) {
    const HVector x = gaussian(s, rng);
    const Projection p = dykstra_project({cone}, x);
    CHECK(p.converged);
    CHECK(dist(p.point, project_cone(x)) == 0.0);
  }
}

TEST_CASE("dykstra on commutative half-space constraints is an entrywise clamp", "[invariance]") {
  // {x : x ≥ 0} ∩ {x : 1 − x ≥ 0} entrywise on real coordinates: clamp to [0, 1].
  SpaceDescriptor s({1, 1, 1});
  const auto lower = positive_cone(s);
  const auto upper = cone_preimage(
      "x<=1", s, [s](const HVector& x) { return HVector::identity(s) - x; }, [](const HVector& y) { return -1.0 * y; },
      1.0);
  const auto box = ConvexSetOracle::intersection("box", {lower, upper});
  Rng rng = derive_rng(2, 0);
  for (int k = 0; k < 50; ++k) {
    const HVector x = 2.0 * gaussian_real(s, rng);
    HVector clamp(s);
    for (std::ptrdiff_t j = 0; j < s.dim(); ++j) clamp.coeffs()(j) = std::clamp(x.coeffs()(j).real(), 0.0, 1.0);
    const Projection p = box.project(x);
    CHECK(p.converged);
    CHECK(dist(p.point, clamp) <= 1e-8);
  }
}

TEST_CASE("closed forms agree with dykstra", "[invariance]") {
  Rng rng = derive_rng(3, 0);
  for (const auto& blocks : structures()) {
    SpaceDescriptor s(blocks);
    const auto closed = domination_set(s);
    const auto iterative = domination_set_dykstra(s);
    for (int k = 0; k < 40; ++k) {
      const HVector x = random_pair(s, rng);
      const Projection p = iterative.project(x);
      REQUIRE(p.converged);
      CHECK(dist(closed.project(x).point, p.point) <= 1e-6 * (1 + x.norm()));
    }
    for (int k = 0; k < 8; ++k) {
      const double theta = 2 * std::numbers::pi * k / 8.0 + 0.1;
      const auto th = theta_set(s, theta);
      const auto th_d = theta_set_dykstra(s, theta);
      const HVector x = random_pair(s, rng);
      const Projection p = th_d.project(x);
      REQUIRE(p.converged);
      CHECK(dist(th.project(x).point, p.point) <= 1e-6 * (1 + x.norm()));
    }
  }
}

TEST_CASE("projection onto C at v = 0", "[invariance]") {
  Rng rng = derive_rng(4, 0);
  SpaceDescriptor s({2, 1});
  for (int k = 0; k < 20; ++k) {
    const HVector u = random_real(s, rng);
    auto [a, b] = project_C(u, HVector(s));
    CHECK(dist(a, 0.5 * u) <= 1e-12 * (1 + u.norm()));
    CHECK(dist(b, 0.5 * modulus(u)) <= 1e-12 * (1 + u.norm()));
  }
}

TEST_CASE("modulus set", "[invariance]") {
  Rng rng = derive_rng(5, 0);
  SECTION("commutative: second-order cone per coordinate") {
    SpaceDescriptor s({1, 1});
    const auto m = modulus_set(s);
    const HVector a = diag_vec(s, {Complex(3.0, 4.0), Complex(0.5, 0.0)});
    const HVector b = diag_vec(s, {Complex(1.0, 0.0), Complex(1.0, 2.0)});
    auto [pa, pb] = split_pair(m.project(join_pair(a, b)).point, s);
    // |z| = 5 > r = 1: s = 3, point 3·z/5.
    CHECK(std::abs(pa.coeffs()(0) - Complex(1.8, 2.4)) <= 1e-14);
    CHECK(std::abs(pb.coeffs()(0) - 3.0) <= 1e-14);
    CHECK(std::abs(pa.coeffs()(1) - 0.5) <= 1e-14);
    CHECK(std::abs(pb.coeffs()(1) - 1.0) <= 1e-14);
  }
  SECTION("non-commutative: members of the set satisfy every angle") {
    SpaceDescriptor s({2, 1});
    const auto m = modulus_set(s, 4);
    for (int k = 0; k < 20; ++k) {
      const Projection p = m.project(random_pair(s, rng));
      REQUIRE(p.converged);
      auto [a, b] = split_pair(p.point, s);
      for (double theta : {0.0, std::numbers::pi / 2, std::numbers::pi, 1.5 * std::numbers::pi})
        CHECK(cone_margin(b - rotate_real(a, theta)).margin >= -1e-8);
    }
  }
  SECTION("two angles give a single exact set") { CHECK(modulus_set(SpaceDescriptor({2}), 2).kind() == ConvexSetOracle::Kind::exact); }
  CHECK_THROWS_AS(modulus_set(SpaceDescriptor({2}), 3), std::invalid_argument);
}

TEST_CASE("idempotence and variational inequality", "[invariance]") {
  Rng rng = derive_rng(6, 0);
  for (const auto& blocks : structures()) {
    SpaceDescriptor s(blocks);
    const std::vector<ConvexSetOracle> sets = {domination_set(s), positive_order_set(s), theta_set(s, 0.7),
                                               modulus_set(s), cone_product(s)};
    for (const auto& set : sets) {
      for (int k = 0; k < 5; ++k) {
        const HVector x = random_pair(s, rng);
        const Projection p = set.project(x);
        REQUIRE(p.converged);
        const double scale = 1 + x.norm();
        CHECK(dist(set.project(p.point).point, p.point) <= 1e-9 * scale);
        CHECK(set.contains(p.point, 1e-9));
        for (int m = 0; m < 20; ++m) {
          const HVector c = sample_set_point(set, rng);
          CHECK(real_inner(x - p.point, c - p.point) <= 1e-9 * scale * (1 + c.norm()));
        }
      }
    }
  }
}

TEST_CASE("invariance examples", "[invariance]") {
  SpaceDescriptor s({2, 1});
  Rng rng = derive_rng(7, 0);
  CMatrix g = CMatrix::Random(s.dim(), s.dim());
  const FormOperator generic(s, g * g.adjoint());
  const auto opts = budget(300);
  for (auto c : {InvarianceCondition::i, InvarianceCondition::ii, InvarianceCondition::iii, InvarianceCondition::iv})
    CHECK(check_invariance(generic, whole_space(s), c, nullptr, opts).passed());

  const auto deph = dephasing();
  const auto cone = positive_cone(deph.space());
  for (auto c : {InvarianceCondition::i, InvarianceCondition::ii, InvarianceCondition::iii, InvarianceCondition::iv})
    CHECK(check_invariance(deph, cone, c, nullptr, opts).passed());

  // Product of two positive semigroups leaves H_+ × H_+ invariant.
  const FormOperator prod = product_form(deph, FormOperator::identity(deph.space()));
  CHECK(check_invariance(prod, cone_product(deph.space()), InvarianceCondition::i, nullptr, opts).passed());

  // Off-diagonal +1 on a commutative space: not positive, every condition says so.
  SpaceDescriptor c2({1, 1});
  const FormOperator bad(c2, mat({{1.0, 1.0}, {1.0, 1.0}}));
  for (auto c : {InvarianceCondition::i, InvarianceCondition::ii, InvarianceCondition::iii, InvarianceCondition::iv}) {
    const Verdict v = check_invariance(bad, positive_cone(c2), c, nullptr, opts);
    CHECK(v.violated());
    REQUIRE(v.witness);
  }
  CHECK_THROWS(check_invariance(bad, positive_cone(c2), InvarianceCondition::v, nullptr, opts));
}

TEST_CASE("restricted conditions with a valid and an invalid C0", "[invariance]") {
  const auto deph = dephasing();
  const SpaceDescriptor& s = deph.space();
  const FormOperator prod = product_form(deph, deph);
  const auto set = positive_order_set(s);
  const auto c0 = cone_product(s);
  const auto opts = budget(200);
  for (auto c : {InvarianceCondition::v, InvarianceCondition::vi}) {
    const Verdict v = check_invariance(prod, set, c, &c0, opts);
    CHECK(v.passed());
    CHECK_FALSE(v.notes.empty());
  }
  // C = C but C0 = H_+ × H_+ does not contain C.
  const Verdict bad = check_invariance(prod, domination_set(s), InvarianceCondition::v, &c0, opts);
  CHECK(bad.outcome == Outcome::precondition_failed);
}

TEST_CASE("invariance margin at a point", "[invariance]") {
  SpaceDescriptor s({1, 1});
  const FormOperator bad(s, mat({{1.0, 1.0}, {1.0, 1.0}}));
  const HVector e0 = HVector::basis(s, 0);
  // R_t e0 = (1 + e^{−2t}, −1 + e^{−2t})/2 leaves the cone.
  CHECK(invariance_margin(bad, positive_cone(s), InvarianceCondition::i, e0, 1.0) < 0.0);
  CHECK(invariance_margin(FormOperator::identity(s), positive_cone(s), InvarianceCondition::i, e0, 1.0) >= 0.0);
  // u = (1, −1): 𝔞(u_+) = 1 > 𝔞(u) = 0.
  const HVector u = diag_vec(s, {1.0, -1.0});
  CHECK(invariance_margin(bad, positive_cone(s), InvarianceCondition::ii, u, std::nullopt) < 0.0);
}
