#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "domlab/cone.hpp"
#include "domlab/errors.hpp"
#include "domlab/random.hpp"
#include "helpers.hpp"

using namespace domlab;
using namespace testing_support;
using Catch::Approx;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("space layout and canonical basis", "[hilbert_core]") {
  SpaceDescriptor s({2, 1});
  CHECK(s.dim() == 5);
  CHECK(s.offset(1) == 4);
  CHECK_FALSE(s.is_commutative());
  CHECK(SpaceDescriptor({1, 1}).is_commutative());
  CHECK(s.doubled().blocks() == std::vector<int>{2, 1, 2, 1});
  CHECK_THROWS_AS(SpaceDescriptor({}), std::invalid_argument);
  CHECK_THROWS_AS(SpaceDescriptor({2, 0}), std::invalid_argument);
  // Row-major within a block: flat index 1 is e_12 of the first block.
  HVector e = HVector::basis(s, 1);
  CHECK(e.block(0)(0, 1) == Complex(1.0));
  CHECK(e.block(0).cwiseAbs().sum() == 1.0);
}

TEST_CASE("inner product examples", "[hilbert_core]") {
  SpaceDescriptor s({2});
  const HVector id = HVector::identity(s);
  CHECK(inner(id, id) == Complex(2.0));
  CHECK(std::abs(inner(HVector::basis(s, 1), HVector::basis(s, 2))) == 0.0);
  Rng rng = derive_rng(7, 0);
  for (int k = 0; k < 50; ++k) {
    const HVector p = random_positive(s, rng), q = random_positive(s, rng);
    const Complex z = inner(p, q);
    CHECK(std::abs(z.imag()) <= 1e-12 * (1 + p.norm() * q.norm()));
    // Oracle: tr(pq) = Σ λ_i μ_j |⟨x_i, y_j⟩|² ≥ 0.
    Eigen::SelfAdjointEigenSolver<CMatrix> ep(CMatrix(p.block(0))), eq(CMatrix(q.block(0)));
    double ref = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        ref += ep.eigenvalues()(i) * eq.eigenvalues()(j) *
               std::norm(ep.eigenvectors().col(i).dot(eq.eigenvectors().col(j)));
    CHECK(z.real() == Approx(ref).margin(1e-12));
    CHECK(z.real() >= -1e-12 * p.norm() * q.norm());
  }
  CHECK_THROWS_AS(inner(HVector(s), HVector(SpaceDescriptor({1, 1}))), ShapeError);
}

TEST_CASE("involution examples", "[hilbert_core]") {
  const HVector u = one_block(mat({{0.0, I}, {0.0, 0.0}}));
  const HVector ju = involution(u);
  CHECK(dist(ju, one_block(mat({{0.0, 0.0}, {-I, 0.0}}))) == 0.0);
  const HVector h = one_block(mat({{1.0, 2.0 + I}, {2.0 - I, -3.0}}));
  CHECK(dist(involution(h), h) == 0.0);
  Rng rng = derive_rng(3, 1);
  SpaceDescriptor s({2, 1, 3});
  for (int k = 0; k < 20; ++k) {
    const HVector x = gaussian(s, rng), y = gaussian(s, rng);
    CHECK(dist(involution(involution(x)), x) <= 1e-14);
    CHECK(std::abs(inner(involution(x), involution(y)) - std::conj(inner(x, y))) <= 1e-12 * (1 + x.norm() * y.norm()));
    // Antilinear.
    CHECK(dist(involution(I * x), -I * involution(x)) <= 1e-13);
    const HVector p = random_positive(s, rng);
    CHECK(dist(involution(p), p) <= 1e-14 * (1 + p.norm()));
    CHECK(dist(real_part(x) + I * imag_part(x), x) <= 1e-13);
  }
}

TEST_CASE("jordan decomposition examples", "[hilbert_core]") {
  SpaceDescriptor c({1, 1});
  auto j = jordan(diag_vec(c, {1.0, -2.0}));
  CHECK(dist(j.positive, diag_vec(c, {1.0, 0.0})) <= 1e-15);
  CHECK(dist(j.negative, diag_vec(c, {0.0, 2.0})) <= 1e-15);

  auto x = jordan(one_block(mat({{0.0, 1.0}, {1.0, 0.0}})));
  CHECK(dist(x.positive, one_block(0.5 * mat({{1.0, 1.0}, {1.0, 1.0}}))) <= 1e-14);
  CHECK(dist(x.negative, one_block(0.5 * mat({{1.0, -1.0}, {-1.0, 1.0}}))) <= 1e-14);

  Rng rng = derive_rng(5, 2);
  const HVector p = random_positive(SpaceDescriptor({3}), rng);
  auto jp = jordan(p);
  CHECK(dist(jp.positive, p) <= 1e-12 * p.norm());
  CHECK(jp.negative.norm() <= 1e-12 * p.norm());

  CHECK_THROWS_AS(jordan(one_block(mat({{0.0, I}, {0.0, 0.0}}))), NotRealError);
}

TEST_CASE("jordan uniqueness from orthogonal positive pairs", "[hilbert_core]") {
  Rng rng = derive_rng(11, 0);
  for (const auto& blocks : structures()) {
    SpaceDescriptor s(blocks);
    for (int k = 0; k < 20; ++k) {
      // p, q supported on orthogonal spectral subspaces of a random unitary.
      std::vector<CMatrix> pb, qb;
      for (int n : blocks) {
        Eigen::HouseholderQR<CMatrix> qr(CMatrix::Random(n, n));
        const CMatrix u = qr.householderQ();
        Eigen::VectorXd lp = Eigen::VectorXd::Zero(n), lq = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) (bernoulli(rng, 0.5) ? lp(i) : lq(i)) = uniform(rng, 0.1, 2.0);
        pb.push_back(u * lp.cast<Complex>().asDiagonal() * u.adjoint());
        qb.push_back(u * lq.cast<Complex>().asDiagonal() * u.adjoint());
      }
      const HVector p = HVector::from_blocks(s, pb), q = HVector::from_blocks(s, qb);
      CHECK(std::abs(inner(p, q)) <= 1e-12);
      auto j = jordan(p - q);
      CHECK(dist(j.positive, p) <= 1e-10 * (1 + p.norm()));
      CHECK(dist(j.negative, q) <= 1e-10 * (1 + q.norm()));
    }
  }
}

TEST_CASE("cone projection of complex vectors", "[hilbert_core]") {
  const HVector u = one_block(mat({{1.0, 0.0}, {0.0, -1.0}}) + I * mat({{0.3, 1.0 - I}, {1.0 + I, 2.0}}));
  CHECK(dist(project_cone(u), one_block(mat({{1.0, 0.0}, {0.0, 0.0}}))) <= 1e-14);
  const HVector w = one_block(mat({{-1.0, 0.5}, {0.5, -2.0}}));
  CHECK(project_cone(I * w).norm() <= 1e-15);

  Rng rng = derive_rng(13, 0);
  for (const auto& blocks : structures()) {
    SpaceDescriptor s(blocks);
    for (int k = 0; k < 10; ++k) {
      const HVector x = gaussian(s, rng);
      const HVector px = project_cone(x);
      CHECK(cone_margin(px).is_positive);
      for (int m = 0; m < 100; ++m) {
        const HVector c = random_positive(s, rng);
        CHECK(real_inner(x - px, c - px) <= 1e-9);
      }
      if (k == 0) {
        const HVector r = real_part(x);
        CHECK(dist(project_cone(r), jordan(r).positive) <= 1e-14);
      }
    }
  }
}

TEST_CASE("lattice identities", "[hilbert_core]") {
  SpaceDescriptor c({1, 1});
  auto l = lattice_ops(diag_vec(c, {1.0, 3.0}), diag_vec(c, {2.0, 2.0}));
  CHECK(dist(l.sup, diag_vec(c, {2.0, 3.0})) <= 1e-15);
  CHECK(dist(l.inf, diag_vec(c, {1.0, 2.0})) <= 1e-15);

  Rng rng = derive_rng(17, 0);
  for (const auto& blocks : structures()) {
    SpaceDescriptor s(blocks);
    for (int k = 0; k < 50; ++k) {
      const HVector u = random_real(s, rng), v = random_real(s, rng);
      const double scale = 1.0 + u.norm() + v.norm();
      auto r = lattice_ops(u, v);
      CHECK(dist(r.sup + r.inf, u + v) <= 1e-10 * scale);
      CHECK(dist(r.sup, v + positive_part(u - v)) <= 1e-10 * scale);
      CHECK(dist(r.modulus, positive_part(u) + negative_part(u)) <= 1e-10 * scale);
      for (const HVector& gap : {r.sup - u, r.sup - v, u - r.inf, v - r.inf}) CHECK(cone_margin(gap).is_positive);
      auto z = lattice_ops(u, HVector(s));
      CHECK(dist(z.sup, positive_part(u)) <= 1e-10 * scale);
      CHECK(dist(z.inf, -negative_part(u)) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("cone margin examples", "[hilbert_core]") {
  SpaceDescriptor s({2});
  auto id = cone_margin(HVector::identity(s));
  CHECK(id.is_positive);
  CHECK(id.margin == Approx(1.0));
  auto tiny = cone_margin(one_block(mat({{1.0, 0.0}, {0.0, -1e-12}})), 1e-9);
  CHECK(tiny.is_positive);
  CHECK(tiny.margin == Approx(-1e-12).margin(1e-15));
  auto swap = cone_margin(one_block(mat({{0.0, 1.0}, {1.0, 0.0}})));
  CHECK_FALSE(swap.is_positive);
  CHECK(swap.margin == Approx(-1.0));
}

TEST_CASE("self-polarity with rank-one witnesses", "[hilbert_core]") {
  Rng rng = derive_rng(19, 0);
  for (const auto& blocks : structures()) {
    SpaceDescriptor s(blocks);
    for (int k = 0; k < 50; ++k) {
      const HVector p = random_positive(s, rng), q = random_positive(s, rng);
      CHECK(inner(p, q).real() >= -1e-12 * p.norm() * q.norm());
      const HVector u = random_real(s, rng);
      if (!cone_margin(u).is_positive) {
        const LowestEigen low = lowest_eigen(u);
        CHECK(low.value < 0.0);
        const HVector& w = low.vector;
        CHECK(std::abs(inner(w, w) - 1.0) <= 1e-12);
        CHECK(cone_margin(w).is_positive);
        CHECK(inner(u, w).real() < 0.0);
      }
    }
  }
}

TEST_CASE("sandwich maps the cone into itself", "[hilbert_core]") {
  Rng rng = derive_rng(23, 0);
  SpaceDescriptor s({2, 3});
  for (int k = 0; k < 50; ++k) {
    const HVector a = gaussian(s, rng), p = random_positive(s, rng);
    CHECK(cone_margin(sandwich(a, p)).is_positive);
  }
}

TEST_CASE("realness gates fail loudly", "[hilbert_core]") {
  const HVector u = one_block(mat({{0.0, 1.0}, {0.0, 0.0}}));
  CHECK_FALSE(is_real(u));
  CHECK_THROWS_AS(require_real(u, 1e-9, "u"), NotRealError);
  CHECK_THROWS_AS(lattice_ops(u, u), NotRealError);
}
