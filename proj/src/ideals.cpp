#include "domlab/ideals.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "domlab/cone.hpp"
#include "domlab/errors.hpp"
#include "domlab/random.hpp"

namespace domlab {

namespace {

constexpr double kRankTol = 1e-10;

double relative_threshold(const Eigen::VectorXd& singular) {
  return singular.size() ? kRankTol * std::max(1.0, singular.maxCoeff()) : 0.0;
}

}  // namespace

Subspace::Subspace(SpaceDescriptor space, std::vector<HVector> spanning)
    : space_(std::move(space)), spanning_(std::move(spanning)) {
  const auto d = space_.dim();
  CMatrix m(d, static_cast<Eigen::Index>(spanning_.size()));
  for (std::size_t i = 0; i < spanning_.size(); ++i) {
    if (!(spanning_[i].space() == space_)) throw ShapeError("spanning vector from a different space");
    m.col(static_cast<Eigen::Index>(i)) = spanning_[i].coeffs();
  }
  if (m.cols() == 0) {
    q_ = CMatrix(d, 0);
    return;
  }
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd s = svd.singularValues();
  const double thr = relative_threshold(s);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > thr) ++rank;
  q_ = svd.matrixU().leftCols(rank);
}

Subspace Subspace::whole(const SpaceDescriptor& space) {
  std::vector<HVector> basis;
  for (std::ptrdiff_t j = 0; j < space.dim(); ++j) basis.push_back(HVector::basis(space, j));
  return Subspace(space, std::move(basis));
}

Subspace Subspace::coordinates(const SpaceDescriptor& space, const std::vector<std::ptrdiff_t>& indices) {
  std::vector<HVector> basis;
  for (auto j : indices) {
    if (j < 0 || j >= space.dim()) throw ShapeError("coordinate index out of range");
    basis.push_back(HVector::basis(space, j));
  }
  return Subspace(space, std::move(basis));
}

HVector Subspace::project(const HVector& x) const {
  if (!(x.space() == space_)) throw ShapeError("vector does not belong to the subspace's space");
  return HVector(space_, q_ * (q_.adjoint() * x.coeffs()));
}

double Subspace::residual(const HVector& x) const { return (x - project(x)).norm(); }

bool Subspace::contains(const HVector& x, double tol) const { return residual(x) <= tol * (1.0 + x.norm()); }

HVector RealSubspace::combine(const Eigen::VectorXd& coefficients) const {
  if (coefficients.size() != static_cast<Eigen::Index>(basis_.size())) throw ShapeError("coefficient count mismatch");
  HVector out(space_);
  for (std::size_t i = 0; i < basis_.size(); ++i) out += Complex(coefficients(static_cast<Eigen::Index>(i))) * basis_[i];
  return out;
}

RealSubspace real_part_basis(const Subspace& u) {
  const auto& space = u.space();
  const auto d = space.dim();
  const CMatrix e = hermitian_basis(space);
  // x = E c with c real is a real vector; x ∈ U iff (I − QQ*)E c = 0.
  const CMatrix m = e - u.orthonormal() * (u.orthonormal().adjoint() * e);
  Eigen::MatrixXd stacked(2 * d, d);
  stacked.topRows(d) = m.real();
  stacked.bottomRows(d) = m.imag();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  const double thr = kRankTol * std::max(1.0, s.size() ? s.maxCoeff() : 0.0);
  std::vector<HVector> basis;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double sj = j < s.size() ? s(j) : 0.0;
    if (sj > thr) continue;
    const Eigen::VectorXd c = svd.matrixV().col(j);
    HVector x(space, e * c.cast<Complex>());
    basis.push_back(real_part(x));
  }
  return RealSubspace(space, std::move(basis));
}

namespace {

HVector sample_real(const RealSubspace& r, Rng& rng) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(r.dim()));
  for (auto& x : c) x = standard_normal(rng);
  return r.combine(c);
}

double membership_margin(const Subspace& s, const HVector& x, double scale) { return -s.residual(x) / scale; }

Verdict empty_real_part(std::string name, const char* which) {
  Verdict v;
  v.criterion = std::move(name);
  v.outcome = Outcome::inconclusive;
  v.notes.emplace_back(std::string("real part of ") + which + " is {0}: the quantifier is vacuous");
  return v;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

Verdict check_generalized_ideal(const Subspace& u, const Subspace& v, IdealVariant variant,
                                const SamplingOptions& options) {
  if (!(u.space() == v.space())) throw ShapeError("subspaces live on different spaces");
  const std::string name = variant == IdealVariant::definition ? "ideal:def" : "ideal:prop12";
  const RealSubspace ur = real_part_basis(u), vr = real_part_basis(v);
  if (ur.dim() == 0) return empty_real_part(name, "U");
  if (vr.dim() == 0) return empty_real_part(name, "V");
  return run_sampled(name, options, [&](std::uint64_t, Rng& rng) {
    HVector x = sample_real(ur, rng);
    HVector y = sample_real(vr, rng);
    const double mode = uniform(rng, 0.0, 1.0);
    if (mode < 0.15) y *= Complex(0.0);
    else if (mode < 0.3) x *= Complex(0.0);
    else y *= Complex(std::pow(10.0, uniform(rng, -2.0, 2.0)));
    HVector first(x.space()), second(x.space());
    if (variant == IdealVariant::definition) {
      const HVector a = project_cone(x - y), b = project_cone(-(x + y));
      first = a - b;
      second = a + b;
    } else {
      const HVector a = project_cone(x + y), b = project_cone(y - x);
      first = a - b;
      second = a + b;
    }
    const double scale = 1.0 + x.norm() + y.norm();
    SampleResult r;
    const double mu = membership_margin(u, first, scale), mv = membership_margin(v, second, scale);
    r.margin = std::min(mu, mv);
    r.witness = Witness{{{"u", x}, {"v", y}}, std::nullopt, std::nullopt, r.margin, 0,
                        {{"residual_U", -mu * scale}, {"residual_V", -mv * scale}}};
    return r;
  });
}

Verdict check_ideal_modulus_implication(const Subspace& u, const Subspace& v, const SamplingOptions& options) {
  if (!(u.space() == v.space())) throw ShapeError("subspaces live on different spaces");
  const RealSubspace ur = real_part_basis(u);
  if (ur.dim() == 0) return empty_real_part("ideal:modulus", "U");
  return run_sampled("ideal:modulus", options, [&](std::uint64_t, Rng& rng) {
    const HVector x = sample_real(ur, rng);
    SampleResult r;
    r.margin = membership_margin(v, modulus(x), 1.0 + x.norm());
    r.witness = Witness{{{"u", x}}, std::nullopt, std::nullopt, r.margin, 0, {}};
    return r;
  });
}

Verdict check_sublattice(const Subspace& v, const SamplingOptions& options) {
  const RealSubspace vr = real_part_basis(v);
  if (vr.dim() == 0) return empty_real_part("sublattice", "V");
  return run_sampled("sublattice", options, [&](std::uint64_t, Rng& rng) {
    const HVector y = sample_real(vr, rng);
    SampleResult r;
    r.margin = membership_margin(v, modulus(y), 1.0 + y.norm());
    r.witness = Witness{{{"v", y}}, std::nullopt, std::nullopt, r.margin, 0, {}};
    return r;
  });
}

Verdict check_mvv_ideal(const Subspace& u, const Subspace& v, const SamplingOptions& options) {
  if (!(u.space() == v.space())) throw ShapeError("subspaces live on different spaces");
  const auto& space = u.space();
  if (!space.is_commutative()) throw HypothesisError("the lattice-ideal conditions need a fully commutative space");
  const Verdict lattice = check_sublattice(v, options);
  if (lattice.violated()) {
    Verdict out = lattice;
    out.criterion = "ideal:mvv";
    out.outcome = Outcome::precondition_failed;
    out.notes.emplace_back("V is not a sublattice");
    return out;
  }
  const RealSubspace ur = real_part_basis(u), vr = real_part_basis(v);
  if (ur.dim() == 0) return empty_real_part("ideal:mvv", "U");
  if (vr.dim() == 0) return empty_real_part("ideal:mvv", "V");
  const auto d = space.dim();

  Verdict out = run_sampled("ideal:mvv", options, [&](std::uint64_t, Rng& rng) {
    const HVector x = sample_real(ur, rng);
    const double scale = 1.0 + x.norm();
    SampleResult r;
    const HVector abs_x = modulus(x);
    r.margin = membership_margin(v, abs_x, scale);
    r.witness = Witness{{{"u", x}}, std::nullopt, std::nullopt, r.margin, 0, {{"condition", 0.0}}};

    // Premise pair |y| ≤ |x| with y ∈ 𝒱^J.
    std::optional<HVector> y;
    for (int attempt = 0; attempt < 20 && !y; ++attempt) {
      HVector cand(space);
      for (std::ptrdiff_t j = 0; j < d; ++j) cand.coeffs()(j) = uniform(rng, -1.0, 1.0) * abs_x.coeffs()(j).real();
      if (v.contains(cand)) y = std::move(cand);
    }
    if (!y) {
      const HVector base = sample_real(vr, rng);
      double s = 1.0;
      for (std::ptrdiff_t j = 0; j < d; ++j) {
        const double bj = std::abs(base.coeffs()(j).real());
        if (bj > 0.0) s = std::min(s, std::abs(x.coeffs()(j).real()) / bj);
      }
      y = uniform(rng, 0.0, 1.0) * s * base;
    }
    HVector signed_y(space);
    for (std::ptrdiff_t j = 0; j < d; ++j)
      signed_y.coeffs()(j) = y->coeffs()(j).real() * sign(x.coeffs()(j).real());
    const double mb = membership_margin(u, signed_y, scale);
    if (mb < r.margin) {
      r.margin = mb;
      r.witness = Witness{{{"u", x}, {"v", *y}}, std::nullopt, std::nullopt, mb, 0, {{"condition", 1.0}}};
    }
    return r;
  });
  out.notes.emplace_back("V sublattice check passed on samples");
  return out;
}

}  // namespace domlab
