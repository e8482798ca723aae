#include "domlab/forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "domlab/cone.hpp"
#include "domlab/errors.hpp"
#include "domlab/random.hpp"

namespace domlab {

FormOperator::FormOperator(SpaceDescriptor space, const CMatrix& generator) : space_(std::move(space)) {
  const auto d = space_.dim();
  if (generator.rows() != d || generator.cols() != d)
    throw ShapeError("generator must be " + std::to_string(d) + "x" + std::to_string(d));
  const double scale = 1.0 + generator.norm();
  const double asym = (generator - generator.adjoint()).norm();
  if (asym > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "form is not symmetric: ||A - A*|| = " << asym;
    throw HypothesisError(msg.str());
  }
  matrix_ = 0.5 * (generator + generator.adjoint());

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(matrix_);
  if (eig.info() != Eigen::Success) throw std::runtime_error("generator eigendecomposition failed");
  eigenvalues_ = eig.eigenvalues();
  eigenvectors_ = eig.eigenvectors();

  const double lowest = eigenvalues_.size() ? eigenvalues_.minCoeff() : 0.0;
  if (lowest < -1e-9 * scale) {
    std::ostringstream msg;
    msg << "form is not accretive: smallest eigenvalue " << lowest;
    throw HypothesisError(msg.str());
  }
  if (lowest < 0.0) {
    std::ostringstream msg;
    msg << "clamped generator eigenvalue " << lowest << " to 0";
    warnings_.push_back(msg.str());
    eigenvalues_ = eigenvalues_.cwiseMax(0.0);
    matrix_ = eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.adjoint();
  }
}

FormOperator FormOperator::zero(const SpaceDescriptor& space) {
  return FormOperator(space, CMatrix::Zero(space.dim(), space.dim()));
}

FormOperator FormOperator::identity(const SpaceDescriptor& space) {
  return FormOperator(space, CMatrix::Identity(space.dim(), space.dim()));
}

double FormOperator::norm() const { return eigenvalues_.size() ? eigenvalues_.maxCoeff() : 0.0; }

HVector FormOperator::apply(const HVector& u) const {
  if (!(u.space() == space_)) throw ShapeError("vector does not belong to the form's space");
  return HVector(space_, matrix_ * u.coeffs());
}

Complex FormOperator::operator()(const HVector& u, const HVector& v) const { return inner(apply(u), v); }

double FormOperator::quadratic(const HVector& u) const { return inner(apply(u), u).real(); }

CMatrix FormOperator::semigroup_matrix(double t) const {
  if (t < 0.0) throw std::invalid_argument("semigroup time must be non-negative");
  const Eigen::VectorXd decay = (-t * eigenvalues_.array()).exp().matrix();
  return eigenvectors_ * decay.asDiagonal() * eigenvectors_.adjoint();
}

HVector FormOperator::semigroup_apply(double t, const HVector& u) const {
  if (t < 0.0) throw std::invalid_argument("semigroup time must be non-negative");
  if (!(u.space() == space_)) throw ShapeError("vector does not belong to the form's space");
  const Eigen::VectorXd decay = (-t * eigenvalues_.array()).exp().matrix();
  CVector c = eigenvectors_.adjoint() * u.coeffs();
  c = decay.asDiagonal() * c;
  return HVector(space_, eigenvectors_ * c);
}

Complex form_eval(const FormOperator& a, const HVector& u, const HVector& v) { return a(u, v); }

HVector semigroup_apply(const FormOperator& a, double t, const HVector& u) { return a.semigroup_apply(t, u); }

double realness_residual(const CMatrix& op, const SpaceDescriptor& space) {
  const auto d = space.dim();
  if (op.rows() != d || op.cols() != d) throw ShapeError("operator shape does not match space");
  // Π: e_ij ↔ e_ji within each block.
  Eigen::VectorXi perm(d);
  for (int k = 0; k < space.num_blocks(); ++k) {
    const int n = space.block_size(k);
    const auto off = space.offset(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) perm(off + i * n + j) = static_cast<int>(off + j * n + i);
  }
  double sq = 0.0;
  for (std::ptrdiff_t r = 0; r < d; ++r)
    for (std::ptrdiff_t c = 0; c < d; ++c) {
      // (A Π)_{rc} = A_{r, π(c)},  (Π conj(A))_{rc} = conj(A_{π(r), c})
      const Complex diff = op(r, perm(c)) - std::conj(op(perm(r), c));
      sq += std::norm(diff);
    }
  return std::sqrt(sq);
}

bool is_real_operator(const FormOperator& a, double tol) {
  return realness_residual(a.matrix(), a.space()) <= tol * (1.0 + a.matrix().norm());
}

Complex approx_form(const FormOperator& a, double t, const HVector& u, const HVector& v) {
  if (!(t > 0.0)) throw std::invalid_argument("approximating form needs t > 0");
  require_same_space(u, v);
  const Eigen::VectorXd weights =
      a.eigenvalues().unaryExpr([t](double lambda) { return -std::expm1(-t * lambda) / t; });
  CVector c = a.eigenvectors().adjoint() * u.coeffs();
  c = weights.asDiagonal() * c;
  return inner(HVector(u.space(), a.eigenvectors() * c), v);
}

Verdict positivity_check(const FormOperator& a, PositivityMethod method, const SamplingOptions& options) {
  if (!is_real_operator(a)) throw HypothesisError("positivity check needs a real generator");
  const auto& space = a.space();
  if (method == PositivityMethod::criterion) {
    return run_sampled("positivity:criterion", options, [&](std::uint64_t, Rng& rng) {
      const HVector u = random_real(space, rng);
      const HVector neg = negative_part(u);
      const double pairing = a(u, neg).real();
      SampleResult r;
      r.margin = -pairing / (1.0 + a.quadratic(u) + a.quadratic(neg));
      r.witness = Witness{{{"u", u}}, std::nullopt, std::nullopt, 0.0, 0, {{"form(u,u_-)", pairing}}};
      return r;
    });
  }
  std::vector<CMatrix> flows;
  for (double t : options.t_grid) flows.push_back(a.semigroup_matrix(t));
  return run_sampled("positivity:direct", options, [&](std::uint64_t, Rng& rng) {
    const HVector u = random_positive(space, rng);
    SampleResult r;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const HVector tu = domlab::apply(flows[i], u);
      const double m = cone_margin(tu, options.tol).margin / (1.0 + u.norm());
      if (m < r.margin) {
        r.margin = m;
        r.witness = Witness{{{"u", u}}, options.t_grid[i], std::nullopt, 0.0, 0, {{"lambda_min(T_t u)", m}}};
      }
    }
    return r;
  });
}

bool is_positive_commutative(const FormOperator& a, double tol) {
  if (!a.space().is_commutative()) throw HypothesisError("exact positivity test needs a commutative space");
  const auto& m = a.matrix();
  const double scale = tol * (1.0 + m.norm());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c).imag()) > scale) return false;
      if (r != c && m(r, c).real() > scale) return false;
    }
  return true;
}

FormOperator product_form(const FormOperator& a, const FormOperator& b) {
  if (!(a.space() == b.space())) throw ShapeError("product form needs both factors on the same space");
  const auto d = a.space().dim();
  CMatrix m = CMatrix::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = a.matrix();
  m.bottomRightCorner(d, d) = b.matrix();
  return FormOperator(a.space().doubled(), m);
}

FormOperator scaled(const FormOperator& a, double c) {
  if (c < 0.0) throw std::invalid_argument("scaling factor must be non-negative");
  return FormOperator(a.space(), c * a.matrix());
}

FormOperator sum(const FormOperator& a, const FormOperator& b) {
  if (!(a.space() == b.space())) throw ShapeError("sum of forms on different spaces");
  return FormOperator(a.space(), a.matrix() + b.matrix());
}

CMatrix derivation_generator(const HVector& b) {
  const Complex i(0.0, 1.0);
  const CMatrix d = operator_matrix(b.space(), [&](const HVector& x) {
    HVector out(x.space());
    for (int k = 0; k < x.space().num_blocks(); ++k)
      out.block(k) = i * (b.block(k) * x.block(k) - x.block(k) * b.block(k));
    return out;
  });
  return d.adjoint() * d;
}

CMatrix sandwich_generator(const HVector& a) {
  return operator_matrix(a.space(), [&](const HVector& x) { return sandwich(a, x); });
}

CMatrix laplacian_generator(const Eigen::MatrixXd& weights, const Eigen::VectorXd& potential) {
  const auto d = weights.rows();
  if (weights.cols() != d || potential.size() != d) throw ShapeError("laplacian dimensions disagree");
  Eigen::MatrixXd m = -weights;
  m.diagonal().setZero();
  for (Eigen::Index j = 0; j < d; ++j) m(j, j) = weights.row(j).sum() - weights(j, j) + potential(j);
  return m.cast<Complex>();
}

}  // namespace domlab
