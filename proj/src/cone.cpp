#include "domlab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "domlab/errors.hpp"

namespace domlab {

Complex inner(const HVector& u, const HVector& v) {
  require_same_space(u, v);
  // Eigen's dot is antilinear in its first argument.
  return v.coeffs().dot(u.coeffs());
}

double real_inner(const HVector& u, const HVector& v) { return inner(u, v).real(); }

HVector involution(const HVector& u) {
  HVector out(u.space());
  for (int k = 0; k < u.space().num_blocks(); ++k) out.block(k) = u.block(k).adjoint();
  return out;
}

HVector real_part(const HVector& u) {
  HVector out(u.space());
  for (int k = 0; k < u.space().num_blocks(); ++k) out.block(k) = 0.5 * (u.block(k) + u.block(k).adjoint());
  return out;
}

HVector imag_part(const HVector& u) {
  HVector out(u.space());
  const Complex half_over_i(0.0, -0.5);
  for (int k = 0; k < u.space().num_blocks(); ++k)
    out.block(k) = half_over_i * (u.block(k) - u.block(k).adjoint());
  return out;
}

double hermiticity_defect(const HVector& u) {
  double sq = 0.0;
  for (int k = 0; k < u.space().num_blocks(); ++k) sq += (u.block(k) - u.block(k).adjoint()).squaredNorm();
  return std::sqrt(sq);
}

bool is_real(const HVector& u, double tol) { return hermiticity_defect(u) <= tol * (1.0 + u.norm()); }

void require_real(const HVector& u, double tol, const char* what) {
  const double defect = hermiticity_defect(u);
  if (defect > tol * (1.0 + u.norm()))
    throw NotRealError(std::string(what) + " is not real (Hermiticity defect " + std::to_string(defect) + ")");
}

JordanParts jordan(const HVector& u, double tol) {
  require_real(u, tol, "jordan operand");
  return {spectral_map(u, [](double x) { return std::max(x, 0.0); }),
          spectral_map(u, [](double x) { return std::max(-x, 0.0); })};
}

HVector positive_part(const HVector& u, double tol) {
  require_real(u, tol, "positive_part operand");
  return spectral_map(u, [](double x) { return std::max(x, 0.0); });
}

HVector negative_part(const HVector& u, double tol) {
  require_real(u, tol, "negative_part operand");
  return spectral_map(u, [](double x) { return std::max(-x, 0.0); });
}

HVector project_cone(const HVector& u) {
  // spectral_map symmetrizes each block, i.e. works on re_J u.
  return spectral_map(u, [](double x) { return std::max(x, 0.0); });
}

LatticeResult lattice_ops(const HVector& u, const HVector& v, double tol) {
  require_same_space(u, v);
  require_real(u, tol, "lattice operand u");
  require_real(v, tol, "lattice operand v");
  const HVector gap = project_cone(v - u);
  const auto parts = jordan(u, tol);
  return {u + gap, v - gap, parts.positive + parts.negative};
}

HVector sup(const HVector& u, const HVector& v, double tol) {
  require_same_space(u, v);
  require_real(u, tol, "sup operand u");
  require_real(v, tol, "sup operand v");
  return u + project_cone(v - u);
}

HVector inf(const HVector& u, const HVector& v, double tol) {
  require_same_space(u, v);
  require_real(u, tol, "inf operand u");
  require_real(v, tol, "inf operand v");
  return v - project_cone(v - u);
}

HVector modulus(const HVector& u, double tol) {
  require_real(u, tol, "modulus operand");
  return spectral_map(u, [](double x) { return std::abs(x); });
}

LowestEigen lowest_eigen(const HVector& u) {
  LowestEigen best{std::numeric_limits<double>::infinity(), HVector(u.space())};
  for (int k = 0; k < u.space().num_blocks(); ++k) {
    const int n = u.space().block_size(k);
    const auto blk = u.block(k);
    double value;
    CVector vec(n);
    if (n == 1) {
      value = blk(0, 0).real();
      vec(0) = 1.0;
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(CMatrix(0.5 * (blk + blk.adjoint())));
      if (eig.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
      value = eig.eigenvalues()(0);
      vec = eig.eigenvectors().col(0);
    }
    if (value < best.value) {
      best.value = value;
      best.vector = HVector(u.space());
      best.vector.block(k) = vec * vec.adjoint();
    }
  }
  return best;
}

ConeMargin cone_margin(const HVector& u, double tol) {
  double lowest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < u.space().num_blocks(); ++k) {
    const int n = u.space().block_size(k);
    const auto blk = u.block(k);
    if (n == 1) {
      lowest = std::min(lowest, blk(0, 0).real());
    } else if (n == 2) {
      // closed form for 2×2 Hermitian matrices
      const double a = blk(0, 0).real(), d = blk(1, 1).real();
      const Complex b = 0.5 * (blk(0, 1) + std::conj(blk(1, 0)));
      const double mean = 0.5 * (a + d);
      const double radius = std::hypot(0.5 * (a - d), std::abs(b));
      lowest = std::min(lowest, mean - radius);
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(CMatrix(0.5 * (blk + blk.adjoint())), Eigen::EigenvaluesOnly);
      if (eig.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
      lowest = std::min(lowest, eig.eigenvalues()(0));
    }
  }
  const double margin = lowest - 0.5 * hermiticity_defect(u);
  return {margin >= -tol * (1.0 + u.norm()), margin};
}

HVector sandwich(const HVector& a, const HVector& x) {
  require_same_space(a, x);
  HVector out(x.space());
  for (int k = 0; k < x.space().num_blocks(); ++k) out.block(k) = a.block(k) * x.block(k) * a.block(k).adjoint();
  return out;
}

CMatrix hermitian_basis(const SpaceDescriptor& space) {
  const auto d = space.dim();
  CMatrix basis = CMatrix::Zero(d, d);
  const double r = 1.0 / std::sqrt(2.0);
  std::ptrdiff_t col = 0;
  for (int k = 0; k < space.num_blocks(); ++k) {
    const int n = space.block_size(k);
    const auto off = space.offset(k);
    for (int i = 0; i < n; ++i) basis(off + i * n + i, col++) = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        basis(off + i * n + j, col) = r;
        basis(off + j * n + i, col) = r;
        ++col;
        basis(off + i * n + j, col) = Complex(0.0, r);
        basis(off + j * n + i, col) = Complex(0.0, -r);
        ++col;
      }
    }
  }
  return basis;
}

}  // namespace domlab
