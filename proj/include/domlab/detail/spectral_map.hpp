#pragma once

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace domlab {

template <class F>
HVector spectral_map(const HVector& u, F&& f) {
  HVector out(u.space());
  for (int k = 0; k < u.space().num_blocks(); ++k) {
    const int n = u.space().block_size(k);
    const auto blk = u.block(k);
    if (n == 1) {
      out.block(k)(0, 0) = f(blk(0, 0).real());
      continue;
    }
    const CMatrix herm = 0.5 * (blk + blk.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm);
    if (eig.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
    Eigen::VectorXd mapped = eig.eigenvalues().unaryExpr([&](double x) { return static_cast<double>(f(x)); });
    out.block(k) = eig.eigenvectors() * mapped.asDiagonal() * eig.eigenvectors().adjoint();
  }
  return out;
}

}  // namespace domlab
