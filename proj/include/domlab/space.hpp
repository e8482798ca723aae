#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace domlab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RowMajorCMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Default relative tolerance for positivity and realness decisions.
inline constexpr double kDefaultTol = 1e-9;

/// A finite-dimensional standard form: the algebra M_{n_1} ⊕ ... ⊕ M_{n_K}
/// acting on H = ⊕_k M_{n_k} with inner product Σ_k tr(u_k v_k*), positive
/// cone the blockwise PSD matrices and J the blockwise adjoint.
///
/// Canonical basis of H: the matrix units e_ij of each block, blocks in
/// declared order, row-major inside a block.
class SpaceDescriptor {
 public:
  explicit SpaceDescriptor(std::vector<int> block_sizes);

  int num_blocks() const { return static_cast<int>(layout_->sizes.size()); }
  int block_size(int k) const { return layout_->sizes[k]; }
  std::ptrdiff_t offset(int k) const { return layout_->offsets[k]; }
  std::ptrdiff_t dim() const { return layout_->dim; }
  const std::vector<int>& blocks() const { return layout_->sizes; }

  /// All blocks are 1×1, i.e. H = ℓ²(d) with the usual lattice order.
  bool is_commutative() const;

  /// H × H, realized as the standard form of M ⊕ M (blocks repeated).
  SpaceDescriptor doubled() const;

  friend bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) {
    return a.layout_ == b.layout_ || a.layout_->sizes == b.layout_->sizes;
  }

 private:
  struct Layout {
    std::vector<int> sizes;
    std::vector<std::ptrdiff_t> offsets;
    std::ptrdiff_t dim = 0;
  };
  std::shared_ptr<const Layout> layout_;
};

/// An element of H, stored as coefficients in the canonical basis.
class HVector {
 public:
  using BlockMap = Eigen::Map<RowMajorCMatrix>;
  using ConstBlockMap = Eigen::Map<const RowMajorCMatrix>;

  explicit HVector(SpaceDescriptor space);
  HVector(SpaceDescriptor space, CVector coeffs);

  static HVector from_blocks(const SpaceDescriptor& space, const std::vector<CMatrix>& blocks);
  static HVector identity(const SpaceDescriptor& space);
  /// The canonical basis vector with flat index j.
  static HVector basis(const SpaceDescriptor& space, std::ptrdiff_t j);

  const SpaceDescriptor& space() const { return space_; }
  const CVector& coeffs() const { return coeffs_; }
  CVector& coeffs() { return coeffs_; }

  ConstBlockMap block(int k) const;
  BlockMap block(int k);

  double norm() const { return coeffs_.norm(); }

  HVector& operator+=(const HVector& other);
  HVector& operator-=(const HVector& other);
  HVector& operator*=(Complex s);

 private:
  SpaceDescriptor space_;
  CVector coeffs_;
};

HVector operator+(HVector a, const HVector& b);
HVector operator-(HVector a, const HVector& b);
HVector operator-(HVector a);
HVector operator*(Complex s, HVector a);
HVector operator*(HVector a, Complex s);

/// Throws ShapeError unless both operands live on the same block structure.
void require_same_space(const HVector& a, const HVector& b);

/// Split an element of H × H (see SpaceDescriptor::doubled) into its factors.
std::pair<HVector, HVector> split_pair(const HVector& x, const SpaceDescriptor& half);
HVector join_pair(const HVector& a, const HVector& b);

/// Matrix of a (complex-)linear map H → H in the canonical basis.
template <class Map>
CMatrix operator_matrix(const SpaceDescriptor& space, Map&& op) {
  const auto d = space.dim();
  CMatrix m(d, d);
  for (std::ptrdiff_t j = 0; j < d; ++j) m.col(j) = op(HVector::basis(space, j)).coeffs();
  return m;
}

HVector apply(const CMatrix& op, const HVector& x);

}  // namespace domlab
