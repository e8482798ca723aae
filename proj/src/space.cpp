#include "domlab/space.hpp"

#include <algorithm>
#include <string>

#include "domlab/errors.hpp"

namespace domlab {

SpaceDescriptor::SpaceDescriptor(std::vector<int> block_sizes) {
  if (block_sizes.empty()) throw std::invalid_argument("space needs at least one block");
  auto layout = std::make_shared<Layout>();
  std::ptrdiff_t offset = 0;
  for (int n : block_sizes) {
    if (n < 1) throw std::invalid_argument("block sizes must be positive, got " + std::to_string(n));
    layout->offsets.push_back(offset);
    offset += static_cast<std::ptrdiff_t>(n) * n;
  }
  layout->sizes = std::move(block_sizes);
  layout->dim = offset;
  layout_ = std::move(layout);
}

bool SpaceDescriptor::is_commutative() const {
  return std::all_of(blocks().begin(), blocks().end(), [](int n) { return n == 1; });
}

SpaceDescriptor SpaceDescriptor::doubled() const {
  std::vector<int> sizes = blocks();
  sizes.insert(sizes.end(), blocks().begin(), blocks().end());
  return SpaceDescriptor(std::move(sizes));
}

HVector::HVector(SpaceDescriptor space)
    : space_(std::move(space)), coeffs_(CVector::Zero(space_.dim())) {}

HVector::HVector(SpaceDescriptor space, CVector coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != space_.dim())
    throw ShapeError("coefficient vector of length " + std::to_string(coeffs_.size()) +
                     " does not match space dimension " + std::to_string(space_.dim()));
}

HVector HVector::from_blocks(const SpaceDescriptor& space, const std::vector<CMatrix>& blocks) {
  if (static_cast<int>(blocks.size()) != space.num_blocks())
    throw ShapeError("wrong number of blocks");
  HVector out(space);
  for (int k = 0; k < space.num_blocks(); ++k) {
    const int n = space.block_size(k);
    if (blocks[k].rows() != n || blocks[k].cols() != n) throw ShapeError("block shape mismatch");
    out.block(k) = blocks[k];
  }
  return out;
}

HVector HVector::identity(const SpaceDescriptor& space) {
  HVector out(space);
  for (int k = 0; k < space.num_blocks(); ++k) out.block(k).setIdentity();
  return out;
}

HVector HVector::basis(const SpaceDescriptor& space, std::ptrdiff_t j) {
  HVector out(space);
  out.coeffs_(j) = 1.0;
  return out;
}

HVector::ConstBlockMap HVector::block(int k) const {
  const int n = space_.block_size(k);
  return ConstBlockMap(coeffs_.data() + space_.offset(k), n, n);
}

HVector::BlockMap HVector::block(int k) {
  const int n = space_.block_size(k);
  return BlockMap(coeffs_.data() + space_.offset(k), n, n);
}

void require_same_space(const HVector& a, const HVector& b) {
  if (!(a.space() == b.space())) throw ShapeError("operands live on different block structures");
}

HVector& HVector::operator+=(const HVector& other) {
  require_same_space(*this, other);
  coeffs_ += other.coeffs_;
  return *this;
}

HVector& HVector::operator-=(const HVector& other) {
  require_same_space(*this, other);
  coeffs_ -= other.coeffs_;
  return *this;
}

HVector& HVector::operator*=(Complex s) {
  coeffs_ *= s;
  return *this;
}

HVector operator+(HVector a, const HVector& b) { return a += b; }
HVector operator-(HVector a, const HVector& b) { return a -= b; }
HVector operator-(HVector a) { return a *= -1.0; }
HVector operator*(Complex s, HVector a) { return a *= s; }
HVector operator*(HVector a, Complex s) { return a *= s; }

std::pair<HVector, HVector> split_pair(const HVector& x, const SpaceDescriptor& half) {
  if (!(x.space() == half.doubled())) throw ShapeError("vector is not an element of H x H");
  const auto d = half.dim();
  return {HVector(half, x.coeffs().head(d)), HVector(half, x.coeffs().tail(d))};
}

HVector join_pair(const HVector& a, const HVector& b) {
  require_same_space(a, b);
  const auto d = a.space().dim();
  CVector c(2 * d);
  c << a.coeffs(), b.coeffs();
  return HVector(a.space().doubled(), std::move(c));
}

HVector apply(const CMatrix& op, const HVector& x) {
  if (op.cols() != x.space().dim() || op.rows() != x.space().dim())
    throw ShapeError("operator shape does not match vector");
  return HVector(x.space(), op * x.coeffs());
}

}  // namespace domlab
