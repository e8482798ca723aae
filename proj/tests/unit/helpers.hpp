#pragma once

#include <initializer_list>
#include <vector>

#include "domlab/space.hpp"

namespace testing_support {

using domlab::CMatrix;
using domlab::Complex;
using domlab::HVector;
using domlab::SpaceDescriptor;

inline CMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const auto& x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

/// Element of the commutative space with the given coordinates.
inline HVector diag_vec(const SpaceDescriptor& s, std::initializer_list<Complex> xs) {
  HVector v(s);
  Eigen::Index j = 0;
  for (const auto& x : xs) v.coeffs()(j++) = x;
  return v;
}

inline HVector one_block(const CMatrix& m) {
  return HVector::from_blocks(SpaceDescriptor({static_cast<int>(m.rows())}), {m});
}

inline double dist(const HVector& a, const HVector& b) { return (a - b).norm(); }

/// Block structures used across the suites.
inline std::vector<std::vector<int>> structures() { return {{2}, {3}, {4}, {1, 1, 1, 1}, {2, 1, 1}, {2, 2}}; }

}  // namespace testing_support
