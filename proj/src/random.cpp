#include "domlab/random.hpp"

#include <cmath>

#include "domlab/cone.hpp"

namespace domlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed)), static_cast<std::uint32_t>(splitmix64(seed) >> 32),
                    static_cast<std::uint32_t>(splitmix64(index ^ 0x5bd1e995ULL)),
                    static_cast<std::uint32_t>(splitmix64(index ^ 0x5bd1e995ULL) >> 32)};
  return Rng(seq);
}

double standard_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return n(rng);
}

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

bool bernoulli(Rng& rng, double p) { return uniform(rng, 0.0, 1.0) < p; }

namespace {

CMatrix gaussian_matrix(int n, Rng& rng) {
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
  return g;
}

}  // namespace

HVector gaussian(const SpaceDescriptor& space, Rng& rng) {
  CVector c(space.dim());
  for (auto& z : c) z = Complex(standard_normal(rng), standard_normal(rng));
  return HVector(space, std::move(c));
}

HVector gaussian_real(const SpaceDescriptor& space, Rng& rng) { return real_part(gaussian(space, rng)); }

CMatrix random_hermitian(int n, Rng& rng) {
  const CMatrix g = gaussian_matrix(n, rng);
  return 0.5 * (g + g.adjoint());
}

HVector random_positive(const SpaceDescriptor& space, Rng& rng, double boundary_prob) {
  HVector out(space);
  for (int k = 0; k < space.num_blocks(); ++k) {
    const int n = space.block_size(k);
    CMatrix g = gaussian_matrix(n, rng);
    for (int c = 0; c < n; ++c)
      if (bernoulli(rng, boundary_prob)) g.col(c).setZero();
    out.block(k) = g * g.adjoint() / static_cast<double>(n);
  }
  return out;
}

HVector rank_one_positive(const SpaceDescriptor& space, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, space.num_blocks() - 1);
  const int k = pick(rng);
  const int n = space.block_size(k);
  CVector x(n);
  for (auto& z : x) z = Complex(standard_normal(rng), standard_normal(rng));
  HVector out(space);
  out.block(k) = x * x.adjoint();
  return out;
}

HVector random_real(const SpaceDescriptor& space, Rng& rng, double boundary_prob) {
  HVector out(space);
  for (int k = 0; k < space.num_blocks(); ++k) {
    const int n = space.block_size(k);
    CMatrix g = gaussian_matrix(n, rng);
    Eigen::VectorXd signs(n);
    for (int c = 0; c < n; ++c) {
      signs(c) = bernoulli(rng, 0.5) ? 1.0 : -1.0;
      if (bernoulli(rng, boundary_prob)) signs(c) = 0.0;
    }
    out.block(k) = g * signs.asDiagonal() * g.adjoint() / static_cast<double>(n);
  }
  return out;
}

}  // namespace domlab
