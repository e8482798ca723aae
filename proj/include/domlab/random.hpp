#pragma once

#include <cstdint>
#include <random>

#include "domlab/space.hpp"

namespace domlab {

using Rng = std::mt19937_64;

/// Independent stream for sample `index` of a run seeded with `seed`. The
/// mapping is stateless, so serial and parallel runs draw identical samples.
Rng derive_rng(std::uint64_t seed, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x);

double standard_normal(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
bool bernoulli(Rng& rng, double p);

/// Complex Gaussian coefficients (independent N(0,1) real and imaginary parts).
HVector gaussian(const SpaceDescriptor& space, Rng& rng);

/// re_J of a complex Gaussian vector: a GUE-type Hermitian sample per block.
HVector gaussian_real(const SpaceDescriptor& space, Rng& rng);

/// Wishart-type positive sample g g*/n per block. Each column of g is zeroed
/// with probability `boundary_prob`, which puts mass on the cone's faces.
HVector random_positive(const SpaceDescriptor& space, Rng& rng, double boundary_prob = 0.25);

/// Rank-one positive element x x* supported on a single random block.
HVector rank_one_positive(const SpaceDescriptor& space, Rng& rng);

/// Signed Wishart sample Σ_c s_c g_c g_c*/n with random signs s_c and columns
/// dropped with probability `boundary_prob`; a real vector that hits
/// lower-rank configurations often.
HVector random_real(const SpaceDescriptor& space, Rng& rng, double boundary_prob = 0.25);

/// Random Hermitian n×n matrix (GUE-type).
CMatrix random_hermitian(int n, Rng& rng);

}  // namespace domlab
