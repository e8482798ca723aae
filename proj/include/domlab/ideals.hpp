#pragma once

#include <vector>

#include "domlab/space.hpp"
#include "domlab/verdict.hpp"

namespace domlab {

/// A complex-linear subspace of H given by a spanning list; an orthonormal
/// basis is computed once (rank decided at relative tolerance 1e-10).
class Subspace {
 public:
  Subspace(SpaceDescriptor space, std::vector<HVector> spanning);
  static Subspace whole(const SpaceDescriptor& space);
  /// Span of the canonical basis vectors with the given flat indices.
  static Subspace coordinates(const SpaceDescriptor& space, const std::vector<std::ptrdiff_t>& indices);

  const SpaceDescriptor& space() const { return space_; }
  const std::vector<HVector>& spanning() const { return spanning_; }
  /// d × dim matrix with orthonormal columns.
  const CMatrix& orthonormal() const { return q_; }
  std::ptrdiff_t dim() const { return q_.cols(); }

  HVector project(const HVector& x) const;
  /// ‖x − Px‖.
  double residual(const HVector& x) const;
  bool contains(const HVector& x, double tol = kDefaultTol) const;

 private:
  SpaceDescriptor space_;
  std::vector<HVector> spanning_;
  CMatrix q_;
};

/// 𝒰^J = 𝒰 ∩ H^J as a real subspace, with a basis orthonormal for re⟨·,·⟩.
class RealSubspace {
 public:
  RealSubspace(SpaceDescriptor space, std::vector<HVector> basis) : space_(std::move(space)), basis_(std::move(basis)) {}
  const SpaceDescriptor& space() const { return space_; }
  const std::vector<HVector>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  /// Σ c_i e_i with real coefficients.
  HVector combine(const Eigen::VectorXd& coefficients) const;

 private:
  SpaceDescriptor space_;
  std::vector<HVector> basis_;
};

/// Null space of x ↦ (I − P_U)x over real coordinates in the Hermitian basis.
RealSubspace real_part_basis(const Subspace& u);

enum class IdealVariant { definition, prop12 };

/// 𝒰^J is a generalized ideal of 𝒱^J: for u ∈ 𝒰^J, v ∈ 𝒱^J,
///   definition: (u−v)_+ − (u+v)_− ∈ 𝒰 and (u−v)_+ + (u+v)_− ∈ 𝒱,
///   prop12:     (u+v)_+ − (v−u)_+ ∈ 𝒰 and (u+v)_+ + (v−u)_+ ∈ 𝒱.
/// Both variants draw the same (u, v) for the same seed. An empty real part
/// of U or V gives an inconclusive verdict.
Verdict check_generalized_ideal(const Subspace& u, const Subspace& v, IdealVariant variant,
                                const SamplingOptions& options);

/// u ∈ 𝒰^J ⇒ |u| ∈ 𝒱.
Verdict check_ideal_modulus_implication(const Subspace& u, const Subspace& v, const SamplingOptions& options);

/// Sampled v ∈ 𝒱^J ⇒ |v| ∈ 𝒱.
Verdict check_sublattice(const Subspace& v, const SamplingOptions& options);

/// Commutative spaces only: (a) u ∈ 𝒰^J ⇒ |u| ∈ 𝒱 and (b) u ∈ 𝒰^J,
/// v ∈ 𝒱^J, |v| ≤ |u| ⇒ v·sgn u ∈ 𝒰. Premise pairs come from v = φ|u|
/// with φ uniform on [−1, 1]^d, rejected unless v ∈ 𝒱, and from scaled
/// elements of 𝒱^J. Precondition: V is a sublattice (sampled).
Verdict check_mvv_ideal(const Subspace& u, const Subspace& v, const SamplingOptions& options);

}  // namespace domlab
