#pragma once

#include <string>
#include <vector>

#include "domlab/space.hpp"
#include "domlab/verdict.hpp"

namespace domlab {

/// A closed, symmetric, accretive form on H, held through its generator: a
/// positive semidefinite matrix A in the canonical basis with
/// 𝔞(u, v) = ⟨Au, v⟩. In finite dimension dom 𝔞 = H, so the extended
/// quadratic form never takes the value +∞.
///
/// The spectral decomposition is computed once at construction; the object
/// is immutable afterwards and safe to share between threads.
class FormOperator {
 public:
  /// Validates A = A* (relative 1e-10) and λ_min(A) ≥ −1e-9·(1 + ‖A‖).
  /// Slightly negative eigenvalues are clamped to zero and a warning is kept.
  FormOperator(SpaceDescriptor space, const CMatrix& generator);

  static FormOperator zero(const SpaceDescriptor& space);
  static FormOperator identity(const SpaceDescriptor& space);

  const SpaceDescriptor& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const CMatrix& eigenvectors() const { return eigenvectors_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  /// Operator norm (largest eigenvalue).
  double norm() const;

  HVector apply(const HVector& u) const;
  /// 𝔞(u, v) = ⟨Au, v⟩.
  Complex operator()(const HVector& u, const HVector& v) const;
  /// 𝔞(u) = ⟨Au, u⟩ (real and ≥ 0).
  double quadratic(const HVector& u) const;

  /// Matrix of e^{−tA}, t ≥ 0.
  CMatrix semigroup_matrix(double t) const;
  HVector semigroup_apply(double t, const HVector& u) const;

 private:
  SpaceDescriptor space_;
  CMatrix matrix_;
  Eigen::VectorXd eigenvalues_;
  CMatrix eigenvectors_;
  std::vector<std::string> warnings_;
};

/// The semigroup T_t = e^{−tA} generated by a form.
class Semigroup {
 public:
  explicit Semigroup(FormOperator generator) : generator_(std::move(generator)) {}
  const FormOperator& generator() const { return generator_; }
  CMatrix at(double t) const { return generator_.semigroup_matrix(t); }
  HVector apply(double t, const HVector& u) const { return generator_.semigroup_apply(t, u); }

 private:
  FormOperator generator_;
};

Complex form_eval(const FormOperator& a, const HVector& u, const HVector& v);
HVector semigroup_apply(const FormOperator& a, double t, const HVector& u);

/// ‖A Π − Π conj(A)‖_F, where Π permutes e_ij ↔ e_ji; zero iff AJ = JA.
double realness_residual(const CMatrix& op, const SpaceDescriptor& space);
bool is_real_operator(const FormOperator& a, double tol = kDefaultTol);

/// 𝔞^t(u, v) = (1/t)⟨(I − e^{−tA})u, v⟩ for t > 0.
Complex approx_form(const FormOperator& a, double t, const HVector& u, const HVector& v);

enum class PositivityMethod { criterion, direct };

/// Whether e^{−tA} leaves H_+ invariant. The criterion method samples real u
/// and checks 𝔞(u, u_−) ≤ 0, which is re 𝔞(u, u − Pu) ≥ 0 for the cone
/// projection P. The direct method samples u ∈ H_+ and t on the grid and
/// checks T_t u ∈ H_+. Requires A real (HypothesisError otherwise).
Verdict positivity_check(const FormOperator& a, PositivityMethod method, const SamplingOptions& options);

/// Exact check for fully commutative spaces: e^{−tA} ≥ 0 entrywise for all t
/// iff A is real with non-positive off-diagonal entries.
bool is_positive_commutative(const FormOperator& a, double tol = kDefaultTol);

/// The form 𝔠((u₀,v₀),(u₁,v₁)) = 𝔞(u₀,u₁) + 𝔟(v₀,v₁) on H × H, generating diag(T_t, S_t).
FormOperator product_form(const FormOperator& a, const FormOperator& b);

FormOperator scaled(const FormOperator& a, double c);
FormOperator sum(const FormOperator& a, const FormOperator& b);

/// Generator matrices used by the instance builders.
/// B = D*D for the derivation D(x) = i(bx − xb), blockwise.
CMatrix derivation_generator(const HVector& b);
/// x ↦ a x a (a Hermitian); cone preserving, real, PSD when a ∈ H_+.
CMatrix sandwich_generator(const HVector& a);
/// Graph Laplacian with symmetric non-negative weights plus a diagonal potential,
/// for fully commutative spaces.
CMatrix laplacian_generator(const Eigen::MatrixXd& weights, const Eigen::VectorXd& potential);

}  // namespace domlab
