#pragma once

#include "domlab/space.hpp"

namespace domlab {

/// ⟨u, v⟩ = Σ_k tr(u_k v_k*); linear in u, antilinear in v.
Complex inner(const HVector& u, const HVector& v);

/// Real part of the inner product; the inner product of H viewed as a real Hilbert space.
double real_inner(const HVector& u, const HVector& v);

/// The involution J (blockwise conjugate transpose). Antilinear.
HVector involution(const HVector& u);

/// re_J u = (u + Ju)/2 and im_J u = (u − Ju)/(2i); u = re_J u + i im_J u.
HVector real_part(const HVector& u);
HVector imag_part(const HVector& u);

/// ‖u − Ju‖.
double hermiticity_defect(const HVector& u);
bool is_real(const HVector& u, double tol = kDefaultTol);

/// Throws NotRealError when ‖u − Ju‖ > tol·(1 + ‖u‖). `what` names the operand.
void require_real(const HVector& u, double tol, const char* what);

struct JordanParts {
  HVector positive;
  HVector negative;
};

/// u = u_+ − u_− with u_± ∈ H_+ and ⟨u_+, u_−⟩ = 0. Requires u real.
JordanParts jordan(const HVector& u, double tol = kDefaultTol);

/// u_+ and u_− for real u (checked).
HVector positive_part(const HVector& u, double tol = kDefaultTol);
HVector negative_part(const HVector& u, double tol = kDefaultTol);

/// Orthogonal projection onto H_+ of an arbitrary vector: (re_J u)_+.
HVector project_cone(const HVector& u);

struct LatticeResult {
  HVector sup;      // u ∨ v = u + (v − u)_+
  HVector inf;      // u ∧ v = v − (v − u)_+
  HVector modulus;  // |u| = u_+ + u_−
};

LatticeResult lattice_ops(const HVector& u, const HVector& v, double tol = kDefaultTol);
HVector sup(const HVector& u, const HVector& v, double tol = kDefaultTol);
HVector inf(const HVector& u, const HVector& v, double tol = kDefaultTol);
HVector modulus(const HVector& u, double tol = kDefaultTol);

struct ConeMargin {
  bool is_positive;
  double margin;
};

/// margin = min over blocks of λ_min(re_J u) − ‖u − Ju‖/2;
/// is_positive ⇔ margin ≥ −tol·(1 + ‖u‖).
ConeMargin cone_margin(const HVector& u, double tol = kDefaultTol);

/// Smallest eigenvalue over all blocks of re_J u, with an eigenvector of it
/// (embedded in H). For real u ∉ H_+ the rank-one projector onto that
/// eigenvector is a witness w ∈ H_+ with ⟨u, w⟩ < 0.
struct LowestEigen {
  double value;
  HVector vector;
};
LowestEigen lowest_eigen(const HVector& u);

/// x ↦ a x a* blockwise; maps H_+ into H_+ for every a.
HVector sandwich(const HVector& a, const HVector& x);

/// Apply a real function to the eigenvalues of every block of the real
/// vector u (u is symmetrized first).
template <class F>
HVector spectral_map(const HVector& u, F&& f);

/// Unitary whose columns are an orthonormal basis of H consisting of real
/// vectors: e_ii, (e_ij + e_ji)/√2, i(e_ij − e_ji)/√2 per block. A linear
/// operator is real iff its matrix in this basis is real.
CMatrix hermitian_basis(const SpaceDescriptor& space);

}  // namespace domlab

#include "domlab/detail/spectral_map.hpp"
