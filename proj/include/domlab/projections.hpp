#pragma once

#include <utility>

#include "domlab/space.hpp"

namespace domlab {

/// The transforms attached to a real pair (u, v):
///   û = ½(u−v)_+ − ½(u+v)_−,  v̂ = ½(u−v)_+ + ½(u+v)_−,
///   ũ = ½(u+v)_+ − ½(v−u)_+,  ṽ = ½(u+v)_+ + ½(v−u)_+.
/// They satisfy u − û = ũ and v + v̂ = ṽ.
struct HatTilde {
  HVector u_hat;
  HVector v_hat;
  HVector u_tilde;
  HVector v_tilde;
};

HatTilde hat_tilde(const HVector& u, const HVector& v, double tol = kDefaultTol);

using HPair = std::pair<HVector, HVector>;

/// Orthogonal projection onto C = {(a,b) : −b ≤ a ≤ b}: P(u,v) = (ũ, ṽ).
/// Complex inputs are reduced to their real parts first (C ⊆ H^J × H^J and
/// the imaginary parts are orthogonal to it).
HPair project_C(const HVector& u, const HVector& v);

/// The closed form ½(u + u∧v, v + u∨v) for u, v ∈ H_+, which is the
/// projection onto {a ≤ b}. It is the projection onto {(a,b) : 0 ≤ a ≤ b}
/// exactly when u + u∧v ≥ 0: always on commutative spaces, not in general
/// (u = e_11, v = [[1,1],[1,1]] gives a negative (2,2) entry).
/// Throws HypothesisError on non-positive input.
HPair project_Cpos(const HVector& u, const HVector& v, double tol = kDefaultTol);

/// Projection onto C_θ = {(a,b) : re(e^{iθ}a) ≤ b} for (u, v) ∈ H × H^J:
///   w = re(e^{iθ}u) − v,  P_θ(u,v) = (u − ½e^{−iθ}w_+, v + ½w_+).
/// A complex v is replaced by re_J v (the set forces b real).
HPair project_C_theta(const HVector& u, const HVector& v, double theta);

/// The variant without the phase on the first component,
/// (u − ½w_+, v + ½w_+). It agrees with project_C_theta only at θ ≡ 0 and
/// is kept for the probe that documents the difference.
HPair project_C_theta_printed(const HVector& u, const HVector& v, double theta);

/// re_J(e^{iθ} u).
HVector rotate_real(const HVector& u, double theta);

}  // namespace domlab
