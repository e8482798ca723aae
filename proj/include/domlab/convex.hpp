#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "domlab/space.hpp"

namespace domlab {

struct Projection {
  HVector point;
  bool converged = true;
  std::size_t iterations = 0;
  /// Last successive-iterate distance (Dykstra) or 0 for exact projections.
  double residual = 0.0;
};

/// A closed convex subset of an ambient space (H, or H × H as a doubled
/// space) represented by its orthogonal projection: either an exact
/// procedure or Dykstra's scheme over exact member sets.
class ConvexSetOracle {
 public:
  using Projector = std::function<HVector(const HVector&)>;
  enum class Kind { exact, dykstra };

  static ConvexSetOracle exact(std::string name, SpaceDescriptor ambient, Projector projector);
  /// Intersection of exact members, projected with Dykstra's algorithm.
  static ConvexSetOracle intersection(std::string name, std::vector<ConvexSetOracle> members, double tol = 1e-10,
                                      std::size_t max_iter = 100000);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const SpaceDescriptor& ambient() const { return ambient_; }
  const std::vector<ConvexSetOracle>& members() const { return members_; }

  Projection project(const HVector& x) const;
  /// ‖x − Px‖.
  double distance(const HVector& x) const;
  /// distance(x) ≤ tol·(1 + ‖x‖).
  bool contains(const HVector& x, double tol) const;

 private:
  ConvexSetOracle(std::string name, SpaceDescriptor ambient) : name_(std::move(name)), ambient_(std::move(ambient)) {}

  Kind kind_ = Kind::exact;
  std::string name_;
  SpaceDescriptor ambient_;
  Projector projector_;
  std::vector<ConvexSetOracle> members_;
  double tol_ = 1e-10;
  std::size_t max_iter_ = 100000;
};

/// Dykstra's alternating projections with correction terms; converges to the
/// orthogonal projection onto the intersection of the (exact) oracles.
/// Stops when a full sweep moves the iterate by at most tol.
Projection dykstra_project(const std::vector<ConvexSetOracle>& oracles, const HVector& x, double tol = 1e-10,
                           std::size_t max_iter = 100000);

// Sets over H.
ConvexSetOracle whole_space(const SpaceDescriptor& ambient);
ConvexSetOracle positive_cone(const SpaceDescriptor& ambient);
ConvexSetOracle real_vectors(const SpaceDescriptor& ambient);

/// {x : L x ∈ H_+} for a real-linear L: ambient → target with L L* = c·I on
/// the target, projected by x ↦ x + L*(P_+(Lx) − Lx)/c.
ConvexSetOracle cone_preimage(std::string name, SpaceDescriptor ambient, std::function<HVector(const HVector&)> map,
                              std::function<HVector(const HVector&)> adjoint, double c);

// Sets over H × H (elements of space.doubled()).

/// C = {(a,b) : −b ≤ a ≤ b} via the closed-form projection (ũ, ṽ) applied to real parts.
ConvexSetOracle domination_set(const SpaceDescriptor& space);
/// The same set as {b − a ∈ H_+} ∩ {b + a ∈ H_+}, projected by Dykstra.
ConvexSetOracle domination_set_dykstra(const SpaceDescriptor& space);
/// C_pos = {(a,b) : 0 ≤ a ≤ b} = {a ∈ H_+} ∩ {b − a ∈ H_+}, projected by Dykstra
/// (the closed form only covers positive pairs).
ConvexSetOracle positive_order_set(const SpaceDescriptor& space);
/// C_θ = {(a,b) : re(e^{iθ}a) ≤ b} via the closed form, after dropping im_J b.
ConvexSetOracle theta_set(const SpaceDescriptor& space, double theta);
/// C_θ = {im_J b = 0} ∩ {re_J b − re_J(e^{iθ}a) ∈ H_+}, projected by Dykstra.
ConvexSetOracle theta_set_dykstra(const SpaceDescriptor& space, double theta);
/// C_mod = {(a,b) : re(e^{iθ}a) ≤ b for all θ}. Exact on commutative spaces
/// (a second-order cone per coordinate). Otherwise the outer approximation by
/// `angles` equispaced sets C_θ, grouped in antipodal pairs
/// {−b ≤ re(e^{iθ}a) ≤ b} with closed-form projections; two angles give a
/// single exact set, more angles use Dykstra over the pairs.
ConvexSetOracle modulus_set(const SpaceDescriptor& space, int angles = 4);
/// H_+ × H_+.
ConvexSetOracle cone_product(const SpaceDescriptor& space);

}  // namespace domlab
