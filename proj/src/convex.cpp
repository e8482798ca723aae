#include "domlab/convex.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "domlab/cone.hpp"
#include "domlab/errors.hpp"
#include "domlab/projections.hpp"

namespace domlab {

ConvexSetOracle ConvexSetOracle::exact(std::string name, SpaceDescriptor ambient, Projector projector) {
  ConvexSetOracle o(std::move(name), std::move(ambient));
  o.kind_ = Kind::exact;
  o.projector_ = std::move(projector);
  return o;
}

ConvexSetOracle ConvexSetOracle::intersection(std::string name, std::vector<ConvexSetOracle> members, double tol,
                                              std::size_t max_iter) {
  if (members.empty()) throw std::invalid_argument("intersection of no sets");
  for (const auto& m : members) {
    if (m.kind() != Kind::exact) throw std::invalid_argument("Dykstra members must be exact oracles");
    if (!(m.ambient() == members.front().ambient())) throw ShapeError("Dykstra members live on different spaces");
  }
  ConvexSetOracle o(std::move(name), members.front().ambient());
  o.kind_ = Kind::dykstra;
  o.members_ = std::move(members);
  o.tol_ = tol;
  o.max_iter_ = max_iter;
  return o;
}

Projection ConvexSetOracle::project(const HVector& x) const {
  if (!(x.space() == ambient_)) throw ShapeError("point does not belong to the set's ambient space");
  if (kind_ == Kind::exact) return {projector_(x), true, 0, 0.0};
  return dykstra_project(members_, x, tol_, max_iter_);
}

double ConvexSetOracle::distance(const HVector& x) const { return (x - project(x).point).norm(); }

bool ConvexSetOracle::contains(const HVector& x, double tol) const { return distance(x) <= tol * (1.0 + x.norm()); }

Projection dykstra_project(const std::vector<ConvexSetOracle>& oracles, const HVector& x, double tol,
                           std::size_t max_iter) {
  if (oracles.empty()) throw std::invalid_argument("dykstra_project needs at least one set");
  if (oracles.size() == 1) return {oracles.front().project(x).point, true, 1, 0.0};

  const double threshold = tol * (1.0 + x.norm());
  HVector current = x;
  std::vector<HVector> increments(oracles.size(), HVector(x.space()));
  Projection out{x, false, 0, 0.0};
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    const HVector before = current;
    double increment_change = 0.0;
    for (std::size_t i = 0; i < oracles.size(); ++i) {
      const HVector shifted = current + increments[i];
      HVector next = oracles[i].project(shifted).point;
      HVector new_increment = shifted - next;
      increment_change += (new_increment - increments[i]).coeffs().squaredNorm();
      increments[i] = std::move(new_increment);
      current = std::move(next);
    }
    out.iterations = iter;
    out.residual = (current - before).norm();
    if (out.residual <= threshold && std::sqrt(increment_change) <= threshold) {
      out.converged = true;
      break;
    }
  }
  out.point = std::move(current);
  return out;
}

ConvexSetOracle whole_space(const SpaceDescriptor& ambient) {
  return ConvexSetOracle::exact("H", ambient, [](const HVector& x) { return x; });
}

ConvexSetOracle positive_cone(const SpaceDescriptor& ambient) {
  return ConvexSetOracle::exact("H+", ambient, [](const HVector& x) { return project_cone(x); });
}

ConvexSetOracle real_vectors(const SpaceDescriptor& ambient) {
  return ConvexSetOracle::exact("HJ", ambient, [](const HVector& x) { return real_part(x); });
}

ConvexSetOracle cone_preimage(std::string name, SpaceDescriptor ambient, std::function<HVector(const HVector&)> map,
                              std::function<HVector(const HVector&)> adjoint, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("cone_preimage needs L L* = c I with c > 0");
  return ConvexSetOracle::exact(std::move(name), std::move(ambient),
                                [map = std::move(map), adjoint = std::move(adjoint), c](const HVector& x) {
                                  const HVector image = map(x);
                                  const HVector correction = project_cone(image) - image;
                                  return x + (1.0 / c) * adjoint(correction);
                                });
}

namespace {

/// {(a,b) : b + sign·a ∈ H_+}; L(a,b) = b + sign·a, L*y = (sign·y, y), LL* = 2I.
ConvexSetOracle rotated_cone(const SpaceDescriptor& space, double sign, std::string name) {
  return cone_preimage(
      std::move(name), space.doubled(),
      [space, sign](const HVector& x) {
        auto [a, b] = split_pair(x, space);
        return b + sign * a;
      },
      [sign](const HVector& y) { return join_pair(sign * y, y); }, 2.0);
}

}  // namespace

ConvexSetOracle domination_set(const SpaceDescriptor& space) {
  return ConvexSetOracle::exact("C", space.doubled(), [space](const HVector& x) {
    auto [a, b] = split_pair(x, space);
    auto [pa, pb] = project_C(a, b);
    return join_pair(pa, pb);
  });
}

ConvexSetOracle domination_set_dykstra(const SpaceDescriptor& space) {
  return ConvexSetOracle::intersection("C[dykstra]",
                                       {rotated_cone(space, -1.0, "b-a>=0"), rotated_cone(space, 1.0, "b+a>=0")});
}

ConvexSetOracle positive_order_set(const SpaceDescriptor& space) {
  auto first_positive = ConvexSetOracle::exact("a>=0", space.doubled(), [space](const HVector& x) {
    auto [a, b] = split_pair(x, space);
    return join_pair(project_cone(a), b);
  });
  return ConvexSetOracle::intersection("Cpos", {std::move(first_positive), rotated_cone(space, -1.0, "b-a>=0")});
}

ConvexSetOracle theta_set(const SpaceDescriptor& space, double theta) {
  return ConvexSetOracle::exact("Ctheta", space.doubled(), [space, theta](const HVector& x) {
    auto [a, b] = split_pair(x, space);
    auto [pa, pb] = project_C_theta(a, b, theta);
    return join_pair(pa, pb);
  });
}

ConvexSetOracle modulus_set(const SpaceDescriptor& space, int angles) {
  if (space.is_commutative()) {
    return ConvexSetOracle::exact("Cmod", space.doubled(), [space](const HVector& x) {
      auto [a, b] = split_pair(x, space);
      for (std::ptrdiff_t j = 0; j < space.dim(); ++j) {
        const Complex z = a.coeffs()(j);
        const double r = b.coeffs()(j).real(), m = std::abs(z);
        if (m <= r) {
          b.coeffs()(j) = r;
        } else if (m <= -r) {
          a.coeffs()(j) = 0.0;
          b.coeffs()(j) = 0.0;
        } else {
          const double s = 0.5 * (m + r);
          a.coeffs()(j) = s * z / m;
          b.coeffs()(j) = s;
        }
      }
      return join_pair(a, b);
    });
  }
  if (angles < 2 || angles % 2 != 0) throw std::invalid_argument("modulus_set needs an even number of angles");
  // C_θ ∩ C_{θ+π} = {−b ≤ re(e^{iθ}a) ≤ b} is projected in closed form, leaving im(e^{iθ}a) alone.
  std::vector<ConvexSetOracle> members;
  for (int k = 0; k < angles / 2; ++k) {
    const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * k / angles);
    members.push_back(ConvexSetOracle::exact("Ctheta pair", space.doubled(), [space, phase](const HVector& x) {
      auto [a, b] = split_pair(x, space);
      const HVector rotated = phase * a;
      auto [re_a, pb] = project_C(real_part(rotated), b);
      return join_pair(std::conj(phase) * (re_a + Complex(0.0, 1.0) * imag_part(rotated)), pb);
    }));
  }
  if (members.size() == 1) return members.front();
  return ConvexSetOracle::intersection("Cmod[dykstra]", std::move(members), 1e-10, 20000);
}

ConvexSetOracle theta_set_dykstra(const SpaceDescriptor& space, double theta) {
  auto real_second = ConvexSetOracle::exact("im b=0", space.doubled(), [space](const HVector& x) {
    auto [a, b] = split_pair(x, space);
    return join_pair(a, real_part(b));
  });
  // L(a,b) = re_J b − re_J(e^{iθ}a) maps into H^J; L*y = (−e^{−iθ}y, y); LL* = 2I on H^J.
  const Complex phase = std::polar(1.0, -theta);
  auto rotated = cone_preimage(
      "re b - re(e^{i theta} a) >= 0", space.doubled(),
      [space, theta](const HVector& x) {
        auto [a, b] = split_pair(x, space);
        return real_part(b) - rotate_real(a, theta);
      },
      [phase](const HVector& y) { return join_pair(-phase * y, y); }, 2.0);
  return ConvexSetOracle::intersection("Ctheta[dykstra]", {std::move(real_second), std::move(rotated)});
}

ConvexSetOracle cone_product(const SpaceDescriptor& space) {
  return ConvexSetOracle::exact("H+xH+", space.doubled(), [](const HVector& x) { return project_cone(x); });
}

}  // namespace domlab
