#pragma once

#include <optional>
#include <string_view>

#include "domlab/convex.hpp"
#include "domlab/forms.hpp"
#include "domlab/verdict.hpp"

namespace domlab {

/// The six equivalent invariance conditions for a closed convex set C with
/// projection P under the semigroup R_t generated by a form 𝔠:
///   i    R_t C ⊆ C for all t ≥ 0
///   ii   𝔠(Pu) ≤ 𝔠(u) for all u
///   iii  re 𝔠(u, u − Pu) ≥ 0 for all u
///   iv   re 𝔠(Pu, u − Pu) ≥ 0 for all u
///   v    𝔠(Pu) ≤ 𝔠(u) for all u ∈ C_0
///   vi   re 𝔠(u, u − Pu) ≥ 0 for all u ∈ C_0
/// where (v) and (vi) need C ⊆ C_0 and R_t C_0 ⊆ C_0. The domain clauses
/// P(dom 𝔠) ⊆ dom 𝔠 are vacuous in finite dimension.
enum class InvarianceCondition { i, ii, iii, iv, v, vi };

std::string_view to_string(InvarianceCondition c);
std::optional<InvarianceCondition> invariance_condition_from_string(std::string_view s);

/// A point of C: the projection of a Gaussian or of a signed unit rank-one
/// element, which lands on low-dimensional faces often.
HVector sample_set_point(const ConvexSetOracle& set, Rng& rng);

/// Samples the chosen condition. Non-converged Dykstra projections make the
/// sample inconclusive. For (v)/(vi) `c0` is required; its hypotheses are
/// checked by sampling first (precondition_failed when refuted) and the
/// verdict carries a note that it is conditional on that check.
Verdict check_invariance(const FormOperator& c, const ConvexSetOracle& set, InvarianceCondition condition,
                         const ConvexSetOracle* c0, const SamplingOptions& options);

/// Margin of one condition at a single point: x ∈ C and t for (i), any u
/// otherwise (u ∈ C_0 for (v)/(vi), which is not re-checked here).
/// Returns NaN when a Dykstra projection fails to converge.
double invariance_margin(const FormOperator& c, const ConvexSetOracle& set, InvarianceCondition condition,
                         const HVector& x, std::optional<double> t);

/// Sampled test of C ⊆ C_0 and R_t C_0 ⊆ C_0.
Verdict check_c0_hypotheses(const FormOperator& c, const ConvexSetOracle& set, const ConvexSetOracle& c0,
                            const SamplingOptions& options);

}  // namespace domlab
