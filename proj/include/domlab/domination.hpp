#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "domlab/convex.hpp"
#include "domlab/forms.hpp"
#include "domlab/projections.hpp"
#include "domlab/random.hpp"
#include "domlab/verdict.hpp"

namespace domlab {

/// Realness and positivity of the two generators, computed once per instance.
/// Positivity is exact on commutative spaces and sampled (criterion method)
/// otherwise; it is left empty for non-real generators.
struct Hypotheses {
  bool a_real = false;
  bool b_real = false;
  double a_realness_residual = 0.0;
  double b_realness_residual = 0.0;
  std::optional<bool> a_positive;
  std::optional<bool> b_positive;
  std::string positivity_method;
};

/// A pair of forms 𝔞 (semigroup T) and 𝔟 (semigroup S) on the same space.
class DominationInstance {
 public:
  DominationInstance(FormOperator a, FormOperator b, std::map<std::string, std::string> metadata = {});

  const SpaceDescriptor& space() const { return a_.space(); }
  const FormOperator& a() const { return a_; }
  const FormOperator& b() const { return b_; }
  const Hypotheses& hypotheses() const { return hyp_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }
  /// ‖A − B‖ (operator norm).
  double delta_norm() const { return delta_norm_; }

  /// Same instance with both generators multiplied by c > 0.
  DominationInstance scaled(double c) const;

 private:
  FormOperator a_;
  FormOperator b_;
  std::map<std::string, std::string> metadata_;
  Hypotheses hyp_;
  double delta_norm_ = 0.0;
};

Hypotheses compute_hypotheses(const FormOperator& a, const FormOperator& b);

/// Throw HypothesisError unless the standing assumptions hold:
/// general domination needs A, B real and S positive; positive domination
/// needs both semigroups real and positive; θ-domination needs S real.
void require_general(const DominationInstance& inst);
void require_both_positive(const DominationInstance& inst);
void require_theta(const DominationInstance& inst);

// Samplers.

struct OrderSample {
  HVector u;
  HVector v;
  HVector p;
  HVector q;
};

/// p, q ∈ H_+ and (u, v) = (p − q, p + q), so −v ≤ u ≤ v. Half of the draws
/// use Wishart p and q; the rest use a unit rank-one p with q = 0 or the
/// reverse, which reach the extreme rays of C.
OrderSample sample_order_interval(const SpaceDescriptor& space, Rng& rng);

/// Real pairs for the form criteria: independent signed samples, or points
/// of C displaced by δ·z with δ log-uniform on [1e-4, 1].
std::pair<HVector, HVector> sample_real_pair(const SpaceDescriptor& space, Rng& rng);

/// Positive pairs, often close to {0 ≤ a ≤ b}.
std::pair<HVector, HVector> sample_positive_pair(const SpaceDescriptor& space, Rng& rng);

/// θ-admissible pairs u = a + ib, v = |a| + |b| + w with a, b real, w ∈ H_+.
std::pair<HVector, HVector> sample_theta_admissible(const SpaceDescriptor& space, Rng& rng);

/// Pairs in H × H^J near the boundary of C_θ for the given θ.
std::pair<HVector, HVector> sample_theta_pair(const SpaceDescriptor& space, double theta, Rng& rng);

// Pointwise margins; negative values violate. Reused by shrink_witness.

/// min over signs of cone_margin(S_t v ∓ T_t u) / (1 + ‖u‖ + ‖v‖).
double direct_margin(const CMatrix& tt, const CMatrix& st, const HVector& u, const HVector& v);

enum class Thm21 { ii, iii, iv, v, vi, vii, vii_corrected };
std::string_view to_string(Thm21 c);
std::optional<Thm21> thm21_from_string(std::string_view s);

/// Normalized margin of the chosen thm21 inequality at real (u, v).
double thm21_margin(const DominationInstance& inst, Thm21 c, const HVector& u, const HVector& v);

/// cone_margin(S_t u − T_t u) / (1 + ‖u‖) for u ∈ H_+.
double positive_direct_margin(const CMatrix& tt, const CMatrix& st, const HVector& u);
/// 𝔞((u + u∧v)/2) + 𝔟((v + u∨v)/2) ≤ 𝔞(u) + 𝔟(v) for u, v ∈ H_+.
double thm31_ii_margin(const DominationInstance& inst, const HVector& u, const HVector& v);
/// ⟨(A − B)p, q⟩ / (1 + ‖A − B‖‖p‖‖q‖) for p, q ∈ H_+.
double thm31_pairing_margin(const DominationInstance& inst, const HVector& p, const HVector& q);
/// cone_margin((A − B)p) / (1 + ‖A − B‖‖p‖) for p ∈ H_+.
double thm31_cone_margin(const DominationInstance& inst, const HVector& p);

/// cone_margin(S_t v − re(e^{iθ} T_t u)) / (1 + ‖u‖ + ‖v‖).
double thm41_direct_margin(const CMatrix& tt, const CMatrix& st, const HVector& u, const HVector& v, double theta);
/// The θ-criterion 𝔞(u') + 𝔟(v') ≤ 𝔞(u) + 𝔟(v) with (u', v') = P_θ(u, v);
/// `printed` selects the variant without the phase on u'.
double thm41_ii_margin(const DominationInstance& inst, const HVector& u, const HVector& v, double theta,
                       bool printed = false);
/// 𝔞(u') + 𝔟(v') ≤ 𝔞(u) + 𝔟(v) with (u', v') the projection onto `set`
/// (normally modulus_set). NaN when the projection does not converge.
double thm41_modulus_margin(const DominationInstance& inst, const ConvexSetOracle& set, const HVector& u,
                            const HVector& v);

// Checks.

/// Samples order intervals and t on the grid: −S_t v ≤ T_t u ≤ S_t v.
Verdict check_domination_direct(const DominationInstance& inst, const SamplingOptions& options);

/// Samples real pairs (u, v) and tests the chosen inequality. The ideal
/// clauses of (iv)-(vii) hold trivially (full form domains) and are recorded
/// in the notes.
Verdict check_thm21(const DominationInstance& inst, Thm21 c, const SamplingOptions& options);

enum class Thm31 { ii, iii_c_sampled, iii_c_exact_commutative };
std::string_view to_string(Thm31 c);
std::optional<Thm31> thm31_from_string(std::string_view s);

/// T_t u ≤ S_t u on sampled u ∈ H_+ and t on the grid.
Verdict check_positive_domination_direct(const DominationInstance& inst, const SamplingOptions& options);
Verdict check_thm31(const DominationInstance& inst, Thm31 c, const SamplingOptions& options);

/// Whether Δ = A − B maps H_+ into H_+ (cone margin of Δp on sampled p).
Verdict check_delta_cone_preserving(const DominationInstance& inst, const SamplingOptions& options);

/// Per-sample comparison of the two sides of the duality
/// "Δp ∈ H_+ ⇔ ⟨Δp, q⟩ ≥ 0 for all q ∈ H_+". The pairing side uses the
/// rank-one eigenprojector of Δp's lowest eigenvalue and a random q.
struct DualityReport {
  std::size_t samples = 0;
  std::size_t cone_failures = 0;
  std::size_t pairing_failures = 0;
  std::size_t disagreements = 0;
};
DualityReport check_delta_duality(const DominationInstance& inst, const SamplingOptions& options);

enum class Thm41Mode { direct, criterion_ii, criterion_ii_per_theta, criterion_ii_printed };

/// Direct mode: admissible pairs, all θ × t on the grids. criterion_ii: the
/// projection inequality for the intersection of all C_θ, the set whose
/// invariance is the definition. Per-θ modes: one θ per sample drawn from the
/// grid, tested against C_θ alone (corrected or printed projection).
/// `real_only` restricts direct-mode u to H^J.
Verdict check_thm41(const DominationInstance& inst, Thm41Mode mode, const SamplingOptions& options,
                    bool real_only = false);

/// min over θ ∈ {0, π} of the θ-direct margin at a real pair; reproduces a
/// general-domination violation as a θ-domination violation.
double theta_reduction_margin(const DominationInstance& inst, const HVector& u, const HVector& v, double t);

/// Exact oracle for fully commutative spaces: min over t and (j, k) of
/// (S_t)_jk − |(T_t)_jk|. The witness records t, j, k; the value "decided"
/// is 1 when |margin| > 1e-6.
Verdict commutative_matrix_domination(const DominationInstance& inst, const std::vector<double>& t_grid,
                                      double tol = kDefaultTol);

inline constexpr double kOracleDecisionMargin = 1e-6;

}  // namespace domlab
