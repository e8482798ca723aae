#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "domlab/domination.hpp"
#include "domlab/instances.hpp"
#include "domlab/invariance.hpp"

namespace domlab {

/// An instance file together with its forms (when they load and validate).
struct LoadedInstance {
  std::string id;
  InstanceFile file;
  std::optional<DominationInstance> instance;
  std::string load_error;

  static LoadedInstance from_file(std::string id, InstanceFile file);
};

/// Criterion names:
///   thm21:direct, thm21:{ii,iii,iv,v,vi,vii,vii_corrected}
///   thm31:{direct,ii,iii_c,iii_c_exact,delta_cone}
///   thm41:{direct,direct_real,ii,ii_per_theta,ii_printed}
///   positivity:{A,B}:{criterion,direct}
///   barthelemy:{i,...,vi}[:set] with set C (default), Cpos, HplusA, HplusB or Ctheta=<angle>
///   oracle:commutative
///   ideal:{def,prop12,modulus,mvv} (subspaces "U" and "V"; V defaults to H)
/// Hypothesis failures become precondition_failed verdicts.
Verdict run_criterion(const LoadedInstance& inst, const std::string& criterion, const SamplingOptions& options);

/// Every criterion name that makes sense for the instance's data.
std::vector<std::string> all_criteria(const LoadedInstance& inst);

/// Criterion groups whose members are equivalent by the theorems.
struct CriterionGroup {
  std::string name;
  std::vector<std::string> members;
};
std::vector<CriterionGroup> equivalence_groups(const LoadedInstance& inst);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const SpaceDescriptor& space, const nlohmann::json& j);

struct CampaignConfig {
  std::vector<std::string> instance_paths;
  /// Empty: all applicable criteria per instance.
  std::vector<std::string> criteria;
  SamplingOptions options;
};

struct CampaignReport {
  /// Deterministic part: verdicts, equivalence tables, probe findings.
  nlohmann::json payload;
  /// Wall-clock figures, kept apart from the payload.
  nlohmann::json timing;
  int exit_code = 0;
};

CampaignReport run_campaign(const CampaignConfig& config);
CampaignReport run_campaign(const std::vector<LoadedInstance>& instances, const std::vector<std::string>& criteria,
                            const SamplingOptions& options);

/// 0 all pass, 1 violation, 2 inconclusive. Precondition failures are
/// recorded but do not raise the code.
int exit_code_for(const std::vector<Verdict>& verdicts);

/// Margin of a criterion at a stored witness (premises re-checked; a
/// violated premise gives +∞). Throws std::invalid_argument for criteria
/// without a pointwise form.
double evaluate_criterion(const LoadedInstance& inst, const std::string& criterion, const Witness& w,
                          const SamplingOptions& options);

struct ShrinkResult {
  Witness witness;
  double original_margin = 0.0;
  bool shrunk = false;
  /// Set when the original witness does not violate by more than tol.
  bool inconclusive = false;
  std::size_t steps = 0;
};

/// Greedily zeroes blocks (in all witness vectors at once) and drops
/// eigencomponents of real witness vectors while the margin stays below −tol.
ShrinkResult shrink_witness(const LoadedInstance& inst, const std::string& criterion, const Witness& w,
                            const SamplingOptions& options);

}  // namespace domlab
