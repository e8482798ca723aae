#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "domlab/domination.hpp"
#include "domlab/ideals.hpp"

namespace domlab {

enum class InstanceKind { derivation_example, perturbed_pair, commutative_random, adversarial, random_pair, magnetic };

std::string_view to_string(InstanceKind k);
InstanceKind instance_kind_from_string(std::string_view s);

inline constexpr const char* kToolVersion = "domlab 1.0.0";

/// On-disk instance: generator matrices in the canonical basis plus optional
/// subspace spanning sets and construction metadata.
struct InstanceFile {
  std::string kind;
  std::vector<int> blocks;
  std::uint64_t seed = 0;
  nlohmann::json parameters = nlohmann::json::object();
  std::string tool_version = kToolVersion;
  std::optional<CMatrix> a;
  std::optional<CMatrix> b;
  std::map<std::string, std::vector<HVector>> subspaces;

  SpaceDescriptor space() const { return SpaceDescriptor(blocks); }
};

/// Generator parameters. `variant` selects a sub-construction per kind; the
/// numeric map carries optional overrides (see gen_instance).
struct GenParams {
  std::vector<int> blocks;
  std::uint64_t seed = 0;
  /// Perturbation strength as a fraction of the largest value that keeps
  /// the perturbed generator accretive (perturbed_pair); must lie in (0, 0.9].
  std::optional<double> eps;
  std::string variant;
  std::map<std::string, double> values;
};

/// Builds an instance.
///   derivation_example  B = D*D with D x = i(bx − xb) per block, A = B + M,
///                       M x = a x a with a = c·b + d·1 ⪰ 0 and |c| ≤ 1. Both
///                       semigroups are positive and S dominates T.
///                       variant "dephasing": b = diag(1, −1, 1, ...).
///                       values: "c", "d" fix a (d defaults to the smallest
///                       value making a ⪰ 0 plus a random offset).
///   perturbed_pair      A = B − εW, W cone preserving; ε = eps·λ_min(B)/‖W‖.
///                       Non-commutative: B = D*D + M_{a_B}, W = M_{a_W}.
///                       Commutative: B = Laplacian + potential, W ≥ 0 entrywise.
///   commutative_random  all 1×1 blocks. variants "potential" (shared
///                       Laplacian, potentials V_A, V_B; values "zero_potential"),
///                       "dominated" (|A_jk| ≤ |B_jk|, A_jj ≥ B_jj), "independent".
///   adversarial         variants "non_real" (A not real), "non_positive" (B real, S not positive).
///   random_pair         B as in derivation_example (or Laplacian), A a random real PSD operator.
///   magnetic            all 1×1 blocks: A magnetic Laplacian with random phases, B its
///                       real counterpart (|T_t u| ≤ S_t |u|).
/// Throws std::invalid_argument on invalid parameters.
InstanceFile gen_instance(InstanceKind kind, const GenParams& params);

nlohmann::json to_json(const InstanceFile& f);
InstanceFile instance_from_json(const nlohmann::json& j);

void save_instance(const InstanceFile& f, const std::string& path);
InstanceFile load_instance(const std::string& path);

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const HVector& v);
HVector vector_from_json(const SpaceDescriptor& space, const nlohmann::json& j);

/// Forms of the file as a domination instance (B defaults to A when absent).
DominationInstance to_domination_instance(const InstanceFile& f);
Subspace subspace_of(const InstanceFile& f, const std::string& name);

}  // namespace domlab
