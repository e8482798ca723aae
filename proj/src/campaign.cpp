#include "domlab/campaign.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "domlab/cone.hpp"
#include "domlab/errors.hpp"

namespace domlab {

using nlohmann::json;

LoadedInstance LoadedInstance::from_file(std::string id, InstanceFile file) {
  LoadedInstance out;
  out.id = std::move(id);
  out.file = std::move(file);
  try {
    if (out.file.a) out.instance.emplace(to_domination_instance(out.file));
  } catch (const std::exception& e) {
    out.load_error = e.what();
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

const DominationInstance& need_instance(const LoadedInstance& inst) {
  if (!inst.instance) {
    throw std::invalid_argument(inst.load_error.empty() ? "instance has no forms" : inst.load_error);
  }
  return *inst.instance;
}

struct SetChoice {
  FormOperator form;
  ConvexSetOracle set;
  ConvexSetOracle c0;
};

SetChoice choose_set(const DominationInstance& inst, const std::string& name) {
  const auto& space = inst.space();
  if (name == "HplusA" || name == "HplusB") {
    const FormOperator& f = name == "HplusA" ? inst.a() : inst.b();
    return {f, positive_cone(space), whole_space(space)};
  }
  const FormOperator prod = product_form(inst.a(), inst.b());
  const SpaceDescriptor doubled = space.doubled();
  if (name == "C") return {prod, domination_set(space), whole_space(doubled)};
  if (name == "Cpos") return {prod, positive_order_set(space), cone_product(space)};
  if (name.rfind("Ctheta=", 0) == 0) {
    const double theta = std::stod(name.substr(7));
    return {prod, theta_set(space, theta), whole_space(doubled)};
  }
  throw std::invalid_argument("unknown convex set '" + name + "'");
}

Verdict precondition_failed(const std::string& name, const std::string& why) {
  Verdict v;
  v.criterion = name;
  v.outcome = Outcome::precondition_failed;
  v.worst_margin = std::numeric_limits<double>::quiet_NaN();
  v.notes.push_back(why);
  return v;
}

Subspace subspace_or_whole(const LoadedInstance& inst, const std::string& name) {
  if (inst.file.subspaces.count(name)) return subspace_of(inst.file, name);
  return Subspace::whole(inst.file.space());
}

Verdict dispatch(const LoadedInstance& li, const std::string& name, const SamplingOptions& opts) {
  const auto parts = split(name, ':');
  if (parts.size() < 2) throw std::invalid_argument("unknown criterion '" + name + "'");
  const std::string& family = parts[0];
  const std::string& which = parts[1];

  if (family == "ideal") {
    const Subspace u = subspace_of(li.file, "U");
    const Subspace v = subspace_or_whole(li, "V");
    if (which == "def") return check_generalized_ideal(u, v, IdealVariant::definition, opts);
    if (which == "prop12") return check_generalized_ideal(u, v, IdealVariant::prop12, opts);
    if (which == "modulus") return check_ideal_modulus_implication(u, v, opts);
    if (which == "mvv") return check_mvv_ideal(u, v, opts);
    throw std::invalid_argument("unknown criterion '" + name + "'");
  }

  const DominationInstance& inst = need_instance(li);
  if (family == "thm21") {
    if (which == "direct") return check_domination_direct(inst, opts);
    if (auto c = thm21_from_string(which)) return check_thm21(inst, *c, opts);
  } else if (family == "thm31") {
    if (which == "direct") return check_positive_domination_direct(inst, opts);
    if (which == "delta_cone") return check_delta_cone_preserving(inst, opts);
    if (auto c = thm31_from_string(which)) return check_thm31(inst, *c, opts);
  } else if (family == "thm41") {
    if (which == "direct") return check_thm41(inst, Thm41Mode::direct, opts);
    if (which == "direct_real") return check_thm41(inst, Thm41Mode::direct, opts, true);
    if (which == "ii") return check_thm41(inst, Thm41Mode::criterion_ii, opts);
    if (which == "ii_per_theta") return check_thm41(inst, Thm41Mode::criterion_ii_per_theta, opts);
    if (which == "ii_printed") return check_thm41(inst, Thm41Mode::criterion_ii_printed, opts);
  } else if (family == "positivity" && parts.size() == 3) {
    const FormOperator& f = which == "A" ? inst.a() : inst.b();
    if (which != "A" && which != "B") throw std::invalid_argument("positivity target must be A or B");
    if (!is_real_operator(f)) throw HypothesisError("positivity needs a real generator");
    PositivityMethod m;
    if (parts[2] == "criterion") m = PositivityMethod::criterion;
    else if (parts[2] == "direct") m = PositivityMethod::direct;
    else throw std::invalid_argument("unknown positivity method '" + parts[2] + "'");
    Verdict v = positivity_check(f, m, opts);
    v.criterion = name;
    return v;
  } else if (family == "barthelemy") {
    auto cond = invariance_condition_from_string(which);
    if (!cond) throw std::invalid_argument("unknown invariance condition '" + which + "'");
    const std::string set_name = parts.size() >= 3 ? name.substr(family.size() + which.size() + 2) : "C";
    SetChoice choice = choose_set(inst, set_name);
    Verdict v = check_invariance(choice.form, choice.set, *cond, &choice.c0, opts);
    v.criterion = name;
    return v;
  } else if (family == "oracle" && which == "commutative") {
    return commutative_matrix_domination(inst, opts.t_grid, opts.tol);
  }
  throw std::invalid_argument("unknown criterion '" + name + "'");
}

json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) return j.get<std::string>() == "-inf" ? -std::numeric_limits<double>::infinity()
                                                           : std::numeric_limits<double>::infinity();
  return j.get<double>();
}

}  // namespace

Verdict run_criterion(const LoadedInstance& inst, const std::string& criterion, const SamplingOptions& options) {
  try {
    Verdict v = dispatch(inst, criterion, options);
    v.criterion = criterion;
    return v;
  } catch (const HypothesisError& e) {
    return precondition_failed(criterion, e.what());
  } catch (const NotRealError& e) {
    return precondition_failed(criterion, e.what());
  }
}

std::vector<std::string> all_criteria(const LoadedInstance& li) {
  std::vector<std::string> out;
  if (li.instance) {
    const bool commutative = li.instance->space().is_commutative();
    for (const char* c : {"thm21:direct", "thm21:ii", "thm21:iii", "thm21:iv", "thm21:v", "thm21:vi", "thm21:vii",
                          "thm21:vii_corrected", "thm31:direct", "thm31:ii", "thm31:iii_c", "thm31:delta_cone"})
      out.emplace_back(c);
    if (commutative) out.emplace_back("thm31:iii_c_exact");
    for (const char* c : {"thm41:direct", "thm41:ii", "thm41:ii_per_theta", "thm41:ii_printed", "positivity:A:criterion",
                          "positivity:A:direct", "positivity:B:criterion", "positivity:B:direct"})
      out.emplace_back(c);
    for (const char* set : {"C", "Cpos", "HplusA"})
      for (const char* cond : {"i", "ii", "iii", "iv", "v", "vi"})
        out.push_back(std::string("barthelemy:") + cond + ":" + set);
    if (commutative) out.emplace_back("oracle:commutative");
  }
  if (li.file.subspaces.count("U")) {
    for (const char* c : {"ideal:def", "ideal:prop12", "ideal:modulus"}) out.emplace_back(c);
    if (li.file.space().is_commutative()) out.emplace_back("ideal:mvv");
  }
  return out;
}

std::vector<CriterionGroup> equivalence_groups(const LoadedInstance& li) {
  std::vector<CriterionGroup> out;
  if (li.instance) {
    out.push_back({"thm21", {"thm21:direct", "thm21:ii", "thm21:iii", "thm21:iv", "thm21:v", "thm21:vi",
                             "thm21:vii_corrected"}});
    CriterionGroup t31{"thm31", {"thm31:direct", "thm31:ii", "thm31:iii_c", "thm31:delta_cone"}};
    if (li.instance->space().is_commutative()) t31.members.emplace_back("thm31:iii_c_exact");
    out.push_back(t31);
    out.push_back({"thm41", {"thm41:direct", "thm41:ii"}});
    out.push_back({"positivity:A", {"positivity:A:criterion", "positivity:A:direct"}});
    out.push_back({"positivity:B", {"positivity:B:criterion", "positivity:B:direct"}});
    for (const char* set : {"C", "Cpos", "HplusA"}) {
      CriterionGroup g{std::string("barthelemy:") + set, {}};
      for (const char* cond : {"i", "ii", "iii", "iv", "v", "vi"})
        g.members.push_back(std::string("barthelemy:") + cond + ":" + set);
      out.push_back(g);
    }
  }
  if (li.file.subspaces.count("U")) {
    CriterionGroup g{"ideals", {"ideal:def", "ideal:prop12"}};
    if (li.file.space().is_commutative()) g.members.emplace_back("ideal:mvv");
    out.push_back(g);
  }
  return out;
}

json witness_to_json(const Witness& w) {
  json j;
  json vecs = json::object();
  for (const auto& [name, v] : w.vectors) vecs[name] = vector_to_json(v);
  j["vectors"] = vecs;
  j["t"] = w.t ? json(*w.t) : json(nullptr);
  j["theta"] = w.theta ? json(*w.theta) : json(nullptr);
  j["margin"] = number(w.margin);
  j["sample_index"] = w.sample_index;
  json values = json::object();
  for (const auto& [k, v] : w.values) values[k] = number(v);
  j["values"] = values;
  return j;
}

Witness witness_from_json(const SpaceDescriptor& space, const json& j) {
  Witness w;
  const json& src = j.contains("witness") ? j.at("witness") : j;
  for (const auto& [name, v] : src.at("vectors").items()) {
    // Vectors of H × H carry twice the coordinates.
    const auto n = static_cast<std::ptrdiff_t>(v.size());
    const SpaceDescriptor s = n == space.dim() ? space : space.doubled();
    w.vectors.emplace_back(name, vector_from_json(s, v));
  }
  if (src.contains("t") && !src.at("t").is_null()) w.t = src.at("t").get<double>();
  if (src.contains("theta") && !src.at("theta").is_null()) w.theta = src.at("theta").get<double>();
  if (src.contains("margin")) w.margin = number_from(src.at("margin"));
  w.sample_index = src.value("sample_index", std::uint64_t{0});
  if (src.contains("values"))
    for (const auto& [k, v] : src.at("values").items()) w.values[k] = number_from(v);
  return w;
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["criterion"] = v.criterion;
  j["outcome"] = std::string(to_string(v.outcome));
  j["worst_margin"] = number(v.worst_margin);
  j["samples"] = v.samples;
  j["inconclusive_samples"] = v.inconclusive_samples;
  j["witness"] = v.witness ? witness_to_json(*v.witness) : json(nullptr);
  j["notes"] = v.notes;
  return j;
}

int exit_code_for(const std::vector<Verdict>& verdicts) {
  int code = 0;
  for (const auto& v : verdicts) {
    if (v.outcome == Outcome::violation) code = 1;
    else if (v.outcome == Outcome::inconclusive && code == 0) code = 2;
  }
  return code;
}

CampaignReport run_campaign(const std::vector<LoadedInstance>& instances, const std::vector<std::string>& criteria,
                            const SamplingOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  CampaignReport report;
  json& payload = report.payload;
  payload["config"] = {{"budget", options.budget},
                       {"seed", options.seed},
                       {"tol", options.tol},
                       {"t_grid", options.t_grid},
                       {"theta_points", options.theta_grid.size()},
                       {"criteria", criteria}};
  json per_instance = json::array();
  json timing_instances = json::object();
  std::vector<Verdict> all;
  bool errors = false;

  json probe_rows = json::array();
  std::size_t probe_corrected_agree = 0, probe_printed_agree = 0, probe_considered = 0;

  for (const auto& li : instances) {
    const auto t0 = clock::now();
    json entry;
    entry["id"] = li.id;
    entry["kind"] = li.file.kind;
    entry["blocks"] = li.file.blocks;
    if (!li.load_error.empty()) {
      entry["error"] = li.load_error;
      errors = true;
      per_instance.push_back(entry);
      continue;
    }
    if (li.instance) {
      const auto& h = li.instance->hypotheses();
      entry["hypotheses"] = {{"A_real", h.a_real},
                             {"B_real", h.b_real},
                             {"A_positive", h.a_positive ? json(*h.a_positive) : json(nullptr)},
                             {"B_positive", h.b_positive ? json(*h.b_positive) : json(nullptr)},
                             {"positivity_method", h.positivity_method}};
      std::vector<std::string> warnings = li.instance->a().warnings();
      for (const auto& w : li.instance->b().warnings()) warnings.push_back(w);
      entry["warnings"] = warnings;
    }
    const std::vector<std::string> names = criteria.empty() ? all_criteria(li) : criteria;
    std::map<std::string, Verdict> verdicts;
    json vj = json::object();
    for (const auto& name : names) {
      Verdict v;
      try {
        v = run_criterion(li, name, options);
      } catch (const std::exception& e) {
        v = precondition_failed(name, std::string("error: ") + e.what());
        errors = true;
      }
      vj[name] = verdict_to_json(v);
      all.push_back(v);
      verdicts.emplace(name, std::move(v));
    }
    entry["verdicts"] = vj;

    json groups = json::object();
    for (const auto& g : equivalence_groups(li)) {
      json outcomes = json::object();
      std::set<std::string> seen;
      bool complete = true;
      for (const auto& m : g.members) {
        auto it = verdicts.find(m);
        if (it == verdicts.end()) {
          complete = false;
          continue;
        }
        const std::string o(to_string(it->second.outcome));
        outcomes[m] = o;
        seen.insert(o);
      }
      if (outcomes.empty()) continue;
      groups[g.name] = {{"outcomes", outcomes}, {"complete", complete}, {"unanimous", seen.size() == 1}};
    }
    entry["equivalence"] = groups;

    // Printed (vii) against the consensus of the other thm21 criteria.
    auto vii = verdicts.find("thm21:vii");
    auto viic = verdicts.find("thm21:vii_corrected");
    if (vii != verdicts.end() && groups.contains("thm21") && groups["thm21"]["unanimous"].get<bool>()) {
      const std::string consensus = groups["thm21"]["outcomes"].begin()->get<std::string>();
      if (consensus == "pass" || consensus == "violation") {
        ++probe_considered;
        const std::string printed(to_string(vii->second.outcome));
        const bool printed_ok = printed == consensus;
        const bool corrected_ok =
            viic != verdicts.end() && std::string(to_string(viic->second.outcome)) == consensus;
        probe_printed_agree += printed_ok;
        probe_corrected_agree += corrected_ok;
        if (!printed_ok)
          probe_rows.push_back({{"id", li.id}, {"consensus", consensus}, {"printed", printed},
                                {"printed_margin", number(vii->second.worst_margin)}});
      }
    }
    per_instance.push_back(entry);
    timing_instances[li.id] = std::chrono::duration<double>(clock::now() - t0).count();
  }
  payload["instances"] = per_instance;

  json tables = json::object();
  for (const auto& entry : per_instance) {
    if (!entry.contains("equivalence")) continue;
    for (const auto& [group, row] : entry["equivalence"].items()) {
      json& t = tables[group];
      if (t.is_null()) t = {{"instances", 0}, {"unanimous", 0}, {"split", json::array()}};
      t["instances"] = t["instances"].get<int>() + 1;
      if (row["unanimous"].get<bool>()) t["unanimous"] = t["unanimous"].get<int>() + 1;
      else t["split"].push_back(entry["id"]);
    }
  }
  payload["equivalence_tables"] = tables;

  std::string finding;
  if (probe_considered == 0) finding = "no instance with a decided thm21 consensus";
  else if (probe_printed_agree == probe_considered) finding = "printed (vii) agrees with the other criteria on every instance";
  else finding = "printed (vii) disagrees with the other criteria; discrepancy flagged";
  payload["vii_probe"] = {{"instances", probe_considered},
                          {"corrected_agrees", probe_corrected_agree},
                          {"printed_agrees", probe_printed_agree},
                          {"discrepancies", probe_rows},
                          {"finding", finding}};

  report.exit_code = errors ? 3 : exit_code_for(all);
  payload["exit_code"] = report.exit_code;
  report.timing = {{"wall_seconds", std::chrono::duration<double>(clock::now() - start).count()},
                   {"per_instance_seconds", timing_instances}};
  return report;
}

CampaignReport run_campaign(const CampaignConfig& config) {
  std::vector<LoadedInstance> instances;
  for (const auto& path : config.instance_paths) {
    try {
      instances.push_back(LoadedInstance::from_file(path, load_instance(path)));
    } catch (const std::exception& e) {
      LoadedInstance bad;
      bad.id = path;
      bad.load_error = e.what();
      instances.push_back(std::move(bad));
    }
  }
  return run_campaign(instances, config.criteria, config.options);
}

// ---------------------------------------------------------------- evaluation

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive(const HVector& x, double tol) { return cone_margin(x, tol).is_positive; }

double require_t(const Witness& w) {
  if (!w.t) throw std::invalid_argument("witness has no time t");
  return *w.t;
}

double require_theta(const Witness& w) {
  if (!w.theta) throw std::invalid_argument("witness has no angle theta");
  return *w.theta;
}

}  // namespace

double evaluate_criterion(const LoadedInstance& li, const std::string& name, const Witness& w,
                          const SamplingOptions& opts) {
  const auto parts = split(name, ':');
  if (parts.size() < 2) throw std::invalid_argument("unknown criterion '" + name + "'");
  const std::string& family = parts[0];
  const std::string& which = parts[1];
  const DominationInstance& inst = need_instance(li);
  const double tol = opts.tol;

  if (family == "thm21") {
    const HVector& u = w.vector("u");
    const HVector& v = w.vector("v");
    if (which == "direct") {
      if (!positive(v - u, tol) || !positive(v + u, tol)) return kInf;
      const double t = require_t(w);
      return direct_margin(inst.a().semigroup_matrix(t), inst.b().semigroup_matrix(t), u, v);
    }
    if (!is_real(u, tol) || !is_real(v, tol)) return kInf;
    if (auto c = thm21_from_string(which)) return thm21_margin(inst, *c, u, v);
  } else if (family == "thm31") {
    if (which == "direct") {
      const HVector& u = w.vector("u");
      if (!positive(u, tol)) return kInf;
      const double t = require_t(w);
      return positive_direct_margin(inst.a().semigroup_matrix(t), inst.b().semigroup_matrix(t), u);
    }
    if (which == "ii") {
      const HVector& u = w.vector("u");
      const HVector& v = w.vector("v");
      if (!positive(u, tol) || !positive(v, tol)) return kInf;
      return thm31_ii_margin(inst, u, v);
    }
    if (which == "iii_c" || which == "iii_c_exact") {
      const HVector& p = w.vector("p");
      const HVector& q = w.vector("q");
      if (!positive(p, tol) || !positive(q, tol)) return kInf;
      return thm31_pairing_margin(inst, p, q);
    }
    if (which == "delta_cone") {
      const HVector& p = w.vector("p");
      if (!positive(p, tol)) return kInf;
      return thm31_cone_margin(inst, p);
    }
  } else if (family == "thm41") {
    const HVector& u = w.vector("u");
    const HVector& v = w.vector("v");
    if (which == "direct" || which == "direct_real") {
      if (!is_real(v, tol)) return kInf;
      for (double th : opts.theta_grid)
        if (!positive(v - rotate_real(u, th), tol)) return kInf;
      const double t = require_t(w);
      return thm41_direct_margin(inst.a().semigroup_matrix(t), inst.b().semigroup_matrix(t), u, v,
                                 require_theta(w));
    }
    if (which == "ii") {
      const bool exact = inst.space().is_commutative() || inst.hypotheses().a_real;
      return thm41_modulus_margin(inst, modulus_set(inst.space(), exact ? 2 : 4), u, v);
    }
    if (which == "ii_per_theta" || which == "ii_printed")
      return thm41_ii_margin(inst, u, v, require_theta(w), which == "ii_printed");
  } else if (family == "positivity" && parts.size() == 3) {
    const FormOperator& f = which == "A" ? inst.a() : inst.b();
    const HVector& u = w.vector("u");
    if (parts[2] == "criterion") {
      if (!is_real(u, tol)) return kInf;
      const HVector neg = negative_part(u);
      return -f(u, neg).real() / (1.0 + f.quadratic(u) + f.quadratic(neg));
    }
    if (!positive(u, tol)) return kInf;
    return cone_margin(f.semigroup_apply(require_t(w), u), tol).margin / (1.0 + u.norm());
  } else if (family == "barthelemy") {
    auto cond = invariance_condition_from_string(which);
    if (!cond) throw std::invalid_argument("unknown invariance condition '" + which + "'");
    const std::string set_name = parts.size() >= 3 ? name.substr(family.size() + which.size() + 2) : "C";
    SetChoice choice = choose_set(inst, set_name);
    if (*cond == InvarianceCondition::i) {
      const HVector& x = w.vector("x");
      if (!choice.set.contains(x, tol)) return kInf;
      return invariance_margin(choice.form, choice.set, *cond, x, w.t);
    }
    const HVector& u = w.vector("u");
    if ((*cond == InvarianceCondition::v || *cond == InvarianceCondition::vi) && !choice.c0.contains(u, tol))
      return kInf;
    return invariance_margin(choice.form, choice.set, *cond, u, std::nullopt);
  }
  throw std::invalid_argument("criterion '" + name + "' has no pointwise evaluation");
}

namespace {

std::size_t support_size(const Witness& w) {
  std::size_t n = 0;
  for (const auto& [name, v] : w.vectors)
    for (const auto& z : v.coeffs()) n += std::abs(z) > 0.0;
  return n;
}

bool changed_any(const Witness& a, const Witness& b) {
  for (std::size_t i = 0; i < a.vectors.size(); ++i)
    if ((a.vectors[i].second.coeffs() - b.vectors[i].second.coeffs()).norm() > 0.0) return true;
  return false;
}

/// Drop the smallest-|λ| nonzero eigencomponent of block k of a real vector.
std::optional<HVector> drop_eigencomponent(const HVector& x, int k) {
  const int n = x.space().block_size(k);
  if (n < 2) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(CMatrix(x.block(k)));
  if (eig.info() != Eigen::Success) return std::nullopt;
  Eigen::VectorXd lambda = eig.eigenvalues();
  int pick = -1;
  for (int i = 0; i < n; ++i)
    if (std::abs(lambda(i)) > 0.0 && (pick < 0 || std::abs(lambda(i)) < std::abs(lambda(pick)))) pick = i;
  if (pick < 0) return std::nullopt;
  int nonzero = 0;
  for (int i = 0; i < n; ++i) nonzero += std::abs(lambda(i)) > 0.0;
  if (nonzero < 2) return std::nullopt;
  lambda(pick) = 0.0;
  HVector out = x;
  out.block(k) = eig.eigenvectors() * lambda.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  return out;
}

}  // namespace

ShrinkResult shrink_witness(const LoadedInstance& li, const std::string& criterion, const Witness& w,
                            const SamplingOptions& options) {
  ShrinkResult out;
  out.witness = w;
  out.original_margin = evaluate_criterion(li, criterion, w, options);
  out.witness.margin = out.original_margin;
  if (!(out.original_margin < -options.tol)) {
    out.inconclusive = true;
    return out;
  }
  auto violates = [&](const Witness& cand, double& m) {
    m = evaluate_criterion(li, criterion, cand, options);
    return m < -options.tol;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    const Witness& cur = out.witness;
    std::vector<Witness> candidates;
    // Zero block k of every vector (each vector may live on H or on H × H).
    const int base_blocks = li.file.space().num_blocks();
    for (int k = 0; k < base_blocks; ++k) {
      Witness cand = cur;
      bool changed = false;
      for (auto& [name, v] : cand.vectors) {
        const int copies = v.space().num_blocks() / base_blocks;
        for (int c = 0; c < copies; ++c) {
          auto blk = v.block(k + c * base_blocks);
          if (blk.cwiseAbs().maxCoeff() > 0.0) {
            blk.setZero();
            changed = true;
          }
        }
      }
      if (changed) candidates.push_back(std::move(cand));
    }
    for (std::size_t i = 0; i < cur.vectors.size(); ++i) {
      const HVector& v = cur.vectors[i].second;
      if (!is_real(v, options.tol)) continue;
      for (int k = 0; k < v.space().num_blocks(); ++k)
        if (auto dropped = drop_eigencomponent(v, k)) {
          Witness cand = cur;
          cand.vectors[i].second = *dropped;
          candidates.push_back(std::move(cand));
        }
    }
    for (auto& cand : candidates) {
      double m = 0.0;
      if (support_size(cand) < support_size(cur) || changed_any(cand, cur)) {
        if (violates(cand, m)) {
          cand.margin = m;
          out.witness = std::move(cand);
          out.shrunk = true;
          ++out.steps;
          progress = true;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace domlab
