#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "domlab/campaign.hpp"
#include "domlab/instances.hpp"
#include "domlab/parallel.hpp"

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<int> parse_blocks(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) out.push_back(std::stoi(p));
  if (out.empty()) throw std::invalid_argument("--blocks needs at least one block size");
  return out;
}

/// "log:a:b:n", "lin:a:b:n" or a comma-separated list of times.
std::vector<double> parse_t_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 4 && (parts[0] == "log" || parts[0] == "lin")) {
    const double a = std::stod(parts[1]), b = std::stod(parts[2]);
    const int n = std::stoi(parts[3]);
    return parts[0] == "log" ? domlab::log_grid(a, b, n) : domlab::linear_grid(a, b, n, true);
  }
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(std::stod(p));
  if (out.empty()) throw std::invalid_argument("empty --t-grid");
  return out;
}

struct SamplingFlags {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tol = domlab::kDefaultTol;
  std::string t_grid;
  int theta_grid = 64;
  std::size_t threads = 0;

  void attach(CLI::App* app) {
    app->add_option("--samples", samples, "Sample budget per criterion");
    app->add_option("--seed", seed, "Sampling seed");
    app->add_option("--tol", tol, "Relative tolerance");
    app->add_option("--t-grid", t_grid, "Time grid: log:a:b:n, lin:a:b:n or a comma list");
    app->add_option("--theta-grid", theta_grid, "Number of equispaced angles in [0, 2pi)");
    app->add_option("--threads", threads, "Worker threads (default: DOMLAB_THREADS or hardware)");
  }

  domlab::SamplingOptions options() const {
    domlab::SamplingOptions o;
    o.budget = samples;
    o.seed = seed;
    o.tol = tol;
    if (!t_grid.empty()) o.t_grid = parse_t_grid(t_grid);
    if (theta_grid < 1) throw std::invalid_argument("--theta-grid must be positive");
    o.theta_grid = domlab::default_theta_grid(theta_grid);
    o.threads = threads;
    return o;
  }
};

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return json::parse(in);
}

int code_for(const domlab::Verdict& v) {
  switch (v.outcome) {
    case domlab::Outcome::pass: return 0;
    case domlab::Outcome::violation: return 1;
    case domlab::Outcome::inconclusive: return 2;
    case domlab::Outcome::precondition_failed: return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for domination of form-generated semigroups"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  std::string kind, blocks_arg, variant, out_path;
  std::uint64_t gen_seed = 0;
  double eps = 0.0;
  std::vector<std::string> values;
  gen->add_option("--kind", kind, "Instance kind")->required();
  gen->add_option("--blocks", blocks_arg, "Block sizes, e.g. 2,1,1")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  auto* eps_opt = gen->add_option("--eps", eps, "Perturbation as a fraction in (0, 0.9] of the accretive bound");
  gen->add_option("--variant", variant, "Sub-construction of the kind");
  gen->add_option("--value", values, "Numeric override key=value (repeatable)");
  gen->add_option("-o,--output", out_path, "Output file")->required();

  // check
  auto* check = app.add_subcommand("check", "Check one criterion on an instance");
  std::string check_file, criterion, witness_out;
  bool check_json = false;
  SamplingFlags check_flags;
  check->add_option("file", check_file, "Instance file")->required();
  check->add_option("--criterion", criterion, "Criterion name")->required();
  check->add_option("--witness-out", witness_out, "Write the verdict (with witness) as JSON");
  check->add_flag("--json", check_json, "Print the verdict as JSON");
  check_flags.attach(check);

  // equiv
  auto* equiv = app.add_subcommand("equiv", "Run criteria and cross-tabulate their agreement");
  std::vector<std::string> equiv_files, equiv_criteria;
  std::string report_path, timing_path;
  bool all = false;
  SamplingFlags equiv_flags;
  equiv->add_option("files", equiv_files, "Instance files")->required();
  equiv->add_flag("--all", all, "Run every applicable criterion (default when no --criterion is given)");
  equiv->add_option("--criterion", equiv_criteria, "Criterion to run (repeatable)");
  equiv->add_option("--report", report_path, "Report file (deterministic payload)");
  equiv->add_option("--timing", timing_path, "Wall-clock figures file");
  equiv_flags.attach(equiv);

  // shrink
  auto* shrink = app.add_subcommand("shrink", "Shrink a violating witness");
  std::string shrink_file, shrink_criterion, witness_path, shrink_out;
  SamplingFlags shrink_flags;
  shrink->add_option("file", shrink_file, "Instance file")->required();
  shrink->add_option("--witness", witness_path, "Witness or verdict JSON")->required();
  shrink->add_option("--criterion", shrink_criterion, "Criterion (default: the one recorded with the witness)");
  shrink->add_option("-o,--output", shrink_out, "Write the shrunk witness");
  shrink_flags.attach(shrink);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      domlab::GenParams p;
      p.blocks = parse_blocks(blocks_arg);
      p.seed = gen_seed;
      if (*eps_opt) p.eps = eps;
      p.variant = variant;
      for (const auto& kv : values) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--value expects key=value");
        p.values[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      const auto file = domlab::gen_instance(domlab::instance_kind_from_string(kind), p);
      domlab::save_instance(file, out_path);
      return 0;
    }

    if (*check) {
      const auto inst = domlab::LoadedInstance::from_file(check_file, domlab::load_instance(check_file));
      const domlab::Verdict v = domlab::run_criterion(inst, criterion, check_flags.options());
      const json j = domlab::verdict_to_json(v);
      if (check_json) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << v.criterion << ": " << domlab::to_string(v.outcome) << " (worst margin " << v.worst_margin
                  << ", " << v.samples << " samples, " << v.inconclusive_samples << " inconclusive)\n";
        for (const auto& n : v.notes) std::cout << "  note: " << n << '\n';
      }
      if (!witness_out.empty()) write_json(j, witness_out);
      return code_for(v);
    }

    if (*equiv) {
      domlab::CampaignConfig cfg;
      cfg.instance_paths = equiv_files;
      if (!all) cfg.criteria = equiv_criteria;
      cfg.options = equiv_flags.options();
      const auto report = domlab::run_campaign(cfg);
      if (!report_path.empty()) write_json(report.payload, report_path);
      else std::cout << report.payload.dump(2) << '\n';
      if (!timing_path.empty()) write_json(report.timing, timing_path);
      for (const auto& [group, row] : report.payload["equivalence_tables"].items())
        std::cerr << group << ": " << row["unanimous"] << "/" << row["instances"] << " unanimous\n";
      std::cerr << "vii probe: " << report.payload["vii_probe"]["finding"].get<std::string>() << '\n';
      return report.exit_code;
    }

    if (*shrink) {
      const auto inst = domlab::LoadedInstance::from_file(shrink_file, domlab::load_instance(shrink_file));
      const json wj = read_json(witness_path);
      std::string name = shrink_criterion;
      if (name.empty() && wj.contains("criterion")) name = wj["criterion"].get<std::string>();
      if (name.empty()) throw std::invalid_argument("--criterion is required for a bare witness");
      if (wj.contains("witness") && wj["witness"].is_null()) throw std::invalid_argument("verdict has no witness");
      const auto w = domlab::witness_from_json(inst.file.space(), wj);
      const auto r = domlab::shrink_witness(inst, name, w, shrink_flags.options());
      json out = {{"criterion", name},
                  {"original_margin", r.original_margin},
                  {"shrunk", r.shrunk},
                  {"inconclusive", r.inconclusive},
                  {"steps", r.steps},
                  {"witness", domlab::witness_to_json(r.witness)}};
      if (!shrink_out.empty()) write_json(out, shrink_out);
      else std::cout << out.dump(2) << '\n';
      return r.inconclusive ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 3;
}
