#include "domlab/instances.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "domlab/cone.hpp"
#include "domlab/errors.hpp"
#include "domlab/random.hpp"

namespace domlab {

using nlohmann::json;

std::string_view to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::derivation_example: return "derivation_example";
    case InstanceKind::perturbed_pair: return "perturbed_pair";
    case InstanceKind::commutative_random: return "commutative_random";
    case InstanceKind::adversarial: return "adversarial";
    case InstanceKind::random_pair: return "random_pair";
    case InstanceKind::magnetic: return "magnetic";
  }
  return "?";
}

InstanceKind instance_kind_from_string(std::string_view s) {
  using K = InstanceKind;
  for (K k : {K::derivation_example, K::perturbed_pair, K::commutative_random, K::adversarial, K::random_pair,
              K::magnetic})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown instance kind '" + std::string(s) + "'");
}

namespace {

double value_or(const GenParams& p, const std::string& key, double fallback) {
  auto it = p.values.find(key);
  return it == p.values.end() ? fallback : it->second;
}

double hermitian_min_eigen(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double hermitian_max_abs_eigen(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

/// Per block: a random Hermitian matrix of unit operator norm, or diag(1, −1, ...).
HVector pick_b(const SpaceDescriptor& space, bool dephasing, Rng& rng) {
  std::vector<CMatrix> blocks;
  for (int n : space.blocks()) {
    CMatrix b(n, n);
    if (dephasing) {
      b.setZero();
      for (int i = 0; i < n; ++i) b(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
    } else {
      b = random_hermitian(n, rng);
      const double s = hermitian_max_abs_eigen(b);
      if (s > 0.0) b /= s;
    }
    blocks.push_back(b);
  }
  return HVector::from_blocks(space, blocks);
}

/// a = c·b + d·1 blockwise; d = max(0, −λ_min(c·b)) + offset unless fixed.
HVector affine_in_b(const HVector& b, double c, std::optional<double> d_fixed, double offset) {
  const auto& space = b.space();
  double lowest = 0.0;
  for (int k = 0; k < space.num_blocks(); ++k) lowest = std::min(lowest, hermitian_min_eigen(c * CMatrix(b.block(k))));
  const double d = d_fixed ? *d_fixed : -lowest + offset;
  HVector a = Complex(c) * b + Complex(d) * HVector::identity(space);
  for (int k = 0; k < space.num_blocks(); ++k)
    if (hermitian_min_eigen(CMatrix(a.block(k))) < -1e-12)
      throw std::invalid_argument("sandwich element a = c b + d 1 is not positive semidefinite");
  return a;
}

Eigen::MatrixXd random_weights(int d, double lo, double hi, Rng& rng) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) w(j, k) = w(k, j) = uniform(rng, lo, hi);
  return w;
}

Eigen::VectorXd random_potential(int d, double lo, double hi, Rng& rng) {
  Eigen::VectorXd v(d);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

void require_commutative(const SpaceDescriptor& space, const char* kind) {
  if (!space.is_commutative())
    throw std::invalid_argument(std::string(kind) + " instances need all blocks of size 1");
}

CMatrix random_real_psd(const SpaceDescriptor& space, Rng& rng) {
  const auto d = space.dim();
  Eigen::MatrixXd r(d, d);
  for (auto& x : r.reshaped()) x = standard_normal(rng);
  const CMatrix e = hermitian_basis(space);
  const Eigen::MatrixXd g = r * r.transpose() / static_cast<double>(d);
  CMatrix m = e * g.cast<Complex>() * e.adjoint();
  return 0.5 * (m + m.adjoint());
}

CMatrix magnetic_laplacian(const Eigen::MatrixXd& w, const Eigen::VectorXd& potential, Rng& rng) {
  const auto d = w.rows();
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      const Complex phase = std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi));
      m(j, k) = -w(j, k) * phase;
      m(k, j) = std::conj(m(j, k));
    }
    m(j, j) = w.row(j).sum() + potential(j);
  }
  return m;
}

CMatrix left_multiplication(const HVector& h) {
  return operator_matrix(h.space(), [&](const HVector& x) {
    HVector out(x.space());
    for (int k = 0; k < x.space().num_blocks(); ++k) out.block(k) = h.block(k) * x.block(k);
    return out;
  });
}

struct Pair {
  CMatrix a;
  CMatrix b;
};

/// B = D*D + M_a with a = c b + d 1 strictly positive, used where a positive S is needed.
CMatrix certified_positive(const SpaceDescriptor& space, Rng& rng, json& params, const char* prefix) {
  const HVector b = pick_b(space, false, rng);
  const double c = uniform(rng, -1.0, 1.0);
  const HVector a = affine_in_b(b, c, std::nullopt, uniform(rng, 0.3, 1.0));
  params[std::string(prefix) + "_c"] = c;
  return derivation_generator(b) + sandwich_generator(a);
}

}  // namespace

InstanceFile gen_instance(InstanceKind kind, const GenParams& params) {
  if (params.blocks.empty()) throw std::invalid_argument("at least one block is required");
  for (int n : params.blocks)
    if (n < 1) throw std::invalid_argument("block sizes must be positive");
  const SpaceDescriptor space(params.blocks);
  Rng rng = derive_rng(params.seed, static_cast<std::uint64_t>(kind) + 0x51);
  const int d = static_cast<int>(space.dim());

  InstanceFile f;
  f.kind = std::string(to_string(kind));
  f.blocks = params.blocks;
  f.seed = params.seed;
  json& meta = f.parameters;
  meta = json::object();
  for (const auto& [k, v] : params.values) meta[k] = v;

  switch (kind) {
    case InstanceKind::derivation_example: {
      const bool dephasing = params.variant == "dephasing";
      if (!params.variant.empty() && !dephasing) throw std::invalid_argument("unknown derivation_example variant");
      const HVector b = pick_b(space, dephasing, rng);
      const double c = value_or(params, "c", uniform(rng, -1.0, 1.0));
      if (std::abs(c) > std::sqrt(2.0)) throw std::invalid_argument("|c| must not exceed sqrt(2)");
      std::optional<double> d_fixed;
      if (params.values.count("d")) d_fixed = params.values.at("d");
      const HVector a = affine_in_b(b, c, d_fixed, uniform(rng, 0.1, 1.0));
      const CMatrix bm = derivation_generator(b);
      f.b = bm;
      f.a = bm + sandwich_generator(a);
      meta["variant"] = dephasing ? "dephasing" : "random";
      meta["c"] = c;
      meta["b"] = vector_to_json(b);
      meta["a"] = vector_to_json(a);
      break;
    }
    case InstanceKind::perturbed_pair: {
      const double rho = params.eps.value_or(0.5);
      if (!(rho > 0.0 && rho <= 0.9)) throw std::invalid_argument("eps must lie in (0, 0.9]");
      CMatrix bm, w;
      if (space.is_commutative()) {
        bm = laplacian_generator(random_weights(d, 0.2, 1.0, rng), random_potential(d, 0.3, 1.0, rng));
        Eigen::MatrixXd wr(d, d);
        for (int j = 0; j < d; ++j)
          for (int k = j; k < d; ++k) wr(j, k) = wr(k, j) = uniform(rng, 0.0, 1.0);
        w = wr.cast<Complex>();
        meta["construction"] = "laplacian_minus_entrywise_positive";
      } else {
        const HVector b = pick_b(space, false, rng);
        const double cb = uniform(rng, -1.0, 1.0), cw = uniform(rng, -1.0, 1.0);
        const HVector ab = affine_in_b(b, cb, std::nullopt, uniform(rng, 0.3, 1.0));
        const HVector aw = affine_in_b(b, cw, std::nullopt, uniform(rng, 0.0, 1.0));
        bm = derivation_generator(b) + sandwich_generator(ab);
        w = sandwich_generator(aw);
        meta["construction"] = "derivation_plus_sandwich_minus_sandwich";
        meta["b"] = vector_to_json(b);
        meta["a_B"] = vector_to_json(ab);
        meta["a_W"] = vector_to_json(aw);
      }
      const double lam = hermitian_min_eigen(bm);
      const double wn = hermitian_max_abs_eigen(w);
      if (!(lam > 0.0) || !(wn > 0.0)) throw std::invalid_argument("degenerate perturbation");
      const double eps = rho * lam / wn;
      f.b = bm;
      f.a = bm - eps * w;
      meta["eps_fraction"] = rho;
      meta["eps"] = eps;
      break;
    }
    case InstanceKind::commutative_random: {
      require_commutative(space, "commutative_random");
      std::string variant = params.variant;
      if (variant.empty() || variant == "mixed") {
        static const char* kVariants[] = {"potential", "dominated", "independent"};
        variant = kVariants[std::uniform_int_distribution<int>(0, 2)(rng)];
      }
      if (variant == "potential") {
        const Eigen::MatrixXd w = random_weights(d, 0.2, 1.0, rng);
        const bool zero = value_or(params, "zero_potential", 0.0) != 0.0;
        const Eigen::VectorXd va = zero ? Eigen::VectorXd::Zero(d) : random_potential(d, 0.0, 1.0, rng);
        const Eigen::VectorXd vb = zero ? Eigen::VectorXd::Zero(d) : random_potential(d, 0.0, 1.0, rng);
        f.a = laplacian_generator(w, va);
        f.b = laplacian_generator(w, vb);
      } else if (variant == "dominated") {
        const Eigen::MatrixXd w = random_weights(d, 0.2, 1.0, rng);
        const CMatrix bm = laplacian_generator(w, random_potential(d, 0.1, 1.0, rng));
        CMatrix am = bm;
        for (int j = 0; j < d; ++j) {
          for (int k = j + 1; k < d; ++k) {
            const double s = bernoulli(rng, 0.5) ? 1.0 : -1.0;
            am(j, k) = am(k, j) = s * uniform(rng, 0.0, 0.9) * bm(j, k);
          }
          am(j, j) += uniform(rng, 0.05, 0.5);
        }
        f.a = am;
        f.b = bm;
      } else if (variant == "independent") {
        f.a = laplacian_generator(random_weights(d, 0.0, 1.0, rng), random_potential(d, 0.0, 1.0, rng));
        f.b = laplacian_generator(random_weights(d, 0.0, 1.0, rng), random_potential(d, 0.0, 1.0, rng));
      } else {
        throw std::invalid_argument("unknown commutative_random variant '" + variant + "'");
      }
      meta["variant"] = variant;
      break;
    }
    case InstanceKind::adversarial: {
      std::string variant = params.variant;
      if (variant.empty()) variant = bernoulli(rng, 0.5) ? "non_real" : "non_positive";
      if (variant == "non_real") {
        if (space.is_commutative()) {
          f.a = magnetic_laplacian(random_weights(d, 0.2, 1.0, rng), random_potential(d, 0.1, 1.0, rng), rng);
          f.b = laplacian_generator(random_weights(d, 0.2, 1.0, rng), random_potential(d, 0.1, 1.0, rng));
        } else {
          f.a = left_multiplication(random_positive(space, rng, 0.0));
          f.b = certified_positive(space, rng, meta, "B");
        }
      } else if (variant == "non_positive") {
        f.b = random_real_psd(space, rng);
        f.a = *f.b;
      } else {
        throw std::invalid_argument("unknown adversarial variant '" + variant + "'");
      }
      meta["variant"] = variant;
      break;
    }
    case InstanceKind::random_pair: {
      if (space.is_commutative())
        f.b = laplacian_generator(random_weights(d, 0.2, 1.0, rng), random_potential(d, 0.1, 1.0, rng));
      else
        f.b = certified_positive(space, rng, meta, "B");
      f.a = random_real_psd(space, rng);
      break;
    }
    case InstanceKind::magnetic: {
      require_commutative(space, "magnetic");
      const Eigen::MatrixXd w = random_weights(d, 0.2, 1.0, rng);
      const Eigen::VectorXd v = random_potential(d, 0.1, 1.0, rng);
      f.a = magnetic_laplacian(w, v, rng);
      f.b = laplacian_generator(w, v);
      break;
    }
  }
  return f;
}

// ------------------------------------------------------------------------ JSON

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Complex complex_from_json(const json& z) {
  if (!z.is_array() || z.size() != 2) throw std::invalid_argument("complex numbers are [re, im] pairs");
  return {z[0].get<double>(), z[1].get<double>()};
}

}  // namespace

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ShapeError("matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json vector_to_json(const HVector& v) {
  json out = json::array();
  for (const auto& z : v.coeffs()) out.push_back({z.real(), z.imag()});
  return out;
}

HVector vector_from_json(const SpaceDescriptor& space, const json& j) {
  if (!j.is_array() || static_cast<std::ptrdiff_t>(j.size()) != space.dim())
    throw ShapeError("vector length does not match the space dimension");
  HVector v(space);
  for (std::ptrdiff_t i = 0; i < space.dim(); ++i) v.coeffs()(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
  return v;
}

json to_json(const InstanceFile& f) {
  json j;
  j["format"] = "domlab-instance";
  j["version"] = 1;
  j["kind"] = f.kind;
  j["blocks"] = f.blocks;
  j["seed"] = f.seed;
  j["parameters"] = f.parameters;
  j["tool_version"] = f.tool_version;
  if (f.a) j["A"] = matrix_to_json(*f.a);
  if (f.b) j["B"] = matrix_to_json(*f.b);
  if (!f.subspaces.empty()) {
    json subs = json::object();
    for (const auto& [name, basis] : f.subspaces) {
      json list = json::array();
      for (const auto& v : basis) list.push_back(vector_to_json(v));
      subs[name] = std::move(list);
    }
    j["subspaces"] = std::move(subs);
  }
  return j;
}

InstanceFile instance_from_json(const json& j) {
  if (j.value("format", "") != "domlab-instance") throw std::invalid_argument("not a domlab instance document");
  InstanceFile f;
  f.kind = j.value("kind", "");
  f.blocks = j.at("blocks").get<std::vector<int>>();
  if (f.blocks.empty()) throw std::invalid_argument("instance has no blocks");
  for (int n : f.blocks)
    if (n < 1) throw std::invalid_argument("block sizes must be positive");
  f.seed = j.value("seed", std::uint64_t{0});
  f.parameters = j.value("parameters", json::object());
  f.tool_version = j.value("tool_version", std::string(kToolVersion));
  const SpaceDescriptor space(f.blocks);
  auto read = [&](const char* key) -> std::optional<CMatrix> {
    if (!j.contains(key)) return std::nullopt;
    CMatrix m = matrix_from_json(j.at(key));
    if (m.rows() != space.dim()) throw ShapeError(std::string("matrix ") + key + " does not match the blocks");
    return m;
  };
  f.a = read("A");
  f.b = read("B");
  if (j.contains("subspaces"))
    for (const auto& [name, list] : j.at("subspaces").items()) {
      std::vector<HVector> basis;
      for (const auto& v : list) basis.push_back(vector_from_json(space, v));
      f.subspaces[name] = std::move(basis);
    }
  return f;
}

void save_instance(const InstanceFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << to_json(f).dump(1) << '\n';
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return instance_from_json(json::parse(in));
}

DominationInstance to_domination_instance(const InstanceFile& f) {
  if (!f.a) throw std::invalid_argument("instance has no form A");
  const SpaceDescriptor space = f.space();
  FormOperator a(space, *f.a);
  FormOperator b(space, f.b ? *f.b : *f.a);
  std::map<std::string, std::string> meta{{"kind", f.kind}, {"seed", std::to_string(f.seed)}};
  return DominationInstance(std::move(a), std::move(b), std::move(meta));
}

Subspace subspace_of(const InstanceFile& f, const std::string& name) {
  auto it = f.subspaces.find(name);
  if (it == f.subspaces.end()) throw std::invalid_argument("instance has no subspace '" + name + "'");
  return Subspace(f.space(), it->second);
}

}  // namespace domlab
