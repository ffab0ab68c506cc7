#include "ere/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "ere/error.hpp"
#include "ere/kernels.hpp"

namespace ere {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ConfigError("model record: value for '" + key + "' is not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::TransverseIsing: return "ising";
    case Family::XY: return "xy";
    case Family::XXZ: return "xxz";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "ising" || name == "transverse_ising" || name == "TransverseIsing") {
    return Family::TransverseIsing;
  }
  if (name == "xy" || name == "XY") return Family::XY;
  if (name == "xxz" || name == "XXZ") return Family::XXZ;
  throw ConfigError("unknown model family '" + std::string(name) + "' (expected ising, xy or xxz)");
}

std::vector<std::string> ModelSpec::parameter_keys(Family family) {
  switch (family) {
    case Family::TransverseIsing: return {"g"};
    case Family::XY: return {"gamma", "h"};
    case Family::XXZ: return {"delta"};
  }
  return {};
}

ModelSpec::ModelSpec(Family family, std::map<std::string, double> params, int n_sites)
    : family_(family), params_(std::move(params)), n_sites_(n_sites) {
  if (n_sites_ < kMinSites) {
    throw ConfigError("n_sites must be >= " + std::to_string(kMinSites) + " (got " +
                      std::to_string(n_sites_) + ")");
  }
  if (n_sites_ > kMaxSites) {
    throw ConfigError("n_sites must be <= " + std::to_string(kMaxSites) + " (got " +
                      std::to_string(n_sites_) + ")");
  }
  const auto keys = parameter_keys(family_);
  for (const auto& key : keys) {
    auto it = params_.find(key);
    if (it == params_.end()) {
      throw ConfigError("model '" + std::string(family_name(family_)) + "' requires parameter '" +
                        key + "'");
    }
    if (!std::isfinite(it->second)) throw ConfigError("parameter '" + key + "' is not finite");
  }
  for (const auto& [key, value] : params_) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("model '" + std::string(family_name(family_)) +
                        "' does not take parameter '" + key + "'");
    }
  }
}

ModelSpec ModelSpec::transverse_ising(double g, int n_sites) {
  return ModelSpec(Family::TransverseIsing, {{"g", g}}, n_sites);
}

ModelSpec ModelSpec::xy(double gamma, double h, int n_sites) {
  return ModelSpec(Family::XY, {{"gamma", gamma}, {"h", h}}, n_sites);
}

ModelSpec ModelSpec::xxz(double delta, int n_sites) {
  return ModelSpec(Family::XXZ, {{"delta", delta}}, n_sites);
}

double ModelSpec::param(std::string_view key) const {
  auto it = params_.find(std::string(key));
  if (it == params_.end()) {
    throw ConfigError("model '" + std::string(family_name(family_)) + "' has no parameter '" +
                      std::string(key) + "'");
  }
  return it->second;
}

ModelSpec ModelSpec::with_param(std::string_view key, double value) const {
  auto p = params_;
  if (!p.contains(std::string(key))) {
    throw ConfigError("model '" + std::string(family_name(family_)) + "' has no parameter '" +
                      std::string(key) + "'");
  }
  p[std::string(key)] = value;
  return ModelSpec(family_, std::move(p), n_sites_);
}

ModelSpec ModelSpec::with_sites(int n_sites) const { return ModelSpec(family_, params_, n_sites); }

std::map<std::string, std::string> ModelSpec::to_record() const {
  std::map<std::string, std::string> rec;
  rec["family"] = std::string(family_name(family_));
  rec["n_sites"] = std::to_string(n_sites_);
  rec["boundary"] = "periodic";
  for (const auto& [k, v] : params_) rec[k] = format_double(v);
  return rec;
}

ModelSpec ModelSpec::from_record(const std::map<std::string, std::string>& record) {
  auto fam_it = record.find("family");
  if (fam_it == record.end()) throw ConfigError("model record lacks 'family'");
  const Family family = parse_family(fam_it->second);

  auto n_it = record.find("n_sites");
  if (n_it == record.end()) throw ConfigError("model record lacks 'n_sites'");
  int n = 0;
  const auto& ns = n_it->second;
  auto [ptr, ec] = std::from_chars(ns.data(), ns.data() + ns.size(), n);
  if (ec != std::errc{} || ptr != ns.data() + ns.size()) {
    throw ConfigError("model record: n_sites is not an integer: '" + ns + "'");
  }

  std::map<std::string, double> params;
  for (const auto& [k, v] : record) {
    if (k == "family" || k == "n_sites") continue;
    if (k == "boundary") {
      if (v != "periodic") throw ConfigError("only periodic boundary is supported (got '" + v + "')");
      continue;
    }
    params[k] = parse_double(k, v);
  }
  return ModelSpec(family, std::move(params), n);
}

BondCoefficients bond_coefficients(const ModelSpec& spec) {
  BondCoefficients c;
  switch (spec.family()) {
    case Family::TransverseIsing:
      c.field = -spec.param("g");
      c.coef_aligned = -1.0;
      c.coef_anti = -1.0;
      break;
    case Family::XY: {
      // sy sy on a bond: -1 for equal bits, +1 for opposite bits.
      const double gamma = spec.param("gamma");
      c.field = -spec.param("h");
      c.coef_aligned = -(1.0 + gamma) + (1.0 - gamma);
      c.coef_anti = -(1.0 + gamma) - (1.0 - gamma);
      break;
    }
    case Family::XXZ:
      c.zz = spec.param("delta");
      c.coef_aligned = 0.0;
      c.coef_anti = 2.0;
      break;
  }
  return c;
}

namespace {

double diagonal_element(const BondCoefficients& c, int n, std::uint64_t b) {
  double field_sum = 0.0;
  double zz_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double si = ((b >> i) & 1U) ? -1.0 : 1.0;
    const double sj = ((b >> j) & 1U) ? -1.0 : 1.0;
    field_sum += si;
    zz_sum += si * sj;
  }
  return c.field * field_sum + c.zz * zz_sum;
}

}  // namespace

std::vector<MatrixEntry> hamiltonian_element_action(const ModelSpec& spec, BasisIndex b) {
  const int n = spec.n_sites();
  if (b.value >= spec.dimension()) {
    throw DimensionError("basis index " + std::to_string(b.value) + " out of range for N=" +
                         std::to_string(n));
  }
  const BondCoefficients c = bond_coefficients(spec);
  std::vector<MatrixEntry> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  const double d = diagonal_element(c, n, b.value);
  if (d != 0.0) out.push_back({b, d});
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const bool differ = (((b.value >> i) ^ (b.value >> j)) & 1U) != 0;
    const double amp = differ ? c.coef_anti : c.coef_aligned;
    if (amp == 0.0) continue;
    const std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    out.push_back({BasisIndex{b.value ^ mask}, amp});
  }
  return out;
}

HamiltonianOperator::HamiltonianOperator(const ModelSpec& spec)
    : spec_(spec), coef_(bond_coefficients(spec)) {
  const int n = spec.n_sites();
  const std::uint64_t dim = spec.dimension();
  diag_.resize(dim);
  for (std::uint64_t b = 0; b < dim; ++b) diag_[b] = diagonal_element(coef_, n, b);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    masks_.push_back((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
    site_i_.push_back(i);
    site_j_.push_back(j);
  }
}

void HamiltonianOperator::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != diag_.size() || out.size() != diag_.size()) {
    throw DimensionError("apply_hamiltonian: vector length " + std::to_string(in.size()) +
                         " does not match dimension " + std::to_string(diag_.size()));
  }
  simd::BondKernelArgs args;
  args.diag = diag_.data();
  args.masks = masks_.data();
  args.site_i = site_i_.data();
  args.site_j = site_j_.data();
  args.n_bonds = masks_.size();
  args.coef_aligned = coef_.coef_aligned;
  args.coef_anti = coef_.coef_anti;
  simd::kernels().bond_apply(args, in.data(), out.data(), diag_.size());
}

std::vector<double> apply_hamiltonian(const ModelSpec& spec, std::span<const double> v) {
  if (v.size() != spec.dimension()) {
    throw DimensionError("apply_hamiltonian: vector length " + std::to_string(v.size()) +
                         " does not match 2^N = " + std::to_string(spec.dimension()));
  }
  HamiltonianOperator op(spec);
  std::vector<double> out(v.size());
  op.apply(v, out);
  return out;
}

Eigen::MatrixXd build_dense_hamiltonian(const ModelSpec& spec, std::uint64_t dense_cap) {
  const std::uint64_t dim = spec.dimension();
  if (dim > dense_cap) {
    throw CapacityError("dense Hamiltonian of dimension " + std::to_string(dim) +
                        " exceeds dense cap " + std::to_string(dense_cap));
  }
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (std::uint64_t b = 0; b < dim; ++b) {
    for (const auto& e : hamiltonian_element_action(spec, BasisIndex{b})) {
      h(static_cast<Eigen::Index>(e.index.value), static_cast<Eigen::Index>(b)) += e.amplitude;
    }
  }
  return h;
}

}  // namespace ere
