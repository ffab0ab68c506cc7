#include "ere/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "ere/error.hpp"

namespace ere {

Partition::Partition(int n_sites, int block_a_size) : n_sites_(n_sites), block_a_(block_a_size) {
  if (n_sites_ < 2) throw ConfigError("partition needs at least two sites");
  if (block_a_ < 1 || block_a_ > n_sites_ - 1) {
    throw ConfigError("block A size must lie in [1, N-1] (got " + std::to_string(block_a_) +
                      " for N=" + std::to_string(n_sites_) + ")");
  }
}

Partition Partition::equal(int n_sites) {
  if (n_sites % 2 != 0) {
    throw ConfigError("equal bipartition needs an even number of sites (got " +
                      std::to_string(n_sites) + ")");
  }
  return Partition(n_sites, n_sites / 2);
}

namespace {

std::vector<double> floor_sort_normalize(std::vector<double> p) {
  std::erase_if(p, [](double x) { return x < kSpectrumFloor; });
  std::sort(p.begin(), p.end(), std::greater<>());
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total > 0.0) {
    for (auto& x : p) x /= total;
  }
  return p;
}

}  // namespace

EntanglementSpectrum EntanglementSpectrum::from_probs(std::vector<double> probs) {
  if (probs.empty()) throw InvalidStateError("entanglement spectrum is empty");
  double total = 0.0;
  for (double x : probs) {
    if (!std::isfinite(x) || x < 0.0) {
      throw InvalidStateError("entanglement spectrum entries must be finite and non-negative");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw InvalidStateError("entanglement spectrum must sum to 1 (sum = " + std::to_string(total) + ")");
  }
  return EntanglementSpectrum(floor_sort_normalize(std::move(probs)));
}

EntanglementSpectrum reduced_spectrum(std::span<const double> state, const Partition& part) {
  const std::size_t expected = std::size_t{1} << part.n_sites();
  if (state.size() != expected) {
    throw DimensionError("state length " + std::to_string(state.size()) + " does not match 2^" +
                         std::to_string(part.n_sites()));
  }
  double nrm2 = 0.0;
  for (double x : state) nrm2 += x * x;
  if (std::abs(std::sqrt(nrm2) - 1.0) > 1e-8) {
    throw InvalidStateError("state is not normalized (norm = " + std::to_string(std::sqrt(nrm2)) + ")");
  }
  const auto rows = Eigen::Index{1} << part.block_a_size();
  const auto cols = Eigen::Index{1} << part.block_b_size();
  const Eigen::Map<const Eigen::MatrixXd> m(state.data(), rows, cols);

  Eigen::VectorXd sv;
  if (rows <= cols) {
    sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m.transpose()).singularValues();
  } else {
    sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  }
  std::vector<double> probs(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) probs[static_cast<std::size_t>(i)] = sv(i) * sv(i);
  return EntanglementSpectrum(floor_sort_normalize(std::move(probs)));
}

double renyi_entropy(const EntanglementSpectrum& spec, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("Renyi order alpha must be a finite positive number (got " +
                      std::to_string(alpha) + ")");
  }
  const auto p = spec.probs();
  if (std::abs(alpha - 1.0) <= 1e-9) {
    double h = 0.0;
    for (double x : p) {
      if (x > 0.0) h -= x * std::log(x);
    }
    return h / std::numbers::ln2;
  }
  // sum p^alpha - 1 = sum p (p^(alpha-1) - 1), evaluated without cancellation near alpha = 1.
  double excess = 0.0;
  for (double x : p) excess += x * std::expm1((alpha - 1.0) * std::log(x));
  return std::log1p(excess) / ((1.0 - alpha) * std::numbers::ln2);
}

RenyiCurve renyi_curve(const EntanglementSpectrum& spec, std::span<const double> alphas) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) throw DomainError("Renyi orders must be positive");
    if (i > 0 && !(alphas[i] > alphas[i - 1])) {
      throw DomainError("Renyi orders must be strictly increasing");
    }
  }
  RenyiCurve c;
  c.alphas.assign(alphas.begin(), alphas.end());
  c.values.reserve(alphas.size());
  for (double a : alphas) c.values.push_back(renyi_entropy(spec, a));
  return c;
}

std::vector<double> alpha_grid(double lo, double hi, double step) {
  if (!(lo > 0.0) || !(hi > lo) || !(step > 0.0) || !std::isfinite(hi)) {
    throw ConfigError("alpha window must satisfy 0 < min < max with a positive step");
  }
  std::vector<double> g{lo};
  const double eps = 1e-9 * step;
  const auto k0 = static_cast<long long>(std::ceil(lo / step));
  const auto k1 = static_cast<long long>(std::floor(hi / step));
  for (long long k = k0; k <= k1; ++k) {
    const double a = static_cast<double>(k) * step;
    if (a > lo + eps && a < hi - eps) g.push_back(a);
  }
  g.push_back(hi);
  return g;
}

bool majorizes(const EntanglementSpectrum& psi, const EntanglementSpectrum& phi) {
  const auto a = psi.probs();
  const auto b = phi.probs();
  const std::size_t n = std::max(a.size(), b.size());
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += i < a.size() ? a[i] : 0.0;
    sb += i < b.size() ? b[i] : 0.0;
    if (sa > sb + 1e-12) return false;
  }
  return true;
}

std::string_view dominance_name(Dominance d) {
  switch (d) {
    case Dominance::FirstGeqEverywhere: return "first_geq_everywhere";
    case Dominance::SecondGeqEverywhere: return "second_geq_everywhere";
    case Dominance::Crossing: return "crossing";
    case Dominance::Identical: return "identical";
  }
  return "unknown";
}

namespace {

Dominance classify_differences(std::span<const double> a, std::span<const double> b) {
  bool pos = false;
  bool neg = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d > kEntropyEqualTol) pos = true;
    if (d < -kEntropyEqualTol) neg = true;
  }
  if (pos && neg) return Dominance::Crossing;
  if (pos) return Dominance::FirstGeqEverywhere;
  if (neg) return Dominance::SecondGeqEverywhere;
  return Dominance::Identical;
}

}  // namespace

Dominance renyi_dominance(const EntanglementSpectrum& first, const EntanglementSpectrum& second,
                          std::span<const double> alphas) {
  const auto c1 = renyi_curve(first, alphas);
  const auto c2 = renyi_curve(second, alphas);
  return classify_differences(c1.values, c2.values);
}

Dominance renyi_dominance(const RenyiCurve& first, const RenyiCurve& second) {
  if (first.alphas != second.alphas || first.values.size() != first.alphas.size() ||
      second.values.size() != second.alphas.size()) {
    throw UsageError("renyi_dominance: curves are not on the same alpha grid");
  }
  return classify_differences(first.values, second.values);
}

}  // namespace ere
