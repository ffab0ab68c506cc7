#include "ere/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "ere/error.hpp"
#include "ere/kernels.hpp"

namespace ere {

std::string_view solver_method_name(SolverMethod m) {
  switch (m) {
    case SolverMethod::Auto: return "auto";
    case SolverMethod::Dense: return "dense";
    case SolverMethod::Lanczos: return "lanczos";
  }
  return "unknown";
}

SolverMethod parse_solver_method(std::string_view name) {
  if (name == "auto") return SolverMethod::Auto;
  if (name == "dense") return SolverMethod::Dense;
  if (name == "lanczos") return SolverMethod::Lanczos;
  throw ConfigError("unknown solver '" + std::string(name) + "' (expected auto, dense or lanczos)");
}

namespace {

using Vec = std::vector<double>;

// Levels closer than this (relative) are re-diagonalized jointly with parity.
constexpr double kClusterTol = 1e-6;

double norm2(const Vec& v) { return std::sqrt(simd::dot(v, v)); }

double parity_expectation(const Vec& v) {
  double s = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) s += basis_parity(b) * v[b] * v[b];
  return s;
}

void project_parity(Vec& v, int sector) {
  for (std::size_t b = 0; b < v.size(); ++b) {
    if (basis_parity(b) != sector) v[b] = 0.0;
  }
}

void sign_gauge(Vec& v) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > best_abs) {
      best_abs = std::abs(v[i]);
      best = i;
    }
  }
  if (v[best] < 0.0) simd::scale(-1.0, v);
}

// Orthogonalize v against an orthonormal set, two passes.
void orthogonalize(Vec& v, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) simd::axpy(-simd::dot(v, q), q, v);
  }
}

double rayleigh_and_residual(const HamiltonianOperator& op, const Vec& x, Vec& hx, double& residual) {
  op.apply(x, hx);
  const double theta = simd::dot(x, hx);
  Vec r = hx;
  simd::axpy(-theta, x, r);
  residual = norm2(r);
  return theta;
}

struct RitzResult {
  double energy = 0.0;
  Vec state;
  double residual = 0.0;
};

Vec start_vector(std::uint64_t dim, std::uint64_t seed, int sector, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sector + 2), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vec v(dim);
  for (auto& x : v) x = dist(rng);
  project_parity(v, sector);
  return v;
}

// Restarted Lanczos with full reorthogonalization for the lowest eigenpair in
// the complement of `locked`. Returns false when that complement is empty.
bool lanczos_lowest(const HamiltonianOperator& op, const std::vector<Vec>& locked, Vec start,
                    std::uint64_t available, const SolverOptions& opts, RitzResult& out) {
  const std::uint64_t dim = op.dimension();
  orthogonalize(start, locked);
  double nrm = norm2(start);
  if (nrm < 1e-10 || available == 0) return false;
  simd::scale(1.0 / nrm, start);

  const int m_max =
      static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(opts.krylov_dim), available));
  Vec x = std::move(start);
  Vec w(dim), hx(dim);
  double best = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    std::vector<Vec> basis;
    basis.reserve(static_cast<std::size_t>(m_max));
    std::vector<double> alpha, beta;
    Vec q = x;
    double scale = 0.0;
    for (int j = 0; j < m_max; ++j) {
      basis.push_back(q);
      op.apply(basis.back(), w);
      const double a = simd::dot(w, basis.back());
      alpha.push_back(a);
      scale = std::max(scale, std::abs(a));
      simd::axpy(-a, basis.back(), w);
      if (j > 0) simd::axpy(-beta.back(), basis[basis.size() - 2], w);
      orthogonalize(w, locked);
      orthogonalize(w, basis);
      const double b = norm2(w);
      if (j + 1 == m_max || b <= 1e-13 * std::max(1.0, scale)) break;
      beta.push_back(b);
      simd::scale(1.0 / b, w);
      q = w;
    }

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = Eigen::VectorXd::Zero(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

    std::fill(x.begin(), x.end(), 0.0);
    for (Eigen::Index i = 0; i < m; ++i) simd::axpy(tri.eigenvectors()(i, 0), basis[static_cast<std::size_t>(i)], x);
    orthogonalize(x, locked);
    simd::scale(1.0 / norm2(x), x);

    double residual = 0.0;
    const double theta = rayleigh_and_residual(op, x, hx, residual);
    best = std::min(best, residual);
    if (residual <= opts.tol) {
      out.energy = theta;
      out.state = x;
      out.residual = residual;
      return true;
    }
  }
  throw ConvergenceError("Lanczos did not reach residual " + std::to_string(opts.tol) + " after " +
                             std::to_string(opts.max_restarts) + " restarts (best " +
                             std::to_string(best) + ")",
                         best);
}

std::vector<RitzResult> lanczos_path(const HamiltonianOperator& op, int want, const SolverOptions& opts) {
  const std::uint64_t sector_dim = op.dimension() / 2;
  std::vector<RitzResult> all;
  for (int sector : {1, -1}) {
    std::vector<Vec> locked;
    for (int j = 0; j < want; ++j) {
      const std::uint64_t available = sector_dim - locked.size();
      RitzResult r;
      if (!lanczos_lowest(op, locked, start_vector(op.dimension(), opts.seed, sector, j), available,
                          opts, r)) {
        break;
      }
      project_parity(r.state, sector);
      locked.push_back(r.state);
      all.push_back(std::move(r));
    }
  }
  return all;
}

std::vector<RitzResult> dense_path(const ModelSpec& spec, int want, const SolverOptions& opts) {
  const Eigen::MatrixXd h = build_dense_hamiltonian(spec, opts.dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed", std::numeric_limits<double>::infinity());
  }
  std::vector<RitzResult> out(static_cast<std::size_t>(want));
  for (int i = 0; i < want; ++i) {
    auto& r = out[static_cast<std::size_t>(i)];
    r.energy = es.eigenvalues()(i);
    const auto col = es.eigenvectors().col(i);
    r.state.assign(col.data(), col.data() + col.size());
  }
  return out;
}

// Rotates clusters of nearly degenerate levels into parity eigenstates and
// re-diagonalizes H inside each parity block of the cluster.
void resolve_clusters(const HamiltonianOperator& op, std::vector<RitzResult>& levels) {
  std::size_t start = 0;
  const std::uint64_t dim = op.dimension();
  while (start < levels.size()) {
    std::size_t end = start + 1;
    while (end < levels.size() &&
           levels[end].energy - levels[end - 1].energy <
               kClusterTol * std::max(1.0, std::abs(levels[end - 1].energy))) {
      ++end;
    }
    const auto c = static_cast<Eigen::Index>(end - start);
    if (c > 1) {
      Eigen::MatrixXd p(c, c);
      for (Eigen::Index i = 0; i < c; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) {
          const auto& vi = levels[start + static_cast<std::size_t>(i)].state;
          const auto& vj = levels[start + static_cast<std::size_t>(j)].state;
          double s = 0.0;
          for (std::uint64_t b = 0; b < dim; ++b) s += basis_parity(b) * vi[b] * vj[b];
          p(i, j) = s;
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pe(p);
      std::vector<Vec> rotated(static_cast<std::size_t>(c), Vec(dim, 0.0));
      std::vector<int> sector(static_cast<std::size_t>(c));
      for (Eigen::Index k = 0; k < c; ++k) {
        auto& r = rotated[static_cast<std::size_t>(k)];
        for (Eigen::Index i = 0; i < c; ++i) {
          simd::axpy(pe.eigenvectors()(i, k), levels[start + static_cast<std::size_t>(i)].state, r);
        }
        sector[static_cast<std::size_t>(k)] = pe.eigenvalues()(k) >= 0.0 ? 1 : -1;
        project_parity(r, sector[static_cast<std::size_t>(k)]);
      }
      // Rayleigh-Ritz inside each parity block.
      std::vector<RitzResult> resolved;
      for (int s : {1, -1}) {
        std::vector<Vec> block;
        for (std::size_t k = 0; k < rotated.size(); ++k) {
          if (sector[k] == s) block.push_back(rotated[k]);
        }
        if (block.empty()) continue;
        for (std::size_t k = 0; k < block.size(); ++k) {
          Vec& v = block[k];
          std::vector<Vec> prev(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(k));
          orthogonalize(v, prev);
          simd::scale(1.0 / norm2(v), v);
        }
        const auto bs = static_cast<Eigen::Index>(block.size());
        Eigen::MatrixXd hb(bs, bs);
        std::vector<Vec> hv(block.size(), Vec(dim));
        for (std::size_t k = 0; k < block.size(); ++k) op.apply(block[k], hv[k]);
        for (Eigen::Index i = 0; i < bs; ++i) {
          for (Eigen::Index j = 0; j < bs; ++j) {
            hb(i, j) = simd::dot(block[static_cast<std::size_t>(i)], hv[static_cast<std::size_t>(j)]);
          }
        }
        hb = 0.5 * (hb + hb.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> he(hb);
        for (Eigen::Index k = 0; k < bs; ++k) {
          RitzResult r;
          r.state.assign(dim, 0.0);
          for (Eigen::Index i = 0; i < bs; ++i) {
            simd::axpy(he.eigenvectors()(i, k), block[static_cast<std::size_t>(i)], r.state);
          }
          r.energy = he.eigenvalues()(k);
          resolved.push_back(std::move(r));
        }
      }
      std::sort(resolved.begin(), resolved.end(),
                [](const RitzResult& a, const RitzResult& b) { return a.energy < b.energy; });
      for (std::size_t k = 0; k < resolved.size(); ++k) levels[start + k] = std::move(resolved[k]);
    }
    start = end;
  }
}

// Ascending energy; within a degenerate cluster, even parity first.
void canonical_order(std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) { return a.energy < b.energy; });
  if (pairs.empty()) return;
  const double tol = kDegeneracyTol * std::max(1.0, std::abs(pairs.front().energy));
  std::size_t start = 0;
  while (start < pairs.size()) {
    std::size_t end = start + 1;
    while (end < pairs.size() && pairs[end].energy - pairs[end - 1].energy < tol) ++end;
    std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(start),
                     pairs.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const EigenPair& a, const EigenPair& b) { return a.parity > b.parity; });
    start = end;
  }
}

}  // namespace

SpectrumSlice lowest_eigenpairs(const ModelSpec& spec, int k, const SolverOptions& opts) {
  if (k < 1) throw UsageError("lowest_eigenpairs: k must be >= 1");
  if (k > kMaxEigenpairs) {
    throw UnsupportedError("lowest_eigenpairs: k = " + std::to_string(k) + " exceeds the supported " +
                           std::to_string(kMaxEigenpairs));
  }
  if (!(opts.tol >= 1e-13 && opts.tol <= 1e-6)) {
    throw ConfigError("eigensolver tolerance must lie in [1e-13, 1e-6]");
  }
  if (opts.krylov_dim < 2 || opts.max_restarts < 0) {
    throw ConfigError("eigensolver: krylov_dim must be >= 2 and max_restarts >= 0");
  }

  const std::uint64_t dim = spec.dimension();
  SolverMethod method = opts.method;
  if (method == SolverMethod::Auto) {
    method = dim <= opts.dense_threshold ? SolverMethod::Dense : SolverMethod::Lanczos;
  }
  // One level above the request decides the degeneracy flag.
  const int want = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(k) + 1, dim));

  HamiltonianOperator op(spec);
  std::vector<RitzResult> levels =
      method == SolverMethod::Dense ? dense_path(spec, want, opts) : lanczos_path(op, want, opts);
  std::sort(levels.begin(), levels.end(),
            [](const RitzResult& a, const RitzResult& b) { return a.energy < b.energy; });
  if (levels.size() > static_cast<std::size_t>(want)) levels.resize(static_cast<std::size_t>(want));
  resolve_clusters(op, levels);

  std::vector<EigenPair> pairs;
  Vec hx(dim);
  for (auto& lv : levels) {
    EigenPair p;
    p.state = std::move(lv.state);
    simd::scale(1.0 / norm2(p.state), p.state);
    sign_gauge(p.state);
    p.energy = rayleigh_and_residual(op, p.state, hx, p.residual);
    p.parity = parity_expectation(p.state) >= 0.0 ? 1 : -1;
    pairs.push_back(std::move(p));
  }
  canonical_order(pairs);

  SpectrumSlice slice;
  slice.method_used = method;
  const double degenerate_tol = kDegeneracyTol * std::max(1.0, std::abs(pairs.front().energy));
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    const double gap = pairs[i + 1].energy - pairs[i].energy;
    slice.gap_report.push_back(gap);
    if (gap < degenerate_tol) slice.degenerate_flag = true;
  }
  if (pairs.size() > static_cast<std::size_t>(k)) pairs.resize(static_cast<std::size_t>(k));
  for (const auto& p : pairs) {
    if (p.residual > opts.tol) {
      throw ConvergenceError("eigenpair residual " + std::to_string(p.residual) +
                                 " exceeds tolerance " + std::to_string(opts.tol),
                             p.residual);
    }
  }
  slice.pairs = std::move(pairs);
  return slice;
}

EigenPair ground_state(const ModelSpec& spec, const SolverOptions& opts) {
  return std::move(lowest_eigenpairs(spec, 1, opts).pairs.front());
}

}  // namespace ere
