#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ere/model.hpp"

namespace ere {

enum class SolverMethod { Auto, Dense, Lanczos };

std::string_view solver_method_name(SolverMethod m);
SolverMethod parse_solver_method(std::string_view name);

struct SolverOptions {
  SolverMethod method = SolverMethod::Auto;
  /// Residual target ||Hv - Ev||_2, allowed range [1e-13, 1e-6].
  double tol = 1e-10;
  /// Auto picks the dense path at or below this Hilbert-space dimension.
  std::uint64_t dense_threshold = 256;
  std::uint64_t dense_cap = kDefaultDenseCap;
  int krylov_dim = 80;
  int max_restarts = 200;
  std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
};

struct EigenPair {
  double energy = 0.0;
  std::vector<double> state;
  double residual = 0.0;
  /// +1 / -1 eigenvalue of prod_i sz_i.
  int parity = 1;
};

struct SpectrumSlice {
  std::vector<EigenPair> pairs;
  /// Adjacent gaps among the returned pairs and the next level above them.
  std::vector<double> gap_report;
  bool degenerate_flag = false;
  SolverMethod method_used = SolverMethod::Dense;
};

inline constexpr int kMaxEigenpairs = 4;

/// Relative gap below which two levels count as degenerate.
inline constexpr double kDegeneracyTol = 1e-10;

/// k lowest eigenpairs in ascending energy. Degenerate levels are returned as
/// parity eigenstates, even parity first; every state has its largest-magnitude
/// amplitude positive.
SpectrumSlice lowest_eigenpairs(const ModelSpec& spec, int k, const SolverOptions& opts = {});

EigenPair ground_state(const ModelSpec& spec, const SolverOptions& opts = {});

}  // namespace ere
