#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ere/crossing.hpp"

namespace ere {

/// Decimal-rounded grid start, start+step, ..., up to stop (inclusive within round-off).
std::vector<double> parameter_grid(double start, double stop, double step);

struct SweepConfig {
  ModelSpec base = ModelSpec::transverse_ising(1.0, 10);
  std::string param = "g";
  double start = 0.5;
  double stop = 1.5;
  double step = 0.1;
  /// Block A size; defaults to N/2.
  std::optional<int> block_a;
  ScanOptions scan;
  /// Each level rescans [lo - step, hi + step] of the previous bracket at step / 10.
  int refine_levels = 0;
  SolverOptions solver;
  int threads = 1;

  Partition partition() const;
  void validate() const;
};

inline constexpr int kMaxRefineLevels = 4;

struct SweepLevel {
  double step = 0.0;
  std::vector<double> grid;
  CrossingMatrix matrix;
  CriticalBracket bracket;
};

struct SweepResult {
  std::vector<SweepLevel> levels;
  const SweepLevel& final_level() const { return levels.back(); }
};

SweepResult sweep(const SweepConfig& cfg);

/// Same driver over an arbitrary spectrum source.
SweepResult sweep(const SpectrumProvider& provider, double start, double stop, double step,
                  int refine_levels, const ScanOptions& scan, int threads = 1);

struct DerivativeTable {
  std::vector<double> params;
  std::vector<double> alphas;
  /// entropy[i][a] = S_alpha(params[i]); derivative[i][a] = dS_alpha/dparam.
  std::vector<std::vector<double>> entropy;
  std::vector<std::vector<double>> derivative;
};

/// Central differences on a uniform grid, one-sided at the ends.
std::vector<double> finite_difference(const std::vector<double>& x, const std::vector<double>& y);

DerivativeTable derivative_curve(const SpectrumProvider& provider, const std::vector<double>& grid,
                                 const std::vector<double>& alphas, int threads = 1);
DerivativeTable derivative_curve(const ModelSpec& base, const std::string& param,
                                 const std::vector<double>& grid, const std::vector<double>& alphas,
                                 const Partition& part, const SolverOptions& solver = {},
                                 int threads = 1);

struct PowerLawFit {
  double exponent = 2.0;
  double intercept = 0.0;
  double slope = 0.0;
  /// Sum of squared deviations.
  double residual = 0.0;
};

/// Least squares y = intercept + slope * N^(-exponent).
PowerLawFit fit_inverse_power(const std::vector<int>& sizes, const std::vector<double>& values,
                              double exponent);

struct FssResult {
  std::vector<int> sizes;
  std::vector<double> midpoints;
  std::vector<CriticalBracket> brackets;
  PowerLawFit fit;
  double extrapolated = 0.0;
};

inline constexpr double kDefaultFssExponent = 2.0;

/// Runs the sweep template at every size (block = N/2) and extrapolates the
/// bracket midpoints to N -> infinity.
FssResult finite_size_scaling(const std::vector<int>& sizes, const SweepConfig& templ,
                              double exponent = kDefaultFssExponent);

struct ExcitedComparison {
  double param = 0.0;
  CrossingRecord record;
  double gap = 0.0;
  bool degenerate = false;
};

/// Ground vs first excited state crossing record at every grid value.
std::vector<ExcitedComparison> excited_state_comparison(const ModelSpec& base, const std::string& param,
                                                        const std::vector<double>& grid,
                                                        const Partition& part,
                                                        const ScanOptions& scan = {},
                                                        const SolverOptions& solver = {},
                                                        int threads = 1);

}  // namespace ere
