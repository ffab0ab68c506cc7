#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ere/eigensolve.hpp"
#include "ere/entangle.hpp"
#include "ere/model.hpp"

namespace ere {

/// Where and how finely S_alpha(A) - S_alpha(B) is scanned for sign changes.
struct ScanOptions {
  double alpha_min = 0.1;
  double alpha_max = 2.3;
  double grid_step = 0.05;
  double refine_tol = 1e-4;

  void validate() const;
};

enum class CrossStatus { Crossed, NoCross, Identical };

std::string_view cross_status_name(CrossStatus s);

struct CrossingRecord {
  double p_i = std::numeric_limits<double>::quiet_NaN();
  double p_j = std::numeric_limits<double>::quiet_NaN();
  /// Refined crossing orders, ascending, strictly inside the window.
  std::vector<double> crossings;
  CrossStatus status = CrossStatus::NoCross;
  std::string note;
};

/// Sign changes of f(alpha) = S_alpha(a) - S_alpha(b) on the scan grid, each
/// refined by bisection on f itself. Grid points with |f| <= 1e-10 carry no
/// sign; a touch without reversal is NoCross.
CrossingRecord find_crossings(const EntanglementSpectrum& a, const EntanglementSpectrum& b,
                              const ScanOptions& opts = {});

/// Symmetric table of pairwise crossing records over an ascending parameter grid.
class CrossingMatrix {
 public:
  CrossingMatrix() = default;
  /// Fills every pair i < j with find_crossings and mirrors it.
  CrossingMatrix(std::vector<double> params, const std::vector<EntanglementSpectrum>& spectra,
                 const ScanOptions& opts, int threads = 1);
  /// Direct construction from an upper-triangle status table (used for synthetic patterns).
  static CrossingMatrix from_records(std::vector<double> params, std::vector<CrossingRecord> cells);

  std::size_t size() const noexcept { return params_.size(); }
  const std::vector<double>& params() const noexcept { return params_; }
  const CrossingRecord& at(std::size_t i, std::size_t j) const { return cells_.at(i * params_.size() + j); }
  bool crossed(std::size_t i, std::size_t j) const { return at(i, j).status == CrossStatus::Crossed; }
  std::size_t crossed_pairs() const;

 private:
  std::vector<double> params_;
  std::vector<CrossingRecord> cells_;
};

/// Maps a swept parameter value to the entanglement spectrum of interest.
using SpectrumProvider = std::function<EntanglementSpectrum(double)>;

/// Ground-state spectrum of base.with_param(param, value) across the partition.
SpectrumProvider ground_state_provider(const ModelSpec& base, const std::string& param,
                                       const Partition& part, const SolverOptions& solver = {});

/// Evaluates the provider once per grid value (in parallel) and fills all pairs.
CrossingMatrix crossing_matrix(const SpectrumProvider& provider, const std::vector<double>& grid,
                               const ScanOptions& opts = {}, int threads = 1);

CrossingMatrix crossing_matrix(const ModelSpec& base, const std::string& param,
                               const std::vector<double>& grid, const Partition& part,
                               const ScanOptions& opts = {}, const SolverOptions& solver = {},
                               int threads = 1);

/// Case (i): crossings on one side of the transition only.
/// Case (ii): no crossings inside either phase, crossings between phases.
enum class PatternCase { CaseI, CaseII, Indeterminate };

std::string_view pattern_case_name(PatternCase c);

/// Classifies the matrix around a candidate split value; the split itself
/// belongs to neither region.
PatternCase classify_pattern(const CrossingMatrix& m, double candidate_split);

struct CriticalBracket {
  double lo = 0.0;
  double hi = 0.0;
  PatternCase rule = PatternCase::Indeterminate;
  double split = 0.0;
  /// Case (i) only: true when the crossing region lies below the transition.
  bool crossing_below = true;
  std::string confidence_note;
};

/// Picks the most coherent split, then applies the case rule:
///   case (i): last adjacent crossing on the crossing side to the first
///             non-crossing adjacent pair beyond it;
///   case (ii): intersection of [p_i, p_j] over all crossing pairs.
/// Throws NoSignalError without crossings, IndeterminateError otherwise.
CriticalBracket critical_bracket(const CrossingMatrix& m);

}  // namespace ere
