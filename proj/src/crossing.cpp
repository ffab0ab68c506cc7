#include "ere/crossing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ere/error.hpp"
#include "ere/parallel.hpp"

namespace ere {

void ScanOptions::validate() const {
  if (!(alpha_min > 0.0)) throw ConfigError("alpha window minimum must be > 0");
  if (!(alpha_max > alpha_min)) throw ConfigError("alpha window maximum must exceed the minimum");
  if (!(grid_step > 0.0)) throw ConfigError("alpha grid step must be > 0");
  if (!(refine_tol > 0.0) || refine_tol > grid_step) {
    throw ConfigError("alpha refinement tolerance must lie in (0, grid step]");
  }
}

std::string_view cross_status_name(CrossStatus s) {
  switch (s) {
    case CrossStatus::Crossed: return "crossed";
    case CrossStatus::NoCross: return "no_cross";
    case CrossStatus::Identical: return "identical";
  }
  return "unknown";
}

std::string_view pattern_case_name(PatternCase c) {
  switch (c) {
    case PatternCase::CaseI: return "case_i";
    case PatternCase::CaseII: return "case_ii";
    case PatternCase::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

CrossingRecord find_crossings(const EntanglementSpectrum& a, const EntanglementSpectrum& b,
                              const ScanOptions& opts) {
  opts.validate();
  const auto f = [&](double alpha) { return renyi_entropy(a, alpha) - renyi_entropy(b, alpha); };
  const auto grid = alpha_grid(opts.alpha_min, opts.alpha_max, opts.grid_step);

  std::vector<double> fv(grid.size());
  double max_abs = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fv[i] = f(grid[i]);
    max_abs = std::max(max_abs, std::abs(fv[i]));
  }

  CrossingRecord rec;
  if (max_abs <= kEntropyEqualTol) {
    rec.status = CrossStatus::Identical;
    return rec;
  }

  bool touched = false;
  std::size_t prev = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(fv[i]) <= kEntropyEqualTol) {
      touched = true;
      continue;
    }
    if (prev < grid.size() && (fv[prev] > 0.0) != (fv[i] > 0.0)) {
      double lo = grid[prev];
      double hi = grid[i];
      const bool lo_positive = fv[prev] > 0.0;
      double root = 0.0;
      bool exact = false;
      while (hi - lo > opts.refine_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          root = mid;
          exact = true;
          break;
        }
        if ((fm > 0.0) == lo_positive) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      rec.crossings.push_back(exact ? root : 0.5 * (lo + hi));
    }
    prev = i;
  }
  rec.status = rec.crossings.empty() ? CrossStatus::NoCross : CrossStatus::Crossed;
  if (rec.status == CrossStatus::NoCross && touched) {
    rec.note = "curves touch within tolerance without a sign change";
  }
  return rec;
}

CrossingMatrix::CrossingMatrix(std::vector<double> params,
                               const std::vector<EntanglementSpectrum>& spectra,
                               const ScanOptions& opts, int threads)
    : params_(std::move(params)) {
  if (spectra.size() != params_.size()) {
    throw UsageError("crossing matrix: one spectrum per parameter value is required");
  }
  opts.validate();
  const std::size_t n = params_.size();
  cells_.resize(n * n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    auto rec = find_crossings(spectra[i], spectra[j], opts);
    rec.p_i = params_[i];
    rec.p_j = params_[j];
    auto mirror = rec;
    std::swap(mirror.p_i, mirror.p_j);
    cells_[i * n + j] = std::move(rec);
    cells_[j * n + i] = std::move(mirror);
  });
  for (std::size_t i = 0; i < n; ++i) {
    auto& d = cells_[i * n + i];
    d.p_i = d.p_j = params_[i];
    d.status = CrossStatus::Identical;
  }
}

CrossingMatrix CrossingMatrix::from_records(std::vector<double> params,
                                            std::vector<CrossingRecord> cells) {
  const std::size_t n = params.size();
  if (cells.size() != n * n) throw UsageError("crossing matrix: need n*n cells");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cells[i * n + j].status != cells[j * n + i].status) {
        throw UsageError("crossing matrix must be symmetric");
      }
    }
  }
  CrossingMatrix m;
  m.params_ = std::move(params);
  m.cells_ = std::move(cells);
  return m;
}

std::size_t CrossingMatrix::crossed_pairs() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) count += crossed(i, j) ? 1 : 0;
  }
  return count;
}

SpectrumProvider ground_state_provider(const ModelSpec& base, const std::string& param,
                                       const Partition& part, const SolverOptions& solver) {
  if (part.n_sites() != base.n_sites()) {
    throw ConfigError("partition size does not match the number of sites");
  }
  base.param(param);
  return [base, param, part, solver](double value) {
    const ModelSpec spec = base.with_param(param, value);
    try {
      const EigenPair gs = ground_state(spec, solver);
      return reduced_spectrum(gs.state, part);
    } catch (const ConvergenceError& e) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10g", value);
      throw ConvergenceError(param + "=" + buf + ": " + e.what(), e.best_residual());
    }
  };
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ConfigError("parameter grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("parameter grid must be ascending and unique");
  }
}

}  // namespace

CrossingMatrix crossing_matrix(const SpectrumProvider& provider, const std::vector<double>& grid,
                               const ScanOptions& opts, int threads) {
  check_grid(grid);
  opts.validate();
  std::vector<EntanglementSpectrum> spectra(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { spectra[i] = provider(grid[i]); });
  return CrossingMatrix(grid, spectra, opts, threads);
}

CrossingMatrix crossing_matrix(const ModelSpec& base, const std::string& param,
                               const std::vector<double>& grid, const Partition& part,
                               const ScanOptions& opts, const SolverOptions& solver, int threads) {
  return crossing_matrix(ground_state_provider(base, param, part, solver), grid, opts, threads);
}

namespace {

struct Classification {
  PatternCase pattern = PatternCase::Indeterminate;
  bool crossing_below = true;
  double score = 0.0;
};

Classification classify(const CrossingMatrix& m, double split) {
  const auto& p = m.params();
  const double eps = 1e-12 * std::max(1.0, std::abs(split));
  std::vector<std::size_t> left, right;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < split - eps) left.push_back(i);
    if (p[i] > split + eps) right.push_back(i);
  }
  Classification out;
  if (left.size() < 2 || right.size() < 2) return out;

  const auto within = [&](const std::vector<std::size_t>& idx, std::size_t& cells) {
    std::size_t crossed = 0;
    cells = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        ++cells;
        crossed += m.crossed(idx[a], idx[b]) ? 1 : 0;
      }
    }
    return crossed;
  };
  std::size_t cells_l = 0, cells_r = 0;
  const std::size_t cross_l = within(left, cells_l);
  const std::size_t cross_r = within(right, cells_r);
  const double frac_l = static_cast<double>(cross_l) / static_cast<double>(cells_l);
  const double frac_r = static_cast<double>(cross_r) / static_cast<double>(cells_r);
  const auto total_within = static_cast<double>(cells_l + cells_r);

  if (frac_l > 0.5 && frac_r < 0.5) {
    out.pattern = PatternCase::CaseI;
    out.crossing_below = true;
    out.score = static_cast<double>(cross_l + (cells_r - cross_r)) / total_within;
    return out;
  }
  if (frac_r > 0.5 && frac_l < 0.5) {
    out.pattern = PatternCase::CaseI;
    out.crossing_below = false;
    out.score = static_cast<double>(cross_r + (cells_l - cross_l)) / total_within;
    return out;
  }
  if (frac_l < 0.5 && frac_r < 0.5) {
    std::size_t total = 0, straddling = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        if (!m.crossed(i, j)) continue;
        ++total;
        if (p[i] < split - eps && p[j] > split + eps) ++straddling;
      }
    }
    if (total > 0 && 2 * straddling > total) {
      out.pattern = PatternCase::CaseII;
      out.score = static_cast<double>((cells_l - cross_l) + (cells_r - cross_r) + straddling) /
                  (total_within + static_cast<double>(total));
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

PatternCase classify_pattern(const CrossingMatrix& m, double candidate_split) {
  return classify(m, candidate_split).pattern;
}

CriticalBracket critical_bracket(const CrossingMatrix& m) {
  const auto& p = m.params();
  const std::size_t n = p.size();
  if (m.crossed_pairs() == 0) throw NoSignalError("no crossing pairs on the parameter grid");

  std::vector<double> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    candidates.push_back(p[i]);
    if (i + 1 < n) candidates.push_back(0.5 * (p[i] + p[i + 1]));
  }
  Classification best;
  double best_split = 0.0;
  for (double s : candidates) {
    const auto c = classify(m, s);
    if (c.pattern == PatternCase::Indeterminate) continue;
    if (best.pattern == PatternCase::Indeterminate || c.score > best.score) {
      best = c;
      best_split = s;
    }
  }
  if (best.pattern == PatternCase::Indeterminate) {
    throw IndeterminateError("no split of the grid shows a case (i) or case (ii) crossing pattern");
  }

  CriticalBracket br;
  br.rule = best.pattern;
  br.split = best_split;
  br.crossing_below = best.crossing_below;

  if (best.pattern == PatternCase::CaseII) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!m.crossed(i, j)) continue;
        lo = std::max(lo, p[i]);
        hi = std::min(hi, p[j]);
      }
    }
    if (lo > hi) {
      throw IndeterminateError("case (ii): crossing intervals do not share a common region (" +
                               fmt(hi) + " < " + fmt(lo) + ")");
    }
    br.lo = lo;
    br.hi = hi;
    br.confidence_note = "case (ii) around split " + fmt(best_split) + ", coherence " +
                         fmt(best.score) + ", " + std::to_string(m.crossed_pairs()) +
                         " crossing pairs";
    if (lo == hi) {
      // The intervals only share one grid value; the transition can sit
      // anywhere within a step of it.
      const auto k = static_cast<std::size_t>(std::find(p.begin(), p.end(), lo) - p.begin());
      br.lo = p[k - 1];
      br.hi = p[k + 1];
      br.confidence_note += ", intersection collapsed to " + fmt(lo) + " and was widened by one step";
    }
    return br;
  }

  std::vector<bool> adjacent(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) adjacent[i] = m.crossed(i, i + 1);
  const auto first = std::find(adjacent.begin(), adjacent.end(), true);
  if (first == adjacent.end()) {
    throw IndeterminateError("case (i): no neighbouring parameter values cross");
  }
  const auto first_idx = static_cast<std::size_t>(first - adjacent.begin());
  const auto last_idx =
      static_cast<std::size_t>(std::find(adjacent.rbegin(), adjacent.rend(), true).base() -
                               adjacent.begin()) - 1;
  // Gaps deeper inside the crossing side (typically crossings that left the
  // alpha window) do not move the bracket; they are reported, not fatal.
  std::ostringstream gaps;
  for (std::size_t i = first_idx; i <= last_idx; ++i) {
    if (!adjacent[i]) gaps << " (" << fmt(p[i]) << "," << fmt(p[i + 1]) << ")";
  }

  std::size_t lo_idx = 0, hi_idx = 0;
  if (best.crossing_below) {
    lo_idx = last_idx;
    hi_idx = last_idx + 2;
    if (hi_idx >= n) {
      throw IndeterminateError("case (i): crossings extend to the upper end of the grid at " +
                               fmt(p[last_idx]));
    }
  } else {
    hi_idx = first_idx + 1;
    if (first_idx == 0) {
      throw IndeterminateError("case (i): crossings extend to the lower end of the grid at " +
                               fmt(p[0]));
    }
    lo_idx = first_idx - 1;
  }
  br.lo = p[lo_idx];
  br.hi = p[hi_idx];
  br.confidence_note = std::string("case (i), crossings ") +
                       (best.crossing_below ? "below" : "above") + " split " + fmt(best_split) +
                       ", coherence " + fmt(best.score);
  if (!gaps.str().empty()) br.confidence_note += ", gaps on the crossing side:" + gaps.str();
  return br;
}

}  // namespace ere
