#include "ere/scan.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "ere/error.hpp"
#include "ere/parallel.hpp"

namespace ere {

namespace {

int decimals_of(double x) {
  for (int d = 0; d <= 12; ++d) {
    const double scaled = std::abs(x) * std::pow(10.0, d);
    if (std::abs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, scaled)) return d;
  }
  return 12;
}

double round_decimal(double x, int d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", d, x);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::vector<double> parameter_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("parameter step must be > 0");
  if (!(stop > start) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw ConfigError("parameter range must satisfy start < stop");
  }
  const int d = std::max(decimals_of(step), decimals_of(start));
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000) throw ConfigError("parameter grid has too many points");
  std::vector<double> g;
  g.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    g.push_back(round_decimal(start + static_cast<double>(i) * step, d));
  }
  return g;
}

Partition SweepConfig::partition() const {
  return block_a ? Partition(base.n_sites(), *block_a) : Partition::equal(base.n_sites());
}

void SweepConfig::validate() const {
  base.param(param);
  if (!(step > 0.0)) throw ConfigError("sweep step must be > 0");
  if (!(stop > start)) throw ConfigError("sweep range must satisfy start < stop");
  if (refine_levels < 0 || refine_levels > kMaxRefineLevels) {
    throw ConfigError("refine levels must lie in [0, " + std::to_string(kMaxRefineLevels) + "]");
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");
  scan.validate();
  (void)partition();
}

SweepResult sweep(const SpectrumProvider& provider, double start, double stop, double step,
                  int refine_levels, const ScanOptions& scan, int threads) {
  if (refine_levels < 0 || refine_levels > kMaxRefineLevels) {
    throw ConfigError("refine levels must lie in [0, " + std::to_string(kMaxRefineLevels) + "]");
  }
  scan.validate();
  std::map<double, EntanglementSpectrum> cache;

  SweepResult result;
  double lo = start, hi = stop, cur_step = step;
  for (int level = 0; level <= refine_levels; ++level) {
    if (level > 0) {
      const int d = decimals_of(cur_step) + 1;
      const double prev_step = cur_step;
      cur_step = round_decimal(cur_step / 10.0, d);
      lo = round_decimal(lo - prev_step, d);
      hi = round_decimal(hi + prev_step, d);
    }
    const auto grid = parameter_grid(lo, hi, cur_step);

    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!cache.contains(grid[i])) missing.push_back(i);
    }
    std::vector<EntanglementSpectrum> fresh(missing.size());
    parallel_for(missing.size(), threads, [&](std::size_t k) { fresh[k] = provider(grid[missing[k]]); });
    for (std::size_t k = 0; k < missing.size(); ++k) cache.emplace(grid[missing[k]], std::move(fresh[k]));

    std::vector<EntanglementSpectrum> spectra;
    spectra.reserve(grid.size());
    for (double g : grid) spectra.push_back(cache.at(g));

    SweepLevel lv;
    lv.step = cur_step;
    lv.grid = grid;
    lv.matrix = CrossingMatrix(grid, spectra, scan, threads);
    lv.bracket = critical_bracket(lv.matrix);
    lo = lv.bracket.lo;
    hi = lv.bracket.hi;
    result.levels.push_back(std::move(lv));
  }
  return result;
}

SweepResult sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto provider = ground_state_provider(cfg.base, cfg.param, cfg.partition(), cfg.solver);
  return sweep(provider, cfg.start, cfg.stop, cfg.step, cfg.refine_levels, cfg.scan, cfg.threads);
}

std::vector<double> finite_difference(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw UsageError("finite_difference: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw UsageError("finite differences need at least 3 grid points");
  std::vector<double> d(n);
  d[0] = (y[1] - y[0]) / (x[1] - x[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
  d[n - 1] = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
  return d;
}

DerivativeTable derivative_curve(const SpectrumProvider& provider, const std::vector<double>& grid,
                                 const std::vector<double>& alphas, int threads) {
  if (grid.size() < 3) throw UsageError("derivative curve needs at least 3 grid points");
  const double h0 = grid[1] - grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double h = grid[i] - grid[i - 1];
    if (!(h > 0.0) || std::abs(h - h0) > 1e-9 * std::abs(h0)) {
      throw ConfigError("derivative curve needs a uniform ascending grid");
    }
  }
  if (alphas.empty()) throw UsageError("derivative curve needs at least one alpha");

  DerivativeTable t;
  t.params = grid;
  t.alphas = alphas;
  t.entropy.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const auto spec = provider(grid[i]);
    for (double a : alphas) t.entropy[i].push_back(renyi_entropy(spec, a));
  });
  t.derivative.assign(grid.size(), std::vector<double>(alphas.size()));
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    std::vector<double> column(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) column[i] = t.entropy[i][a];
    const auto d = finite_difference(grid, column);
    for (std::size_t i = 0; i < grid.size(); ++i) t.derivative[i][a] = d[i];
  }
  return t;
}

DerivativeTable derivative_curve(const ModelSpec& base, const std::string& param,
                                 const std::vector<double>& grid, const std::vector<double>& alphas,
                                 const Partition& part, const SolverOptions& solver, int threads) {
  return derivative_curve(ground_state_provider(base, param, part, solver), grid, alphas, threads);
}

PowerLawFit fit_inverse_power(const std::vector<int>& sizes, const std::vector<double>& values,
                              double exponent) {
  if (sizes.size() != values.size()) throw UsageError("fit: sizes and values differ in length");
  if (sizes.size() < 2) throw UsageError("fit needs at least two sizes");
  if (!(exponent > 0.0)) throw ConfigError("scaling exponent must be > 0");
  const auto n = static_cast<double>(sizes.size());
  std::vector<double> x(sizes.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    x[i] = std::pow(static_cast<double>(sizes[i]), -exponent);
    mx += x[i];
    my += values[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (values[i] - my);
  }
  if (sxx == 0.0) throw UsageError("fit needs at least two distinct sizes");
  PowerLawFit fit;
  fit.exponent = exponent;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = values[i] - (fit.intercept + fit.slope * x[i]);
    fit.residual += r * r;
  }
  return fit;
}

FssResult finite_size_scaling(const std::vector<int>& sizes, const SweepConfig& templ, double exponent) {
  if (sizes.size() < 3) throw UsageError("finite-size scaling needs at least 3 sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] % 2 != 0) throw ConfigError("finite-size scaling sizes must be even");
    if (sizes[i] < 4 || sizes[i] > kMaxSites) {
      throw ConfigError("finite-size scaling size " + std::to_string(sizes[i]) + " is out of range");
    }
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ConfigError("finite-size scaling sizes must ascend");
  }
  FssResult r;
  r.sizes = sizes;
  for (int n : sizes) {
    SweepConfig cfg = templ;
    cfg.base = templ.base.with_sites(n);
    cfg.block_a = n / 2;
    const auto res = sweep(cfg);
    const auto& br = res.final_level().bracket;
    r.brackets.push_back(br);
    r.midpoints.push_back(0.5 * (br.lo + br.hi));
  }
  r.fit = fit_inverse_power(r.sizes, r.midpoints, exponent);
  r.extrapolated = r.fit.intercept;
  return r;
}

std::vector<ExcitedComparison> excited_state_comparison(const ModelSpec& base, const std::string& param,
                                                        const std::vector<double>& grid,
                                                        const Partition& part, const ScanOptions& scan,
                                                        const SolverOptions& solver, int threads) {
  base.param(param);
  scan.validate();
  if (part.n_sites() != base.n_sites()) {
    throw ConfigError("partition size does not match the number of sites");
  }
  std::vector<ExcitedComparison> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const ModelSpec spec = base.with_param(param, grid[i]);
    const auto slice = lowest_eigenpairs(spec, 2, solver);
    const auto s0 = reduced_spectrum(slice.pairs[0].state, part);
    const auto s1 = reduced_spectrum(slice.pairs[1].state, part);
    ExcitedComparison& c = out[i];
    c.param = grid[i];
    c.record = find_crossings(s0, s1, scan);
    c.record.p_i = c.record.p_j = grid[i];
    c.gap = slice.gap_report.front();
    c.degenerate = c.gap < kDegeneracyTol * std::max(1.0, std::abs(slice.pairs[0].energy));
    if (c.degenerate) {
      if (!c.record.note.empty()) c.record.note += "; ";
      c.record.note += "ground and first excited levels are degenerate: the crossing status depends on "
                       "the basis chosen inside the degenerate pair";
    }
  });
  return out;
}

}  // namespace ere
