#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ere/crossing.hpp"
#include "ere/eigensolve.hpp"
#include "ere/entangle.hpp"
#include "ere/error.hpp"
#include "ere/io.hpp"
#include "ere/model.hpp"
#include "ere/scan.hpp"

namespace ere::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  if (err == nullptr) return kExitFailure;
  switch (err->kind()) {
    case ErrorKind::Config:
    case ErrorKind::Dimension:
    case ErrorKind::Capacity:
    case ErrorKind::Domain:
    case ErrorKind::Usage:
    case ErrorKind::Unsupported:
      return kExitConfig;
    case ErrorKind::Convergence:
      return kExitConvergence;
    case ErrorKind::NoSignal:
    case ErrorKind::Indeterminate:
      return kExitNoSignal;
    case ErrorKind::InvalidState:
    case ErrorKind::Io:
      return kExitFailure;
  }
  return kExitFailure;
}

namespace {

// Flag values resolve as: command line, then --config file, then built-in default.
// Every value read is recorded so the manifest holds the full effective configuration.
class Settings {
 public:
  std::map<std::string, std::string> flags;
  std::map<std::string, std::string> file;
  std::map<std::string, std::string> defaults;

  bool has(const std::string& key) const {
    return flags.contains(key) || file.contains(key) || defaults.contains(key);
  }

  std::string get(const std::string& key) {
    std::string v;
    if (auto it = flags.find(key); it != flags.end()) {
      v = it->second;
    } else if (auto f = file.find(key); f != file.end()) {
      v = f->second;
    } else if (auto d = defaults.find(key); d != defaults.end()) {
      v = d->second;
    } else {
      throw ConfigError("missing required option --" + key);
    }
    used_[key] = v;
    return v;
  }

  double number(const std::string& key) {
    const std::string v = get(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) {
      throw ConfigError("--" + key + ": '" + v + "' is not a finite number");
    }
    return x;
  }

  int integer(const std::string& key) {
    const std::string v = get(key);
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || x < -1000000 || x > 1000000) {
      throw ConfigError("--" + key + ": '" + v + "' is not an integer");
    }
    return static_cast<int>(x);
  }

  std::vector<double> numbers(const std::string& key) {
    const std::string v = get(key);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      char* end = nullptr;
      const double x = std::strtod(item.c_str(), &end);
      if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(x)) {
        throw ConfigError("--" + key + ": cannot parse '" + item + "'");
      }
      out.push_back(x);
    }
    if (out.empty()) throw ConfigError("--" + key + " is empty");
    return out;
  }

  const std::map<std::string, std::string>& used() const { return used_; }

 private:
  std::map<std::string, std::string> used_;
};

struct Output {
  std::string name;
  std::string content;
};

struct CommandResult {
  std::vector<Output> files;
};

struct OptionDef {
  std::string key;
  std::string help;
};

using Handler = std::function<CommandResult(Settings&, std::ostream&, std::ostream&)>;

struct Command {
  std::string name;
  std::string help;
  std::vector<OptionDef> options;
  Handler handler;
};

const std::vector<OptionDef> kModelOptions = {
    {"model", "model family: ising, xy or xxz"},
    {"g", "transverse field (ising)"},
    {"gamma", "anisotropy (xy)"},
    {"h", "field (xy)"},
    {"delta", "zz anisotropy (xxz)"},
    {"n", "number of sites (default 10)"},
    {"block", "sites in block A (default N/2)"},
    {"tol", "eigensolver residual tolerance (default 1e-10)"},
    {"solver", "auto, dense or lanczos (default auto)"},
};

const std::vector<OptionDef> kWindowOptions = {
    {"alpha-min", "lower end of the Renyi order window (default 0.1)"},
    {"alpha-max", "upper end of the Renyi order window (default 2.3)"},
    {"alpha-step", "scan grid step in alpha (default 0.05)"},
    {"refine-tol", "bisection tolerance for crossing orders (default 1e-4)"},
};

const std::vector<OptionDef> kRangeOptions = {
    {"param", "swept parameter (default: g, h or delta by family)"},
    {"from", "first parameter value"},
    {"to", "last parameter value"},
    {"step", "parameter grid step"},
    {"threads", "worker threads (default 1)"},
};

std::string default_param(Family f) {
  switch (f) {
    case Family::TransverseIsing: return "g";
    case Family::XY: return "h";
    case Family::XXZ: return "delta";
  }
  return "g";
}

void set_common_defaults(Settings& s) {
  s.defaults["n"] = "10";
  s.defaults["tol"] = "1e-10";
  s.defaults["solver"] = "auto";
  s.defaults["alpha-min"] = "0.1";
  s.defaults["alpha-max"] = "2.3";
  s.defaults["alpha-step"] = "0.05";
  s.defaults["refine-tol"] = "1e-4";
  s.defaults["threads"] = "1";
  s.defaults["out"] = ".";
}

Family family_of(Settings& s) { return parse_family(s.get("model")); }

// Builds the model; the swept parameter (if any) takes `swept_value`, every
// other parameter of the family must be supplied.
ModelSpec build_model(Settings& s, const std::optional<std::string>& swept = std::nullopt,
                      double swept_value = 0.0, std::optional<int> sites = std::nullopt) {
  const Family f = family_of(s);
  const auto keys = ModelSpec::parameter_keys(f);
  for (const char* k : {"g", "gamma", "h", "delta"}) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end() && (s.flags.contains(k) || s.file.contains(k))) {
      throw ConfigError("--" + std::string(k) + " does not apply to model " + std::string(family_name(f)));
    }
  }
  std::map<std::string, double> params;
  for (const auto& k : keys) params[k] = (swept && *swept == k) ? swept_value : s.number(k);
  return ModelSpec(f, params, sites ? *sites : s.integer("n"));
}

std::string swept_param(Settings& s) {
  const Family f = family_of(s);
  if (!s.flags.contains("param") && !s.file.contains("param")) s.defaults["param"] = default_param(f);
  const std::string p = s.get("param");
  const auto keys = ModelSpec::parameter_keys(f);
  if (std::find(keys.begin(), keys.end(), p) == keys.end()) {
    throw ConfigError("--param '" + p + "' is not a parameter of model " + std::string(family_name(f)));
  }
  return p;
}

Partition partition_of(Settings& s, int n) {
  if (s.flags.contains("block") || s.file.contains("block")) return Partition(n, s.integer("block"));
  s.defaults["block"] = std::to_string(n / 2);
  if (n % 2 != 0) throw ConfigError("odd N needs an explicit --block");
  return Partition(n, s.integer("block"));
}

ScanOptions scan_of(Settings& s) {
  ScanOptions o;
  o.alpha_min = s.number("alpha-min");
  o.alpha_max = s.number("alpha-max");
  o.grid_step = s.number("alpha-step");
  o.refine_tol = s.number("refine-tol");
  o.validate();
  return o;
}

SolverOptions solver_of(Settings& s) {
  SolverOptions o;
  o.method = parse_solver_method(s.get("solver"));
  o.tol = s.number("tol");
  return o;
}

int threads_of(Settings& s) {
  const int t = s.integer("threads");
  if (t < 1) throw ConfigError("--threads must be >= 1");
  return t;
}

// Range defaults follow the scans used for each family's transition.
void set_range_defaults(Settings& s, Family f) {
  if (f == Family::XXZ) {
    s.defaults["from"] = "0.4";
    s.defaults["to"] = "1.6";
  } else {
    s.defaults["from"] = "0.5";
    s.defaults["to"] = "1.5";
  }
  s.defaults["step"] = "0.1";
}

// Ground-state spectra that remember which parameter values had a degenerate ground level.
class TrackingProvider {
 public:
  TrackingProvider(ModelSpec base, std::string param, Partition part, SolverOptions solver)
      : base_(std::move(base)), param_(std::move(param)), part_(part), solver_(solver) {}

  SpectrumProvider provider() {
    return [this](double v) {
      const ModelSpec spec = base_.with_param(param_, v);
      SpectrumSlice slice;
      try {
        slice = lowest_eigenpairs(spec, 1, solver_);
      } catch (const ConvergenceError& e) {
        throw ConvergenceError(param_ + "=" + io::format_short(v) + ": " + e.what(), e.best_residual());
      }
      if (slice.degenerate_flag) {
        std::lock_guard lock(mu_);
        degenerate_.insert(v);
      }
      return reduced_spectrum(slice.pairs.front().state, part_);
    };
  }

  void warn(std::ostream& err) const {
    for (double v : degenerate_) {
      err << "warning: degenerate ground level at " << param_ << "=" << io::format_short(v)
          << "; the even-parity state was used\n";
    }
  }

 private:
  ModelSpec base_;
  std::string param_;
  Partition part_;
  SolverOptions solver_;
  std::mutex mu_;
  std::set<double> degenerate_;
};

CommandResult cmd_entropy(Settings& s, std::ostream& out, std::ostream& err) {
  const ModelSpec spec = build_model(s);
  const Partition part = partition_of(s, spec.n_sites());
  const ScanOptions scan = scan_of(s);
  const auto slice = lowest_eigenpairs(spec, 1, solver_of(s));
  if (slice.degenerate_flag) err << "warning: degenerate ground level; the even-parity state was used\n";
  const auto spectrum = reduced_spectrum(slice.pairs.front().state, part);
  const auto alphas = alpha_grid(scan.alpha_min, scan.alpha_max, scan.grid_step);
  const auto curve = renyi_curve(spectrum, alphas);
  out << "E0 = " << io::format_exact(slice.pairs.front().energy) << ", S_1 = "
      << io::format_exact(renyi_entropy(spectrum, 1.0)) << " bits (" << part.block_a_size() << ":"
      << part.block_b_size() << ")\n";
  return {{{"entropy.csv", io::curve_csv(curve)}, {"spectrum.csv", io::spectrum_csv(spectrum)}}};
}

CommandResult cmd_cross(Settings& s, std::ostream& out, std::ostream&) {
  const std::string param = swept_param(s);
  const double a = s.number("a");
  const double b = s.number("b");
  const ModelSpec spec_a = build_model(s, param, a);
  const ModelSpec spec_b = spec_a.with_param(param, b);
  const Partition part = partition_of(s, spec_a.n_sites());
  const ScanOptions scan = scan_of(s);
  const SolverOptions solver = solver_of(s);
  const auto sa = reduced_spectrum(ground_state(spec_a, solver).state, part);
  const auto sb = reduced_spectrum(ground_state(spec_b, solver).state, part);
  auto rec = find_crossings(sa, sb, scan);
  rec.p_i = a;
  rec.p_j = b;
  out << param << "=" << io::format_short(a) << " vs " << param << "=" << io::format_short(b) << ": "
      << cross_status_name(rec.status);
  if (!rec.crossings.empty()) {
    out << " at alpha =";
    for (double x : rec.crossings) out << " " << io::format_short(std::round(x * 1e4) / 1e4);
  }
  out << "\n";
  json j = io::to_json(rec);
  j["param"] = param;
  return {{{"cross.json", j.dump(2) + "\n"}}};
}

CommandResult cmd_sweep(Settings& s, std::ostream& out, std::ostream& err) {
  const Family f = family_of(s);
  set_range_defaults(s, f);
  s.defaults["refine"] = "0";
  s.defaults["decimals"] = "1";
  const std::string param = swept_param(s);
  const double from = s.number("from"), to = s.number("to"), step = s.number("step");
  const ModelSpec base = build_model(s, param, from);
  const Partition part = partition_of(s, base.n_sites());
  const ScanOptions scan = scan_of(s);
  const int refine = s.integer("refine");
  const int decimals = s.integer("decimals");
  if (decimals < 0 || decimals > 6) throw ConfigError("--decimals must lie in [0, 6]");

  TrackingProvider tracking(base, param, part, solver_of(s));
  const auto result = sweep(tracking.provider(), from, to, step, refine, scan, threads_of(s));
  tracking.warn(err);

  CommandResult r;
  for (std::size_t k = 0; k < result.levels.size(); ++k) {
    const auto& lv = result.levels[k];
    r.files.push_back({"matrix_level" + std::to_string(k) + ".csv",
                       io::crossing_matrix_csv(lv.matrix, param, decimals)});
    out << "level " << k << " step " << io::format_short(lv.step) << ": " << param << " in ["
        << io::format_short(lv.bracket.lo) << ", " << io::format_short(lv.bracket.hi) << "] ("
        << lv.bracket.confidence_note << ")\n";
  }
  json j = io::to_json(result, true);
  j["param"] = param;
  r.files.push_back({"sweep.json", j.dump(2) + "\n"});
  return r;
}

CommandResult cmd_fss(Settings& s, std::ostream& out, std::ostream&) {
  const Family f = family_of(s);
  set_range_defaults(s, f);
  s.defaults["refine"] = "2";
  s.defaults["sizes"] = "6,8,10,12";
  s.defaults["exponent"] = io::format_short(kDefaultFssExponent);
  const std::string param = swept_param(s);
  SweepConfig cfg;
  cfg.param = param;
  cfg.start = s.number("from");
  cfg.stop = s.number("to");
  cfg.step = s.number("step");
  cfg.refine_levels = s.integer("refine");
  cfg.scan = scan_of(s);
  cfg.solver = solver_of(s);
  cfg.threads = threads_of(s);
  std::vector<int> sizes;
  for (double x : s.numbers("sizes")) {
    if (x != std::floor(x)) throw ConfigError("--sizes must be integers");
    sizes.push_back(static_cast<int>(x));
  }
  cfg.base = build_model(s, param, cfg.start, sizes.front());
  const double exponent = s.number("exponent");
  const auto r = finite_size_scaling(sizes, cfg, exponent);
  for (std::size_t i = 0; i < r.sizes.size(); ++i) {
    out << "N=" << r.sizes[i] << ": [" << io::format_short(r.brackets[i].lo) << ", "
        << io::format_short(r.brackets[i].hi) << "]\n";
  }
  out << "extrapolated " << param << "_c = " << io::format_exact(r.extrapolated) << " (fit in N^-"
      << io::format_short(exponent) << ")\n";
  json j = io::to_json(r);
  j["param"] = param;
  return {{{"fss.csv", io::fss_csv(r)}, {"fss.json", j.dump(2) + "\n"}}};
}

CommandResult cmd_excited(Settings& s, std::ostream& out, std::ostream& err) {
  const Family f = family_of(s);
  set_range_defaults(s, f);
  const std::string param = swept_param(s);
  const double from = s.number("from"), to = s.number("to"), step = s.number("step");
  const ModelSpec base = build_model(s, param, from);
  const Partition part = partition_of(s, base.n_sites());
  const auto grid = parameter_grid(from, to, step);
  const auto rows = excited_state_comparison(base, param, grid, part, scan_of(s), solver_of(s), threads_of(s));
  for (const auto& row : rows) {
    out << param << "=" << io::format_short(row.param) << ": " << cross_status_name(row.record.status) << "\n";
    if (row.degenerate) {
      err << "warning: " << param << "=" << io::format_short(row.param)
          << ": ground and first excited levels are degenerate\n";
    }
  }
  json j;
  j["param"] = param;
  j["rows"] = io::to_json(rows);
  return {{{"excited.csv", io::excited_csv(rows, param)}, {"excited.json", j.dump(2) + "\n"}}};
}

std::string verdict(const char* from, const char* to, bool possible) {
  return std::string(from) + "→" + to + ": " +
         (possible ? "LOCC-possible (majorization holds)" : "LOCC-impossible (majorization fails)");
}

CommandResult cmd_locc(Settings& s, std::ostream& out, std::ostream&) {
  const auto a = io::parse_spectrum_csv(io::read_text(s.get("spec-a")));
  const auto b = io::parse_spectrum_csv(io::read_text(s.get("spec-b")));
  const ScanOptions scan = scan_of(s);
  const bool ab = majorizes(a, b);
  const bool ba = majorizes(b, a);
  const auto alphas = alpha_grid(scan.alpha_min, scan.alpha_max, scan.grid_step);
  const Dominance dom = renyi_dominance(a, b, alphas);
  const auto rec = find_crossings(a, b, scan);
  out << verdict("A", "B", ab) << "\n" << verdict("B", "A", ba) << "\n";
  out << "Renyi dominance: " << dominance_name(dom);
  if (dom == Dominance::Crossing) out << " (no transformation in either direction, even with a catalyst)";
  out << "\n";
  json j;
  j["a_to_b_majorization"] = ab;
  j["b_to_a_majorization"] = ba;
  j["renyi_dominance"] = std::string(dominance_name(dom));
  j["crossing"] = io::to_json(rec);
  return {{{"locc.json", j.dump(2) + "\n"}}};
}

CommandResult cmd_derivative(Settings& s, std::ostream& out, std::ostream&) {
  const Family f = family_of(s);
  set_range_defaults(s, f);
  s.defaults["alphas"] = "0.5,1,2";
  const std::string param = swept_param(s);
  const double from = s.number("from"), to = s.number("to"), step = s.number("step");
  const ModelSpec base = build_model(s, param, from);
  const Partition part = partition_of(s, base.n_sites());
  const auto alphas = s.numbers("alphas");
  for (double a : alphas) {
    if (!(a > 0.0)) throw DomainError("Renyi order must be > 0");
  }
  const auto grid = parameter_grid(from, to, step);
  const auto t = derivative_curve(base, param, grid, alphas, part, solver_of(s), threads_of(s));
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (std::abs(t.derivative[i][a]) > std::abs(t.derivative[best][a])) best = i;
    }
    out << "alpha=" << io::format_short(alphas[a]) << ": steepest at " << param << "="
        << io::format_short(grid[best]) << "\n";
  }
  return {{{"derivative.csv", io::derivative_csv(t, param)}}};
}

std::vector<OptionDef> concat(std::initializer_list<std::vector<OptionDef>> parts) {
  std::vector<OptionDef> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

std::vector<Command> commands() {
  return {
      {"entropy", "Renyi entropy curve of a ground state", concat({kModelOptions, kWindowOptions}),
       cmd_entropy},
      {"cross", "crossing record between two ground states differing in one parameter",
       concat({kModelOptions, kWindowOptions,
               {{"param", "parameter that differs (default: g, h or delta by family)"},
                {"a", "parameter value of the first state"},
                {"b", "parameter value of the second state"}}}),
       cmd_cross},
      {"sweep", "crossing matrix and critical bracket over a parameter range",
       concat({kModelOptions, kWindowOptions, kRangeOptions,
               {{"refine", "refinement levels, step / 10 each (default 0)"},
                {"decimals", "decimals of crossing orders in matrix CSV cells (default 1)"}}}),
       cmd_sweep},
      {"fss", "finite-size extrapolation of the critical bracket midpoint",
       concat({kModelOptions, kWindowOptions, kRangeOptions,
               {{"sizes", "comma-separated even chain lengths (default 6,8,10,12)"},
                {"refine", "refinement levels per size (default 2)"},
                {"exponent", "fit midpoint = c + a N^-exponent (default 2)"}}}),
       cmd_fss},
      {"excited", "ground vs first excited state crossing status over a range",
       concat({kModelOptions, kWindowOptions, kRangeOptions}), cmd_excited},
      {"locc", "majorization and Renyi dominance between two spectra",
       concat({kWindowOptions,
               {{"spec-a", "CSV spectrum of state A (index,lambda or one value per line)"},
                {"spec-b", "CSV spectrum of state B"}}}),
       cmd_locc},
      {"derivative", "parameter derivative of Renyi entropies over a range",
       concat({kModelOptions, kRangeOptions, {{"alphas", "comma-separated orders (default 0.5,1,2)"}}}),
       cmd_derivative},
  };
}

void write_outputs(const fs::path& dir, const std::string& command, const Settings& s,
                   CommandResult& result, double seconds) {
  fs::create_directories(dir);
  result.files.push_back({"run.cfg", "# " + command + "\n" + io::format_kv(s.used())});
  json manifest;
  manifest["command"] = command;
  manifest["config"] = s.used();
  manifest["version"] = ERE_VERSION;
  manifest["wall_time_seconds"] = seconds;
  json files = json::array();
  for (const auto& f : result.files) {
    io::write_text(dir / f.name, f.content);
    files.push_back(f.name);
  }
  manifest["outputs"] = files;
  io::write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement Renyi entropy crossings in spin-1/2 chains", "ere"};
  // "-h" stays free for the XY field flag --h.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", ERE_VERSION);

  const auto cmds = commands();
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    subs[c.name] = sub;
    auto& store = raw[c.name];
    for (const auto& o : c.options) opts[c.name][o.key] = sub->add_option("--" + o.key, store[o.key], o.help);
    opts[c.name]["out"] = sub->add_option("--out", store["out"], "output directory (default .)");
    opts[c.name]["config"] = sub->add_option("--config", store["config"], "key = value file; flags override it");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const Command* chosen = nullptr;
  for (const auto& c : cmds) {
    if (subs[c.name]->parsed()) chosen = &c;
  }
  if (chosen == nullptr) return kExitConfig;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Settings s;
    set_common_defaults(s);
    for (const auto& [key, opt] : opts[chosen->name]) {
      if (opt->count() > 0 && key != "config") s.flags[key] = raw[chosen->name][key];
    }
    if (opts[chosen->name]["config"]->count() > 0) {
      const auto kv = io::parse_kv(io::read_text(raw[chosen->name]["config"]));
      for (const auto& [k, v] : kv) {
        if (k != "out" && !opts[chosen->name].contains(k)) {
          throw ConfigError("config file: '" + k + "' is not an option of " + chosen->name);
        }
        if (k != "config") s.file[k] = v;
      }
    }
    CommandResult result = chosen->handler(s, out, err);
    const fs::path dir = s.get("out");
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(dir, chosen->name, s, result, seconds);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace ere::cli
