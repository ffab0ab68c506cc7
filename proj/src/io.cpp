#include "ere/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ere/error.hpp"

namespace ere::io {

using nlohmann::json;

std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::map<std::string, std::string> parse_kv(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

std::string format_kv(const std::map<std::string, std::string>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string curve_csv(const RenyiCurve& curve) {
  std::string out = "alpha,S_alpha\n";
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    out += format_exact(curve.alphas[i]) + "," + format_exact(curve.values[i]) + "\n";
  }
  return out;
}

std::string spectrum_csv(const EntanglementSpectrum& spec) {
  std::string out = "index,lambda\n";
  const auto p = spec.probs();
  for (std::size_t i = 0; i < p.size(); ++i) out += std::to_string(i) + "," + format_exact(p[i]) + "\n";
  return out;
}

EntanglementSpectrum parse_spectrum_csv(std::string_view text) {
  std::vector<double> probs;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cols = split(t, ',');
    double v = 0.0;
    if (!parse_number(cols.back(), v)) {
      if (first) {
        first = false;
        continue;
      }
      throw ConfigError("spectrum file: cannot parse '" + t + "'");
    }
    first = false;
    probs.push_back(v);
  }
  return EntanglementSpectrum::from_probs(std::move(probs));
}

std::string crossing_matrix_csv(const CrossingMatrix& m, const std::string& param, int decimals) {
  const auto& p = m.params();
  std::string out = param;
  for (double v : p) out += "," + format_short(v);
  out += "\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += format_short(p[i]);
    for (std::size_t j = 0; j < p.size(); ++j) {
      const auto& r = m.at(i, j);
      std::string cell;
      if (i == j || r.status == CrossStatus::NoCross) {
        cell = "N";
      } else if (r.status == CrossStatus::Identical) {
        cell = "I";
      } else {
        for (std::size_t k = 0; k < r.crossings.size(); ++k) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.*f", decimals, r.crossings[k]);
          if (k > 0) cell += ";";
          cell += buf;
        }
      }
      out += "," + cell;
    }
    out += "\n";
  }
  return out;
}

json to_json(const CrossingRecord& r) {
  json j;
  j["pair"] = json::array({number_or_null(r.p_i), number_or_null(r.p_j)});
  j["status"] = std::string(cross_status_name(r.status));
  j["crossings"] = r.crossings;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const CrossingMatrix& m) {
  json j;
  j["params"] = m.params();
  json records = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t k = i + 1; k < m.size(); ++k) records.push_back(to_json(m.at(i, k)));
  }
  j["records"] = std::move(records);
  return j;
}

json to_json(const CriticalBracket& b) {
  json j;
  j["lo"] = b.lo;
  j["hi"] = b.hi;
  j["rule"] = std::string(pattern_case_name(b.rule));
  j["split"] = b.split;
  if (b.rule == PatternCase::CaseI) j["crossing_side"] = b.crossing_below ? "below" : "above";
  j["confidence_note"] = b.confidence_note;
  return j;
}

json to_json(const SweepResult& r, bool include_matrices) {
  json levels = json::array();
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const auto& lv = r.levels[k];
    json l;
    l["level"] = k;
    l["step"] = lv.step;
    l["grid_start"] = lv.grid.front();
    l["grid_stop"] = lv.grid.back();
    l["points"] = lv.grid.size();
    l["bracket"] = to_json(lv.bracket);
    if (include_matrices) l["matrix"] = to_json(lv.matrix);
    levels.push_back(std::move(l));
  }
  json j;
  j["levels"] = std::move(levels);
  j["final_bracket"] = to_json(r.final_level().bracket);
  return j;
}

json to_json(const FssResult& r) {
  json j;
  j["sizes"] = r.sizes;
  j["midpoints"] = r.midpoints;
  json br = json::array();
  for (const auto& b : r.brackets) br.push_back(to_json(b));
  j["brackets"] = std::move(br);
  j["fit"] = {{"form", "midpoint = intercept + slope * N^-exponent"},
              {"exponent", r.fit.exponent},
              {"intercept", r.fit.intercept},
              {"slope", r.fit.slope},
              {"residual", r.fit.residual}};
  j["extrapolated"] = r.extrapolated;
  return j;
}

json to_json(const ModelSpec& spec) {
  json j;
  j["family"] = std::string(family_name(spec.family()));
  j["n_sites"] = spec.n_sites();
  j["boundary"] = "periodic";
  for (const auto& [k, v] : spec.params()) j["params"][k] = v;
  return j;
}

json to_json(const std::vector<ExcitedComparison>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j = to_json(r.record);
    j["param"] = r.param;
    j["gap"] = r.gap;
    j["degenerate"] = r.degenerate;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string fss_csv(const FssResult& r) {
  std::string out = "N,lo,hi,midpoint\n";
  for (std::size_t i = 0; i < r.sizes.size(); ++i) {
    out += std::to_string(r.sizes[i]) + "," + format_exact(r.brackets[i].lo) + "," +
           format_exact(r.brackets[i].hi) + "," + format_exact(r.midpoints[i]) + "\n";
  }
  return out;
}

std::string derivative_csv(const DerivativeTable& t, const std::string& param) {
  std::string out = param + ",alpha,S_alpha,dS_dparam\n";
  for (std::size_t i = 0; i < t.params.size(); ++i) {
    for (std::size_t a = 0; a < t.alphas.size(); ++a) {
      out += format_exact(t.params[i]) + "," + format_exact(t.alphas[a]) + "," +
             format_exact(t.entropy[i][a]) + "," + format_exact(t.derivative[i][a]) + "\n";
    }
  }
  return out;
}

std::string excited_csv(const std::vector<ExcitedComparison>& rows, const std::string& param) {
  std::string out = param + ",status,crossings,gap,degenerate\n";
  for (const auto& r : rows) {
    std::string cs;
    for (std::size_t k = 0; k < r.record.crossings.size(); ++k) {
      if (k > 0) cs += ";";
      cs += format_exact(r.record.crossings[k]);
    }
    out += format_exact(r.param) + "," + std::string(cross_status_name(r.record.status)) + "," + cs +
           "," + format_exact(r.gap) + "," + (r.degenerate ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace ere::io
