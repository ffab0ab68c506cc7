#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ere/crossing.hpp"
#include "ere/entangle.hpp"
#include "ere/model.hpp"
#include "ere/scan.hpp"

namespace ere::io {

/// 17 significant digits: parses back to the identical double.
std::string format_exact(double v);
/// Short form for table headers ("0.94").
std::string format_short(double v);

void write_text(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

/// Flat "key = value" text; '#' starts a comment.
std::map<std::string, std::string> parse_kv(std::string_view text);
std::string format_kv(const std::map<std::string, std::string>& kv);

std::string curve_csv(const RenyiCurve& curve);
std::string spectrum_csv(const EntanglementSpectrum& spec);
/// Accepts "index,lambda" rows (header optional) or one value per line.
EntanglementSpectrum parse_spectrum_csv(std::string_view text);

/// Table layout: header row and first column hold the parameter values; a cell
/// is "N" (no crossing, and the diagonal), "I" (identical curves) or the
/// crossing orders rounded to `decimals`, joined by ';'.
std::string crossing_matrix_csv(const CrossingMatrix& m, const std::string& param, int decimals = 1);

nlohmann::json to_json(const CrossingRecord& r);
nlohmann::json to_json(const CrossingMatrix& m);
nlohmann::json to_json(const CriticalBracket& b);
nlohmann::json to_json(const SweepResult& r, bool include_matrices = false);
nlohmann::json to_json(const FssResult& r);
nlohmann::json to_json(const ModelSpec& spec);
nlohmann::json to_json(const std::vector<ExcitedComparison>& rows);

std::string fss_csv(const FssResult& r);
std::string derivative_csv(const DerivativeTable& t, const std::string& param);
std::string excited_csv(const std::vector<ExcitedComparison>& rows, const std::string& param);

}  // namespace ere::io
