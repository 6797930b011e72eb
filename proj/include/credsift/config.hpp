#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "credsift/dedup.hpp"
#include "credsift/errors.hpp"
#include "credsift/geostats.hpp"
#include "credsift/scoring.hpp"

namespace credsift {

/// Environment variable naming a config file to use when none is given.
inline constexpr const char* kConfigEnvVar = "CREDSIFT_CONFIG";

/// Settings for an end-to-end run. Empty paths mean "use the built-in
/// default" (topics, lexicons) or "not used" (model).
struct PipelineConfig {
  std::set<std::string> languages = {"en", "de", "fr", "el", "tr", "it"};
  bool require_geo = true;
  std::string topics;  // path, "default" or "none"
  std::string stopwords;
  std::string lexicon;
  std::string boundaries;
  std::string continents;
  std::string model;

  DedupMode dedup_mode = DedupMode::Offline;
  DedupSettings dedup;
  double credible_threshold = 0.6;
  FormulaWeights weights;

  std::size_t min_region_count = kDefaultMinRegionCount;
  double border_epsilon_km = kDefaultBorderEpsilonKm;
  double cell_size_deg = 5.0;
  HeatmapClass heatmap_class = HeatmapClass::Both;

  unsigned threads = 1;
  std::size_t queue_capacity = 256;
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto f = s.find_first_not_of(" \t\r");
  if (f == std::string_view::npos) return {};
  auto l = s.find_last_not_of(" \t\r");
  return std::string(s.substr(f, l - f + 1));
}

inline double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw DataError("config: bad number for '" + key + "': " + v);
}

inline unsigned long long parse_count(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    auto n = std::stoull(v, &used);
    if (used == v.size() && v.find('-') == std::string::npos) return n;
  } catch (const std::exception&) {
  }
  throw DataError("config: bad count for '" + key + "': " + v);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw DataError("config: '" + key + "' must be true or false");
}

inline HeatmapClass parse_heatmap_class(std::string_view s) {
  if (s == "not_credible") return HeatmapClass::NotCredible;
  if (s == "credible") return HeatmapClass::Credible;
  if (s == "both") return HeatmapClass::Both;
  throw DataError("unknown heatmap class '" + std::string(s) + "'");
}

}  // namespace detail

/// Flat `key=value` file, `#` comments. Weight keys (`w_r`, ...,
/// `enforce_unit_sum`) are passed through to FormulaWeights. Relative paths
/// are resolved against `base_dir` when given.
inline PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {}) {
  PipelineConfig c;
  std::ostringstream weight_lines;
  std::string line;
  int line_no = 0;
  auto path_value = [&](const std::string& v) {
    if (v.empty() || v == "default" || v == "none") return v;
    std::filesystem::path p(v);
    return (p.is_relative() && !base_dir.empty() ? base_dir / p : p).string();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (detail::trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(line_no) + ": missing '='");
    std::string key = detail::trim(std::string_view(line).substr(0, eq));
    std::string val = detail::trim(std::string_view(line).substr(eq + 1));

    if (key.starts_with("w_") || key == "enforce_unit_sum") {
      weight_lines << key << '=' << val << '\n';
    } else if (key == "languages") {
      c.languages.clear();
      std::istringstream ls(val);
      std::string lang;
      while (std::getline(ls, lang, ',')) {
        lang = detail::trim(lang);
        if (!lang.empty()) c.languages.insert(lang);
      }
    } else if (key == "require_geo") {
      c.require_geo = detail::parse_bool(key, val);
    } else if (key == "topics") {
      c.topics = path_value(val);
    } else if (key == "stopwords") {
      c.stopwords = path_value(val);
    } else if (key == "lexicon") {
      c.lexicon = path_value(val);
    } else if (key == "boundaries") {
      c.boundaries = path_value(val);
    } else if (key == "continents") {
      c.continents = path_value(val);
    } else if (key == "model") {
      c.model = path_value(val);
    } else if (key == "dedup_mode") {
      try {
        c.dedup_mode = parse_dedup_mode(val);
      } catch (const std::invalid_argument& e) {
        throw DataError(std::string("config: ") + e.what());
      }
    } else if (key == "realtime_threshold") {
      c.dedup.realtime_threshold = detail::parse_real(key, val);
    } else if (key == "offline_threshold") {
      c.dedup.offline_threshold = detail::parse_real(key, val);
    } else if (key == "credible_threshold") {
      c.credible_threshold = detail::parse_real(key, val);
    } else if (key == "min_region_count") {
      c.min_region_count = detail::parse_count(key, val);
    } else if (key == "border_epsilon_km") {
      c.border_epsilon_km = detail::parse_real(key, val);
    } else if (key == "cell_size_deg") {
      c.cell_size_deg = detail::parse_real(key, val);
    } else if (key == "heatmap_class") {
      c.heatmap_class = detail::parse_heatmap_class(val);
    } else if (key == "threads") {
      c.threads = static_cast<unsigned>(detail::parse_count(key, val));
    } else if (key == "queue_capacity") {
      c.queue_capacity = detail::parse_count(key, val);
    } else {
      throw DataError("config: unknown key '" + key + "'");
    }
  }
  std::istringstream ws(weight_lines.str());
  c.weights = FormulaWeights::parse(ws);
  return c;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  return parse_config(in, path.parent_path());
}

/// The file named by CREDSIFT_CONFIG, if set.
inline std::optional<std::filesystem::path> config_from_env() {
  const char* v = std::getenv(kConfigEnvVar);
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

}  // namespace credsift
