#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "credsift/errors.hpp"
#include "credsift/model.hpp"
#include "credsift/sentiment_label.hpp"

namespace credsift {

inline constexpr double kEarthRadiusKm = 6371.0088;
inline constexpr double kDefaultBorderEpsilonKm = 10.0;
inline constexpr std::size_t kDefaultMinRegionCount = 25;
inline constexpr std::size_t kBorderHistory = 10;
inline constexpr const char* kUnassigned = "Unassigned";

inline double haversine_km(GeoPoint a, GeoPoint b) {
  constexpr double rad = std::numbers::pi / 180.0;
  double dlat = (b.lat - a.lat) * rad;
  double dlon = (b.lon - a.lon) * rad;
  double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
             std::cos(a.lat * rad) * std::cos(b.lat * rad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

/// Distance from `p` to the segment a-b. The closest point is located in a
/// local equirectangular frame around `p`, then measured with haversine.
inline double segment_distance_km(GeoPoint p, GeoPoint a, GeoPoint b) {
  const double k = std::cos(p.lat * std::numbers::pi / 180.0);
  const double ax = (a.lon - p.lon) * k, ay = a.lat - p.lat;
  const double bx = (b.lon - p.lon) * k, by = b.lat - p.lat;
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? -(ax * dx + ay * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  GeoPoint c{a.lat + t * (b.lat - a.lat), a.lon + t * (b.lon - a.lon)};
  return haversine_km(p, c);
}

// ---------------------------------------------------------------------------
// Boundaries
// ---------------------------------------------------------------------------

using Ring = std::vector<GeoPoint>;

/// Outer ring followed by holes.
struct Polygon {
  std::vector<Ring> rings;
};

struct Country {
  std::string id;
  std::vector<Polygon> polygons;
  double min_lat = 90, max_lat = -90, min_lon = 180, max_lon = -180;
};

namespace detail {

inline bool ring_contains(const Ring& ring, GeoPoint p) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const auto& a = ring[i];
    const auto& b = ring[j];
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      double x = (b.lon - a.lon) * (p.lat - a.lat) / (b.lat - a.lat) + a.lon;
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

inline bool polygon_contains(const Polygon& poly, GeoPoint p) {
  if (poly.rings.empty() || !ring_contains(poly.rings[0], p)) return false;
  for (std::size_t h = 1; h < poly.rings.size(); ++h) {
    if (ring_contains(poly.rings[h], p)) return false;
  }
  return true;
}

inline Ring parse_ring(const nlohmann::json& j, const std::string& id) {
  if (!j.is_array() || j.size() < 4)
    throw DataError("country " + id + ": ring needs at least four positions");
  Ring ring;
  for (const auto& pos : j) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
      throw DataError("country " + id + ": malformed position");
    GeoPoint p{pos[1].get<double>(), pos[0].get<double>()};
    if (!p.valid()) throw DataError("country " + id + ": position out of range");
    ring.push_back(p);
  }
  return ring;
}

inline Polygon parse_polygon(const nlohmann::json& j, const std::string& id) {
  if (!j.is_array() || j.empty()) throw DataError("country " + id + ": empty polygon");
  Polygon poly;
  for (const auto& r : j) poly.rings.push_back(parse_ring(r, id));
  return poly;
}

}  // namespace detail

inline bool contains(const Country& c, GeoPoint p) {
  if (p.lat < c.min_lat || p.lat > c.max_lat || p.lon < c.min_lon || p.lon > c.max_lon) return false;
  return std::any_of(c.polygons.begin(), c.polygons.end(),
                     [&](const Polygon& poly) { return detail::polygon_contains(poly, p); });
}

inline double boundary_distance_km(const Country& c, GeoPoint p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& poly : c.polygons)
    for (const auto& ring : poly.rings)
      for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++)
        best = std::min(best, segment_distance_km(p, ring[j], ring[i]));
  return best;
}

/// Immutable country polygon index, safe to share between threads.
class CountryBoundaries {
 public:
  CountryBoundaries() = default;
  explicit CountryBoundaries(std::vector<Country> countries) : countries_(std::move(countries)) {
    for (auto& c : countries_) {
      for (const auto& poly : c.polygons)
        for (const auto& ring : poly.rings)
          for (const auto& p : ring) {
            c.min_lat = std::min(c.min_lat, p.lat);
            c.max_lat = std::max(c.max_lat, p.lat);
            c.min_lon = std::min(c.min_lon, p.lon);
            c.max_lon = std::max(c.max_lon, p.lon);
          }
    }
  }

  /// GeoJSON FeatureCollection of Polygon / MultiPolygon features. The
  /// country id is read from the `id` property (then `ISO_A2`, then `name`).
  static CountryBoundaries parse_geojson(std::istream& in) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("boundary file is not valid JSON: ") + e.what());
    }
    if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
        !doc["features"].is_array())
      throw DataError("boundary file must be a GeoJSON FeatureCollection");
    std::vector<Country> countries;
    for (const auto& f : doc["features"]) {
      const auto& props = f.contains("properties") && f["properties"].is_object()
                              ? f["properties"] : nlohmann::json::object();
      std::string id;
      for (const char* key : {"id", "ISO_A2", "name"}) {
        if (props.contains(key) && props[key].is_string()) {
          id = props[key].get<std::string>();
          break;
        }
      }
      if (id.empty()) throw DataError("boundary feature without an id property");
      if (!f.contains("geometry") || !f["geometry"].is_object())
        throw DataError("country " + id + ": missing geometry");
      const auto& g = f["geometry"];
      std::string type = g.value("type", "");
      if (!g.contains("coordinates")) throw DataError("country " + id + ": missing coordinates");
      Country c;
      c.id = id;
      if (type == "Polygon") {
        c.polygons.push_back(detail::parse_polygon(g["coordinates"], id));
      } else if (type == "MultiPolygon") {
        if (!g["coordinates"].is_array()) throw DataError("country " + id + ": bad MultiPolygon");
        for (const auto& p : g["coordinates"]) c.polygons.push_back(detail::parse_polygon(p, id));
      } else {
        throw DataError("country " + id + ": unsupported geometry '" + type + "'");
      }
      countries.push_back(std::move(c));
    }
    return CountryBoundaries(std::move(countries));
  }

  static CountryBoundaries load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open boundary file: " + path);
    return parse_geojson(in);
  }

  const std::vector<Country>& countries() const { return countries_; }

  /// First country whose polygons contain the point.
  const Country* locate(GeoPoint p) const {
    for (const auto& c : countries_) {
      if (contains(c, p)) return &c;
    }
    return nullptr;
  }

 private:
  std::vector<Country> countries_;
};

/// Most frequent id among the first ten entries (newest first); ties go to
/// the id seen most recently.
inline std::optional<std::string> recent_mode(std::span<const std::string> recent_countries) {
  auto n = std::min(recent_countries.size(), kBorderHistory);
  if (n == 0) return std::nullopt;
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < n; ++i) ++counts[recent_countries[i]];
  std::size_t best_count = 0;
  const std::string* best = nullptr;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = counts[recent_countries[i]];
    if (c > best_count) {
      best_count = c;
      best = &recent_countries[i];
    }
  }
  return *best;
}

/// Point-in-polygon country, except near a border: when the point lies within
/// `border_epsilon_km` of another country's boundary and the author has a
/// posting history, the history's most common country wins. nullopt means
/// Unassigned.
inline std::optional<std::string> assign_country(GeoPoint geo, const CountryBoundaries& boundaries,
                                                 std::span<const std::string> recent_countries,
                                                 double border_epsilon_km = kDefaultBorderEpsilonKm) {
  if (!(border_epsilon_km >= 0.0)) throw std::invalid_argument("border epsilon must be >= 0");
  if (!geo.valid()) throw std::invalid_argument("geo point out of range");
  const Country* home = boundaries.locate(geo);
  if (!recent_countries.empty()) {
    // Cheap reject: one degree of latitude is ~111 km.
    double margin = border_epsilon_km / 111.0 + 1e-9;
    double lon_margin = margin / std::max(0.01, std::cos(geo.lat * std::numbers::pi / 180.0));
    for (const auto& c : boundaries.countries()) {
      if (&c == home) continue;
      if (geo.lat < c.min_lat - margin || geo.lat > c.max_lat + margin ||
          geo.lon < c.min_lon - lon_margin || geo.lon > c.max_lon + lon_margin)
        continue;
      if (boundary_distance_km(c, geo) <= border_epsilon_km) return recent_mode(recent_countries);
    }
  }
  if (home) return home->id;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Region statistics
// ---------------------------------------------------------------------------

/// Known countries and their continents.
class CountryTable {
 public:
  void add(std::string country, std::string continent) {
    continent_of_[std::move(country)] = std::move(continent);
  }
  const std::string* continent(const std::string& country) const {
    auto it = continent_of_.find(country);
    return it == continent_of_.end() ? nullptr : &it->second;
  }
  bool known(const std::string& country) const { return continent_of_.count(country) != 0; }
  std::size_t size() const { return continent_of_.size(); }

  /// CSV with header `country,continent`.
  static CountryTable parse_csv(std::istream& in) {
    CountryTable t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      if (line_no == 1 && line == "country,continent") continue;
      auto comma = line.find(',');
      if (comma == std::string::npos || comma == 0 || comma + 1 == line.size())
        throw DataError("continent table line " + std::to_string(line_no) +
                        ": expected country,continent");
      t.add(line.substr(0, comma), line.substr(comma + 1));
    }
    return t;
  }

  static CountryTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open continent table: " + path);
    return parse_csv(in);
  }

 private:
  std::unordered_map<std::string, std::string> continent_of_;
};

enum class RegionLevel { Country, Continent };

struct RegionRecord {
  std::optional<std::string> country;  // nullopt = Unassigned
  Verdict verdict = Verdict::NotCredible;
};

struct RegionStats {
  std::string region;
  std::size_t credible_count = 0;
  std::size_t not_credible_count = 0;
  double credible_pct = 0.0;
  double not_credible_pct = 0.0;

  std::size_t total() const { return credible_count + not_credible_count; }
};

struct AggregateReport {
  std::vector<RegionStats> regions;  // total descending, then id
  std::size_t excluded_records = 0;  // in regions below the minimum count
  std::size_t unassigned_records = 0;
};

/// Mergeable per-region counts; merging is associative and commutative so
/// shards can be combined in any order.
class RegionCounter {
 public:
  RegionCounter(RegionLevel level, const CountryTable& table) : level_(level), table_(&table) {}

  void add(const RegionRecord& r) {
    const std::string* continent = r.country ? table_->continent(*r.country) : nullptr;
    if (!continent) {
      ++unassigned_;
      return;
    }
    auto& slot = counts_[level_ == RegionLevel::Country ? *r.country : *continent];
    (r.verdict == Verdict::Credible ? slot.first : slot.second) += 1;
  }

  void merge(const RegionCounter& other) {
    for (auto& [region, c] : other.counts_) {
      auto& slot = counts_[region];
      slot.first += c.first;
      slot.second += c.second;
    }
    unassigned_ += other.unassigned_;
  }

  AggregateReport report(std::size_t min_count) const {
    AggregateReport rep;
    rep.unassigned_records = unassigned_;
    for (auto& [region, c] : counts_) {
      std::size_t total = c.first + c.second;
      if (total < min_count) {
        rep.excluded_records += total;
        continue;
      }
      RegionStats s;
      s.region = region;
      s.credible_count = c.first;
      s.not_credible_count = c.second;
      s.credible_pct = 100.0 * static_cast<double>(c.first) / static_cast<double>(total);
      s.not_credible_pct = 100.0 * static_cast<double>(c.second) / static_cast<double>(total);
      rep.regions.push_back(std::move(s));
    }
    std::stable_sort(rep.regions.begin(), rep.regions.end(),
                     [](const RegionStats& a, const RegionStats& b) { return a.total() > b.total(); });
    return rep;
  }

 private:
  RegionLevel level_;
  const CountryTable* table_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts_;  // credible, not
  std::size_t unassigned_ = 0;
};

/// Credible / not-credible counts and percentages per region. Regions with
/// fewer than `min_count` records are left out; records whose country is
/// missing or unknown count as unassigned.
inline AggregateReport aggregate(std::span<const RegionRecord> records, RegionLevel level,
                                 const CountryTable& table,
                                 std::size_t min_count = kDefaultMinRegionCount) {
  RegionCounter counter(level, table);
  for (const auto& r : records) counter.add(r);
  return counter.report(min_count);
}

namespace detail {
inline std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}
}  // namespace detail

/// `region,credible,not_credible,total,credible_pct,not_credible_pct`
inline void write_stats_csv(std::ostream& out, const AggregateReport& rep) {
  out << "region,credible,not_credible,total,credible_pct,not_credible_pct\n";
  for (const auto& s : rep.regions) {
    out << s.region << ',' << s.credible_count << ',' << s.not_credible_count << ',' << s.total()
        << ',' << detail::shortest(s.credible_pct) << ',' << detail::shortest(s.not_credible_pct)
        << '\n';
  }
}

// ---------------------------------------------------------------------------
// Grid clustering and heatmaps
// ---------------------------------------------------------------------------

struct CellIndex {
  std::int64_t lat_idx = 0;
  std::int64_t lon_idx = 0;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

inline CellIndex cell_of(GeoPoint p, double cell_size_deg) {
  return {static_cast<std::int64_t>(std::floor(p.lat / cell_size_deg)),
          static_cast<std::int64_t>(std::floor(p.lon / cell_size_deg))};
}

struct Rgb {
  int r = 255, g = 255, b = 255;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline std::string to_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

/// White when positives and negatives balance (or there are none); otherwise
/// white blended toward pure green (net positive) or pure red (net negative)
/// by |pos - neg| / (pos + neg), channels rounded to nearest.
inline Rgb cluster_color(std::size_t positive, std::size_t negative) {
  if (positive == negative) return {};
  double t = static_cast<double>(positive > negative ? positive - negative : negative - positive) /
             static_cast<double>(positive + negative);
  int fade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  return positive > negative ? Rgb{fade, 255, fade} : Rgb{255, fade, fade};
}

struct SentimentPoint {
  GeoPoint geo;
  SentimentLabel sentiment = SentimentLabel::Neutral;
};

struct Cluster {
  CellIndex cell;
  GeoPoint centroid;
  std::size_t member_count = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t neutral = 0;
  Rgb color;
};

/// Fixed-grid clusters ordered by cell index.
inline std::vector<Cluster> cluster_points(std::span<const SentimentPoint> records,
                                           double cell_size_deg) {
  if (!(cell_size_deg > 0.0)) throw std::invalid_argument("cell size must be positive");
  struct Acc {
    double lat = 0, lon = 0;
    Cluster c;
  };
  std::map<CellIndex, Acc> cells;
  for (const auto& r : records) {
    auto idx = cell_of(r.geo, cell_size_deg);
    auto& a = cells[idx];
    a.c.cell = idx;
    a.lat += r.geo.lat;
    a.lon += r.geo.lon;
    ++a.c.member_count;
    switch (polarity(r.sentiment)) {
      case 1: ++a.c.positive; break;
      case -1: ++a.c.negative; break;
      default: ++a.c.neutral; break;
    }
  }
  std::vector<Cluster> out;
  out.reserve(cells.size());
  for (auto& [idx, a] : cells) {
    double n = static_cast<double>(a.c.member_count);
    a.c.centroid = {a.lat / n, a.lon / n};
    a.c.color = cluster_color(a.c.positive, a.c.negative);
    out.push_back(a.c);
  }
  return out;
}

enum class HeatmapClass { NotCredible, Credible, Both };

struct HeatCell {
  std::size_t credible = 0;
  std::size_t not_credible = 0;
  std::size_t count() const { return credible + not_credible; }
};

struct HeatmapGrid {
  double cell_size_deg = 1.0;
  HeatmapClass which = HeatmapClass::NotCredible;
  std::map<CellIndex, HeatCell> cells;

  std::size_t total() const {
    std::size_t t = 0;
    for (auto& [_, c] : cells) t += c.count();
    return t;
  }
};

struct VerdictPoint {
  GeoPoint geo;
  Verdict verdict = Verdict::NotCredible;
};

/// Per-cell counts of the selected verdict class; cells without a selected
/// record are absent.
inline HeatmapGrid heatmap(std::span<const VerdictPoint> records, double cell_size_deg,
                           HeatmapClass which = HeatmapClass::NotCredible) {
  if (!(cell_size_deg > 0.0)) throw std::invalid_argument("cell size must be positive");
  HeatmapGrid grid;
  grid.cell_size_deg = cell_size_deg;
  grid.which = which;
  for (const auto& r : records) {
    bool credible = r.verdict == Verdict::Credible;
    if (which == HeatmapClass::NotCredible && credible) continue;
    if (which == HeatmapClass::Credible && !credible) continue;
    auto& cell = grid.cells[cell_of(r.geo, cell_size_deg)];
    (credible ? cell.credible : cell.not_credible) += 1;
  }
  return grid;
}

// ---------------------------------------------------------------------------
// GeoJSON / HTML export
// ---------------------------------------------------------------------------

inline nlohmann::json clusters_geojson(std::span<const Cluster> clusters) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& c : clusters) {
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", {c.centroid.lon, c.centroid.lat}}}},
        {"properties",
         {{"count", c.member_count},
          {"positive", c.positive},
          {"negative", c.negative},
          {"neutral", c.neutral},
          {"color", to_hex(c.color)}}},
    });
  }
  return {{"type", "FeatureCollection"}, {"features", features}};
}

inline nlohmann::json heatmap_geojson(const HeatmapGrid& grid) {
  nlohmann::json features = nlohmann::json::array();
  const double s = grid.cell_size_deg;
  for (const auto& [idx, cell] : grid.cells) {
    double lat0 = static_cast<double>(idx.lat_idx) * s, lon0 = static_cast<double>(idx.lon_idx) * s;
    double lat1 = lat0 + s, lon1 = lon0 + s;
    features.push_back({
        {"type", "Feature"},
        {"geometry",
         {{"type", "Polygon"},
          {"coordinates",
           {{{lon0, lat0}, {lon1, lat0}, {lon1, lat1}, {lon0, lat1}, {lon0, lat0}}}}}},
        {"properties",
         {{"count", cell.count()}, {"credible", cell.credible}, {"not_credible", cell.not_credible}}},
    });
  }
  return {{"type", "FeatureCollection"}, {"features", features}};
}

/// Static page that draws a FeatureCollection on a canvas; no external assets.
inline void write_geojson_html(std::ostream& out, const nlohmann::json& collection,
                               const std::string& title) {
  std::string data = collection.dump();
  // Keep the payload from terminating the script element.
  for (std::size_t pos = 0; (pos = data.find("</", pos)) != std::string::npos; pos += 3)
    data.replace(pos, 2, "<\\/");
  out << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" << title
      << "</title>\n<style>body{margin:0;background:#1d2733;color:#ddd;font:13px sans-serif}"
         "canvas{display:block}</style></head><body>\n"
      << "<canvas id=\"map\" width=\"1440\" height=\"720\"></canvas>\n<script>\nconst data = "
      << data << ";\n"
      << R"JS(const cv = document.getElementById('map'), g = cv.getContext('2d');
const X = lon => (lon + 180) / 360 * cv.width, Y = lat => (90 - lat) / 180 * cv.height;
let max = 1;
for (const f of data.features) max = Math.max(max, f.properties.count || 0);
for (const f of data.features) {
  const p = f.properties, geom = f.geometry;
  if (geom.type === 'Point') {
    const [lon, lat] = geom.coordinates;
    g.beginPath();
    g.arc(X(lon), Y(lat), 4 + 16 * Math.sqrt(p.count / max), 0, 2 * Math.PI);
    g.fillStyle = p.color || '#ffffff';
    g.globalAlpha = 0.8; g.fill(); g.globalAlpha = 1; g.strokeStyle = '#000'; g.stroke();
  } else if (geom.type === 'Polygon') {
    const ring = geom.coordinates[0];
    g.beginPath();
    ring.forEach(([lon, lat], i) => i ? g.lineTo(X(lon), Y(lat)) : g.moveTo(X(lon), Y(lat)));
    g.fillStyle = 'rgba(220,30,30,' + (0.15 + 0.85 * p.count / max) + ')';
    g.fill();
  }
}
</script>
</body></html>
)JS";
}

}  // namespace credsift
