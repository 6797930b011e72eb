#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "credsift/geostats.hpp"

using namespace credsift;

namespace {

Country square(std::string id, double lat0, double lon0, double size) {
  Country c;
  c.id = std::move(id);
  c.polygons.push_back(Polygon{{Ring{{lat0, lon0},
                                     {lat0, lon0 + size},
                                     {lat0 + size, lon0 + size},
                                     {lat0 + size, lon0},
                                     {lat0, lon0}}}});
  return c;
}

// Two unit squares sharing the meridian lon = 1.
CountryBoundaries twin_squares() {
  return CountryBoundaries({square("AA", 0, 0, 1), square("BB", 0, 1, 1)});
}

CountryTable twin_table() {
  CountryTable t;
  t.add("AA", "Left");
  t.add("BB", "Right");
  t.add("CC", "Right");
  return t;
}

}  // namespace

TEST(Haversine, KnownDistances) {
  EXPECT_EQ(haversine_km({10, 20}, {10, 20}), 0.0);
  // One degree of latitude.
  EXPECT_NEAR(haversine_km({0, 0}, {1, 0}), kEarthRadiusKm * std::numbers::pi / 180.0, 1e-9);
  // Quarter of the equator.
  EXPECT_NEAR(haversine_km({0, 0}, {0, 90}), kEarthRadiusKm * std::numbers::pi / 2.0, 1e-6);
  EXPECT_NEAR(haversine_km({0, 0}, {0, 1}), haversine_km({0, 1}, {0, 0}), 1e-12);
}

TEST(Boundaries, PointInPolygon) {
  auto b = twin_squares();
  ASSERT_NE(b.locate({0.5, 0.5}), nullptr);
  EXPECT_EQ(b.locate({0.5, 0.5})->id, "AA");
  EXPECT_EQ(b.locate({0.5, 1.5})->id, "BB");
  EXPECT_EQ(b.locate({5, 5}), nullptr);
}

TEST(Boundaries, HolesAreExcluded) {
  Country c = square("RING", 0, 0, 4);
  c.polygons[0].rings.push_back(Ring{{1, 1}, {1, 3}, {3, 3}, {3, 1}, {1, 1}});
  CountryBoundaries b({c});
  EXPECT_NE(b.locate({0.5, 0.5}), nullptr);
  EXPECT_EQ(b.locate({2, 2}), nullptr);
}

TEST(Boundaries, ParseGeoJson) {
  std::istringstream in(R"({"type":"FeatureCollection","features":[
    {"type":"Feature","properties":{"ISO_A2":"AA"},
     "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]}},
    {"type":"Feature","properties":{"name":"Twins"},
     "geometry":{"type":"MultiPolygon","coordinates":[
        [[[10,10],[11,10],[11,11],[10,11],[10,10]]],
        [[[20,20],[21,20],[21,21],[20,21],[20,20]]]]}}]})");
  auto b = CountryBoundaries::parse_geojson(in);
  ASSERT_EQ(b.countries().size(), 2u);
  // GeoJSON positions are [lon, lat].
  EXPECT_EQ(b.locate({0.5, 0.5})->id, "AA");
  EXPECT_EQ(b.locate({20.5, 20.5})->id, "Twins");
  EXPECT_EQ(b.locate({15, 15}), nullptr);

  std::istringstream bad("{\"type\":\"Feature\"}");
  EXPECT_THROW(CountryBoundaries::parse_geojson(bad), DataError);
  std::istringstream junk("not json");
  EXPECT_THROW(CountryBoundaries::parse_geojson(junk), DataError);
  std::istringstream line(R"({"type":"FeatureCollection","features":[
    {"properties":{"id":"L"},"geometry":{"type":"LineString","coordinates":[[0,0],[1,1]]}}]})");
  EXPECT_THROW(CountryBoundaries::parse_geojson(line), DataError);
}

TEST(Boundaries, BundledWorldFile) {
  auto b = CountryBoundaries::load(std::string(CREDSIFT_DATA_DIR) + "/world_simplified.geojson");
  EXPECT_EQ(b.countries().size(), 16u);
  EXPECT_EQ(b.locate({48.85, 2.35})->id, "FR");
  EXPECT_EQ(b.locate({52.52, 13.40})->id, "DE");
  EXPECT_EQ(b.locate({40.0, -100.0})->id, "US");
  EXPECT_EQ(b.locate({0.0, -30.0}), nullptr);  // mid-Atlantic
  auto t = CountryTable::load(std::string(CREDSIFT_DATA_DIR) + "/continents.csv");
  for (const auto& c : b.countries()) EXPECT_TRUE(t.known(c.id)) << c.id;
  EXPECT_THROW(CountryBoundaries::load("/nonexistent.geojson"), IoError);
}

TEST(RecentMode, MostFrequentOfLastTen) {
  std::vector<std::string> h{"BB", "AA", "BB", "AA", "AA"};
  EXPECT_EQ(recent_mode(h), "AA");
  // Ties go to the most recent.
  std::vector<std::string> tie{"BB", "AA", "AA", "BB"};
  EXPECT_EQ(recent_mode(tie), "BB");
  // Only the newest ten count.
  std::vector<std::string> long_h(10, "BB");
  for (int i = 0; i < 20; ++i) long_h.push_back("AA");
  EXPECT_EQ(recent_mode(long_h), "BB");
  EXPECT_EQ(recent_mode(std::vector<std::string>{}), std::nullopt);
}

TEST(AssignCountry, BorderOverrideFixture) {
  auto b = twin_squares();
  // 0.001 degrees of longitude from the shared border: about 0.11 km.
  GeoPoint near{0.5, 0.999};
  std::vector<std::string> history{"BB", "BB", "AA", "BB", "BB", "AA", "BB", "BB", "AA", "BB"};
  EXPECT_EQ(assign_country(near, b, history), "BB");
  // Without history the polygon wins.
  EXPECT_EQ(assign_country(near, b, {}), "AA");
  // Far from any foreign border the polygon wins even with history.
  EXPECT_EQ(assign_country({0.5, 0.2}, b, history), "AA");
  // A zero epsilon disables the override.
  EXPECT_EQ(assign_country(near, b, history, 0.0), "AA");
  // Just outside every country but near one: history decides.
  EXPECT_EQ(assign_country({1.0005, 0.5}, b, history), "BB");
  EXPECT_EQ(assign_country({30, 30}, b, history), std::nullopt);
  EXPECT_THROW(assign_country({95, 0}, b, {}), std::invalid_argument);
  EXPECT_THROW(assign_country(near, b, {}, -1.0), std::invalid_argument);
}

TEST(AssignCountry, EpsilonIsKilometres) {
  auto b = twin_squares();
  // 0.05 degrees at the equator is about 5.56 km.
  GeoPoint p{0.5, 0.95};
  std::vector<std::string> history{"BB"};
  EXPECT_EQ(assign_country(p, b, history, 5.0), "AA");
  EXPECT_EQ(assign_country(p, b, history, 6.0), "BB");
}

TEST(ContinentTable, ParseCsv) {
  std::istringstream in("country,continent\nFR,Europe\r\nJP,Asia\n");
  auto t = CountryTable::parse_csv(in);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(*t.continent("FR"), "Europe");
  EXPECT_EQ(t.continent("XX"), nullptr);
  std::istringstream bad("FR\n");
  EXPECT_THROW(CountryTable::parse_csv(bad), DataError);
}

TEST(Aggregate, ExclusionBelowMinimum) {
  std::vector<RegionRecord> records;
  for (int i = 0; i < 24; ++i) records.push_back({"AA", Verdict::Credible});
  for (int i = 0; i < 25; ++i) records.push_back({"BB", Verdict::NotCredible});
  records.push_back({std::nullopt, Verdict::Credible});
  records.push_back({"ZZ", Verdict::Credible});  // unknown country
  auto t = twin_table();
  auto rep = aggregate(records, RegionLevel::Country, t);
  ASSERT_EQ(rep.regions.size(), 1u);
  EXPECT_EQ(rep.regions[0].region, "BB");
  EXPECT_EQ(rep.excluded_records, 24u);
  EXPECT_EQ(rep.unassigned_records, 2u);
  // Lowering the minimum brings the small region back.
  EXPECT_EQ(aggregate(records, RegionLevel::Country, t, 24).regions.size(), 2u);
}

TEST(Aggregate, PercentagesAndContinents) {
  std::vector<RegionRecord> records;
  for (int i = 0; i < 30; ++i) records.push_back({"BB", Verdict::Credible});
  for (int i = 0; i < 40; ++i) records.push_back({"CC", Verdict::NotCredible});
  for (int i = 0; i < 30; ++i) records.push_back({"CC", Verdict::NotCredible});
  auto t = twin_table();
  auto rep = aggregate(records, RegionLevel::Continent, t);
  ASSERT_EQ(rep.regions.size(), 1u);
  EXPECT_EQ(rep.regions[0].region, "Right");
  EXPECT_EQ(rep.regions[0].total(), 100u);
  EXPECT_EQ(rep.regions[0].credible_pct, 30.0);
  EXPECT_EQ(rep.regions[0].not_credible_pct, 70.0);

  std::ostringstream csv;
  write_stats_csv(csv, rep);
  EXPECT_EQ(csv.str(),
            "region,credible,not_credible,total,credible_pct,not_credible_pct\n"
            "Right,30,70,100,30,70\n");
}

TEST(Aggregate, PercentSumIdentityProperty) {
  std::mt19937_64 rng(8);
  auto t = twin_table();
  const char* ids[] = {"AA", "BB", "CC"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RegionRecord> records;
    std::size_t n = rng() % 400;
    for (std::size_t i = 0; i < n; ++i)
      records.push_back({ids[rng() % 3], rng() % 3 == 0 ? Verdict::Credible : Verdict::NotCredible});
    for (auto level : {RegionLevel::Country, RegionLevel::Continent}) {
      auto rep = aggregate(records, level, t, 1 + rng() % 60);
      std::size_t kept = 0;
      for (const auto& s : rep.regions) {
        EXPECT_NEAR(s.credible_pct + s.not_credible_pct, 100.0, 1e-9);
        EXPECT_GE(s.total(), 1u);
        kept += s.total();
      }
      EXPECT_EQ(kept + rep.excluded_records + rep.unassigned_records, n);
      for (std::size_t i = 1; i < rep.regions.size(); ++i)
        EXPECT_GE(rep.regions[i - 1].total(), rep.regions[i].total());
    }
  }
}

TEST(Aggregate, MergeEqualsSinglePass) {
  std::mt19937_64 rng(9);
  auto t = twin_table();
  std::vector<RegionRecord> records;
  const char* ids[] = {"AA", "BB", "CC", "ZZ"};
  for (int i = 0; i < 300; ++i) {
    std::optional<std::string> country;
    if (i % 7 != 0) country = ids[rng() % 4];
    records.push_back({country, rng() % 2 ? Verdict::Credible : Verdict::NotCredible});
  }
  RegionCounter a(RegionLevel::Country, t), b(RegionLevel::Country, t);
  for (std::size_t i = 0; i < records.size(); ++i) (i % 2 ? a : b).add(records[i]);
  a.merge(b);
  auto merged = a.report(1), whole = aggregate(records, RegionLevel::Country, t, 1);
  ASSERT_EQ(merged.regions.size(), whole.regions.size());
  for (std::size_t i = 0; i < merged.regions.size(); ++i) {
    EXPECT_EQ(merged.regions[i].region, whole.regions[i].region);
    EXPECT_EQ(merged.regions[i].credible_count, whole.regions[i].credible_count);
  }
  EXPECT_EQ(merged.unassigned_records, whole.unassigned_records);
}

TEST(ClusterColor, Anchors) {
  EXPECT_EQ(cluster_color(0, 0), (Rgb{255, 255, 255}));
  EXPECT_EQ(cluster_color(4, 4), (Rgb{255, 255, 255}));
  EXPECT_EQ(cluster_color(5, 0), (Rgb{0, 255, 0}));
  EXPECT_EQ(cluster_color(0, 3), (Rgb{255, 0, 0}));
  // (3 - 1) / 4 = 0.5, 255 * 0.5 = 127.5 rounds to 128.
  EXPECT_EQ(cluster_color(3, 1), (Rgb{128, 255, 128}));
  EXPECT_EQ(to_hex(cluster_color(1, 3)), "#ff8080");
}

TEST(Clusters, GridAndCentroids) {
  using L = SentimentLabel;
  std::vector<SentimentPoint> pts{{{1, 1}, L::Positive},
                                  {{3, 3}, L::Positive},
                                  {{2, 2}, L::Neutral},
                                  {{-1, -1}, L::Negative}};
  auto cs = cluster_points(pts, 5.0);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].cell, (CellIndex{-1, -1}));
  EXPECT_EQ(cs[0].color, (Rgb{255, 0, 0}));
  EXPECT_EQ(cs[1].member_count, 3u);
  EXPECT_EQ(cs[1].positive, 2u);
  EXPECT_EQ(cs[1].neutral, 1u);
  EXPECT_DOUBLE_EQ(cs[1].centroid.lat, 2.0);
  EXPECT_EQ(cs[1].color, (Rgb{0, 255, 0}));
  EXPECT_THROW(cluster_points(pts, 0.0), std::invalid_argument);

  auto gj = clusters_geojson(cs);
  EXPECT_EQ(gj["type"], "FeatureCollection");
  EXPECT_EQ(gj["features"].size(), 2u);
}

TEST(Heatmap, CountConservationAndStraddling) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  std::vector<VerdictPoint> pts;
  std::size_t credible = 0;
  for (int i = 0; i < 2000; ++i) {
    Verdict v = rng() % 3 == 0 ? Verdict::Credible : Verdict::NotCredible;
    credible += v == Verdict::Credible;
    // Every tenth point sits exactly on a cell edge.
    GeoPoint g = i % 10 == 0 ? GeoPoint{5.0 * static_cast<double>(rng() % 30) - 75.0,
                                        5.0 * static_cast<double>(rng() % 60) - 150.0}
                             : GeoPoint{lat(rng), lon(rng)};
    pts.push_back({g, v});
  }
  for (double size : {0.5, 1.0, 5.0, 7.5}) {
    EXPECT_EQ(heatmap(pts, size, HeatmapClass::Both).total(), pts.size());
    EXPECT_EQ(heatmap(pts, size, HeatmapClass::Credible).total(), credible);
    EXPECT_EQ(heatmap(pts, size, HeatmapClass::NotCredible).total(), pts.size() - credible);
  }
  // Edge points belong to the cell that starts at the edge.
  std::vector<VerdictPoint> edge{{{5.0, -5.0}, Verdict::NotCredible},
                                 {{4.999999, -5.000001}, Verdict::NotCredible}};
  auto g = heatmap(edge, 5.0);
  ASSERT_EQ(g.cells.size(), 2u);
  EXPECT_EQ(g.cells.count(CellIndex{1, -1}), 1u);
  EXPECT_EQ(g.cells.count(CellIndex{0, -2}), 1u);
  EXPECT_THROW(heatmap(edge, -1.0), std::invalid_argument);

  auto gj = heatmap_geojson(g);
  EXPECT_EQ(gj["features"].size(), 2u);
  std::size_t sum = 0;
  for (const auto& f : gj["features"]) sum += f["properties"]["count"].get<std::size_t>();
  EXPECT_EQ(sum, 2u);
}
