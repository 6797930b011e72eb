#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "credsift/classifier.hpp"
#include "credsift/model.hpp"

// Seeded generators for benchmarks, fixtures and demos. Output depends only
// on the arguments.

namespace credsift::synthetic {

namespace detail {

inline constexpr std::array<const char*, 96> kVocabulary{
    "the", "a", "of", "to", "in", "and", "is", "on", "for", "with", "at", "from", "by", "this",
    "that", "we", "they", "our", "people", "city", "news", "today", "report", "reports",
    "police", "government", "minister", "president", "security", "meeting", "summit",
    "statement", "border", "refugees", "migrants", "attack", "explosion", "victims", "civilians",
    "children", "peace", "ceasefire", "solidarity", "nato", "eu", "germany", "france", "italy",
    "greece", "turkey", "spain", "syria", "war", "fighting", "terror", "bombing", "asylum",
    "support", "help", "safe", "great", "good", "terrible", "sad", "fear", "crisis", "thank",
    "breaking", "update", "official", "confirmed", "unconfirmed", "source", "video", "photos",
    "live", "latest", "streets", "airport", "station", "downtown", "hospital", "injured",
    "several", "hundreds", "thousands", "protest", "incident", "silly", "amazing", "inspiring",
    "watch", "share", "please", "everyone", "night"};

inline constexpr std::array<const char*, 6> kHashtags{"#breaking", "#news", "#peace",
                                                      "#refugees", "#attack", "#solidarity"};

struct Anchor {
  const char* country;
  double lat, lon, jitter;
};

// Interior points of the bundled boundary file, with a jitter that keeps
// samples inside their country.
inline constexpr std::array<Anchor, 16> kAnchors{{
    {"US", 39.0, -98.0, 3.0}, {"MX", 22.0, -102.0, 1.5}, {"CA", 52.0, -100.0, 2.0},
    {"GB", 52.5, -1.5, 0.8},  {"IE", 53.0, -8.0, 0.5},   {"FR", 46.5, 2.5, 1.5},
    {"DE", 51.0, 10.0, 1.5},  {"IT", 42.8, 12.8, 0.5},   {"ES", 40.0, -3.7, 1.2},
    {"GR", 39.5, 21.8, 0.5},  {"TR", 39.0, 35.0, 1.5},   {"IN", 22.0, 79.0, 2.0},
    {"JP", 36.0, 138.5, 0.7}, {"AU", -25.0, 134.0, 3.0}, {"BR", -12.0, -50.0, 3.0},
    {"ZA", -29.0, 24.0, 1.5},
}};

using credsift::detail::uniform_index;
using credsift::detail::unit_uniform;

inline std::string sentence(std::mt19937_64& rng, std::size_t min_words, std::size_t max_words) {
  std::size_t n = min_words + uniform_index(rng, max_words - min_words + 1);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += kVocabulary[uniform_index(rng, kVocabulary.size())];
  }
  return s;
}

/// Replaces, inserts or deletes a few words.
inline std::string perturb(std::mt19937_64& rng, const std::string& text) {
  std::vector<std::string> words;
  std::string w;
  for (char c : text) {
    if (c == ' ') {
      words.push_back(std::move(w));
      w.clear();
    } else {
      w += c;
    }
  }
  words.push_back(std::move(w));
  std::size_t edits = 1 + uniform_index(rng, 2);
  for (std::size_t e = 0; e < edits && words.size() > 2; ++e) {
    std::size_t at = uniform_index(rng, words.size());
    switch (uniform_index(rng, 3)) {
      case 0: words[at] = kVocabulary[uniform_index(rng, kVocabulary.size())]; break;
      case 1: words.insert(words.begin() + static_cast<long>(at), kVocabulary[uniform_index(rng, kVocabulary.size())]); break;
      default: words.erase(words.begin() + static_cast<long>(at)); break;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

}  // namespace detail

/// Tweet-like texts of 6 to 14 words (about 70 characters, typical of the
/// 140-character era). About one in ten is a retweet or a light edit of an
/// earlier text.
inline std::vector<std::string> corpus(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && detail::unit_uniform(rng) < 0.1) {
      const std::string& src = out[detail::uniform_index(rng, i)];
      out.push_back(detail::unit_uniform(rng) < 0.5
                        ? "RT @user" + std::to_string(detail::uniform_index(rng, 1000)) + ": " + src
                        : detail::perturb(rng, src));
      continue;
    }
    std::string s = detail::sentence(rng, 6, 14);
    if (detail::unit_uniform(rng) < 0.3) s += std::string(" ") + detail::kHashtags[detail::uniform_index(rng, detail::kHashtags.size())];
    out.push_back(std::move(s));
  }
  return out;
}

struct RecordOptions {
  Timestamp start = parse_timestamp("2016-03-22T08:00:00Z");
  std::size_t authors = 40;
  double malformed_rate = 0.02;
  double no_geo_rate = 0.05;
  double foreign_language_rate = 0.04;  // outside the collected set
  double retweet_rate = 0.1;
};

/// JSON-lines ingest records (see docs/schema.md), including a share of
/// malformed lines, posts without geolocation, uncollected languages and
/// retweets of earlier posts.
inline std::vector<std::string> records(std::size_t n, std::uint64_t seed,
                                        const RecordOptions& opt = {}) {
  using detail::uniform_index;
  using detail::unit_uniform;
  std::mt19937_64 rng(seed);

  struct Author {
    nlohmann::json json;
    std::size_t home;
  };
  std::vector<Author> authors;
  for (std::size_t a = 0; a < opt.authors; ++a) {
    auto created = kPlatformLaunch + std::chrono::days(30 + uniform_index(rng, 3000));
    authors.push_back({{{"id", "u" + std::to_string(a)},
                        {"has_location", unit_uniform(rng) < 0.7},
                        {"has_description", unit_uniform(rng) < 0.8},
                        {"has_url", unit_uniform(rng) < 0.4},
                        {"has_geo", unit_uniform(rng) < 0.5},
                        {"is_verified", unit_uniform(rng) < 0.1},
                        {"creation_date", format_timestamp(created)},
                        {"followers_no", 50 + static_cast<std::int64_t>(uniform_index(rng, 20000))}},
                       uniform_index(rng, detail::kAnchors.size())});
  }

  std::vector<std::string> texts;
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (unit_uniform(rng) < opt.malformed_rate) {
      out.push_back(R"({"id": "t)" + std::to_string(i) + R"(", "text": )");
      continue;
    }
    const Author& au = authors[uniform_index(rng, authors.size())];
    std::string text;
    if (!texts.empty() && unit_uniform(rng) < opt.retweet_rate) {
      text = "RT @" + au.json["id"].get<std::string>() + ": " + texts[uniform_index(rng, texts.size())];
    } else {
      text = detail::sentence(rng, 8, 20);
      if (unit_uniform(rng) < 0.3)
        text += std::string(" ") + detail::kHashtags[uniform_index(rng, detail::kHashtags.size())];
      texts.push_back(text);
    }
    auto created = opt.start + std::chrono::minutes(5 * i + uniform_index(rng, 5));
    std::int64_t followers = au.json["followers_no"].get<std::int64_t>();
    std::int64_t reach = std::max<std::int64_t>(1, followers * 3 / 100);

    nlohmann::json j;
    j["id"] = "t" + std::to_string(i);
    j["text"] = text;
    j["author_id"] = au.json["id"];
    j["retweets_no"] = static_cast<std::int64_t>(uniform_index(rng, 2 * static_cast<std::size_t>(reach)));
    j["favorites_no"] = static_cast<std::int64_t>(uniform_index(rng, 2 * static_cast<std::size_t>(reach)));
    j["creation_date"] = format_timestamp(created);
    j["snapshot_time"] = format_timestamp(created + std::chrono::minutes(30));
    double r = unit_uniform(rng);
    j["language"] = r < opt.foreign_language_rate ? "es" : (r < 0.85 ? "en" : (r < 0.93 ? "de" : "fr"));
    if (unit_uniform(rng) >= opt.no_geo_rate) {
      // Mostly at home, sometimes elsewhere.
      std::size_t where = unit_uniform(rng) < 0.8 ? au.home : uniform_index(rng, detail::kAnchors.size());
      const auto& a = detail::kAnchors[where];
      j["geo"] = {{"lat", a.lat + (2 * unit_uniform(rng) - 1) * a.jitter},
                  {"lon", a.lon + (2 * unit_uniform(rng) - 1) * a.jitter}};
    } else {
      j["geo"] = nullptr;
    }
    j["annotation"] = unit_uniform(rng) < 0.4 ? 1 : 0;
    j["author"] = au.json;
    out.push_back(j.dump());
  }
  return out;
}

}  // namespace credsift::synthetic
