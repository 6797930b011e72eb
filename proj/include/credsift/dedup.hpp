#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "credsift/model.hpp"
#include "credsift/simtext.hpp"

namespace credsift {

/// RealTime favours speed (Jaro-Winkler), Offline favours quality and
/// catches retweets (Smith-Waterman).
enum class DedupMode { RealTime, Offline };

inline const char* to_string(DedupMode m) { return m == DedupMode::RealTime ? "realtime" : "offline"; }

inline DedupMode parse_dedup_mode(std::string_view s) {
  if (s == "realtime") return DedupMode::RealTime;
  if (s == "offline") return DedupMode::Offline;
  throw std::invalid_argument("unknown dedup mode '" + std::string(s) + "'");
}

struct DedupSettings {
  AlignmentParams params;
  double realtime_threshold = kRealTimeThreshold;
  double offline_threshold = kOfflineThreshold;

  Algorithm algorithm(DedupMode m) const {
    return m == DedupMode::RealTime ? Algorithm::JaroWinkler : Algorithm::SmithWaterman;
  }
  double threshold(DedupMode m) const {
    return m == DedupMode::RealTime ? realtime_threshold : offline_threshold;
  }
};

struct DedupResult {
  Groups groups;                             // indices into the input
  std::vector<std::size_t> representatives;  // one per group, same order
  std::vector<std::size_t> group_of;         // input index -> group index
};

/// Groups near-duplicate posts and keeps the earliest post of each group
/// (ties go to the earlier input position).
inline DedupResult dedup(std::span<const Tweet> tweets, DedupMode mode,
                         const DedupSettings& settings = {}) {
  std::vector<std::u32string> texts;
  texts.reserve(tweets.size());
  for (const auto& t : tweets) texts.push_back(utf8_decode(t.text));
  DedupResult r;
  r.groups = group_similar_decoded(texts, settings.algorithm(mode), settings.threshold(mode),
                                   settings.params);
  r.group_of.resize(tweets.size());
  for (std::size_t g = 0; g < r.groups.size(); ++g) {
    std::size_t best = r.groups[g].front();
    for (std::size_t i : r.groups[g]) {
      r.group_of[i] = g;
      if (tweets[i].creation_date < tweets[best].creation_date) best = i;
    }
    r.representatives.push_back(best);
  }
  return r;
}

}  // namespace credsift
