#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "credsift/classifier.hpp"
#include "credsift/config.hpp"
#include "credsift/dedup.hpp"
#include "credsift/features.hpp"
#include "credsift/geostats.hpp"
#include "credsift/ingest.hpp"
#include "credsift/scoring.hpp"
#include "credsift/sentiment.hpp"

namespace credsift {

/// Lexicons, boundaries and the optional model a run needs, loaded once.
struct PipelineResources {
  WordSet stopwords = default_stopwords();
  WordLexicon lexicon = default_word_lexicon();
  std::optional<TopicKeywordList> topics = default_topics();
  CountryBoundaries boundaries{std::vector<Country>{}};
  CountryTable continents;
  std::optional<NnModel> model;

  /// Empty config paths fall back to files under `data_dir`.
  static PipelineResources load(const PipelineConfig& c, const std::filesystem::path& data_dir) {
    PipelineResources r;
    auto pick = [&](const std::string& v, const char* fallback) {
      return v.empty() ? (data_dir / fallback).string() : v;
    };
    if (!c.stopwords.empty() && c.stopwords != "default") r.stopwords = WordSet::load(c.stopwords);
    if (!c.lexicon.empty() && c.lexicon != "default") r.lexicon = WordLexicon::load(c.lexicon);
    if (c.topics == "none") {
      r.topics.reset();
    } else if (!c.topics.empty() && c.topics != "default") {
      r.topics = TopicKeywordList::load(c.topics);
    }
    r.boundaries = CountryBoundaries::load(pick(c.boundaries, "world_simplified.geojson"));
    r.continents = CountryTable::load(pick(c.continents, "continents.csv"));
    if (!c.model.empty() && c.model != "none") r.model = load_model(c.model);
    return r;
  }
};

struct ScoredPost {
  std::size_t post_index = 0;  // into IngestResult::accepted
  std::size_t group = 0;
  TweetFeatures features;
  double score = 0.0;
  double probability = -1.0;  // classifier output, -1 without a model
  Verdict verdict = Verdict::NotCredible;
  SentimentLabel sentiment = SentimentLabel::Neutral;
  std::optional<std::string> country;
};

struct UserScore {
  std::string user_id;
  Timestamp as_of{};
  std::size_t tweets_used = 0;
  double score = 0.0;
};

struct PipelineOutput {
  IngestResult ingest;
  DedupResult dedup;
  std::vector<ScoredPost> scored;  // one per dedup representative, input order
  std::vector<UserScore> users;    // by user id
  AggregateReport by_country;
  AggregateReport by_continent;
  HeatmapGrid heat;
  std::vector<Cluster> clusters;
};

inline void validate(const PipelineConfig& c) {
  auto unit = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw DataError(std::string(name) + " must lie in [0,1]");
  };
  unit(c.dedup.realtime_threshold, "realtime_threshold");
  unit(c.dedup.offline_threshold, "offline_threshold");
  if (!(c.credible_threshold > 0.0 && c.credible_threshold < 1.0))
    throw DataError("credible_threshold must lie in (0,1)");
  if (!(c.cell_size_deg > 0.0)) throw DataError("cell_size_deg must be positive");
  if (!(c.border_epsilon_km >= 0.0)) throw DataError("border_epsilon_km must be >= 0");
  if (c.queue_capacity == 0) throw DataError("queue_capacity must be positive");
  try {
    c.weights.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

namespace detail {

/// Runs fn(i) for i in [0, n) over `threads` contiguous shards.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t * chunk; i < std::min(n, (t + 1) * chunk); ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

/// ingest -> dedup -> score -> country assignment -> statistics, heatmap and
/// clusters. Every stage's result is independent of `config.threads`.
inline PipelineOutput run_pipeline(PostSource& source, const PipelineConfig& config,
                                   const PipelineResources& res) {
  validate(config);
  PipelineOutput out;

  IngestOptions iopt;
  iopt.languages = config.languages;
  iopt.require_geo = config.require_geo;
  iopt.topics = res.topics ? &*res.topics : nullptr;
  iopt.threads = config.threads;
  iopt.queue_capacity = config.queue_capacity;
  out.ingest = ingest(source, iopt);
  const auto& posts = out.ingest.accepted;

  std::vector<Tweet> tweets;
  tweets.reserve(posts.size());
  for (const auto& p : posts) tweets.push_back(p.tweet);
  out.dedup = dedup(tweets, config.dedup_mode, config.dedup);

  std::vector<std::size_t> reps = out.dedup.representatives;
  std::sort(reps.begin(), reps.end());
  out.scored.resize(reps.size());
  LexiconProvider provider(res.lexicon);
  detail::parallel_for(reps.size(), config.threads, [&](std::size_t k) {
    const auto& p = posts[reps[k]];
    ScoredPost& s = out.scored[k];
    s.post_index = reps[k];
    s.group = out.dedup.group_of[reps[k]];
    s.features = extract_tweet_features(p.tweet, p.author, res.stopwords, res.lexicon);
    s.score = tweet_credibility(s.features, config.weights);
    if (res.model) {
      auto x = select_features(res.model->config, s.features, res.model->scaling);
      s.probability = predict(*res.model, x);
      s.verdict = classify(s.probability);
    } else {
      s.verdict = s.score > config.credible_threshold ? Verdict::Credible : Verdict::NotCredible;
    }
    s.sentiment = classify_text(p.tweet.text, provider);
  });

  // Country assignment depends on each author's earlier posts, so it runs in
  // posting order.
  std::vector<std::size_t> order(out.scored.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return posts[out.scored[a].post_index].tweet.creation_date <
           posts[out.scored[b].post_index].tweet.creation_date;
  });
  std::map<std::string, std::vector<std::string>> history;  // newest first
  for (std::size_t k : order) {
    const auto& p = posts[out.scored[k].post_index];
    auto& h = history[p.author.id];
    auto country = assign_country(*p.tweet.geo, res.boundaries, h, config.border_epsilon_km);
    out.scored[k].country = country;
    if (country) {
      h.insert(h.begin(), *country);
      if (h.size() > kBorderHistory) h.pop_back();
    }
  }

  std::vector<RegionRecord> regions;
  std::vector<VerdictPoint> verdicts;
  std::vector<SentimentPoint> sentiments;
  for (const auto& s : out.scored) {
    const auto& geo = *posts[s.post_index].tweet.geo;
    regions.push_back({s.country, s.verdict});
    verdicts.push_back({geo, s.verdict});
    sentiments.push_back({geo, s.sentiment});
  }
  out.by_country = aggregate(regions, RegionLevel::Country, res.continents, config.min_region_count);
  out.by_continent =
      aggregate(regions, RegionLevel::Continent, res.continents, config.min_region_count);
  out.heat = heatmap(verdicts, config.cell_size_deg, config.heatmap_class);
  out.clusters = cluster_points(sentiments, config.cell_size_deg);

  // User credibility as of each author's latest snapshot in the run.
  std::map<std::string, std::vector<const ScoredPost*>> by_author;
  for (const auto& s : out.scored) by_author[posts[s.post_index].author.id].push_back(&s);
  for (auto& [uid, list] : by_author) {
    std::sort(list.begin(), list.end(), [&](const ScoredPost* a, const ScoredPost* b) {
      const auto& ta = posts[a->post_index];
      const auto& tb = posts[b->post_index];
      if (ta.tweet.creation_date != tb.tweet.creation_date)
        return ta.tweet.creation_date > tb.tweet.creation_date;
      return ta.tweet.id > tb.tweet.id;
    });
    const IngestedPost* latest = &posts[list.front()->post_index];
    for (const auto* s : list) {
      const auto& p = posts[s->post_index];
      if (p.snapshot_time > latest->snapshot_time) latest = &p;
    }
    std::vector<double> recent;
    for (std::size_t i = 0; i < list.size() && i < kAverageWindow; ++i) recent.push_back(list[i]->score);
    Timestamp as_of = std::max(latest->snapshot_time, latest->author.creation_date);
    auto u = extract_user_features(latest->author, as_of, recent);
    out.users.push_back({uid, as_of, recent.size(), user_credibility(u, config.weights)});
  }
  return out;
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + p.string());
  return f;
}

inline void close_output(std::ofstream& f, const std::filesystem::path& p) {
  f.close();
  if (!f) throw IoError("write to " + p.string() + " failed");
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += "\"\"";
    else if (c == '\n' || c == '\r') q += ' ';
    else q += c;
  }
  return q + "\"";
}

}  // namespace detail

/// `id,group,representative_id` for every accepted post.
inline void write_dedup_csv(std::ostream& out, std::span<const Tweet> tweets, const DedupResult& d) {
  out << "id,group,representative_id\n";
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    std::size_t g = d.group_of[i];
    out << detail::csv_field(tweets[i].id) << ',' << g << ','
        << detail::csv_field(tweets[d.representatives[g]].id) << '\n';
  }
}

/// Output files, all in `dir`:
///   rejections.csv, dedup.csv, scores.csv, users.csv, stats_country.csv,
///   stats_continent.csv, heatmap.geojson, clusters.geojson
inline void write_outputs(const PipelineOutput& o, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto& posts = o.ingest.accepted;

  auto emit = [&](const char* name, auto&& body) {
    auto path = dir / name;
    auto f = detail::open_output(path);
    body(f);
    detail::close_output(f, path);
  };

  emit("rejections.csv", [&](std::ostream& f) { write_rejections_csv(f, o.ingest); });
  emit("dedup.csv", [&](std::ostream& f) {
    std::vector<Tweet> tweets;
    for (const auto& p : posts) tweets.push_back(p.tweet);
    write_dedup_csv(f, tweets, o.dedup);
  });
  emit("scores.csv", [&](std::ostream& f) {
    f << "id,author_id,score,probability,verdict,sentiment,country\n";
    for (const auto& s : o.scored) {
      const auto& p = posts[s.post_index];
      f << detail::csv_field(p.tweet.id) << ',' << detail::csv_field(p.author.id) << ','
        << detail::shortest(s.score) << ',';
      if (s.probability >= 0.0) f << detail::shortest(s.probability);
      f << ',' << to_string(s.verdict) << ',' << to_string(s.sentiment) << ','
        << (s.country ? *s.country : kUnassigned) << '\n';
    }
  });
  emit("users.csv", [&](std::ostream& f) {
    f << "user_id,as_of,tweets_used,score\n";
    for (const auto& u : o.users) {
      f << detail::csv_field(u.user_id) << ',' << format_timestamp(u.as_of) << ','
        << u.tweets_used << ',' << detail::shortest(u.score) << '\n';
    }
  });
  emit("stats_country.csv", [&](std::ostream& f) { write_stats_csv(f, o.by_country); });
  emit("stats_continent.csv", [&](std::ostream& f) { write_stats_csv(f, o.by_continent); });
  emit("heatmap.geojson", [&](std::ostream& f) { f << heatmap_geojson(o.heat).dump(1) << '\n'; });
  emit("clusters.geojson", [&](std::ostream& f) { f << clusters_geojson(o.clusters).dump(1) << '\n'; });
}

}  // namespace credsift
