#pragma once

#include <algorithm>
#include <chrono>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "credsift/errors.hpp"
#include "credsift/features.hpp"
#include "credsift/model.hpp"
#include "credsift/scoring.hpp"
#include "credsift/sentiment.hpp"
#include "credsift/store.hpp"

namespace credsift {

// ---------------------------------------------------------------------------
// Clocks
// ---------------------------------------------------------------------------

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() = 0;
  virtual void sleep_until(Timestamp t) = 0;
};

class SystemClock final : public Clock {
 public:
  Timestamp now() override {
    return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  }
  void sleep_until(Timestamp t) override { std::this_thread::sleep_until(t); }
};

/// Jumps straight to the requested time; never moves backwards.
class FakeClock final : public Clock {
 public:
  explicit FakeClock(Timestamp start) : now_(start) {}
  Timestamp now() override {
    std::lock_guard lock(mu_);
    return now_;
  }
  void sleep_until(Timestamp t) override {
    std::lock_guard lock(mu_);
    now_ = std::max(now_, t);
  }
  void advance(std::chrono::seconds d) {
    std::lock_guard lock(mu_);
    now_ += d;
  }

 private:
  std::mutex mu_;
  Timestamp now_;
};

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

struct Sample {
  Timestamp time;
  double score = 0.0;
};

/// Samples with strictly increasing timestamps.
class TimeSeries {
 public:
  void append(Timestamp t, double score) {
    if (!samples_.empty() && t <= samples_.back().time)
      throw std::invalid_argument("time series samples must be strictly increasing in time");
    if (!(score >= 0.0 && score <= 1.0)) throw std::invalid_argument("score outside [0,1]");
    samples_.push_back({t, score});
  }
  std::span<const Sample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(samples_.size());
    for (const auto& s : samples_) v.push_back(s.score);
    return v;
  }

 private:
  std::vector<Sample> samples_;
};

inline constexpr std::chrono::minutes kDefaultMonitorInterval{60};

enum class MonitorTarget { Tweet, User };

struct MonitorJob {
  MonitorTarget kind = MonitorTarget::Tweet;
  std::string target;
  std::chrono::seconds interval = kDefaultMonitorInterval;
  TimeSeries samples;
};

/// What is needed to recompute a score from stored snapshots.
struct ScoringContext {
  const WordSet* stopwords = &default_stopwords();
  const WordLexicon* lexicon = &default_word_lexicon();
  FormulaWeights weights;
};

/// Formula score of the tweet's latest snapshot at or before `t`, using its
/// author's snapshot at or before `t` (the earliest one if all are later).
inline double tweet_score_at(const SnapshotStore& store, const std::string& tweet_id, Timestamp t,
                             const ScoringContext& ctx) {
  auto tweet = store.get_tweet(tweet_id, t);
  if (!tweet) throw DataError("tweet " + tweet_id + " has no snapshot at " + format_timestamp(t));
  auto author = store.get_user(tweet->author_id, t);
  if (!author) author = store.get_user(tweet->author_id);
  if (!author) throw DataError("author " + tweet->author_id + " of tweet " + tweet_id + " is unknown");
  auto f = extract_tweet_features(*tweet, *author, *ctx.stopwords, *ctx.lexicon);
  return tweet_credibility(f, ctx.weights);
}

/// User formula score at `t`: U_A20 averages the scores of the user's 20
/// newest stored tweets.
inline double user_score_at(const SnapshotStore& store, const std::string& user_id, Timestamp t,
                            const ScoringContext& ctx) {
  auto user = store.get_user(user_id, t);
  if (!user) user = store.get_user(user_id);
  if (!user) throw DataError("unknown user " + user_id);
  std::vector<double> scores;
  for (const auto& tw : store.list_recent(user_id, kAverageWindow, t)) {
    scores.push_back(tweet_score_at(store, tw.id, t, ctx));
  }
  auto u = extract_user_features(*user, std::max(t, user->creation_date), scores);
  return user_credibility(u, ctx.weights);
}

namespace detail {

template <typename ScoreFn>
TimeSeries run_ticks(Clock& clock, std::chrono::seconds interval, std::size_t ticks,
                     ScoreFn&& score) {
  if (interval.count() <= 0) throw std::invalid_argument("monitor interval must be positive");
  TimeSeries series;
  const Timestamp start = clock.now();
  for (std::size_t k = 1; k <= ticks; ++k) {
    clock.sleep_until(start + interval * static_cast<long>(k));
    Timestamp now = clock.now();
    series.append(now, score(now));
  }
  return series;
}

}  // namespace detail

/// Samples the tweet's credibility every `interval` for `ticks` ticks; the
/// first sample is taken one interval after the call.
inline MonitorJob monitor_tweet(const SnapshotStore& store, const std::string& tweet_id,
                                std::chrono::seconds interval, Clock& clock, std::size_t ticks,
                                const ScoringContext& ctx = {}) {
  if (!store.has_tweet(tweet_id)) throw DataError("unknown tweet " + tweet_id);
  MonitorJob job{MonitorTarget::Tweet, tweet_id, interval, {}};
  job.samples = detail::run_ticks(clock, interval, ticks, [&](Timestamp t) {
    return tweet_score_at(store, tweet_id, t, ctx);
  });
  return job;
}

inline MonitorJob monitor_user(const SnapshotStore& store, const std::string& user_id,
                               std::chrono::seconds interval, Clock& clock, std::size_t ticks,
                               const ScoringContext& ctx = {}) {
  if (!store.has_user(user_id)) throw DataError("unknown user " + user_id);
  MonitorJob job{MonitorTarget::User, user_id, interval, {}};
  job.samples = detail::run_ticks(clock, interval, ticks, [&](Timestamp t) {
    return user_score_at(store, user_id, t, ctx);
  });
  return job;
}

/// Runs several monitors as independent tasks, each on its own clock.
/// `clocks[i]` drives `targets[i]`.
inline std::vector<MonitorJob> run_monitors(const SnapshotStore& store,
                                            std::span<const std::pair<MonitorTarget, std::string>> targets,
                                            std::span<Clock* const> clocks,
                                            std::chrono::seconds interval, std::size_t ticks,
                                            const ScoringContext& ctx = {}) {
  if (targets.size() != clocks.size()) throw std::invalid_argument("one clock per monitor target");
  std::vector<MonitorJob> jobs(targets.size());
  std::vector<std::exception_ptr> errors(targets.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    pool.emplace_back([&, i] {
      try {
        jobs[i] = targets[i].first == MonitorTarget::Tweet
                      ? monitor_tweet(store, targets[i].second, interval, *clocks[i], ticks, ctx)
                      : monitor_user(store, targets[i].second, interval, *clocks[i], ticks, ctx);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return jobs;
}

// ---------------------------------------------------------------------------
// Trend
// ---------------------------------------------------------------------------

enum class Trend { Constant, Growing, Decreasing, Mixed };

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::Constant: return "constant";
    case Trend::Growing: return "growing";
    case Trend::Decreasing: return "decreasing";
    case Trend::Mixed: return "mixed";
  }
  return "";
}

inline constexpr double kDefaultFlatEpsilon = 0.005;

/// Constant when the whole range fits in `flat_epsilon`; Growing/Decreasing
/// when no step moves against the direction by more than `flat_epsilon` and
/// the net change exceeds it; Mixed otherwise.
inline Trend trend(std::span<const double> values, double flat_epsilon = kDefaultFlatEpsilon) {
  if (values.size() < 2) throw std::invalid_argument("trend needs at least two samples");
  if (!(flat_epsilon >= 0.0)) throw std::invalid_argument("flat_epsilon must be >= 0");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi - *lo <= flat_epsilon) return Trend::Constant;
  bool up = true, down = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    double d = values[i] - values[i - 1];
    up = up && d >= -flat_epsilon;
    down = down && d <= flat_epsilon;
  }
  double net = values.back() - values.front();
  if (up && net > flat_epsilon) return Trend::Growing;
  if (down && net < -flat_epsilon) return Trend::Decreasing;
  return Trend::Mixed;
}

inline Trend trend(const TimeSeries& series, double flat_epsilon = kDefaultFlatEpsilon) {
  auto v = series.values();
  return trend(std::span<const double>(v), flat_epsilon);
}

}  // namespace credsift
