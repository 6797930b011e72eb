#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "credsift/errors.hpp"
#include "credsift/model.hpp"
#include "credsift/record.hpp"

namespace credsift {

namespace detail {

/// Shared mutex that does not starve writers: a waiting writer holds the
/// turnstile, so new readers queue behind it while current ones drain.
class TurnstileSharedMutex {
 public:
  void lock() {
    std::lock_guard gate(turnstile_);
    rw_.lock();
  }
  void unlock() { rw_.unlock(); }
  void lock_shared() {
    std::lock_guard gate(turnstile_);
    rw_.lock_shared();
  }
  void unlock_shared() { rw_.unlock_shared(); }

 private:
  std::mutex turnstile_;
  std::shared_mutex rw_;
};

}  // namespace detail

struct ScoreEntry {
  std::string target_id;
  Timestamp time{};
  double score = 0.0;
};

/// Append-only snapshot store.
///
/// Layout: `<dir>/tweets.jsonl`, `<dir>/users.jsonl`, `<dir>/scores.jsonl`,
/// one JSON object per line. Each snapshot is keyed by (id, snapshot_time)
/// and may be written once. The in-memory index is rebuilt from the files on
/// open. One writer, any number of concurrent readers.
class SnapshotStore {
 public:
  explicit SnapshotStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create store directory " + dir_.string() + ": " + ec.message());
    replay("tweets.jsonl", [&](const nlohmann::json& j) {
      index_tweet(parse_time(j), tweet_from_json(j.at("tweet")));
    });
    replay("users.jsonl", [&](const nlohmann::json& j) {
      index_user(parse_time(j), user_from_json(j.at("user")));
    });
    replay("scores.jsonl", [&](const nlohmann::json& j) {
      scores_[j.at("id").get<std::string>()].push_back(
          {j.at("id").get<std::string>(), parse_time(j), j.at("score").get<double>()});
    });
  }

  const std::filesystem::path& directory() const { return dir_; }

  void put_tweet(const Tweet& t, Timestamp snapshot_time) {
    validate(t);
    std::unique_lock lock(mu_);
    auto it = tweets_.find(t.id);
    if (it != tweets_.end() && it->second.count(snapshot_time))
      throw DataError("tweet " + t.id + " already has a snapshot at " +
                      format_timestamp(snapshot_time));
    append("tweets.jsonl",
           {{"snapshot_time", format_timestamp(snapshot_time)}, {"tweet", to_json(t)}});
    index_tweet(snapshot_time, t);
  }

  void put_user(const UserProfile& u, Timestamp snapshot_time) {
    validate(u);
    std::unique_lock lock(mu_);
    auto it = users_.find(u.id);
    if (it != users_.end() && it->second.count(snapshot_time))
      throw DataError("user " + u.id + " already has a snapshot at " +
                      format_timestamp(snapshot_time));
    append("users.jsonl",
           {{"snapshot_time", format_timestamp(snapshot_time)}, {"user", to_json(u)}});
    index_user(snapshot_time, u);
  }

  void append_score(const std::string& target_id, Timestamp time, double score) {
    std::unique_lock lock(mu_);
    append("scores.jsonl",
           {{"id", target_id}, {"snapshot_time", format_timestamp(time)}, {"score", score}});
    scores_[target_id].push_back({target_id, time, score});
  }

  /// Latest snapshot taken at or before `as_of` (any time when omitted).
  std::optional<Tweet> get_tweet(const std::string& id,
                                 std::optional<Timestamp> as_of = std::nullopt) const {
    std::shared_lock lock(mu_);
    return latest(tweets_, id, as_of);
  }

  std::optional<UserProfile> get_user(const std::string& id,
                                      std::optional<Timestamp> as_of = std::nullopt) const {
    std::shared_lock lock(mu_);
    return latest(users_, id, as_of);
  }

  bool has_tweet(const std::string& id) const {
    std::shared_lock lock(mu_);
    return tweets_.count(id) != 0;
  }

  bool has_user(const std::string& id) const {
    std::shared_lock lock(mu_);
    return users_.count(id) != 0;
  }

  /// The author's `n` newest tweets (by creation date, then id), newest
  /// first, using each tweet's latest snapshot as of `as_of`.
  std::vector<Tweet> list_recent(const std::string& user_id, std::size_t n,
                                 std::optional<Timestamp> as_of = std::nullopt) const {
    std::shared_lock lock(mu_);
    std::vector<Tweet> out;
    auto it = by_author_.find(user_id);
    if (it == by_author_.end()) return out;
    for (const auto& id : it->second) {
      if (auto t = latest(tweets_, id, as_of)) out.push_back(std::move(*t));
    }
    std::sort(out.begin(), out.end(), [](const Tweet& a, const Tweet& b) {
      if (a.creation_date != b.creation_date) return a.creation_date > b.creation_date;
      return a.id > b.id;
    });
    if (out.size() > n) out.resize(n);
    return out;
  }

  std::vector<ScoreEntry> scores(const std::string& target_id) const {
    std::shared_lock lock(mu_);
    auto it = scores_.find(target_id);
    return it == scores_.end() ? std::vector<ScoreEntry>{} : it->second;
  }

  std::size_t tweet_count() const {
    std::shared_lock lock(mu_);
    return tweets_.size();
  }

 private:
  template <typename T>
  using History = std::map<std::string, std::map<Timestamp, T>>;

  template <typename T>
  static std::optional<T> latest(const History<T>& h, const std::string& id,
                                 std::optional<Timestamp> as_of) {
    auto it = h.find(id);
    if (it == h.end() || it->second.empty()) return std::nullopt;
    const auto& snaps = it->second;
    if (!as_of) return snaps.rbegin()->second;
    auto up = snaps.upper_bound(*as_of);
    if (up == snaps.begin()) return std::nullopt;
    return std::prev(up)->second;
  }

  static Timestamp parse_time(const nlohmann::json& j) {
    return parse_timestamp(j.at("snapshot_time").get<std::string>());
  }

  void index_tweet(Timestamp t, Tweet tw) {
    by_author_[tw.author_id].insert(tw.id);
    auto& snaps = tweets_[tw.id];
    snaps.insert_or_assign(t, std::move(tw));
  }

  void index_user(Timestamp t, UserProfile u) {
    auto& snaps = users_[u.id];
    snaps.insert_or_assign(t, std::move(u));
  }

  void append(const char* file, const nlohmann::json& line) {
    auto path = dir_ / file;
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for append");
    out << line.dump() << '\n';
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
  }

  template <typename Fn>
  void replay(const char* file, Fn&& fn) {
    auto path = dir_ / file;
    if (!std::filesystem::exists(path)) return;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        fn(nlohmann::json::parse(line));
      } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      } catch (const DataError& e) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (in.bad()) throw IoError("read error on " + path.string());
  }

  std::filesystem::path dir_;
  mutable detail::TurnstileSharedMutex mu_;
  History<Tweet> tweets_;
  History<UserProfile> users_;
  std::map<std::string, std::set<std::string>> by_author_;
  std::map<std::string, std::vector<ScoreEntry>> scores_;
};

}  // namespace credsift
