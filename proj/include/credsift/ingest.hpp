#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "credsift/bounded_queue.hpp"
#include "credsift/errors.hpp"
#include "credsift/model.hpp"
#include "credsift/record.hpp"
#include "credsift/sentiment.hpp"

namespace credsift {

// ---------------------------------------------------------------------------
// Sources
// ---------------------------------------------------------------------------

struct SourceLine {
  std::string text;
  std::optional<Timestamp> arrival;  // simulated receive time, if any
};

/// Stream of raw posts, one JSON document per line. A live crawler would
/// implement this; the shipped implementation replays a file.
class PostSource {
 public:
  virtual ~PostSource() = default;
  virtual std::optional<SourceLine> next() = 0;
};

/// Replays JSON lines from a stream. With a simulated clock, the k-th line
/// (0-based) arrives at start + k * step.
class FileReplaySource final : public PostSource {
 public:
  struct SimulatedClock {
    Timestamp start;
    std::chrono::seconds step{60};
  };

  explicit FileReplaySource(std::istream& in, std::optional<SimulatedClock> clock = std::nullopt)
      : in_(&in), clock_(clock) {
    if (!*in_) throw IoError("ingest source is not readable");
  }

  explicit FileReplaySource(const std::string& path,
                            std::optional<SimulatedClock> clock = std::nullopt)
      : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)), in_(owned_.get()),
        clock_(clock) {
    if (!*owned_) throw IoError("cannot open ingest source: " + path);
  }

  std::optional<SourceLine> next() override {
    std::string line;
    while (std::getline(*in_, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      SourceLine s{std::move(line), std::nullopt};
      if (clock_) s.arrival = clock_->start + clock_->step * static_cast<long>(count_);
      ++count_;
      return s;
    }
    if (in_->bad()) throw IoError("read error on ingest source");
    return std::nullopt;
  }

 private:
  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
  std::optional<SimulatedClock> clock_;
  std::size_t count_ = 0;
};

// ---------------------------------------------------------------------------
// Filtering
// ---------------------------------------------------------------------------

enum class RejectReason { Malformed, Invalid, Language, NoGeo, NoTopic };

inline const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::Malformed: return "Malformed";
    case RejectReason::Invalid: return "Invalid";
    case RejectReason::Language: return "Language";
    case RejectReason::NoGeo: return "NoGeo";
    case RejectReason::NoTopic: return "NoTopic";
  }
  return "";
}

/// The six collection languages.
inline std::set<std::string> default_languages() { return {"en", "de", "fr", "el", "tr", "it"}; }

struct IngestOptions {
  std::set<std::string> languages = default_languages();
  bool require_geo = true;
  /// Topic filter; none means every post passes the second step.
  const TopicKeywordList* topics = nullptr;
  /// Used when the topic list lacks the post's language: the text is
  /// translated to English first. Without one, the text is matched as-is
  /// against the English list.
  Translator* translator = nullptr;
  unsigned threads = 1;
  std::size_t queue_capacity = 256;
};

struct IngestedPost {
  Tweet tweet;
  UserProfile author;
  Timestamp snapshot_time{};
  std::optional<int> label;  // 1 = credible
  std::set<TopicSection> topics;
  std::size_t line_no = 0;
};

struct Rejection {
  std::size_t line_no = 0;
  RejectReason reason = RejectReason::Malformed;
  std::string detail;
};

struct IngestResult {
  std::vector<IngestedPost> accepted;
  std::vector<Rejection> rejected;
  std::size_t lines_read = 0;

  std::map<RejectReason, std::size_t> rejection_counts() const {
    std::map<RejectReason, std::size_t> m;
    for (const auto& r : rejected) ++m[r.reason];
    return m;
  }
};

namespace detail {

struct IngestOutcome {
  std::optional<IngestedPost> post;
  std::optional<Rejection> rejection;
};

inline IngestOutcome process_line(const SourceLine& src, std::size_t line_no,
                                  const IngestOptions& opt) {
  auto reject = [&](RejectReason r, std::string detail) {
    return IngestOutcome{std::nullopt, Rejection{line_no, r, std::move(detail)}};
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(src.text);
  } catch (const nlohmann::json::exception& e) {
    return reject(RejectReason::Malformed, e.what());
  }
  if (!j.is_object()) return reject(RejectReason::Malformed, "record is not a JSON object");

  IngestedPost post;
  post.line_no = line_no;
  try {
    post.tweet = tweet_from_json(j);
    if (!j.contains("author")) throw DataError("record: missing field 'author'");
    post.author = user_from_json(j.at("author"));
    if (post.tweet.author_id.empty()) post.tweet.author_id = post.author.id;
    if (post.tweet.author_id != post.author.id)
      throw DataError("record: author_id does not match author.id");
    if (j.contains("snapshot_time") && !j.at("snapshot_time").is_null()) {
      post.snapshot_time = parse_timestamp(required<std::string>(j, "snapshot_time", "record"));
    } else {
      post.snapshot_time = src.arrival.value_or(post.tweet.creation_date);
    }
    if (j.contains("label") && !j.at("label").is_null()) {
      int l = required<int>(j, "label", "record");
      if (l != 0 && l != 1) throw DataError("record: label must be 0 or 1");
      post.label = l;
    } else if (j.contains("annotation") && !j.at("annotation").is_null()) {
      int a = required<int>(j, "annotation", "record");
      if (a != 0 && a != 1) throw DataError("record: annotation must be 0 or 1");
      post.label = 1 - a;  // annotators marked credible posts 0
    }
  } catch (const DataError& e) {
    return reject(RejectReason::Invalid, e.what());
  }

  if (!opt.languages.empty() && !opt.languages.count(post.tweet.language))
    return reject(RejectReason::Language, "language '" + post.tweet.language + "' not collected");
  if (opt.require_geo && !post.tweet.geo) return reject(RejectReason::NoGeo, "no geolocation");

  if (opt.topics) {
    const std::string& lang = post.tweet.language;
    try {
      if (opt.topics->has_language(lang)) {
        post.topics = topic_filter(post.tweet.text, *opt.topics, lang);
      } else {
        std::string text = opt.translator ? translate(post.tweet.text, lang, "en", *opt.translator)
                                          : post.tweet.text;
        post.topics = topic_filter(text, *opt.topics, "en");
      }
    } catch (const ProviderError& e) {
      return reject(RejectReason::Invalid, e.what());
    } catch (const DataError& e) {
      return reject(RejectReason::NoTopic, e.what());
    }
    if (post.topics.empty()) return reject(RejectReason::NoTopic, "no topic keyword");
  }
  return IngestOutcome{std::move(post), std::nullopt};
}

}  // namespace detail

/// Two-step filter over a post stream: language and geolocation first, topic
/// keywords second. Malformed or invalid lines are logged, never fatal.
///
/// Parsing and filtering run on `opt.threads` workers between two bounded
/// queues; the reader blocks while the input queue is full. Output order is
/// the source order regardless of the worker count.
inline IngestResult ingest(PostSource& source, const IngestOptions& opt = {}) {
  using Job = std::pair<std::size_t, SourceLine>;
  using Done = std::pair<std::size_t, detail::IngestOutcome>;
  BoundedQueue<Job> todo(opt.queue_capacity);
  BoundedQueue<Done> done(opt.queue_capacity);

  const unsigned workers = std::max(1u, opt.threads);
  std::vector<std::thread> pool;
  std::atomic<unsigned> running{workers};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (auto job = todo.pop()) {
        detail::IngestOutcome out;
        try {
          out = detail::process_line(job->second, job->first, opt);
        } catch (const std::exception& e) {
          out.rejection = Rejection{job->first, RejectReason::Invalid, e.what()};
        }
        done.push({job->first, std::move(out)});
      }
      if (--running == 0) done.close();
    });
  }

  std::map<std::size_t, detail::IngestOutcome> outcomes;
  std::thread collector([&] {
    while (auto d = done.pop()) outcomes.emplace(d->first, std::move(d->second));
  });

  std::size_t line_no = 0;
  std::exception_ptr failure;
  try {
    while (auto line = source.next()) todo.push({++line_no, std::move(*line)});
  } catch (...) {
    failure = std::current_exception();
  }
  todo.close();
  for (auto& t : pool) t.join();
  collector.join();
  if (failure) std::rethrow_exception(failure);

  IngestResult result;
  result.lines_read = line_no;
  for (auto& [_, o] : outcomes) {
    if (o.post) result.accepted.push_back(std::move(*o.post));
    else result.rejected.push_back(std::move(*o.rejection));
  }
  return result;
}

inline IngestResult ingest(std::istream& in, const IngestOptions& opt = {}) {
  FileReplaySource src(in);
  return ingest(src, opt);
}

/// `line,reason,detail` with the detail quoted.
inline void write_rejections_csv(std::ostream& out, const IngestResult& r) {
  out << "line,reason,detail\n";
  for (const auto& rej : r.rejected) {
    std::string d = rej.detail;
    std::string quoted;
    for (char c : d) {
      if (c == '"') quoted += "\"\"";
      else if (c == '\n' || c == '\r') quoted += ' ';
      else quoted += c;
    }
    out << rej.line_no << ',' << to_string(rej.reason) << ",\"" << quoted << "\"\n";
  }
}

/// Accepted posts as JSON lines (tweet fields plus `author`, `snapshot_time`,
/// `topics` and `label` when known).
inline nlohmann::json post_to_json(const IngestedPost& p) {
  nlohmann::json j = to_json(p.tweet);
  j["author"] = to_json(p.author);
  j["snapshot_time"] = format_timestamp(p.snapshot_time);
  nlohmann::json topics = nlohmann::json::array();
  for (auto t : p.topics) topics.push_back(to_string(t));
  j["topics"] = topics;
  if (p.label) j["label"] = *p.label;
  return j;
}

}  // namespace credsift
