#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "credsift/errors.hpp"

namespace credsift {

using Timestamp = std::chrono::sys_seconds;

/// The day the platform went public; user-age ratios are measured from here.
inline constexpr Timestamp kPlatformLaunch{
    std::chrono::sys_days{std::chrono::year{2006} / std::chrono::July / 15}};

inline constexpr std::size_t kRecentTweetCapacity = 40;
inline constexpr std::size_t kAverageWindow = 20;

/// Parses "YYYY-MM-DDTHH:MM:SSZ" (a trailing 'Z' is required; fractional
/// seconds are not accepted).
inline Timestamp parse_timestamp(std::string_view s) {
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, se = 0;
  char z = 0;
  std::string buf(s);
  if (std::sscanf(buf.c_str(), "%4d-%2u-%2uT%2u:%2u:%2u%c", &y, &mo, &d, &h, &mi,
                  &se, &z) != 7 ||
      z != 'Z' || buf.size() != 20) {
    throw DataError("bad timestamp '" + buf + "' (expected YYYY-MM-DDTHH:MM:SSZ)");
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                  std::chrono::day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || se > 59) {
    throw DataError("bad timestamp '" + buf + "'");
  }
  return Timestamp{std::chrono::sys_days{ymd}} + std::chrono::hours{h} +
         std::chrono::minutes{mi} + std::chrono::seconds{se};
}

inline std::string format_timestamp(Timestamp t) {
  auto day = std::chrono::floor<std::chrono::days>(t);
  std::chrono::year_month_day ymd{day};
  std::chrono::hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

namespace detail {

inline Timestamp add_months(Timestamp t, int months) {
  using namespace std::chrono;
  auto day = floor<days>(t);
  year_month_day ymd{day};
  auto tod = t - day;
  year_month ym = year_month{ymd.year(), ymd.month()} + std::chrono::months{months};
  auto last = year_month_day_last{ym.year(), month_day_last{ym.month()}}.day();
  auto dd = ymd.day() > last ? last : ymd.day();
  return Timestamp{sys_days{ym / dd}} + tod;
}

}  // namespace detail

/// Elapsed months between two instants (`to` must not precede `from`).
///
/// The whole part counts calendar months: the largest k with
/// from + k months <= to, where adding months keeps the day-of-month and
/// clamps it to the end of shorter months. The remainder is the elapsed
/// fraction of the following month, measured in seconds.
inline double months_between(Timestamp from, Timestamp to) {
  if (to < from) throw std::invalid_argument("months_between: end precedes start");
  using namespace std::chrono;
  year_month_day a{floor<days>(from)};
  year_month_day b{floor<days>(to)};
  int whole = (static_cast<int>(b.year()) - static_cast<int>(a.year())) * 12 +
              (static_cast<int>(static_cast<unsigned>(b.month())) -
               static_cast<int>(static_cast<unsigned>(a.month())));
  while (whole > 0 && detail::add_months(from, whole) > to) --whole;
  while (detail::add_months(from, whole + 1) <= to) ++whole;
  Timestamp anchor = detail::add_months(from, whole);
  Timestamp next = detail::add_months(from, whole + 1);
  double frac = static_cast<double>((to - anchor).count()) /
                static_cast<double>((next - anchor).count());
  return whole + frac;
}

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool valid() const {
    return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 && lat <= 90.0 &&
           lon >= -180.0 && lon <= 180.0;
  }
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct Tweet {
  std::string id;
  std::string text;
  std::string author_id;
  std::int64_t retweets_no = 0;
  std::int64_t favorites_no = 0;
  Timestamp creation_date{};
  std::optional<GeoPoint> geo;
  std::string language = "en";
  bool is_retweet = false;
  std::vector<std::string> hashtags;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

struct UserProfile {
  std::string id;
  bool has_location = false;
  bool has_description = false;
  bool has_url = false;
  bool has_geo = false;
  bool is_verified = false;
  Timestamp creation_date = kPlatformLaunch;
  std::int64_t followers_no = 0;
  std::vector<std::string> recent_tweets;  // newest first

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

/// Conventional retweet marker at the start of the text.
inline bool looks_like_retweet(std::string_view text) {
  return text.substr(0, 4) == "RT @";
}

/// Throws DataError describing the first violated record invariant.
inline void validate(const Tweet& t) {
  if (t.id.empty()) throw DataError("tweet id is empty");
  if (t.retweets_no < 0) throw DataError("tweet " + t.id + ": negative retweets_no");
  if (t.favorites_no < 0) throw DataError("tweet " + t.id + ": negative favorites_no");
  if (t.geo && !t.geo->valid()) throw DataError("tweet " + t.id + ": geo out of range");
  for (const auto& h : t.hashtags) {
    if (h.empty() || h.front() != '#')
      throw DataError("tweet " + t.id + ": hashtag '" + h + "' lacks '#'");
  }
}

inline void validate(const UserProfile& u) {
  if (u.id.empty()) throw DataError("user id is empty");
  if (u.followers_no < 0) throw DataError("user " + u.id + ": negative followers_no");
  if (u.recent_tweets.size() > kRecentTweetCapacity)
    throw DataError("user " + u.id + ": more than 40 recent tweets");
  if (u.creation_date < kPlatformLaunch)
    throw DataError("user " + u.id + ": creation_date precedes 2006-07-15");
}

struct TweetFeatures {
  double retweets_score = 0.0;        // T_R
  double favorites_score = 0.0;       // T_F
  double relevant_words_ratio = 0.0;  // T_W
  double sentiment_score = 0.0;       // T_S
  std::int64_t hashtag_count = 0;
  std::int64_t hashtag_chars = 0;
  std::int64_t words_no = 0;
  std::int64_t characters_no = 0;

  friend bool operator==(const TweetFeatures&, const TweetFeatures&) = default;
};

struct UserFeatures {
  int u_location = 0;        // U_L
  int u_url = 0;             // U_U
  int u_description = 0;     // U_D
  int u_verified = 0;        // U_V
  int u_geo = 0;             // U_G
  double u_age_ratio = 0.0;  // U_C
  double u_avg_last20 = 0.0; // U_A20

  friend bool operator==(const UserFeatures&, const UserFeatures&) = default;
};

/// Credibility verdict of a post.
enum class Verdict { NotCredible, Credible };

inline const char* to_string(Verdict v) {
  return v == Verdict::Credible ? "credible" : "not_credible";
}

inline Verdict parse_verdict(std::string_view s) {
  if (s == "credible" || s == "1") return Verdict::Credible;
  if (s == "not_credible" || s == "0") return Verdict::NotCredible;
  throw DataError("unknown verdict '" + std::string(s) + "'");
}

}  // namespace credsift
