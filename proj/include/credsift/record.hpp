#pragma once

#include <cctype>
#include <optional>
#include <vector>
#include <string>

#include <nlohmann/json.hpp>

#include "credsift/errors.hpp"
#include "credsift/model.hpp"

// JSON mapping of the domain records. Field names match the C++ members; the
// full ingest schema is described in docs/schema.md.

namespace credsift {

namespace detail {

template <typename T>
T required(const nlohmann::json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw DataError(std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T optional_field(const nlohmann::json& j, const char* key, T fallback, const char* what) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

inline std::vector<std::string> hashtags_in(const std::string& text) {
  std::vector<std::string> tags;
  std::size_t i = 0;
  while ((i = text.find('#', i)) != std::string::npos) {
    std::size_t e = i + 1;
    while (e < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_' ||
            static_cast<unsigned char>(text[e]) >= 0x80))
      ++e;
    if (e > i + 1 && (i == 0 || std::isspace(static_cast<unsigned char>(text[i - 1]))))
      tags.push_back(text.substr(i, e - i));
    i = e;
  }
  return tags;
}

}  // namespace detail

inline nlohmann::json to_json(const GeoPoint& g) { return {{"lat", g.lat}, {"lon", g.lon}}; }

inline nlohmann::json to_json(const Tweet& t) {
  return {{"id", t.id},
          {"text", t.text},
          {"author_id", t.author_id},
          {"retweets_no", t.retweets_no},
          {"favorites_no", t.favorites_no},
          {"creation_date", format_timestamp(t.creation_date)},
          {"geo", t.geo ? to_json(*t.geo) : nlohmann::json(nullptr)},
          {"language", t.language},
          {"is_retweet", t.is_retweet},
          {"hashtags", t.hashtags}};
}

inline nlohmann::json to_json(const UserProfile& u) {
  return {{"id", u.id},
          {"has_location", u.has_location},
          {"has_description", u.has_description},
          {"has_url", u.has_url},
          {"has_geo", u.has_geo},
          {"is_verified", u.is_verified},
          {"creation_date", format_timestamp(u.creation_date)},
          {"followers_no", u.followers_no},
          {"recent_tweets", u.recent_tweets}};
}

inline GeoPoint geo_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("geo: expected an object with lat and lon");
  GeoPoint g{detail::required<double>(j, "lat", "geo"), detail::required<double>(j, "lon", "geo")};
  if (!g.valid()) throw DataError("geo: coordinates out of range");
  return g;
}

/// Parses a tweet. `is_retweet` falls back to a `retweeted_status` source
/// flag, then to the "RT @" text prefix; missing `hashtags` are extracted
/// from the text.
inline Tweet tweet_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("tweet: expected a JSON object");
  Tweet t;
  t.id = detail::required<std::string>(j, "id", "tweet");
  t.text = detail::required<std::string>(j, "text", "tweet");
  t.author_id = detail::optional_field<std::string>(j, "author_id", "", "tweet");
  t.retweets_no = detail::optional_field<std::int64_t>(j, "retweets_no", 0, "tweet");
  t.favorites_no = detail::optional_field<std::int64_t>(j, "favorites_no", 0, "tweet");
  t.creation_date = parse_timestamp(detail::required<std::string>(j, "creation_date", "tweet"));
  if (j.contains("geo") && !j.at("geo").is_null()) t.geo = geo_from_json(j.at("geo"));
  t.language = detail::optional_field<std::string>(j, "language", "en", "tweet");
  if (j.contains("is_retweet") && !j.at("is_retweet").is_null()) {
    t.is_retweet = detail::required<bool>(j, "is_retweet", "tweet");
  } else {
    t.is_retweet = (j.contains("retweeted_status") && !j.at("retweeted_status").is_null()) ||
                   looks_like_retweet(t.text);
  }
  if (j.contains("hashtags") && !j.at("hashtags").is_null()) {
    t.hashtags = detail::required<std::vector<std::string>>(j, "hashtags", "tweet");
  } else {
    t.hashtags = detail::hashtags_in(t.text);
  }
  validate(t);
  return t;
}

inline UserProfile user_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("user: expected a JSON object");
  UserProfile u;
  u.id = detail::required<std::string>(j, "id", "user");
  u.has_location = detail::optional_field<bool>(j, "has_location", false, "user");
  u.has_description = detail::optional_field<bool>(j, "has_description", false, "user");
  u.has_url = detail::optional_field<bool>(j, "has_url", false, "user");
  u.has_geo = detail::optional_field<bool>(j, "has_geo", false, "user");
  u.is_verified = detail::optional_field<bool>(j, "is_verified", false, "user");
  u.creation_date = parse_timestamp(detail::required<std::string>(j, "creation_date", "user"));
  u.followers_no = detail::optional_field<std::int64_t>(j, "followers_no", 0, "user");
  u.recent_tweets =
      detail::optional_field<std::vector<std::string>>(j, "recent_tweets", {}, "user");
  validate(u);
  return u;
}

inline nlohmann::json to_json(const TweetFeatures& f) {
  return {{"retweets_score", f.retweets_score},
          {"favorites_score", f.favorites_score},
          {"relevant_words_ratio", f.relevant_words_ratio},
          {"sentiment_score", f.sentiment_score},
          {"hashtag_count", f.hashtag_count},
          {"hashtag_chars", f.hashtag_chars},
          {"words_no", f.words_no},
          {"characters_no", f.characters_no}};
}

inline nlohmann::json to_json(const UserFeatures& u) {
  return {{"u_location", u.u_location}, {"u_url", u.u_url},
          {"u_description", u.u_description}, {"u_verified", u.u_verified},
          {"u_geo", u.u_geo}, {"u_age_ratio", u.u_age_ratio},
          {"u_avg_last20", u.u_avg_last20}};
}

namespace detail {
inline void reject_unknown_keys(const nlohmann::json& j, const nlohmann::json& known,
                                const char* what) {
  if (!j.is_object()) throw DataError(std::string(what) + ": expected a JSON object");
  for (auto& [k, _] : j.items()) {
    if (!known.contains(k)) throw DataError(std::string(what) + ": unknown field '" + k + "'");
  }
}
}  // namespace detail

/// Missing fields default to 0; unknown fields are rejected.
inline TweetFeatures tweet_features_from_json(const nlohmann::json& j) {
  detail::reject_unknown_keys(j, to_json(TweetFeatures{}), "tweet features");
  TweetFeatures f;
  const char* w = "tweet features";
  f.retweets_score = detail::optional_field<double>(j, "retweets_score", 0.0, w);
  f.favorites_score = detail::optional_field<double>(j, "favorites_score", 0.0, w);
  f.relevant_words_ratio = detail::optional_field<double>(j, "relevant_words_ratio", 0.0, w);
  f.sentiment_score = detail::optional_field<double>(j, "sentiment_score", 0.0, w);
  f.hashtag_count = detail::optional_field<std::int64_t>(j, "hashtag_count", 0, w);
  f.hashtag_chars = detail::optional_field<std::int64_t>(j, "hashtag_chars", 0, w);
  f.words_no = detail::optional_field<std::int64_t>(j, "words_no", 0, w);
  f.characters_no = detail::optional_field<std::int64_t>(j, "characters_no", 0, w);
  return f;
}

inline UserFeatures user_features_from_json(const nlohmann::json& j) {
  detail::reject_unknown_keys(j, to_json(UserFeatures{}), "user features");
  UserFeatures u;
  const char* w = "user features";
  u.u_location = detail::optional_field<int>(j, "u_location", 0, w);
  u.u_url = detail::optional_field<int>(j, "u_url", 0, w);
  u.u_description = detail::optional_field<int>(j, "u_description", 0, w);
  u.u_verified = detail::optional_field<int>(j, "u_verified", 0, w);
  u.u_geo = detail::optional_field<int>(j, "u_geo", 0, w);
  u.u_age_ratio = detail::optional_field<double>(j, "u_age_ratio", 0.0, w);
  u.u_avg_last20 = detail::optional_field<double>(j, "u_avg_last20", 0.0, w);
  return u;
}

}  // namespace credsift
