#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "credsift/model.hpp"
#include "credsift/scoring.hpp"
#include "credsift/sentiment.hpp"
#include "credsift/text.hpp"

namespace credsift {

/// Share of the follower base assumed to see a post just by it being posted.
inline constexpr double kReachFraction = 0.03;

template <typename F>
concept TokenSentimentFn = std::is_invocable_r_v<SentimentLabel, F, std::string_view>;

/// Engagement count over the reachable audience, clamped to [0,1]. An account
/// without followers has no reach and scores 0.
inline double reach_score(std::int64_t count, std::int64_t followers) {
  if (followers <= 0 || count <= 0) return 0.0;
  double reachable = kReachFraction * static_cast<double>(followers);
  return std::min(1.0, static_cast<double>(count) / reachable);
}

template <TokenSentimentFn SentimentFn>
TweetFeatures extract_tweet_features(const Tweet& tweet, const UserProfile& author,
                                     const WordSet& stopwords, SentimentFn&& sentiment_fn) {
  TweetFeatures f;
  f.retweets_score = reach_score(tweet.retweets_no, author.followers_no);
  f.favorites_score = reach_score(tweet.favorites_no, author.followers_no);

  auto tokens = tokenize(tweet.text);
  std::int64_t relevant = 0;
  std::vector<SentimentLabel> labels;
  labels.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.punctuation) continue;
    labels.push_back(sentiment_fn(std::string_view(t.text)));
    if (!stopwords.contains(t.text)) ++relevant;
  }
  f.words_no = relevant;
  f.relevant_words_ratio =
      tokens.empty() ? 0.0 : static_cast<double>(relevant) / static_cast<double>(tokens.size());
  f.sentiment_score = sentiment_term(labels);

  f.hashtag_count = static_cast<std::int64_t>(tweet.hashtags.size());
  for (const auto& h : tweet.hashtags) {
    std::size_t n = utf8_decode(h).size();
    f.hashtag_chars += static_cast<std::int64_t>(n > 0 && h.front() == '#' ? n - 1 : n);
  }
  f.characters_no = static_cast<std::int64_t>(utf8_decode(tweet.text).size());
  return f;
}

/// Convenience overload using a word lexicon for token sentiment.
inline TweetFeatures extract_tweet_features(const Tweet& tweet, const UserProfile& author,
                                            const WordSet& stopwords = default_stopwords(),
                                            const WordLexicon& lexicon = default_word_lexicon()) {
  return extract_tweet_features(tweet, author, stopwords, [&lexicon](std::string_view tok) {
    return word_sentiment(tok, lexicon);
  });
}

/// U_C is months(created -> now) / months(launch -> now); U_A20 is the mean
/// of the supplied recent tweet scores (0 for none).
inline UserFeatures extract_user_features(const UserProfile& user, Timestamp now,
                                          std::span<const double> last20_scores) {
  if (now < user.creation_date)
    throw std::invalid_argument("user " + user.id + ": evaluation time precedes account creation");
  if (last20_scores.size() > kAverageWindow)
    throw std::invalid_argument("at most 20 recent tweet scores may be averaged");

  UserFeatures u;
  u.u_location = user.has_location ? 1 : 0;
  u.u_url = user.has_url ? 1 : 0;
  u.u_description = user.has_description ? 1 : 0;
  u.u_verified = user.is_verified ? 1 : 0;
  u.u_geo = user.has_geo ? 1 : 0;

  Timestamp created = std::max(user.creation_date, kPlatformLaunch);
  double total = months_between(kPlatformLaunch, std::max(now, kPlatformLaunch));
  double age = months_between(created, std::max(now, created));
  u.u_age_ratio = total > 0.0 ? std::clamp(age / total, 0.0, 1.0) : 1.0;

  if (!last20_scores.empty()) {
    double sum = 0.0;
    for (double s : last20_scores) {
      if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("recent tweet score outside [0,1]");
      sum += s;
    }
    u.u_avg_last20 = sum / static_cast<double>(last20_scores.size());
  }
  return u;
}

}  // namespace credsift
