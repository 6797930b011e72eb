#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>

#include "credsift/errors.hpp"
#include "credsift/model.hpp"
#include "credsift/sentiment_label.hpp"

namespace credsift {

/// Weights of the two closed-form credibility formulas. The defaults are the
/// reference values.
struct FormulaWeights {
  // tweet formula
  double w_r = 0.1;
  double w_f = 0.3;
  double w_w = 0.5;
  double w_s = 0.1;
  // user formula
  double w_l = 0.01;
  double w_u = 0.01;
  double w_d = 0.03;
  double w_v = 0.1;
  double w_g = 0.08;
  double w_c = 0.07;
  double w_a20 = 0.7;

  /// When false, only non-negativity is checked.
  bool enforce_unit_sum = true;

  double tweet_sum() const { return w_r + w_f + w_w + w_s; }
  double user_sum() const { return w_l + w_u + w_d + w_v + w_g + w_c + w_a20; }

  void validate() const {
    for (double w : {w_r, w_f, w_w, w_s, w_l, w_u, w_d, w_v, w_g, w_c, w_a20}) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("formula weights must be finite and non-negative");
    }
    if (!enforce_unit_sum) return;
    if (std::abs(tweet_sum() - 1.0) > 1e-9)
      throw std::invalid_argument("tweet formula weights must sum to 1");
    if (std::abs(user_sum() - 1.0) > 1e-9)
      throw std::invalid_argument("user formula weights must sum to 1");
  }

  /// Flat `key=value` lines; keys are the member names. `#` starts a comment.
  /// Unlisted keys keep their defaults; unknown keys are rejected.
  static FormulaWeights parse(std::istream& in) {
    FormulaWeights w;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw DataError("weights line " + std::to_string(line_no) + ": missing '='");
      auto trim = [](std::string s) {
        auto f = s.find_first_not_of(" \t\r");
        auto l = s.find_last_not_of(" \t\r");
        return f == std::string::npos ? std::string{} : s.substr(f, l - f + 1);
      };
      std::string key = trim(line.substr(0, eq));
      std::string val = trim(line.substr(eq + 1));
      if (key == "enforce_unit_sum") {
        if (val != "true" && val != "false")
          throw DataError("weights: enforce_unit_sum must be true or false");
        w.enforce_unit_sum = val == "true";
        continue;
      }
      double* slot = w.slot(key);
      if (!slot) throw DataError("weights: unknown key '" + key + "'");
      try {
        std::size_t used = 0;
        *slot = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
      } catch (const std::exception&) {
        throw DataError("weights: bad number for '" + key + "': " + val);
      }
    }
    return w;
  }

  static FormulaWeights load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open weights file: " + path);
    return parse(in);
  }

 private:
  double* slot(const std::string& key) {
    if (key == "w_r") return &w_r;
    if (key == "w_f") return &w_f;
    if (key == "w_w") return &w_w;
    if (key == "w_s") return &w_s;
    if (key == "w_l") return &w_l;
    if (key == "w_u") return &w_u;
    if (key == "w_d") return &w_d;
    if (key == "w_v") return &w_v;
    if (key == "w_g") return &w_g;
    if (key == "w_c") return &w_c;
    if (key == "w_a20") return &w_a20;
    return nullptr;
  }
};

/// Per-token weight of the sentiment term. Very negative 0.75, negative and
/// very positive 0.50, positive 0.25, neutral 0.
///
/// Note the direction: strongly negative words raise T_S, which in turn
/// raises the tweet score. The table is used as is.
constexpr double sentiment_weight(SentimentLabel l) {
  switch (l) {
    case SentimentLabel::VeryNegative: return 0.75;
    case SentimentLabel::Negative: return 0.50;
    case SentimentLabel::Neutral: return 0.00;
    case SentimentLabel::Positive: return 0.25;
    case SentimentLabel::VeryPositive: return 0.50;
  }
  return 0.0;
}

/// T_S: mean per-token weight, 0 for no tokens. (A plain cumulative sum would
/// leave [0,1].)
inline double sentiment_term(std::span<const SentimentLabel> labels) {
  if (labels.empty()) return 0.0;
  double sum = 0.0;
  for (auto l : labels) sum += sentiment_weight(l);
  return sum / static_cast<double>(labels.size());
}

namespace detail {
inline void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " outside [0,1]");
}
inline void check_flag(int v, const char* name) {
  if (v != 0 && v != 1) throw std::invalid_argument(std::string(name) + " must be 0 or 1");
}
}  // namespace detail

inline double tweet_credibility(const TweetFeatures& f, const FormulaWeights& w = {}) {
  w.validate();
  detail::check_unit(f.retweets_score, "retweets_score");
  detail::check_unit(f.favorites_score, "favorites_score");
  detail::check_unit(f.relevant_words_ratio, "relevant_words_ratio");
  detail::check_unit(f.sentiment_score, "sentiment_score");
  return w.w_r * f.retweets_score + w.w_f * f.favorites_score +
         w.w_w * f.relevant_words_ratio + w.w_s * f.sentiment_score;
}

inline double user_credibility(const UserFeatures& u, const FormulaWeights& w = {}) {
  w.validate();
  detail::check_flag(u.u_location, "u_location");
  detail::check_flag(u.u_url, "u_url");
  detail::check_flag(u.u_description, "u_description");
  detail::check_flag(u.u_verified, "u_verified");
  detail::check_flag(u.u_geo, "u_geo");
  detail::check_unit(u.u_age_ratio, "u_age_ratio");
  detail::check_unit(u.u_avg_last20, "u_avg_last20");
  return w.w_l * u.u_location + w.w_u * u.u_url + w.w_d * u.u_description +
         w.w_v * u.u_verified + w.w_g * u.u_geo + w.w_c * u.u_age_ratio +
         w.w_a20 * u.u_avg_last20;
}

}  // namespace credsift
