#pragma once

#include <string>
#include <string_view>

#include "credsift/errors.hpp"

namespace credsift {

enum class SentimentLabel { VeryNegative, Negative, Neutral, Positive, VeryPositive };

inline const char* to_string(SentimentLabel l) {
  switch (l) {
    case SentimentLabel::VeryNegative: return "vneg";
    case SentimentLabel::Negative: return "neg";
    case SentimentLabel::Neutral: return "neu";
    case SentimentLabel::Positive: return "pos";
    case SentimentLabel::VeryPositive: return "vpos";
  }
  return "neu";
}

/// Accepts the short grades used by lexicon files and the long spellings.
inline SentimentLabel parse_sentiment_label(std::string_view s) {
  if (s == "vneg" || s == "very_negative") return SentimentLabel::VeryNegative;
  if (s == "neg" || s == "negative") return SentimentLabel::Negative;
  if (s == "neu" || s == "neutral") return SentimentLabel::Neutral;
  if (s == "pos" || s == "positive") return SentimentLabel::Positive;
  if (s == "vpos" || s == "very_positive") return SentimentLabel::VeryPositive;
  throw DataError("unknown sentiment grade '" + std::string(s) + "'");
}

/// Collapses the five grades onto the sign of the opinion: -1, 0 or +1.
inline int polarity(SentimentLabel l) {
  switch (l) {
    case SentimentLabel::VeryNegative:
    case SentimentLabel::Negative: return -1;
    case SentimentLabel::Positive:
    case SentimentLabel::VeryPositive: return 1;
    default: return 0;
  }
}

}  // namespace credsift
