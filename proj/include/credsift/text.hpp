#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "credsift/errors.hpp"

namespace credsift {

// ---------------------------------------------------------------------------
// UTF-8 helpers
// ---------------------------------------------------------------------------

/// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte at
/// a time so that arbitrary input never throws.
inline std::u32string utf8_decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 >> 5) == 0x6) {
      len = 2;
    } else if ((b0 >> 4) == 0xE) {
      len = 3;
    } else if ((b0 >> 3) == 0x1E) {
      len = 4;
    }
    if (len > 1) {
      if (i + len > s.size()) {
        len = 1;
      } else {
        cp = b0 & (0x7F >> len);
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
          auto b = static_cast<unsigned char>(s[i + k]);
          if ((b >> 6) != 0x2) {
            ok = false;
            break;
          }
          cp = (cp << 6) | (b & 0x3F);
        }
        if (!ok) {
          cp = 0xFFFD;
          len = 1;
        }
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline std::string utf8_encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

inline bool is_unicode_space(char32_t c) {
  switch (c) {
    case U'\t': case U'\n': case U'\v': case U'\f': case U'\r': case U' ':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

/// ASCII punctuation plus the general-punctuation block and a handful of
/// Latin-1 marks that show up in posts (guillemets, inverted marks).
inline bool is_punctuation(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  switch (c) {
    case 0xA1: case 0xAB: case 0xB7: case 0xBB: case 0xBF:
      return true;
    default:
      return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
             (c >= 0x3001 && c <= 0x3003);
  }
}

/// ASCII-only case folding; non-ASCII bytes pass through untouched.
inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

struct Token {
  std::string text;  // punctuation-stripped, original case; empty if punctuation-only
  bool punctuation = false;
};

/// Splits on Unicode whitespace, then strips leading and trailing punctuation
/// from every piece. A piece that strips down to nothing is kept as a
/// punctuation token so it still counts toward the total.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::u32string cps = utf8_decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_unicode_space(cps[i])) ++i;
    if (i >= cps.size()) break;
    std::size_t start = i;
    while (i < cps.size() && !is_unicode_space(cps[i])) ++i;
    std::size_t b = start;
    std::size_t e = i;
    while (b < e && is_punctuation(cps[b])) ++b;
    while (e > b && is_punctuation(cps[e - 1])) --e;
    Token t;
    if (b == e) {
      t.punctuation = true;
    } else {
      t.text = utf8_encode(std::u32string_view(cps).substr(b, e - b));
    }
    tokens.push_back(std::move(t));
  }
  return tokens;
}

/// Lower-cased, non-punctuation tokens of `text`.
inline std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> words;
  for (auto& t : tokenize(text)) {
    if (!t.punctuation) words.push_back(to_lower(t.text));
  }
  return words;
}

// ---------------------------------------------------------------------------
// Word sets (stopwords and friends)
// ---------------------------------------------------------------------------

/// Case-insensitive set of words.
class WordSet {
 public:
  WordSet() = default;
  WordSet(std::initializer_list<std::string_view> words) {
    for (auto w : words) insert(w);
  }

  void insert(std::string_view w) { words_.insert(to_lower(w)); }
  bool contains(std::string_view w) const { return words_.count(to_lower(w)) != 0; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  std::vector<std::string> sorted() const {
    std::vector<std::string> v(words_.begin(), words_.end());
    std::sort(v.begin(), v.end());
    return v;
  }

  /// One token per line, UTF-8; blank lines and lines starting with '#' are
  /// skipped. Surrounding whitespace is trimmed.
  static WordSet parse(std::istream& in) {
    WordSet set;
    std::string line;
    while (std::getline(in, line)) {
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      auto e = line.find_last_not_of(" \t\r");
      set.insert(std::string_view(line).substr(b, e - b + 1));
    }
    return set;
  }

  static WordSet load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open word list: " + path);
    return parse(in);
  }

 private:
  std::unordered_set<std::string> words_;
};

/// Default English stopword list.
inline const WordSet& default_stopwords() {
  static const WordSet set{
      "a", "about", "above", "after", "again", "against", "all", "am", "an",
      "and", "any", "are", "as", "at", "be", "because", "been", "before",
      "being", "below", "between", "both", "but", "by", "can", "could", "did",
      "do", "does", "doing", "down", "during", "each", "few", "for", "from",
      "further", "had", "has", "have", "having", "he", "her", "here", "hers",
      "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is",
      "it", "its", "itself", "just", "me", "more", "most", "my", "myself",
      "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or",
      "other", "our", "ours", "ourselves", "out", "over", "own", "same", "she",
      "should", "so", "some", "such", "than", "that", "the", "their",
      "theirs", "them", "themselves", "then", "there", "these", "they", "this",
      "those", "through", "to", "too", "under", "until", "up", "very", "was",
      "we", "were", "what", "when", "where", "which", "while", "who", "whom",
      "why", "will", "with", "would", "you", "your", "yours", "yourself",
      "yourselves", "rt"};
  return set;
}

}  // namespace credsift
