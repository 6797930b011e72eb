#pragma once

#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "credsift/errors.hpp"
#include "credsift/sentiment_label.hpp"
#include "credsift/text.hpp"

namespace credsift {

// ---------------------------------------------------------------------------
// Word-level lexicon
// ---------------------------------------------------------------------------

/// Five-grade word lexicon. Lookups are case-insensitive whole-token matches.
class WordLexicon {
 public:
  WordLexicon() = default;
  WordLexicon(std::initializer_list<std::pair<std::string_view, SentimentLabel>> entries) {
    for (auto& [w, l] : entries) set(w, l);
  }

  void set(std::string_view word, SentimentLabel label) { entries_[to_lower(word)] = label; }

  std::optional<SentimentLabel> find(std::string_view word) const {
    auto it = entries_.find(to_lower(word));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return entries_.size(); }

  /// `word<TAB>grade` lines, grade in {vneg,neg,neu,pos,vpos}; '#' comments.
  static WordLexicon parse(std::istream& in) {
    WordLexicon lex;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0)
        throw DataError("lexicon line " + std::to_string(line_no) + ": expected word<TAB>grade");
      lex.set(line.substr(0, tab), parse_sentiment_label(line.substr(tab + 1)));
    }
    return lex;
  }

  static WordLexicon load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon: " + path);
    return parse(in);
  }

 private:
  std::unordered_map<std::string, SentimentLabel> entries_;
};

/// Lexicon label for the token, Neutral when absent.
inline SentimentLabel word_sentiment(std::string_view token, const WordLexicon& lexicon) {
  return lexicon.find(token).value_or(SentimentLabel::Neutral);
}

/// Small built-in English lexicon used when no lexicon file is supplied.
inline const WordLexicon& default_word_lexicon() {
  using L = SentimentLabel;
  static const WordLexicon lex{
      {"terrible", L::VeryNegative}, {"horrible", L::VeryNegative},
      {"awful", L::VeryNegative},    {"kill", L::VeryNegative},
      {"killed", L::VeryNegative},   {"death", L::VeryNegative},
      {"disaster", L::VeryNegative}, {"hate", L::VeryNegative},
      {"fuck", L::VeryNegative},     {"fucking", L::VeryNegative},
      {"attack", L::Negative},       {"bad", L::Negative},
      {"sad", L::Negative},          {"lose", L::Negative},
      {"silly", L::Negative},        {"block", L::Negative},
      {"incident", L::Negative},     {"protest", L::Negative},
      {"wrong", L::Negative},        {"fear", L::Negative},
      {"crisis", L::Negative},       {"ridiculous", L::Negative},
      {"good", L::Positive},         {"nice", L::Positive},
      {"thank", L::Positive},        {"thanks", L::Positive},
      {"happy", L::Positive},        {"peace", L::Positive},
      {"help", L::Positive},         {"safe", L::Positive},
      {"great", L::VeryPositive},    {"champion", L::VeryPositive},
      {"inspiring", L::VeryPositive}, {"excellent", L::VeryPositive},
      {"amazing", L::VeryPositive},  {"love", L::VeryPositive},
  };
  return lex;
}

// ---------------------------------------------------------------------------
// Neutral-override triggers
// ---------------------------------------------------------------------------

/// Words that reclassify provider-neutral text. The two sets are disjoint.
class TriggerLexicon {
 public:
  TriggerLexicon(WordSet negative, WordSet positive)
      : negative_(std::move(negative)), positive_(std::move(positive)) {
    for (const auto& w : negative_.sorted()) {
      if (positive_.contains(w))
        throw DataError("trigger word '" + w + "' is both negative and positive");
    }
  }

  const WordSet& negative() const { return negative_; }
  const WordSet& positive() const { return positive_; }

 private:
  WordSet negative_;
  WordSet positive_;
};

inline const TriggerLexicon& default_trigger_lexicon() {
  static const TriggerLexicon lex(
      WordSet{"silly", "death", "fuck", "kill", "bad", "lose", "fucking", "block",
              "incident", "protest"},
      WordSet{"great", "champion", "good", "inspiring", "thank"});
  return lex;
}

// ---------------------------------------------------------------------------
// Providers
// ---------------------------------------------------------------------------

/// Text-level sentiment service. Implementations return Negative, Neutral or
/// Positive and signal failure by throwing ProviderError.
class SentimentProvider {
 public:
  virtual ~SentimentProvider() = default;
  virtual SentimentLabel classify(std::string_view text) = 0;
  /// Non-reentrant providers are wrapped in a SerializedProvider by the engine.
  virtual bool reentrant() const { return true; }
};

/// Built-in provider: sums word polarities (very = ±2, plain = ±1) and reports
/// the sign.
class LexiconProvider final : public SentimentProvider {
 public:
  explicit LexiconProvider(const WordLexicon& lexicon = default_word_lexicon())
      : lexicon_(&lexicon) {}

  SentimentLabel classify(std::string_view text) override {
    int score = 0;
    for (const auto& w : word_tokens(text)) {
      switch (word_sentiment(w, *lexicon_)) {
        case SentimentLabel::VeryNegative: score -= 2; break;
        case SentimentLabel::Negative: score -= 1; break;
        case SentimentLabel::Positive: score += 1; break;
        case SentimentLabel::VeryPositive: score += 2; break;
        default: break;
      }
    }
    if (score < 0) return SentimentLabel::Negative;
    if (score > 0) return SentimentLabel::Positive;
    return SentimentLabel::Neutral;
  }

 private:
  const WordLexicon* lexicon_;
};

/// Serializes calls into a provider that is not safe to call concurrently.
class SerializedProvider final : public SentimentProvider {
 public:
  explicit SerializedProvider(SentimentProvider& inner) : inner_(&inner) {}

  SentimentLabel classify(std::string_view text) override {
    std::lock_guard lock(mu_);
    return inner_->classify(text);
  }

 private:
  SentimentProvider* inner_;
  std::mutex mu_;
};

/// Raised when the provider fails; distinct from a Neutral answer.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Provider label, with Neutral widened by the trigger lexicon: any negative
/// trigger makes the text Negative, otherwise any positive trigger makes it
/// Positive. Non-neutral provider answers pass through untouched.
inline SentimentLabel classify_text(std::string_view text, SentimentProvider& provider,
                                    const TriggerLexicon& lexicon = default_trigger_lexicon()) {
  SentimentLabel base;
  try {
    base = provider.classify(text);
  } catch (const std::exception& e) {
    throw ClassificationError(std::string("sentiment provider failed: ") + e.what());
  }
  switch (base) {
    case SentimentLabel::VeryNegative:
    case SentimentLabel::Negative: return SentimentLabel::Negative;
    case SentimentLabel::Positive:
    case SentimentLabel::VeryPositive: return SentimentLabel::Positive;
    case SentimentLabel::Neutral: break;
  }
  bool pos = false;
  for (const auto& w : word_tokens(text)) {
    if (lexicon.negative().contains(w)) return SentimentLabel::Negative;
    pos = pos || lexicon.positive().contains(w);
  }
  return pos ? SentimentLabel::Positive : SentimentLabel::Neutral;
}

// ---------------------------------------------------------------------------
// Topic keywords
// ---------------------------------------------------------------------------

enum class TopicSection { NATO, EU, FightAndAttack, Civilian, Peace, RefugeeCrisis };

inline constexpr std::array<TopicSection, 6> kAllTopicSections{
    TopicSection::NATO,     TopicSection::EU,    TopicSection::FightAndAttack,
    TopicSection::Civilian, TopicSection::Peace, TopicSection::RefugeeCrisis};

inline const char* to_string(TopicSection s) {
  switch (s) {
    case TopicSection::NATO: return "NATO";
    case TopicSection::EU: return "EU";
    case TopicSection::FightAndAttack: return "FightAndAttack";
    case TopicSection::Civilian: return "Civilian";
    case TopicSection::Peace: return "Peace";
    case TopicSection::RefugeeCrisis: return "RefugeeCrisis";
  }
  return "";
}

inline TopicSection parse_topic_section(std::string_view s) {
  for (auto sec : kAllTopicSections) {
    if (s == to_string(sec)) return sec;
  }
  throw DataError("unknown topic section '" + std::string(s) + "'");
}

/// Keyword lists per language, six fixed sections each.
class TopicKeywordList {
 public:
  void add(std::string_view language, TopicSection section, std::string_view word) {
    by_language_[std::string(language)][static_cast<std::size_t>(section)].insert(word);
  }

  bool has_language(std::string_view language) const {
    return by_language_.count(std::string(language)) != 0;
  }

  std::vector<std::string> languages() const {
    std::vector<std::string> out;
    for (auto& [lang, _] : by_language_) out.push_back(lang);
    return out;
  }

  const WordSet& words(std::string_view language, TopicSection section) const {
    auto it = by_language_.find(std::string(language));
    if (it == by_language_.end())
      throw DataError("no topic keywords for language '" + std::string(language) + "'");
    return it->second[static_cast<std::size_t>(section)];
  }

  /// Every language must populate all six sections.
  void validate() const {
    for (auto& [lang, sections] : by_language_) {
      for (auto sec : kAllTopicSections) {
        if (sections[static_cast<std::size_t>(sec)].empty())
          throw DataError("topic list for '" + lang + "' lacks section " + to_string(sec));
      }
    }
  }

  /// `section<TAB>language<TAB>word` lines; '#' comments.
  static TopicKeywordList parse(std::istream& in) {
    TopicKeywordList list;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto t1 = line.find('\t');
      auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
      if (t2 == std::string::npos || t2 + 1 >= line.size())
        throw DataError("topic line " + std::to_string(line_no) +
                        ": expected section<TAB>language<TAB>word");
      list.add(line.substr(t1 + 1, t2 - t1 - 1), parse_topic_section(line.substr(0, t1)),
               line.substr(t2 + 1));
    }
    list.validate();
    return list;
  }

  static TopicKeywordList load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open topic list: " + path);
    return parse(in);
  }

 private:
  std::map<std::string, std::array<WordSet, 6>> by_language_;
};

/// English sample list covering the six sections.
inline const TopicKeywordList& default_topics() {
  static const TopicKeywordList list = [] {
    TopicKeywordList l;
    auto add = [&](TopicSection s, std::initializer_list<const char*> words) {
      for (auto w : words) l.add("en", s, w);
    };
    add(TopicSection::NATO,
        {"nato", "albania", "belgium", "bulgaria", "canada", "croatia", "denmark",
         "estonia", "france", "germany", "greece", "hungary", "iceland", "italy",
         "latvia", "lithuania", "luxembourg", "montenegro", "netherlands", "norway",
         "poland", "portugal", "romania", "slovakia", "slovenia", "spain", "turkey",
         "uk", "usa", "czechia"});
    add(TopicSection::EU, {"eu", "austria", "cyprus", "finland", "ireland", "malta", "sweden"});
    add(TopicSection::FightAndAttack,
        {"attack", "attacks", "attacked", "fight", "fighting", "bomb", "bombing",
         "terror", "terrorist", "terrorism", "shooting", "war", "explosion"});
    add(TopicSection::Civilian, {"civilian", "civilians", "victims", "children", "casualties"});
    add(TopicSection::Peace, {"peace", "ceasefire", "truce", "solidarity"});
    add(TopicSection::RefugeeCrisis,
        {"refugee", "refugees", "migrant", "migrants", "asylum", "border", "syria",
         "afghanistan", "iraq", "immigration"});
    return l;
  }();
  return list;
}

/// Sections whose words appear as whole tokens in `text` (case-insensitive).
inline std::set<TopicSection> topic_filter(std::string_view text, const TopicKeywordList& topics,
                                           std::string_view language) {
  if (!topics.has_language(language))
    throw DataError("no topic keywords for language '" + std::string(language) + "'");
  std::set<TopicSection> found;
  auto words = word_tokens(text);
  for (auto sec : kAllTopicSections) {
    const WordSet& set = topics.words(language, sec);
    for (const auto& w : words) {
      if (set.contains(w)) {
        found.insert(sec);
        break;
      }
    }
  }
  return found;
}

// ---------------------------------------------------------------------------
// Translation hook
// ---------------------------------------------------------------------------

class Translator {
 public:
  virtual ~Translator() = default;
  /// Throws ProviderError on failure.
  virtual std::string translate(std::string_view text, std::string_view from,
                                std::string_view to) = 0;
};

class IdentityTranslator final : public Translator {
 public:
  std::string translate(std::string_view text, std::string_view, std::string_view) override {
    return std::string(text);
  }
};

/// Word-by-word replacement from a fixed table; unknown words pass through.
/// Whitespace is normalized to single spaces.
class TableTranslator final : public Translator {
 public:
  explicit TableTranslator(std::map<std::string, std::string> table) : table_(std::move(table)) {}

  std::string translate(std::string_view text, std::string_view, std::string_view) override {
    std::string out;
    for (auto& tok : tokenize(text)) {
      if (tok.punctuation) continue;
      auto it = table_.find(to_lower(tok.text));
      if (!out.empty()) out.push_back(' ');
      out += it == table_.end() ? tok.text : it->second;
    }
    return out;
  }

 private:
  std::map<std::string, std::string> table_;
};

inline std::string translate(std::string_view text, std::string_view from, std::string_view to,
                             Translator& translator) {
  if (from == to) return std::string(text);
  return translator.translate(text, from, to);
}

}  // namespace credsift
