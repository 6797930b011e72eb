#include <gtest/gtest.h>

#include <atomic>
#include <sstream>
#include <thread>

#include "credsift/sentiment.hpp"

using namespace credsift;
using L = SentimentLabel;

namespace {

class FixedProvider final : public SentimentProvider {
 public:
  explicit FixedProvider(L label) : label_(label) {}
  L classify(std::string_view) override { return label_; }

 private:
  L label_;
};

class FailingProvider final : public SentimentProvider {
 public:
  L classify(std::string_view) override { throw ProviderError("quota exceeded"); }
};

// Detects overlapping calls.
class NonReentrant final : public SentimentProvider {
 public:
  L classify(std::string_view) override {
    if (busy_.exchange(true)) overlapped = true;
    std::this_thread::yield();
    busy_ = false;
    return L::Neutral;
  }
  bool reentrant() const override { return false; }
  std::atomic<bool> overlapped{false};

 private:
  std::atomic<bool> busy_{false};
};

}  // namespace

TEST(SentimentLabels, NamesRoundTrip) {
  for (L l : {L::VeryNegative, L::Negative, L::Neutral, L::Positive, L::VeryPositive})
    EXPECT_EQ(parse_sentiment_label(to_string(l)), l);
  EXPECT_THROW(parse_sentiment_label("meh"), DataError);
}

TEST(WordLexicon, ParseAndLookup) {
  std::istringstream in("# grades\nGreat\tvpos\nbad\tneg\r\n\nmeh\tneu\n");
  auto lex = WordLexicon::parse(in);
  EXPECT_EQ(lex.size(), 3u);
  EXPECT_EQ(word_sentiment("great", lex), L::VeryPositive);
  EXPECT_EQ(word_sentiment("BAD", lex), L::Negative);
  EXPECT_EQ(word_sentiment("unknown", lex), L::Neutral);
  std::istringstream bad("notab\n");
  EXPECT_THROW(WordLexicon::parse(bad), DataError);
  std::istringstream grade("word\tsuper\n");
  EXPECT_THROW(WordLexicon::parse(grade), DataError);
  EXPECT_THROW(WordLexicon::load("/nonexistent/lexicon.tsv"), IoError);
}

TEST(LexiconProvider, SignOfSummedPolarity) {
  LexiconProvider p;
  EXPECT_EQ(p.classify("a great day"), L::Positive);
  EXPECT_EQ(p.classify("terrible news"), L::Negative);
  EXPECT_EQ(p.classify("the bus arrived"), L::Neutral);
  // terrible (-2) + good (+1) + nice (+1) = 0
  EXPECT_EQ(p.classify("terrible but good and nice"), L::Neutral);
}

TEST(ClassifyText, NeutralOverrideTriggers) {
  FixedProvider neutral(L::Neutral);
  EXPECT_EQ(classify_text("a silly thing", neutral), L::Negative);
  EXPECT_EQ(classify_text("a good thing", neutral), L::Positive);
  // Negative triggers win over positive ones.
  EXPECT_EQ(classify_text("good but they block it", neutral), L::Negative);
  EXPECT_EQ(classify_text("nothing here", neutral), L::Neutral);
  EXPECT_EQ(classify_text("GREAT!", neutral), L::Positive);
}

TEST(ClassifyText, NonNeutralPassesThroughCollapsed) {
  FixedProvider pos(L::VeryPositive);
  EXPECT_EQ(classify_text("they kill", pos), L::Positive);
  FixedProvider neg(L::Negative);
  EXPECT_EQ(classify_text("great", neg), L::Negative);
}

TEST(ClassifyText, ProviderFailureIsNotNeutral) {
  FailingProvider p;
  EXPECT_THROW(classify_text("hello", p), ClassificationError);
}

TEST(ClassifyText, OutputIsThreeValued) {
  LexiconProvider p;
  for (const char* t : {"love it", "hate it", "ok", "awful but amazing", "kill"}) {
    L l = classify_text(t, p);
    EXPECT_TRUE(l == L::Negative || l == L::Neutral || l == L::Positive) << t;
  }
}

TEST(SerializedProvider, PreventsOverlap) {
  NonReentrant inner;
  SerializedProvider wrapped(inner);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&] {
      for (int i = 0; i < 2000; ++i) wrapped.classify("x");
    });
  for (auto& th : pool) th.join();
  EXPECT_FALSE(inner.overlapped);
}

TEST(TriggerLexicon, SetsMustBeDisjoint) {
  EXPECT_THROW(TriggerLexicon(WordSet{"bad", "odd"}, WordSet{"odd"}), DataError);
  EXPECT_NO_THROW(TriggerLexicon(WordSet{"bad"}, WordSet{"good"}));
}

TEST(Topics, FilterFindsSections) {
  const auto& topics = default_topics();
  auto s = topic_filter("Refugees crossing the border after the attack", topics, "en");
  EXPECT_EQ(s, (std::set<TopicSection>{TopicSection::FightAndAttack,
                                       TopicSection::RefugeeCrisis}));
  EXPECT_TRUE(topic_filter("lunch was fine", topics, "en").empty());
  // Whole tokens only.
  EXPECT_TRUE(topic_filter("warm weather", topics, "en").empty());
  EXPECT_THROW(topic_filter("krieg", topics, "xx"), DataError);
}

TEST(Topics, ParseRequiresAllSections) {
  std::ostringstream full;
  for (auto sec : kAllTopicSections) full << to_string(sec) << "\tde\twort" << '\n';
  std::istringstream in(full.str());
  auto list = TopicKeywordList::parse(in);
  EXPECT_TRUE(list.has_language("de"));
  EXPECT_EQ(list.languages(), std::vector<std::string>{"de"});

  std::istringstream partial("NATO\tde\tnato\n");
  EXPECT_THROW(TopicKeywordList::parse(partial), DataError);
  std::istringstream malformed("NATO de nato\n");
  EXPECT_THROW(TopicKeywordList::parse(malformed), DataError);
}

TEST(Topics, BundledFileIsValid) {
  auto list = TopicKeywordList::load(std::string(CREDSIFT_DATA_DIR) + "/topics.tsv");
  EXPECT_TRUE(list.has_language("en"));
  EXPECT_TRUE(list.has_language("de"));
  EXPECT_FALSE(topic_filter("Krieg und Frieden", list, "de").empty());
}

TEST(Translate, IdentityAndTable) {
  IdentityTranslator id;
  EXPECT_EQ(translate("Hallo Welt", "de", "en", id), "Hallo Welt");
  TableTranslator table({{"krieg", "war"}, {"frieden", "peace"}});
  EXPECT_EQ(translate("Krieg  und Frieden!", "de", "en", table), "war und peace");
  EXPECT_EQ(translate("Krieg", "en", "en", table), "Krieg");
}
