#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "credsift/errors.hpp"
#include "credsift/model.hpp"

namespace credsift {

// ---------------------------------------------------------------------------
// Feature configurations
// ---------------------------------------------------------------------------

enum class FeatureId {
  RetweetsScore,
  FavoritesScore,
  RelevantWordsRatio,
  SentimentScore,
  HashtagChars,
  HashtagCount,
};

inline const char* to_string(FeatureId f) {
  switch (f) {
    case FeatureId::RetweetsScore: return "retweets_score";
    case FeatureId::FavoritesScore: return "favorites_score";
    case FeatureId::RelevantWordsRatio: return "relevant_words_ratio";
    case FeatureId::SentimentScore: return "sentiment_score";
    case FeatureId::HashtagChars: return "hashtag_chars";
    case FeatureId::HashtagCount: return "hashtag_count";
  }
  return "";
}

enum class ConfigId { C1, C2, C3, C4, C5, C6 };

inline const char* to_string(ConfigId c) {
  static constexpr const char* names[] = {"C1", "C2", "C3", "C4", "C5", "C6"};
  return names[static_cast<int>(c)];
}

inline ConfigId parse_config_id(std::string_view s) {
  for (int i = 0; i < 6; ++i) {
    auto c = static_cast<ConfigId>(i);
    if (s == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown feature configuration '" + std::string(s) + "'");
}

struct FeatureConfig {
  ConfigId id = ConfigId::C1;
  std::vector<FeatureId> features;
  bool exclude_retweets_from_training = false;
};

/// The six input configurations.
///
///  C1 basic: retweets, favorites, relevant-words ratio
///  C2 C1 trained without retweets
///  C3 C1 + sentiment
///  C4 C3 + hashtag characters
///  C5 C3 + hashtag count
///  C6 C1 + hashtag count + hashtag characters
inline FeatureConfig feature_config(ConfigId id) {
  using F = FeatureId;
  FeatureConfig c;
  c.id = id;
  c.features = {F::RetweetsScore, F::FavoritesScore, F::RelevantWordsRatio};
  switch (id) {
    case ConfigId::C1: break;
    case ConfigId::C2: c.exclude_retweets_from_training = true; break;
    case ConfigId::C3: c.features.push_back(F::SentimentScore); break;
    case ConfigId::C4:
      c.features.push_back(F::SentimentScore);
      c.features.push_back(F::HashtagChars);
      break;
    case ConfigId::C5:
      c.features.push_back(F::SentimentScore);
      c.features.push_back(F::HashtagCount);
      break;
    case ConfigId::C6:
      c.features.push_back(F::HashtagCount);
      c.features.push_back(F::HashtagChars);
      break;
  }
  return c;
}

/// Dataset-level maxima for min-max scaling of the integer hashtag features.
struct FeatureScaling {
  double max_hashtag_count = 1.0;
  double max_hashtag_chars = 1.0;

  static FeatureScaling fit(std::span<const TweetFeatures> data) {
    FeatureScaling s{0.0, 0.0};
    for (const auto& f : data) {
      s.max_hashtag_count = std::max(s.max_hashtag_count, static_cast<double>(f.hashtag_count));
      s.max_hashtag_chars = std::max(s.max_hashtag_chars, static_cast<double>(f.hashtag_chars));
    }
    return s;
  }
};

/// Projects features in the configuration's order. Hashtag integers are
/// scaled by the recorded maxima and clamped to [0,1] (a zero maximum maps
/// everything to 0).
inline std::vector<double> select_features(const FeatureConfig& config, const TweetFeatures& f,
                                           const FeatureScaling& scaling = {}) {
  auto scale = [](double v, double max) { return max > 0.0 ? std::clamp(v / max, 0.0, 1.0) : 0.0; };
  std::vector<double> x;
  x.reserve(config.features.size());
  for (auto id : config.features) {
    switch (id) {
      case FeatureId::RetweetsScore: x.push_back(f.retweets_score); break;
      case FeatureId::FavoritesScore: x.push_back(f.favorites_score); break;
      case FeatureId::RelevantWordsRatio: x.push_back(f.relevant_words_ratio); break;
      case FeatureId::SentimentScore: x.push_back(f.sentiment_score); break;
      case FeatureId::HashtagChars:
        x.push_back(scale(static_cast<double>(f.hashtag_chars), scaling.max_hashtag_chars));
        break;
      case FeatureId::HashtagCount:
        x.push_back(scale(static_cast<double>(f.hashtag_count), scaling.max_hashtag_count));
        break;
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// Topology
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultHiddenUnits = 13;
inline constexpr double kDefaultThreshold = 0.6;
inline constexpr double kDefaultLearningRate = 0.1;
inline constexpr std::uint64_t kDefaultIterations = 100'000;

/// N_h = N_s / (alpha * (N_i + N_o)), floored, at least 1.
inline std::size_t hidden_upper_bound(std::size_t n_samples, std::size_t n_inputs,
                                      std::size_t n_outputs, double alpha) {
  if (!(alpha >= 2.0 && alpha <= 10.0)) throw std::invalid_argument("alpha must lie in [2,10]");
  if (n_samples == 0 || n_inputs == 0 || n_outputs == 0)
    throw std::invalid_argument("sample, input and output counts must be positive");
  double bound = std::floor(static_cast<double>(n_samples) /
                            (alpha * static_cast<double>(n_inputs + n_outputs)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(bound));
}

struct NnTopology {
  std::size_t n_inputs = 3;
  std::size_t n_hidden = kDefaultHiddenUnits;
  std::size_t n_outputs = 1;
  std::optional<std::size_t> n_samples_hint;
  double alpha = 2.0;

  void validate() const {
    if (n_inputs == 0 || n_hidden == 0) throw std::invalid_argument("layer sizes must be positive");
    if (n_outputs != 1) throw std::invalid_argument("the classifier has exactly one output");
    if (n_samples_hint) {
      auto bound = hidden_upper_bound(*n_samples_hint, n_inputs, n_outputs, alpha);
      if (n_hidden > bound)
        throw std::invalid_argument("n_hidden " + std::to_string(n_hidden) +
                                    " exceeds the overfitting bound " + std::to_string(bound));
    }
  }
};

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

struct LabeledExample {
  std::vector<double> features;
  int label = 0;  // 1 = credible
  bool is_retweet = false;
};

/// Annotators marked credible posts 0 and not-credible posts 1; internally
/// 1 means credible.
inline int label_from_annotation(int annotation) {
  if (annotation != 0 && annotation != 1) throw DataError("annotation must be 0 or 1");
  return 1 - annotation;
}

/// Single-hidden-layer network with logistic units on both layers.
struct NnModel {
  std::size_t n_inputs = 0;
  std::size_t n_hidden = 0;
  std::vector<double> w1;  // n_hidden x n_inputs, row-major
  std::vector<double> b1;  // n_hidden
  std::vector<double> w2;  // n_hidden
  double b2 = 0.0;
  std::uint64_t rng_seed = 0;
  FeatureConfig config = feature_config(ConfigId::C1);
  FeatureScaling scaling;

  std::size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + 1; }

  /// Flat view: w1, b1, w2, b2.
  double& parameter(std::size_t k) {
    if (k < w1.size()) return w1[k];
    k -= w1.size();
    if (k < b1.size()) return b1[k];
    k -= b1.size();
    if (k < w2.size()) return w2[k];
    return b2;
  }

  void check_invariants() const {
    if (w1.size() != n_hidden * n_inputs || b1.size() != n_hidden || w2.size() != n_hidden)
      throw DataError("model parameter dimensions do not match its topology");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(w1.begin(), w1.end(), finite) || !std::all_of(b1.begin(), b1.end(), finite) ||
        !std::all_of(w2.begin(), w2.end(), finite) || !std::isfinite(b2))
      throw DataError("model has non-finite parameters");
  }

  friend bool operator==(const NnModel& a, const NnModel& b) {
    return a.n_inputs == b.n_inputs && a.n_hidden == b.n_hidden && a.w1 == b.w1 &&
           a.b1 == b.b1 && a.w2 == b.w2 && a.b2 == b.b2 && a.rng_seed == b.rng_seed &&
           a.config.id == b.config.id &&
           a.scaling.max_hashtag_count == b.scaling.max_hashtag_count &&
           a.scaling.max_hashtag_chars == b.scaling.max_hashtag_chars;
  }
};

namespace detail {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased index in [0, n).
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % n);
}

struct Forward {
  std::vector<double> hidden;
  double output = 0.0;
};

inline Forward forward(const NnModel& m, std::span<const double> x) {
  Forward f;
  f.hidden.resize(m.n_hidden);
  double z2 = m.b2;
  for (std::size_t h = 0; h < m.n_hidden; ++h) {
    double z = m.b1[h];
    const double* row = &m.w1[h * m.n_inputs];
    for (std::size_t i = 0; i < m.n_inputs; ++i) z += row[i] * x[i];
    f.hidden[h] = sigmoid(z);
    z2 += m.w2[h] * f.hidden[h];
  }
  f.output = sigmoid(z2);
  return f;
}

/// Gradient of the per-example loss 0.5 * (y - t)^2, in parameter() order.
inline std::vector<double> loss_gradient(const NnModel& m, std::span<const double> x, int label) {
  Forward f = forward(m, x);
  std::vector<double> g(m.parameter_count());
  double delta_out = (f.output - label) * f.output * (1.0 - f.output);
  std::size_t off_b1 = m.w1.size(), off_w2 = off_b1 + m.n_hidden, off_b2 = off_w2 + m.n_hidden;
  for (std::size_t h = 0; h < m.n_hidden; ++h) {
    double delta_h = delta_out * m.w2[h] * f.hidden[h] * (1.0 - f.hidden[h]);
    for (std::size_t i = 0; i < m.n_inputs; ++i) g[h * m.n_inputs + i] = delta_h * x[i];
    g[off_b1 + h] = delta_h;
    g[off_w2 + h] = delta_out * f.hidden[h];
  }
  g[off_b2] = delta_out;
  return g;
}

inline double example_loss(const NnModel& m, std::span<const double> x, int label) {
  double d = forward(m, x).output - label;
  return 0.5 * d * d;
}

inline void check_dimension(const NnModel& m, std::span<const double> x) {
  if (x.size() != m.n_inputs)
    throw std::invalid_argument("feature vector has " + std::to_string(x.size()) +
                                " entries, model expects " + std::to_string(m.n_inputs));
}

}  // namespace detail

/// Seeded initialization: every weight and bias uniform in
/// [-1/sqrt(fan_in), +1/sqrt(fan_in)].
inline NnModel init_model(const NnTopology& topology, std::uint64_t seed,
                          const FeatureConfig& config = feature_config(ConfigId::C1)) {
  topology.validate();
  NnModel m;
  m.n_inputs = topology.n_inputs;
  m.n_hidden = topology.n_hidden;
  m.rng_seed = seed;
  m.config = config;
  std::mt19937_64 rng(seed);
  auto draw = [&](double fan_in) {
    double r = 1.0 / std::sqrt(fan_in);
    return (2.0 * detail::unit_uniform(rng) - 1.0) * r;
  };
  m.w1.resize(m.n_hidden * m.n_inputs);
  for (auto& w : m.w1) w = draw(static_cast<double>(m.n_inputs));
  m.b1.resize(m.n_hidden);
  for (auto& b : m.b1) b = draw(static_cast<double>(m.n_inputs));
  m.w2.resize(m.n_hidden);
  for (auto& w : m.w2) w = draw(static_cast<double>(m.n_hidden));
  m.b2 = draw(static_cast<double>(m.n_hidden));
  return m;
}

inline double predict(const NnModel& model, std::span<const double> features) {
  detail::check_dimension(model, features);
  return detail::forward(model, features).output;
}

/// Credible iff the output is strictly above the threshold.
inline Verdict classify(double probability, double threshold = kDefaultThreshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("threshold must lie in (0,1)");
  return probability > threshold ? Verdict::Credible : Verdict::NotCredible;
}

inline Verdict classify(const NnModel& model, std::span<const double> features,
                        double threshold = kDefaultThreshold) {
  return classify(predict(model, features), threshold);
}

/// Mean of 0.5 * (y - t)^2 over the data.
inline double mean_loss(const NnModel& model, std::span<const LabeledExample> data) {
  if (data.empty()) return 0.0;
  double s = 0.0;
  for (const auto& e : data) s += detail::example_loss(model, e.features, e.label);
  return s / static_cast<double>(data.size());
}

struct TrainOptions {
  std::uint64_t iterations = kDefaultIterations;
  double learning_rate = kDefaultLearningRate;
  std::uint64_t seed = 0;
  /// Called with (iteration, model) every `trace_every` iterations when set.
  std::uint64_t trace_every = 0;
  std::function<void(std::uint64_t, const NnModel&)> trace;
};

/// Seeded initialization followed by plain SGD, one uniformly drawn example
/// per iteration. Configurations that exclude retweets drop them first.
inline NnModel train(std::span<const LabeledExample> data, const NnTopology& topology,
                     const TrainOptions& opt,
                     const FeatureConfig& config = feature_config(ConfigId::C1),
                     const FeatureScaling& scaling = {}) {
  std::vector<const LabeledExample*> pool;
  for (const auto& e : data) {
    if (config.exclude_retweets_from_training && e.is_retweet) continue;
    pool.push_back(&e);
  }
  if (pool.empty()) throw std::invalid_argument("training set is empty");
  if (!(opt.learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  for (const auto* e : pool) {
    if (e->features.size() != topology.n_inputs)
      throw std::invalid_argument("training example dimension does not match n_inputs");
    if (e->label != 0 && e->label != 1) throw std::invalid_argument("labels must be 0 or 1");
  }

  NnModel m = init_model(topology, opt.seed, config);
  m.scaling = scaling;
  // Separate stream for sampling so initialization stays a pure function of the seed.
  std::mt19937_64 rng(opt.seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<double> hidden(m.n_hidden);
  for (std::uint64_t it = 0; it < opt.iterations; ++it) {
    const LabeledExample& e = *pool[detail::uniform_index(rng, pool.size())];
    const double* x = e.features.data();
    double z2 = m.b2;
    for (std::size_t h = 0; h < m.n_hidden; ++h) {
      double z = m.b1[h];
      const double* row = &m.w1[h * m.n_inputs];
      for (std::size_t i = 0; i < m.n_inputs; ++i) z += row[i] * x[i];
      hidden[h] = detail::sigmoid(z);
      z2 += m.w2[h] * hidden[h];
    }
    double y = detail::sigmoid(z2);
    double delta_out = (y - e.label) * y * (1.0 - y);
    for (std::size_t h = 0; h < m.n_hidden; ++h) {
      double delta_h = delta_out * m.w2[h] * hidden[h] * (1.0 - hidden[h]);
      double* row = &m.w1[h * m.n_inputs];
      for (std::size_t i = 0; i < m.n_inputs; ++i) row[i] -= opt.learning_rate * delta_h * x[i];
      m.b1[h] -= opt.learning_rate * delta_h;
      m.w2[h] -= opt.learning_rate * delta_out * hidden[h];
    }
    m.b2 -= opt.learning_rate * delta_out;
    if (opt.trace && opt.trace_every && (it + 1) % opt.trace_every == 0) opt.trace(it + 1, m);
  }
  return m;
}

struct EvalMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t true_negative = 0;
  std::size_t false_negative = 0;

  std::size_t total() const {
    return true_positive + false_positive + true_negative + false_negative;
  }
};

/// Metrics with Credible as the positive class. Precision and recall are 0
/// when their denominators are empty.
inline EvalMetrics evaluate(const NnModel& model, std::span<const LabeledExample> data,
                            double threshold = kDefaultThreshold) {
  if (data.empty()) throw std::invalid_argument("evaluation set is empty");
  EvalMetrics r;
  for (const auto& e : data) {
    bool predicted = classify(model, e.features, threshold) == Verdict::Credible;
    bool actual = e.label == 1;
    if (predicted && actual) ++r.true_positive;
    else if (predicted) ++r.false_positive;
    else if (actual) ++r.false_negative;
    else ++r.true_negative;
  }
  r.accuracy = static_cast<double>(r.true_positive + r.true_negative) /
               static_cast<double>(data.size());
  if (r.true_positive + r.false_positive)
    r.precision = static_cast<double>(r.true_positive) /
                  static_cast<double>(r.true_positive + r.false_positive);
  if (r.true_positive + r.false_negative)
    r.recall = static_cast<double>(r.true_positive) /
               static_cast<double>(r.true_positive + r.false_negative);
  return r;
}

/// Max over parameters of |g_a - g_n| / max(1e-8, |g_a| + |g_n|), comparing
/// backpropagation against central differences of the same loss.
inline double gradient_check(const NnModel& model, const LabeledExample& example, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1e-2)) throw std::invalid_argument("epsilon must lie in (0, 1e-2]");
  detail::check_dimension(model, example.features);
  auto analytic = detail::loss_gradient(model, example.features, example.label);
  NnModel probe = model;
  double worst = 0.0;
  for (std::size_t k = 0; k < probe.parameter_count(); ++k) {
    double saved = probe.parameter(k);
    probe.parameter(k) = saved + epsilon;
    double up = detail::example_loss(probe, example.features, example.label);
    probe.parameter(k) = saved - epsilon;
    double down = detail::example_loss(probe, example.features, example.label);
    probe.parameter(k) = saved;
    double numeric = (up - down) / (2.0 * epsilon);
    double denom = std::max(1e-8, std::abs(analytic[k]) + std::abs(numeric));
    worst = std::max(worst, std::abs(analytic[k] - numeric) / denom);
  }
  return worst;
}

/// Shuffled 2:1 train/holdout split.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> split_holdout(std::span<const T> data, std::uint64_t seed) {
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[detail::uniform_index(rng, i)]);
  }
  std::size_t n_train = (data.size() * 2 + 2) / 3;
  std::pair<std::vector<T>, std::vector<T>> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    (k < n_train ? out.first : out.second).push_back(data[order[k]]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace detail {

inline std::string exact(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline double parse_exact(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw DataError("bad number in model: " + s);
  return v;
}

inline std::uint64_t parse_unsigned(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw DataError("bad integer in model: " + s);
  return v;
}

}  // namespace detail

inline constexpr const char* kModelMagic = "credsift-nn";
inline constexpr int kModelVersion = 1;

/// Text format; doubles use shortest round-trip notation so a
/// save/load cycle is bit-exact.
///
///   credsift-nn 1
///   config C5
///   topology <inputs> <hidden> 1
///   scaling <max_hashtag_count> <max_hashtag_chars>
///   seed <seed>
///   w1 <hidden*inputs values, row-major>
///   b1 <hidden values>
///   w2 <hidden values>
///   b2 <value>
inline void save_model(std::ostream& out, const NnModel& m) {
  m.check_invariants();
  auto row = [&](const char* tag, const std::vector<double>& v) {
    out << tag;
    for (double x : v) out << ' ' << detail::exact(x);
    out << '\n';
  };
  out << kModelMagic << ' ' << kModelVersion << '\n';
  out << "config " << to_string(m.config.id) << '\n';
  out << "topology " << m.n_inputs << ' ' << m.n_hidden << " 1\n";
  out << "scaling " << detail::exact(m.scaling.max_hashtag_count) << ' '
      << detail::exact(m.scaling.max_hashtag_chars) << '\n';
  out << "seed " << m.rng_seed << '\n';
  row("w1", m.w1);
  row("b1", m.b1);
  row("w2", m.w2);
  out << "b2 " << detail::exact(m.b2) << '\n';
  if (!out) throw IoError("failed writing model");
}

inline NnModel load_model(std::istream& in) {
  auto expect_line = [&](const char* tag) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(std::string("model truncated before '") + tag + "'");
    std::istringstream ls(line);
    std::string got;
    ls >> got;
    if (got != tag) throw DataError(std::string("model: expected '") + tag + "', got '" + got + "'");
    std::vector<std::string> fields;
    for (std::string f; ls >> f;) fields.push_back(f);
    return fields;
  };
  auto header = expect_line(kModelMagic);
  if (header.size() != 1 || header[0] != std::to_string(kModelVersion))
    throw DataError("unsupported model version");
  NnModel m;
  auto cfg = expect_line("config");
  if (cfg.size() != 1) throw DataError("model: bad config line");
  try {
    m.config = feature_config(parse_config_id(cfg[0]));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  auto topo = expect_line("topology");
  if (topo.size() != 3 || topo[2] != "1") throw DataError("model: bad topology line");
  m.n_inputs = detail::parse_unsigned(topo[0]);
  m.n_hidden = detail::parse_unsigned(topo[1]);
  if (m.n_inputs != m.config.features.size())
    throw DataError("model: input width does not match configuration");
  auto sc = expect_line("scaling");
  if (sc.size() != 2) throw DataError("model: bad scaling line");
  m.scaling = {detail::parse_exact(sc[0]), detail::parse_exact(sc[1])};
  auto seed = expect_line("seed");
  if (seed.size() != 1) throw DataError("model: bad seed line");
  m.rng_seed = detail::parse_unsigned(seed[0]);
  auto values = [&](const char* tag) {
    std::vector<double> v;
    for (auto& f : expect_line(tag)) v.push_back(detail::parse_exact(f));
    return v;
  };
  m.w1 = values("w1");
  m.b1 = values("b1");
  m.w2 = values("w2");
  auto b2 = values("b2");
  if (b2.size() != 1) throw DataError("model: bad b2 line");
  m.b2 = b2[0];
  m.check_invariants();
  return m;
}

inline void save_model(const std::string& path, const NnModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model: " + path);
  save_model(out, m);
}

inline NnModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model: " + path);
  return load_model(in);
}

}  // namespace credsift
