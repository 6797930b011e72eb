#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "credsift/text.hpp"

namespace credsift {

enum class Algorithm { Levenshtein, NeedlemanWunsch, JaroWinkler, SmithWaterman };

inline constexpr std::array<Algorithm, 4> kAllAlgorithms{
    Algorithm::Levenshtein, Algorithm::NeedlemanWunsch, Algorithm::JaroWinkler,
    Algorithm::SmithWaterman};

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Levenshtein: return "levenshtein";
    case Algorithm::NeedlemanWunsch: return "needleman_wunsch";
    case Algorithm::JaroWinkler: return "jaro_winkler";
    case Algorithm::SmithWaterman: return "smith_waterman";
  }
  return "";
}

inline Algorithm parse_algorithm(std::string_view s) {
  for (auto a : kAllAlgorithms) {
    if (s == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown similarity algorithm '" + std::string(s) + "'");
}

/// Scoring scheme for the two alignment algorithms.
struct AlignmentParams {
  double match_score = 1.0;
  double mismatch_penalty = -1.0;
  double gap_penalty = -1.0;

  void validate() const {
    if (!(match_score > 0.0)) throw std::invalid_argument("match_score must be positive");
    if (!(mismatch_penalty <= 0.0)) throw std::invalid_argument("mismatch_penalty must be <= 0");
    if (!(gap_penalty <= 0.0)) throw std::invalid_argument("gap_penalty must be <= 0");
  }
};

inline constexpr double kWinklerScaling = 0.1;
inline constexpr std::size_t kWinklerMaxPrefix = 4;

// Grouping thresholds for the two dedup modes.
inline constexpr double kOfflineThreshold = 0.90;   // Smith-Waterman
inline constexpr double kRealTimeThreshold = 0.92;  // Jaro-Winkler

namespace detail {

/// Row-by-row DP over an |a| x |b| grid where `row` already holds row 0.
/// Rows are processed in pairs, row i at column j alongside row i+1 at column
/// j-1, so the two left-to-right dependency chains overlap. `cell(up, left,
/// diag, equal)` gives a cell value and `border(i)` the value in column 0.
template <typename Score, typename CharT, typename Cell, typename Border>
void dp_rows(std::basic_string_view<CharT> a, std::basic_string_view<CharT> b, Score* r,
             Cell&& cell, Border&& border) {
  const std::size_t n = b.size();
  const CharT* pb = b.data();
  std::size_t i = 1;
  for (; i + 1 <= a.size(); i += 2) {
    const CharT ca0 = a[i - 1], ca1 = a[i];
    Score d0 = r[1], l0 = cell(r[1], border(i), r[0], ca0 == pb[0]);
    Score d1 = border(i), l1 = border(i + 1);
    for (std::size_t j = 2; j <= n; ++j) {
      Score up0 = r[j];
      Score v0 = cell(up0, l0, d0, ca0 == pb[j - 1]);
      Score v1 = cell(l0, l1, d1, ca1 == pb[j - 2]);
      r[j - 1] = l1 = v1;
      d0 = up0;
      d1 = l0;
      l0 = v0;
    }
    r[n] = cell(l0, l1, d1, ca1 == pb[n - 1]);
    r[0] = border(i + 1);
  }
  for (; i <= a.size(); ++i) {
    const CharT ca = a[i - 1];
    Score diag = r[0], left = border(i);
    r[0] = left;
    for (std::size_t j = 1; j <= n; ++j) {
      Score up = r[j];
      r[j] = left = cell(up, left, diag, ca == pb[j - 1]);
      diag = up;
    }
  }
}

template <typename CharT>
std::size_t levenshtein_impl(std::basic_string_view<CharT> a, std::basic_string_view<CharT> b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();
  thread_local std::vector<std::uint32_t> row;
  row.resize(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<std::uint32_t>(j);
  dp_rows<std::uint32_t>(
      a, b, row.data(),
      [](std::uint32_t up, std::uint32_t left, std::uint32_t diag, bool eq) {
        return std::min(std::min(up, left) + 1, diag + static_cast<std::uint32_t>(!eq));
      },
      [](std::size_t i) { return static_cast<std::uint32_t>(i); });
  return row[b.size()];
}

/// Shared DP for global (Local = false) and local (Local = true) alignment,
/// instantiated for double scores and for exact integer scores.
template <bool Local, typename Score, typename CharT>
Score alignment_dp(std::basic_string_view<CharT> a, std::basic_string_view<CharT> b, Score m,
                   Score x, Score g) {
  thread_local std::vector<Score> row;
  row.resize(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = Local ? Score(0) : g * static_cast<Score>(j);
  if (a.empty() || b.empty()) return Local ? Score(0) : g * static_cast<Score>(a.size() + b.size());
  Score best = 0;
  dp_rows<Score>(
      a, b, row.data(),
      [&](Score up, Score left, Score diag, bool eq) {
        Score v = std::max(diag + (eq ? m : x), std::max(up, left) + g);
        if constexpr (Local) {
          v = std::max(v, Score(0));
          best = std::max(best, v);
        }
        return v;
      },
      [&](std::size_t i) { return Local ? Score(0) : g * static_cast<Score>(i); });
  return Local ? best : row[b.size()];
}

/// Small integral parameters keep every cell an exact integer, so the integer
/// DP gives bit-identical results to the floating-point one.
inline bool integral_params(const AlignmentParams& p, std::size_t longest) {
  auto small_int = [&](double v) {
    return std::trunc(v) == v && std::abs(v) * static_cast<double>(longest + 1) < 1e8;
  };
  return small_int(p.match_score) && small_int(p.mismatch_penalty) && small_int(p.gap_penalty);
}

template <typename CharT>
double alignment_impl(std::basic_string_view<CharT> a, std::basic_string_view<CharT> b,
                      const AlignmentParams& p, bool local) {
  p.validate();
  if (integral_params(p, std::max(a.size(), b.size()))) {
    auto m = static_cast<std::int32_t>(p.match_score);
    auto x = static_cast<std::int32_t>(p.mismatch_penalty);
    auto g = static_cast<std::int32_t>(p.gap_penalty);
    return static_cast<double>(local ? alignment_dp<true>(a, b, m, x, g)
                                     : alignment_dp<false>(a, b, m, x, g));
  }
  return local ? alignment_dp<true>(a, b, p.match_score, p.mismatch_penalty, p.gap_penalty)
               : alignment_dp<false>(a, b, p.match_score, p.mismatch_penalty, p.gap_penalty);
}

/// Per-thread buffers for the bit-parallel Jaro match search.
struct JaroScratch {
  std::vector<std::uint64_t> ascii;  // 128 masks of `words` each
  std::vector<std::pair<char32_t, std::size_t>> wide_index;
  std::vector<std::uint64_t> wide_masks;
  std::vector<std::uint64_t> b_flag;
  std::vector<std::uint32_t> a_matched;
};

template <typename CharT>
double jaro_impl(std::basic_string_view<CharT> a, std::basic_string_view<CharT> b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  thread_local JaroScratch s;
  const std::size_t la = a.size(), lb = b.size();
  const std::size_t window = std::max(la, lb) / 2 == 0 ? 0 : std::max(la, lb) / 2 - 1;
  const std::size_t words = (lb + 63) / 64;

  if (s.ascii.size() < 128 * words) s.ascii.assign(128 * words, 0);
  s.wide_index.clear();
  s.wide_masks.clear();
  auto mask_for = [&](char32_t c, bool create) -> std::uint64_t* {
    if (c < 128) return &s.ascii[static_cast<std::size_t>(c) * words];
    for (auto& [ch, off] : s.wide_index) {
      if (ch == c) return &s.wide_masks[off];
    }
    if (!create) return nullptr;
    s.wide_index.emplace_back(c, s.wide_masks.size());
    s.wide_masks.resize(s.wide_masks.size() + words, 0);
    return &s.wide_masks[s.wide_index.back().second];
  };
  for (std::size_t j = 0; j < lb; ++j) {
    mask_for(static_cast<char32_t>(b[j]), true)[j / 64] |= std::uint64_t{1} << (j % 64);
  }

  s.b_flag.assign(words, 0);
  s.a_matched.clear();
  for (std::size_t i = 0; i < la; ++i) {
    std::size_t lo = i > window ? i - window : 0;
    std::size_t hi = std::min(lb - 1, i + window);
    if (lo > hi) continue;
    const std::uint64_t* pm = mask_for(static_cast<char32_t>(a[i]), false);
    if (!pm) continue;
    for (std::size_t w = lo / 64; w <= hi / 64; ++w) {
      std::uint64_t bits = pm[w] & ~s.b_flag[w];
      if (w == lo / 64) bits &= ~std::uint64_t{0} << (lo % 64);
      if (w == hi / 64 && hi % 64 != 63) bits &= (std::uint64_t{1} << (hi % 64 + 1)) - 1;
      if (bits) {
        s.b_flag[w] |= bits & (~bits + 1);
        s.a_matched.push_back(static_cast<std::uint32_t>(i));
        break;
      }
    }
  }
  // Reset the ASCII table for the next call; wide masks are cleared above.
  for (std::size_t j = 0; j < lb; ++j) {
    auto c = static_cast<char32_t>(b[j]);
    if (c < 128) s.ascii[static_cast<std::size_t>(c) * words + j / 64] = 0;
  }

  const std::size_t m = s.a_matched.size();
  if (m == 0) return 0.0;
  std::size_t half_transpositions = 0;
  std::size_t k = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = s.b_flag[w];
    while (bits) {
      std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      if (a[s.a_matched[k++]] != b[j]) ++half_transpositions;
    }
  }
  const double md = static_cast<double>(m);
  const double t = static_cast<double>(half_transpositions) / 2.0;
  return (md / static_cast<double>(la) + md / static_cast<double>(lb) + (md - t) / md) / 3.0;
}

template <typename CharT>
double jaro_winkler_impl(std::basic_string_view<CharT> a, std::basic_string_view<CharT> b) {
  // Canonical argument order keeps the greedy match search symmetric.
  if (b.size() < a.size() || (b.size() == a.size() && b < a)) std::swap(a, b);
  double j = jaro_impl(a, b);
  std::size_t prefix = 0;
  const std::size_t limit = std::min({a.size(), b.size(), kWinklerMaxPrefix});
  while (prefix < limit && a[prefix] == b[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * kWinklerScaling * (1.0 - j);
}

}  // namespace detail

// Public kernels. `std::string_view` arguments are UTF-8 and are compared by
// code point; `std::u32string_view` arguments are used as-is.

inline std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  return detail::levenshtein_impl(a, b);
}
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  auto da = utf8_decode(a), db = utf8_decode(b);
  return levenshtein(std::u32string_view(da), std::u32string_view(db));
}

inline double needleman_wunsch(std::u32string_view a, std::u32string_view b,
                               const AlignmentParams& p = {}) {
  return detail::alignment_impl(a, b, p, false);
}
inline double needleman_wunsch(std::string_view a, std::string_view b,
                               const AlignmentParams& p = {}) {
  auto da = utf8_decode(a), db = utf8_decode(b);
  return needleman_wunsch(std::u32string_view(da), std::u32string_view(db), p);
}

inline double smith_waterman(std::u32string_view a, std::u32string_view b,
                             const AlignmentParams& p = {}) {
  return detail::alignment_impl(a, b, p, true);
}
inline double smith_waterman(std::string_view a, std::string_view b,
                             const AlignmentParams& p = {}) {
  auto da = utf8_decode(a), db = utf8_decode(b);
  return smith_waterman(std::u32string_view(da), std::u32string_view(db), p);
}

/// Jaro similarity with the Winkler common-prefix boost (prefix <= 4,
/// scaling 0.1). Two empty strings are identical and score 1.
inline double jaro_winkler(std::u32string_view a, std::u32string_view b) {
  return detail::jaro_winkler_impl(a, b);
}
inline double jaro_winkler(std::string_view a, std::string_view b) {
  auto da = utf8_decode(a), db = utf8_decode(b);
  return jaro_winkler(std::u32string_view(da), std::u32string_view(db));
}

/// Maps every algorithm onto [0,1]:
///  - Levenshtein: 1 - dist / max(|a|,|b|)
///  - alignments: score / (match_score * min(|a|,|b|)), clamped
///  - Jaro-Winkler: unchanged
/// Two empty strings are 1 for every algorithm.
inline double normalized_similarity(Algorithm algo, std::u32string_view a, std::u32string_view b,
                                    const AlignmentParams& p = {}) {
  if (a.empty() && b.empty()) return 1.0;
  switch (algo) {
    case Algorithm::Levenshtein: {
      double d = static_cast<double>(levenshtein(a, b));
      return 1.0 - d / static_cast<double>(std::max(a.size(), b.size()));
    }
    case Algorithm::JaroWinkler:
      return jaro_winkler(a, b);
    case Algorithm::NeedlemanWunsch:
    case Algorithm::SmithWaterman: {
      std::size_t shorter = std::min(a.size(), b.size());
      if (shorter == 0) return 0.0;
      double score = algo == Algorithm::SmithWaterman ? smith_waterman(a, b, p)
                                                      : needleman_wunsch(a, b, p);
      return std::clamp(score / (p.match_score * static_cast<double>(shorter)), 0.0, 1.0);
    }
  }
  return 0.0;
}
inline double normalized_similarity(Algorithm algo, std::string_view a, std::string_view b,
                                    const AlignmentParams& p = {}) {
  auto da = utf8_decode(a), db = utf8_decode(b);
  return normalized_similarity(algo, std::u32string_view(da), std::u32string_view(db), p);
}

using Groups = std::vector<std::vector<std::size_t>>;

namespace detail {

/// Greedy first-fit: item i joins the first group whose representative (its
/// first member) satisfies `similar(rep, i)`, else it opens a new group.
template <typename SimilarFn>
Groups first_fit_groups(std::size_t n, SimilarFn&& similar) {
  Groups groups;
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (auto& g : groups) {
      if (similar(g.front(), i)) {
        g.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({i});
  }
  return groups;
}

}  // namespace detail

inline Groups group_similar_decoded(std::span<const std::u32string> texts, Algorithm algo,
                                    double threshold, const AlignmentParams& p = {}) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("grouping threshold must lie in [0,1]");
  p.validate();
  return detail::first_fit_groups(texts.size(), [&](std::size_t rep, std::size_t i) {
    return normalized_similarity(algo, texts[rep], texts[i], p) >= threshold;
  });
}

/// Partitions `texts` into near-duplicate groups of indices.
inline Groups group_similar(std::span<const std::string> texts, Algorithm algo, double threshold,
                            const AlignmentParams& p = {}) {
  std::vector<std::u32string> decoded;
  decoded.reserve(texts.size());
  for (const auto& t : texts) decoded.push_back(utf8_decode(t));
  return group_similar_decoded(decoded, algo, threshold, p);
}

// ---------------------------------------------------------------------------
// Timing harness
// ---------------------------------------------------------------------------

struct SimilarityReport {
  Algorithm algorithm = Algorithm::Levenshtein;
  std::uint64_t pairs_evaluated = 0;
  std::chrono::nanoseconds wall_time{0};
  std::size_t groups_found = 0;

  double wall_ms() const { return std::chrono::duration<double, std::milli>(wall_time).count(); }
};

struct BenchOptions {
  double threshold = kOfflineThreshold;
  unsigned threads = 1;
  /// Corpora with at least this many texts are benchmarked on sampled pairs.
  std::size_t all_pairs_limit = 2500;
  std::uint64_t sample_pairs = 1'000'000;
  std::uint64_t seed = 0;
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
};

namespace detail {

using PairList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline PairList bench_pairs(std::size_t n, const BenchOptions& opt) {
  PairList pairs;
  if (n < opt.all_pairs_limit) {
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    return pairs;
  }
  std::mt19937_64 rng(opt.seed);
  pairs.reserve(opt.sample_pairs);
  for (std::uint64_t k = 0; k < opt.sample_pairs; ++k) {
    std::uint64_t i = rng() % n;
    std::uint64_t j = rng() % (n - 1);
    if (j >= i) ++j;
    if (j < i) std::swap(i, j);
    pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  }
  return pairs;
}

}  // namespace detail

/// Times every algorithm over the same pair set. Results do not depend on the
/// worker count; only the wall times do.
inline std::vector<SimilarityReport> bench(std::span<const std::string> texts,
                                           const AlignmentParams& p = {},
                                           const BenchOptions& opt = {}) {
  if (texts.size() < 2) throw std::invalid_argument("bench needs at least two texts");
  p.validate();
  std::vector<std::u32string> decoded;
  decoded.reserve(texts.size());
  for (const auto& t : texts) decoded.push_back(utf8_decode(t));

  const std::size_t n = decoded.size();
  const bool all_pairs = n < opt.all_pairs_limit;
  const auto pairs = detail::bench_pairs(n, opt);
  const unsigned workers = std::max(1u, opt.threads);

  std::vector<SimilarityReport> reports;
  std::vector<double> scores(pairs.size());
  for (Algorithm algo : opt.algorithms) {
    auto start = std::chrono::steady_clock::now();
    auto run = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        scores[k] = normalized_similarity(algo, decoded[pairs[k].first],
                                          decoded[pairs[k].second], p);
      }
    };
    if (workers == 1) {
      run(0, pairs.size());
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (pairs.size() + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        std::size_t b = std::min(pairs.size(), w * chunk);
        std::size_t e = std::min(pairs.size(), b + chunk);
        pool.emplace_back(run, b, e);
      }
      for (auto& t : pool) t.join();
    }
    auto elapsed = std::chrono::steady_clock::now() - start;

    SimilarityReport r;
    r.algorithm = algo;
    r.pairs_evaluated = pairs.size();
    r.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed);
    if (all_pairs) {
      // Reuse the timed scores; pairs are stored in row-major upper-triangle order.
      r.groups_found = detail::first_fit_groups(n, [&](std::size_t i, std::size_t j) {
                         std::size_t idx = i * n - i * (i + 1) / 2 + (j - i - 1);
                         return scores[idx] >= opt.threshold;
                       }).size();
    } else {
      r.groups_found = group_similar_decoded(decoded, algo, opt.threshold, p).size();
    }
    reports.push_back(r);
  }
  return reports;
}

/// CSV with header `algorithm,pairs,wall_ms,groups`.
inline void write_bench_csv(std::ostream& out, std::span<const SimilarityReport> reports) {
  out << "algorithm,pairs,wall_ms,groups\n";
  char buf[64];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms());
    out << to_string(r.algorithm) << ',' << r.pairs_evaluated << ',' << buf << ','
        << r.groups_found << '\n';
  }
}

}  // namespace credsift
