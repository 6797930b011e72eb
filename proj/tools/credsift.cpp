// credsift command-line driver. Each subcommand is a thin wrapper over one
// library operation.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "credsift/credsift.hpp"

#ifndef CREDSIFT_DATA_DIR
#define CREDSIFT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace credsift;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kIo = 3 };

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

std::string cell_text(const json& v) {
  if (v.is_string()) return detail::csv_field(v.get<std::string>());
  if (v.is_number_float()) return detail::shortest(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

void write_table(std::ostream& out, const Table& t, const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : t.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) o[t.header[i]] = r[i];
      arr.push_back(o);
    }
    out << arr.dump(1) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell_text(r[i]);
    out << '\n';
  }
}

/// A single value: bare JSON by default, `name\nvalue` as CSV.
void write_value(std::ostream& out, const std::string& name, const json& v,
                 const std::string& format) {
  if (format == "csv") {
    out << name << '\n' << cell_text(v) << '\n';
  } else {
    out << v.dump() << '\n';
  }
}

/// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  fn(f);
  f.close();
  if (!f) throw IoError("write to " + path + " failed");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  return f;
}

json read_json_file(const std::string& path) {
  auto f = open_input(path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Input helpers
// ---------------------------------------------------------------------------

/// Parses every line of a records file; any bad line is a data error.
std::vector<IngestedPost> read_posts(const std::string& path, bool require_geo) {
  auto in = open_input(path);
  FileReplaySource src(in);
  IngestOptions opt;
  opt.languages.clear();
  opt.require_geo = require_geo;
  auto r = ingest(src, opt);
  if (!r.rejected.empty()) {
    const auto& first = r.rejected.front();
    throw DataError(path + ":" + std::to_string(first.line_no) + ": " + to_string(first.reason) +
                    ": " + first.detail);
  }
  return std::move(r.accepted);
}

struct Lexicons {
  WordSet stopwords = default_stopwords();
  WordLexicon lexicon = default_word_lexicon();
};

Lexicons load_lexicons(const std::string& stopwords, const std::string& lexicon) {
  Lexicons l;
  if (!stopwords.empty()) l.stopwords = WordSet::load(stopwords);
  if (!lexicon.empty()) l.lexicon = WordLexicon::load(lexicon);
  return l;
}

FormulaWeights load_weights(const std::string& path) {
  FormulaWeights w = path.empty() ? FormulaWeights{} : FormulaWeights::load(path);
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  return w;
}

std::vector<LabeledExample> labeled_examples(const std::vector<IngestedPost>& posts,
                                             const FeatureConfig& config, const Lexicons& lex,
                                             FeatureScaling* fit_scaling,
                                             const FeatureScaling& scaling) {
  std::vector<TweetFeatures> feats;
  for (const auto& p : posts) {
    if (!p.label) throw DataError("record " + p.tweet.id + " has no label or annotation");
    feats.push_back(extract_tweet_features(p.tweet, p.author, lex.stopwords, lex.lexicon));
  }
  FeatureScaling s = scaling;
  if (fit_scaling) {
    s = FeatureScaling::fit(feats);
    *fit_scaling = s;
  }
  std::vector<LabeledExample> out;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    out.push_back({select_features(config, feats[i], s), *posts[i].label, posts[i].tweet.is_retweet});
  }
  return out;
}

Verdict formula_verdict(double score, double threshold) {
  return score > threshold ? Verdict::Credible : Verdict::NotCredible;
}

// ---------------------------------------------------------------------------
// Shared option groups
// ---------------------------------------------------------------------------

struct Common {
  std::string format = "json";
  std::string data_dir = CREDSIFT_DATA_DIR;
};

void add_format(CLI::App* cmd, std::string& format, const char* def) {
  format = def;
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

struct GeoInputs {
  std::string boundaries;
  std::string continents;
  double border_eps = kDefaultBorderEpsilonKm;
  double threshold = kDefaultThreshold;
  std::string weights;
  std::string model;
};

/// Verdict per post: its label when present, else the model, else the
/// formula score against the threshold.
std::vector<Verdict> verdicts_for(const std::vector<IngestedPost>& posts, const GeoInputs& g,
                                  const Lexicons& lex) {
  FormulaWeights w = load_weights(g.weights);
  std::optional<NnModel> model;
  if (!g.model.empty()) model = load_model(g.model);
  std::vector<Verdict> out;
  for (const auto& p : posts) {
    if (p.label) {
      out.push_back(*p.label == 1 ? Verdict::Credible : Verdict::NotCredible);
      continue;
    }
    auto f = extract_tweet_features(p.tweet, p.author, lex.stopwords, lex.lexicon);
    if (model) {
      out.push_back(classify(*model, select_features(model->config, f, model->scaling), g.threshold));
    } else {
      out.push_back(formula_verdict(tweet_credibility(f, w), g.threshold));
    }
  }
  return out;
}

/// Country per post, in posting order so the border rule sees each author's
/// earlier posts.
std::vector<std::optional<std::string>> countries_for(const std::vector<IngestedPost>& posts,
                                                      const CountryBoundaries& b, double eps) {
  std::vector<std::size_t> order(posts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    return posts[a].tweet.creation_date < posts[c].tweet.creation_date;
  });
  std::map<std::string, std::vector<std::string>> history;
  std::vector<std::optional<std::string>> out(posts.size());
  for (std::size_t i : order) {
    auto& h = history[posts[i].author.id];
    out[i] = assign_country(*posts[i].tweet.geo, b, h, eps);
    if (out[i]) {
      h.insert(h.begin(), *out[i]);
      if (h.size() > kBorderHistory) h.pop_back();
    }
  }
  return out;
}

std::string data_path(const Common& c, const std::string& given, const char* file) {
  return given.empty() ? (fs::path(c.data_dir) / file).string() : given;
}

void maybe_write_html(const std::string& path, const json& collection, const std::string& title) {
  if (path.empty()) return;
  with_output(path, [&](std::ostream& o) { write_geojson_html(o, collection, title); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"credsift: credibility scoring and analysis for social media posts"};
  app.require_subcommand(1, 1);
  Common common;
  app.add_option("--data-dir", common.data_dir, "Directory with the bundled data files")
      ->capture_default_str();

  // ---- ingest -------------------------------------------------------------
  struct {
    std::string input, accepted, rejections, topics = "default", store, start;
    std::vector<std::string> languages;
    bool no_geo = false;
    unsigned threads = 1;
    std::size_t queue = 256;
    long step_secs = 60;
  } ing;
  auto* c_ingest = app.add_subcommand("ingest", "Filter a JSON-lines post stream");
  c_ingest->add_option("-i,--input", ing.input, "Records file (JSON lines)")->required();
  c_ingest->add_option("--accepted", ing.accepted, "Accepted records output (JSON lines; - for stdout)")
      ->capture_default_str();
  c_ingest->add_option("--rejections", ing.rejections, "Rejection log (CSV)");
  c_ingest->add_option("--languages", ing.languages, "Allowed languages (default en,de,fr,el,tr,it)")
      ->delimiter(',');
  c_ingest->add_flag("--no-require-geo", ing.no_geo, "Keep posts without geolocation");
  c_ingest->add_option("--topics", ing.topics, "Topic list file, 'default' or 'none'")
      ->capture_default_str();
  c_ingest->add_option("--threads", ing.threads, "Worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_ingest->add_option("--queue-capacity", ing.queue, "Bounded queue capacity")
      ->capture_default_str()->check(CLI::PositiveNumber);
  c_ingest->add_option("--store", ing.store, "Also persist accepted snapshots in this store");
  auto* o_start = c_ingest->add_option("--simulate-start", ing.start,
                                       "Simulated arrival time of the first line (UTC)");
  c_ingest->add_option("--simulate-step-secs", ing.step_secs, "Seconds between simulated arrivals")
      ->capture_default_str()->needs(o_start)->check(CLI::PositiveNumber);

  // ---- dedup --------------------------------------------------------------
  struct {
    std::string input, output, mode = "offline";
    std::optional<double> threshold;
  } dd;
  auto* c_dedup = app.add_subcommand("dedup", "Group near-duplicate posts");
  c_dedup->add_option("-i,--input", dd.input, "Records file (JSON lines)")->required();
  c_dedup->add_option("-o,--output", dd.output, "Group map CSV (default stdout)");
  c_dedup->add_option("--mode", dd.mode, "realtime (Jaro-Winkler) or offline (Smith-Waterman)")
      ->check(CLI::IsMember({"realtime", "offline"}))->capture_default_str();
  c_dedup->add_option("--threshold", dd.threshold, "Override the mode's similarity threshold")
      ->check(CLI::Range(0.0, 1.0));

  // ---- score-tweet --------------------------------------------------------
  struct {
    std::string features, record, weights, stopwords, lexicon, format;
  } st;
  auto* c_st = app.add_subcommand("score-tweet", "Formula credibility of one tweet");
  auto* o_stf = c_st->add_option("--features", st.features, "Tweet features JSON file");
  auto* o_str = c_st->add_option("--record", st.record, "Record JSON file (tweet + author)");
  o_stf->excludes(o_str);
  c_st->add_option("--weights", st.weights, "Weights file (key=value)");
  c_st->add_option("--stopwords", st.stopwords, "Stopword list");
  c_st->add_option("--lexicon", st.lexicon, "Word sentiment lexicon");
  add_format(c_st, st.format, "json");

  // ---- score-user ---------------------------------------------------------
  struct {
    std::string features, store, id, at, weights, format;
  } su;
  auto* c_su = app.add_subcommand("score-user", "Formula credibility of one account");
  auto* o_suf = c_su->add_option("--features", su.features, "User features JSON file");
  auto* o_sus = c_su->add_option("--store", su.store, "Snapshot store directory");
  auto* o_sui = c_su->add_option("--id", su.id, "User id (with --store)");
  c_su->add_option("--at", su.at, "Evaluation time (UTC; default latest snapshot)")->needs(o_sus);
  o_suf->excludes(o_sus);
  o_sus->needs(o_sui);
  o_sui->needs(o_sus);
  c_su->add_option("--weights", su.weights, "Weights file (key=value)");
  add_format(c_su, su.format, "json");

  // ---- train --------------------------------------------------------------
  struct {
    std::string data, out, config = "C1", format, stopwords, lexicon;
    std::uint64_t iterations = kDefaultIterations, seed = 0;
    double lr = kDefaultLearningRate;
    std::size_t hidden = kDefaultHiddenUnits;
    bool holdout = false;
  } tr;
  auto* c_train = app.add_subcommand("train", "Train the feed-forward classifier");
  c_train->add_option("--data", tr.data, "Labelled records (JSON lines)")->required();
  c_train->add_option("-o,--out", tr.out, "Model output file")->required();
  c_train->add_option("--config", tr.config, "Feature configuration C1..C6")
      ->check(CLI::IsMember({"C1", "C2", "C3", "C4", "C5", "C6"}))->capture_default_str();
  c_train->add_option("--iterations", tr.iterations, "SGD iterations")->capture_default_str();
  c_train->add_option("--learning-rate", tr.lr, "SGD step size")->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_train->add_option("--hidden", tr.hidden, "Hidden units")->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_train->add_option("--seed", tr.seed, "Random seed")->capture_default_str();
  c_train->add_flag("--holdout", tr.holdout, "Train on a seeded 2/3 split and report the rest");
  c_train->add_option("--stopwords", tr.stopwords, "Stopword list");
  c_train->add_option("--lexicon", tr.lexicon, "Word sentiment lexicon");
  add_format(c_train, tr.format, "json");

  // ---- eval ---------------------------------------------------------------
  struct {
    std::string model, data, format, stopwords, lexicon;
    double threshold = kDefaultThreshold;
  } ev;
  auto* c_eval = app.add_subcommand("eval", "Accuracy, precision and recall of a model");
  c_eval->add_option("--model", ev.model, "Model file")->required();
  c_eval->add_option("--data", ev.data, "Labelled records (JSON lines)")->required();
  c_eval->add_option("--threshold", ev.threshold, "Decision threshold (strict)")
      ->capture_default_str();
  c_eval->add_option("--stopwords", ev.stopwords, "Stopword list");
  c_eval->add_option("--lexicon", ev.lexicon, "Word sentiment lexicon");
  add_format(c_eval, ev.format, "json");

  // ---- predict ------------------------------------------------------------
  struct {
    std::string model, input, output, format, stopwords, lexicon;
    double threshold = kDefaultThreshold;
  } pr;
  auto* c_pred = app.add_subcommand("predict", "Classify records with a trained model");
  c_pred->add_option("--model", pr.model, "Model file")->required();
  c_pred->add_option("-i,--input", pr.input, "Records (JSON lines)")->required();
  c_pred->add_option("-o,--output", pr.output, "Output file (default stdout)");
  c_pred->add_option("--threshold", pr.threshold, "Decision threshold (strict)")
      ->capture_default_str();
  c_pred->add_option("--stopwords", pr.stopwords, "Stopword list");
  c_pred->add_option("--lexicon", pr.lexicon, "Word sentiment lexicon");
  add_format(c_pred, pr.format, "csv");

  // ---- bench-sim ----------------------------------------------------------
  struct {
    std::string input, output, format;
    std::size_t generate = 0, all_pairs_limit = 2500;
    std::uint64_t seed = 0, sample_pairs = 1'000'000;
    unsigned threads = 1;
    double threshold = kOfflineThreshold;
  } bs;
  auto* c_bench = app.add_subcommand("bench-sim", "Time the four similarity algorithms");
  auto* o_bi = c_bench->add_option("-i,--input", bs.input, "Text file, one post per line");
  auto* o_bg = c_bench->add_option("--generate", bs.generate, "Generate this many synthetic posts");
  o_bi->excludes(o_bg);
  c_bench->add_option("-o,--output", bs.output, "Report file (default stdout)");
  c_bench->add_option("--seed", bs.seed, "Seed for generation and pair sampling")
      ->capture_default_str();
  c_bench->add_option("--threads", bs.threads, "Worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_bench->add_option("--threshold", bs.threshold, "Grouping threshold")->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  c_bench->add_option("--all-pairs-limit", bs.all_pairs_limit,
                      "Corpora at least this large use sampled pairs")->capture_default_str();
  c_bench->add_option("--sample-pairs", bs.sample_pairs, "Pairs sampled for large corpora")
      ->capture_default_str();
  add_format(c_bench, bs.format, "csv");

  // ---- stats / clusters / heatmap ----------------------------------------
  struct {
    std::string input, output, level = "country", format, stopwords, lexicon;
    std::size_t min_count = kDefaultMinRegionCount;
    GeoInputs geo;
  } sa;
  auto* c_stats = app.add_subcommand("stats", "Credible / not-credible shares per region");
  c_stats->add_option("-i,--input", sa.input, "Records (JSON lines)")->required();
  c_stats->add_option("-o,--output", sa.output, "Output file (default stdout)");
  c_stats->add_option("--level", sa.level, "country or continent")
      ->check(CLI::IsMember({"country", "continent"}))->capture_default_str();
  c_stats->add_option("--min-count", sa.min_count, "Regions with fewer records are left out")
      ->capture_default_str();
  c_stats->add_option("--boundaries", sa.geo.boundaries, "Country boundaries (GeoJSON)");
  c_stats->add_option("--continents", sa.geo.continents, "country,continent CSV");
  c_stats->add_option("--border-epsilon-km", sa.geo.border_eps, "Border proximity for the history rule")
      ->capture_default_str();
  c_stats->add_option("--threshold", sa.geo.threshold, "Credible when the score is above this")
      ->capture_default_str();
  c_stats->add_option("--weights", sa.geo.weights, "Weights file (key=value)");
  c_stats->add_option("--model", sa.geo.model, "Classify with this model instead of the formula");
  c_stats->add_option("--stopwords", sa.stopwords, "Stopword list");
  c_stats->add_option("--lexicon", sa.lexicon, "Word sentiment lexicon");
  add_format(c_stats, sa.format, "csv");

  struct {
    std::string input, output, html, lexicon;
    double cell = 5.0;
  } cl;
  auto* c_clusters = app.add_subcommand("clusters", "Sentiment clusters on a fixed grid");
  c_clusters->add_option("-i,--input", cl.input, "Records (JSON lines)")->required();
  c_clusters->add_option("-o,--output", cl.output, "GeoJSON output (default stdout)");
  c_clusters->add_option("--html", cl.html, "Also write a self-contained HTML view");
  c_clusters->add_option("--cell-size", cl.cell, "Grid cell size in degrees")
      ->capture_default_str()->check(CLI::PositiveNumber);
  c_clusters->add_option("--lexicon", cl.lexicon, "Word sentiment lexicon");

  struct {
    std::string input, output, html, which = "not_credible", stopwords, lexicon;
    double cell = 5.0;
    GeoInputs geo;
  } hm;
  auto* c_heat = app.add_subcommand("heatmap", "Per-cell counts of credible / not-credible posts");
  c_heat->add_option("-i,--input", hm.input, "Records (JSON lines)")->required();
  c_heat->add_option("-o,--output", hm.output, "GeoJSON output (default stdout)");
  c_heat->add_option("--html", hm.html, "Also write a self-contained HTML view");
  c_heat->add_option("--class", hm.which, "not_credible, credible or both")
      ->check(CLI::IsMember({"not_credible", "credible", "both"}))->capture_default_str();
  c_heat->add_option("--cell-size", hm.cell, "Grid cell size in degrees")
      ->capture_default_str()->check(CLI::PositiveNumber);
  c_heat->add_option("--threshold", hm.geo.threshold, "Credible when the score is above this")
      ->capture_default_str();
  c_heat->add_option("--weights", hm.geo.weights, "Weights file (key=value)");
  c_heat->add_option("--model", hm.geo.model, "Classify with this model instead of the formula");
  c_heat->add_option("--stopwords", hm.stopwords, "Stopword list");
  c_heat->add_option("--lexicon", hm.lexicon, "Word sentiment lexicon");

  // ---- monitor ------------------------------------------------------------
  struct {
    std::string store, tweet, user, start, output, format, weights;
    std::size_t ticks = 1;
    long interval_mins = 60;
    bool fake_clock = false;
  } mo;
  auto* c_mon = app.add_subcommand("monitor", "Sample a tweet's or user's credibility over time");
  c_mon->add_option("--store", mo.store, "Snapshot store directory")->required();
  auto* o_mt = c_mon->add_option("--tweet", mo.tweet, "Tweet id");
  auto* o_mu = c_mon->add_option("--user", mo.user, "User id");
  o_mt->excludes(o_mu);
  c_mon->add_option("--ticks", mo.ticks, "Number of samples")->capture_default_str();
  c_mon->add_option("--interval-mins", mo.interval_mins, "Minutes between samples")
      ->capture_default_str()->check(CLI::PositiveNumber);
  auto* o_fake = c_mon->add_flag("--fake-clock", mo.fake_clock, "Advance a simulated clock instead of sleeping");
  c_mon->add_option("--start", mo.start, "Fake clock start (UTC; default latest snapshot)")
      ->needs(o_fake);
  c_mon->add_option("-o,--output", mo.output, "Output file (default stdout)");
  c_mon->add_option("--weights", mo.weights, "Weights file (key=value)");
  add_format(c_mon, mo.format, "csv");

  // ---- trend --------------------------------------------------------------
  struct {
    std::string input, format;
    std::vector<double> values;
    double eps = kDefaultFlatEpsilon;
  } td;
  auto* c_trend = app.add_subcommand("trend", "Classify a credibility series");
  auto* o_ti = c_trend->add_option("-i,--input", td.input, "CSV with a score column (monitor output)");
  auto* o_tv = c_trend->add_option("--values", td.values, "Comma-separated scores")->delimiter(',');
  o_ti->excludes(o_tv);
  c_trend->add_option("--epsilon", td.eps, "Flatness tolerance")->capture_default_str();
  add_format(c_trend, td.format, "json");

  // ---- run ----------------------------------------------------------------
  struct {
    std::string input, config, out_dir = "credsift-out";
    std::optional<unsigned> threads;
  } rn;
  auto* c_run = app.add_subcommand("run", "Full pipeline: ingest, dedup, score, statistics, maps");
  c_run->add_option("-i,--input", rn.input, "Records (JSON lines)")->required();
  c_run->add_option("-c,--config", rn.config,
                    std::string("Config file (default $") + kConfigEnvVar + ")");
  c_run->add_option("-o,--out-dir", rn.out_dir, "Output directory")->capture_default_str();
  c_run->add_option("--threads", rn.threads, "Override the configured thread count")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*c_ingest) {
      IngestOptions opt;
      if (!ing.languages.empty()) opt.languages = {ing.languages.begin(), ing.languages.end()};
      opt.require_geo = !ing.no_geo;
      std::optional<TopicKeywordList> topics;
      if (ing.topics == "default") topics = default_topics();
      else if (ing.topics != "none") topics = TopicKeywordList::load(ing.topics);
      opt.topics = topics ? &*topics : nullptr;
      opt.threads = ing.threads;
      opt.queue_capacity = ing.queue;
      std::optional<FileReplaySource::SimulatedClock> clock;
      if (!ing.start.empty())
        clock = FileReplaySource::SimulatedClock{parse_timestamp(ing.start), std::chrono::seconds(ing.step_secs)};
      FileReplaySource src(ing.input, clock);
      auto r = ingest(src, opt);
      with_output(ing.accepted, [&](std::ostream& o) {
        for (const auto& p : r.accepted) o << post_to_json(p).dump() << '\n';
      });
      if (!ing.rejections.empty())
        with_output(ing.rejections, [&](std::ostream& o) { write_rejections_csv(o, r); });
      if (!ing.store.empty()) {
        SnapshotStore store(ing.store);
        for (const auto& p : r.accepted) {
          try {
            store.put_user(p.author, p.snapshot_time);
          } catch (const DataError&) {
            // Same author snapshot already stored for this instant.
          }
          store.put_tweet(p.tweet, p.snapshot_time);
        }
      }
      std::cerr << "read " << r.lines_read << ", accepted " << r.accepted.size() << ", rejected "
                << r.rejected.size() << '\n';
    } else if (*c_dedup) {
      auto posts = read_posts(dd.input, false);
      std::vector<Tweet> tweets;
      for (const auto& p : posts) tweets.push_back(p.tweet);
      DedupSettings s;
      auto mode = parse_dedup_mode(dd.mode);
      if (dd.threshold) (mode == DedupMode::RealTime ? s.realtime_threshold : s.offline_threshold) = *dd.threshold;
      auto res = dedup(tweets, mode, s);
      with_output(dd.output, [&](std::ostream& o) { write_dedup_csv(o, tweets, res); });
    } else if (*c_st) {
      if (st.features.empty() && st.record.empty())
        throw CLI::RequiredError("--features or --record");
      FormulaWeights w = load_weights(st.weights);
      TweetFeatures f;
      if (!st.features.empty()) {
        f = tweet_features_from_json(read_json_file(st.features));
      } else {
        json j = read_json_file(st.record);
        auto lex = load_lexicons(st.stopwords, st.lexicon);
        Tweet t = tweet_from_json(j);
        if (!j.contains("author")) throw DataError("record: missing field 'author'");
        UserProfile u = user_from_json(j.at("author"));
        f = extract_tweet_features(t, u, lex.stopwords, lex.lexicon);
      }
      write_value(std::cout, "score", tweet_credibility(f, w), st.format);
    } else if (*c_su) {
      if (su.features.empty() && su.store.empty()) throw CLI::RequiredError("--features or --store");
      FormulaWeights w = load_weights(su.weights);
      double score;
      if (!su.features.empty()) {
        score = user_credibility(user_features_from_json(read_json_file(su.features)), w);
      } else {
        SnapshotStore store(su.store);
        if (!store.has_user(su.id)) throw DataError("unknown user " + su.id);
        Timestamp at;
        if (!su.at.empty()) {
          at = parse_timestamp(su.at);
        } else {
          // Latest instant covered by the store for this user.
          at = store.get_user(su.id)->creation_date;
          for (const auto& t : store.list_recent(su.id, kAverageWindow)) at = std::max(at, t.creation_date);
        }
        ScoringContext ctx;
        ctx.weights = w;
        score = user_score_at(store, su.id, at, ctx);
      }
      write_value(std::cout, "score", score, su.format);
    } else if (*c_train) {
      auto lex = load_lexicons(tr.stopwords, tr.lexicon);
      auto config = feature_config(parse_config_id(tr.config));
      auto posts = read_posts(tr.data, false);
      std::vector<IngestedPost> train_posts = posts, test_posts;
      if (tr.holdout) {
        auto split = split_holdout(std::span<const IngestedPost>(posts), tr.seed);
        train_posts = std::move(split.first);
        test_posts = std::move(split.second);
      }
      FeatureScaling scaling;
      auto train_set = labeled_examples(train_posts, config, lex, &scaling, {});
      NnTopology topo;
      topo.n_inputs = config.features.size();
      topo.n_hidden = tr.hidden;
      TrainOptions opt;
      opt.iterations = tr.iterations;
      opt.learning_rate = tr.lr;
      opt.seed = tr.seed;
      NnModel m = train(train_set, topo, opt, config, scaling);
      save_model(tr.out, m);
      const auto& report_set = tr.holdout ? test_posts : train_posts;
      auto eval_set = labeled_examples(report_set, config, lex, nullptr, scaling);
      auto met = evaluate(m, eval_set);
      json out = {{"config", tr.config},
                  {"train_size", train_set.size()},
                  {"evaluated_on", tr.holdout ? "holdout" : "training"},
                  {"eval_size", eval_set.size()},
                  {"accuracy", met.accuracy},
                  {"precision", met.precision},
                  {"recall", met.recall}};
      if (tr.format == "csv") {
        Table t{{"config", "train_size", "evaluated_on", "eval_size", "accuracy", "precision", "recall"},
                {{out["config"], out["train_size"], out["evaluated_on"], out["eval_size"],
                  out["accuracy"], out["precision"], out["recall"]}}};
        write_table(std::cout, t, "csv");
      } else {
        std::cout << out.dump() << '\n';
      }
    } else if (*c_eval) {
      auto lex = load_lexicons(ev.stopwords, ev.lexicon);
      NnModel m = load_model(ev.model);
      auto posts = read_posts(ev.data, false);
      auto data = labeled_examples(posts, m.config, lex, nullptr, m.scaling);
      auto met = evaluate(m, data, ev.threshold);
      Table t{{"accuracy", "precision", "recall", "tp", "fp", "tn", "fn"},
              {{met.accuracy, met.precision, met.recall, met.true_positive, met.false_positive,
                met.true_negative, met.false_negative}}};
      if (ev.format == "json") {
        json o;
        for (std::size_t i = 0; i < t.header.size(); ++i) o[t.header[i]] = t.rows[0][i];
        std::cout << o.dump() << '\n';
      } else {
        write_table(std::cout, t, "csv");
      }
    } else if (*c_pred) {
      auto lex = load_lexicons(pr.stopwords, pr.lexicon);
      NnModel m = load_model(pr.model);
      auto posts = read_posts(pr.input, false);
      Table t{{"id", "probability", "verdict"}, {}};
      for (const auto& p : posts) {
        auto f = extract_tweet_features(p.tweet, p.author, lex.stopwords, lex.lexicon);
        double prob = predict(m, select_features(m.config, f, m.scaling));
        t.rows.push_back({p.tweet.id, prob, to_string(classify(prob, pr.threshold))});
      }
      with_output(pr.output, [&](std::ostream& o) { write_table(o, t, pr.format); });
    } else if (*c_bench) {
      std::vector<std::string> texts;
      if (bs.generate > 0) {
        texts = synthetic::corpus(bs.generate, bs.seed);
      } else if (!bs.input.empty()) {
        auto in = open_input(bs.input);
        std::string line;
        while (std::getline(in, line)) {
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (!line.empty()) texts.push_back(line);
        }
      } else {
        throw CLI::RequiredError("--input or --generate");
      }
      BenchOptions opt;
      opt.threshold = bs.threshold;
      opt.threads = bs.threads;
      opt.seed = bs.seed;
      opt.all_pairs_limit = bs.all_pairs_limit;
      opt.sample_pairs = bs.sample_pairs;
      auto reports = bench(texts, {}, opt);
      with_output(bs.output, [&](std::ostream& o) {
        if (bs.format == "csv") {
          write_bench_csv(o, reports);
        } else {
          Table t{{"algorithm", "pairs", "wall_ms", "groups"}, {}};
          for (const auto& r : reports)
            t.rows.push_back({to_string(r.algorithm), r.pairs_evaluated, r.wall_ms(), r.groups_found});
          write_table(o, t, "json");
        }
      });
    } else if (*c_stats) {
      auto lex = load_lexicons(sa.stopwords, sa.lexicon);
      auto posts = read_posts(sa.input, true);
      auto boundaries = CountryBoundaries::load(data_path(common, sa.geo.boundaries, "world_simplified.geojson"));
      auto table = CountryTable::load(data_path(common, sa.geo.continents, "continents.csv"));
      auto verdicts = verdicts_for(posts, sa.geo, lex);
      auto countries = countries_for(posts, boundaries, sa.geo.border_eps);
      std::vector<RegionRecord> recs;
      for (std::size_t i = 0; i < posts.size(); ++i) recs.push_back({countries[i], verdicts[i]});
      auto rep = aggregate(recs, sa.level == "country" ? RegionLevel::Country : RegionLevel::Continent,
                           table, sa.min_count);
      with_output(sa.output, [&](std::ostream& o) {
        if (sa.format == "csv") {
          write_stats_csv(o, rep);
        } else {
          Table t{{"region", "credible", "not_credible", "total", "credible_pct", "not_credible_pct"}, {}};
          for (const auto& s : rep.regions)
            t.rows.push_back({s.region, s.credible_count, s.not_credible_count, s.total(),
                              s.credible_pct, s.not_credible_pct});
          write_table(o, t, "json");
        }
      });
      std::cerr << "excluded " << rep.excluded_records << " records in small regions, "
                << rep.unassigned_records << " unassigned\n";
    } else if (*c_clusters) {
      auto lex = load_lexicons("", cl.lexicon);
      auto posts = read_posts(cl.input, true);
      LexiconProvider provider(lex.lexicon);
      std::vector<SentimentPoint> pts;
      for (const auto& p : posts) pts.push_back({*p.tweet.geo, classify_text(p.tweet.text, provider)});
      auto clusters = cluster_points(pts, cl.cell);
      json gj = clusters_geojson(clusters);
      with_output(cl.output, [&](std::ostream& o) { o << gj.dump(1) << '\n'; });
      maybe_write_html(cl.html, gj, "Sentiment clusters");
    } else if (*c_heat) {
      auto lex = load_lexicons(hm.stopwords, hm.lexicon);
      auto posts = read_posts(hm.input, true);
      auto verdicts = verdicts_for(posts, hm.geo, lex);
      std::vector<VerdictPoint> pts;
      for (std::size_t i = 0; i < posts.size(); ++i) pts.push_back({*posts[i].tweet.geo, verdicts[i]});
      auto grid = heatmap(pts, hm.cell, detail::parse_heatmap_class(hm.which));
      json gj = heatmap_geojson(grid);
      with_output(hm.output, [&](std::ostream& o) { o << gj.dump(1) << '\n'; });
      maybe_write_html(hm.html, gj, "Credibility heatmap");
    } else if (*c_mon) {
      if (mo.tweet.empty() && mo.user.empty()) throw CLI::RequiredError("--tweet or --user");
      SnapshotStore store(mo.store);
      ScoringContext ctx;
      ctx.weights = load_weights(mo.weights);
      std::chrono::seconds interval = std::chrono::minutes(mo.interval_mins);
      MonitorJob job;
      auto run = [&](Clock& clock) {
        job = mo.tweet.empty() ? monitor_user(store, mo.user, interval, clock, mo.ticks, ctx)
                               : monitor_tweet(store, mo.tweet, interval, clock, mo.ticks, ctx);
      };
      if (mo.fake_clock) {
        Timestamp start;
        if (!mo.start.empty()) {
          start = parse_timestamp(mo.start);
        } else if (!mo.tweet.empty()) {
          auto t = store.get_tweet(mo.tweet);
          if (!t) throw DataError("unknown tweet " + mo.tweet);
          start = t->creation_date;
        } else {
          auto u = store.get_user(mo.user);
          if (!u) throw DataError("unknown user " + mo.user);
          start = u->creation_date;
          for (const auto& t : store.list_recent(mo.user, 1)) start = std::max(start, t.creation_date);
        }
        FakeClock clock(start);
        run(clock);
      } else {
        SystemClock clock;
        run(clock);
      }
      Table t{{"time", "score"}, {}};
      for (const auto& s : job.samples.samples()) t.rows.push_back({format_timestamp(s.time), s.score});
      with_output(mo.output, [&](std::ostream& o) { write_table(o, t, mo.format); });
    } else if (*c_trend) {
      std::vector<double> values = td.values;
      if (!td.input.empty()) {
        auto in = open_input(td.input);
        std::string line;
        std::getline(in, line);
        std::vector<std::string> cols;
        {
          std::istringstream hs(line);
          std::string c;
          while (std::getline(hs, c, ',')) cols.push_back(detail::trim(c));
        }
        auto it = std::find(cols.begin(), cols.end(), "score");
        if (it == cols.end()) throw DataError(td.input + ": no 'score' column");
        std::size_t col = static_cast<std::size_t>(it - cols.begin());
        while (std::getline(in, line)) {
          if (detail::trim(line).empty()) continue;
          std::istringstream ls(line);
          std::string c;
          for (std::size_t k = 0; k <= col; ++k) std::getline(ls, c, ',');
          values.push_back(detail::parse_real("score", detail::trim(c)));
        }
      }
      if (values.size() < 2) throw DataError("trend needs at least two samples");
      write_value(std::cout, "trend", to_string(trend(values, td.eps)), td.format);
    } else if (*c_run) {
      PipelineConfig config;
      std::optional<fs::path> cfg = rn.config.empty() ? config_from_env() : fs::path(rn.config);
      if (cfg) config = load_config(*cfg);
      if (rn.threads) config.threads = *rn.threads;
      auto res = PipelineResources::load(config, common.data_dir);
      FileReplaySource src(rn.input);
      auto out = run_pipeline(src, config, res);
      write_outputs(out, rn.out_dir);
      std::cerr << "accepted " << out.ingest.accepted.size() << " of " << out.ingest.lines_read
                << " lines, " << out.scored.size() << " after dedup; outputs in " << rn.out_dir << '\n';
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const ClassificationError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
