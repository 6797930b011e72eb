#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "credsift/credsift.hpp"

using namespace credsift;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("credsift_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string join_lines(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + '\n';
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Tweet make_tweet(std::string id, std::string author, std::string text, Timestamp created) {
  Tweet t;
  t.id = std::move(id);
  t.author_id = std::move(author);
  t.text = std::move(text);
  t.creation_date = created;
  t.geo = GeoPoint{48.8, 2.3};
  return t;
}

const Timestamp kT0 = parse_timestamp("2016-03-22T08:00:00Z");

}  // namespace

// ---------------------------------------------------------------------------
// Bounded queue
// ---------------------------------------------------------------------------

TEST(BoundedQueue, FifoAndClose) {
  BoundedQueue<int> q(3);
  EXPECT_TRUE(q.push(1));
  EXPECT_TRUE(q.push(2));
  EXPECT_EQ(q.size(), 2u);
  EXPECT_EQ(q.pop(), 1);
  q.close();
  EXPECT_FALSE(q.push(3));
  EXPECT_EQ(q.pop(), 2);  // drains after close
  EXPECT_EQ(q.pop(), std::nullopt);
  EXPECT_THROW(BoundedQueue<int>(0), std::invalid_argument);
}

TEST(BoundedQueue, ProducerBlocksWhenFull) {
  BoundedQueue<int> q(2);
  std::atomic<int> pushed{0};
  std::thread producer([&] {
    for (int i = 0; i < 5; ++i) {
      q.push(i);
      ++pushed;
    }
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  EXPECT_EQ(pushed.load(), 2);
  EXPECT_LE(q.size(), q.capacity());
  std::vector<int> got;
  for (int i = 0; i < 5; ++i) got.push_back(*q.pop());
  producer.join();
  EXPECT_EQ(got, (std::vector<int>{0, 1, 2, 3, 4}));
}

// ---------------------------------------------------------------------------
// Ingest
// ---------------------------------------------------------------------------

TEST(Ingest, RejectionReasons) {
  std::string author = R"("author":{"id":"u1","creation_date":"2012-01-01T00:00:00Z","followers_no":100})";
  std::string geo = R"("geo":{"lat":48.8,"lon":2.3})";
  std::vector<std::string> lines{
      R"({"id":"a","text":"war in the region","creation_date":"2016-03-22T08:00:00Z",)" + geo + "," + author + "}",
      R"({"id":"b","text":)",
      R"({"id":"c","text":"war","creation_date":"2016-03-22T08:00:00Z","retweets_no":-1,)" + geo + "," + author + "}",
      R"({"id":"d","text":"guerra","language":"es","creation_date":"2016-03-22T08:00:00Z",)" + geo + "," + author + "}",
      R"({"id":"e","text":"war","creation_date":"2016-03-22T08:00:00Z",)" + author + "}",
      R"({"id":"f","text":"lunch was fine","creation_date":"2016-03-22T08:00:00Z",)" + geo + "," + author + "}",
      "[1,2,3]",
  };
  std::istringstream in(join_lines(lines));
  IngestOptions opt;
  opt.topics = &default_topics();
  auto r = ingest(in, opt);
  EXPECT_EQ(r.lines_read, 7u);
  ASSERT_EQ(r.accepted.size(), 1u);
  EXPECT_EQ(r.accepted[0].tweet.id, "a");
  EXPECT_EQ(r.accepted[0].line_no, 1u);
  EXPECT_TRUE(r.accepted[0].topics.count(TopicSection::FightAndAttack));
  auto counts = r.rejection_counts();
  EXPECT_EQ(counts[RejectReason::Malformed], 2u);
  EXPECT_EQ(counts[RejectReason::Invalid], 1u);
  EXPECT_EQ(counts[RejectReason::Language], 1u);
  EXPECT_EQ(counts[RejectReason::NoGeo], 1u);
  EXPECT_EQ(counts[RejectReason::NoTopic], 1u);
  EXPECT_EQ(r.accepted.size() + r.rejected.size(), r.lines_read);

  std::ostringstream csv;
  write_rejections_csv(csv, r);
  EXPECT_EQ(csv.str().substr(0, 19), "line,reason,detail\n");
}

TEST(Ingest, AnnotationBecomesLabel) {
  std::string base = R"({"id":"x","text":"t","creation_date":"2016-03-22T08:00:00Z","author":{"id":"u","creation_date":"2012-01-01T00:00:00Z"},)";
  std::istringstream in(base + R"("annotation":1})" + "\n" + base + R"("annotation":0})" + "\n");
  IngestOptions opt;
  opt.require_geo = false;
  auto r = ingest(in, opt);
  ASSERT_EQ(r.accepted.size(), 2u);
  EXPECT_EQ(r.accepted[0].label, 0);
  EXPECT_EQ(r.accepted[1].label, 1);
}

TEST(Ingest, OrderIndependentOfThreads) {
  auto lines = synthetic::records(400, 5);
  std::string text = join_lines(lines);
  IngestOptions one;
  one.topics = &default_topics();
  std::istringstream a(text);
  auto ra = ingest(a, one);
  for (unsigned threads : {2u, 4u, 8u}) {
    IngestOptions many = one;
    many.threads = threads;
    many.queue_capacity = 3;
    std::istringstream b(text);
    auto rb = ingest(b, many);
    ASSERT_EQ(ra.accepted.size(), rb.accepted.size());
    for (std::size_t i = 0; i < ra.accepted.size(); ++i) {
      EXPECT_EQ(ra.accepted[i].tweet, rb.accepted[i].tweet);
      EXPECT_EQ(ra.accepted[i].line_no, rb.accepted[i].line_no);
    }
    ASSERT_EQ(ra.rejected.size(), rb.rejected.size());
    for (std::size_t i = 0; i < ra.rejected.size(); ++i)
      EXPECT_EQ(ra.rejected[i].line_no, rb.rejected[i].line_no);
  }
  EXPECT_GT(ra.accepted.size(), 0u);
  EXPECT_GT(ra.rejected.size(), 0u);
}

TEST(Ingest, SimulatedArrivalClock) {
  std::string line = R"({"id":"x","text":"t","creation_date":"2016-03-22T08:00:00Z","author":{"id":"u","creation_date":"2012-01-01T00:00:00Z"}})";
  std::istringstream in(line + "\n\n" + line + "\n");
  FileReplaySource src(in, FileReplaySource::SimulatedClock{kT0, std::chrono::seconds(90)});
  IngestOptions opt;
  opt.require_geo = false;
  auto r = ingest(src, opt);
  ASSERT_EQ(r.accepted.size(), 2u);
  EXPECT_EQ(r.accepted[0].snapshot_time, kT0);
  EXPECT_EQ(r.accepted[1].snapshot_time, kT0 + std::chrono::seconds(90));
}

TEST(Ingest, MissingFileIsIoError) {
  EXPECT_THROW(FileReplaySource("/nonexistent/posts.jsonl"), IoError);
}

// ---------------------------------------------------------------------------
// Snapshot store
// ---------------------------------------------------------------------------

TEST(SnapshotStore, RoundTripAndDurability) {
  TempDir dir("store");
  UserProfile u;
  u.id = "u1";
  u.followers_no = 100;
  Tweet t = make_tweet("t1", "u1", "hello world", kT0);
  {
    SnapshotStore s(dir.path);
    s.put_user(u, kT0);
    s.put_tweet(t, kT0);
    t.retweets_no = 5;
    s.put_tweet(t, kT0 + std::chrono::hours(1));
    s.append_score("t1", kT0, 0.25);
    EXPECT_THROW(s.put_tweet(t, kT0), DataError);
  }
  SnapshotStore s(dir.path);
  EXPECT_TRUE(s.has_tweet("t1"));
  EXPECT_TRUE(s.has_user("u1"));
  EXPECT_EQ(s.get_tweet("t1")->retweets_no, 5);
  EXPECT_EQ(s.get_tweet("t1", kT0 + std::chrono::minutes(59))->retweets_no, 0);
  EXPECT_EQ(s.get_tweet("t1", kT0 - std::chrono::seconds(1)), std::nullopt);
  EXPECT_EQ(s.get_user("u1"), u);
  ASSERT_EQ(s.scores("t1").size(), 1u);
  EXPECT_EQ(s.scores("t1")[0].score, 0.25);
  EXPECT_EQ(s.tweet_count(), 1u);
  EXPECT_FALSE(s.has_tweet("nope"));
}

TEST(SnapshotStore, ListRecentNewestFirst) {
  TempDir dir("recent");
  SnapshotStore s(dir.path);
  for (int i = 0; i < 30; ++i)
    s.put_tweet(make_tweet("t" + std::to_string(100 + i), "u1", "x", kT0 + std::chrono::minutes(i)),
                kT0 + std::chrono::minutes(i));
  s.put_tweet(make_tweet("other", "u2", "x", kT0), kT0);
  auto recent = s.list_recent("u1", 20);
  ASSERT_EQ(recent.size(), 20u);
  EXPECT_EQ(recent.front().id, "t129");
  EXPECT_EQ(recent.back().id, "t110");
  // As of an earlier time only older tweets exist.
  auto early = s.list_recent("u1", 20, kT0 + std::chrono::minutes(4));
  ASSERT_EQ(early.size(), 5u);
  EXPECT_EQ(early.front().id, "t104");
  EXPECT_TRUE(s.list_recent("nobody", 20).empty());
}

TEST(SnapshotStore, ConcurrentReaders) {
  TempDir dir("concurrent");
  SnapshotStore s(dir.path);
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> reads{0};
  std::vector<std::thread> readers;
  for (int r = 0; r < 3; ++r)
    readers.emplace_back([&] {
      while (!stop) {
        auto v = s.list_recent("u1", 20);
        EXPECT_LE(v.size(), 20u);
        ++reads;
      }
    });
  for (int i = 0; i < 200; ++i)
    s.put_tweet(make_tweet("t" + std::to_string(i), "u1", "x", kT0 + std::chrono::seconds(i)), kT0);
  stop = true;
  for (auto& t : readers) t.join();
  EXPECT_EQ(s.tweet_count(), 200u);
  EXPECT_EQ(SnapshotStore(dir.path).tweet_count(), 200u);
}

// ---------------------------------------------------------------------------
// Dedup
// ---------------------------------------------------------------------------

TEST(Dedup, RetweetJoinsOriginal) {
  std::vector<Tweet> tweets{
      make_tweet("a", "u1", "RT @u2: refugees arrive at the northern border tonight", kT0 + std::chrono::minutes(5)),
      make_tweet("b", "u2", "refugees arrive at the northern border tonight", kT0),
      make_tweet("c", "u3", "completely different text about lunch", kT0),
  };
  auto d = dedup(tweets, DedupMode::Offline);
  ASSERT_EQ(d.groups.size(), 2u);
  EXPECT_EQ(d.group_of[0], d.group_of[1]);
  // The earliest post represents the group.
  EXPECT_EQ(d.representatives[d.group_of[0]], 1u);
  EXPECT_EQ(d.representatives[d.group_of[2]], 2u);
  EXPECT_EQ(DedupSettings{}.algorithm(DedupMode::RealTime), Algorithm::JaroWinkler);
  EXPECT_EQ(DedupSettings{}.algorithm(DedupMode::Offline), Algorithm::SmithWaterman);
  EXPECT_EQ(parse_dedup_mode("realtime"), DedupMode::RealTime);
  EXPECT_THROW(parse_dedup_mode("batch"), std::invalid_argument);

  std::ostringstream csv;
  write_dedup_csv(csv, tweets, d);
  EXPECT_EQ(csv.str(), "id,group,representative_id\na,0,b\nb,0,b\nc,1,c\n");
}

// ---------------------------------------------------------------------------
// Monitoring
// ---------------------------------------------------------------------------

TEST(Monitor, ExactlyNSamplesOnFakeClock) {
  TempDir dir("monitor");
  SnapshotStore s(dir.path);
  UserProfile u;
  u.id = "u1";
  u.followers_no = 1000;
  s.put_user(u, kT0);
  s.put_tweet(make_tweet("t1", "u1", "peace talks", kT0), kT0);
  for (std::size_t n : {0u, 1u, 7u}) {
    FakeClock clock(kT0);
    auto job = monitor_tweet(s, "t1", std::chrono::minutes(60), clock, n);
    ASSERT_EQ(job.samples.size(), n);
    for (std::size_t k = 0; k < n; ++k)
      EXPECT_EQ(job.samples.samples()[k].time, kT0 + std::chrono::hours(static_cast<long>(k + 1)));
  }
  FakeClock clock(kT0);
  EXPECT_THROW(monitor_tweet(s, "missing", std::chrono::minutes(60), clock, 1), DataError);
  EXPECT_THROW(monitor_user(s, "missing", std::chrono::minutes(60), clock, 1), DataError);
  EXPECT_THROW(monitor_tweet(s, "t1", std::chrono::seconds(0), clock, 1), std::invalid_argument);
}

TEST(Monitor, TweetScoreFollowsSnapshots) {
  TempDir dir("monitor_tweet");
  SnapshotStore s(dir.path);
  UserProfile u;
  u.id = "u1";
  u.followers_no = 1000;  // reach 30
  s.put_user(u, kT0);
  Tweet t = make_tweet("t1", "u1", "peace", kT0);
  s.put_tweet(t, kT0);
  t.retweets_no = 30;  // T_R 0 -> 1
  s.put_tweet(t, kT0 + std::chrono::minutes(90));
  FakeClock clock(kT0);
  auto job = monitor_tweet(s, "t1", std::chrono::minutes(60), clock, 3);
  auto v = job.samples.values();
  EXPECT_EQ(v[0], v[0]);
  EXPECT_NEAR(v[1] - v[0], FormulaWeights{}.w_r, 1e-12);
  EXPECT_EQ(v[2], v[1]);
  EXPECT_EQ(trend(job.samples), Trend::Growing);
}

TEST(Monitor, UserDeltaIsLast20WeightTimesMeanChange) {
  TempDir dir("monitor_user");
  SnapshotStore s(dir.path);
  UserProfile u;
  u.id = "u1";
  u.followers_no = 1000;
  u.creation_date = kPlatformLaunch;  // keeps the age ratio at 1
  u.has_url = true;
  s.put_user(u, kT0);
  for (int i = 0; i < 25; ++i)
    s.put_tweet(make_tweet("t" + std::to_string(10 + i), "u1", "peace talks",
                           kT0 - std::chrono::hours(25 - i)),
                kT0 - std::chrono::hours(25 - i));
  // One of the 20 newest tweets gains full retweet reach after the first tick.
  Tweet boosted = *s.get_tweet("t30");
  boosted.retweets_no = 30;
  s.put_tweet(boosted, kT0 + std::chrono::minutes(90));
  // One of the older five changes too; it is outside the window.
  Tweet old = *s.get_tweet("t11");
  old.favorites_no = 30;
  s.put_tweet(old, kT0 + std::chrono::minutes(90));

  FakeClock clock(kT0);
  auto job = monitor_user(s, "u1", std::chrono::minutes(60), clock, 2);
  ASSERT_EQ(job.samples.size(), 2u);
  auto v = job.samples.values();
  // Each tweet score moves by w_r * delta(T_R) = 0.1; the mean of 20 by 0.1 / 20.
  double expected = FormulaWeights{}.w_a20 * (0.1 / 20.0);
  EXPECT_NEAR(v[1] - v[0], expected, 1e-12);
}

TEST(Monitor, ParallelJobsOnIndependentClocks) {
  TempDir dir("monitor_many");
  SnapshotStore s(dir.path);
  UserProfile u;
  u.id = "u1";
  s.put_user(u, kT0);
  s.put_tweet(make_tweet("t1", "u1", "peace", kT0), kT0);
  FakeClock c1(kT0), c2(kT0 + std::chrono::hours(5));
  std::vector<std::pair<MonitorTarget, std::string>> targets{{MonitorTarget::Tweet, "t1"},
                                                             {MonitorTarget::User, "u1"}};
  std::vector<Clock*> clocks{&c1, &c2};
  auto jobs = run_monitors(s, targets, clocks, std::chrono::minutes(30), 4);
  ASSERT_EQ(jobs.size(), 2u);
  EXPECT_EQ(jobs[0].samples.size(), 4u);
  EXPECT_EQ(jobs[1].samples.size(), 4u);
  EXPECT_EQ(jobs[1].samples.samples()[0].time, kT0 + std::chrono::minutes(330));
  std::vector<Clock*> one{&c1};
  EXPECT_THROW(run_monitors(s, targets, one, std::chrono::minutes(30), 1), std::invalid_argument);
}

TEST(Trend, Classification) {
  auto t = [](std::vector<double> v, double eps = kDefaultFlatEpsilon) { return trend(v, eps); };
  EXPECT_EQ(t({0.5, 0.5, 0.5}), Trend::Constant);
  EXPECT_EQ(t({0.5, 0.502, 0.499}), Trend::Constant);
  EXPECT_EQ(t({0.1, 0.2, 0.3}), Trend::Growing);
  EXPECT_EQ(t({0.1, 0.3, 0.298, 0.4}), Trend::Growing);  // dip within epsilon
  EXPECT_EQ(t({0.9, 0.5, 0.2}), Trend::Decreasing);
  EXPECT_EQ(t({0.1, 0.5, 0.2}), Trend::Mixed);
  EXPECT_EQ(t({0.1, 0.5, 0.1}), Trend::Mixed);
  EXPECT_THROW(t({0.1}), std::invalid_argument);
  EXPECT_THROW(t({0.1, 0.2}, -1.0), std::invalid_argument);
  EXPECT_STREQ(to_string(Trend::Decreasing), "decreasing");
}

TEST(TimeSeries, Invariants) {
  TimeSeries s;
  s.append(kT0, 0.5);
  EXPECT_THROW(s.append(kT0, 0.6), std::invalid_argument);
  EXPECT_THROW(s.append(kT0 + std::chrono::seconds(1), 1.5), std::invalid_argument);
  EXPECT_EQ(s.size(), 1u);
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

TEST(Config, ParseKeysAndPaths) {
  std::istringstream in(
      "# comment\n"
      "languages = en, de\n"
      "require_geo = false\n"
      "topics = none\n"
      "lexicon = lex.tsv   # trailing comment\n"
      "boundaries = /abs/world.geojson\n"
      "dedup_mode = realtime\n"
      "min_region_count = 10\n"
      "heatmap_class = credible\n"
      "threads = 4\n"
      "w_r = 0.2\nw_w = 0.4\n");
  auto c = parse_config(in, "/base");
  EXPECT_EQ(c.languages, (std::set<std::string>{"en", "de"}));
  EXPECT_FALSE(c.require_geo);
  EXPECT_EQ(c.topics, "none");
  EXPECT_EQ(c.lexicon, "/base/lex.tsv");
  EXPECT_EQ(c.boundaries, "/abs/world.geojson");
  EXPECT_EQ(c.dedup_mode, DedupMode::RealTime);
  EXPECT_EQ(c.min_region_count, 10u);
  EXPECT_EQ(c.heatmap_class, HeatmapClass::Credible);
  EXPECT_EQ(c.threads, 4u);
  EXPECT_EQ(c.weights.w_r, 0.2);
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, Errors) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_config(in);
  };
  EXPECT_THROW(parse("colour = red\n"), DataError);
  EXPECT_THROW(parse("threads\n"), DataError);
  EXPECT_THROW(parse("threads = many\n"), DataError);
  EXPECT_THROW(parse("require_geo = maybe\n"), DataError);
  EXPECT_THROW(parse("heatmap_class = purple\n"), DataError);
  EXPECT_THROW(parse("dedup_mode = batch\n"), DataError);
  EXPECT_THROW(validate(parse("w_r = 0.9\n")), DataError);
  EXPECT_THROW(validate(parse("cell_size_deg = 0\n")), DataError);
  EXPECT_THROW(load_config("/nonexistent/credsift.conf"), IoError);
}

TEST(Config, BundledExampleLoads) {
  auto c = load_config(fs::path(CREDSIFT_DATA_DIR) / "pipeline.conf");
  EXPECT_NO_THROW(validate(c));
  auto res = PipelineResources::load(c, CREDSIFT_DATA_DIR);
  EXPECT_EQ(res.boundaries.countries().size(), 16u);
  EXPECT_TRUE(res.topics.has_value());
}

// ---------------------------------------------------------------------------
// End-to-end
// ---------------------------------------------------------------------------

namespace {

PipelineResources bundled_resources() {
  PipelineConfig c;
  return PipelineResources::load(c, CREDSIFT_DATA_DIR);
}

std::map<std::string, std::string> run_to_files(const std::string& input, unsigned threads,
                                                const fs::path& dir) {
  PipelineConfig c;
  c.threads = threads;
  c.queue_capacity = 16;
  auto res = bundled_resources();
  std::istringstream in(input);
  FileReplaySource src(in);
  auto out = run_pipeline(src, c, res);
  write_outputs(out, dir);
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    files[e.path().filename().string()] = slurp(e.path());
  return files;
}

}  // namespace

TEST(Pipeline, EndToEndShape) {
  auto input = join_lines(synthetic::records(300, 21));
  PipelineConfig c;
  auto res = bundled_resources();
  std::istringstream in(input);
  FileReplaySource src(in);
  auto out = run_pipeline(src, c, res);
  EXPECT_EQ(out.ingest.lines_read, 300u);
  EXPECT_EQ(out.scored.size(), out.dedup.groups.size());
  EXPECT_EQ(out.heat.total(), out.scored.size());
  std::size_t clustered = 0;
  for (const auto& cl : out.clusters) clustered += cl.member_count;
  EXPECT_EQ(clustered, out.scored.size());
  std::size_t in_stats = out.by_country.excluded_records + out.by_country.unassigned_records;
  for (const auto& r : out.by_country.regions) in_stats += r.total();
  EXPECT_EQ(in_stats, out.scored.size());
  for (const auto& s : out.scored) {
    EXPECT_GE(s.score, 0.0);
    EXPECT_LE(s.score, 1.0);
    EXPECT_EQ(s.verdict, s.score > 0.6 ? Verdict::Credible : Verdict::NotCredible);
  }
  for (const auto& u : out.users) {
    EXPECT_GE(u.tweets_used, 1u);
    EXPECT_LE(u.tweets_used, 20u);
  }
}

TEST(Pipeline, ByteIdenticalAcrossRunsAndThreads) {
  auto input = join_lines(synthetic::records(300, 22));
  TempDir a("run_a"), b("run_b"), c("run_c");
  auto first = run_to_files(input, 1, a.path);
  auto second = run_to_files(input, 1, b.path);
  auto threaded = run_to_files(input, 4, c.path);
  EXPECT_EQ(first.size(), 8u);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first, threaded);
}

TEST(Pipeline, ModelDrivesVerdict) {
  auto input = join_lines(synthetic::records(120, 23));
  PipelineConfig c;
  auto res = bundled_resources();
  res.model = init_model({}, 3);
  std::istringstream in(input);
  FileReplaySource src(in);
  auto out = run_pipeline(src, c, res);
  ASSERT_FALSE(out.scored.empty());
  for (const auto& s : out.scored) {
    EXPECT_GE(s.probability, 0.0);
    EXPECT_EQ(s.verdict, classify(s.probability));
  }
}

TEST(Pipeline, ParallelForCoversRangeAndPropagates) {
  std::vector<int> hits(1000, 0);
  detail::parallel_for(hits.size(), 7, [&](std::size_t i) { ++hits[i]; });
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  EXPECT_THROW(detail::parallel_for(10, 3,
                                    [](std::size_t i) {
                                      if (i == 5) throw DataError("boom");
                                    }),
               DataError);
}
