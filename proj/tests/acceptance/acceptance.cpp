// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runs against the library, the HTTP-facing Service and the CLI.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "kre/export.hpp"
#include "kre/service.hpp"
#include "kre/snapshot.hpp"
#include "kre/timeline.hpp"
#include "oracle.hpp"
#include "process.hpp"
#include "random_corpus.hpp"
#include "test_data.hpp"

using nlohmann::json;
using namespace testsupport;

namespace {

constexpr std::uint64_t kSeed = 20160701;
constexpr int kRandomCorpora = 100;
constexpr int kNavigationTriples = 50;

// Collects failure messages for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " failure(s)";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

int g_failed = 0;

void report(const std::string& name, const Check& c, const std::string& detail = "") {
  if (c.ok()) {
    std::cout << "PASS " << name << (detail.empty() ? "" : " (" + detail + ")") << '\n';
  } else {
    ++g_failed;
    std::cout << "FAIL " << name << ": " << c.summary() << '\n';
  }
}

std::vector<kre::Corpus> random_suite() {
  std::mt19937_64 rng(kSeed);
  std::vector<kre::Corpus> out;
  for (int i = 0; i < kRandomCorpora; ++i) out.push_back(random_corpus(rng, {1000, 50, 10}));
  return out;
}

std::string body_of(const json& spec) { return spec.dump(); }

// Every keyword's sentiment counts sum to its frequency in one view JSON.
void check_conservation(const json& view, Check& c, const std::string& where) {
  for (const auto& k : view.at("keywords")) {
    const auto& s = k.at("sentiment");
    const auto sum = s.at("positive").get<std::size_t>() + s.at("neutral").get<std::size_t>() +
                     s.at("negative").get<std::size_t>();
    c.expect(sum == k.at("frequency").get<std::size_t>(), where + " keyword " + k.at("text").get<std::string>());
  }
}

void oracle_equivalence(const std::vector<kre::Corpus>& suite) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t cells = 0;
  for (std::size_t n = 0; n < suite.size(); ++n) {
    const auto& corpus = suite[n];
    const auto refs = kre::all_records(corpus);
    auto stats = kre::keyword_stats(refs, kre::KindSet::all());
    c.expect(stats.size() <= 50, "corpus " + std::to_string(n) + " has more than 50 keywords");
    const auto window = corpus.time_range()->window();
    const auto m = kre::relation_matrix(refs, std::move(stats), kre::RelationKind::cooccurrence,
                                        kre::default_similarity(), window);

    std::vector<std::set<std::string>> sets;
    for (const auto& r : to_oracle(corpus)) sets.push_back(r.keywords());
    std::vector<std::string> kw;
    for (const auto& s : m.keywords) kw.push_back(s.text);
    const auto want = oracle::pair_counts(sets, kw);

    std::map<std::pair<std::string, std::string>, std::size_t> got;
    double max = 0;
    for (const auto& cell : m.cells) {
      c.expect(cell.i < cell.j, "lower-triangle cell");
      c.expect(cell.value == double(cell.tweet_count), "value != tweet_count");
      const auto key = std::minmax(kw[cell.i], kw[cell.j]);
      got[{key.first, key.second}] = cell.tweet_count;
      max = std::max(max, cell.value);
    }
    c.expect(got == want, "corpus " + std::to_string(n) + " differs from pair-counting oracle");
    c.expect(m.max_value == max, "corpus " + std::to_string(n) + " max_value");
    c.expect(m.record_count == corpus.size(), "record_count");
    cells += want.size();
  }
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 60.0, "suite took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << suite.size() << " corpora, " << cells << " cells, " << secs << " s";
  report("oracle_equivalence", c, d.str());
}

void timeline_algebra() {
  Check c;
  const auto& corpus = fixture_corpus();
  const auto range = corpus.time_range()->window();
  const auto ids = [&](const kre::TimeWindow& w) {
    std::set<std::string> out;
    for (const auto* r : kre::filter_time(corpus, w)) out.insert(r->id);
    return out;
  };
  const auto d = kre::make_buckets(range, kre::Granularity::day, kre::TimelineMode::discrete);
  const auto a = kre::make_buckets(range, kre::Granularity::day, kre::TimelineMode::accumulative);
  const auto o = kre::make_buckets(range, kre::Granularity::day, kre::TimelineMode::overlapping);
  c.expect(d.size() == 6 && a.size() == 6 && o.size() == 6, "expected 6 day buckets per mode");

  std::set<std::string> seen, acc;
  std::size_t overlaps = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto di = ids(d[i].window);
    for (const auto& id : di) overlaps += !seen.insert(id).second;
    acc.insert(di.begin(), di.end());
    if (i < a.size()) c.expect(ids(a[i].window) == acc, "accumulative bucket " + std::to_string(i));
  }
  c.expect(overlaps == 0, "discrete buckets overlap");
  c.expect(seen == ids(range), "discrete union != in-range records");
  if (o.size() > 1 && d.size() > 1) {
    c.expect(d[1].window.start - o[1].window.start == std::chrono::hours{6}, "overlap is not 6 h");
    c.expect(kre::format_iso8601(o[1].window.start) == "2016-07-01T18:00:00Z", "overlap start not Jul 01 18:00");
  }

  const kre::QuerySpec spec;
  const auto views = kre::query_timeline(corpus, spec, kre::TimelineMode::accumulative, kre::Granularity::day);
  c.expect(!views.empty() && kre::view_json(views.back().view) == kre::view_json(kre::query_matrix(corpus, spec)),
           "final accumulative view != summary view");
  report("timeline_algebra", c);
}

void sentiment_conservation(const std::vector<kre::Corpus>& suite) {
  Check c;
  std::size_t views = 0;
  std::mt19937_64 rng(kSeed + 1);
  const std::vector<std::string> modes{"discrete", "accumulative", "overlapping"};
  for (std::size_t n = 0; n < suite.size(); ++n) {
    const kre::Service service(std::make_shared<kre::Corpus>(suite[n]));
    json spec = {{"node_count", std::uniform_int_distribution<int>(1, 60)(rng)}};
    if (n % 3 == 1) spec["keyword_kinds"] = {"hashtag", "verb"};
    if (n % 4 == 2) spec["relation_kind"] = "word_similarity";
    check_conservation(json::parse(service.matrix(body_of(spec))), c, "corpus " + std::to_string(n));
    ++views;
    const json tl = {{"query", spec}, {"mode", modes[n % 3]}, {"granularity", "day"}};
    const auto timeline = json::parse(service.timeline(tl.dump()));
    for (const auto& v : timeline.at("views")) {
      check_conservation(v, c, "corpus " + std::to_string(n) + " timeline");
      ++views;
    }
  }
  const kre::Service fixture(std::make_shared<kre::Corpus>(fixture_corpus()));
  for (const auto& mode : modes) {
    const auto timeline = json::parse(fixture.timeline(json{{"mode", mode}}.dump()));
    for (const auto& v : timeline.at("views")) {
      check_conservation(v, c, "fixture " + mode);
      ++views;
    }
  }
  report("sentiment_conservation", c, std::to_string(views) + " views");
}

void navigation_equivalence(const std::vector<kre::Corpus>& suite) {
  Check c;
  std::mt19937_64 rng(kSeed + 2);
  int triples = 0;
  for (int attempt = 0; triples < kNavigationTriples && attempt < 100 * kNavigationTriples; ++attempt) {
    const auto& corpus = suite[std::uniform_int_distribution<std::size_t>(0, suite.size() - 1)(rng)];
    const kre::Service service(std::make_shared<kre::Corpus>(corpus));
    const auto summary = json::parse(service.matrix("{}"));
    const auto& cells = summary.at("cells");
    if (cells.empty()) continue;
    const auto& cell = cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)];
    const std::string a = summary.at("keywords")[cell.at("i").get<std::size_t>()].at("text");
    const std::string b = summary.at("keywords")[cell.at("j").get<std::size_t>()].at("text");
    const std::string tag = "(" + a + "," + b + ")";

    // Node-then-node navigation needs b among the top keywords once a is selected.
    json spec = {{"navigation", {a}}};
    const auto after_a = json::parse(service.matrix(spec.dump()));
    bool b_visible = false;
    for (const auto& k : after_a.at("keywords")) b_visible = b_visible || k.at("text") == b;
    if (!b_visible) continue;
    ++triples;

    spec["navigation"].push_back(b);
    const std::string stepwise = service.matrix(spec.dump());

    const std::string direct = service.matrix(json{{"navigation", {a, b}}}.dump());
    // Navigating a cell appends both of its keywords at once.
    const std::string via_cell = service.matrix(json{{"navigation", {b, a}}}.dump());
    c.expect(stepwise == direct, "node-node != [a,b] " + tag);
    c.expect(direct == via_cell, "[a,b] != cell navigation " + tag);

    const auto nav_view = json::parse(direct);
    c.expect(nav_view.at("record_count") == cell.at("tweet_count"), "record_count != cell tweet_count " + tag);
    c.expect(nav_view.at("record_count").get<std::size_t>() == oracle::drill(to_oracle(corpus), {a, b}).size(),
             "record_count != oracle drill " + tag);

    const auto cell_page = json::parse(service.tweets(json{{"target", {{"cell", {a, b}}}}, {"limit", 500}}.dump()));
    const auto nav_page = json::parse(service.tweets(json{{"query", {{"navigation", {a, b}}}}, {"limit", 500}}.dump()));
    c.expect(cell_page.at("total") == nav_page.at("total"), "tweet totals differ " + tag);
    std::vector<std::string> x, y;
    for (const auto& i : cell_page.at("items")) x.push_back(i.at("id"));
    for (const auto& i : nav_page.at("items")) y.push_back(i.at("id"));
    c.expect(x == y, "tweet ids differ " + tag);
  }
  c.expect(triples == kNavigationTriples, "only " + std::to_string(triples) + " triples found");
  report("navigation_equivalence", c, std::to_string(triples) + " triples");
}

void determinism() {
  Check c;
  TempDir dir;
  const auto ingest = [&](const std::string& name) {
    return run(cli() + " ingest --input " + quote(fixture_path()) + " --out " + quote(dir / name) + " --seed 42");
  };
  const auto r1 = ingest("a.snap");
  const auto r2 = ingest("b.snap");
  c.expect(r1.exit_code == 0 && r2.exit_code == 0, "ingest failed");
  c.expect(r1.out == r2.out, "ingest summaries differ");
  const std::string snap = read_file(dir / "a.snap");
  c.expect(!snap.empty() && snap == read_file(dir / "b.snap"), "snapshots differ");

  const std::string golden = read_file(golden_path());
  c.expect(!golden.empty(), "golden file missing");
  const auto exported = run(cli() + " export --snapshot " + quote(dir / "a.snap") + " --format json");
  c.expect(exported.exit_code == 0 && exported.out == golden, "CLI export != golden");

  const auto loaded = std::make_shared<kre::Corpus>(kre::load_snapshot(dir / "a.snap"));
  c.expect(kre::view_json(kre::query_matrix(*loaded, {})) + "\n" == golden, "query_matrix != golden");

  // The golden file itself must be what the brute-force oracle produces.
  const auto o = oracle::read_snapshot(dir / "a.snap");
  const auto view = oracle::default_view(o.records, o.header.at("time_range").at("first"),
                                         oracle::plus_one_second(o.header.at("time_range").at("last")));
  c.expect(view.dump() + "\n" == golden, "oracle view != golden");

  const kre::Service service(loaded);
  const std::vector<std::pair<std::string, std::string>> requests{
      {"/api/info", ""},
      {"/api/matrix", "{}"},
      {"/api/matrix", R"({"relation_kind":"word_similarity","node_count":30,"sort":{"key":"relation_sum"}})"},
      {"/api/matrix", R"({"navigation":["eu"],"pct_range":[25,75]})"},
      {"/api/timeline", R"({"mode":"overlapping","granularity":"hour"})"},
      {"/api/timeline", R"({"mode":"accumulative","granularity":"week"})"},
      {"/api/tweets", R"({"target":{"cell":["eu","vote"]},"offset":3,"limit":20})"},
      {"/api/tweets", R"({"target":"all","limit":500})"},
      {"/api/matrix", R"({"node_count":0})"},
  };
  for (const auto& [path, body] : requests) {
    const auto method = path == "/api/info" ? "GET" : "POST";
    const auto first = service.handle(method, path, body);
    for (int i = 0; i < 3; ++i) {
      const auto again = service.handle(method, path, body);
      c.expect(again.status == first.status && again.body == first.body, "response differs on repeat: " + path);
    }
  }
  report("determinism", c);
}

void filter_soundness(const std::vector<kre::Corpus>& suite) {
  Check c;
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> pct(0, 100);
  std::size_t checked = 0;
  for (std::size_t n = 0; n < suite.size(); ++n) {
    const kre::Service service(std::make_shared<kre::Corpus>(suite[n]));
    for (const char* kind : {"cooccurrence", "word_similarity"}) {
      const auto full = json::parse(service.matrix(json{{"relation_kind", kind}, {"node_count", 50}}.dump()));
      double max = 0;
      for (const auto& cell : full.at("cells")) max = std::max(max, cell.at("value").get<double>());
      for (const auto& cell : full.at("cells")) {
        if (cell.at("value").get<double>() == max) c.expect(cell.at("pct").get<double>() == 100.0, "max cell pct != 100");
      }
      for (int trial = 0; trial < 3; ++trial) {
        double lo = pct(rng), hi = pct(rng);
        if (lo > hi) std::swap(lo, hi);
        if (trial == 2) lo = hi = 100;
        const auto view = json::parse(
            service.matrix(json{{"relation_kind", kind}, {"node_count", 50}, {"pct_range", {lo, hi}}}.dump()));
        std::size_t expected = 0;
        for (const auto& cell : full.at("cells")) {
          const double p = cell.at("pct").get<double>();
          expected += p >= lo && p <= hi;
        }
        c.expect(view.at("cells").size() == expected, "cell count differs from manual filter");
        c.expect(view.at("keywords") == full.at("keywords"), "filter changed keywords");
        for (const auto& cell : view.at("cells")) {
          const double p = cell.at("pct").get<double>();
          c.expect(p >= lo && p <= hi, "cell pct outside [lo, hi]");
          c.expect(p == 100.0 * cell.at("value").get<double>() / max || p == 100.0, "pct not value/max");
          ++checked;
        }
      }
    }
  }
  report("filter_soundness", c, std::to_string(checked) + " cells");
}

void sort_contracts(const std::vector<kre::Corpus>& suite) {
  Check c;
  const std::vector<std::string> keys{"alphabetical", "frequency", "relation_sum"};
  const auto check_view = [&](const kre::Service& service, const json& base, const std::string& where) {
    // Unsorted reference: alphabetical order carries each keyword's identity.
    json ref_spec = base;
    ref_spec["sort"] = {{"key", "alphabetical"}, {"direction", "ascending"}};
    const auto ref = json::parse(service.matrix(ref_spec.dump()));
    std::map<std::string, double> sums;
    std::map<std::string, std::size_t> freq;
    for (const auto& k : ref.at("keywords")) sums[k.at("text")] = 0, freq[k.at("text")] = k.at("frequency");
    for (const auto& cell : ref.at("cells")) {
      sums[ref.at("keywords")[cell.at("i").get<std::size_t>()].at("text")] += cell.at("value").get<double>();
      sums[ref.at("keywords")[cell.at("j").get<std::size_t>()].at("text")] += cell.at("value").get<double>();
    }
    std::set<std::string> expected_set;
    for (const auto& [t, _] : freq) expected_set.insert(t);

    for (const auto& key : keys) {
      for (const char* dir : {"ascending", "descending"}) {
        json spec = base;
        spec["sort"] = {{"key", key}, {"direction", dir}};
        const auto v = json::parse(service.matrix(spec.dump()));
        std::vector<std::string> order;
        for (const auto& k : v.at("keywords")) order.push_back(k.at("text"));
        c.expect(std::set<std::string>(order.begin(), order.end()) == expected_set && order.size() == freq.size(),
                 where + " " + key + " is not a permutation");
        const bool asc = std::string(dir) == "ascending";
        for (std::size_t p = 1; p < order.size(); ++p) {
          const auto &x = order[p - 1], &y = order[p];
          if (key == "alphabetical") {
            c.expect(asc ? x < y : x > y, where + " alphabetical order");
            continue;
          }
          const double vx = key == "frequency" ? double(freq[x]) : sums[x];
          const double vy = key == "frequency" ? double(freq[y]) : sums[y];
          if (vx == vy) {
            c.expect(x < y, where + " " + key + " tie not lexicographic: " + x + " " + y);
          } else {
            c.expect(asc ? vx < vy : vx > vy, where + " " + key + " order");
          }
        }
        // Sorted matrix is the same relation under the new labels.
        for (const auto& cell : v.at("cells")) {
          const std::string ti = order[cell.at("i").get<std::size_t>()];
          const std::string tj = order[cell.at("j").get<std::size_t>()];
          const auto& rk = ref.at("keywords");
          std::size_t ri = 0, rj = 0;
          for (std::size_t q = 0; q < rk.size(); ++q) {
            if (rk[q].at("text") == ti) ri = q;
            if (rk[q].at("text") == tj) rj = q;
          }
          bool found = false;
          for (const auto& rc : ref.at("cells")) {
            if (rc.at("i") == std::min(ri, rj) && rc.at("j") == std::max(ri, rj)) {
              found = rc.at("value") == cell.at("value");
            }
          }
          c.expect(found, where + " permuted cell mismatch");
        }
      }
    }
  };

  for (std::size_t n = 0; n < suite.size(); n += 2) {
    const kre::Service service(std::make_shared<kre::Corpus>(suite[n]));
    check_view(service, json{{"node_count", 25}}, "corpus " + std::to_string(n));
  }
  const kre::Service fixture(std::make_shared<kre::Corpus>(fixture_corpus()));
  check_view(fixture, json::object(), "fixture");
  check_view(fixture, json{{"relation_kind", "word_similarity"}, {"node_count", 40}}, "fixture similarity");

  // Golden ordering: frequency descending, ties by text.
  const auto golden = json::parse(read_file(golden_path()));
  const auto& kws = golden.at("keywords");
  for (std::size_t i = 1; i < kws.size(); ++i) {
    const auto fa = kws[i - 1].at("frequency").get<std::size_t>(), fb = kws[i].at("frequency").get<std::size_t>();
    c.expect(fa > fb || (fa == fb && kws[i - 1].at("text") < kws[i].at("text")), "golden ordering");
  }
  report("sort_contracts", c);
}

void similarity_defaults() {
  Check c;
  const auto& sim = kre::default_similarity();
  c.expect(kre::word_similarity("brexit", "brexiteer", sim) == 0.625, "brexit/brexiteer != 0.625");
  c.expect(kre::word_similarity("brexiteer", "brexit", sim) == 0.625, "not symmetric on example");
  c.expect(kre::word_similarity("vote", "vote", sim) == 1.0, "self-similarity");
  c.expect(kre::word_similarity("uk", "eu", sim) == 0.0, "uk/eu != 0");
  std::mt19937_64 rng(kSeed + 4);
  const std::u32string alphabet = U"abcdeé#-";
  std::uniform_int_distribution<std::size_t> len(1, 10), ch(0, alphabet.size() - 1);
  const auto make = [&] {
    std::u32string s;
    for (auto n = len(rng); n > 0; --n) s += alphabet[ch(rng)];
    return s;
  };
  const auto utf8 = [](const std::u32string& s) {
    std::string out;
    for (char32_t cp : s) {
      if (cp < 0x80) {
        out += char(cp);
      } else {
        out += char(0xC0 | (cp >> 6));
        out += char(0x80 | (cp & 0x3F));
      }
    }
    return out;
  };
  for (int i = 0; i < 10000; ++i) {
    const auto a = make(), b = make();
    const double ab = sim.similarity(utf8(a), utf8(b));
    c.expect(ab >= 0.0 && ab <= 1.0, "score outside [0, 1]");
    c.expect(ab == sim.similarity(utf8(b), utf8(a)), "asymmetric");
    c.expect(sim.similarity(utf8(a), utf8(a)) == 1.0, "self-similarity != 1");
    c.expect(ab == oracle::bigram_jaccard(a, b), "differs from bigram-Jaccard definition");
  }
  report("similarity_defaults", c, "10000 random pairs");
}

}  // namespace

int main() {
  const auto suite = random_suite();
  oracle_equivalence(suite);
  timeline_algebra();
  sentiment_conservation(suite);
  navigation_equivalence(suite);
  determinism();
  filter_soundness(suite);
  sort_contracts(suite);
  similarity_defaults();
  std::cout << (g_failed == 0 ? "ALL PASS" : std::to_string(g_failed) + " criteria failed") << '\n';
  return g_failed == 0 ? 0 : 1;
}
