// kre: ingest a JSONL corpus into a snapshot, serve it over HTTP, or export
// one query as JSON/CSV.
//
// Exit codes:
//   0  success
//   1  invalid arguments or query
//   2  input file or snapshot missing or unreadable
//   3  output cannot be written
//   4  HTTP port cannot be bound
//   5  input content rejected (too many malformed lines, corrupt snapshot)

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kre/corpus.hpp"
#include "kre/export.hpp"
#include "kre/http_server.hpp"
#include "kre/service.hpp"
#include "kre/snapshot.hpp"
#include "kre/timeline.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kMissingInput = 2,
  kUnwritable = 3,
  kBindFailed = 4,
  kBadContent = 5,
};

struct IngestArgs {
  std::string input;
  std::string out;
  std::uint64_t seed = 42;
  std::vector<std::string> languages{"en"};
  bool keep_retweets = false;
  bool no_anonymize = false;
  double max_malformed = 0.01;
  std::string nouns, verbs, positive, negative;
};

struct FilterArgs {
  std::string relation_kind;
  std::string pct_range;
  std::string node_count;
  std::string time_range;
  std::string keyword_kinds;
  std::string navigation;
  std::string sort;
};

struct ExportArgs {
  std::string snapshot;
  std::string format = "json";
  std::string timeline;
  std::string granularity = "day";
  FilterArgs filter;
};

struct ServeArgs {
  std::string snapshot;
  std::string host = "127.0.0.1";
  int port = 8080;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

// Translates --filter.* flags into the QuerySpec wire format so the CLI and
// the HTTP API share one validator.
std::string filter_json(const FilterArgs& f) {
  nlohmann::json j = nlohmann::json::object();
  std::vector<kre::FieldViolation> bad;
  if (!f.relation_kind.empty()) j["relation_kind"] = f.relation_kind;
  if (!f.pct_range.empty()) {
    const auto parts = split_list(f.pct_range);
    try {
      if (parts.size() != 2) throw std::invalid_argument("two values");
      j["pct_range"] = {std::stod(parts[0]), std::stod(parts[1])};
    } catch (const std::exception&) {
      bad.push_back({"filter.pct_range", "expected LO,HI"});
    }
  }
  if (!f.node_count.empty()) {
    try {
      std::size_t used = 0;
      const long long n = std::stoll(f.node_count, &used);
      if (used != f.node_count.size()) throw std::invalid_argument("trailing characters");
      j["node_count"] = n;
    } catch (const std::exception&) {
      bad.push_back({"filter.node_count", "expected a positive integer"});
    }
  }
  if (!f.time_range.empty()) {
    const auto parts = split_list(f.time_range);
    if (parts.size() == 2) {
      j["time_range"] = {{"start", parts[0]}, {"end", parts[1]}};
    } else {
      bad.push_back({"filter.time_range", "expected START,END"});
    }
  }
  if (!f.keyword_kinds.empty()) j["keyword_kinds"] = split_list(f.keyword_kinds);
  if (!f.navigation.empty()) j["navigation"] = split_list(f.navigation);
  if (!f.sort.empty()) {
    const auto colon = f.sort.find(':');
    j["sort"]["key"] = f.sort.substr(0, colon);
    if (colon != std::string::npos) j["sort"]["direction"] = f.sort.substr(colon + 1);
  }
  if (!bad.empty()) throw kre::ValidationError(std::move(bad));
  return j.dump();
}

void print_violations(const kre::ValidationError& e) {
  std::cerr << "kre: invalid query\n";
  for (const auto& v : e.violations()) std::cerr << "  " << v.field << ": " << v.message << '\n';
}

int run_ingest(const IngestArgs& a) {
  kre::IngestOptions options;
  options.languages.clear();
  for (const auto& lang : a.languages) {
    if (!lang.empty()) options.languages.insert(lang);
  }
  options.drop_retweets = !a.keep_retweets;
  options.anonymize = !a.no_anonymize;
  options.seed = a.seed;
  options.max_malformed_fraction = a.max_malformed;

  std::optional<kre::LexiconTagger> tagger;
  std::optional<kre::LexiconSentiment> sentiment;
  try {
    if (!a.nouns.empty() || !a.verbs.empty()) {
      const auto& base = kre::default_tagger();
      tagger.emplace(a.nouns.empty() ? base.nouns() : kre::Lexicon::load(a.nouns),
                     a.verbs.empty() ? base.verbs() : kre::Lexicon::load(a.verbs));
      options.tagger = &*tagger;
    }
    if (!a.positive.empty() || !a.negative.empty()) {
      if (a.positive.empty() || a.negative.empty()) {
        std::cerr << "kre: --positive and --negative must be given together\n";
        return kUsage;
      }
      sentiment.emplace(kre::Lexicon::load(a.positive), kre::Lexicon::load(a.negative));
      options.sentiment = &*sentiment;
    }
  } catch (const kre::IoError& e) {
    std::cerr << "kre: " << e.what() << '\n';
    return kMissingInput;
  }

  kre::IngestResult result;
  try {
    result = kre::load_corpus(a.input, options);
  } catch (const kre::IoError& e) {
    std::cerr << "kre: " << e.what() << '\n';
    return kMissingInput;
  } catch (const kre::ParseError& e) {
    std::cerr << "kre: " << e.what() << '\n';
    for (const auto& l : e.lines()) std::cerr << "  line " << l.line << ": " << l.message << '\n';
    return kBadContent;
  }

  try {
    kre::save_snapshot(a.out, result.corpus);
  } catch (const kre::IoError& e) {
    std::cerr << "kre: " << e.what() << '\n';
    return kUnwritable;
  }

  const auto& r = result.report;
  std::cout << "records: " << result.corpus.size() << '\n'
            << "keywords: " << result.corpus.distinct_keyword_count() << '\n'
            << "lines: " << r.lines << '\n'
            << "malformed: " << r.malformed << '\n'
            << "duplicate_ids: " << r.duplicate_ids << '\n'
            << "dropped_language: " << r.dropped_language << '\n'
            << "dropped_retweet: " << r.dropped_retweet << '\n';
  for (const auto& l : r.errors) std::cerr << "warning: line " << l.line << ": " << l.message << '\n';
  return kOk;
}

int load(const std::string& path, kre::Corpus& corpus) {
  if (path.empty()) {
    std::cerr << "kre: no snapshot given (use --snapshot or KRE_SNAPSHOT)\n";
    return kMissingInput;
  }
  try {
    corpus = kre::load_snapshot(path);
  } catch (const kre::IoError& e) {
    std::cerr << "kre: " << e.what() << '\n';
    return kMissingInput;
  } catch (const kre::ParseError& e) {
    std::cerr << "kre: " << e.what() << '\n';
    return kBadContent;
  }
  return kOk;
}

int run_export(const ExportArgs& a) {
  kre::QuerySpec spec;
  try {
    spec = kre::parse_query_spec(filter_json(a.filter));
  } catch (const kre::ValidationError& e) {
    print_violations(e);
    return kUsage;
  }
  std::optional<kre::TimelineMode> mode;
  if (!a.timeline.empty()) {
    mode = kre::parse_timeline_mode(a.timeline);
    if (a.format == "csv") {
      std::cerr << "kre: CSV export covers a single matrix; drop --timeline or use --format json\n";
      return kUsage;
    }
  }
  const auto granularity = kre::parse_granularity(a.granularity);
  if (!granularity) {
    std::cerr << "kre: unknown granularity \"" << a.granularity << "\"\n";
    return kUsage;
  }

  kre::Corpus corpus;
  if (int rc = load(a.snapshot, corpus); rc != kOk) return rc;

  try {
    if (mode) {
      std::cout << kre::timeline_json(kre::query_timeline(corpus, spec, *mode, *granularity)) << '\n';
    } else {
      const auto view = kre::query_matrix(corpus, spec);
      std::cout << (a.format == "csv" ? kre::view_csv(view) : kre::view_json(view) + '\n');
    }
  } catch (const kre::InvalidRange& e) {
    std::cerr << "kre: " << e.what() << '\n';
    return kUsage;
  }
  std::cout.flush();
  if (!std::cout) return kUnwritable;
  return kOk;
}

kre::HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const ServeArgs& a) {
  auto corpus = std::make_shared<kre::Corpus>();
  if (int rc = load(a.snapshot, *corpus); rc != kOk) return rc;

  kre::Service service(corpus);
  kre::HttpServer server(service);
  int port = 0;
  try {
    port = server.bind(a.host, a.port);
  } catch (const kre::BindError& e) {
    std::cerr << "kre: " << e.what() << '\n';
    return kBindFailed;
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "serving " << corpus->size() << " records on http://" << a.host << ':' << port << std::endl;
  server.listen();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kre - keyword relation explorer engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kre 0.1.0");

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Process a JSONL corpus and write a snapshot");
  ingest_cmd->add_option("--input", ingest.input, "JSONL input file")->required();
  ingest_cmd->add_option("--out", ingest.out, "Snapshot file to write")->required();
  ingest_cmd->add_option("--seed", ingest.seed, "Seed for id anonymization")->capture_default_str();
  ingest_cmd->add_option("--lang", ingest.languages, "Language allow-list (repeatable; empty list = all)")
      ->capture_default_str();
  ingest_cmd->add_flag("--keep-retweets", ingest.keep_retweets, "Keep records marked as retweets");
  ingest_cmd->add_flag("--no-anonymize", ingest.no_anonymize, "Keep the original record ids");
  ingest_cmd->add_option("--max-malformed", ingest.max_malformed, "Tolerated fraction of malformed lines")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  ingest_cmd->add_option("--nouns", ingest.nouns, "Noun lexicon replacing the bundled one");
  ingest_cmd->add_option("--verbs", ingest.verbs, "Verb lexicon replacing the bundled one");
  ingest_cmd->add_option("--positive", ingest.positive, "Positive sentiment lexicon");
  ingest_cmd->add_option("--negative", ingest.negative, "Negative sentiment lexicon");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a snapshot over the HTTP JSON API");
  serve_cmd->add_option("--snapshot", serve.snapshot, "Snapshot file")->envname("KRE_SNAPSHOT");
  serve_cmd->add_option("--host", serve.host, "Address to bind")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Port to bind (0 = any free port)")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "Evaluate one query and print it");
  export_cmd->add_option("--snapshot", exp.snapshot, "Snapshot file")->envname("KRE_SNAPSHOT");
  export_cmd->add_option("--format", exp.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  export_cmd->add_option("--timeline", exp.timeline, "Export a timeline instead of the summary view")
      ->check(CLI::IsMember({"discrete", "accumulative", "overlapping"}));
  export_cmd->add_option("--granularity", exp.granularity, "Timeline bucket unit")
      ->check(CLI::IsMember({"hour", "day", "week", "month"}))
      ->capture_default_str();
  export_cmd->add_option("--filter.relation_kind", exp.filter.relation_kind, "cooccurrence | word_similarity");
  export_cmd->add_option("--filter.pct_range", exp.filter.pct_range, "Relation percentage range LO,HI");
  export_cmd->add_option("--filter.node_count", exp.filter.node_count, "Number of keywords (default 20)");
  export_cmd->add_option("--filter.time_range", exp.filter.time_range, "ISO-8601 START,END (end exclusive)");
  export_cmd->add_option("--filter.keyword_kinds", exp.filter.keyword_kinds, "Comma list of hashtag,noun,verb");
  export_cmd->add_option("--filter.navigation", exp.filter.navigation, "Comma list of keywords to drill into");
  export_cmd->add_option("--filter.sort", exp.filter.sort,
                         "KEY[:DIRECTION], KEY in alphabetical|frequency|relation_sum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*ingest_cmd) return run_ingest(ingest);
  if (*serve_cmd) return run_serve(serve);
  return run_export(exp);
}
