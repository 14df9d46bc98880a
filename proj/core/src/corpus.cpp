#include "kre/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_set>

#include <json.hpp>

#include "utf8.hpp"

namespace kre {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, json::value_t type, const char* type_name) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(std::string("missing key \"") + key + '"');
  if (it->type() != type) {
    throw std::invalid_argument(std::string("key \"") + key + "\" must be a " + type_name);
  }
  return *it;
}

Record parse_line(std::string_view line) {
  const json obj = json::parse(line);
  if (!obj.is_object()) throw std::invalid_argument("line is not a JSON object");

  Record r;
  r.id = require(obj, "id", json::value_t::string, "string").get<std::string>();
  if (r.id.empty()) throw std::invalid_argument("empty id");
  r.text = require(obj, "text", json::value_t::string, "string").get<std::string>();
  const auto created = require(obj, "created_at", json::value_t::string, "string").get<std::string>();
  const auto ts = try_parse_iso8601(created);
  if (!ts) throw std::invalid_argument("unparseable created_at \"" + created + '"');
  r.timestamp = *ts;
  r.lang = utf8::fold(require(obj, "lang", json::value_t::string, "string").get<std::string>());
  r.is_retweet = require(obj, "is_retweet", json::value_t::boolean, "boolean").get<bool>();
  return r;
}

std::string hex_id(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, v >>= 4) out[static_cast<std::size_t>(k)] = digits[v & 0xF];
  return out;
}

bool by_time_then_id(const Record& a, const Record& b) {
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  return a.id < b.id;
}

}  // namespace

bool Record::has_keyword(std::string_view keyword) const noexcept {
  return std::any_of(occurrences.begin(), occurrences.end(),
                     [&](const KeywordOccurrence& o) { return o.text == keyword; });
}

Corpus::Corpus(std::vector<Record> records) : records_(std::move(records)) {
  std::unordered_set<std::string_view> ids;
  ids.reserve(records_.size());
  for (const auto& r : records_) {
    if (!ids.insert(r.id).second) throw ValidationError("id", "duplicate record id \"" + r.id + '"');
  }
  std::sort(records_.begin(), records_.end(), by_time_then_id);

  std::unordered_set<std::string_view> keywords;
  for (const auto& r : records_) {
    for (const auto& o : r.occurrences) keywords.insert(o.text);
  }
  distinct_keyword_count_ = keywords.size();
  if (!records_.empty()) time_range_ = TimeSpan{records_.front().timestamp, records_.back().timestamp};
}

RecordRefs all_records(const Corpus& corpus) {
  RecordRefs out;
  out.reserve(corpus.size());
  for (const auto& r : corpus.records()) out.push_back(&r);
  return out;
}

IngestResult load_corpus(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus file " + path.string());
  return load_corpus(in, options);
}

IngestResult load_corpus(std::istream& in, const IngestOptions& options) {
  const TaggerProvider& tagger = options.tagger ? *options.tagger : default_tagger();
  const SentimentProvider& sentiment = options.sentiment ? *options.sentiment : default_sentiment();

  IngestReport report;
  std::vector<Record> kept;
  std::unordered_set<std::string> seen_ids;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++report.lines;

    Record r;
    try {
      r = parse_line(line);
    } catch (const std::exception& e) {
      ++report.malformed;
      report.errors.push_back({line_no, e.what()});
      continue;
    }
    if (!seen_ids.insert(r.id).second) {
      ++report.duplicate_ids;
      continue;
    }
    if (!options.languages.empty() && !options.languages.contains(r.lang)) {
      ++report.dropped_language;
      continue;
    }
    if (options.drop_retweets && r.is_retweet) {
      ++report.dropped_retweet;
      continue;
    }
    kept.push_back(std::move(r));
  }
  if (in.bad()) throw IoError("read error while loading corpus");

  const double allowed = options.max_malformed_fraction * static_cast<double>(report.lines);
  if (static_cast<double>(report.malformed) > allowed) {
    throw ParseError(std::to_string(report.malformed) + " of " + std::to_string(report.lines) +
                         " lines are malformed (limit " + std::to_string(options.max_malformed_fraction * 100) + "%)",
                     report.errors);
  }

  if (options.anonymize) kept = anonymize(std::move(kept), options.seed);
  for (auto& r : kept) {
    r.occurrences = extract_keywords(r.text, tagger);
    r.sentiment = classify_sentiment(r.text, sentiment);
  }

  IngestResult result{Corpus(std::move(kept)), std::move(report)};
  result.report.retained = result.corpus.size();
  return result;
}

std::vector<Record> anonymize(std::vector<Record> records, std::uint64_t seed) {
  std::unordered_set<std::string> taken;
  taken.reserve(records.size() * 2);
  for (const auto& r : records) taken.insert(r.id);

  std::mt19937_64 rng(seed);
  for (auto& r : records) {
    bool assigned = false;
    for (int attempt = 0; attempt < 100 && !assigned; ++attempt) {
      std::string candidate = hex_id(rng());
      if (taken.insert(candidate).second) {
        r.id = std::move(candidate);
        assigned = true;
      }
    }
    if (!assigned) throw InternalError("could not draw a unique anonymized id after 100 attempts");
  }
  return records;
}

RecordRefs filter_time(const Corpus& corpus, const TimeWindow& window) {
  require_valid(window);
  const auto& recs = corpus.records();
  const auto lo = std::lower_bound(recs.begin(), recs.end(), window.start,
                                   [](const Record& r, Instant t) { return r.timestamp < t; });
  const auto hi = std::lower_bound(lo, recs.end(), window.end,
                                   [](const Record& r, Instant t) { return r.timestamp < t; });
  RecordRefs out;
  out.reserve(static_cast<std::size_t>(hi - lo));
  for (auto it = lo; it != hi; ++it) out.push_back(&*it);
  return out;
}

RecordRefs filter_time(RecordSpan records, const TimeWindow& window) {
  require_valid(window);
  RecordRefs out;
  for (const Record* r : records) {
    if (window.contains(r->timestamp)) out.push_back(r);
  }
  return out;
}

}  // namespace kre
