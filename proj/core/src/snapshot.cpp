#include "kre/snapshot.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kre {
namespace {

using ojson = nlohmann::ordered_json;

ojson header_json(const Corpus& corpus) {
  ojson h;
  h["format"] = kSnapshotFormat;
  h["version"] = kSnapshotVersion;
  h["record_count"] = corpus.size();
  h["distinct_keyword_count"] = corpus.distinct_keyword_count();
  if (const auto& tr = corpus.time_range()) {
    h["time_range"] = {{"first", format_iso8601(tr->first)}, {"last", format_iso8601(tr->last)}};
  } else {
    h["time_range"] = nullptr;
  }
  h["record_fields"] = {"id", "text", "timestamp", "lang", "is_retweet", "sentiment", "occurrences"};
  return h;
}

ojson record_json(const Record& r) {
  ojson occ = ojson::array();
  for (const auto& o : r.occurrences) {
    occ.push_back({{"text", o.text}, {"kind", to_string(o.kind)}, {"span", {o.span.begin, o.span.end}}});
  }
  ojson j;
  j["id"] = r.id;
  j["text"] = r.text;
  j["timestamp"] = format_iso8601(r.timestamp);
  j["lang"] = r.lang;
  j["is_retweet"] = r.is_retweet;
  j["sentiment"] = {{"polarity", to_string(r.sentiment.polarity)}, {"confidence", r.sentiment.confidence}};
  j["occurrences"] = std::move(occ);
  return j;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("invalid snapshot at line " + std::to_string(line) + ": " + what, {{line, what}});
}

Record parse_record(const ojson& j) {
  Record r;
  r.id = j.at("id").get<std::string>();
  r.text = j.at("text").get<std::string>();
  r.timestamp = parse_iso8601(j.at("timestamp").get<std::string>());
  r.lang = j.at("lang").get<std::string>();
  r.is_retweet = j.at("is_retweet").get<bool>();

  const auto& s = j.at("sentiment");
  const auto polarity = parse_polarity(s.at("polarity").get<std::string>());
  if (!polarity) throw std::invalid_argument("unknown polarity");
  r.sentiment = {*polarity, s.at("confidence").get<double>()};
  if (!(r.sentiment.confidence >= 0.0 && r.sentiment.confidence <= 100.0)) {
    throw std::invalid_argument("confidence outside [0, 100]");
  }

  for (const auto& o : j.at("occurrences")) {
    KeywordOccurrence occ;
    occ.text = o.at("text").get<std::string>();
    const auto kind = parse_keyword_kind(o.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown keyword kind");
    occ.kind = *kind;
    const auto& span = o.at("span");
    occ.span = {span.at(0).get<std::size_t>(), span.at(1).get<std::size_t>()};
    if (occ.text.empty() || occ.span.begin >= occ.span.end || occ.span.end > r.text.size()) {
      throw std::invalid_argument("occurrence out of range");
    }
    r.occurrences.push_back(std::move(occ));
  }
  return r;
}

}  // namespace

void write_snapshot(std::ostream& out, const Corpus& corpus) {
  out << header_json(corpus).dump() << '\n';
  for (const auto& r : corpus.records()) out << record_json(r).dump() << '\n';
}

std::string snapshot_bytes(const Corpus& corpus) {
  std::ostringstream out;
  write_snapshot(out, corpus);
  return out.str();
}

void save_snapshot(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write snapshot " + path.string());
  write_snapshot(out, corpus);
  out.flush();
  if (!out) throw IoError("error while writing snapshot " + path.string());
}

Corpus read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty snapshot");

  ojson header;
  try {
    header = ojson::parse(line);
  } catch (const std::exception& e) {
    fail(1, e.what());
  }
  if (!header.is_object() || header.value("format", "") != kSnapshotFormat) fail(1, "not a kre snapshot");
  if (header.value("version", 0) != kSnapshotVersion) {
    fail(1, "unsupported snapshot version " + header.value("version", ojson()).dump());
  }

  std::size_t expected = 0;
  std::size_t keywords = 0;
  try {
    expected = header.at("record_count").get<std::size_t>();
    keywords = header.at("distinct_keyword_count").get<std::size_t>();
  } catch (const std::exception& e) {
    fail(1, e.what());
  }

  std::vector<Record> records;
  records.reserve(expected);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(parse_record(ojson::parse(line)));
    } catch (const std::exception& e) {
      fail(line_no, e.what());
    }
  }
  if (records.size() != expected) {
    fail(line_no, "header declares " + std::to_string(expected) + " records, found " + std::to_string(records.size()));
  }

  Corpus corpus;
  try {
    corpus = Corpus(std::move(records));
  } catch (const ValidationError& e) {
    fail(line_no, e.what());
  }
  if (corpus.distinct_keyword_count() != keywords) fail(1, "distinct_keyword_count does not match records");
  if (header_json(corpus).dump() != header.dump()) fail(1, "header does not match records");
  return corpus;
}

Corpus load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read snapshot " + path.string());
  return read_snapshot(in);
}

}  // namespace kre
