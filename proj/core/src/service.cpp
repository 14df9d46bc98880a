#include "kre/service.hpp"

#include <cmath>

#include "json_export.hpp"
#include "kre/snapshot.hpp"

namespace kre {
namespace {

using detail::ojson;
using json = nlohmann::json;

class Violations {
 public:
  void add(std::string field, std::string message) { list_.push_back({std::move(field), std::move(message)}); }
  bool empty() const { return list_.empty(); }
  void throw_if_any() {
    if (!list_.empty()) throw ValidationError(std::move(list_));
  }

 private:
  std::vector<FieldViolation> list_;
};

json parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return json::object();
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ValidationError("body", "not valid JSON");
  if (!j.is_object()) throw ValidationError("body", "must be a JSON object");
  return j;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& prefix,
                    Violations& v) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) v.add(prefix + key, "unknown field");
  }
}

std::optional<std::size_t> parse_count(const json& j) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::size_t>(j.get<std::int64_t>());
  return std::nullopt;
}

QuerySpec spec_from(const json& j, const std::string& prefix, Violations& v) {
  QuerySpec spec;
  if (!j.is_object()) {
    v.add(prefix.empty() ? "query" : prefix.substr(0, prefix.size() - 1), "must be a JSON object");
    return spec;
  }
  reject_unknown(j,
                 {"relation_kind", "pct_range", "node_count", "time_range", "keyword_kinds", "navigation", "sort"},
                 prefix, v);

  if (auto it = j.find("relation_kind"); it != j.end()) {
    const auto kind = it->is_string() ? parse_relation_kind(it->get<std::string>()) : std::nullopt;
    if (kind) {
      spec.relation_kind = *kind;
    } else {
      v.add(prefix + "relation_kind", "must be \"cooccurrence\" or \"word_similarity\"");
    }
  }

  if (auto it = j.find("pct_range"); it != j.end()) {
    if (it->is_array() && it->size() == 2 && (*it)[0].is_number() && (*it)[1].is_number()) {
      spec.pct_lo = (*it)[0].get<double>();
      spec.pct_hi = (*it)[1].get<double>();
      if (spec.pct_lo < 0 || spec.pct_hi > 100 || spec.pct_lo > spec.pct_hi) {
        v.add(prefix + "pct_range", "must satisfy 0 <= lo <= hi <= 100");
      }
    } else {
      v.add(prefix + "pct_range", "must be a [lo, hi] pair of numbers");
    }
  }

  if (auto it = j.find("node_count"); it != j.end()) {
    const auto n = parse_count(*it);
    if (n && *n >= 1) {
      spec.node_count = *n;
    } else {
      v.add(prefix + "node_count", "must be a positive integer");
    }
  }

  if (auto it = j.find("time_range"); it != j.end() && !it->is_null()) {
    std::optional<Instant> start, end;
    if (it->is_object()) {
      const auto get = [&](const char* key) -> std::optional<Instant> {
        const auto f = it->find(key);
        if (f == it->end() || !f->is_string()) return std::nullopt;
        return try_parse_iso8601(f->get<std::string>());
      };
      start = get("start");
      end = get("end");
      for (const auto& [key, _] : it->items()) {
        if (key != "start" && key != "end") v.add(prefix + "time_range." + key, "unknown field");
      }
    }
    if (!start || !end) {
      v.add(prefix + "time_range", "must be {\"start\": ISO-8601, \"end\": ISO-8601}");
    } else if (!(*start < *end)) {
      v.add(prefix + "time_range", "start must be before end");
    } else {
      spec.time_range = TimeWindow{*start, *end};
    }
  }

  if (auto it = j.find("keyword_kinds"); it != j.end()) {
    KindSet kinds;
    bool ok = it->is_array() && !it->empty();
    if (ok) {
      for (const auto& e : *it) {
        const auto k = e.is_string() ? parse_keyword_kind(e.get<std::string>()) : std::nullopt;
        if (!k) {
          ok = false;
          break;
        }
        kinds.insert(*k);
      }
    }
    if (ok) {
      spec.keyword_kinds = kinds;
    } else {
      v.add(prefix + "keyword_kinds", "must be a non-empty array of \"hashtag\", \"noun\", \"verb\"");
    }
  }

  if (auto it = j.find("navigation"); it != j.end()) {
    bool ok = it->is_array();
    if (ok) {
      for (const auto& e : *it) {
        std::string k = e.is_string() ? normalize_keyword(e.get<std::string>()) : std::string{};
        if (k.empty()) {
          ok = false;
          break;
        }
        spec.navigation.push_back(std::move(k));
      }
    }
    if (!ok) v.add(prefix + "navigation", "must be an array of non-empty keyword strings");
  }

  if (auto it = j.find("sort"); it != j.end()) {
    if (!it->is_object()) {
      v.add(prefix + "sort", "must be an object with \"key\" and \"direction\"");
    } else {
      for (const auto& [key, _] : it->items()) {
        if (key != "key" && key != "direction") v.add(prefix + "sort." + key, "unknown field");
      }
      if (auto k = it->find("key"); k != it->end()) {
        const auto key = k->is_string() ? parse_sort_key(k->get<std::string>()) : std::nullopt;
        if (key) {
          spec.sort.key = *key;
        } else {
          v.add(prefix + "sort.key", "must be \"alphabetical\", \"frequency\" or \"relation_sum\"");
        }
      }
      if (auto d = it->find("direction"); d != it->end()) {
        const auto dir = d->is_string() ? parse_sort_direction(d->get<std::string>()) : std::nullopt;
        if (dir) {
          spec.sort.direction = *dir;
        } else {
          v.add(prefix + "sort.direction", "must be \"ascending\" or \"descending\"");
        }
      }
    }
  }
  return spec;
}

QuerySpec nested_spec(const json& body, Violations& v) {
  const auto it = body.find("query");
  if (it == body.end() || it->is_null()) return {};
  return spec_from(*it, "query.", v);
}

ojson spec_to_json(const QuerySpec& spec) {
  ojson j;
  j["relation_kind"] = to_string(spec.relation_kind);
  j["pct_range"] = {spec.pct_lo, spec.pct_hi};
  j["node_count"] = spec.node_count;
  j["time_range"] = spec.time_range ? detail::window_json(*spec.time_range) : ojson(nullptr);
  ojson kinds = ojson::array();
  for (auto k : spec.keyword_kinds.kinds()) kinds.push_back(to_string(k));
  j["keyword_kinds"] = std::move(kinds);
  j["navigation"] = spec.navigation;
  j["sort"] = {{"key", to_string(spec.sort.key)}, {"direction", to_string(spec.sort.direction)}};
  return j;
}

ojson error_json(std::string_view kind, std::string_view message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

QuerySpec parse_query_spec(std::string_view text) {
  const json body = parse_body(text);
  Violations v;
  QuerySpec spec = spec_from(body, "", v);
  v.throw_if_any();
  return spec;
}

std::string query_spec_json(const QuerySpec& spec) { return spec_to_json(spec).dump(); }

Service::Service(std::shared_ptr<const Corpus> corpus, const SimilarityProvider& similarity)
    : corpus_(std::move(corpus)), similarity_(&similarity) {}

const Corpus& Service::corpus() const {
  if (!corpus_) throw NotReady("no corpus snapshot loaded");
  return *corpus_;
}

std::string Service::info() const {
  const Corpus& c = corpus();
  ojson j;
  j["format"] = kSnapshotFormat;
  j["version"] = kSnapshotVersion;
  j["record_count"] = c.size();
  j["distinct_keyword_count"] = c.distinct_keyword_count();
  if (const auto& tr = c.time_range()) {
    j["time_range"] = {{"first", format_iso8601(tr->first)}, {"last", format_iso8601(tr->last)}};
    j["window"] = detail::window_json(tr->window());
  } else {
    j["time_range"] = nullptr;
    j["window"] = nullptr;
  }
  j["relation_kinds"] = {"cooccurrence", "word_similarity"};
  j["keyword_kinds"] = {"hashtag", "noun", "verb"};
  j["sort_keys"] = {"alphabetical", "frequency", "relation_sum"};
  j["timeline_modes"] = {"discrete", "accumulative", "overlapping"};
  j["granularities"] = {"hour", "day", "week", "month"};
  j["max_tweet_page"] = kMaxTweetPage;
  j["defaults"] = spec_to_json(QuerySpec{});
  return j.dump();
}

std::string Service::matrix(std::string_view body) const {
  const Corpus& c = corpus();
  const QuerySpec spec = parse_query_spec(body);
  return detail::view_to_json(query_matrix(c, spec, *similarity_)).dump();
}

std::string Service::timeline(std::string_view text) const {
  const Corpus& c = corpus();
  const json body = parse_body(text);
  Violations v;
  reject_unknown(body, {"query", "mode", "granularity"}, "", v);
  const QuerySpec spec = nested_spec(body, v);

  TimelineMode mode = TimelineMode::discrete;
  if (auto it = body.find("mode"); it != body.end()) {
    const auto m = it->is_string() ? parse_timeline_mode(it->get<std::string>()) : std::nullopt;
    if (m) {
      mode = *m;
    } else {
      v.add("mode", "must be \"discrete\", \"accumulative\" or \"overlapping\"");
    }
  }
  Granularity granularity = Granularity::day;
  if (auto it = body.find("granularity"); it != body.end()) {
    const auto g = it->is_string() ? parse_granularity(it->get<std::string>()) : std::nullopt;
    if (g) {
      granularity = *g;
    } else {
      v.add("granularity", "must be \"hour\", \"day\", \"week\" or \"month\"");
    }
  }
  v.throw_if_any();

  const auto views = query_timeline(c, spec, mode, granularity, *similarity_);
  ojson j;
  j["mode"] = to_string(mode);
  j["granularity"] = to_string(granularity);
  j["views"] = detail::timeline_to_json(views);
  return j.dump();
}

std::string Service::tweets(std::string_view text) const {
  const Corpus& c = corpus();
  const json body = parse_body(text);
  Violations v;
  reject_unknown(body, {"query", "target", "offset", "limit"}, "", v);
  const QuerySpec spec = nested_spec(body, v);

  TweetTarget target = TargetAll{};
  if (auto it = body.find("target"); it != body.end()) {
    bool ok = false;
    if (it->is_string() && it->get<std::string>() == "all") {
      ok = true;
    } else if (it->is_object() && it->size() == 1) {
      if (auto k = it->find("keyword"); k != it->end() && k->is_string()) {
        std::string kw = normalize_keyword(k->get<std::string>());
        ok = !kw.empty();
        target = TargetKeyword{std::move(kw)};
      } else if (auto cell = it->find("cell");
                 cell != it->end() && cell->is_array() && cell->size() == 2 && (*cell)[0].is_string() &&
                 (*cell)[1].is_string()) {
        std::string a = normalize_keyword((*cell)[0].get<std::string>());
        std::string b = normalize_keyword((*cell)[1].get<std::string>());
        ok = !a.empty() && !b.empty();
        target = TargetCell{std::move(a), std::move(b)};
      }
    }
    if (!ok) v.add("target", "must be \"all\", {\"keyword\": k} or {\"cell\": [a, b]}");
  }

  std::size_t offset = 0;
  if (auto it = body.find("offset"); it != body.end()) {
    if (auto n = parse_count(*it)) {
      offset = *n;
    } else {
      v.add("offset", "must be a non-negative integer");
    }
  }
  std::size_t limit = 50;
  if (auto it = body.find("limit"); it != body.end()) {
    const auto n = parse_count(*it);
    if (n && *n >= 1 && *n <= kMaxTweetPage) {
      limit = *n;
    } else {
      v.add("limit", "must be an integer within [1, " + std::to_string(kMaxTweetPage) + "]");
    }
  }
  v.throw_if_any();

  const TweetPage page = query_tweets(c, spec, target, offset, limit, *similarity_);
  ojson items = ojson::array();
  for (const auto& item : page.items) {
    const Record& r = *item.record;
    ojson e;
    e["id"] = r.id;
    e["text"] = r.text;
    e["timestamp"] = format_iso8601(r.timestamp);
    e["polarity"] = to_string(r.sentiment.polarity);
    e["confidence"] = r.sentiment.confidence;
    e["matched_keywords"] = item.matched_keywords;
    items.push_back(std::move(e));
  }
  ojson j;
  j["total"] = page.total;
  j["offset"] = page.offset;
  j["limit"] = page.limit;
  j["items"] = std::move(items);
  return j.dump();
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) const {
  try {
    if (path == "/api/info") {
      if (method != "GET") return {405, error_json("method_not_allowed", "use GET").dump()};
      return {200, info()};
    }
    if (path == "/api/matrix" || path == "/api/timeline" || path == "/api/tweets") {
      if (method != "POST") return {405, error_json("method_not_allowed", "use POST").dump()};
      if (path == "/api/matrix") return {200, matrix(body)};
      if (path == "/api/timeline") return {200, timeline(body)};
      return {200, tweets(body)};
    }
    return {404, error_json("not_found", "no such endpoint").dump()};
  } catch (const ValidationError& e) {
    ojson j = error_json("validation", e.what());
    ojson list = ojson::array();
    for (const auto& f : e.violations()) list.push_back({{"field", f.field}, {"message", f.message}});
    j["violations"] = std::move(list);
    return {400, j.dump()};
  } catch (const InvalidRange& e) {
    return {400, error_json("validation", e.what()).dump()};
  } catch (const InvalidParameter& e) {
    return {400, error_json("validation", e.what()).dump()};
  } catch (const NotReady& e) {
    return {503, error_json("not_ready", e.what()).dump()};
  } catch (const std::exception& e) {
    return {500, error_json("internal", e.what()).dump()};
  }
}

}  // namespace kre
