#include "kre/export.hpp"

#include "json_export.hpp"

namespace kre {
namespace detail {

ojson window_json(const TimeWindow& w) {
  return {{"start", format_iso8601(w.start)}, {"end", format_iso8601(w.end)}};
}

namespace {

ojson value_json(const RelationMatrix& view, double value) {
  if (view.kind == RelationKind::cooccurrence) return static_cast<std::uint64_t>(value);
  return value;
}

}  // namespace

ojson view_to_json(const RelationMatrix& view) {
  ojson keywords = ojson::array();
  for (const auto& k : view.keywords) {
    ojson kinds = ojson::array();
    for (auto kind : k.kinds.kinds()) kinds.push_back(to_string(kind));
    ojson entry;
    entry["text"] = k.text;
    entry["kinds"] = std::move(kinds);
    entry["frequency"] = k.frequency;
    entry["sentiment"] = {{"positive", k.sentiment.positive},
                          {"neutral", k.sentiment.neutral},
                          {"negative", k.sentiment.negative}};
    entry["avg_confidence"] = k.avg_confidence;
    keywords.push_back(std::move(entry));
  }

  ojson cells = ojson::array();
  for (const auto& c : view.cells) {
    ojson entry;
    entry["i"] = c.i;
    entry["j"] = c.j;
    entry["value"] = value_json(view, c.value);
    entry["pct"] = relation_pct(view, c);
    entry["tweet_count"] = c.tweet_count;
    cells.push_back(std::move(entry));
  }

  ojson j;
  j["relation_kind"] = to_string(view.kind);
  j["time_range"] = window_json(view.time_range);
  j["record_count"] = view.record_count;
  j["keywords"] = std::move(keywords);
  j["cells"] = std::move(cells);
  return j;
}

ojson bucket_to_json(const TimeBucket& bucket) {
  return {{"index", bucket.index}, {"mode", to_string(bucket.mode)}, {"window", window_json(bucket.window)}};
}

ojson timeline_to_json(std::span<const TimelineView> views) {
  ojson out = ojson::array();
  for (const auto& v : views) {
    ojson j = view_to_json(v.view);
    j["bucket"] = bucket_to_json(v.bucket);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace detail

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string view_json(const RelationMatrix& view) { return detail::view_to_json(view).dump(); }

std::string view_csv(const RelationMatrix& view) {
  const std::size_t k = view.keywords.size();
  std::vector<double> dense(k * k, 0.0);
  for (const auto& c : view.cells) {
    dense[c.i * k + c.j] = c.value;
    dense[c.j * k + c.i] = c.value;
  }

  std::string out = "keyword";
  for (const auto& kw : view.keywords) out += ',' + csv_field(kw.text);
  out += '\n';
  for (std::size_t r = 0; r < k; ++r) {
    out += csv_field(view.keywords[r].text);
    for (std::size_t c = 0; c < k; ++c) {
      out += ',';
      if (r != c) {
        const double v = dense[r * k + c];
        out += view.kind == RelationKind::cooccurrence ? std::to_string(static_cast<std::uint64_t>(v))
                                                       : detail::ojson(v).dump();
      }
    }
    out += '\n';
  }
  return out;
}

std::string timeline_json(std::span<const TimelineView> views) { return detail::timeline_to_json(views).dump(); }

}  // namespace kre
