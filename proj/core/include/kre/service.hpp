#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "kre/query.hpp"
#include "kre/timeline.hpp"

namespace kre {

/// QuerySpec wire format (every member optional):
///   {"relation_kind": "cooccurrence" | "word_similarity",
///    "pct_range": [lo, hi],
///    "node_count": n,
///    "time_range": {"start": iso8601, "end": iso8601} | null,
///    "keyword_kinds": ["hashtag", "noun", "verb"],
///    "navigation": ["eu", "vote"],
///    "sort": {"key": "alphabetical" | "frequency" | "relation_sum",
///             "direction": "ascending" | "descending"}}
/// Unknown members are rejected. Navigation keywords are normalized.
/// Throws ValidationError listing every bad field.
QuerySpec parse_query_spec(std::string_view json);
std::string query_spec_json(const QuerySpec& spec);

struct Response {
  int status = 200;
  std::string body;
};

/// Stateless JSON API over one immutable corpus. All methods are const and
/// safe to call concurrently; identical requests give byte-identical bodies.
///
///   GET  /api/info
///   POST /api/matrix    QuerySpec
///   POST /api/timeline  {"query": QuerySpec, "mode": ..., "granularity": ...}
///   POST /api/tweets    {"query": QuerySpec, "target": "all" | {"keyword": k} | {"cell": [a, b]},
///                        "offset": n, "limit": n}
class Service {
 public:
  explicit Service(std::shared_ptr<const Corpus> corpus,
                   const SimilarityProvider& similarity = default_similarity());

  bool ready() const noexcept { return corpus_ != nullptr; }

  // Typed entry points; throw NotReady, ValidationError, InvalidRange.
  std::string info() const;
  std::string matrix(std::string_view body) const;
  std::string timeline(std::string_view body) const;
  std::string tweets(std::string_view body) const;

  /// Routes a request and maps errors to status codes: 400 validation,
  /// 404 unknown path, 405 wrong method, 503 no corpus, 500 otherwise.
  Response handle(std::string_view method, std::string_view path, std::string_view body) const;

 private:
  const Corpus& corpus() const;

  std::shared_ptr<const Corpus> corpus_;
  const SimilarityProvider* similarity_;
};

}  // namespace kre
