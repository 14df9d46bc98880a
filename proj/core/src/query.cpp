#include "kre/query.hpp"

#include <algorithm>
#include <cmath>

namespace kre {

void QuerySpec::validate() const {
  std::vector<FieldViolation> v;
  if (!std::isfinite(pct_lo) || pct_lo < 0.0 || pct_lo > 100.0) {
    v.push_back({"pct_range", "lower bound must be within [0, 100]"});
  }
  if (!std::isfinite(pct_hi) || pct_hi < 0.0 || pct_hi > 100.0) {
    v.push_back({"pct_range", "upper bound must be within [0, 100]"});
  }
  if (pct_lo > pct_hi) v.push_back({"pct_range", "lower bound exceeds upper bound"});
  if (node_count < 1) v.push_back({"node_count", "must be at least 1"});
  if (time_range && !(time_range->start < time_range->end)) {
    v.push_back({"time_range", "start must be before end"});
  }
  if (keyword_kinds.empty()) v.push_back({"keyword_kinds", "must name at least one kind"});
  for (const auto& k : navigation) {
    if (k.empty()) {
      v.push_back({"navigation", "keywords must be non-empty"});
      break;
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::optional<TimeWindow> effective_window(const Corpus& corpus, const QuerySpec& spec) {
  if (spec.time_range) return spec.time_range;
  if (const auto& tr = corpus.time_range()) return tr->window();
  return std::nullopt;
}

RecordRefs record_scope(const Corpus& corpus, const QuerySpec& spec, const TimeWindow& window) {
  const RecordRefs in_window = filter_time(corpus, window);
  if (spec.navigation.empty()) return in_window;
  return drill_down(in_window, spec.navigation);
}

RelationMatrix evaluate_view(const Corpus& corpus, const QuerySpec& spec, const TimeWindow& window,
                             const SimilarityProvider& similarity) {
  spec.validate();
  const RecordRefs scope = record_scope(corpus, spec, window);
  auto keywords = top_k(keyword_stats(scope, spec.keyword_kinds), spec.node_count);
  auto matrix = relation_matrix(scope, std::move(keywords), spec.relation_kind, similarity, window);
  matrix = filter_cells(std::move(matrix), spec.pct_lo, spec.pct_hi);
  const auto order = sort_keywords(matrix, spec.sort);
  return permute(matrix, order);
}

RelationMatrix query_matrix(const Corpus& corpus, const QuerySpec& spec, const SimilarityProvider& similarity) {
  spec.validate();
  if (const auto window = effective_window(corpus, spec)) return evaluate_view(corpus, spec, *window, similarity);
  RelationMatrix empty;
  empty.kind = spec.relation_kind;
  return empty;
}

TweetPage query_tweets(const Corpus& corpus, const QuerySpec& spec, const TweetTarget& target, std::size_t offset,
                       std::size_t limit, const SimilarityProvider& similarity) {
  if (limit < 1 || limit > kMaxTweetPage) {
    throw ValidationError("limit", "must be within [1, " + std::to_string(kMaxTweetPage) + "]");
  }
  spec.validate();

  TweetPage page;
  page.offset = offset;
  page.limit = limit;

  const auto window = effective_window(corpus, spec);
  if (!window) return page;

  const RelationMatrix matrix = evaluate_view(corpus, spec, *window, similarity);
  RecordRefs scope = record_scope(corpus, spec, *window);

  std::vector<std::string> required;
  if (const auto* kw = std::get_if<TargetKeyword>(&target)) {
    required = {kw->keyword};
  } else if (const auto* cell = std::get_if<TargetCell>(&target)) {
    required = {cell->a, cell->b};
  }
  for (const auto& k : required) {
    if (!matrix.index_of(k)) return page;
  }
  if (!required.empty()) scope = drill_down(scope, required);

  std::sort(scope.begin(), scope.end(), [](const Record* a, const Record* b) {
    if (a->timestamp != b->timestamp) return a->timestamp > b->timestamp;
    return a->id < b->id;
  });

  page.total = scope.size();
  const std::size_t first = std::min(offset, scope.size());
  const std::size_t last = std::min(scope.size(), first + limit);
  for (std::size_t n = first; n < last; ++n) {
    TweetItem item{scope[n], {}};
    for (const auto& kw : matrix.keywords) {
      if (scope[n]->has_keyword(kw.text)) item.matched_keywords.push_back(kw.text);
    }
    page.items.push_back(std::move(item));
  }
  return page;
}

}  // namespace kre
