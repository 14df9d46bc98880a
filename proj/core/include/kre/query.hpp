#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kre/analytics.hpp"
#include "kre/corpus.hpp"

namespace kre {

/// Full filter state for one matrix query. Defaults reproduce the initial
/// summary view: top 20 keywords of every kind, co-occurrence, no navigation.
struct QuerySpec {
  RelationKind relation_kind = RelationKind::cooccurrence;
  double pct_lo = 0.0;
  double pct_hi = 100.0;
  std::size_t node_count = kDefaultNodeCount;
  std::optional<TimeWindow> time_range;
  KindSet keyword_kinds = KindSet::all();
  std::vector<std::string> navigation;  // normalized keyword texts
  SortSpec sort;

  /// Throws ValidationError listing every violated field.
  void validate() const;

  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;
};

/// The window a query covers: spec.time_range, or the whole corpus. An empty
/// corpus without an explicit range yields nullopt.
std::optional<TimeWindow> effective_window(const Corpus& corpus, const QuerySpec& spec);

/// filter_time(window) then drill_down(spec.navigation).
RecordRefs record_scope(const Corpus& corpus, const QuerySpec& spec, const TimeWindow& window);

/// The full pipeline over one window: scope, keyword stats, top-K, relation
/// matrix, percentage filter, sort. Pure and deterministic.
RelationMatrix evaluate_view(const Corpus& corpus, const QuerySpec& spec, const TimeWindow& window,
                             const SimilarityProvider& similarity = default_similarity());

/// evaluate_view over effective_window(corpus, spec). An empty corpus with no
/// explicit range yields an empty view.
RelationMatrix query_matrix(const Corpus& corpus, const QuerySpec& spec,
                            const SimilarityProvider& similarity = default_similarity());

struct TargetAll {
  friend bool operator==(const TargetAll&, const TargetAll&) = default;
};
struct TargetKeyword {
  std::string keyword;
  friend bool operator==(const TargetKeyword&, const TargetKeyword&) = default;
};
struct TargetCell {
  std::string a;
  std::string b;
  friend bool operator==(const TargetCell&, const TargetCell&) = default;
};
using TweetTarget = std::variant<TargetAll, TargetKeyword, TargetCell>;

inline constexpr std::size_t kMaxTweetPage = 500;

struct TweetItem {
  const Record* record = nullptr;
  std::vector<std::string> matched_keywords;  // in matrix order
};

struct TweetPage {
  std::size_t total = 0;
  std::size_t offset = 0;
  std::size_t limit = 0;
  std::vector<TweetItem> items;
};

/// Tweets behind the current matrix, newest first (ties by id). Keyword and
/// cell targets must name keywords of the current matrix, otherwise the page
/// is empty. Throws ValidationError unless 1 <= limit <= 500.
TweetPage query_tweets(const Corpus& corpus, const QuerySpec& spec, const TweetTarget& target, std::size_t offset,
                       std::size_t limit, const SimilarityProvider& similarity = default_similarity());

}  // namespace kre
