#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kre/corpus.hpp"
#include "kre/textproc.hpp"
#include "kre/time.hpp"

namespace kre {

struct SentimentCounts {
  std::size_t positive = 0;
  std::size_t neutral = 0;
  std::size_t negative = 0;

  std::size_t total() const noexcept { return positive + neutral + negative; }
  void add(Polarity p) noexcept;
  friend bool operator==(const SentimentCounts&, const SentimentCounts&) = default;
};

/// Per-keyword aggregate over a record set. Frequency counts records, not
/// occurrences, so sentiment.total() == frequency.
struct KeywordStat {
  std::string text;
  KindSet kinds;
  std::size_t frequency = 0;
  SentimentCounts sentiment;
  double avg_confidence = 0.0;

  friend bool operator==(const KeywordStat&, const KeywordStat&) = default;
};

enum class RelationKind : std::uint8_t { cooccurrence, word_similarity };

std::string_view to_string(RelationKind kind) noexcept;
std::optional<RelationKind> parse_relation_kind(std::string_view token) noexcept;

/// Upper-triangle cell (i < j).
struct Cell {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double value = 0.0;
  std::size_t tweet_count = 0;  // records containing both keywords
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Symmetric keyword relation matrix stored as its strict upper triangle.
/// Every stored cell has value > 0; the diagonal is not defined.
struct RelationMatrix {
  std::vector<KeywordStat> keywords;
  RelationKind kind = RelationKind::cooccurrence;
  std::vector<Cell> cells;  // sorted by (i, j), i < j
  double max_value = 0.0;   // over stored cells, 0 when there are none
  std::size_t record_count = 0;
  TimeWindow time_range{};

  /// Symmetric lookup; nullptr for absent cells and for a == b.
  const Cell* find(std::size_t a, std::size_t b) const noexcept;

  /// Index of a keyword by text.
  std::optional<std::size_t> index_of(std::string_view text) const noexcept;

  friend bool operator==(const RelationMatrix&, const RelationMatrix&) = default;
};

enum class SortKey : std::uint8_t { alphabetical, frequency, relation_sum };
enum class SortDirection : std::uint8_t { ascending, descending };

std::string_view to_string(SortKey key) noexcept;
std::string_view to_string(SortDirection direction) noexcept;
std::optional<SortKey> parse_sort_key(std::string_view token) noexcept;
std::optional<SortDirection> parse_sort_direction(std::string_view token) noexcept;

struct SortSpec {
  SortKey key = SortKey::frequency;
  SortDirection direction = SortDirection::descending;
  friend bool operator==(const SortSpec&, const SortSpec&) = default;
};

inline constexpr std::size_t kDefaultNodeCount = 20;

/// One stat per keyword with at least one occurrence whose kind is in
/// `kinds`, ordered by text. Throws InvalidParameter for an empty kind set.
std::vector<KeywordStat> keyword_stats(RecordSpan records, KindSet kinds);

/// The k most frequent keywords, descending by frequency with ties in
/// ascending text order. Throws InvalidParameter when k == 0.
std::vector<KeywordStat> top_k(std::vector<KeywordStat> stats, std::size_t k = kDefaultNodeCount);

/// Builds the relation matrix for `keywords` over `records`. Co-occurrence
/// counts records containing both keywords (any kind); word similarity takes
/// the provider's score and keeps the co-occurrence count as tweet_count.
RelationMatrix relation_matrix(RecordSpan records, std::vector<KeywordStat> keywords, RelationKind kind,
                               const SimilarityProvider& similarity, const TimeWindow& window);

/// Sum of incident cell values per keyword.
std::vector<double> relation_sums(const RelationMatrix& matrix);

/// Keyword indices in display order. Ties always resolve by ascending text.
std::vector<std::size_t> sort_keywords(const RelationMatrix& matrix, SortSpec spec);

/// Reorders rows and columns by `order` (a permutation of keyword indices).
RelationMatrix permute(const RelationMatrix& matrix, std::span<const std::size_t> order);

/// 100 * value / max_value; exactly 100 for a cell attaining the maximum.
double relation_pct(const RelationMatrix& matrix, const Cell& cell) noexcept;
std::vector<double> relation_pct(const RelationMatrix& matrix);

/// Keeps cells with lo <= pct <= hi. Keywords and max_value are untouched, so
/// percentages of surviving cells do not change. Throws InvalidRange unless
/// 0 <= lo <= hi <= 100.
RelationMatrix filter_cells(RelationMatrix matrix, double lo, double hi);

/// Records containing every keyword in `keywords`, order preserved. An empty
/// keyword list selects everything.
RecordRefs drill_down(RecordSpan records, std::span<const std::string> keywords);

}  // namespace kre
