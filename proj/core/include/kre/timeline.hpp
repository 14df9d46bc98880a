#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kre/query.hpp"

namespace kre {

/// Calendar unit; weeks start Monday 00:00 UTC, months are calendar months.
enum class Granularity : std::uint8_t { hour, day, week, month };

enum class TimelineMode : std::uint8_t { discrete, accumulative, overlapping };

std::string_view to_string(Granularity g) noexcept;
std::string_view to_string(TimelineMode m) noexcept;
std::optional<Granularity> parse_granularity(std::string_view token) noexcept;
std::optional<TimelineMode> parse_timeline_mode(std::string_view token) noexcept;

struct TimeBucket {
  std::size_t index = 0;
  TimeWindow window;
  TimelineMode mode = TimelineMode::discrete;
  friend bool operator==(const TimeBucket&, const TimeBucket&) = default;
};

/// Start of the calendar unit containing t.
Instant calendar_floor(Instant t, Granularity g);

/// Start of the unit after the one beginning at `aligned`.
Instant next_boundary(Instant aligned, Granularity g);

/// A quarter of the nominal length of the unit starting at `aligned`
/// (15 min, 6 h, 42 h, or a quarter of that calendar month).
std::chrono::seconds quarter_of_unit(Instant aligned, Granularity g);

/// Splits [range.start, range.end) at calendar boundaries of `g`. Discrete
/// buckets are those pieces; accumulative bucket i spans pieces 0..i;
/// overlapping bucket i >= 1 is piece i extended back by a quarter of the
/// previous unit. All windows are clipped to the range. Throws InvalidRange
/// unless start < end.
std::vector<TimeBucket> make_buckets(const TimeWindow& range, Granularity g, TimelineMode mode);

/// One view per bucket, each evaluated independently (own top-K) over the
/// bucket's window. Buckets are evaluated in parallel; results keep bucket
/// order. Empty buckets produce views with no keywords.
std::vector<RelationMatrix> timeline_matrices(const Corpus& corpus, std::span<const TimeBucket> buckets,
                                              const QuerySpec& spec,
                                              const SimilarityProvider& similarity = default_similarity());

struct TimelineView {
  TimeBucket bucket;
  RelationMatrix view;
};

/// make_buckets over effective_window(spec) then timeline_matrices. An empty
/// corpus with no explicit range yields no views.
std::vector<TimelineView> query_timeline(const Corpus& corpus, const QuerySpec& spec, TimelineMode mode,
                                         Granularity granularity,
                                         const SimilarityProvider& similarity = default_similarity());

}  // namespace kre
