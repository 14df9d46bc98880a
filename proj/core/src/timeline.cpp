#include "kre/timeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace kre {
namespace {

using namespace std::chrono;

// Guards the service against absurd (range, granularity) combinations.
constexpr std::size_t kMaxBuckets = 10000;

}  // namespace

std::string_view to_string(Granularity g) noexcept {
  switch (g) {
    case Granularity::hour: return "hour";
    case Granularity::day: return "day";
    case Granularity::week: return "week";
    case Granularity::month: return "month";
  }
  return "?";
}

std::string_view to_string(TimelineMode m) noexcept {
  switch (m) {
    case TimelineMode::discrete: return "discrete";
    case TimelineMode::accumulative: return "accumulative";
    case TimelineMode::overlapping: return "overlapping";
  }
  return "?";
}

std::optional<Granularity> parse_granularity(std::string_view token) noexcept {
  if (token == "hour") return Granularity::hour;
  if (token == "day") return Granularity::day;
  if (token == "week") return Granularity::week;
  if (token == "month") return Granularity::month;
  return std::nullopt;
}

std::optional<TimelineMode> parse_timeline_mode(std::string_view token) noexcept {
  if (token == "discrete") return TimelineMode::discrete;
  if (token == "accumulative") return TimelineMode::accumulative;
  if (token == "overlapping") return TimelineMode::overlapping;
  return std::nullopt;
}

Instant calendar_floor(Instant t, Granularity g) {
  switch (g) {
    case Granularity::hour:
      return floor<hours>(t);
    case Granularity::day:
      return floor<days>(t);
    case Granularity::week: {
      const sys_days d = floor<days>(t);
      return d - (weekday{d} - Monday);
    }
    case Granularity::month: {
      const year_month_day ymd{floor<days>(t)};
      return sys_days{ymd.year() / ymd.month() / 1};
    }
  }
  return t;
}

Instant next_boundary(Instant aligned, Granularity g) {
  switch (g) {
    case Granularity::hour: return aligned + hours{1};
    case Granularity::day: return aligned + days{1};
    case Granularity::week: return aligned + weeks{1};
    case Granularity::month: {
      const year_month_day ymd{floor<days>(aligned)};
      const year_month next = year_month{ymd.year(), ymd.month()} + months{1};
      return sys_days{next / 1};
    }
  }
  return aligned;
}

seconds quarter_of_unit(Instant aligned, Granularity g) {
  return (next_boundary(aligned, g) - aligned) / 4;
}

std::vector<TimeBucket> make_buckets(const TimeWindow& range, Granularity g, TimelineMode mode) {
  require_valid(range);

  std::vector<Instant> unit_starts;
  for (Instant cur = calendar_floor(range.start, g); cur < range.end; cur = next_boundary(cur, g)) {
    if (unit_starts.size() == kMaxBuckets) {
      throw InvalidRange("time range spans more than " + std::to_string(kMaxBuckets) + " " +
                         std::string(to_string(g)) + " buckets");
    }
    unit_starts.push_back(cur);
  }

  std::vector<TimeBucket> out;
  out.reserve(unit_starts.size());
  for (std::size_t i = 0; i < unit_starts.size(); ++i) {
    const TimeWindow piece{std::max(unit_starts[i], range.start),
                           std::min(next_boundary(unit_starts[i], g), range.end)};
    TimeWindow w = piece;
    if (mode == TimelineMode::accumulative) {
      w.start = range.start;
    } else if (mode == TimelineMode::overlapping && i > 0) {
      w.start = std::max(piece.start - quarter_of_unit(unit_starts[i - 1], g), range.start);
    }
    out.push_back({i, w, mode});
  }
  return out;
}

std::vector<RelationMatrix> timeline_matrices(const Corpus& corpus, std::span<const TimeBucket> buckets,
                                              const QuerySpec& spec, const SimilarityProvider& similarity) {
  spec.validate();
  std::vector<RelationMatrix> out(buckets.size());
  if (buckets.empty()) return out;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t n = next++; n < buckets.size(); n = next++) {
      try {
        out[n] = evaluate_view(corpus, spec, buckets[n].window, similarity);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(buckets.size(), std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<TimelineView> query_timeline(const Corpus& corpus, const QuerySpec& spec, TimelineMode mode,
                                         Granularity granularity, const SimilarityProvider& similarity) {
  spec.validate();
  const auto window = effective_window(corpus, spec);
  if (!window) return {};
  const auto buckets = make_buckets(*window, granularity, mode);
  auto views = timeline_matrices(corpus, buckets, spec, similarity);
  std::vector<TimelineView> out;
  out.reserve(buckets.size());
  for (std::size_t n = 0; n < buckets.size(); ++n) out.push_back({buckets[n], std::move(views[n])});
  return out;
}

}  // namespace kre
