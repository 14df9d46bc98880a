#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kre/error.hpp"
#include "kre/textproc.hpp"
#include "kre/time.hpp"

namespace kre {

/// One ingested short text.
struct Record {
  std::string id;
  std::string text;
  Instant timestamp{};
  std::string lang;
  bool is_retweet = false;
  Sentiment sentiment;
  std::vector<KeywordOccurrence> occurrences;

  /// True if any occurrence (of any kind) has this normalized text.
  bool has_keyword(std::string_view keyword) const noexcept;

  friend bool operator==(const Record&, const Record&) = default;
};

/// Closed range [first, last] of record timestamps.
struct TimeSpan {
  Instant first;
  Instant last;

  /// The half-open window [first, last + 1s) covering every record.
  TimeWindow window() const noexcept { return {first, last + std::chrono::seconds{1}}; }

  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

/// An immutable record collection, sorted by (timestamp, id).
class Corpus {
 public:
  Corpus() = default;

  /// Sorts the records and derives the time span and keyword count.
  /// Throws ValidationError on duplicate ids.
  explicit Corpus(std::vector<Record> records);

  const std::vector<Record>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  /// Empty for an empty corpus.
  const std::optional<TimeSpan>& time_range() const noexcept { return time_range_; }

  /// Number of distinct normalized keyword texts across all records.
  std::size_t distinct_keyword_count() const noexcept { return distinct_keyword_count_; }

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<Record> records_;
  std::optional<TimeSpan> time_range_;
  std::size_t distinct_keyword_count_ = 0;
};

/// A view over records owned by a Corpus, in corpus order unless noted.
using RecordRefs = std::vector<const Record*>;
using RecordSpan = std::span<const Record* const>;

RecordRefs all_records(const Corpus& corpus);

struct IngestOptions {
  std::set<std::string> languages{"en"};
  bool drop_retweets = true;
  bool anonymize = true;
  std::uint64_t seed = 42;
  /// Ingest fails when malformed lines exceed this fraction of non-blank lines.
  double max_malformed_fraction = 0.01;
  const TaggerProvider* tagger = nullptr;        // default_tagger() when null
  const SentimentProvider* sentiment = nullptr;  // default_sentiment() when null
};

struct IngestReport {
  std::size_t lines = 0;  // non-blank input lines
  std::size_t malformed = 0;
  std::size_t duplicate_ids = 0;
  std::size_t dropped_language = 0;
  std::size_t dropped_retweet = 0;
  std::size_t retained = 0;
  std::vector<LineError> errors;
};

struct IngestResult {
  Corpus corpus;
  IngestReport report;
};

/// Reads JSONL records (`id`, `text`, `created_at`, `lang`, `is_retweet`),
/// drops those failing the language and retweet filters, rejects later
/// duplicates of an id, runs keyword extraction and sentiment on the rest and
/// optionally anonymizes ids.
///
/// Throws IoError if the file cannot be read and ParseError if too many lines
/// are malformed.
IngestResult load_corpus(const std::filesystem::path& path, const IngestOptions& options = {});
IngestResult load_corpus(std::istream& in, const IngestOptions& options = {});

/// Replaces every id with a fresh 16-hex-digit id drawn from a generator
/// seeded with `seed`. New ids are unique and never equal any original id.
std::vector<Record> anonymize(std::vector<Record> records, std::uint64_t seed);

/// Records with start <= timestamp < end, in corpus order. Throws InvalidRange
/// unless start < end.
RecordRefs filter_time(const Corpus& corpus, const TimeWindow& window);
RecordRefs filter_time(RecordSpan records, const TimeWindow& window);

}  // namespace kre
