#pragma once

// Brute-force reference implementations used to check the engine. Nothing in
// here calls into kre; records are read straight from snapshot JSON.

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace oracle {

using ojson = nlohmann::ordered_json;

struct Occ {
  std::string text;
  std::string kind;
};

struct Rec {
  std::string id;
  std::string timestamp;  // YYYY-MM-DDTHH:MM:SSZ, sorts chronologically
  std::string polarity;
  double confidence = 0;
  std::vector<Occ> occurrences;

  std::set<std::string> keywords() const;
};

struct Snapshot {
  nlohmann::json header;
  std::vector<Rec> records;
};

Snapshot read_snapshot(const std::filesystem::path& path);

/// Adds one second to an ISO timestamp in the canonical Z form.
std::string plus_one_second(const std::string& ts);

/// Records whose keyword set includes every keyword in `all`.
std::vector<Rec> drill(const std::vector<Rec>& records, const std::vector<std::string>& all);

/// Pair counts over `keywords` by testing every record against every pair.
/// Keys are (a, b) with a < b by text; zero counts are omitted.
std::map<std::pair<std::string, std::string>, std::size_t> pair_counts(const std::vector<std::set<std::string>>& sets,
                                                                       const std::vector<std::string>& keywords);

/// The default summary view (all kinds, top 20 by frequency then text,
/// co-occurrence, no filter) in the engine's JSON layout.
ojson default_view(const std::vector<Rec>& records, const std::string& start, const std::string& end,
                   std::size_t node_count = 20);

/// Per-UTC-day record counts keyed by YYYY-MM-DD.
std::map<std::string, std::size_t> per_day(const std::vector<Rec>& records);

/// Code-point bigram Jaccard written from the definition.
double bigram_jaccard(const std::u32string& a, const std::u32string& b);

}  // namespace oracle
