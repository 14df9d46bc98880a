#include "kre/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace kre {
namespace {

// Pair counts for keyword indices i < j: a packed upper triangle for
// moderate K, a hash map beyond that.
class PairCounter {
 public:
  explicit PairCounter(std::size_t k) : k_(k) {
    if (k_ <= kDenseLimit && k_ >= 2) dense_.assign(k_ * (k_ - 1) / 2, 0);
  }

  void add(std::uint32_t i, std::uint32_t j) {
    if (k_ <= kDenseLimit) {
      ++dense_[slot(i, j)];
    } else {
      ++sparse_[key(i, j)];
    }
  }

  std::size_t get(std::uint32_t i, std::uint32_t j) const {
    if (k_ <= kDenseLimit) return dense_[slot(i, j)];
    const auto it = sparse_.find(key(i, j));
    return it == sparse_.end() ? 0 : it->second;
  }

  /// Nonzero pairs in (i, j) order.
  template <typename Fn>
  void for_each_nonzero(Fn&& fn) const {
    if (k_ <= kDenseLimit) {
      std::size_t s = 0;
      for (std::uint32_t i = 0; i < k_; ++i) {
        for (std::uint32_t j = i + 1; j < k_; ++j, ++s) {
          if (dense_[s] != 0) fn(i, j, dense_[s]);
        }
      }
      return;
    }
    std::vector<std::pair<std::uint64_t, std::size_t>> entries(sparse_.begin(), sparse_.end());
    std::sort(entries.begin(), entries.end());
    for (const auto& [k, n] : entries) fn(static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k), n);
  }

 private:
  static constexpr std::size_t kDenseLimit = 2048;

  std::size_t slot(std::size_t i, std::size_t j) const { return i * (2 * k_ - i - 1) / 2 + (j - i - 1); }
  static std::uint64_t key(std::uint32_t i, std::uint32_t j) { return (std::uint64_t{i} << 32) | j; }

  std::size_t k_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::size_t> sparse_;
};

bool frequency_then_text(const KeywordStat& a, const KeywordStat& b) {
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  return a.text < b.text;
}

}  // namespace

void SentimentCounts::add(Polarity p) noexcept {
  switch (p) {
    case Polarity::positive: ++positive; break;
    case Polarity::neutral: ++neutral; break;
    case Polarity::negative: ++negative; break;
  }
}

std::string_view to_string(RelationKind kind) noexcept {
  return kind == RelationKind::cooccurrence ? "cooccurrence" : "word_similarity";
}

std::optional<RelationKind> parse_relation_kind(std::string_view token) noexcept {
  if (token == "cooccurrence") return RelationKind::cooccurrence;
  if (token == "word_similarity") return RelationKind::word_similarity;
  return std::nullopt;
}

std::string_view to_string(SortKey key) noexcept {
  switch (key) {
    case SortKey::alphabetical: return "alphabetical";
    case SortKey::frequency: return "frequency";
    case SortKey::relation_sum: return "relation_sum";
  }
  return "?";
}

std::string_view to_string(SortDirection direction) noexcept {
  return direction == SortDirection::ascending ? "ascending" : "descending";
}

std::optional<SortKey> parse_sort_key(std::string_view token) noexcept {
  if (token == "alphabetical") return SortKey::alphabetical;
  if (token == "frequency") return SortKey::frequency;
  if (token == "relation_sum") return SortKey::relation_sum;
  return std::nullopt;
}

std::optional<SortDirection> parse_sort_direction(std::string_view token) noexcept {
  if (token == "ascending") return SortDirection::ascending;
  if (token == "descending") return SortDirection::descending;
  return std::nullopt;
}

const Cell* RelationMatrix::find(std::size_t a, std::size_t b) const noexcept {
  if (a == b) return nullptr;
  if (a > b) std::swap(a, b);
  const auto it = std::lower_bound(cells.begin(), cells.end(), std::pair{a, b}, [](const Cell& c, const auto& key) {
    return std::pair<std::size_t, std::size_t>{c.i, c.j} < key;
  });
  if (it == cells.end() || it->i != a || it->j != b) return nullptr;
  return &*it;
}

std::optional<std::size_t> RelationMatrix::index_of(std::string_view text) const noexcept {
  for (std::size_t k = 0; k < keywords.size(); ++k) {
    if (keywords[k].text == text) return k;
  }
  return std::nullopt;
}

std::vector<KeywordStat> keyword_stats(RecordSpan records, KindSet kinds) {
  if (kinds.empty()) throw InvalidParameter("keyword kind filter must not be empty");

  struct Acc {
    KindSet kinds;
    std::size_t frequency = 0;
    SentimentCounts sentiment;
    double confidence_sum = 0.0;
  };
  std::unordered_map<std::string_view, Acc> acc;
  std::vector<std::pair<std::string_view, KindSet>> in_record;

  for (const Record* r : records) {
    in_record.clear();
    for (const auto& o : r->occurrences) {
      if (!kinds.contains(o.kind)) continue;
      auto it = std::find_if(in_record.begin(), in_record.end(), [&](const auto& e) { return e.first == o.text; });
      if (it == in_record.end()) {
        in_record.push_back({o.text, KindSet{o.kind}});
      } else {
        it->second.insert(o.kind);
      }
    }
    for (const auto& [text, ks] : in_record) {
      Acc& a = acc[text];
      a.kinds |= ks;
      ++a.frequency;
      a.sentiment.add(r->sentiment.polarity);
      a.confidence_sum += r->sentiment.confidence;
    }
  }

  std::vector<KeywordStat> out;
  out.reserve(acc.size());
  for (const auto& [text, a] : acc) {
    out.push_back({std::string(text), a.kinds, a.frequency, a.sentiment,
                   a.confidence_sum / static_cast<double>(a.frequency)});
  }
  std::sort(out.begin(), out.end(), [](const KeywordStat& x, const KeywordStat& y) { return x.text < y.text; });
  return out;
}

std::vector<KeywordStat> top_k(std::vector<KeywordStat> stats, std::size_t k) {
  if (k == 0) throw InvalidParameter("node count must be at least 1");
  const std::size_t n = std::min(k, stats.size());
  std::partial_sort(stats.begin(), stats.begin() + static_cast<std::ptrdiff_t>(n), stats.end(), frequency_then_text);
  stats.resize(n);
  return stats;
}

RelationMatrix relation_matrix(RecordSpan records, std::vector<KeywordStat> keywords, RelationKind kind,
                               const SimilarityProvider& similarity, const TimeWindow& window) {
  RelationMatrix m;
  m.keywords = std::move(keywords);
  m.kind = kind;
  m.record_count = records.size();
  m.time_range = window;

  const std::size_t k = m.keywords.size();
  std::unordered_map<std::string_view, std::uint32_t> index;
  index.reserve(k);
  for (std::uint32_t n = 0; n < k; ++n) index.emplace(m.keywords[n].text, n);

  PairCounter counts(k);
  std::vector<std::uint32_t> present;
  for (const Record* r : records) {
    present.clear();
    for (const auto& o : r->occurrences) {
      if (auto it = index.find(o.text); it != index.end()) present.push_back(it->second);
    }
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    for (std::size_t a = 0; a < present.size(); ++a) {
      for (std::size_t b = a + 1; b < present.size(); ++b) counts.add(present[a], present[b]);
    }
  }

  if (kind == RelationKind::cooccurrence) {
    counts.for_each_nonzero([&](std::uint32_t i, std::uint32_t j, std::size_t n) {
      m.cells.push_back({i, j, static_cast<double>(n), n});
    });
  } else {
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint32_t j = i + 1; j < k; ++j) {
        const double score = similarity.similarity(m.keywords[i].text, m.keywords[j].text);
        if (score > 0.0) m.cells.push_back({i, j, score, counts.get(i, j)});
      }
    }
  }
  for (const auto& c : m.cells) m.max_value = std::max(m.max_value, c.value);
  return m;
}

std::vector<double> relation_sums(const RelationMatrix& matrix) {
  std::vector<double> sums(matrix.keywords.size(), 0.0);
  for (const auto& c : matrix.cells) {
    sums[c.i] += c.value;
    sums[c.j] += c.value;
  }
  return sums;
}

std::vector<std::size_t> sort_keywords(const RelationMatrix& matrix, SortSpec spec) {
  const auto& kw = matrix.keywords;
  std::vector<std::size_t> order(kw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  const bool desc = spec.direction == SortDirection::descending;
  const auto by_text = [&](std::size_t a, std::size_t b) { return kw[a].text < kw[b].text; };

  switch (spec.key) {
    case SortKey::alphabetical:
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return desc ? kw[b].text < kw[a].text : kw[a].text < kw[b].text;
      });
      break;
    case SortKey::frequency:
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (kw[a].frequency != kw[b].frequency) {
          return desc ? kw[a].frequency > kw[b].frequency : kw[a].frequency < kw[b].frequency;
        }
        return by_text(a, b);
      });
      break;
    case SortKey::relation_sum: {
      const auto sums = relation_sums(matrix);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sums[a] != sums[b]) return desc ? sums[a] > sums[b] : sums[a] < sums[b];
        return by_text(a, b);
      });
      break;
    }
  }
  return order;
}

RelationMatrix permute(const RelationMatrix& matrix, std::span<const std::size_t> order) {
  const std::size_t k = matrix.keywords.size();
  if (order.size() != k) throw InvalidParameter("permutation size does not match keyword count");
  std::vector<std::uint32_t> position(k, UINT32_MAX);
  for (std::size_t pos = 0; pos < k; ++pos) {
    if (order[pos] >= k || position[order[pos]] != UINT32_MAX) throw InvalidParameter("not a permutation");
    position[order[pos]] = static_cast<std::uint32_t>(pos);
  }

  RelationMatrix out;
  out.kind = matrix.kind;
  out.max_value = matrix.max_value;
  out.record_count = matrix.record_count;
  out.time_range = matrix.time_range;
  out.keywords.reserve(k);
  for (std::size_t pos = 0; pos < k; ++pos) out.keywords.push_back(matrix.keywords[order[pos]]);
  out.cells.reserve(matrix.cells.size());
  for (const auto& c : matrix.cells) {
    const auto a = position[c.i];
    const auto b = position[c.j];
    out.cells.push_back({std::min(a, b), std::max(a, b), c.value, c.tweet_count});
  }
  std::sort(out.cells.begin(), out.cells.end(),
            [](const Cell& x, const Cell& y) { return std::pair{x.i, x.j} < std::pair{y.i, y.j}; });
  return out;
}

double relation_pct(const RelationMatrix& matrix, const Cell& cell) noexcept {
  if (matrix.max_value <= 0.0) return 0.0;
  if (cell.value >= matrix.max_value) return 100.0;
  return 100.0 * cell.value / matrix.max_value;
}

std::vector<double> relation_pct(const RelationMatrix& matrix) {
  std::vector<double> out;
  out.reserve(matrix.cells.size());
  for (const auto& c : matrix.cells) out.push_back(relation_pct(matrix, c));
  return out;
}

RelationMatrix filter_cells(RelationMatrix matrix, double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 100.0 && lo <= hi)) {
    throw InvalidRange("relation percentage range must satisfy 0 <= lo <= hi <= 100");
  }
  std::erase_if(matrix.cells, [&](const Cell& c) {
    const double pct = relation_pct(matrix, c);
    return pct < lo || pct > hi;
  });
  return matrix;
}

RecordRefs drill_down(RecordSpan records, std::span<const std::string> keywords) {
  std::vector<std::string_view> wanted(keywords.begin(), keywords.end());
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  RecordRefs out;
  for (const Record* r : records) {
    if (std::all_of(wanted.begin(), wanted.end(), [&](std::string_view k) { return r->has_keyword(k); })) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace kre
