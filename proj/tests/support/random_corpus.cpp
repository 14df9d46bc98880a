#include "random_corpus.hpp"

#include <set>

namespace testsupport {

std::vector<std::string> random_vocabulary(std::mt19937_64& rng, std::size_t n) {
  static constexpr char kAlphabet[] = "abeiorstu";
  std::uniform_int_distribution<int> len(1, 7);
  std::uniform_int_distribution<int> ch(0, sizeof kAlphabet - 2);
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w;
    for (int i = len(rng); i > 0; --i) w += kAlphabet[ch(rng)];
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

kre::Corpus random_corpus(std::mt19937_64& rng, const RandomCorpusOptions& opts) {
  const std::size_t n_records = std::uniform_int_distribution<std::size_t>(1, opts.max_records)(rng);
  const std::size_t n_keywords = std::uniform_int_distribution<std::size_t>(2, opts.max_keywords)(rng);
  const auto vocab = random_vocabulary(rng, n_keywords);

  // Skewed keyword popularity so top-K cuts and frequency ties both happen.
  std::vector<double> weights;
  for (std::size_t i = 0; i < vocab.size(); ++i) weights.push_back(1.0 / double(1 + i % 7));
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<int> per_record(0, 6);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> polarity(0, 2);
  std::uniform_real_distribution<double> confidence(0.0, 100.0);
  std::uniform_int_distribution<long> offset(0, long(opts.days) * 86400 - 1);
  const kre::Instant base = kre::parse_iso8601("2016-07-01T00:00:00Z");

  std::vector<kre::Record> records;
  for (std::size_t r = 0; r < n_records; ++r) {
    kre::Record rec;
    rec.id = "r" + std::to_string(r);
    rec.timestamp = base + std::chrono::seconds{offset(rng)};
    rec.lang = "en";
    rec.sentiment = {static_cast<kre::Polarity>(polarity(rng)), confidence(rng)};
    for (int k = per_record(rng); k > 0; --k) {
      const std::string& w = vocab[pick(rng)];
      const std::size_t begin = rec.text.empty() ? 0 : rec.text.size() + 1;
      if (!rec.text.empty()) rec.text += ' ';
      rec.text += w;
      rec.occurrences.push_back({w, static_cast<kre::KeywordKind>(kind(rng)), {begin, begin + w.size()}});
    }
    records.push_back(std::move(rec));
  }
  return kre::Corpus(std::move(records));
}

kre::Corpus corpus_from_sets(const std::vector<std::vector<std::string>>& sets,
                             const std::vector<kre::Sentiment>& sentiments) {
  const kre::Instant base = kre::parse_iso8601("2016-07-01T00:00:00Z");
  std::vector<kre::Record> records;
  for (std::size_t r = 0; r < sets.size(); ++r) {
    kre::Record rec;
    rec.id = "s" + std::to_string(r);
    rec.timestamp = base + std::chrono::minutes{r};
    rec.lang = "en";
    if (r < sentiments.size()) rec.sentiment = sentiments[r];
    for (const auto& w : sets[r]) {
      const std::size_t begin = rec.text.empty() ? 0 : rec.text.size() + 1;
      if (!rec.text.empty()) rec.text += ' ';
      rec.text += w;
      rec.occurrences.push_back({w, kre::KeywordKind::noun, {begin, begin + w.size()}});
    }
    records.push_back(std::move(rec));
  }
  return kre::Corpus(std::move(records));
}

std::vector<oracle::Rec> to_oracle(const kre::Corpus& corpus) {
  std::vector<oracle::Rec> out;
  for (const auto& r : corpus.records()) {
    oracle::Rec o;
    o.id = r.id;
    o.timestamp = kre::format_iso8601(r.timestamp);
    o.polarity = std::string(kre::to_string(r.sentiment.polarity));
    o.confidence = r.sentiment.confidence;
    for (const auto& occ : r.occurrences) o.occurrences.push_back({occ.text, std::string(kre::to_string(occ.kind))});
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace testsupport
