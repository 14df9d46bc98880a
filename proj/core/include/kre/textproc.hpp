#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kre {

enum class KeywordKind : std::uint8_t { hashtag, noun, verb };

std::string_view to_string(KeywordKind kind) noexcept;
std::optional<KeywordKind> parse_keyword_kind(std::string_view token) noexcept;

/// A subset of {hashtag, noun, verb}.
class KindSet {
 public:
  constexpr KindSet() = default;
  constexpr KindSet(std::initializer_list<KeywordKind> kinds) {
    for (auto k : kinds) insert(k);
  }

  static constexpr KindSet all() { return {KeywordKind::hashtag, KeywordKind::noun, KeywordKind::verb}; }

  constexpr void insert(KeywordKind k) { bits_ |= bit(k); }
  constexpr KindSet& operator|=(KindSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  constexpr bool contains(KeywordKind k) const { return (bits_ & bit(k)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }

  /// Member kinds in declaration order (hashtag, noun, verb).
  std::vector<KeywordKind> kinds() const;

  friend constexpr bool operator==(KindSet, KindSet) = default;

 private:
  static constexpr std::uint8_t bit(KeywordKind k) { return std::uint8_t(1u << static_cast<unsigned>(k)); }
  std::uint8_t bits_ = 0;
};

/// Byte range [begin, end) into the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct KeywordOccurrence {
  std::string text;  // case-folded, '#' stripped
  KeywordKind kind = KeywordKind::noun;
  Span span;
  friend bool operator==(const KeywordOccurrence&, const KeywordOccurrence&) = default;
};

enum class Polarity : std::uint8_t { positive, neutral, negative };

std::string_view to_string(Polarity p) noexcept;
std::optional<Polarity> parse_polarity(std::string_view token) noexcept;

struct Sentiment {
  Polarity polarity = Polarity::neutral;
  double confidence = 100.0;  // percentage in [0, 100]
  friend bool operator==(const Sentiment&, const Sentiment&) = default;
};

// Providers. Implementations must be safe to call concurrently.

class TaggerProvider {
 public:
  virtual ~TaggerProvider() = default;
  /// `word` is already case-folded. Returns noun, verb, or nullopt (not a keyword).
  virtual std::optional<KeywordKind> tag(std::string_view word) const = 0;
};

class SentimentProvider {
 public:
  virtual ~SentimentProvider() = default;
  virtual Sentiment classify(std::string_view text) const = 0;
};

class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;
  /// Symmetric score in [0, 1]; 0 means no relation.
  virtual double similarity(std::string_view a, std::string_view b) const = 0;
};

/// A sorted set of lowercase words. Text format: one word per line, blank
/// lines and lines starting with '#' ignored, surrounding whitespace trimmed.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<std::string> words);

  static Lexicon parse(std::string_view contents);
  static Lexicon load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }

 private:
  std::vector<std::string> words_;
};

/// Context-free tagger backed by a noun list and a verb list. A word present
/// in both resolves to noun.
class LexiconTagger final : public TaggerProvider {
 public:
  LexiconTagger(Lexicon nouns, Lexicon verbs) : nouns_(std::move(nouns)), verbs_(std::move(verbs)) {}
  std::optional<KeywordKind> tag(std::string_view word) const override;

  const Lexicon& nouns() const noexcept { return nouns_; }
  const Lexicon& verbs() const noexcept { return verbs_; }

 private:
  Lexicon nouns_;
  Lexicon verbs_;
};

/// Counts positive (P) and negative (N) lexicon hits over the text's word and
/// hashtag tokens. Polarity follows the larger count (neutral on a tie) and
/// confidence = 100 * |P - N| / (P + N), or 100 when nothing matched.
class LexiconSentiment final : public SentimentProvider {
 public:
  LexiconSentiment(Lexicon positive, Lexicon negative)
      : positive_(std::move(positive)), negative_(std::move(negative)) {}
  Sentiment classify(std::string_view text) const override;

  struct Counts {
    std::size_t positive = 0;
    std::size_t negative = 0;
  };
  Counts count(std::string_view text) const;

 private:
  Lexicon positive_;
  Lexicon negative_;
};

/// Jaccard similarity of the two strings' character-bigram sets (code points,
/// not bytes). A one-character string contributes its single character.
class BigramJaccard final : public SimilarityProvider {
 public:
  double similarity(std::string_view a, std::string_view b) const override;
};

/// Bundled rule-based defaults, built once from the lexicons compiled into the library.
const LexiconTagger& default_tagger();
const LexiconSentiment& default_sentiment();
const BigramJaccard& default_similarity();

enum class TokenKind : std::uint8_t { word, hashtag, mention, url, number, other };

struct Token {
  TokenKind kind = TokenKind::other;
  Span span;
};

/// Splits text into tokens. URLs and @mentions are taken whole up to the next
/// whitespace; everything else splits at characters that are neither letters,
/// digits, '#', '_', '-' nor apostrophes, and edge '-'/'\'' is trimmed. Tokens
/// that are pure punctuation are not emitted.
std::vector<Token> tokenize(std::string_view text);

/// Case-folds and strips leading '#' and trailing punctuation.
std::string normalize_keyword(std::string_view raw);

/// Hashtags, and words the tagger accepts as noun or verb, in text order.
std::vector<KeywordOccurrence> extract_keywords(std::string_view text, const TaggerProvider& tagger);

inline Sentiment classify_sentiment(std::string_view text, const SentimentProvider& classifier) {
  return classifier.classify(text);
}

inline double word_similarity(std::string_view a, std::string_view b, const SimilarityProvider& provider) {
  return provider.similarity(a, b);
}

}  // namespace kre
