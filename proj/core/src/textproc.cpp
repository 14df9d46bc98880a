#include "kre/textproc.hpp"

#include <algorithm>
#include <set>
#include <span>

#include "bundled_lexicons.hpp"
#include "utf8.hpp"

namespace kre {
namespace {

bool is_word_char(char32_t cp) {
  return utf8::is_letter(cp) || utf8::is_digit(cp) || cp == '_' || cp == '-' || cp == '#' ||
         utf8::is_apostrophe(cp);
}

// Characters trimmed from the edges of a word and from the end of a hashtag.
bool is_edge_punct(char32_t cp) { return cp == '-' || cp == '_' || utf8::is_apostrophe(cp); }

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char c = s[k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    if (c != prefix[k]) return false;
  }
  return true;
}

bool is_url(std::string_view chunk) {
  return starts_with_icase(chunk, "http://") || starts_with_icase(chunk, "https://") ||
         starts_with_icase(chunk, "www.");
}

struct Piece {
  char32_t cp;
  std::size_t begin;
  std::size_t end;
};

void classify_run(std::span<const Piece> run, std::vector<Token>& out) {
  std::size_t lo = 0;
  std::size_t hi = run.size();

  if (run[0].cp == '#') {
    while (lo < hi && run[lo].cp == '#') ++lo;
    while (hi > lo && is_edge_punct(run[hi - 1].cp)) --hi;
    if (lo == hi) return;
    const bool has_letter =
        std::any_of(run.begin() + lo, run.begin() + hi, [](const Piece& p) { return utf8::is_letter(p.cp); });
    out.push_back({has_letter ? TokenKind::hashtag : TokenKind::other, {run[0].begin, run[hi - 1].end}});
    return;
  }

  while (lo < hi && is_edge_punct(run[lo].cp)) ++lo;
  while (hi > lo && is_edge_punct(run[hi - 1].cp)) --hi;
  if (lo == hi) return;

  bool letter = false, digit = false, other = false;
  for (std::size_t k = lo; k < hi; ++k) {
    const char32_t cp = run[k].cp;
    if (utf8::is_letter(cp)) {
      letter = true;
    } else if (utf8::is_digit(cp)) {
      digit = true;
    } else if (cp != '-' && !utf8::is_apostrophe(cp)) {
      other = true;
    }
  }
  TokenKind kind = TokenKind::other;
  if (letter && !digit && !other) {
    kind = TokenKind::word;
  } else if (digit && !letter) {
    kind = TokenKind::number;
  }
  out.push_back({kind, {run[lo].begin, run[hi - 1].end}});
}

void split_chunk(std::string_view text, std::size_t begin, std::size_t end, std::vector<Token>& out) {
  std::vector<Piece> run;
  const auto flush = [&] {
    if (!run.empty()) classify_run(run, out);
    run.clear();
  };
  for (std::size_t pos = begin; pos < end;) {
    const auto d = utf8::decode(text, pos);
    if (!is_word_char(d.cp)) {
      flush();
    } else {
      // '#' opens a new token unless it continues a run of leading '#'.
      if (d.cp == '#' && !run.empty() && run.back().cp != '#') flush();
      run.push_back({d.cp, pos, pos + d.length});
    }
    pos += d.length;
  }
  flush();
}

}  // namespace

std::string_view to_string(KeywordKind kind) noexcept {
  switch (kind) {
    case KeywordKind::hashtag: return "hashtag";
    case KeywordKind::noun: return "noun";
    case KeywordKind::verb: return "verb";
  }
  return "?";
}

std::optional<KeywordKind> parse_keyword_kind(std::string_view token) noexcept {
  if (token == "hashtag") return KeywordKind::hashtag;
  if (token == "noun") return KeywordKind::noun;
  if (token == "verb") return KeywordKind::verb;
  return std::nullopt;
}

std::vector<KeywordKind> KindSet::kinds() const {
  std::vector<KeywordKind> out;
  for (auto k : {KeywordKind::hashtag, KeywordKind::noun, KeywordKind::verb}) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::string_view to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::positive: return "positive";
    case Polarity::neutral: return "neutral";
    case Polarity::negative: return "negative";
  }
  return "?";
}

std::optional<Polarity> parse_polarity(std::string_view token) noexcept {
  if (token == "positive") return Polarity::positive;
  if (token == "neutral") return Polarity::neutral;
  if (token == "negative") return Polarity::negative;
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto d = utf8::decode(text, pos);
    if (utf8::is_space(d.cp)) {
      pos += d.length;
      continue;
    }
    const std::size_t start = pos;
    std::size_t end = pos;
    while (end < text.size()) {
      const auto e = utf8::decode(text, end);
      if (utf8::is_space(e.cp)) break;
      end += e.length;
    }
    const std::string_view chunk = text.substr(start, end - start);
    if (chunk.front() == '@') {
      out.push_back({TokenKind::mention, {start, end}});
    } else if (is_url(chunk)) {
      out.push_back({TokenKind::url, {start, end}});
    } else {
      split_chunk(text, start, end, out);
    }
    pos = end;
  }
  return out;
}

std::string normalize_keyword(std::string_view raw) {
  auto cps = utf8::code_points(raw);
  std::size_t lo = 0;
  std::size_t hi = cps.size();
  while (lo < hi && cps[lo] == '#') ++lo;
  while (hi > lo && !utf8::is_letter(cps[hi - 1]) && !utf8::is_digit(cps[hi - 1])) --hi;
  std::string out;
  out.reserve(raw.size());
  for (std::size_t k = lo; k < hi; ++k) utf8::append(out, utf8::fold(cps[k]));
  return out;
}

std::vector<KeywordOccurrence> extract_keywords(std::string_view text, const TaggerProvider& tagger) {
  std::vector<KeywordOccurrence> out;
  for (const Token& tok : tokenize(text)) {
    const std::string_view raw = text.substr(tok.span.begin, tok.span.end - tok.span.begin);
    if (tok.kind == TokenKind::hashtag) {
      out.push_back({normalize_keyword(raw), KeywordKind::hashtag, tok.span});
    } else if (tok.kind == TokenKind::word) {
      std::string word = utf8::fold(raw);
      if (auto kind = tagger.tag(word)) {
        out.push_back({std::move(word), *kind, tok.span});
      }
    }
  }
  return out;
}

std::optional<KeywordKind> LexiconTagger::tag(std::string_view word) const {
  if (nouns_.contains(word)) return KeywordKind::noun;
  if (verbs_.contains(word)) return KeywordKind::verb;
  return std::nullopt;
}

LexiconSentiment::Counts LexiconSentiment::count(std::string_view text) const {
  Counts counts;
  for (const Token& tok : tokenize(text)) {
    if (tok.kind != TokenKind::word && tok.kind != TokenKind::hashtag) continue;
    const std::string word = normalize_keyword(text.substr(tok.span.begin, tok.span.end - tok.span.begin));
    if (positive_.contains(word)) ++counts.positive;
    if (negative_.contains(word)) ++counts.negative;
  }
  return counts;
}

Sentiment LexiconSentiment::classify(std::string_view text) const {
  const Counts c = count(text);
  const std::size_t total = c.positive + c.negative;
  if (total == 0) return {Polarity::neutral, 100.0};
  const std::size_t diff = c.positive > c.negative ? c.positive - c.negative : c.negative - c.positive;
  Polarity polarity = Polarity::neutral;
  if (c.positive > c.negative) {
    polarity = Polarity::positive;
  } else if (c.negative > c.positive) {
    polarity = Polarity::negative;
  }
  return {polarity, 100.0 * static_cast<double>(diff) / static_cast<double>(total)};
}

double BigramJaccard::similarity(std::string_view a, std::string_view b) const {
  if (a == b) return 1.0;
  const auto grams = [](std::string_view s) {
    const auto cps = utf8::code_points(s);
    std::set<std::u32string> out;
    if (cps.size() == 1) {
      out.emplace(1, cps[0]);
    }
    for (std::size_t k = 0; k + 1 < cps.size(); ++k) {
      out.emplace(std::u32string{cps[k], cps[k + 1]});
    }
    return out;
  };
  const auto ga = grams(a);
  const auto gb = grams(b);
  if (ga.empty() || gb.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& g : ga) shared += gb.count(g);
  const std::size_t uni = ga.size() + gb.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(uni);
}

const LexiconTagger& default_tagger() {
  static const LexiconTagger tagger(Lexicon::parse(bundled::tagger_nouns), Lexicon::parse(bundled::tagger_verbs));
  return tagger;
}

const LexiconSentiment& default_sentiment() {
  static const LexiconSentiment sentiment(Lexicon::parse(bundled::sentiment_positive),
                                          Lexicon::parse(bundled::sentiment_negative));
  return sentiment;
}

const BigramJaccard& default_similarity() {
  static const BigramJaccard similarity;
  return similarity;
}

}  // namespace kre
