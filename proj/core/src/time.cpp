#include "kre/time.hpp"

#include <cstdio>

#include "kre/error.hpp"

namespace kre {
namespace {

using namespace std::chrono;

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  // Exactly `width` ASCII digits.
  std::optional<int> digits(std::size_t width) {
    if (s_.size() - pos_ < width) return std::nullopt;
    int value = 0;
    for (std::size_t k = 0; k < width; ++k) {
      char c = s_[pos_ + k];
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + (c - '0');
    }
    pos_ += width;
    return value;
  }

  void skip_digits() {
    while (!done() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

void require_valid(const TimeWindow& window) {
  if (!(window.start < window.end)) {
    throw InvalidRange("time window start " + format_iso8601(window.start) +
                       " is not before end " + format_iso8601(window.end));
  }
}

std::optional<Instant> try_parse_iso8601(std::string_view text) {
  Cursor in(text);
  auto y = in.digits(4);
  if (!y || !in.accept('-')) return std::nullopt;
  auto mo = in.digits(2);
  if (!mo || !in.accept('-')) return std::nullopt;
  auto d = in.digits(2);
  if (!d) return std::nullopt;

  year_month_day date{year{*y}, month{static_cast<unsigned>(*mo)},
                      day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;

  int hh = 0, mm = 0, ss = 0;
  if (!in.done()) {
    if (!in.accept('T') && !in.accept('t') && !in.accept(' ')) return std::nullopt;
    auto h = in.digits(2);
    if (!h || !in.accept(':')) return std::nullopt;
    auto m = in.digits(2);
    if (!m) return std::nullopt;
    hh = *h;
    mm = *m;
    if (in.accept(':')) {
      auto s = in.digits(2);
      if (!s) return std::nullopt;
      ss = *s;
      if (in.accept('.') || in.accept(',')) {
        if (!in.digits(1)) return std::nullopt;
        in.skip_digits();
      }
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  }

  int offset_minutes = 0;
  if (in.accept('Z') || in.accept('z')) {
  } else if (in.peek() == '+' || in.peek() == '-') {
    int sign = in.peek() == '-' ? -1 : 1;
    in.accept(in.peek());
    auto oh = in.digits(2);
    if (!oh) return std::nullopt;
    int om = 0;
    if (in.accept(':')) {
      auto v = in.digits(2);
      if (!v) return std::nullopt;
      om = *v;
    } else if (!in.done()) {
      auto v = in.digits(2);
      if (!v) return std::nullopt;
      om = *v;
    }
    if (*oh > 23 || om > 59) return std::nullopt;
    offset_minutes = sign * (*oh * 60 + om);
  }
  if (!in.done()) return std::nullopt;

  // A leap second (":60") folds onto the following second.
  Instant local = sys_days{date} + hours{hh} + minutes{mm} + seconds{ss};
  return local - minutes{offset_minutes};
}

Instant parse_iso8601(std::string_view text) {
  if (auto t = try_parse_iso8601(text)) return *t;
  throw ParseError("not an ISO-8601 timestamp: \"" + std::string(text) + "\"");
}

std::string format_iso8601(Instant t) {
  const auto day_point = floor<days>(t);
  const year_month_day date{day_point};
  const hh_mm_ss<seconds> tod{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

}  // namespace kre
