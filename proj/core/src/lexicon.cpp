#include <algorithm>
#include <fstream>
#include <sstream>

#include "kre/error.hpp"
#include "kre/textproc.hpp"
#include "utf8.hpp"

namespace kre {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

Lexicon::Lexicon(std::vector<std::string> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

Lexicon Lexicon::parse(std::string_view contents) {
  std::vector<std::string> words;
  while (!contents.empty()) {
    const auto nl = contents.find('\n');
    const std::string_view line = trim(contents.substr(0, nl));
    contents = nl == std::string_view::npos ? std::string_view{} : contents.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    words.push_back(utf8::fold(line));
  }
  return Lexicon(std::move(words));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read lexicon " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool Lexicon::contains(std::string_view word) const {
  return std::binary_search(words_.begin(), words_.end(), word, std::less<>{});
}

}  // namespace kre
