#pragma once

#include <string_view>

namespace kre::bundled {

extern const std::string_view tagger_nouns;
extern const std::string_view tagger_verbs;
extern const std::string_view sentiment_positive;
extern const std::string_view sentiment_negative;

}  // namespace kre::bundled
