#include "kre/error.hpp"

namespace kre {
namespace {

std::string describe(const std::vector<FieldViolation>& violations) {
  std::string out = "invalid request";
  char sep = ':';
  for (const auto& v : violations) {
    out += sep;
    out += ' ';
    out += v.field;
    out += " (";
    out += v.message;
    out += ')';
    sep = ',';
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<FieldViolation> violations)
    : Error(describe(violations)), violations_(std::move(violations)) {}

}  // namespace kre
