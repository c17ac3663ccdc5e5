#include "mktmem/errors.hpp"

namespace mktmem {
namespace {

std::string join(const std::string& summary, const std::vector<std::string>& violations) {
  std::string out = summary;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    out += i == 0 ? ": " : "; ";
    out += violations[i];
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(const std::string& summary, std::vector<std::string> violations)
    : std::invalid_argument(join(summary, violations)), violations_(std::move(violations)) {}

}  // namespace mktmem
