#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mktmem {

/// Input that violates a documented precondition (bad pattern, bad memory, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
  ValidationError(const std::string& summary, std::vector<std::string> violations);

  [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Malformed document; the message carries the location of the first problem.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A configured enumeration cap would be exceeded.
class CapExceeded : public std::length_error {
 public:
  explicit CapExceeded(const std::string& what) : std::length_error(what) {}
};

/// Unknown catalog name.
class LookupError : public std::out_of_range {
 public:
  explicit LookupError(const std::string& what) : std::out_of_range(what) {}
};

/// Evolving a scenario pattern would make a block depend on the previous
/// independent block, so the result is no longer a pattern of independent blocks.
class BoundaryDependent : public std::runtime_error {
 public:
  BoundaryDependent(std::size_t scenario, std::size_t position, const std::string& what)
      : std::runtime_error(what), scenario_(scenario), position_(position) {}

  [[nodiscard]] std::size_t scenario() const noexcept { return scenario_; }
  /// 1-based position inside the block.
  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t scenario_;
  std::size_t position_;
};

}  // namespace mktmem
