#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hmsrep {

/// Failure kinds raised by the library. Negative mathematical answers
/// (no morphism, no least upper bound) are values, never errors.
enum class Errc {
  parse_error,
  not_normalized,
  non_positive_weight,
  index_arity,
  invalid_argument,
  too_large,
  too_deep,
  not_upper_bound,
  comparable,
  lub_exists,
  unsupported,
  unsupported_rule,
  mismatch,
  irrational_overlap,
  not_orthonormal,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Malformed textual input. `position` is a 0-based character offset into
/// the string that failed to parse.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(Errc::parse_error, what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hmsrep
