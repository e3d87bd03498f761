#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <compare>

namespace aca {

using NodeId = std::uint32_t;

// Error hierarchy. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  std::size_t line_no;
};

struct DataError : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

// Exact ratio num/den with den > 0. Community temperatures are compared
// through this type so that ties are exact.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Fraction() = default;
  constexpr Fraction(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend constexpr std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    // Cross-multiplication; operands are bounded by node counts so this
    // cannot overflow for any graph that fits in memory.
    return a.num * b.den <=> b.num * a.den;
  }
  friend constexpr bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
};

}  // namespace aca
