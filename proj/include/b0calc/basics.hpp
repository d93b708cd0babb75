#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace b0calc {

using Int = boost::multiprecision::cpp_int;

// Base class for every error this library raises on bad input or
// violated preconditions.  Internal invariant failures use assertions.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InconsistentPresentation : Error { using Error::Error; };
struct ClassTooHigh : Error { using Error::Error; };
struct NotRefined : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct PrimeMismatch : Error { using Error::Error; };
struct NotInCentralBlock : Error { using Error::Error; };
struct EvenPrime : Error { using Error::Error; };
struct BadIndex : Error { using Error::Error; };
struct NotClassTwo : Error { using Error::Error; };
struct NotCentral : Error { using Error::Error; };
struct NotIso : Error { using Error::Error; };
struct NotASubgroup : Error { using Error::Error; };
struct NotWellDefined : Error { using Error::Error; };
struct InfiniteGroup : Error { using Error::Error; };
struct UnstableModulus : Error { using Error::Error; };

struct SyntaxError : Error {
  int line, col;
  SyntaxError(const std::string& msg, int line_, int col_)
      : Error("line " + std::to_string(line_) + ":" + std::to_string(col_) +
              ": " + msg),
        line(line_),
        col(col_) {}
};

// Floor division, correct for negative numerators.
inline long long floordiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

inline Int floordiv(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

// n*(n-1)/2 for arbitrary integers (the class-3 collection correction
// exponent); matches the usual binomial extension to negative n.
inline Int binom2(const Int& n) { return n * (n - 1) / 2; }

}  // namespace b0calc
