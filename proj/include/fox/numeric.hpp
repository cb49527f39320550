#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace fox {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different alphabets / ranks / cutoffs.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// An operation's documented precondition does not hold for the input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The operation is not available for this kind of input (e.g. a finite-index
/// algorithm applied to an infinite-index quotient).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed; `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        detail_(what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }
  /// Same error, position shifted by `offset` (for sub-parsers).
  ParseError shifted(std::size_t offset) const { return ParseError(detail_, position_ + offset); }

 private:
  std::string detail_;
  std::size_t position_;
};

inline std::size_t hash_integer(const Integer& z) noexcept {
  std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t())) * 0x9e3779b97f4a7c15ULL;
  h ^= std::hash<long>{}(mpz_get_si(z.get_mpz_t())) + (sgn(z) < 0 ? 0x51ed27 : 0);
  return h;
}

inline void hash_combine(std::size_t& seed, std::size_t v) noexcept {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace fox
