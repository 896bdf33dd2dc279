#ifndef ENTROB_ERROR_HPP
#define ENTROB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entrob {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  SizeOutOfRange,
  UnknownName,
  NotNormalized,
  SyntaxError,
  DimensionMismatch,
  ZeroVector,
  BadSubset,
  BadProbability,
  OutOfRange,
  NotEntangledAtZero,
  NonMonotonic,
  BadAxis,
  MeanSpinVanishes,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::BadSubset: return "BadSubset";
    case ErrorKind::BadProbability: return "BadProbability";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotEntangledAtZero: return "NotEntangledAtZero";
    case ErrorKind::NonMonotonic: return "NonMonotonic";
    case ErrorKind::BadAxis: return "BadAxis";
    case ErrorKind::MeanSpinVanishes: return "MeanSpinVanishes";
  }
  return "Unknown";
}

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the ket parser; position is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& what)
      : Error(kind, what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace entrob

#endif  // ENTROB_ERROR_HPP
