// Shared constants, error types and the extended-real value used across rodbreak.
#ifndef RODBREAK_COMMON_HPP
#define RODBREAK_COMMON_HPP

#include <numbers>
#include <stdexcept>
#include <string>

namespace rodbreak {

inline constexpr double kE = std::numbers::e;
inline constexpr double kPi = std::numbers::pi;

/// Largest |beta| for which the weight p + beta p' is nonnegative on (0,1).
inline constexpr double kBetaLimit = (kE + 1.0) / (kE - 1.0);

inline constexpr const char* kToolVersion = "rodbreak 0.1.0";

/// Raised when an input lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical procedure fails (no bracket, non-finite values, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real number that may also be -infinity or +infinity.
///
/// Infinite values are carried as a tag, never as a floating-point sentinel,
/// so that callers have to look at the kind before reading the value.
class Extended {
 public:
  enum class Kind { finite, minus_infinity, plus_infinity };

  static Extended finite(double v) { return Extended(Kind::finite, v); }
  static Extended minus_infinity() { return Extended(Kind::minus_infinity, 0.0); }
  static Extended plus_infinity() { return Extended(Kind::plus_infinity, 0.0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_minus_infinity() const { return kind_ == Kind::minus_infinity; }
  bool is_plus_infinity() const { return kind_ == Kind::plus_infinity; }

  /// The finite value; throws if the value is infinite.
  double value() const {
    if (kind_ != Kind::finite) throw std::logic_error("Extended::value() on an infinite value");
    return value_;
  }

  /// Lossy conversion for plotting and comparisons.
  double to_double() const;

  std::string to_string() const;

  friend bool operator==(const Extended&, const Extended&) = default;

 private:
  Extended(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

}  // namespace rodbreak

#endif
