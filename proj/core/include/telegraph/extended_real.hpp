#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

#include "telegraph/errors.hpp"

namespace telegraph {

/// A real number or +infinity.
///
/// Moment generating functions and Legendre transforms take the value +inf
/// outside their effective domains. The infinite state is explicit so it can
/// never be confused with a large finite value produced by overflow.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double v = 0.0) : value_(v), infinite_(false) {}  // NOLINT

  static constexpr ExtendedReal infinity() { return ExtendedReal(Tag{}); }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  /// The finite value; throws if this is +inf.
  double value() const {
    if (infinite_) throw DomainError("ExtendedReal: value() called on +inf");
    return value_;
  }

  /// Finite value, or IEEE +inf.
  constexpr double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a,
                                                     const ExtendedReal& b) {
    return a.to_double() <=> b.to_double();
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& v) {
    if (v.infinite_) return os << "inf";
    return os << v.value_;
  }

 private:
  struct Tag {};
  constexpr explicit ExtendedReal(Tag) : value_(0.0), infinite_(true) {}

  double value_;
  bool infinite_;
};

/// Right boundary of an interval (-inf, s_sup) or (-inf, s_sup].
enum class Boundary { open, closed };

/// Domain of a moment generating function, described by its supremum.
struct DomainSpec {
  double s_sup = std::numeric_limits<double>::infinity();
  Boundary boundary = Boundary::open;

  static DomainSpec whole_line() { return {}; }
  static DomainSpec up_to(double sup, Boundary b) {
    if (std::isinf(sup)) return whole_line();
    return {sup, b};
  }

  bool is_bounded() const { return std::isfinite(s_sup); }

  bool contains(double s) const {
    if (!is_bounded()) return true;
    return boundary == Boundary::closed ? s <= s_sup : s < s_sup;
  }

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

inline const char* to_string(Boundary b) { return b == Boundary::open ? "open" : "closed"; }

}  // namespace telegraph
