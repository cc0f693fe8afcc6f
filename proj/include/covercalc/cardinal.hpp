#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "covercalc/error.hpp"

namespace covercalc {

/// A cardinal number as far as this library needs them: finite values,
/// the countable infinity, and a single catch-all uncountable class.
class Cardinal {
 public:
  enum class Kind : std::uint8_t { Finite = 0, Aleph0 = 1, Uncountable = 2 };

  constexpr Cardinal() = default;
  constexpr Cardinal(std::uint64_t n) : kind_(Kind::Finite), value_(n) {}  // NOLINT(implicit)

  static constexpr Cardinal finite(std::uint64_t n) { return Cardinal(n); }
  static constexpr Cardinal aleph0() { return Cardinal(Kind::Aleph0); }
  static constexpr Cardinal uncountable() { return Cardinal(Kind::Uncountable); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_infinite() const { return kind_ != Kind::Finite; }
  constexpr bool is_zero() const { return is_finite() && value_ == 0; }

  /// Finite value; only meaningful when is_finite().
  constexpr std::uint64_t value() const {
    if (!is_finite()) fail(ErrorCode::InvalidArgument, "value() of an infinite cardinal");
    return value_;
  }

  /// κ + 1: finite values step up, infinite values absorb the increment.
  constexpr Cardinal successor() const {
    if (!is_finite()) return *this;
    if (value_ == std::numeric_limits<std::uint64_t>::max()) fail(ErrorCode::Overflow, "cardinal successor");
    return Cardinal(value_ + 1);
  }

  friend constexpr Cardinal operator+(Cardinal a, Cardinal b) {
    if (a.is_finite() && b.is_finite()) {
      std::uint64_t out = 0;
      if (__builtin_add_overflow(a.value_, b.value_, &out)) fail(ErrorCode::Overflow, "cardinal sum");
      return Cardinal(out);
    }
    return a < b ? b : a;
  }

  friend constexpr bool operator==(Cardinal a, Cardinal b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Cardinal a, Cardinal b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ == Kind::Finite) return a.value_ <=> b.value_;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Finite: return std::to_string(value_);
      case Kind::Aleph0: return "aleph0";
      case Kind::Uncountable: return "uncountable";
    }
    return "?";
  }

  friend std::ostream& operator<<(std::ostream& os, Cardinal c) { return os << c.to_string(); }

 private:
  constexpr explicit Cardinal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  std::uint64_t value_ = 0;
};

}  // namespace covercalc
