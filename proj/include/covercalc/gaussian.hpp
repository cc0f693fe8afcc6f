#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covercalc/arith.hpp"

namespace covercalc {

/// Element re + im·i of the Gaussian integers ℤ[i].
struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussianInt() = default;
  constexpr GaussianInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}  // NOLINT(implicit)

  static constexpr GaussianInt unit_i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }

  std::int64_t norm() const {
    return arith::checked_add(arith::checked_mul(re, re), arith::checked_mul(im, im));
  }

  GaussianInt conj() const { return {re, -im}; }

  friend GaussianInt operator+(GaussianInt a, GaussianInt b) {
    return {arith::checked_add(a.re, b.re), arith::checked_add(a.im, b.im)};
  }
  friend GaussianInt operator-(GaussianInt a, GaussianInt b) {
    return {arith::checked_sub(a.re, b.re), arith::checked_sub(a.im, b.im)};
  }
  friend GaussianInt operator-(GaussianInt a) { return GaussianInt{0} - a; }
  friend GaussianInt operator*(GaussianInt a, GaussianInt b) {
    return {arith::checked_sub(arith::checked_mul(a.re, b.re), arith::checked_mul(a.im, b.im)),
            arith::checked_add(arith::checked_mul(a.re, b.im), arith::checked_mul(a.im, b.re))};
  }
  GaussianInt& operator+=(GaussianInt o) { return *this = *this + o; }
  GaussianInt& operator-=(GaussianInt o) { return *this = *this - o; }
  GaussianInt& operator*=(GaussianInt o) { return *this = *this * o; }

  friend bool operator==(GaussianInt a, GaussianInt b) = default;

  std::string to_string() const {
    if (im == 0) return std::to_string(re);
    std::string imag;
    if (im == 1) {
      imag = "i";
    } else if (im == -1) {
      imag = "-i";
    } else {
      imag = std::to_string(im) + "i";
    }
    if (re == 0) return imag;
    return std::to_string(re) + (im > 0 ? "+" : "") + imag;
  }

  friend std::ostream& operator<<(std::ostream& os, GaussianInt z) { return os << z.to_string(); }
};

namespace gaussian {

/// Rounded-quotient Euclidean division: a = q·b + r with N(r) <= N(b)/2.
inline std::pair<GaussianInt, GaussianInt> divmod(GaussianInt a, GaussianInt b) {
  if (b.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero in Z[i]");
  const __int128 n = static_cast<__int128>(b.re) * b.re + static_cast<__int128>(b.im) * b.im;
  const __int128 x = static_cast<__int128>(a.re) * b.re + static_cast<__int128>(a.im) * b.im;
  const __int128 y = static_cast<__int128>(a.im) * b.re - static_cast<__int128>(a.re) * b.im;
  auto round_div = [](__int128 num, __int128 den) {
    // floor((2·num + den) / (2·den)) with den > 0
    __int128 t = 2 * num + den;
    __int128 d = 2 * den;
    __int128 q = t / d;
    if ((t % d != 0) && ((t < 0) != (d < 0))) --q;
    return q;
  };
  const GaussianInt q{static_cast<std::int64_t>(round_div(x, n)), static_cast<std::int64_t>(round_div(y, n))};
  return {q, a - q * b};
}

/// Exact quotient a/b if b divides a.
inline std::optional<GaussianInt> exact_div(GaussianInt a, GaussianInt b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

inline bool divides(GaussianInt b, GaussianInt a) { return exact_div(a, b).has_value(); }

inline bool is_unit(GaussianInt z) { return z.norm() == 1; }

/// The associate of z lying in the sector re > 0, -re < im <= re (zero maps to zero).
inline GaussianInt canonical_associate(GaussianInt z) {
  if (z.is_zero()) return z;
  for (int k = 0; k < 4; ++k) {
    if (z.re > 0 && -z.re < z.im && z.im <= z.re) return z;
    z = z * GaussianInt::unit_i();
  }
  return z;
}

/// Canonical order of Gaussian primes: by norm, then real part, then imaginary part descending.
inline std::strong_ordering canonical_compare(GaussianInt a, GaussianInt b) {
  if (auto c = a.norm() <=> b.norm(); c != 0) return c;
  if (auto c = a.re <=> b.re; c != 0) return c;
  return b.im <=> a.im;
}

inline bool is_gaussian_prime(GaussianInt z) {
  if (z.is_zero()) return false;
  const auto n = static_cast<std::uint64_t>(z.norm());
  if (arith::is_prime(n)) return true;
  // Inert primes: associates of a rational prime p ≡ 3 (mod 4).
  if (z.re != 0 && z.im != 0) return false;
  const std::uint64_t p = static_cast<std::uint64_t>(z.re != 0 ? (z.re < 0 ? -z.re : z.re) : (z.im < 0 ? -z.im : z.im));
  return arith::is_prime(p) && p % 4 == 3;
}

/// The Gaussian primes above the rational prime p, canonical and in canonical order.
inline std::vector<GaussianInt> primes_above(std::uint64_t p) {
  if (p == 2) return {GaussianInt{1, 1}};
  if (p % 4 == 3) return {GaussianInt{static_cast<std::int64_t>(p), 0}};
  const std::uint64_t limit = arith::isqrt(p);
  for (std::uint64_t x = 1; x <= limit; ++x) {
    const std::uint64_t rest = p - x * x;
    const std::uint64_t y = arith::isqrt(rest);
    if (y * y == rest) {
      GaussianInt a = canonical_associate({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
      GaussianInt b = canonical_associate(a.conj());
      if (canonical_compare(b, a) < 0) std::swap(a, b);
      return {a, b};
    }
  }
  fail(ErrorCode::InvalidArgument, "no two-square decomposition for " + std::to_string(p));
}

}  // namespace gaussian
}  // namespace covercalc
