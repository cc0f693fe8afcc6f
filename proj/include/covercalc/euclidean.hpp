#pragma once

#include <concepts>
#include <cstdint>
#include <tuple>
#include <utility>

#include "covercalc/fp_poly.hpp"
#include "covercalc/gaussian.hpp"

namespace covercalc {

/// Euclidean-domain interface for the concrete rings: ℤ, 𝔽_p[t], ℤ[i].
/// `size` is the Euclidean norm used for pivoting; `normalizer(a)` is the unit u
/// making u·a the canonical associate.
template <typename T>
struct EuclideanTraits;

template <>
struct EuclideanTraits<std::int64_t> {
  static std::int64_t zero(std::int64_t) { return 0; }
  static std::int64_t one(std::int64_t) { return 1; }
  static bool is_zero(std::int64_t a) { return a == 0; }
  static std::pair<std::int64_t, std::int64_t> divmod(std::int64_t a, std::int64_t b) {
    if (b == 0) fail(ErrorCode::InvalidArgument, "division by zero");
    std::int64_t q = a / b;
    std::int64_t r = a % b;
    if (r < 0) {
      r += (b < 0 ? -b : b);
      q += (b < 0 ? 1 : -1);
    }
    return {q, r};
  }
  static std::uint64_t size(std::int64_t a) { return static_cast<std::uint64_t>(a < 0 ? -a : a); }
  static std::int64_t normalizer(std::int64_t a) { return a < 0 ? -1 : 1; }
  static bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
  static std::int64_t mul(std::int64_t a, std::int64_t b) { return arith::checked_mul(a, b); }
  static std::int64_t add(std::int64_t a, std::int64_t b) { return arith::checked_add(a, b); }
  static std::int64_t sub(std::int64_t a, std::int64_t b) { return arith::checked_sub(a, b); }
  static std::string to_string(std::int64_t a) { return std::to_string(a); }
};

template <>
struct EuclideanTraits<FpPoly> {
  static FpPoly zero(const FpPoly& like) { return FpPoly(like.modulus(), {}); }
  static FpPoly one(const FpPoly& like) { return FpPoly::constant(like.modulus(), 1); }
  static bool is_zero(const FpPoly& a) { return a.is_zero(); }
  static std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) { return covercalc::divmod(a, b); }
  static std::uint64_t size(const FpPoly& a) { return static_cast<std::uint64_t>(a.degree() + 1); }
  static FpPoly normalizer(const FpPoly& a) {
    if (a.is_zero()) return one(a);
    return FpPoly::constant(a.modulus(), arith::inverse_mod_prime(static_cast<std::int64_t>(a.leading()),
                                                                  static_cast<std::int64_t>(a.modulus())));
  }
  static bool is_unit(const FpPoly& a) { return a.degree() == 0; }
  static FpPoly mul(const FpPoly& a, const FpPoly& b) { return a * b; }
  static FpPoly add(const FpPoly& a, const FpPoly& b) { return a + b; }
  static FpPoly sub(const FpPoly& a, const FpPoly& b) { return a - b; }
  static std::string to_string(const FpPoly& a) { return a.to_string(); }
};

template <>
struct EuclideanTraits<GaussianInt> {
  static GaussianInt zero(GaussianInt) { return {}; }
  static GaussianInt one(GaussianInt) { return {1}; }
  static bool is_zero(GaussianInt a) { return a.is_zero(); }
  static std::pair<GaussianInt, GaussianInt> divmod(GaussianInt a, GaussianInt b) { return gaussian::divmod(a, b); }
  static std::uint64_t size(GaussianInt a) { return static_cast<std::uint64_t>(a.norm()); }
  static GaussianInt normalizer(GaussianInt a) {
    if (a.is_zero()) return {1};
    GaussianInt u{1};
    for (int k = 0; k < 4; ++k) {
      if ((u * a) == gaussian::canonical_associate(a)) return u;
      u = u * GaussianInt::unit_i();
    }
    return {1};
  }
  static bool is_unit(GaussianInt a) { return a.norm() == 1; }
  static GaussianInt mul(GaussianInt a, GaussianInt b) { return a * b; }
  static GaussianInt add(GaussianInt a, GaussianInt b) { return a + b; }
  static GaussianInt sub(GaussianInt a, GaussianInt b) { return a - b; }
  static std::string to_string(GaussianInt a) { return a.to_string(); }
};

template <typename T>
concept EuclideanElement = requires(const T& a) {
  { EuclideanTraits<T>::divmod(a, a) } -> std::same_as<std::pair<T, T>>;
  { EuclideanTraits<T>::size(a) } -> std::convertible_to<std::uint64_t>;
};

/// Extended Euclid: returns (g, x, y) with a·x + b·y = g, g canonical.
template <EuclideanElement T>
std::tuple<T, T, T> extended_gcd(const T& a, const T& b) {
  using Tr = EuclideanTraits<T>;
  T r0 = a, r1 = b;
  T s0 = Tr::one(a), s1 = Tr::zero(a);
  T t0 = Tr::zero(a), t1 = Tr::one(a);
  while (!Tr::is_zero(r1)) {
    auto [q, r] = Tr::divmod(r0, r1);
    r0 = r1;
    r1 = r;
    T s2 = Tr::sub(s0, Tr::mul(q, s1));
    s0 = s1;
    s1 = s2;
    T t2 = Tr::sub(t0, Tr::mul(q, t1));
    t0 = t1;
    t1 = t2;
  }
  const T u = Tr::normalizer(r0);
  return {Tr::mul(u, r0), Tr::mul(u, s0), Tr::mul(u, t0)};
}

/// Remainder of a modulo m, reduced with the ring's Euclidean division.
template <EuclideanElement T>
T reduce(const T& a, const T& m) {
  return EuclideanTraits<T>::divmod(a, m).second;
}

/// Solves x ≡ a (mod m), x ≡ b (mod n) for coprime m, n; result reduced mod m·n.
template <EuclideanElement T>
T crt_pair(const T& a, const T& m, const T& b, const T& n) {
  using Tr = EuclideanTraits<T>;
  auto [g, x, y] = extended_gcd(m, n);
  if (!Tr::is_unit(g)) fail(ErrorCode::InvalidArgument, "CRT moduli are not coprime");
  // g = 1 after normalization: m·x + n·y = 1.
  const T lifted = Tr::add(Tr::mul(Tr::mul(a, n), y), Tr::mul(Tr::mul(b, m), x));
  return reduce(lifted, Tr::mul(m, n));
}

}  // namespace covercalc
