#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "covercalc/arith.hpp"

namespace covercalc {

/// Polynomial in t over the prime field 𝔽_p, coefficients stored low degree first.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= p_;
    trim();
  }

  static FpPoly constant(std::uint64_t p, std::int64_t value) {
    return FpPoly(p, {static_cast<std::uint64_t>(arith::mod(value, static_cast<std::int64_t>(p)))});
  }
  static FpPoly monomial(std::uint64_t p, std::size_t degree, std::uint64_t coeff = 1) {
    std::vector<std::uint64_t> c(degree + 1, 0);
    c[degree] = coeff;
    return FpPoly(p, std::move(c));
  }
  /// Inverse of encoding(): base-p digits become coefficients.
  static FpPoly from_encoding(std::uint64_t p, std::uint64_t code) {
    std::vector<std::uint64_t> c;
    while (code > 0) {
      c.push_back(code % p);
      code /= p;
    }
    return FpPoly(p, std::move(c));
  }

  std::uint64_t modulus() const { return p_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree, with -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }
  std::uint64_t coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  /// Σ c_k p^k; orders polynomials of equal degree consistently with canonical_compare.
  std::uint64_t encoding() const {
    std::uint64_t out = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * p_ + *it;
    return out;
  }

  FpPoly monic() const {
    if (is_zero()) return *this;
    const auto inv = static_cast<std::uint64_t>(arith::inverse_mod_prime(static_cast<std::int64_t>(leading()),
                                                                         static_cast<std::int64_t>(p_)));
    return scaled(inv);
  }

  FpPoly scaled(std::uint64_t s) const {
    std::vector<std::uint64_t> c(c_);
    for (auto& x : c) x = arith::mulmod(x, s % p_, p_);
    return FpPoly(p_, std::move(c));
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.field_of(b);
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = (a.coeff(k) + b.coeff(k)) % p;
    return FpPoly(p, std::move(c));
  }
  friend FpPoly operator-(const FpPoly& a) {
    std::vector<std::uint64_t> c(a.c_);
    for (auto& x : c) x = (a.p_ - x) % a.p_;
    return FpPoly(a.p_, std::move(c));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.field_of(b);
    if (a.is_zero() || b.is_zero()) return FpPoly(p, {});
    std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + arith::mulmod(a.c_[i], b.c_[j], p)) % p;
    }
    return FpPoly(p, std::move(c));
  }
  FpPoly& operator+=(const FpPoly& o) { return *this = *this + o; }
  FpPoly& operator-=(const FpPoly& o) { return *this = *this - o; }
  FpPoly& operator*=(const FpPoly& o) { return *this = *this * o; }

  /// Long division: a = q·b + r with deg r < deg b.
  friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.field_of(b);
    if (b.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
    std::vector<std::uint64_t> r(a.c_);
    std::vector<std::uint64_t> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0, 0);
    const auto inv = static_cast<std::uint64_t>(
        arith::inverse_mod_prime(static_cast<std::int64_t>(b.leading()), static_cast<std::int64_t>(p)));
    for (std::size_t k = q.size(); k-- > 0;) {
      const std::uint64_t coef = arith::mulmod(r[k + b.c_.size() - 1], inv, p);
      q[k] = coef;
      if (coef == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        r[k + j] = (r[k + j] + p - arith::mulmod(coef, b.c_[j], p)) % p;
      }
    }
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
  }

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  /// By degree, then coefficients from the top down.
  friend std::strong_ordering canonical_compare(const FpPoly& a, const FpPoly& b) {
    if (auto c = a.p_ <=> b.p_; c != 0) return c;
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t k = a.c_.size(); k-- > 0;) {
      if (auto c = a.c_[k] <=> b.c_[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const std::uint64_t a = c_[k];
      if (a == 0) continue;
      if (!out.empty()) out += "+";
      if (k == 0) {
        out += std::to_string(a);
        continue;
      }
      if (a != 1) out += std::to_string(a);
      out += "t";
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const FpPoly& f) { return os << f.to_string(); }

 private:
  std::uint64_t field_of(const FpPoly& other) const {
    if (p_ == 0) return other.p_;
    if (other.p_ != 0 && other.p_ != p_) fail(ErrorCode::InvalidArgument, "mixing polynomials over different fields");
    return p_;
  }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::uint64_t p_ = 0;
  std::vector<std::uint64_t> c_;
};

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
std::strong_ordering canonical_compare(const FpPoly& a, const FpPoly& b);

namespace fp_poly {

/// Monic factorization by trial division with monic polynomials of increasing degree.
/// Each divisor found this way is irreducible because all smaller degrees were exhausted first.
inline std::vector<std::pair<FpPoly, unsigned>> factor(FpPoly f) {
  std::vector<std::pair<FpPoly, unsigned>> out;
  const std::uint64_t p = f.modulus();
  if (f.degree() <= 0) return out;
  f = f.monic();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    const std::uint64_t count = arith::checked_pow(p, static_cast<unsigned>(d));
    for (std::uint64_t low = 0; low < count && 2 * d <= f.degree(); ++low) {
      FpPoly g = FpPoly::from_encoding(p, low) + FpPoly::monomial(p, static_cast<std::size_t>(d));
      unsigned e = 0;
      while (true) {
        auto [q, r] = divmod(f, g);
        if (!r.is_zero()) break;
        f = q;
        ++e;
      }
      if (e > 0) out.emplace_back(g, e);
    }
  }
  if (f.degree() > 0) {
    bool merged = false;
    for (auto& [g, e] : out) {
      if (g == f) {
        ++e;
        merged = true;
      }
    }
    if (!merged) out.emplace_back(f, 1);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return canonical_compare(a.first, b.first) < 0; });
  return out;
}

inline bool is_irreducible(const FpPoly& f) {
  if (f.degree() <= 0) return false;
  const auto fac = factor(f);
  return fac.size() == 1 && fac.front().second == 1;
}

/// Monic irreducible polynomials of the given degree, in canonical order.
inline std::vector<FpPoly> monic_irreducibles(std::uint64_t p, int degree) {
  std::vector<FpPoly> out;
  const std::uint64_t count = arith::checked_pow(p, static_cast<unsigned>(degree));
  for (std::uint64_t low = 0; low < count; ++low) {
    FpPoly g = FpPoly::from_encoding(p, low) + FpPoly::monomial(p, static_cast<std::size_t>(degree));
    if (is_irreducible(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace fp_poly
}  // namespace covercalc
