#pragma once

/**
 * @file rings.hpp
 * @brief Ring adapters: maximal ideals, ideal factorization and residue fields.
 *
 * Supported rings are ℤ, ℤ[i], 𝔽_p[t], abstract fields of a given cardinality,
 * and two abstract kinds described only by their spectrum: a local ring with a
 * declared residue cardinality and a Dedekind domain with a declared list of
 * maximal ideals.
 *
 * All supported non-field rings are Dedekind, so every layer 𝔪^{j-1}/𝔪^j is a
 * one-dimensional R/𝔪-vector space and layer_cardinality() returns |R/𝔪| for
 * every j. The abstract kinds inherit this rule.
 *
 * Fields are modelled with an empty set of maximal ideals; vector-space
 * questions are answered directly rather than through NC(M)/q(M).
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "covercalc/arith.hpp"
#include "covercalc/cardinal.hpp"
#include "covercalc/euclidean.hpp"
#include "covercalc/fp_poly.hpp"
#include "covercalc/gaussian.hpp"

namespace covercalc {

enum class RingKind { Integers, GaussianIntegers, PolyOverPrimeField, Field, AbstractLocal, AbstractDedekind };

struct DeclaredPrime {
  std::string label;
  Cardinal residue;
  friend bool operator==(const DeclaredPrime&, const DeclaredPrime&) = default;
};

class RingHandle {
 public:
  static RingHandle integers() { return RingHandle(RingKind::Integers); }
  static RingHandle gaussian_integers() { return RingHandle(RingKind::GaussianIntegers); }

  static RingHandle poly_over_prime_field(std::uint64_t p) {
    if (!arith::is_prime(p)) fail(ErrorCode::InvalidArgument, "Fp[t] requires a prime p, got " + std::to_string(p));
    RingHandle r(RingKind::PolyOverPrimeField);
    r.p_ = p;
    return r;
  }

  static RingHandle field(Cardinal cardinality) {
    if (cardinality.is_finite() && arith::prime_power(cardinality.value()).first == 0) {
      fail(ErrorCode::InvalidArgument, "a finite field has prime-power order, got " + cardinality.to_string());
    }
    RingHandle r(RingKind::Field);
    r.cardinality_ = cardinality;
    return r;
  }

  static RingHandle abstract_local(Cardinal residue, std::string label = "m") {
    if (residue.is_finite() && residue.value() < 2) fail(ErrorCode::InvalidArgument, "residue field has at least 2 elements");
    RingHandle r(RingKind::AbstractLocal);
    r.cardinality_ = residue;
    r.label_ = std::move(label);
    return r;
  }

  static RingHandle abstract_dedekind(std::vector<DeclaredPrime> primes, Cardinal min_residue,
                                      bool infinite_spectrum = true) {
    std::vector<std::string> seen;
    for (const auto& dp : primes) {
      if (dp.residue < min_residue) {
        fail(ErrorCode::InvalidArgument, "declared prime " + dp.label + " has residue below min=" + min_residue.to_string());
      }
      if (dp.residue.is_finite() && dp.residue.value() < 2) {
        fail(ErrorCode::InvalidArgument, "residue field has at least 2 elements");
      }
      if (std::find(seen.begin(), seen.end(), dp.label) != seen.end()) {
        fail(ErrorCode::InvalidArgument, "duplicate prime label " + dp.label);
      }
      seen.push_back(dp.label);
    }
    if (min_residue.is_finite() && min_residue.value() < 2) fail(ErrorCode::InvalidArgument, "min residue must be >= 2");
    RingHandle r(RingKind::AbstractDedekind);
    r.primes_ = std::move(primes);
    r.cardinality_ = min_residue;
    r.infinite_spectrum_ = infinite_spectrum;
    return r;
  }

  RingKind kind() const { return kind_; }
  std::uint64_t characteristic_p() const { return p_; }
  /// Field cardinality, local residue cardinality, or declared Dedekind minimum.
  Cardinal declared_cardinal() const { return cardinality_; }
  const std::string& local_label() const { return label_; }
  const std::vector<DeclaredPrime>& declared_primes() const { return primes_; }

  bool is_field() const { return kind_ == RingKind::Field; }
  bool is_concrete() const {
    return kind_ == RingKind::Integers || kind_ == RingKind::GaussianIntegers || kind_ == RingKind::PolyOverPrimeField;
  }
  /// Kinds whose modules may carry field copies and Prüfer summands.
  bool is_pid() const { return kind_ != RingKind::AbstractDedekind; }
  bool has_infinite_spectrum() const {
    switch (kind_) {
      case RingKind::Integers:
      case RingKind::GaussianIntegers:
      case RingKind::PolyOverPrimeField: return true;
      case RingKind::Field:
      case RingKind::AbstractLocal: return false;
      case RingKind::AbstractDedekind: return infinite_spectrum_;
    }
    return false;
  }
  bool is_enumerable() const { return is_concrete() || kind_ == RingKind::AbstractDedekind; }

  /// Literal in the CLI grammar.
  std::string to_string() const {
    switch (kind_) {
      case RingKind::Integers: return "Z";
      case RingKind::GaussianIntegers: return "Zi";
      case RingKind::PolyOverPrimeField: return "Fp[t] p=" + std::to_string(p_);
      case RingKind::Field: return "F q=" + cardinality_.to_string();
      case RingKind::AbstractLocal: {
        std::string s = "local residue=" + cardinality_.to_string();
        if (label_ != "m") s += " label=" + label_;
        return s;
      }
      case RingKind::AbstractDedekind: {
        std::string s = "dedekind {";
        for (std::size_t k = 0; k < primes_.size(); ++k) {
          if (k > 0) s += ", ";
          s += primes_[k].label + ":" + primes_[k].residue.to_string();
        }
        s += "} min=" + cardinality_.to_string();
        if (!infinite_spectrum_) s += " spectrum=finite";
        return s;
      }
    }
    return "?";
  }

  friend bool operator==(const RingHandle&, const RingHandle&) = default;

 private:
  explicit RingHandle(RingKind kind) : kind_(kind) {}

  RingKind kind_;
  std::uint64_t p_ = 0;
  Cardinal cardinality_;
  std::string label_ = "m";
  std::vector<DeclaredPrime> primes_;
  bool infinite_spectrum_ = true;
};

/// Concrete ring element; abstract kinds have no element literals.
using RingElement = std::variant<std::int64_t, GaussianInt, FpPoly>;

/// A maximal ideal given by its canonical generator: a positive prime (ℤ), a
/// Gaussian prime in the sector re > 0, -re < im <= re (ℤ[i]), a monic
/// irreducible (𝔽_p[t]), or a label (abstract kinds).
class MaximalIdealId {
 public:
  using Generator = std::variant<std::int64_t, GaussianInt, FpPoly, std::string>;

  MaximalIdealId() = default;

  static MaximalIdealId integer(std::int64_t p) { return MaximalIdealId(Generator{p < 0 ? -p : p}); }
  static MaximalIdealId gaussian(GaussianInt z) { return MaximalIdealId(Generator{gaussian::canonical_associate(z)}); }
  static MaximalIdealId poly(const FpPoly& f) { return MaximalIdealId(Generator{f.monic()}); }
  static MaximalIdealId label(std::string s) { return MaximalIdealId(Generator{std::move(s)}); }

  const Generator& generator() const { return gen_; }
  bool is_label() const { return std::holds_alternative<std::string>(gen_); }

  /// Generator as a ring element (concrete kinds only).
  RingElement element() const {
    return std::visit(
        [](const auto& g) -> RingElement {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, std::string>) {
            fail(ErrorCode::UnsupportedLiteral, "abstract ideal " + g + " has no element generator");
          } else {
            return g;
          }
        },
        gen_);
  }

  std::string to_string() const {
    return std::visit(
        [](const auto& g) -> std::string {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, std::int64_t>) {
            return std::to_string(g);
          } else if constexpr (std::is_same_v<G, std::string>) {
            return g;
          } else {
            return g.to_string();
          }
        },
        gen_);
  }

  friend bool operator==(const MaximalIdealId& a, const MaximalIdealId& b) { return a.gen_ == b.gen_; }

  /// Intrinsic total order; agrees with (residue, id) order for the concrete kinds.
  friend std::strong_ordering operator<=>(const MaximalIdealId& a, const MaximalIdealId& b) {
    if (a.gen_.index() != b.gen_.index()) return a.gen_.index() <=> b.gen_.index();
    return std::visit(
        [&](const auto& x) -> std::strong_ordering {
          using G = std::decay_t<decltype(x)>;
          const auto& y = std::get<G>(b.gen_);
          if constexpr (std::is_same_v<G, GaussianInt>) {
            return gaussian::canonical_compare(x, y);
          } else if constexpr (std::is_same_v<G, FpPoly>) {
            return canonical_compare(x, y);
          } else {
            return x <=> y;
          }
        },
        a.gen_);
  }

 private:
  explicit MaximalIdealId(Generator g) : gen_(std::move(g)) {}
  Generator gen_{std::int64_t{0}};
};

/// An ideal as a product of maximal ideals, or the zero or unit ideal.
class FactoredIdeal {
 public:
  enum class Kind { Zero, Unit, Proper };
  using Factor = std::pair<MaximalIdealId, unsigned>;

  FactoredIdeal() = default;

  static FactoredIdeal zero() { return FactoredIdeal(Kind::Zero, {}); }
  static FactoredIdeal unit() { return FactoredIdeal(Kind::Unit, {}); }
  static FactoredIdeal prime_power(MaximalIdealId m, unsigned e) { return from_factors({{std::move(m), e}}); }

  /// Merges repeated keys, drops zero exponents, sorts by the intrinsic id order.
  static FactoredIdeal from_factors(std::vector<Factor> factors) {
    std::map<MaximalIdealId, unsigned> merged;
    for (auto& [m, e] : factors) {
      if (e > 0) merged[m] += e;
    }
    std::vector<Factor> out(merged.begin(), merged.end());
    if (out.empty()) return unit();
    return FactoredIdeal(Kind::Proper, std::move(out));
  }

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_unit() const { return kind_ == Kind::Unit; }
  bool is_proper_nonzero() const { return kind_ == Kind::Proper; }
  const std::vector<Factor>& factors() const { return factors_; }
  bool is_prime_power() const { return factors_.size() == 1; }

  /// Exponent of m (0 if m does not divide).
  unsigned exponent(const MaximalIdealId& m) const {
    for (const auto& [id, e] : factors_) {
      if (id == m) return e;
    }
    return 0;
  }

  friend bool operator==(const FactoredIdeal&, const FactoredIdeal&) = default;

  FactoredIdeal operator*(const FactoredIdeal& other) const {
    if (is_zero() || other.is_zero()) return zero();
    std::vector<Factor> all(factors_);
    all.insert(all.end(), other.factors_.begin(), other.factors_.end());
    return from_factors(std::move(all));
  }

  /// Human-readable product form, e.g. "(2)^3·(3)^2·(5)".
  std::string to_string() const {
    if (is_zero()) return "(0)";
    if (is_unit()) return "(1)";
    std::string s;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      if (k > 0) s += "*";
      s += "(" + factors_[k].first.to_string() + ")";
      if (factors_[k].second > 1) s += "^" + std::to_string(factors_[k].second);
    }
    return s;
  }

 private:
  FactoredIdeal(Kind k, std::vector<Factor> f) : kind_(k), factors_(std::move(f)) {}

  Kind kind_ = Kind::Unit;
  std::vector<Factor> factors_;
};

// ---------------------------------------------------------------------------
// Ring elements

namespace element {

inline bool is_zero(const RingElement& a) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return EuclideanTraits<T>::is_zero(x);
      },
      a);
}

inline std::string to_string(const RingElement& a) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return EuclideanTraits<T>::to_string(x);
      },
      a);
}

template <typename Op>
RingElement binary(const RingElement& a, const RingElement& b, Op op) {
  if (a.index() != b.index()) fail(ErrorCode::InvalidArgument, "mixing elements of different rings");
  return std::visit(
      [&](const auto& x) -> RingElement {
        using T = std::decay_t<decltype(x)>;
        return op(x, std::get<T>(b));
      },
      a);
}

inline RingElement add(const RingElement& a, const RingElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return EuclideanTraits<std::decay_t<decltype(x)>>::add(x, y); });
}
inline RingElement sub(const RingElement& a, const RingElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return EuclideanTraits<std::decay_t<decltype(x)>>::sub(x, y); });
}
inline RingElement mul(const RingElement& a, const RingElement& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return EuclideanTraits<std::decay_t<decltype(x)>>::mul(x, y); });
}
/// Euclidean remainder of a modulo m.
inline RingElement rem(const RingElement& a, const RingElement& m) {
  return binary(a, m, [](const auto& x, const auto& y) { return reduce(x, y); });
}
inline bool divides(const RingElement& d, const RingElement& a) { return is_zero(rem(a, d)); }

inline RingElement pow(const RingElement& a, unsigned e, const RingElement& one) {
  RingElement out = one;
  for (unsigned k = 0; k < e; ++k) out = mul(out, a);
  return out;
}

inline RingElement crt_pair(const RingElement& a, const RingElement& m, const RingElement& b, const RingElement& n) {
  if (a.index() != m.index() || a.index() != b.index() || a.index() != n.index()) {
    fail(ErrorCode::InvalidArgument, "mixing elements of different rings");
  }
  return std::visit(
      [&](const auto& x) -> RingElement {
        using T = std::decay_t<decltype(x)>;
        return covercalc::crt_pair(x, std::get<T>(m), std::get<T>(b), std::get<T>(n));
      },
      a);
}

}  // namespace element

inline RingElement ring_zero(const RingHandle& ring) {
  switch (ring.kind()) {
    case RingKind::Integers: return std::int64_t{0};
    case RingKind::GaussianIntegers: return GaussianInt{0};
    case RingKind::PolyOverPrimeField: return FpPoly(ring.characteristic_p(), {});
    default: fail(ErrorCode::UnsupportedLiteral, "ring " + ring.to_string() + " has no concrete elements");
  }
}

inline RingElement ring_one(const RingHandle& ring) {
  switch (ring.kind()) {
    case RingKind::Integers: return std::int64_t{1};
    case RingKind::GaussianIntegers: return GaussianInt{1};
    case RingKind::PolyOverPrimeField: return FpPoly::constant(ring.characteristic_p(), 1);
    default: fail(ErrorCode::UnsupportedLiteral, "ring " + ring.to_string() + " has no concrete elements");
  }
}

inline RingElement ring_integer(const RingHandle& ring, std::int64_t n) {
  switch (ring.kind()) {
    case RingKind::Integers: return n;
    case RingKind::GaussianIntegers: return GaussianInt{n};
    case RingKind::PolyOverPrimeField: return FpPoly::constant(ring.characteristic_p(), n);
    default: fail(ErrorCode::UnsupportedLiteral, "ring " + ring.to_string() + " has no concrete elements");
  }
}

inline bool element_belongs(const RingHandle& ring, const RingElement& a) {
  switch (ring.kind()) {
    case RingKind::Integers: return std::holds_alternative<std::int64_t>(a);
    case RingKind::GaussianIntegers: return std::holds_alternative<GaussianInt>(a);
    case RingKind::PolyOverPrimeField:
      return std::holds_alternative<FpPoly>(a) && std::get<FpPoly>(a).modulus() == ring.characteristic_p();
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Maximal ideals

/// Whether m is a maximal ideal of ring (canonical form included).
inline bool ideal_belongs(const RingHandle& ring, const MaximalIdealId& m) {
  const auto& g = m.generator();
  switch (ring.kind()) {
    case RingKind::Integers: {
      const auto* p = std::get_if<std::int64_t>(&g);
      return p != nullptr && *p > 0 && arith::is_prime(static_cast<std::uint64_t>(*p));
    }
    case RingKind::GaussianIntegers: {
      const auto* z = std::get_if<GaussianInt>(&g);
      return z != nullptr && gaussian::canonical_associate(*z) == *z && gaussian::is_gaussian_prime(*z);
    }
    case RingKind::PolyOverPrimeField: {
      const auto* f = std::get_if<FpPoly>(&g);
      return f != nullptr && f->modulus() == ring.characteristic_p() && f->is_monic() && fp_poly::is_irreducible(*f);
    }
    case RingKind::Field: return false;
    case RingKind::AbstractLocal: {
      const auto* s = std::get_if<std::string>(&g);
      return s != nullptr && *s == ring.local_label();
    }
    case RingKind::AbstractDedekind: {
      const auto* s = std::get_if<std::string>(&g);
      if (s == nullptr) return false;
      const auto& ps = ring.declared_primes();
      return std::any_of(ps.begin(), ps.end(), [&](const DeclaredPrime& dp) { return dp.label == *s; });
    }
  }
  return false;
}

/// |R/𝔪|: p for ℤ, the norm for ℤ[i], p^deg for 𝔽_p[t], declared for abstract kinds.
inline Cardinal residue_cardinality(const RingHandle& ring, const MaximalIdealId& m) {
  if (!ideal_belongs(ring, m)) fail(ErrorCode::UnknownIdeal, "(" + m.to_string() + ") is not a maximal ideal of " + ring.to_string());
  const auto& g = m.generator();
  switch (ring.kind()) {
    case RingKind::Integers: return Cardinal(static_cast<std::uint64_t>(std::get<std::int64_t>(g)));
    case RingKind::GaussianIntegers: return Cardinal(static_cast<std::uint64_t>(std::get<GaussianInt>(g).norm()));
    case RingKind::PolyOverPrimeField:
      return Cardinal(arith::checked_pow(ring.characteristic_p(), static_cast<unsigned>(std::get<FpPoly>(g).degree())));
    case RingKind::AbstractLocal: return ring.declared_cardinal();
    case RingKind::AbstractDedekind:
      for (const auto& dp : ring.declared_primes()) {
        if (dp.label == std::get<std::string>(g)) return dp.residue;
      }
      break;
    case RingKind::Field: break;
  }
  fail(ErrorCode::UnknownIdeal, m.to_string());
}

/// |𝔪^{j-1}/𝔪^j|; equal to |R/𝔪| for every j since all supported rings are Dedekind.
inline Cardinal layer_cardinality(const RingHandle& ring, const MaximalIdealId& m, unsigned j) {
  if (j == 0) fail(ErrorCode::InvalidArgument, "layer index starts at 1");
  return residue_cardinality(ring, m);
}

inline Cardinal min_residue_cardinality(const RingHandle& ring) {
  switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::GaussianIntegers: return Cardinal(2);
    case RingKind::PolyOverPrimeField: return Cardinal(ring.characteristic_p());
    case RingKind::AbstractLocal:
    case RingKind::AbstractDedekind: return ring.declared_cardinal();
    case RingKind::Field: break;
  }
  fail(ErrorCode::NotApplicable, "a field has no nonzero maximal ideals");
}

/// Canonical order of ideals within a ring: by residue cardinality, then id.
inline bool canonical_less(const RingHandle& ring, const MaximalIdealId& a, const MaximalIdealId& b) {
  const Cardinal ra = residue_cardinality(ring, a);
  const Cardinal rb = residue_cardinality(ring, b);
  if (ra != rb) return ra < rb;
  return a < b;
}

/// Every maximal ideal with |R/𝔪| <= n, in canonical order.
inline std::vector<MaximalIdealId> maximal_ideals_with_residue_at_most(const RingHandle& ring, std::uint64_t n) {
  std::vector<MaximalIdealId> out;
  switch (ring.kind()) {
    case RingKind::Integers:
      for (auto p : arith::primes_up_to(n)) out.push_back(MaximalIdealId::integer(static_cast<std::int64_t>(p)));
      break;
    case RingKind::GaussianIntegers:
      for (auto p : arith::primes_up_to(n)) {
        for (auto z : gaussian::primes_above(p)) {
          if (static_cast<std::uint64_t>(z.norm()) <= n) out.push_back(MaximalIdealId::gaussian(z));
        }
      }
      break;
    case RingKind::PolyOverPrimeField: {
      const std::uint64_t p = ring.characteristic_p();
      std::uint64_t size = p;
      for (int d = 1; size <= n; ++d) {
        for (auto& f : fp_poly::monic_irreducibles(p, d)) out.push_back(MaximalIdealId::poly(f));
        if (size > n / p) break;
        size *= p;
      }
      break;
    }
    case RingKind::AbstractDedekind:
      for (const auto& dp : ring.declared_primes()) {
        if (dp.residue <= Cardinal(n)) out.push_back(MaximalIdealId::label(dp.label));
      }
      break;
    case RingKind::Field:
    case RingKind::AbstractLocal:
      fail(ErrorCode::NotEnumerable, "ring " + ring.to_string() + " has no enumerable prime list");
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const MaximalIdealId& a, const MaximalIdealId& b) { return canonical_less(ring, a, b); });
  return out;
}

/// The canonically least maximal ideal of minimal residue cardinality, if one is known.
inline std::optional<MaximalIdealId> least_maximal_ideal(const RingHandle& ring) {
  switch (ring.kind()) {
    case RingKind::Integers: return MaximalIdealId::integer(2);
    case RingKind::GaussianIntegers: return MaximalIdealId::gaussian({1, 1});
    case RingKind::PolyOverPrimeField: return MaximalIdealId::poly(FpPoly::monomial(ring.characteristic_p(), 1));
    case RingKind::AbstractLocal: return MaximalIdealId::label(ring.local_label());
    case RingKind::AbstractDedekind: {
      std::optional<MaximalIdealId> best;
      for (const auto& dp : ring.declared_primes()) {
        if (dp.residue != ring.declared_cardinal()) continue;
        auto id = MaximalIdealId::label(dp.label);
        if (!best || id < *best) best = id;
      }
      return best;
    }
    case RingKind::Field: return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Factorization

/// Factors the principal ideal generated by a concrete element.
inline FactoredIdeal factor_ideal(const RingHandle& ring, const RingElement& generator) {
  if (!ring.is_concrete()) {
    fail(ErrorCode::UnsupportedLiteral, "ring " + ring.to_string() + " accepts only factored ideals");
  }
  if (!element_belongs(ring, generator)) fail(ErrorCode::InvalidArgument, "element does not belong to " + ring.to_string());
  if (element::is_zero(generator)) return FactoredIdeal::zero();
  std::vector<FactoredIdeal::Factor> factors;
  switch (ring.kind()) {
    case RingKind::Integers: {
      const std::int64_t n = std::get<std::int64_t>(generator);
      for (auto [p, e] : arith::factor(static_cast<std::uint64_t>(n < 0 ? -n : n))) {
        factors.emplace_back(MaximalIdealId::integer(static_cast<std::int64_t>(p)), e);
      }
      break;
    }
    case RingKind::GaussianIntegers: {
      GaussianInt z = std::get<GaussianInt>(generator);
      for (auto [p, e] : arith::factor(static_cast<std::uint64_t>(z.norm()))) {
        (void)e;
        for (auto pi : gaussian::primes_above(p)) {
          unsigned k = 0;
          while (auto q = gaussian::exact_div(z, pi)) {
            z = *q;
            ++k;
          }
          if (k > 0) factors.emplace_back(MaximalIdealId::gaussian(pi), k);
        }
      }
      break;
    }
    case RingKind::PolyOverPrimeField:
      for (auto& [f, e] : fp_poly::factor(std::get<FpPoly>(generator))) factors.emplace_back(MaximalIdealId::poly(f), e);
      break;
    default: break;
  }
  return FactoredIdeal::from_factors(std::move(factors));
}

/// Validates already-factored input against the ring (the abstract-kind route).
inline FactoredIdeal factor_ideal(const RingHandle& ring, const FactoredIdeal& ideal) {
  for (const auto& [m, e] : ideal.factors()) {
    (void)e;
    if (!ideal_belongs(ring, m)) fail(ErrorCode::UnknownIdeal, "(" + m.to_string() + ") in " + ring.to_string());
  }
  return ideal;
}

/// A generator of the ideal: the product of its prime generators (concrete kinds only).
inline RingElement ideal_generator(const RingHandle& ring, const FactoredIdeal& ideal) {
  if (ideal.is_zero()) return ring_zero(ring);
  RingElement out = ring_one(ring);
  for (const auto& [m, e] : ideal.factors()) out = element::mul(out, element::pow(m.element(), e, ring_one(ring)));
  return out;
}

// ---------------------------------------------------------------------------
// Residue fields R/𝔪, with elements indexed 0..|R/𝔪|-1 in canonical order.

namespace residue {

/// For a split Gaussian prime a+bi of norm p, the integer r with i ≡ r (mod a+bi).
inline std::int64_t gaussian_i_image(GaussianInt pi) {
  const std::int64_t p = pi.norm();
  return arith::mod(arith::checked_mul(-pi.re, arith::inverse_mod_prime(pi.im, p)), p);
}

/// Index of the class of a in R/𝔪.
inline std::uint64_t index_of(const RingHandle& ring, const MaximalIdealId& m, const RingElement& a) {
  if (!element_belongs(ring, a)) fail(ErrorCode::InvalidArgument, "element does not belong to " + ring.to_string());
  switch (ring.kind()) {
    case RingKind::Integers: {
      const std::int64_t p = std::get<std::int64_t>(m.generator());
      return static_cast<std::uint64_t>(arith::mod(std::get<std::int64_t>(a), p));
    }
    case RingKind::GaussianIntegers: {
      const GaussianInt pi = std::get<GaussianInt>(m.generator());
      const GaussianInt z = std::get<GaussianInt>(a);
      if (pi.im == 0) {
        const std::int64_t p = pi.re;
        return static_cast<std::uint64_t>(arith::mod(z.re, p) + p * arith::mod(z.im, p));
      }
      const std::int64_t p = pi.norm();
      const std::int64_t r = gaussian_i_image(pi);
      return static_cast<std::uint64_t>(
          arith::mod(arith::checked_add(arith::mod(z.re, p), arith::checked_mul(arith::mod(z.im, p), r)), p));
    }
    case RingKind::PolyOverPrimeField: {
      const FpPoly& f = std::get<FpPoly>(m.generator());
      return divmod(std::get<FpPoly>(a), f).second.encoding();
    }
    default: fail(ErrorCode::UnsupportedLiteral, "ring " + ring.to_string() + " has no concrete elements");
  }
}

/// Canonical representative in R of residue class number idx.
inline RingElement lift(const RingHandle& ring, const MaximalIdealId& m, std::uint64_t idx) {
  switch (ring.kind()) {
    case RingKind::Integers: return static_cast<std::int64_t>(idx);
    case RingKind::GaussianIntegers: {
      const GaussianInt pi = std::get<GaussianInt>(m.generator());
      if (pi.im == 0) {
        const auto p = static_cast<std::uint64_t>(pi.re);
        return GaussianInt{static_cast<std::int64_t>(idx % p), static_cast<std::int64_t>(idx / p)};
      }
      return GaussianInt{static_cast<std::int64_t>(idx)};
    }
    case RingKind::PolyOverPrimeField: return FpPoly::from_encoding(ring.characteristic_p(), idx);
    default: fail(ErrorCode::UnsupportedLiteral, "ring " + ring.to_string() + " has no concrete elements");
  }
}

/// Display form of residue class idx; abstract residues are written r0, r1, ...
inline std::string to_string(const RingHandle& ring, const MaximalIdealId& m, std::uint64_t idx) {
  if (!ring.is_concrete()) return "r" + std::to_string(idx);
  return element::to_string(lift(ring, m, idx));
}

}  // namespace residue
}  // namespace covercalc
