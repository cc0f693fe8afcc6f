#pragma once

/**
 * @file monoids.hpp
 * @brief Direct sums of cyclic commutative monoids: cyclic, a group, or a
 * union of two proper submonoids.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "covercalc/modules.hpp"

namespace covercalc {

/// ℤ_{≥0} (free) or ⟨f : f^{r+n} = f^r⟩ with index r and period n.
struct CyclicMonoid {
  bool free = false;
  std::uint64_t index = 0;
  std::uint64_t period = 1;

  static CyclicMonoid naturals() { return {true, 0, 1}; }
  static CyclicMonoid finite(std::uint64_t r, std::uint64_t n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "period must be at least 1");
    return {false, r, n};
  }

  bool is_group() const { return !free && index == 0; }
  bool is_trivial() const { return !free && index == 0 && period == 1; }
  friend bool operator==(const CyclicMonoid&, const CyclicMonoid&) = default;

  std::string to_string() const {
    if (free) return "N";
    return "C(" + std::to_string(index) + "," + std::to_string(period) + ")";
  }
};

struct MonoidDescriptor {
  std::vector<CyclicMonoid> summands;

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < summands.size(); ++k) s += (k ? " + " : "") + summands[k].to_string();
    return s;
  }
};

/// One part of a two-submonoid partition, described through the pivot summand.
struct MonoidPart {
  enum class Rule {
    /// Elements whose pivot coordinate is 0.
    PivotZero,
    /// Elements whose pivot coordinate is nonzero, together with 0.
    PivotNonzeroOrOrigin,
  };
  Rule rule = Rule::PivotZero;
  std::size_t pivot = 0;

  bool contains(const std::vector<std::uint64_t>& x) const {
    const bool pivot_zero = x[pivot] == 0;
    if (rule == Rule::PivotZero) return pivot_zero;
    return !pivot_zero || std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; });
  }

  std::string to_string() const {
    const std::string c = "x" + std::to_string(pivot);
    return rule == Rule::PivotZero ? "{x : " + c + " = 0}" : "{x : " + c + " != 0} u {0}";
  }
};

struct MonoidAnswer {
  enum class Kind { CyclicMonoid, IsGroup, TwoSubmonoids };
  Kind kind = Kind::CyclicMonoid;
  std::optional<ModuleDescriptor> delegate;
  std::vector<MonoidPart> parts;

  std::string to_string() const {
    switch (kind) {
      case Kind::CyclicMonoid: return "cyclic-monoid";
      case Kind::IsGroup: return "is-group";
      case Kind::TwoSubmonoids: return "two-submonoids";
    }
    return "?";
  }
};

/// Trivial summands C(0,1) are ignored: they change neither the monoid nor its covers.
inline MonoidAnswer classify_monoid(const MonoidDescriptor& d) {
  if (d.summands.empty()) fail(ErrorCode::EmptyDescriptor, "a monoid descriptor needs at least one summand");
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < d.summands.size(); ++k) {
    if (!d.summands[k].is_trivial()) kept.push_back(k);
  }
  MonoidAnswer out;
  if (kept.size() <= 1) return out;

  const bool all_groups = std::all_of(kept.begin(), kept.end(), [&](auto k) { return d.summands[k].is_group(); });
  if (all_groups) {
    ModuleDescriptor g(RingHandle::integers());
    for (auto k : kept) {
      g.torsion.push_back({factor_ideal(g.ring, RingElement(static_cast<std::int64_t>(d.summands[k].period))), Cardinal(1)});
    }
    out.kind = MonoidAnswer::Kind::IsGroup;
    out.delegate = std::move(g);
    return out;
  }
  std::size_t pivot = 0;
  for (auto k : kept) {
    if (!d.summands[k].is_group()) {
      pivot = k;
      break;
    }
  }
  out.kind = MonoidAnswer::Kind::TwoSubmonoids;
  out.parts = {{MonoidPart::Rule::PivotNonzeroOrOrigin, pivot}, {MonoidPart::Rule::PivotZero, pivot}};
  return out;
}

/// a + b in one summand, or nullopt when a free coordinate leaves [0, bound].
inline std::optional<std::uint64_t> truncated_add(const CyclicMonoid& c, std::uint64_t a, std::uint64_t b, std::uint64_t bound) {
  const std::uint64_t s = a + b;
  if (c.free) return s <= bound ? std::optional<std::uint64_t>(s) : std::nullopt;
  if (s < c.index + c.period) return s;
  return c.index + (s - c.index) % c.period;
}

/// Exhaustive check of a two-part answer on the monoid truncated at `bound`
/// per free summand: both parts contain 0 and are closed wherever the sum is
/// defined, they meet only in 0, and together they give everything.
inline bool verify_monoid_partition(const MonoidDescriptor& d, const MonoidAnswer& answer, std::uint64_t bound = 10) {
  if (answer.kind != MonoidAnswer::Kind::TwoSubmonoids || answer.parts.size() != 2) return false;
  for (const auto& part : answer.parts) {
    if (part.pivot >= d.summands.size()) return false;
  }
  std::vector<std::uint64_t> sizes;
  for (const auto& c : d.summands) sizes.push_back(c.free ? bound + 1 : c.index + c.period);

  std::vector<std::vector<std::uint64_t>> elements{{}};
  for (auto n : sizes) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& e : elements) {
      for (std::uint64_t v = 0; v < n; ++v) {
        next.push_back(e);
        next.back().push_back(v);
      }
    }
    elements = std::move(next);
  }

  const auto& a = answer.parts[0];
  const auto& b = answer.parts[1];
  const std::vector<std::uint64_t> origin(d.summands.size(), 0);
  if (!a.contains(origin) || !b.contains(origin)) return false;
  bool a_proper = false;
  bool b_proper = false;
  for (const auto& x : elements) {
    const bool in_a = a.contains(x);
    const bool in_b = b.contains(x);
    if (!in_a && !in_b) return false;
    if (in_a && in_b && x != origin) return false;
    a_proper = a_proper || !in_a;
    b_proper = b_proper || !in_b;
  }
  if (!a_proper || !b_proper) return false;

  for (const auto* part : {&a, &b}) {
    std::vector<const std::vector<std::uint64_t>*> members;
    for (const auto& x : elements) {
      if (part->contains(x)) members.push_back(&x);
    }
    for (const auto* x : members) {
      for (const auto* y : members) {
        std::vector<std::uint64_t> s(d.summands.size());
        bool defined = true;
        for (std::size_t k = 0; k < s.size() && defined; ++k) {
          const auto v = truncated_add(d.summands[k], (*x)[k], (*y)[k], bound);
          if (v) {
            s[k] = *v;
          } else {
            defined = false;
          }
        }
        if (defined && !part->contains(s)) return false;
      }
    }
  }
  return true;
}

}  // namespace covercalc
