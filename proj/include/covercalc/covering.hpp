#pragma once

/**
 * @file covering.hpp
 * @brief σ(M): the least number of proper submodules whose union is M.
 *
 * Everything here is symbolic. For finite modules the oracle headers give
 * independent brute-force answers to compare against.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "covercalc/modules.hpp"

namespace covercalc {

/// Exactly one of: M is cyclic; M is a countable but not a finite union of
/// proper submodules; M is a finite union, threshold q+1 (q possibly infinite).
struct Trichotomy {
  enum class Kind { Cyclic, CountableNotFinite, FiniteThreshold };
  Kind kind = Kind::Cyclic;
  std::optional<Cardinal> q;
  std::optional<MaximalIdealId> witness;

  std::string to_string() const {
    switch (kind) {
      case Kind::Cyclic: return "cyclic";
      case Kind::CountableNotFinite: return "countable-not-finite";
      case Kind::FiniteThreshold: return "finite-threshold(" + q->to_string() + ")";
    }
    return "?";
  }
};

struct CoverAnswer {
  enum class Kind { NoCover, Threshold, UpperBoundOnly };
  Kind kind = Kind::NoCover;
  Cardinal value{0};
  std::string note;

  static CoverAnswer no_cover() { return {}; }
  static CoverAnswer threshold(Cardinal k) { return {Kind::Threshold, k, {}}; }
  static CoverAnswer upper_bound_only(Cardinal k) { return {Kind::UpperBoundOnly, k, "not finitely coverable"}; }

  friend bool operator==(const CoverAnswer& a, const CoverAnswer& b) { return a.kind == b.kind && a.value == b.value; }

  /// `no-cover`, `3`, `aleph0`, `upper-bound-only(aleph0)`.
  std::string to_string() const {
    switch (kind) {
      case Kind::NoCover: return "no-cover";
      case Kind::Threshold: return value.to_string();
      case Kind::UpperBoundOnly: return "upper-bound-only(" + value.to_string() + ")";
    }
    return "?";
  }
};

/// A projective point (λ:μ) of (R/𝔪)P¹, coordinates given as residue indices.
struct ProjectivePoint {
  std::uint64_t lambda = 0;
  std::uint64_t mu = 0;
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

struct LinesCover {
  MaximalIdealId m;
  Cardinal residue;
  std::pair<SummandRef, SummandRef> summand_pair;
  /// The line (λ:μ) stands for {x : μ·x̄ᵢ = λ·x̄ⱼ in R/𝔪}.
  std::vector<ProjectivePoint> lines;
  /// Set when the residue field is infinite: the lines exist but are not listed.
  bool symbolic = false;
};

struct CountableChain {
  enum class Kind { GrowingSubsum, PrueferChain, LocalizationChain };
  Kind kind = Kind::GrowingSubsum;
  std::optional<MaximalIdealId> at;
  std::string description;
};

struct CoverWitness {
  std::variant<LinesCover, CountableChain> value;

  bool is_lines() const { return std::holds_alternative<LinesCover>(value); }
  const LinesCover& lines() const { return std::get<LinesCover>(value); }
  const CountableChain& chain() const { return std::get<CountableChain>(value); }
};

inline std::string to_string(CountableChain::Kind k) {
  switch (k) {
    case CountableChain::Kind::GrowingSubsum: return "growing-subsum";
    case CountableChain::Kind::PrueferChain: return "pruefer-chain";
    case CountableChain::Kind::LocalizationChain: return "localization-chain";
  }
  return "?";
}

// ---------------------------------------------------------------------------

inline Trichotomy classify(const ModuleDescriptor& d) {
  detail::require_not_field(d.ring, "classify");
  if (d.has_divisible_part()) fail(ErrorCode::HasDivisiblePart, "classify takes reduced modules; use sigma");
  const NCSet nc = nc_set(d);
  if (nc.empty()) {
    if (d.reduced_summand_count().is_finite()) return {Trichotomy::Kind::Cyclic, std::nullopt, std::nullopt};
    return {Trichotomy::Kind::CountableNotFinite, std::nullopt, std::nullopt};
  }
  return {Trichotomy::Kind::FiniteThreshold, q_value(d), q_witness(d)};
}

/// ν₁(𝔽, I) for a vector space of dimension dim over a field of size field_card.
inline Cardinal nu1(Cardinal field_card, Cardinal dim_card) {
  if (dim_card < Cardinal(2)) fail(ErrorCode::DimensionTooSmall, "a space of dimension < 2 is not a union of proper subspaces");
  if (field_card.is_infinite() && dim_card.is_infinite()) return Cardinal::aleph0();
  return field_card.successor();
}

inline CoverAnswer sigma(const ModuleDescriptor& d) {
  validate(d);
  if (d.ring.is_field()) {
    const Cardinal dim = d.free_rank + d.field_copies;
    if (dim < Cardinal(2)) return CoverAnswer::no_cover();
    return CoverAnswer::threshold(nu1(d.ring.declared_cardinal(), dim));
  }
  if (d.is_zero_module()) return CoverAnswer::no_cover();

  if (d.has_divisible_part()) {
    const ModuleDescriptor red = reduced_divisible_split(d).first;
    const auto q = q_value(red);
    if (q && q->is_finite()) return CoverAnswer::threshold(q->successor());
    return CoverAnswer::threshold(Cardinal::aleph0());
  }

  const Trichotomy t = classify(d);
  switch (t.kind) {
    case Trichotomy::Kind::Cyclic: return CoverAnswer::no_cover();
    case Trichotomy::Kind::CountableNotFinite: return CoverAnswer::threshold(Cardinal::aleph0());
    case Trichotomy::Kind::FiniteThreshold: break;
  }
  const Cardinal q = *t.q;
  if (q.is_finite()) return CoverAnswer::threshold(q.successor());
  if (d.reduced_summand_count().is_infinite()) return CoverAnswer::threshold(Cardinal::aleph0());
  if (!d.free_rank.is_zero() && d.ring.has_infinite_spectrum()) return CoverAnswer::upper_bound_only(q);
  return CoverAnswer::threshold(q);
}

/// σ as a positive integer; nullopt stands for "no finite cover".
inline std::optional<std::uint64_t> sigma_integer(const ModuleDescriptor& d) {
  const CoverAnswer a = sigma(d);
  if (a.kind == CoverAnswer::Kind::Threshold && a.value.is_finite()) return a.value.value();
  return std::nullopt;
}

/// The modules (R/𝔪)² with |R/𝔪| < n, canonical order.
inline std::vector<ModuleDescriptor> s_set(const RingHandle& ring, std::uint64_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "s_set needs a positive bound");
  std::vector<ModuleDescriptor> out;
  if (n < 2) return out;
  for (const auto& m : maximal_ideals_with_residue_at_most(ring, n - 1)) {
    ModuleDescriptor d(ring);
    d.torsion.push_back({FactoredIdeal::prime_power(m, 1), Cardinal(2)});
    out.push_back(std::move(d));
  }
  return out;
}

/// All q+1 points of (R/𝔪)P¹: (1:0) first, then (λ:1) in residue order.
inline std::vector<ProjectivePoint> projective_line(std::uint64_t q) {
  std::vector<ProjectivePoint> out{{1, 0}};
  for (std::uint64_t l = 0; l < q; ++l) out.push_back({l, 1});
  return out;
}

namespace detail {

inline LinesCover lines_cover_at(const ModuleDescriptor& d, const MaximalIdealId& m) {
  const auto pair = summands_nonzero_at(d, m, 2);
  if (pair.size() < 2) fail(ErrorCode::NotCoverable, "fewer than two summands survive at (" + m.to_string() + ")");
  LinesCover w{m, residue_cardinality(d.ring, m), {pair[0], pair[1]}, {}, false};
  if (w.residue.is_finite()) {
    w.lines = projective_line(w.residue.value());
  } else {
    w.symbolic = true;
  }
  return w;
}

inline CountableChain growing_subsum() {
  return {CountableChain::Kind::GrowingSubsum, std::nullopt,
          "N_k = sum of the first k summands; each N_k is proper and every element lies in some N_k"};
}

}  // namespace detail

inline CoverWitness build_cover_witness(const ModuleDescriptor& d) {
  const CoverAnswer answer = sigma(d);
  if (answer.kind == CoverAnswer::Kind::NoCover) fail(ErrorCode::NotCoverable, render(d) + " is not a union of proper submodules");

  if (d.ring.is_field()) {
    if (answer.value == Cardinal::aleph0() && d.ring.declared_cardinal().is_infinite()) return {detail::growing_subsum()};
    const Cardinal q = d.ring.declared_cardinal();
    LinesCover w{MaximalIdealId::label("0"), q, {{SummandRef::Part::Free, 0, 0}, {SummandRef::Part::Free, 0, 1}}, {}, false};
    if (q.is_finite()) {
      w.lines = projective_line(q.value());
    } else {
      w.symbolic = true;
    }
    return {w};
  }

  if (d.has_divisible_part()) {
    const ModuleDescriptor red = reduced_divisible_split(d).first;
    const auto q = q_value(red);
    if (q && q->is_finite()) return {detail::lines_cover_at(red, *q_witness(red))};
    if (!d.field_copies.is_zero()) {
      const auto p = least_maximal_ideal(d.ring);
      std::string at = p ? p->to_string() : "p";
      return {CountableChain{CountableChain::Kind::LocalizationChain, p,
                             "0 < R_(" + at + ") < R_(" + at + ")/" + at + " < R_(" + at + ")/" + at + "^2 < ... inside one field copy"}};
    }
    const auto& m = d.pruefer.front().first;
    return {CountableChain{CountableChain::Kind::PrueferChain, m,
                           "0 < ann(" + m.to_string() + ") < ann(" + m.to_string() + "^2) < ... inside Pruefer(" +
                               m.to_string() + ")"}};
  }

  const Trichotomy t = classify(d);
  if (t.kind == Trichotomy::Kind::CountableNotFinite) return {detail::growing_subsum()};
  if (t.q->is_infinite() && d.reduced_summand_count().is_infinite()) return {detail::growing_subsum()};
  if (!t.witness) {
    LinesCover w{MaximalIdealId::label("m"), *t.q, {}, {}, true};
    return {w};
  }
  return {detail::lines_cover_at(d, *t.witness)};
}

}  // namespace covercalc
