#pragma once

/**
 * @file modules.hpp
 * @brief Symbolic direct sums of cyclic modules and their localization data.
 *
 * A ModuleDescriptor is
 *
 *     R^{free_rank} ⊕ ⊕_k (R/I_k)^{mult_k} [⊕ ⊕_{𝔪} R/𝔪] ⊕ 𝔽^{field_copies} ⊕ ⊕_𝔪 M_𝔪^{c_𝔪}
 *
 * where the bracketed family runs over every maximal ideal of R, 𝔽 is the
 * fraction field and M_𝔪 the Prüfer module at 𝔪. Counts are Cardinals, so
 * countably infinite sums are carried symbolically.
 *
 * NC(M) and q(M) only ever look at the reduced part (free + torsion + family).
 */

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covercalc/cardinal.hpp"
#include "covercalc/rings.hpp"

namespace covercalc {

struct TorsionSummand {
  FactoredIdeal annihilator;
  Cardinal multiplicity{1};
  friend bool operator==(const TorsionSummand&, const TorsionSummand&) = default;
};

class ModuleDescriptor {
 public:
  explicit ModuleDescriptor(RingHandle ring) : ring(std::move(ring)) {}

  RingHandle ring;
  Cardinal free_rank{0};
  std::vector<TorsionSummand> torsion;
  /// ⊕ over all maximal ideals 𝔪 of R/𝔪, one copy each (an infinite family).
  bool prime_family = false;
  Cardinal field_copies{0};
  std::vector<std::pair<MaximalIdealId, Cardinal>> pruefer;

  friend bool operator==(const ModuleDescriptor&, const ModuleDescriptor&) = default;

  bool has_divisible_part() const {
    if (!field_copies.is_zero()) return true;
    return std::any_of(pruefer.begin(), pruefer.end(), [](const auto& e) { return !e.second.is_zero(); });
  }

  bool is_zero_module() const {
    if (!free_rank.is_zero() || prime_family || has_divisible_part()) return false;
    return std::all_of(torsion.begin(), torsion.end(), [](const auto& t) { return t.multiplicity.is_zero(); });
  }

  /// |I|: the number of cyclic summands of the reduced part.
  Cardinal reduced_summand_count() const {
    Cardinal n = free_rank;
    for (const auto& t : torsion) n = n + t.multiplicity;
    if (prime_family) n = n + Cardinal::aleph0();
    return n;
  }

  /// Finitely many torsion summands and nothing else.
  bool is_finite_torsion() const {
    if (!free_rank.is_zero() || prime_family || has_divisible_part()) return false;
    return std::all_of(torsion.begin(), torsion.end(), [](const auto& t) { return t.multiplicity.is_finite(); });
  }
};

/// Throws SemanticError unless d satisfies the descriptor invariants.
inline void validate(const ModuleDescriptor& d) {
  for (const auto& t : d.torsion) {
    if (!t.annihilator.is_proper_nonzero()) {
      fail(ErrorCode::SemanticError, "torsion annihilator " + t.annihilator.to_string() + " must be proper and nonzero");
    }
    factor_ideal(d.ring, t.annihilator);
  }
  if (d.ring.is_field() && !d.torsion.empty()) fail(ErrorCode::SemanticError, "a field has no proper nonzero ideals");
  if (!d.ring.is_pid() && d.has_divisible_part()) {
    fail(ErrorCode::SemanticError, "field copies and Pruefer summands need a PID ring, not " + d.ring.to_string());
  }
  if (d.prime_family && !d.ring.has_infinite_spectrum()) {
    fail(ErrorCode::SemanticError, "sum over all primes needs infinitely many maximal ideals");
  }
  for (const auto& [m, c] : d.pruefer) {
    (void)c;
    if (!ideal_belongs(d.ring, m)) fail(ErrorCode::SemanticError, "Pruefer(" + m.to_string() + ") is not at a maximal ideal");
  }
}

// ---------------------------------------------------------------------------
// Normalization

struct LocalBlock {
  MaximalIdealId ideal;
  /// (exponent, multiplicity), exponents strictly decreasing.
  std::vector<std::pair<unsigned, Cardinal>> exponents;
  friend bool operator==(const LocalBlock&, const LocalBlock&) = default;

  /// Exponents listed with repetition; requires finite multiplicities.
  std::vector<unsigned> expanded() const {
    std::vector<unsigned> out;
    for (const auto& [e, c] : exponents) out.insert(out.end(), c.value(), e);
    return out;
  }
};

struct NormalizedDescriptor {
  RingHandle ring;
  Cardinal free_rank{0};
  std::vector<LocalBlock> blocks;
  bool prime_family = false;
  Cardinal field_copies{0};
  std::vector<std::pair<MaximalIdealId, Cardinal>> pruefer;

  friend bool operator==(const NormalizedDescriptor&, const NormalizedDescriptor&) = default;

  const LocalBlock* block(const MaximalIdealId& m) const {
    for (const auto& b : blocks) {
      if (b.ideal == m) return &b;
    }
    return nullptr;
  }

  /// Back to a descriptor with prime-power torsion, block by block.
  ModuleDescriptor to_descriptor() const {
    ModuleDescriptor d(ring);
    d.free_rank = free_rank;
    for (const auto& b : blocks) {
      for (const auto& [e, c] : b.exponents) d.torsion.push_back({FactoredIdeal::prime_power(b.ideal, e), c});
    }
    d.prime_family = prime_family;
    d.field_copies = field_copies;
    d.pruefer = pruefer;
    return d;
  }
};

/// CRT split of every torsion summand into prime-power summands, grouped into
/// local blocks ordered by (residue cardinality, id).
inline NormalizedDescriptor normalize(const ModuleDescriptor& d) {
  validate(d);
  std::map<MaximalIdealId, std::map<unsigned, Cardinal, std::greater<>>> grouped;
  for (const auto& t : d.torsion) {
    if (t.multiplicity.is_zero()) continue;
    for (const auto& [m, e] : t.annihilator.factors()) {
      auto& slot = grouped[m][e];
      slot = slot + t.multiplicity;
    }
  }
  NormalizedDescriptor out{d.ring, d.free_rank, {}, d.prime_family, d.field_copies, {}};
  for (auto& [m, exps] : grouped) out.blocks.push_back({m, {exps.begin(), exps.end()}});
  std::stable_sort(out.blocks.begin(), out.blocks.end(), [&](const LocalBlock& a, const LocalBlock& b) {
    return canonical_less(d.ring, a.ideal, b.ideal);
  });
  for (const auto& [m, c] : d.pruefer) {
    if (!c.is_zero()) out.pruefer.emplace_back(m, c);
  }
  std::stable_sort(out.pruefer.begin(), out.pruefer.end(),
                   [&](const auto& a, const auto& b) { return canonical_less(d.ring, a.first, b.first); });
  // merge repeated Prüfer keys
  std::vector<std::pair<MaximalIdealId, Cardinal>> merged;
  for (const auto& [m, c] : out.pruefer) {
    if (!merged.empty() && merged.back().first == m) {
      merged.back().second = merged.back().second + c;
    } else {
      merged.emplace_back(m, c);
    }
  }
  out.pruefer = std::move(merged);
  return out;
}

// ---------------------------------------------------------------------------
// NC(M), q(M)

struct NCSet {
  /// NC(M) = Specm(R).
  bool all = false;
  /// Explicit members in canonical order (empty when `all`).
  std::vector<MaximalIdealId> ideals;

  bool empty() const { return !all && ideals.empty(); }
  friend bool operator==(const NCSet&, const NCSet&) = default;

  std::string to_string() const {
    if (all) return "Specm(R)";
    std::string s = "{";
    for (std::size_t k = 0; k < ideals.size(); ++k) s += (k ? ", (" : "(") + ideals[k].to_string() + ")";
    return s + "}";
  }
};

namespace detail {

inline void require_not_field(const RingHandle& ring, const char* what) {
  if (ring.is_field()) fail(ErrorCode::NotApplicable, std::string(what) + " is not defined over a field");
}

/// Number of reduced summands localizing nonzero at each maximal ideal dividing some annihilator.
inline std::map<MaximalIdealId, Cardinal> torsion_local_counts(const ModuleDescriptor& d) {
  std::map<MaximalIdealId, Cardinal> counts;
  for (const auto& t : d.torsion) {
    if (t.multiplicity.is_zero()) continue;
    for (const auto& [m, e] : t.annihilator.factors()) {
      (void)e;
      auto& c = counts[m];
      c = c + t.multiplicity;
    }
  }
  return counts;
}

}  // namespace detail

/// Maximal ideals at which at least two reduced summands localize nonzero.
/// Free summands are nonzero everywhere, R/I exactly at the primes dividing I,
/// and the all-primes family once at every prime.
inline NCSet nc_set(const ModuleDescriptor& d) {
  detail::require_not_field(d.ring, "NC(M)");
  validate(d);
  const Cardinal everywhere = d.free_rank + Cardinal(d.prime_family ? 1 : 0);
  if (everywhere >= Cardinal(2)) return {true, {}};
  NCSet out;
  for (const auto& [m, c] : detail::torsion_local_counts(d)) {
    if (c + everywhere >= Cardinal(2)) out.ideals.push_back(m);
  }
  std::stable_sort(out.ideals.begin(), out.ideals.end(),
                   [&](const auto& a, const auto& b) { return canonical_less(d.ring, a, b); });
  return out;
}

/// min |R/𝔪| over NC(M); nullopt when NC(M) is empty.
inline std::optional<Cardinal> q_value(const ModuleDescriptor& d) {
  const NCSet nc = nc_set(d);
  if (nc.empty()) return std::nullopt;
  if (nc.all) return min_residue_cardinality(d.ring);
  std::optional<Cardinal> best;
  for (const auto& m : nc.ideals) {
    const Cardinal r = residue_cardinality(d.ring, m);
    if (!best || r < *best) best = r;
  }
  return best;
}

/// The canonically least 𝔪 ∈ NC(M) with |R/𝔪| = q(M), when one is known.
inline std::optional<MaximalIdealId> q_witness(const ModuleDescriptor& d) {
  const NCSet nc = nc_set(d);
  if (nc.empty()) return std::nullopt;
  if (nc.all) return least_maximal_ideal(d.ring);
  return nc.ideals.front();
}

// ---------------------------------------------------------------------------
// Reduced / divisible split

inline std::pair<ModuleDescriptor, ModuleDescriptor> reduced_divisible_split(const ModuleDescriptor& d) {
  if (!d.ring.is_pid()) fail(ErrorCode::NotApplicable, "reduced/divisible split needs a PID ring");
  validate(d);
  ModuleDescriptor red(d.ring);
  red.free_rank = d.free_rank;
  red.torsion = d.torsion;
  red.prime_family = d.prime_family;
  ModuleDescriptor div(d.ring);
  div.field_copies = d.field_copies;
  div.pruefer = d.pruefer;
  return {red, div};
}

// ---------------------------------------------------------------------------
// Summand addressing

/// One cyclic summand of the reduced part: a copy of a torsion entry, a free
/// copy, or the member R/𝔪 of the all-primes family.
struct SummandRef {
  enum class Part { Torsion, Free, Family };
  Part part = Part::Torsion;
  std::size_t entry = 0;
  std::uint64_t copy = 0;

  friend bool operator==(const SummandRef&, const SummandRef&) = default;

  std::string to_string() const {
    switch (part) {
      case Part::Torsion: return "torsion[" + std::to_string(entry) + "]#" + std::to_string(copy);
      case Part::Free: return "free#" + std::to_string(copy);
      case Part::Family: return "family";
    }
    return "?";
  }
};

/// The first `limit` summands (canonical order: torsion entries with their
/// copies, then free copies, then the family) whose localization at m is nonzero.
inline std::vector<SummandRef> summands_nonzero_at(const ModuleDescriptor& d, const MaximalIdealId& m,
                                                   std::size_t limit) {
  std::vector<SummandRef> out;
  for (std::size_t k = 0; k < d.torsion.size() && out.size() < limit; ++k) {
    const auto& t = d.torsion[k];
    if (t.annihilator.exponent(m) == 0) continue;
    for (std::uint64_t c = 0; Cardinal(c) < t.multiplicity && out.size() < limit; ++c) {
      out.push_back({SummandRef::Part::Torsion, k, c});
    }
  }
  for (std::uint64_t c = 0; Cardinal(c) < d.free_rank && out.size() < limit; ++c) {
    out.push_back({SummandRef::Part::Free, 0, c});
  }
  if (d.prime_family && out.size() < limit) out.push_back({SummandRef::Part::Family, 0, 0});
  return out;
}

// ---------------------------------------------------------------------------
// Rendering in the CLI grammar

inline std::string render_ideal_literal(const RingHandle& ring, const FactoredIdeal& ideal) {
  if (ring.is_concrete()) return element::to_string(ideal_generator(ring, ideal));
  std::string s;
  for (std::size_t k = 0; k < ideal.factors().size(); ++k) {
    if (k > 0) s += "*";
    s += ideal.factors()[k].first.to_string();
    if (ideal.factors()[k].second > 1) s += "^" + std::to_string(ideal.factors()[k].second);
  }
  return s;
}

inline std::string render(const ModuleDescriptor& d) {
  std::vector<std::string> parts;
  auto with_mult = [](std::string s, Cardinal c) { return c == Cardinal(1) ? s : s + "^" + c.to_string(); };
  for (const auto& t : d.torsion) {
    if (t.multiplicity.is_zero()) continue;
    parts.push_back(with_mult("R/(" + render_ideal_literal(d.ring, t.annihilator) + ")", t.multiplicity));
  }
  if (!d.free_rank.is_zero()) parts.push_back("R^" + d.free_rank.to_string());
  if (d.prime_family) parts.push_back("sum over all primes");
  if (!d.field_copies.is_zero()) parts.push_back("Q^" + d.field_copies.to_string());
  for (const auto& [m, c] : d.pruefer) {
    if (!c.is_zero()) parts.push_back("Pruefer(" + m.to_string() + ")^" + c.to_string());
  }
  std::string s = d.ring.to_string() + ": ";
  if (parts.empty()) return s + "0";
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? " + " : "") + parts[k];
  return s;
}

}  // namespace covercalc
