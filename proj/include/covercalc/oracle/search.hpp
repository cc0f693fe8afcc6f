#pragma once

/**
 * @file search.hpp
 * @brief Brute-force σ and punctured φ, and elementwise witness checks.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covercalc/cosets.hpp"
#include "covercalc/covering.hpp"
#include "covercalc/oracle/set_cover.hpp"
#include "covercalc/oracle/submodules.hpp"

namespace covercalc::oracle {

struct CoverSearchResult {
  /// nullopt: no cover by proper parts exists.
  std::optional<std::size_t> size;
  std::vector<ElementSet> witness;
  std::uint64_t nodes = 0;
};

/// Exact least number of proper submodules covering M. Maximal submodules
/// suffice because every proper submodule lies in one; maximal_only = false
/// searches all proper submodules instead (for cross-checks).
inline CoverSearchResult min_submodule_cover(const FiniteModule& m, bool maximal_only = true, const OracleLimits& limits = {}) {
  if (m.size() > limits.sigma_bound) fail(ErrorCode::TooLarge, "sigma search is limited to order " + std::to_string(limits.sigma_bound));
  CoverSearchResult out;
  if (m.size() == 1) return out;
  std::vector<ElementSet> sets;
  for (auto& s : enumerate_submodules(m, maximal_only, limits)) {
    if (s.elements.count() < m.size()) sets.push_back(std::move(s.elements));
  }
  const auto r = exact_set_cover(ElementSet::full(m.size()), sets);
  out.nodes = r.nodes;
  if (!r.size) return out;
  out.size = *r.size;
  for (auto s : r.chosen) out.witness.push_back(sets[s]);
  return out;
}

/// A module is cyclic iff its maximal submodules fail to cover it.
inline bool is_cyclic_module(const FiniteModule& m, const OracleLimits& limits = {}) {
  if (m.size() == 1) return true;
  ElementSet reach(m.size());
  for (const auto& s : maximal_submodules(m, limits.sigma_bound)) reach |= s.elements;
  return reach.count() < m.size();
}

/// Cosets x + N of proper submodules N avoiding the puncture; with maximal_only,
/// just those not contained in another such coset.
inline std::vector<ElementSet> punctured_cosets(const FiniteModule& m, std::size_t puncture, bool maximal_only,
                                                const OracleLimits& limits = {}) {
  std::vector<ElementSet> cosets;
  for (const auto& sub : enumerate_submodules(m, false, limits)) {
    if (sub.elements.count() == m.size()) continue;
    const auto members = sub.elements.members();
    ElementSet assigned(m.size());
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (assigned.test(x)) continue;
      ElementSet c(m.size());
      for (auto n : members) c.set(m.add(x, n));
      assigned |= c;
      if (!c.test(puncture)) cosets.push_back(std::move(c));
    }
  }
  if (!maximal_only) return cosets;
  std::stable_sort(cosets.begin(), cosets.end(), [](const ElementSet& a, const ElementSet& b) { return a.count() > b.count(); });
  std::vector<ElementSet> kept;
  for (auto& c : cosets) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const ElementSet& k) { return c.subset_of(k); });
    if (!dominated) kept.push_back(std::move(c));
  }
  return kept;
}

/// Exact least number of cosets of proper submodules covering M minus the puncture.
inline CoverSearchResult min_coset_cover_punctured(const FiniteModule& m, std::size_t puncture, bool maximal_only = true,
                                                   const OracleLimits& limits = {}) {
  if (m.size() > limits.coset_bound) fail(ErrorCode::TooLarge, "coset search is limited to order " + std::to_string(limits.coset_bound));
  if (puncture >= m.size()) fail(ErrorCode::InvalidArgument, "puncture is not an element of the module");
  CoverSearchResult out;
  if (m.size() == 1) return out;
  const auto sets = punctured_cosets(m, puncture, maximal_only, limits);
  ElementSet target = ElementSet::full(m.size());
  target.reset(puncture);
  const auto r = exact_set_cover(target, sets);
  out.nodes = r.nodes;
  if (!r.size) return out;
  out.size = *r.size;
  for (auto s : r.chosen) out.witness.push_back(sets[s]);
  return out;
}

// ---------------------------------------------------------------------------
// Witness checks

/// Proper submodules whose union is M.
inline bool verify_submodule_cover(const FiniteModule& m, const std::vector<ElementSet>& parts) {
  ElementSet all(m.size());
  for (const auto& p : parts) {
    if (p.universe() != m.size()) fail(ErrorCode::ShapeMismatch, "part does not live in this module");
    if (p.count() == m.size() || !m.is_submodule(p)) return false;
    all |= p;
  }
  return all.count() == m.size();
}

/// Puncture-avoiding cosets of proper submodules whose union is M minus the puncture.
inline bool verify_coset_cover(const FiniteModule& m, const std::vector<ElementSet>& cosets, std::size_t puncture) {
  ElementSet all(m.size());
  for (const auto& c : cosets) {
    if (c.universe() != m.size()) fail(ErrorCode::ShapeMismatch, "coset does not live in this module");
    if (c.test(puncture) || c.empty()) return false;
    // c - x for any x in c must be a proper submodule
    const std::size_t x = c.members().front();
    ElementSet shifted(m.size());
    for (auto y : c.members()) shifted.set(m.add(y, m.neg(x)));
    if (shifted.count() == m.size() || !m.is_submodule(shifted)) return false;
    all |= c;
  }
  all.set(puncture);
  return all.count() == m.size();
}

/// The submodule {x : μ·x̄ᵢ = λ·x̄ⱼ in R/𝔪} of a materialized module.
inline ElementSet line_submodule(const MaterializedModule& mm, const LinesCover& w, const ProjectivePoint& line) {
  auto locate = [&](const SummandRef& ref) -> std::size_t {
    for (std::size_t s = 0; s < mm.summands.size(); ++s) {
      if (mm.summands[s].ref == ref) return s;
    }
    fail(ErrorCode::ShapeMismatch, "summand " + ref.to_string() + " is not part of the materialized module");
  };
  const std::size_t i = locate(w.summand_pair.first);
  const std::size_t j = locate(w.summand_pair.second);
  for (auto s : {i, j}) {
    if (mm.summands[s].annihilator.exponent(w.m) == 0) {
      fail(ErrorCode::ShapeMismatch, "summand does not survive at (" + w.m.to_string() + ")");
    }
  }
  const RingElement lambda = residue::lift(mm.ring, w.m, line.lambda);
  const RingElement mu = residue::lift(mm.ring, w.m, line.mu);
  ElementSet s(mm.size());
  for (std::size_t x = 0; x < mm.size(); ++x) {
    const RingElement v = element::sub(element::mul(mu, mm.component(i, x)), element::mul(lambda, mm.component(j, x)));
    if (residue::index_of(mm.ring, w.m, v) == 0) s.set(x);
  }
  return s;
}

inline bool verify_cover_witness(const MaterializedModule& mm, const LinesCover& w) {
  if (w.symbolic) fail(ErrorCode::ShapeMismatch, "symbolic witnesses cannot be checked elementwise");
  std::vector<ElementSet> parts;
  for (const auto& line : w.lines) parts.push_back(line_submodule(mm, w, line));
  return verify_submodule_cover(mm.module, parts);
}

inline bool verify_cover_witness(const MaterializedModule& mm, const CoverWitness& w) {
  if (!w.is_lines()) fail(ErrorCode::ShapeMismatch, "chain witnesses describe infinite modules");
  return verify_cover_witness(mm, w.lines());
}

/// The cosets of a constructed witness as element sets of the materialized R/I.
inline std::vector<ElementSet> coset_sets(const MaterializedModule& mm, const CosetCoverWitness& w) {
  if (mm.summands.size() != 1 || !(mm.summands.front().annihilator == w.ideal)) {
    fail(ErrorCode::ShapeMismatch, "witness is for " + w.target());
  }
  std::vector<ElementSet> out;
  for (const auto& c : w.cosets) {
    std::vector<std::size_t> gens;
    for (const auto& g : mm.summands.front().generators) gens.push_back(mm.embed(0, element::mul(c.generator, g)));
    const ElementSet sub = mm.module.span(gens);
    const std::size_t rep = mm.embed(0, c.representative);
    ElementSet coset(mm.size());
    for (auto n : sub.members()) coset.set(mm.module.add(rep, n));
    out.push_back(std::move(coset));
  }
  return out;
}

inline bool verify_cover_witness(const MaterializedModule& mm, const CosetCoverWitness& w) {
  return verify_coset_cover(mm.module, coset_sets(mm, w), mm.embed(0, w.puncture));
}

}  // namespace covercalc::oracle
