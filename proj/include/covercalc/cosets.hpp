#pragma once

/**
 * @file cosets.hpp
 * @brief φ(M): the least number of cosets of proper submodules covering M
 * minus one point, together with the explicit cover for cyclic R/I.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "covercalc/modules.hpp"

namespace covercalc {

/// φ'(𝔪, n) = Σ_{j=1..n} (|𝔪^{j-1}/𝔪^j| - 1).
inline std::uint64_t phi_prime(const RingHandle& ring, const MaximalIdealId& m, unsigned n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "phi_prime needs n >= 1");
  std::uint64_t total = 0;
  for (unsigned j = 1; j <= n; ++j) {
    const Cardinal layer = layer_cardinality(ring, m, j);
    if (layer.is_infinite()) fail(ErrorCode::InfiniteResidue, "R/(" + m.to_string() + ") is infinite");
    total = arith::checked_add(static_cast<std::int64_t>(total), static_cast<std::int64_t>(layer.value() - 1));
  }
  return total;
}

inline std::uint64_t phi_cyclic(const RingHandle& ring, const FactoredIdeal& ideal) {
  if (ideal.is_zero()) fail(ErrorCode::ZeroIdeal, "R/(0) is not finite");
  if (ideal.is_unit()) fail(ErrorCode::UnitIdeal, "R/(1) is the zero module");
  const FactoredIdeal checked = factor_ideal(ring, ideal);
  std::uint64_t total = 0;
  for (const auto& [m, e] : checked.factors()) total += phi_prime(ring, m, e);
  return total;
}

/// Szegedy: Σ over primes p of (p - 1)·v_p(|G|) for G = ⊕ ℤ/dᵢ.
inline std::uint64_t phi_finite_abelian(const std::vector<std::uint64_t>& orders) {
  std::uint64_t total = 0;
  bool nontrivial = false;
  for (auto d : orders) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "cyclic orders must be positive");
    if (d > 1) nontrivial = true;
    for (auto [p, e] : arith::factor(d)) total += e * (p - 1);
  }
  if (!nontrivial) fail(ErrorCode::TrivialGroup, "the trivial group has no punctured cover");
  return total;
}

/// Jamison / Brouwer–Schrijver: n(q-1) affine hyperplanes cover 𝔽_q^n minus a point.
inline std::uint64_t phi_vector_space(std::uint64_t q, std::uint64_t n) {
  if (q < 2 || arith::prime_power(q).first == 0) fail(ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
  if (n == 0) fail(ErrorCode::InvalidArgument, "dimension must be positive");
  return arith::checked_mul(n, q - 1);
}

struct ConjectureValue {
  std::uint64_t value = 0;
  /// False when a theorem covers the case: cyclic input, or any ℤ-module.
  bool conjectural = true;
};

/// Σ φ'(𝔪ᵢ, nᵢ) for ⊕ R/𝔪ᵢ^{nᵢ}.
inline ConjectureValue phi_conjecture_value(const RingHandle& ring, const std::vector<std::pair<MaximalIdealId, unsigned>>& blocks) {
  if (blocks.empty()) fail(ErrorCode::EmptyDescriptor, "no blocks given");
  ConjectureValue out;
  std::vector<MaximalIdealId> seen;
  bool repeated = false;
  for (const auto& [m, n] : blocks) {
    out.value += phi_prime(ring, m, n);
    for (const auto& s : seen) repeated = repeated || s == m;
    seen.push_back(m);
  }
  out.conjectural = repeated && ring.kind() != RingKind::Integers;
  return out;
}

/// Prime-power blocks of a finite torsion descriptor, as (𝔪, n) pairs.
inline std::vector<std::pair<MaximalIdealId, unsigned>> prime_power_blocks(const ModuleDescriptor& d) {
  if (!d.is_finite_torsion()) fail(ErrorCode::NotApplicable, "phi needs finitely many torsion summands and nothing else");
  std::vector<std::pair<MaximalIdealId, unsigned>> out;
  const NormalizedDescriptor n = normalize(d);
  for (const auto& b : n.blocks) {
    for (unsigned e : b.expanded()) out.emplace_back(b.ideal, e);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Coset {
  /// The submodule J/I of R/I, given by the ideal J ⊇ I and a generator of J.
  FactoredIdeal submodule;
  RingElement generator;
  RingElement representative;
};

struct CosetCoverWitness {
  RingHandle ring;
  FactoredIdeal ideal;
  RingElement puncture;
  std::vector<Coset> cosets;

  std::string target() const {
    ModuleDescriptor d(ring);
    d.torsion.push_back({ideal, Cardinal(1)});
    return render(d);
  }
};

/// The explicit punctured cover of R/I with exactly phi_cyclic(ring, I) cosets.
///
/// Blocks 𝔪_b^{n_b} are taken in canonical order; with K_b the product of the
/// earlier blocks, layer j of block b contributes the cosets of K_b·𝔪_b^j whose
/// representatives vanish away from b and are r·π_b^{j-1} at b, r ≠ 0 in R/𝔪_b.
/// A nonzero x lands in the first block where it is nonzero, at layer v(x)+1.
inline CosetCoverWitness build_coset_cover(const RingHandle& ring, const FactoredIdeal& ideal, const RingElement& puncture) {
  if (!ring.is_concrete()) fail(ErrorCode::NotMaterializable, "ring " + ring.to_string() + " has no concrete elements");
  if (ideal.is_zero()) fail(ErrorCode::ZeroIdeal, "R/(0) is not finite");
  if (ideal.is_unit()) fail(ErrorCode::UnitIdeal, "R/(1) is the zero module");
  if (!element_belongs(ring, puncture)) fail(ErrorCode::InvalidArgument, "puncture does not belong to " + ring.to_string());
  const FactoredIdeal I = factor_ideal(ring, ideal);

  std::vector<std::pair<MaximalIdealId, unsigned>> blocks(I.factors().begin(), I.factors().end());
  std::stable_sort(blocks.begin(), blocks.end(),
                   [&](const auto& a, const auto& b) { return canonical_less(ring, a.first, b.first); });

  const RingElement one = ring_one(ring);
  const RingElement zero = ring_zero(ring);
  const RingElement g = ideal_generator(ring, I);

  CosetCoverWitness out{ring, I, element::rem(puncture, g), {}};
  RingElement earlier = one;
  std::vector<FactoredIdeal::Factor> earlier_factors;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& [m, n] = blocks[b];
    const RingElement pi = m.element();
    const RingElement block_power = element::pow(pi, n, one);
    RingElement later = one;
    for (std::size_t c = b + 1; c < blocks.size(); ++c) {
      later = element::mul(later, element::pow(blocks[c].first.element(), blocks[c].second, one));
    }
    const RingElement away = element::mul(earlier, later);
    const std::uint64_t q = residue_cardinality(ring, m).value();
    for (unsigned j = 1; j <= n; ++j) {
      auto factors = earlier_factors;
      factors.emplace_back(m, j);
      const FactoredIdeal J = FactoredIdeal::from_factors(factors);
      const RingElement jgen = element::mul(earlier, element::pow(pi, j, one));
      const RingElement step = element::pow(pi, j - 1, one);
      for (std::uint64_t r = 1; r < q; ++r) {
        const RingElement local = element::rem(element::mul(residue::lift(ring, m, r), step), block_power);
        RingElement x = element::crt_pair(zero, away, local, block_power);
        x = element::rem(element::add(x, puncture), jgen);
        out.cosets.push_back({J, jgen, x});
      }
    }
    earlier = element::mul(earlier, block_power);
    earlier_factors.emplace_back(m, n);
  }
  return out;
}

}  // namespace covercalc
