#pragma once

/**
 * @file finite_module.hpp
 * @brief Finite modules as ⊕ ℤ/dᵢ with integer action matrices, and the
 * materialization of finite torsion descriptors over ℤ, ℤ[i] and 𝔽_p[t].
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "covercalc/modules.hpp"
#include "covercalc/oracle/element_set.hpp"
#include "covercalc/smith.hpp"

namespace covercalc::oracle {

using IntMatrix = Matrix<std::int64_t>;

struct OracleLimits {
  std::uint64_t sigma_bound = 4096;
  std::uint64_t all_subgroups_bound = 64;
  std::uint64_t coset_bound = 32;
};

/// ⊕ ℤ/dᵢ together with endomorphisms generating the ring action.
/// Elements are indexed in mixed radix, the last coordinate varying fastest.
class FiniteModule {
 public:
  FiniteModule() = default;
  FiniteModule(std::vector<std::uint64_t> orders, std::vector<IntMatrix> actions, std::uint64_t bound = 4096)
      : orders_(std::move(orders)), actions_(std::move(actions)) {
    std::uint64_t n = 1;
    for (auto d : orders_) {
      if (d == 0) fail(ErrorCode::InvalidArgument, "cyclic orders must be positive");
      if (n > bound / d) fail(ErrorCode::TooLarge, "module order exceeds the bound " + std::to_string(bound));
      n *= d;
    }
    size_ = n;
    strides_.assign(orders_.size(), 1);
    for (std::size_t i = orders_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * orders_[i];
    const std::size_t k = orders_.size();
    for (const auto& a : actions_) {
      if (a.size() != k) fail(ErrorCode::ShapeMismatch, "action matrix has the wrong number of rows");
      for (std::size_t i = 0; i < k; ++i) {
        if (a[i].size() != k) fail(ErrorCode::ShapeMismatch, "action matrix has the wrong number of columns");
        for (std::size_t j = 0; j < k; ++j) {
          // d_j·e_j = 0 must map to 0.
          const auto di = static_cast<std::int64_t>(orders_[i]);
          const auto dj = static_cast<std::int64_t>(orders_[j]);
          if (arith::mod(arith::checked_mul(a[i][j] % di, dj), di) != 0) {
            fail(ErrorCode::InvalidArgument, "action matrix is not well defined on the generators");
          }
        }
      }
    }
  }

  std::size_t size() const { return static_cast<std::size_t>(size_); }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<std::uint64_t>& orders() const { return orders_; }
  const std::vector<IntMatrix>& actions() const { return actions_; }

  std::vector<std::int64_t> decode(std::size_t idx) const {
    std::vector<std::int64_t> x(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      x[i] = static_cast<std::int64_t>((idx / strides_[i]) % orders_[i]);
    }
    return x;
  }

  std::size_t encode(const std::vector<std::int64_t>& x) const {
    if (x.size() != orders_.size()) fail(ErrorCode::ShapeMismatch, "coordinate vector has the wrong length");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      idx += static_cast<std::uint64_t>(arith::mod(x[i], static_cast<std::int64_t>(orders_[i]))) * strides_[i];
    }
    return static_cast<std::size_t>(idx);
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::uint64_t s = (a / strides_[i]) % orders_[i] + (b / strides_[i]) % orders_[i];
      idx += (s % orders_[i]) * strides_[i];
    }
    return static_cast<std::size_t>(idx);
  }

  std::size_t neg(std::size_t a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::uint64_t v = (a / strides_[i]) % orders_[i];
      idx += ((orders_[i] - v) % orders_[i]) * strides_[i];
    }
    return static_cast<std::size_t>(idx);
  }

  std::size_t apply(const IntMatrix& a, std::size_t x) const {
    const auto v = decode(x);
    std::vector<std::int64_t> out(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto di = static_cast<std::int64_t>(orders_[i]);
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < v.size(); ++j) acc = arith::mod(acc + arith::mod(a[i][j], di) * v[j], di);
      out[i] = acc;
    }
    return encode(out);
  }

  /// Additive span of the given elements.
  ElementSet span(const std::vector<std::size_t>& gens) const {
    ElementSet s(size());
    s.set(0);
    std::vector<std::size_t> members{0};
    for (auto g : gens) {
      if (s.test(g)) continue;
      // members + <g>, stepping through multiples of g until we are back in s
      std::vector<std::size_t> fresh;
      for (std::size_t m = g; !s.test(m); m = add(m, g)) {
        for (auto x : members) {
          const std::size_t y = add(x, m);
          if (!s.test(y)) {
            s.set(y);
            fresh.push_back(y);
          }
        }
      }
      members.insert(members.end(), fresh.begin(), fresh.end());
    }
    return s;
  }

  /// Smallest submodule containing the given elements.
  ElementSet submodule_span(std::vector<std::size_t> gens) const {
    ElementSet s = span(gens);
    while (true) {
      bool grew = false;
      for (auto x : s.members()) {
        for (const auto& a : actions_) {
          const std::size_t y = apply(a, x);
          if (!s.test(y)) {
            gens.push_back(y);
            grew = true;
          }
        }
      }
      if (!grew) return s;
      s = span(gens);
    }
  }

  bool is_subgroup(const ElementSet& s) const { return s.test(0) && span(s.members()) == s; }

  bool is_invariant(const ElementSet& s) const {
    for (auto x : s.members()) {
      for (const auto& a : actions_) {
        if (!s.test(apply(a, x))) return false;
      }
    }
    return true;
  }

  bool is_submodule(const ElementSet& s) const { return is_subgroup(s) && is_invariant(s); }

 private:
  std::vector<std::uint64_t> orders_;
  std::vector<IntMatrix> actions_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 1;
};

// ---------------------------------------------------------------------------
// Materialization

/// One cyclic summand R/I of a materialized descriptor, occupying a block of coordinates.
struct MaterializedSummand {
  SummandRef ref;
  FactoredIdeal annihilator;
  std::size_t offset = 0;
  std::size_t width = 0;
  /// Ring element represented by each coordinate generator.
  std::vector<RingElement> generators;
  /// Gaussian only: the transform taking (re, im) to summand coordinates.
  IntMatrix to_coords;
};

class MaterializedModule {
 public:
  RingHandle ring;
  FiniteModule module;
  std::vector<MaterializedSummand> summands;

  std::size_t size() const { return module.size(); }

  /// The ring element in R/I carried by summand s of element x.
  RingElement component(std::size_t s, std::size_t x) const {
    const auto& sm = summands.at(s);
    const auto v = module.decode(x);
    RingElement out = ring_zero(ring);
    for (std::size_t k = 0; k < sm.width; ++k) {
      out = element::add(out, element::mul(ring_integer(ring, v[sm.offset + k]), sm.generators[k]));
    }
    return out;
  }

  /// Coordinates of a ring element placed in summand s (all other summands zero).
  std::vector<std::int64_t> coords_in(std::size_t s, const RingElement& a) const {
    const auto& sm = summands.at(s);
    std::vector<std::int64_t> v(module.rank(), 0);
    switch (ring.kind()) {
      case RingKind::Integers: v[sm.offset] = std::get<std::int64_t>(a); break;
      case RingKind::PolyOverPrimeField: {
        const FpPoly& f = std::get<FpPoly>(ideal_generator(ring, sm.annihilator));
        const FpPoly r = divmod(std::get<FpPoly>(a), f).second;
        for (std::size_t k = 0; k < sm.width; ++k) v[sm.offset + k] = static_cast<std::int64_t>(r.coeff(k));
        break;
      }
      case RingKind::GaussianIntegers: {
        const GaussianInt z = std::get<GaussianInt>(a);
        for (std::size_t k = 0; k < sm.width; ++k) {
          v[sm.offset + k] = arith::checked_add(arith::checked_mul(sm.to_coords[k][0], z.re),
                                                arith::checked_mul(sm.to_coords[k][1], z.im));
        }
        break;
      }
      default: fail(ErrorCode::UnsupportedRing, ring.to_string());
    }
    return v;
  }

  std::size_t embed(std::size_t s, const RingElement& a) const { return module.encode(coords_in(s, a)); }

  /// Multiplication by a ring element, as a matrix on the coordinates.
  IntMatrix multiplication_matrix(const RingElement& r) const {
    const std::size_t k = module.rank();
    IntMatrix m(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t s = 0; s < summands.size(); ++s) {
      const auto& sm = summands[s];
      for (std::size_t j = 0; j < sm.width; ++j) {
        const auto col = coords_in(s, element::mul(r, sm.generators[j]));
        for (std::size_t i = 0; i < k; ++i) m[i][sm.offset + j] = col[i];
      }
    }
    return m;
  }
};

namespace detail {

struct SummandShape {
  std::vector<std::uint64_t> orders;
  IntMatrix action;  // empty over ℤ
  std::vector<RingElement> generators;
  IntMatrix to_coords;
};

inline std::uint64_t quotient_order(const RingHandle& ring, const FactoredIdeal& ideal) {
  std::uint64_t n = 1;
  for (const auto& [m, e] : ideal.factors()) {
    n = arith::checked_mul(n, arith::checked_pow(residue_cardinality(ring, m).value(), e));
  }
  return n;
}

inline SummandShape shape_of(const RingHandle& ring, const FactoredIdeal& ideal) {
  SummandShape out;
  const RingElement g = ideal_generator(ring, ideal);
  switch (ring.kind()) {
    case RingKind::Integers: {
      const std::int64_t n = std::get<std::int64_t>(g);
      out.orders = {static_cast<std::uint64_t>(n < 0 ? -n : n)};
      out.generators = {RingElement(std::int64_t{1})};
      break;
    }
    case RingKind::PolyOverPrimeField: {
      const FpPoly f = std::get<FpPoly>(g).monic();
      const std::uint64_t p = ring.characteristic_p();
      const auto n = static_cast<std::size_t>(f.degree());
      out.orders.assign(n, p);
      out.action.assign(n, std::vector<std::int64_t>(n, 0));
      for (std::size_t j = 0; j + 1 < n; ++j) out.action[j + 1][j] = 1;
      for (std::size_t i = 0; i < n; ++i) {
        out.action[i][n - 1] = static_cast<std::int64_t>((p - f.coeff(i)) % p);
      }
      for (std::size_t k = 0; k < n; ++k) out.generators.emplace_back(FpPoly::monomial(p, static_cast<unsigned>(k)));
      break;
    }
    case RingKind::GaussianIntegers: {
      const GaussianInt a = std::get<GaussianInt>(g);
      // columns: a·1 and a·i in (re, im) coordinates
      const IntMatrix lattice{{a.re, -a.im}, {a.im, a.re}};
      const auto snf = smith_normal_form(lattice, std::int64_t{0});
      const IntMatrix& u = snf.U;
      const std::int64_t det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
      const IntMatrix u_inv{{u[1][1] * det, -u[0][1] * det}, {-u[1][0] * det, u[0][0] * det}};
      const IntMatrix j_mat{{0, -1}, {1, 0}};
      const IntMatrix conj = multiply(multiply(u, j_mat, std::int64_t{0}), u_inv, std::int64_t{0});
      std::vector<std::size_t> kept;
      for (std::size_t k = 0; k < 2; ++k) {
        if (snf.diagonal[k] != 1) kept.push_back(k);
      }
      for (auto r : kept) {
        out.orders.push_back(static_cast<std::uint64_t>(snf.diagonal[r]));
        out.generators.emplace_back(GaussianInt{u_inv[0][r], u_inv[1][r]});
        out.to_coords.push_back(u[r]);
        std::vector<std::int64_t> row;
        for (auto c : kept) row.push_back(conj[r][c]);
        out.action.push_back(row);
      }
      break;
    }
    default: fail(ErrorCode::UnsupportedRing, "materialization supports Z, Zi and Fp[t], not " + ring.to_string());
  }
  return out;
}

}  // namespace detail

/// Materializes a finite torsion descriptor, one R/I block per torsion copy
/// (annihilators are not CRT-split, so ℤ/12 ⊕ ℤ/18 has orders [12, 18]).
inline MaterializedModule materialize(const ModuleDescriptor& d, std::uint64_t bound = 4096) {
  validate(d);
  const RingKind kind = d.ring.kind();
  if (kind != RingKind::Integers && kind != RingKind::GaussianIntegers && kind != RingKind::PolyOverPrimeField) {
    fail(ErrorCode::UnsupportedRing, "materialization supports Z, Zi and Fp[t], not " + d.ring.to_string());
  }
  if (!d.is_finite_torsion()) fail(ErrorCode::TooLarge, render(d) + " is not a finite module");

  std::uint64_t total = 1;
  for (const auto& t : d.torsion) {
    if (t.multiplicity.value() > 64) fail(ErrorCode::TooLarge, "too many summands");
    for (std::uint64_t c = 0; c < t.multiplicity.value(); ++c) {
      const std::uint64_t n = detail::quotient_order(d.ring, t.annihilator);
      if (n > bound / total) fail(ErrorCode::TooLarge, "module order exceeds the bound " + std::to_string(bound));
      total *= n;
    }
  }

  MaterializedModule out{d.ring, {}, {}};
  std::vector<std::uint64_t> orders;
  std::vector<std::pair<std::size_t, IntMatrix>> blocks;
  for (std::size_t e = 0; e < d.torsion.size(); ++e) {
    const auto& t = d.torsion[e];
    for (std::uint64_t c = 0; c < t.multiplicity.value(); ++c) {
      auto shape = detail::shape_of(d.ring, t.annihilator);
      MaterializedSummand sm{{SummandRef::Part::Torsion, e, c}, t.annihilator, orders.size(), shape.orders.size(),
                             std::move(shape.generators), std::move(shape.to_coords)};
      blocks.emplace_back(orders.size(), std::move(shape.action));
      orders.insert(orders.end(), shape.orders.begin(), shape.orders.end());
      out.summands.push_back(std::move(sm));
    }
  }
  std::vector<IntMatrix> actions;
  if (kind != RingKind::Integers) {
    const std::size_t k = orders.size();
    IntMatrix a(k, std::vector<std::int64_t>(k, 0));
    for (const auto& [offset, m] : blocks) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) a[offset + i][offset + j] = m[i][j];
      }
    }
    actions.push_back(std::move(a));
  }
  out.module = FiniteModule(std::move(orders), std::move(actions), bound);
  return out;
}

}  // namespace covercalc::oracle
