#pragma once

/**
 * @file submodules.hpp
 * @brief Submodule enumeration for finite modules.
 *
 * All subgroups come from Hermite normal forms of lattices between diag(dᵢ)
 * and ℤ^k; maximal submodules come from the simple quotients of M/pM.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "covercalc/oracle/finite_module.hpp"

namespace covercalc::oracle {

struct Submodule {
  ElementSet elements;
  std::vector<std::size_t> generators;
};

namespace detail {

/// Is v (supported on coordinates >= from) in the row lattice of h[from..]?
inline bool in_lower_lattice(const IntMatrix& h, std::vector<std::int64_t> v, std::size_t from) {
  for (std::size_t j = from; j < v.size(); ++j) {
    if (v[j] % h[j][j] != 0) return false;
    const std::int64_t c = v[j] / h[j][j];
    if (c == 0) continue;
    for (std::size_t l = j; l < v.size(); ++l) v[l] -= c * h[j][l];
  }
  return true;
}

inline void hnf_rows(const FiniteModule& m, IntMatrix& h, std::size_t row,
                     const std::function<void(const IntMatrix&)>& emit) {
  const std::size_t k = m.rank();
  const auto d = static_cast<std::int64_t>(m.orders()[row]);
  for (std::int64_t pivot = 1; pivot <= d; ++pivot) {
    if (d % pivot != 0) continue;
    h[row].assign(k, 0);
    h[row][row] = pivot;
    // off-diagonal entries h[row][j] in [0, h[j][j]) for j > row
    std::vector<std::size_t> cols;
    for (std::size_t j = row + 1; j < k; ++j) cols.push_back(j);
    std::function<void(std::size_t)> fill = [&](std::size_t c) {
      if (c == cols.size()) {
        std::vector<std::int64_t> tail(k, 0);
        for (std::size_t j = row + 1; j < k; ++j) tail[j] = (d / pivot) * h[row][j];
        if (!in_lower_lattice(h, tail, row + 1)) return;
        if (row == 0) {
          emit(h);
        } else {
          hnf_rows(m, h, row - 1, emit);
        }
        return;
      }
      const std::size_t j = cols[c];
      for (std::int64_t v = 0; v < h[j][j]; ++v) {
        h[row][j] = v;
        fill(c + 1);
      }
      h[row][j] = 0;
    };
    fill(0);
  }
}

inline std::vector<std::size_t> row_elements(const FiniteModule& m, const IntMatrix& h) {
  std::vector<std::size_t> gens;
  for (const auto& r : h) gens.push_back(m.encode(r));
  return gens;
}

}  // namespace detail

/// Every subgroup of ⊕ ℤ/dᵢ, ignoring the actions, in HNF enumeration order.
inline std::vector<Submodule> enumerate_subgroups(const FiniteModule& m, std::uint64_t bound = 64) {
  if (m.size() > bound) fail(ErrorCode::TooLarge, "subgroup enumeration is limited to order " + std::to_string(bound));
  std::vector<Submodule> out;
  if (m.rank() == 0) {
    ElementSet z(1);
    z.set(0);
    out.push_back({z, {}});
    return out;
  }
  IntMatrix h(m.rank(), std::vector<std::int64_t>(m.rank(), 0));
  detail::hnf_rows(m, h, m.rank() - 1, [&](const IntMatrix& basis) {
    auto gens = detail::row_elements(m, basis);
    std::vector<std::size_t> nonzero;
    for (auto g : gens) {
      if (g != 0) nonzero.push_back(g);
    }
    out.push_back({m.span(nonzero), nonzero});
  });
  return out;
}

namespace detail {

/// Row echelon form over 𝔽_p (rows reduced, zero rows dropped).
inline std::vector<std::vector<std::int64_t>> rref(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> out;
  if (rows.empty()) return out;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && arith::mod(rows[piv][c], p) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const std::int64_t inv = arith::inverse_mod_prime(arith::mod(rows[r][c], p), p);
    for (auto& x : rows[r]) x = arith::mod(x * inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const std::int64_t f = arith::mod(rows[i][c], p);
      if (f == 0) continue;
      for (std::size_t l = 0; l < n; ++l) rows[i][l] = arith::mod(rows[i][l] - f * rows[r][l], p);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Smallest subspace containing v and stable under the given matrices (acting on row vectors from the right).
inline std::vector<std::vector<std::int64_t>> invariant_closure(const std::vector<std::int64_t>& v,
                                                                  const std::vector<IntMatrix>& transposed, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> basis = rref({v}, p);
  std::vector<std::vector<std::int64_t>> frontier = basis;
  while (!frontier.empty()) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& w : frontier) {
      for (const auto& a : transposed) {
        std::vector<std::int64_t> img(w.size(), 0);
        for (std::size_t i = 0; i < w.size(); ++i) {
          for (std::size_t j = 0; j < w.size(); ++j) img[i] = arith::mod(img[i] + a[i][j] * w[j], p);
        }
        auto grown = basis;
        grown.push_back(img);
        grown = rref(grown, p);
        if (grown.size() > basis.size()) {
          basis = grown;
          next.push_back(img);
        }
      }
    }
    frontier = std::move(next);
  }
  return basis;
}

/// All vectors of 𝔽_p^n in lexicographic order, excluding 0.
inline void for_each_nonzero_vector(std::size_t n, std::int64_t p, const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> v(n, 0);
  while (true) {
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++v[i] < p) break;
      v[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
    f(v);
  }
}

/// Vectors in the span of an echelon basis, excluding 0.
inline std::vector<std::vector<std::int64_t>> span_vectors(const std::vector<std::vector<std::int64_t>>& basis, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> out;
  for_each_nonzero_vector(basis.size(), p, [&](const std::vector<std::int64_t>& c) {
    std::vector<std::int64_t> v(basis.front().size(), 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      for (std::size_t l = 0; l < v.size(); ++l) v[l] = arith::mod(v[l] + c[k] * basis[k][l], p);
    }
    out.push_back(v);
  });
  return out;
}

}  // namespace detail

/// Maximal submodules. M/N is simple, hence killed by a prime p, so N is the
/// preimage of a maximal invariant subspace U of V = M/pM. Those are the
/// annihilators of minimal invariant subspaces W of the dual, found here as
/// closures of single functionals that every nonzero member regenerates.
inline std::vector<Submodule> maximal_submodules(const FiniteModule& m, std::uint64_t bound = 4096) {
  if (m.size() > bound) fail(ErrorCode::TooLarge, "maximal submodule search is limited to order " + std::to_string(bound));
  std::vector<Submodule> out;
  std::set<std::uint64_t> primes;
  for (auto d : m.orders()) {
    for (auto [p, e] : arith::factor(d)) {
      (void)e;
      primes.insert(p);
    }
  }
  std::vector<std::vector<std::int64_t>> elements(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) elements[x] = m.decode(x);

  for (auto pu : primes) {
    const auto p = static_cast<std::int64_t>(pu);
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < m.rank(); ++i) {
      if (m.orders()[i] % pu == 0) coords.push_back(i);
    }
    const std::size_t r = coords.size();
    // induced actions on V, transposed to act on functionals
    std::vector<IntMatrix> transposed;
    for (const auto& a : m.actions()) {
      IntMatrix t(r, std::vector<std::int64_t>(r, 0));
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) t[j][i] = arith::mod(a[coords[i]][coords[j]], p);
      }
      transposed.push_back(std::move(t));
    }
    std::set<std::vector<std::vector<std::int64_t>>> seen;
    detail::for_each_nonzero_vector(r, p, [&](const std::vector<std::int64_t>& phi) {
      auto w = detail::invariant_closure(phi, transposed, p);
      if (seen.count(w)) return;
      seen.insert(w);
      for (const auto& psi : detail::span_vectors(w, p)) {
        if (detail::invariant_closure(psi, transposed, p).size() != w.size()) return;
      }
      ElementSet s(m.size());
      for (std::size_t x = 0; x < m.size(); ++x) {
        bool in = true;
        for (const auto& f : w) {
          std::int64_t acc = 0;
          for (std::size_t i = 0; i < r; ++i) acc = arith::mod(acc + f[i] * elements[x][coords[i]], p);
          if (acc != 0) {
            in = false;
            break;
          }
        }
        if (in) s.set(x);
      }
      out.push_back({s, {}});
    });
  }
  return out;
}

/// Submodules of M: everything (maximal_only = false) or the maximal ones.
inline std::vector<Submodule> enumerate_submodules(const FiniteModule& m, bool maximal_only, const OracleLimits& limits = {}) {
  if (maximal_only) return maximal_submodules(m, limits.sigma_bound);
  std::vector<Submodule> out;
  for (auto& s : enumerate_subgroups(m, limits.all_subgroups_bound)) {
    if (m.is_invariant(s.elements)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace covercalc::oracle
