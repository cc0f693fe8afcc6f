#pragma once

/**
 * @file smith.hpp
 * @brief Smith normal form over a Euclidean domain, and cokernel descriptors.
 *
 * Pivoting always brings the nonzero entry of least Euclidean size (absolute
 * value, degree, norm) to the diagonal, ties broken row-major; termination is
 * the usual norm-descent argument.
 */

#include <cstddef>
#include <utility>
#include <vector>

#include "covercalc/euclidean.hpp"
#include "covercalc/modules.hpp"

namespace covercalc {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

template <typename T>
struct SmithResult {
  /// d_1 | d_2 | ... , length min(rows, cols), each canonical (>= 0 / monic).
  std::vector<T> diagonal;
  /// U·A·V = diag(diagonal), U and V invertible.
  Matrix<T> U;
  Matrix<T> V;
};

template <EuclideanElement T>
Matrix<T> identity_matrix(std::size_t n, const T& like) {
  using Tr = EuclideanTraits<T>;
  Matrix<T> out(n, std::vector<T>(n, Tr::zero(like)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = Tr::one(like);
  return out;
}

template <EuclideanElement T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const T& like) {
  using Tr = EuclideanTraits<T>;
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = b.empty() ? 0 : b.front().size();
  Matrix<T> out(n, std::vector<T>(m, Tr::zero(like)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      T acc = Tr::zero(like);
      for (std::size_t l = 0; l < k; ++l) acc = Tr::add(acc, Tr::mul(a[i][l], b[l][j]));
      out[i][j] = acc;
    }
  }
  return out;
}

namespace detail {

template <EuclideanElement T>
void row_axpy(Matrix<T>& m, std::size_t target, std::size_t source, const T& factor) {
  using Tr = EuclideanTraits<T>;
  for (std::size_t j = 0; j < m[target].size(); ++j) m[target][j] = Tr::sub(m[target][j], Tr::mul(factor, m[source][j]));
}

template <EuclideanElement T>
void col_axpy(Matrix<T>& m, std::size_t target, std::size_t source, const T& factor) {
  using Tr = EuclideanTraits<T>;
  for (auto& row : m) row[target] = Tr::sub(row[target], Tr::mul(factor, row[source]));
}

template <EuclideanElement T>
void swap_cols(Matrix<T>& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace detail

/// Smith normal form of a rows×cols matrix; `like` supplies the ring for empty input.
template <EuclideanElement T>
SmithResult<T> smith_normal_form(Matrix<T> a, const T& like) {
  using Tr = EuclideanTraits<T>;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  for (const auto& row : a) {
    if (row.size() != cols) fail(ErrorCode::InvalidArgument, "ragged matrix");
  }
  Matrix<T> u = identity_matrix(rows, like);
  Matrix<T> v = identity_matrix(cols, like);
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block.
      bool found = false;
      std::size_t pi = t, pj = t;
      std::uint64_t best = 0;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (Tr::is_zero(a[i][j])) continue;
          const std::uint64_t s = Tr::size(a[i][j]);
          if (!found || s < best) {
            found = true;
            best = s;
            pi = i;
            pj = j;
          }
        }
      }
      if (!found) break;
      std::swap(a[t], a[pi]);
      std::swap(u[t], u[pi]);
      detail::swap_cols(a, t, pj);
      detail::swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (Tr::is_zero(a[i][t])) continue;
        const T q = Tr::divmod(a[i][t], a[t][t]).first;
        detail::row_axpy(a, i, t, q);
        detail::row_axpy(u, i, t, q);
        if (!Tr::is_zero(a[i][t])) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (Tr::is_zero(a[t][j])) continue;
        const T q = Tr::divmod(a[t][j], a[t][t]).first;
        detail::col_axpy(a, j, t, q);
        detail::col_axpy(v, j, t, q);
        if (!Tr::is_zero(a[t][j])) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!Tr::is_zero(Tr::divmod(a[i][j], a[t][t]).second)) {
            for (std::size_t c = 0; c < cols; ++c) a[t][c] = Tr::add(a[t][c], a[i][c]);
            for (std::size_t c = 0; c < rows; ++c) u[t][c] = Tr::add(u[t][c], u[i][c]);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (!Tr::is_zero(a[t][t])) {
      const T unit = Tr::normalizer(a[t][t]);
      for (auto& x : a[t]) x = Tr::mul(unit, x);
      for (auto& x : u[t]) x = Tr::mul(unit, x);
    }
  }

  SmithResult<T> out;
  for (std::size_t t = 0; t < steps; ++t) out.diagonal.push_back(a[t][t]);
  out.U = std::move(u);
  out.V = std::move(v);
  return out;
}

/// Determinant by cofactor expansion (small matrices only).
template <EuclideanElement T>
T determinant(const Matrix<T>& m, const T& like) {
  using Tr = EuclideanTraits<T>;
  const std::size_t n = m.size();
  if (n == 0) return Tr::one(like);
  if (n == 1) return m[0][0];
  T acc = Tr::zero(like);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<T> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<T> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(m[i][c]);
      }
      minor.push_back(std::move(row));
    }
    const T term = Tr::mul(m[0][j], determinant(minor, like));
    acc = (j % 2 == 0) ? Tr::add(acc, term) : Tr::sub(acc, term);
  }
  return acc;
}

/// coker(A: R^cols → R^rows) ⊕ R^extra_free as a descriptor over ℤ or 𝔽_p[t].
/// Unit invariant factors are dropped, zero ones become free rank.
inline ModuleDescriptor descriptor_from_presentation(const RingHandle& ring, const Matrix<RingElement>& a,
                                                     std::uint64_t extra_free) {
  ModuleDescriptor d(ring);
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::vector<RingElement> diagonal;
  auto run = [&](auto tag) {
    using T = decltype(tag);
    Matrix<T> m(rows, std::vector<T>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      if (a[i].size() != cols) fail(ErrorCode::InvalidArgument, "ragged matrix");
      for (std::size_t j = 0; j < cols; ++j) {
        if (!element_belongs(ring, a[i][j])) fail(ErrorCode::InvalidArgument, "matrix entry not in " + ring.to_string());
        m[i][j] = std::get<T>(a[i][j]);
      }
    }
    const T like = std::get<T>(ring_zero(ring));
    for (auto& x : smith_normal_form(m, like).diagonal) diagonal.emplace_back(x);
  };
  switch (ring.kind()) {
    case RingKind::Integers: run(std::int64_t{}); break;
    case RingKind::PolyOverPrimeField: run(FpPoly{}); break;
    default: fail(ErrorCode::UnsupportedRing, "presentation matrices are accepted over Z and Fp[t] only");
  }
  std::uint64_t free = extra_free + (rows > diagonal.size() ? rows - diagonal.size() : 0);
  for (const auto& x : diagonal) {
    const FactoredIdeal f = factor_ideal(ring, x);
    if (f.is_zero()) {
      ++free;
    } else if (f.is_proper_nonzero()) {
      d.torsion.push_back({f, Cardinal(1)});
    }
  }
  d.free_rank = Cardinal(free);
  return d;
}

}  // namespace covercalc
