#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "covercalc/cli/parse.hpp"
#include "covercalc/covering.hpp"
#include "covercalc/oracle/search.hpp"

using namespace covercalc;
using covercalc::oracle::materialize;
using covercalc::oracle::verify_cover_witness;

namespace {

ModuleDescriptor spec(const char* text) { return cli::parse_spec(text); }

// Small finite abelian group ⊕ Z/n_i, elements as tuples.
struct BruteGroup {
  std::vector<std::int64_t> orders;
  std::vector<std::vector<std::int64_t>> elements;

  explicit BruteGroup(std::vector<std::int64_t> o) : orders(std::move(o)) {
    std::vector<std::int64_t> x(orders.size(), 0);
    while (true) {
      elements.push_back(x);
      std::size_t i = 0;
      for (; i < orders.size(); ++i) {
        if (++x[i] < orders[i]) break;
        x[i] = 0;
      }
      if (i == orders.size()) break;
    }
  }

  std::size_t index(const std::vector<std::int64_t>& x) const {
    std::size_t k = 0;
    for (std::size_t i = orders.size(); i-- > 0;) k = k * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(x[i]);
    return k;
  }

  std::set<std::size_t> closure(const std::vector<std::vector<std::int64_t>>& gens) const {
    std::set<std::size_t> seen{0};
    std::vector<std::vector<std::int64_t>> frontier{std::vector<std::int64_t>(orders.size(), 0)};
    while (!frontier.empty()) {
      auto x = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        std::vector<std::int64_t> y(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) y[i] = (x[i] + g[i]) % orders[i];
        if (seen.insert(index(y)).second) frontier.push_back(y);
      }
    }
    return seen;
  }

  // Maximal subgroups are exactly those of prime index; each is generated by at most rank elements.
  std::vector<std::set<std::size_t>> maximal_subgroups() const {
    std::set<std::set<std::size_t>> out;
    const std::size_t n = elements.size();
    const auto prime = [](std::size_t k) {
      if (k < 2) return false;
      for (std::size_t d = 2; d * d <= k; ++d) {
        if (k % d == 0) return false;
      }
      return true;
    };
    std::function<void(std::size_t, std::vector<std::vector<std::int64_t>>&)> rec = [&](std::size_t from, auto& gens) {
      if (!gens.empty()) {
        auto s = closure(gens);
        if (n % s.size() == 0 && prime(n / s.size())) out.insert(s);
      }
      if (gens.size() == orders.size()) return;
      for (std::size_t k = from; k < n; ++k) {
        gens.push_back(elements[k]);
        rec(k + 1, gens);
        gens.pop_back();
      }
    };
    std::vector<std::vector<std::int64_t>> gens;
    rec(1, gens);
    return {out.begin(), out.end()};
  }

  // Smallest number of proper subgroups covering the group, nullopt when cyclic.
  std::optional<std::size_t> min_cover() const {
    const auto maxes = maximal_subgroups();
    const std::size_t n = elements.size();
    for (std::size_t k = 2; k <= maxes.size(); ++k) {
      std::vector<bool> pick(maxes.size(), false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        std::set<std::size_t> u;
        for (std::size_t i = 0; i < maxes.size(); ++i) {
          if (pick[i]) u.insert(maxes[i].begin(), maxes[i].end());
        }
        if (u.size() == n) return k;
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return std::nullopt;
  }

  std::size_t quotient_rank(std::int64_t p) const {
    std::set<std::size_t> image;
    for (const auto& x : elements) {
      std::vector<std::int64_t> y(orders.size());
      for (std::size_t i = 0; i < orders.size(); ++i) y[i] = (p * x[i]) % orders[i];
      image.insert(index(y));
    }
    std::size_t idx = elements.size() / image.size();
    std::size_t r = 0;
    for (; idx > 1; idx /= static_cast<std::size_t>(p)) ++r;
    return r;
  }
};

ModuleDescriptor from_orders(const std::vector<std::int64_t>& orders) {
  ModuleDescriptor d(RingHandle::integers());
  for (auto n : orders) d.torsion.push_back({factor_ideal(d.ring, RingElement(n)), Cardinal(1)});
  return d;
}

// Arithmetic in F_q for q in {2,3,4,5}; F_4 = F_2[w]/(w^2+w+1) with elements 0,1,w,w+1 as 0..3.
std::uint64_t small_field_mul(std::uint64_t q, std::uint64_t a, std::uint64_t b) {
  if (q != 4) return a * b % q;
  static const std::uint64_t table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  return table[a][b];
}

std::size_t brute_line_cover(std::uint64_t q) {
  std::set<std::set<std::uint64_t>> lines;
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) {
      if (a == 0 && b == 0) continue;
      std::set<std::uint64_t> line;
      for (std::uint64_t s = 0; s < q; ++s) line.insert(small_field_mul(q, s, a) * q + small_field_mul(q, s, b));
      lines.insert(line);
    }
  }
  const std::vector<std::set<std::uint64_t>> all(lines.begin(), lines.end());
  for (std::size_t k = 1; k <= all.size(); ++k) {
    std::vector<bool> pick(all.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::set<std::uint64_t> u;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (pick[i]) u.insert(all[i].begin(), all[i].end());
      }
      if (u.size() == q * q) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return 0;
}

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(classify(spec("Z: R/(6)")).kind, Trichotomy::Kind::Cyclic);
  EXPECT_EQ(classify(spec("Z: sum over all primes")).kind, Trichotomy::Kind::CountableNotFinite);
  const auto t = classify(spec("Z: R/(12) + R/(18)"));
  EXPECT_EQ(t.kind, Trichotomy::Kind::FiniteThreshold);
  EXPECT_EQ(t.q, Cardinal(2));
  EXPECT_EQ(t.witness, MaximalIdealId::integer(2));
  try {
    classify(spec("Z: Q + R/(4)"));
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::HasDivisiblePart);
  }
}

TEST(Nu1, Examples) {
  EXPECT_EQ(nu1(Cardinal(2), Cardinal(2)), Cardinal(3));
  EXPECT_EQ(nu1(Cardinal::aleph0(), Cardinal::aleph0()), Cardinal::aleph0());
  EXPECT_EQ(nu1(Cardinal(4), Cardinal(3)), Cardinal(5));
  try {
    nu1(Cardinal(3), Cardinal(1));
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionTooSmall);
  }
}

TEST(Nu1, MatchesBruteForceLineCovers) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    EXPECT_EQ(nu1(Cardinal(q), Cardinal(2)), Cardinal(brute_line_cover(q))) << q;
    EXPECT_EQ(nu1(Cardinal(q), Cardinal(7)), nu1(Cardinal(q), Cardinal(2)));
  }
}

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma(spec("Z: R/(5) + R/(9) + R")), CoverAnswer::threshold(Cardinal(4)));
  EXPECT_EQ(sigma(spec("Z: Q")), CoverAnswer::threshold(Cardinal::aleph0()));
  EXPECT_EQ(sigma(spec("Z: R/(9) + R")), CoverAnswer::threshold(Cardinal(4)));
  const auto abstract = sigma(spec("dedekind {m1: aleph0} min=aleph0: R/(m1) + R"));
  EXPECT_EQ(abstract.kind, CoverAnswer::Kind::UpperBoundOnly);
  EXPECT_EQ(abstract.value, Cardinal::aleph0());
  EXPECT_EQ(abstract.to_string(), "upper-bound-only(aleph0)");
}

TEST(Sigma, DegenerateAndDivisibleShapes) {
  EXPECT_EQ(sigma(spec("Z: 0")), CoverAnswer::no_cover());
  EXPECT_EQ(sigma(spec("Z: R")), CoverAnswer::no_cover());
  EXPECT_EQ(sigma(spec("Z: Pruefer(2)")), CoverAnswer::threshold(Cardinal::aleph0()));
  EXPECT_EQ(sigma(spec("Z: Q + R/(4) + R/(4)")), CoverAnswer::threshold(Cardinal(3)));
  EXPECT_EQ(sigma(spec("Z: Q + R/(4)")), CoverAnswer::threshold(Cardinal::aleph0()));
  EXPECT_EQ(sigma(spec("F q=5: R^2")), CoverAnswer::threshold(Cardinal(6)));
  EXPECT_EQ(sigma(spec("F q=5: R")), CoverAnswer::no_cover());
  EXPECT_EQ(sigma(spec("F q=aleph0: R^aleph0")), CoverAnswer::threshold(Cardinal::aleph0()));
  EXPECT_EQ(sigma(spec("Z: R/(2)^aleph0")), CoverAnswer::threshold(Cardinal(3)));
}

TEST(SigmaInteger, Examples) {
  EXPECT_EQ(sigma_integer(spec("Z: R/(2) + R/(2)")), 3U);
  EXPECT_FALSE(sigma_integer(spec("Z: R/(6)")).has_value());
  EXPECT_EQ(sigma_integer(spec("Z: R/(9) + R/(3)")), 4U);
  EXPECT_FALSE(sigma_integer(spec("Z: Q")).has_value());
}

TEST(SigmaInteger, AgreesWithClosureOracle) {
  const std::vector<std::vector<std::int64_t>> groups{
      {2, 2}, {6}, {3, 3}, {9, 3}, {2, 2, 2}, {4, 2}, {4, 4}, {2, 6}, {3, 6}, {5, 5}, {2, 10}, {4, 6}, {2, 2, 3}, {8, 2}, {7}, {12}};
  for (const auto& orders : groups) {
    const BruteGroup g(orders);
    const auto expect = g.min_cover();
    const auto got = sigma_integer(from_orders(orders));
    ASSERT_EQ(got.has_value(), expect.has_value()) << render(from_orders(orders));
    if (got) {
      EXPECT_EQ(*got, *expect) << render(from_orders(orders));
    }
  }
}

// σ = n < ∞ exactly when some prime n−1 has rank(M/pM) >= 2, and no smaller prime does.
TEST(SigmaInteger, ThresholdCharacterization) {
  for (std::int64_t a = 2; a <= 24; ++a) {
    for (std::int64_t b = 2; b <= 24; ++b) {
      const BruteGroup g({a, b});
      const auto s = sigma_integer(from_orders({a, b}));
      std::optional<std::int64_t> least;
      for (std::int64_t p = 2; p <= 23 && !least; ++p) {
        if (arith::is_prime(static_cast<std::uint64_t>(p)) && g.quotient_rank(p) >= 2) least = p;
      }
      ASSERT_EQ(s.has_value(), least.has_value()) << a << "," << b;
      if (s) {
        EXPECT_EQ(static_cast<std::int64_t>(*s), *least + 1);
      }
    }
  }
}

TEST(SSet, Examples) {
  auto z4 = s_set(RingHandle::integers(), 4);
  ASSERT_EQ(z4.size(), 2U);
  EXPECT_EQ(render(z4[0]), "Z: R/(2)^2");
  EXPECT_EQ(render(z4[1]), "Z: R/(3)^2");
  EXPECT_EQ(s_set(RingHandle::integers(), 3).size(), 1U);
  auto f = s_set(RingHandle::poly_over_prime_field(2), 5);
  ASSERT_EQ(f.size(), 3U);
  EXPECT_EQ(render(f[2]), "Fp[t] p=2: R/(t^2+t+1)^2");
  EXPECT_THROW(s_set(RingHandle::abstract_local(Cardinal(3)), 5), CoverError);
}

TEST(Witness, KleinLines) {
  const auto d = spec("Z: R/(2) + R/(2)");
  const auto w = build_cover_witness(d);
  ASSERT_TRUE(w.is_lines());
  const auto& lc = w.lines();
  EXPECT_EQ(lc.m, MaximalIdealId::integer(2));
  ASSERT_EQ(lc.lines.size(), 3U);
  EXPECT_EQ(lc.lines[0], (ProjectivePoint{1, 0}));
  EXPECT_EQ(lc.lines[1], (ProjectivePoint{0, 1}));
  EXPECT_EQ(lc.lines[2], (ProjectivePoint{1, 1}));
  // Each line is {x : μ·x0 = λ·x1 mod 2}; the three are <(0,1)>, <(1,0)>, <(1,1)> and cover.
  std::set<std::pair<int, int>> covered;
  for (const auto& l : lc.lines) {
    int size = 0;
    for (int x0 = 0; x0 < 2; ++x0) {
      for (int x1 = 0; x1 < 2; ++x1) {
        if ((static_cast<int>(l.mu) * x0 - static_cast<int>(l.lambda) * x1) % 2 == 0) {
          covered.insert({x0, x1});
          ++size;
        }
      }
    }
    EXPECT_EQ(size, 2);
  }
  EXPECT_EQ(covered.size(), 4U);
}

TEST(Witness, TwelveEighteenElementwise) {
  const auto d = spec("Z: R/(12) + R/(18)");
  const auto w = build_cover_witness(d);
  ASSERT_TRUE(w.is_lines());
  ASSERT_EQ(w.lines().lines.size(), 3U);
  std::size_t covered = 0;
  for (int x = 0; x < 12; ++x) {
    for (int y = 0; y < 18; ++y) {
      bool hit = false;
      for (const auto& l : w.lines().lines) hit = hit || (static_cast<int>(l.mu) * x - static_cast<int>(l.lambda) * y) % 2 == 0;
      covered += hit ? 1 : 0;
    }
  }
  EXPECT_EQ(covered, 216U);
  EXPECT_TRUE(verify_cover_witness(materialize(d), w));
}

TEST(Witness, CountableShapes) {
  const auto q = build_cover_witness(spec("Z: Q"));
  ASSERT_FALSE(q.is_lines());
  EXPECT_EQ(q.chain().kind, CountableChain::Kind::LocalizationChain);
  EXPECT_EQ(q.chain().at, MaximalIdealId::integer(2));
  EXPECT_EQ(build_cover_witness(spec("Z: Pruefer(3)")).chain().kind, CountableChain::Kind::PrueferChain);
  EXPECT_EQ(build_cover_witness(spec("Z: sum over all primes")).chain().kind, CountableChain::Kind::GrowingSubsum);
  try {
    build_cover_witness(spec("Z: R/(6)"));
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCoverable);
  }
}

TEST(Witness, LinesAreDistinctAndVerify) {
  for (const char* text : {"Z: R/(3) + R/(9)", "Z: R/(5) + R/(25)", "Zi: R/(1+i)^2", "Zi: R/(3)^2", "Fp[t] p=2: R/(t^2+t+1)^2",
                           "Fp[t] p=3: R/(t) + R/(t^2)", "Z: R/(4) + R/(6) + R/(9)"}) {
    const auto d = spec(text);
    const auto w = build_cover_witness(d);
    ASSERT_TRUE(w.is_lines()) << text;
    const auto q = w.lines().residue.value();
    EXPECT_EQ(w.lines().lines.size(), q + 1) << text;
    for (std::size_t i = 0; i < w.lines().lines.size(); ++i) {
      for (std::size_t j = i + 1; j < w.lines().lines.size(); ++j) EXPECT_NE(w.lines().lines[i], w.lines().lines[j]);
    }
    EXPECT_TRUE(verify_cover_witness(materialize(d), w)) << text;
  }
}

TEST(ProjectiveLine, Order) {
  const auto line = projective_line(3);
  ASSERT_EQ(line.size(), 4U);
  EXPECT_EQ(line[0], (ProjectivePoint{1, 0}));
  for (std::uint64_t k = 0; k < 3; ++k) EXPECT_EQ(line[k + 1], (ProjectivePoint{k, 1}));
}
