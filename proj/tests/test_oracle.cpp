#include <gtest/gtest.h>

#include <random>
#include <set>

#include "covercalc/cli/parse.hpp"
#include "covercalc/covering.hpp"
#include "covercalc/cosets.hpp"
#include "covercalc/oracle/search.hpp"

using namespace covercalc;
using namespace covercalc::oracle;

namespace {

MaterializedModule mat(const char* text, std::uint64_t bound = 4096) { return materialize(cli::parse_spec(text), bound); }

// Subgroups of Z/a ⊕ Z/b by closure of every generator pair.
std::size_t closure_subgroup_count(std::uint64_t a, std::uint64_t b) {
  std::set<std::set<std::pair<std::uint64_t, std::uint64_t>>> found;
  for (std::uint64_t x1 = 0; x1 < a; ++x1) {
    for (std::uint64_t y1 = 0; y1 < b; ++y1) {
      for (std::uint64_t x2 = 0; x2 < a; ++x2) {
        for (std::uint64_t y2 = 0; y2 < b; ++y2) {
          std::set<std::pair<std::uint64_t, std::uint64_t>> s;
          for (std::uint64_t i = 0; i < a * b; ++i) {
            for (std::uint64_t j = 0; j < a * b; ++j) s.insert({(i * x1 + j * x2) % a, (i * y1 + j * y2) % b});
          }
          found.insert(s);
        }
      }
    }
  }
  return found.size();
}

std::optional<std::size_t> brute_min_cover(const ElementSet& universe, const std::vector<ElementSet>& sets) {
  std::optional<std::size_t> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sets.size()); ++mask) {
    ElementSet u(universe.universe());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (mask >> i & 1U) u |= sets[i];
    }
    if (universe.subset_of(u)) {
      const auto k = static_cast<std::size_t>(std::popcount(mask));
      if (!best || k < *best) best = k;
    }
  }
  return best;
}

}  // namespace

TEST(ElementSet, Basics) {
  ElementSet a(70);
  a.set(3);
  a.set(69);
  ElementSet b(70);
  b.set(3);
  EXPECT_EQ(a.count(), 2U);
  EXPECT_TRUE(b.subset_of(a));
  EXPECT_FALSE(a.subset_of(b));
  EXPECT_EQ(a.count_and(b), 1U);
  a.subtract(b);
  EXPECT_EQ(a.members(), (std::vector<std::size_t>{69}));
  EXPECT_EQ(ElementSet::full(70).count(), 70U);
}

TEST(SetCover, MatchesSubsetEnumeration) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 6 + static_cast<std::size_t>(trial % 10);
    const std::size_t m = 4 + static_cast<std::size_t>(trial % 9);
    std::vector<ElementSet> sets;
    for (std::size_t s = 0; s < m; ++s) {
      ElementSet e(n);
      for (std::size_t x = 0; x < n; ++x) {
        if (rng() % 3 == 0) e.set(x);
      }
      sets.push_back(e);
    }
    const auto universe = ElementSet::full(n);
    const auto r = exact_set_cover(universe, sets);
    EXPECT_EQ(r.size, brute_min_cover(universe, sets));
    if (r.size) {
      ElementSet u(n);
      for (auto c : r.chosen) u |= sets[c];
      EXPECT_EQ(u, universe);
      EXPECT_EQ(r.chosen.size(), *r.size);
    }
  }
}

TEST(Materialize, IntegerExample) {
  const auto mm = mat("Z: R/(12) + R/(18)");
  EXPECT_EQ(mm.module.orders(), (std::vector<std::uint64_t>{12, 18}));
  EXPECT_TRUE(mm.module.actions().empty());
  EXPECT_EQ(mm.size(), 216U);
}

TEST(Materialize, GaussianTwo) {
  const auto mm = mat("Zi: R/((1+i)^2)");
  EXPECT_EQ(mm.module.orders(), (std::vector<std::uint64_t>{2, 2}));
  ASSERT_EQ(mm.module.actions().size(), 1U);
  // (1+i)^2 kills every element; 1+i alone does not.
  const auto kill = mm.multiplication_matrix(RingElement(GaussianInt{0, 2}));
  const auto half = mm.multiplication_matrix(RingElement(GaussianInt{1, 1}));
  bool half_kills = true;
  for (std::size_t x = 0; x < mm.size(); ++x) {
    EXPECT_EQ(mm.module.apply(kill, x), 0U);
    half_kills = half_kills && mm.module.apply(half, x) == 0;
  }
  EXPECT_FALSE(half_kills);
}

TEST(Materialize, PolynomialCompanion) {
  const auto mm = mat("Fp[t] p=2: R/(t^2+t+1)");
  EXPECT_EQ(mm.module.orders(), (std::vector<std::uint64_t>{2, 2}));
  ASSERT_EQ(mm.module.actions().size(), 1U);
  const auto& t = mm.module.actions()[0];
  // t^2 + t + 1 = 0 on every element
  for (std::size_t x = 0; x < mm.size(); ++x) {
    const auto tx = mm.module.apply(t, x);
    const auto ttx = mm.module.apply(t, tx);
    EXPECT_EQ(mm.module.add(mm.module.add(ttx, tx), x), 0U);
  }
}

TEST(Materialize, SizesMatchResidueProducts) {
  for (const char* text : {"Zi: R/(3)", "Zi: R/(2+i)^2 + R/(1+i)", "Fp[t] p=3: R/(t^2) + R/(t+1)", "Z: R/(8) + R/(3)^2"}) {
    const auto d = cli::parse_spec(text);
    std::uint64_t expect = 1;
    for (const auto& t : d.torsion) {
      for (const auto& [m, e] : t.annihilator.factors()) {
        for (unsigned k = 0; k < e * t.multiplicity.value(); ++k) expect *= residue_cardinality(d.ring, m).value();
      }
    }
    EXPECT_EQ(materialize(d).size(), expect) << text;
  }
}

TEST(Materialize, Errors) {
  try {
    mat("Z: R/(64) + R/(128)", 4096);
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
  try {
    mat("local residue=3: R/(m)");
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedRing);
  }
  EXPECT_THROW(mat("Z: R/(4) + R"), CoverError);
}

TEST(Submodules, Examples) {
  const auto klein = mat("Z: R/(2) + R/(2)");
  EXPECT_EQ(enumerate_submodules(klein.module, false).size(), 5U);
  EXPECT_EQ(enumerate_submodules(klein.module, true).size(), 3U);

  const auto z4 = mat("Z: R/(4)");
  EXPECT_EQ(enumerate_submodules(z4.module, false).size(), 3U);
  EXPECT_EQ(enumerate_submodules(z4.module, true).size(), 1U);

  const auto g2 = mat("Zi: R/(2)");
  const auto subs = enumerate_submodules(g2.module, false);
  ASSERT_EQ(subs.size(), 3U);
  std::size_t middle = 0;
  for (const auto& s : subs) {
    if (s.elements.count() == 2) {
      ++middle;
      // it is (1+i)·M
      ElementSet image(g2.size());
      const auto m = g2.multiplication_matrix(RingElement(GaussianInt{1, 1}));
      for (std::size_t x = 0; x < g2.size(); ++x) image.set(g2.module.apply(m, x));
      EXPECT_EQ(image, s.elements);
    }
  }
  EXPECT_EQ(middle, 1U);
}

TEST(Submodules, CountsMatchClosureEnumeration) {
  for (auto [a, b] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 2}, {2, 4}, {4, 4}, {3, 3}, {3, 9}, {2, 8}, {5, 5}, {4, 8}}) {
    const FiniteModule m({a, b}, {});
    EXPECT_EQ(enumerate_submodules(m, false, {4096, 64, 32}).size(), closure_subgroup_count(a, b)) << a << "," << b;
  }
  // p + 3 subgroups in (Z/p)^2
  for (std::uint64_t p : {2, 3, 5, 7}) EXPECT_EQ(enumerate_subgroups(FiniteModule({p, p}, {}), 64).size(), p + 3);
}

TEST(Submodules, AllOutputsAreInvariant) {
  for (const char* text : {"Zi: R/(1+i)^3", "Zi: R/(1+i) + R/(1+i)^2", "Fp[t] p=2: R/(t)^2 + R/(t^2)", "Zi: R/(3)",
                           "Fp[t] p=2: R/(t^2+t+1)^2", "Zi: R/(2+i) + R/(2-i)"}) {
    const auto mm = mat(text);
    for (bool maximal : {false, true}) {
      for (const auto& s : enumerate_submodules(mm.module, maximal)) EXPECT_TRUE(mm.module.is_submodule(s.elements)) << text;
    }
  }
}

TEST(MinCover, Examples) {
  EXPECT_EQ(min_submodule_cover(mat("Z: R/(2) + R/(2)").module).size, 3U);
  EXPECT_FALSE(min_submodule_cover(mat("Z: R/(6)").module).size.has_value());
  EXPECT_EQ(min_submodule_cover(mat("Z: R/(3) + R/(3)").module).size, 4U);
  EXPECT_EQ(min_submodule_cover(mat("Zi: R/((1+i)^2)").module).size, std::nullopt);
  EXPECT_EQ(min_submodule_cover(mat("Zi: R/(1+i) + R/(1+i)").module).size, 3U);
  EXPECT_EQ(min_submodule_cover(mat("Fp[t] p=2: R/(t^2+t+1)^2").module).size, 5U);
  EXPECT_TRUE(is_cyclic_module(mat("Zi: R/(3)").module));
  EXPECT_FALSE(is_cyclic_module(mat("Z: R/(3) + R/(3)").module));
}

TEST(MinCover, MaximalRestrictionIsSound) {
  for (const char* text : {"Z: R/(2) + R/(2)", "Z: R/(2) + R/(4)", "Z: R/(2)^3", "Z: R/(3) + R/(9)", "Z: R/(4) + R/(4)",
                           "Z: R/(2) + R/(6)", "Zi: R/(1+i) + R/(1+i)^2", "Fp[t] p=2: R/(t) + R/(t)^2", "Z: R/(2)^4",
                           "Zi: R/(3) + R/(1+i)", "Z: R/(2) + R/(2) + R/(3)"}) {
    const auto mm = mat(text);
    const auto all = min_submodule_cover(mm.module, false);
    const auto max = min_submodule_cover(mm.module, true);
    EXPECT_EQ(all.size, max.size) << text;
    if (max.size) {
      EXPECT_TRUE(verify_submodule_cover(mm.module, max.witness));
    }
  }
}

TEST(MinCover, TooLarge) {
  const FiniteModule m({64, 128}, {}, 9000);
  try {
    min_submodule_cover(m);
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(CosetSearch, Examples) {
  EXPECT_EQ(min_coset_cover_punctured(mat("Z: R/(4)").module, 0).size, 2U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Z: R/(2) + R/(2)").module, 0).size, 2U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Z: R/(5)").module, 0).size, 4U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Zi: R/(2+i)").module, 0).size, 4U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Zi: R/((1+i)^3)").module, 0).size, 3U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Zi: R/(1+i)^3").module, 0).size, 3U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Fp[t] p=2: R/(t)^2").module, 0).size, 2U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Zi: R/((1+i)^2) + R/(1+i)").module, 0).size, 3U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Z: R/(6)").module, 0).size, 3U);
  EXPECT_EQ(min_coset_cover_punctured(mat("Z: R/(2) + R/(4) + R/(3)").module, 0).size, phi_finite_abelian({2, 4, 3}));
}

TEST(CosetSearch, MaximalCosetsAgreeWithUnrestricted) {
  for (const char* text : {"Z: R/(4)", "Z: R/(2) + R/(2)", "Z: R/(8)", "Z: R/(2) + R/(4)", "Z: R/(6)", "Z: R/(9)",
                           "Z: R/(12)", "Zi: R/(1+i)^3", "Fp[t] p=2: R/(t) + R/(t)", "Z: R/(2)^4", "Z: R/(3) + R/(3)"}) {
    const auto mm = mat(text);
    for (std::size_t puncture = 0; puncture < mm.size(); puncture += 3) {
      const auto fast = min_coset_cover_punctured(mm.module, puncture, true);
      const auto slow = min_coset_cover_punctured(mm.module, puncture, false);
      EXPECT_EQ(fast.size, slow.size) << text << " puncture " << puncture;
      EXPECT_TRUE(verify_coset_cover(mm.module, fast.witness, puncture));
    }
  }
}

// Locality: φ(M) >= Σ φ(M_𝔪), where the localizations are the primary parts.
TEST(CosetSearch, LocalityInequality) {
  struct Case {
    const char* whole;
    std::vector<const char*> parts;
  };
  for (const auto& c : std::vector<Case>{{"Z: R/(6)", {"Z: R/(2)", "Z: R/(3)"}},
                                         {"Z: R/(2) + R/(6)", {"Z: R/(2)^2", "Z: R/(3)"}},
                                         {"Zi: R/(1+i) + R/(2+i)", {"Zi: R/(1+i)", "Zi: R/(2+i)"}},
                                         {"Fp[t] p=2: R/(t) + R/(t+1)^2", {"Fp[t] p=2: R/(t)", "Fp[t] p=2: R/(t+1)^2"}}}) {
    const auto whole = *min_coset_cover_punctured(mat(c.whole).module, 0).size;
    std::size_t local = 0;
    for (const auto* p : c.parts) local += *min_coset_cover_punctured(mat(p).module, 0).size;
    EXPECT_GE(whole, local) << c.whole;
    if (std::string(c.whole).starts_with("Z:")) {
      EXPECT_EQ(whole, local) << c.whole;
    }
  }
}

TEST(Verify, Examples) {
  const auto d = cli::parse_spec("Z: R/(2) + R/(2)");
  const auto mm = materialize(d);
  const auto w = build_cover_witness(d);
  EXPECT_TRUE(verify_cover_witness(mm, w));
  LinesCover two = w.lines();
  two.lines = {{1, 0}, {0, 1}};
  EXPECT_FALSE(verify_cover_witness(mm, two));

  const auto z = RingHandle::integers();
  const auto z4 = materialize(cli::parse_spec("Z: R/(4)"));
  EXPECT_TRUE(verify_cover_witness(z4, build_coset_cover(z, factor_ideal(z, RingElement(4)), RingElement(0))));
  auto broken = build_coset_cover(z, factor_ideal(z, RingElement(4)), RingElement(0));
  broken.cosets.pop_back();
  EXPECT_FALSE(verify_cover_witness(z4, broken));
}

TEST(Verify, ShapeMismatch) {
  const auto mm = mat("Z: R/(4)");
  try {
    verify_submodule_cover(mm.module, {ElementSet(7)});
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(Determinism, RepeatedSearchesAgree) {
  const auto mm = mat("Z: R/(2)^4");
  const auto a = min_submodule_cover(mm.module);
  const auto b = min_submodule_cover(mm.module);
  EXPECT_EQ(a.size, b.size);
  EXPECT_EQ(a.witness, b.witness);
}
