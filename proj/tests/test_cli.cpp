#include <gtest/gtest.h>

#include "covercalc/cli/parse.hpp"
#include "covercalc/cli/run.hpp"

using namespace covercalc;
using namespace covercalc::cli;

TEST(ParseSpec, Examples) {
  const auto d = parse_spec("Z: R/(12) + R/(18) + R^2");
  EXPECT_EQ(d.ring.kind(), RingKind::Integers);
  EXPECT_EQ(d.free_rank, Cardinal(2));
  ASSERT_EQ(d.torsion.size(), 2U);
  EXPECT_EQ(std::get<std::int64_t>(ideal_generator(d.ring, d.torsion[0].annihilator)), 12);
  EXPECT_EQ(std::get<std::int64_t>(ideal_generator(d.ring, d.torsion[1].annihilator)), 18);

  const auto g = parse_spec("Zi: R/(5)");
  ASSERT_EQ(g.torsion.size(), 1U);
  const auto& f = g.torsion[0].annihilator.factors();
  ASSERT_EQ(f.size(), 2U);
  EXPECT_EQ(f[0].first.to_string(), "2+i");
  EXPECT_EQ(f[1].first.to_string(), "2-i");

  const auto q = parse_spec("Z: Q^1 + Pruefer(2)^1");
  EXPECT_TRUE(q.has_divisible_part());
  EXPECT_EQ(q.field_copies, Cardinal(1));
  ASSERT_EQ(q.pruefer.size(), 1U);
  EXPECT_EQ(q.pruefer[0].first, MaximalIdealId::integer(2));
}

TEST(ParseSpec, RingsAndShorthands) {
  EXPECT_EQ(parse_spec("F2[t]: R/(t^2+t+1)").ring.characteristic_p(), 2U);
  EXPECT_EQ(parse_spec("Fp[t] p=3: R/(t)").ring.characteristic_p(), 3U);
  EXPECT_EQ(parse_spec("F q=9: R^2").ring.declared_cardinal(), Cardinal(9));
  EXPECT_EQ(parse_spec("local residue=aleph0: R/(m)^2").ring.kind(), RingKind::AbstractLocal);
  const auto dd = parse_spec("dedekind {a: 3, b: aleph0} min=2 spectrum=finite: R/(a^2*b) + R");
  EXPECT_FALSE(dd.ring.has_infinite_spectrum());
  EXPECT_EQ(dd.torsion[0].annihilator.exponent(MaximalIdealId::label("a")), 2U);
  EXPECT_EQ(parse_spec("Z: sum over primes p <= 10").torsion.size(), 4U);
  EXPECT_TRUE(parse_spec("Z: sum over all primes").prime_family);
  EXPECT_TRUE(parse_spec("Z: 0").is_zero_module());
  EXPECT_EQ(parse_spec("Z: R/(0) + R/(1)").free_rank, Cardinal(1));
  EXPECT_EQ(parse_spec("Z: R/(2)^aleph0").torsion[0].multiplicity, Cardinal::aleph0());
}

TEST(ParseSpec, Errors) {
  try {
    parse_spec("Z: R/(");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.position(), 6U);
  }
  EXPECT_THROW(parse_spec("Q: R"), SyntaxError);
  EXPECT_THROW(parse_spec("Z R/(2)"), SyntaxError);
  try {
    parse_spec("Fp[t] p=2: Q");
  } catch (const CoverError& e) {
    ADD_FAILURE() << "Q over Fp[t] is a PID descriptor and should parse: " << e.what();
  }
  try {
    parse_spec("dedekind {a: 3} min=2: Q");
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SemanticError);
  }
  EXPECT_THROW(parse_spec("Fp[t] p=4: R"), CoverError);
}

TEST(ParseSpec, RenderRoundTrip) {
  for (const char* text : {"Z: R/(12) + R/(18) + R^2", "Zi: R/(5) + R/(1+i)^3", "Zi: R/((1+i)^2)", "F2[t]: R/(t^3+t) + Q",
                           "Z: Q^3 + Pruefer(5)^aleph0 + R/(4)", "local residue=7 label=p: R/(p^3) + R",
                           "dedekind {m1: aleph0} min=aleph0: R/(m1) + R", "F q=aleph0: R^aleph0", "Z: 0",
                           "Z: sum over all primes + R/(9)", "Z: R/(2)^aleph0"}) {
    const auto d = parse_spec(text);
    const auto back = parse_spec(render(d));
    EXPECT_EQ(back, d) << text << " -> " << render(d);
  }
}

TEST(ParseElement, Literals) {
  EXPECT_EQ(std::get<GaussianInt>(parse_element(RingHandle::gaussian_integers(), "(1+i)^2")), (GaussianInt{0, 2}));
  EXPECT_EQ(std::get<FpPoly>(parse_element(RingHandle::poly_over_prime_field(2), "t^2+t+1")), FpPoly(2, {1, 1, 1}));
  EXPECT_EQ(std::get<std::int64_t>(parse_element(RingHandle::integers(), "-3*4+1")), -11);
  EXPECT_THROW(parse_element(RingHandle::abstract_local(Cardinal(3)), "m"), CoverError);
}

TEST(ParseMonoid, Examples) {
  const auto m = parse_monoid("N + C(2,3), C(0,4)");
  ASSERT_EQ(m.summands.size(), 3U);
  EXPECT_TRUE(m.summands[0].free);
  EXPECT_EQ(m.summands[1], CyclicMonoid::finite(2, 3));
  EXPECT_EQ(m.to_string(), "N + C(2,3) + C(0,4)");
  EXPECT_THROW(parse_monoid("C(1,0)"), CoverError);
  EXPECT_THROW(parse_monoid("X"), CoverError);
  try {
    parse_monoid("");
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyDescriptor);
  }
}

TEST(Run, SigmaThreshold) {
  const auto o = run("sigma", {"Z: R/(5) + R/(9) + R^1"});
  EXPECT_EQ(o.exit_code, kOk);
  EXPECT_EQ(o.report["answer"], "4");
  EXPECT_EQ(o.report["answer_kind"], "threshold");
  EXPECT_EQ(o.report["q"], "3");
  EXPECT_EQ(o.report["sigma_integer"], 4);
}

TEST(Run, VerifyKlein) {
  const auto o = run("verify", {"Z: R/(2) + R/(2)"});
  EXPECT_EQ(o.exit_code, kOk);
  EXPECT_EQ(o.report["answer"], "3");
  EXPECT_EQ(o.report["oracle"]["oracle_value"], 3);
  EXPECT_EQ(o.report["oracle"]["match"], true);
  EXPECT_EQ(o.report["verdict"], "match");
}

TEST(Run, PhiTwelve) {
  const auto o = run("phi", {"Z: R/(12)"});
  EXPECT_EQ(o.exit_code, kOk);
  EXPECT_EQ(o.report["phi"], 4);
  EXPECT_EQ(o.report["conjectural"], false);
}

TEST(Run, CoverAndCosetWitnessesCheckOut) {
  for (const char* text : {"Z: R/(2) + R/(2)", "Z: R/(12) + R/(18)", "Zi: R/(1+i)^2", "F2[t]: R/(t^2+t+1)^2", "Z: R/(9) + R"}) {
    Options opt;
    opt.check = true;
    const auto o = run("cover", {text}, opt);
    EXPECT_EQ(o.exit_code, kOk) << text << "\n" << o.report.dump(2);
    if (o.report["witness_check"].contains("verified")) {
      EXPECT_EQ(o.report["witness_check"]["verified"], true) << text;
    }
  }
  for (const char* puncture : {"0", "1", "3"}) {
    Options opt;
    opt.check = true;
    opt.puncture = puncture;
    const auto o = run("coset-cover", {"Z: R/(12)"}, opt);
    EXPECT_EQ(o.exit_code, kOk);
    EXPECT_EQ(o.report["cosets"].size(), 4U);
    EXPECT_EQ(o.report["witness_check"]["verified"], true);
  }
}

TEST(Run, CosetCoverFour) {
  Options opt;
  opt.puncture = "0";
  const auto o = run("coset-cover", {"Z: R/(4)"}, opt);
  ASSERT_EQ(o.report["cosets"].size(), 2U);
  EXPECT_EQ(o.report["cosets"][0]["representative"], "1");
  EXPECT_EQ(o.report["cosets"][1]["representative"], "2");
}

TEST(Run, MonoidAndSnfAndSSet) {
  Options opt;
  opt.check = true;
  auto o = run("monoid", {"N + N"}, opt);
  EXPECT_EQ(o.report["answer"], "two-submonoids");
  EXPECT_EQ(o.report["partition_check"]["verified"], true);
  o = run("monoid", {"C(0,2) + C(0,2)"});
  EXPECT_EQ(o.report["answer"], "is-group");
  EXPECT_EQ(o.report["delegate"], "Z: R/(2) + R/(2)");
  EXPECT_EQ(o.report["sigma"]["answer"], "3");

  o = run("snf", {"Z: [[2,4],[6,8]]"});
  EXPECT_EQ(o.exit_code, kOk);
  EXPECT_EQ(o.report["diagonal"], (Json::array({"2", "4"})));

  o = run("s-set", {"Z", "4"});
  EXPECT_EQ(o.report["modules"].size(), 2U);
}

TEST(Run, OracleCommand) {
  auto o = run("oracle", {"sigma", "Z: R/(3) + R/(3)"});
  EXPECT_EQ(o.report["oracle_value"], 4);
  Options opt;
  opt.puncture = "0";
  o = run("oracle", {"phi", "Zi: R/(2+i)"}, opt);
  EXPECT_EQ(o.report["oracle_value"], 4);
  opt.max_size = 8;
  o = run("oracle", {"sigma", "Z: R/(4) + R/(4)"}, opt);
  EXPECT_EQ(o.exit_code, kDataError);
  EXPECT_EQ(o.report["error"]["code"], "TooLarge");
}

TEST(Run, ErrorsAndUsage) {
  const auto o = run("sigma", {"Z: R/("});
  EXPECT_EQ(o.exit_code, kDataError);
  EXPECT_EQ(o.report["error"]["code"], "SyntaxError");
  EXPECT_EQ(o.report["error"]["position"], 6);
  EXPECT_THROW(run("frobnicate", {"Z: R"}), UsageError);
  EXPECT_THROW(run("sigma", {}), UsageError);
  EXPECT_EQ(run("phi", {"Z: R/(4) + R"}).exit_code, kDataError);
}

TEST(Run, DeterministicOutput) {
  Options opt;
  opt.check = true;
  for (const char* cmd : {"cover", "verify"}) {
    const auto a = run(cmd, {"Z: R/(4) + R/(6) + R/(9)"}, opt).report.dump();
    const auto b = run(cmd, {"Z: R/(4) + R/(6) + R/(9)"}, opt).report.dump();
    EXPECT_EQ(a, b);
  }
  EXPECT_FALSE(run("sigma", {"Z: R/(6)"}).report.contains("timing_ms"));
  Options timed;
  timed.timing = true;
  EXPECT_TRUE(run("sigma", {"Z: R/(6)"}, timed).report.contains("timing_ms"));
}

TEST(Run, HumanRendering) {
  const auto text = render_human(run("sigma", {"Z: R/(2) + R/(2)"}).report);
  EXPECT_NE(text.find("answer: 3"), std::string::npos) << text;
}
