#include <gtest/gtest.h>

#include "support.hpp"
#include "thhkit/dga.hpp"
#include "thhkit/errors.hpp"
#include "thhkit/obstruct.hpp"
#include "thhkit/steenrod.hpp"

using namespace thhkit;
using testing_support::Gen;
using testing_support::kCases;
using testing_support::load;

namespace {

RingTable table(const std::string& name) { return build_table(load(name)); }

}  // namespace

TEST(UnitMap, FourthPowerSurvivesInDualSteenrod) {
  const auto a = dual_steenrod(2, SteenrodBasis::Xi, 8).algebra();
  const auto b = build_algebra(load("trunc4_f2.txt"));
  const auto t = tensor(a, b, 8);
  const Element xi1 = embed_left(t, a->generator("xi1"));
  const Element z = embed_right(t, b->generator("x")) + xi1;
  EXPECT_EQ(z.pow(4), xi1.pow(4));
  EXPECT_FALSE(z.pow(4).is_zero());
}

TEST(UnitMap, SquareSurvivesForEveryUnitAtThree) {
  const auto a = dual_steenrod(3, SteenrodBasis::Xi, 8).algebra();
  const auto b = build_algebra(load("ext_xy_f3.txt"));
  const auto t = tensor(a, b, 8);
  for (int c : {1, 2}) {
    const Element z = embed_left(t, a->generator("xi1")).scaled(c) + embed_right(t, b->generator("y"));
    EXPECT_FALSE(z.pow(2).is_zero()) << c;
  }
}

TEST(UnitMap, ForcedMapHasOneSurvivor) {
  const auto trunc = build_algebra(load("trunc4_f2.txt"));
  const ForcedMapResult r2 = forced_unit_map(trunc, {"x"}, presentation_relations(trunc->presentation()), 8);
  ASSERT_TRUE(r2.complete);
  ASSERT_EQ(r2.survivors.size(), 1u);
  EXPECT_EQ(r2.survivors[0].assignment[0].second, "1⊗x");
  const auto ext = build_algebra(load("ext_xy_f3.txt"));
  const ForcedMapResult r3 = forced_unit_map(ext, {"y"}, presentation_relations(ext->presentation()), 8);
  ASSERT_TRUE(r3.complete);
  ASSERT_EQ(r3.survivors.size(), 1u);
  EXPECT_EQ(r3.survivors[0].assignment[0].second, "1⊗y");
  EXPECT_EQ(forced_unit_map(ext, {"y"}, {}, 8).survivors.size(), 3u);
}

TEST(UnitMap, ForcedMapReportsUncheckedRelations) {
  const auto trunc = build_algebra(load("trunc4_f2.txt"));
  const ForcedMapResult r = forced_unit_map(trunc, {"x"}, presentation_relations(trunc->presentation()), 3);
  EXPECT_EQ(r.unchecked_relations.size(), 1u);
  EXPECT_TRUE(r.relations.empty());
}

TEST(Obstruction, SquareIsUnsolvableOverTheIntegers) {
  for (const char* name : {"ground_f2.txt", "poly_x_f2.txt", "trunc4_f2.txt"}) {
    const RingTable b = table(name);
    const Verdict v = square_obstruction_p2(b, 4);
    EXPECT_EQ(v.status, VerdictStatus::Unsolvable) << name;
    EXPECT_FALSE(v.symbolic_certificate.empty());
    EXPECT_FALSE(v.witness.has_value());
    EXPECT_EQ(v.candidates.size(), std::size_t{1} << b.dimension(1)) << name;
    for (const auto& c : v.candidates) EXPECT_FALSE(c.refutation.empty());
    EXPECT_TRUE(replay(v, b)) << name;
  }
}

TEST(Obstruction, SquareControlHasWitness) {
  for (const char* name : {"ground_f2.txt", "poly_x_f2.txt", "trunc4_f2.txt"}) {
    const RingTable b = table(name);
    const Verdict v = square_obstruction_p2_control(b, 4);
    EXPECT_EQ(v.status, VerdictStatus::SolvableWitness) << name;
    EXPECT_EQ(v.witness.value_or(""), "xi1⊗1") << name;
    EXPECT_TRUE(replay(v, b));
  }
}

TEST(Obstruction, BocksteinIsUnsolvableAtThree) {
  const RingTable b = table("ext_xy_f3.txt");
  const Verdict v = bockstein_q1_obstruction(3, b, 4);
  EXPECT_EQ(v.status, VerdictStatus::Unsolvable);
  EXPECT_FALSE(v.symbolic_certificate.empty());
  EXPECT_EQ(v.candidates.size(), 3u);
  EXPECT_TRUE(replay(v, b));
  const Verdict c = bockstein_q1_obstruction_control(3, b, 4);
  EXPECT_EQ(c.status, VerdictStatus::SolvableWitness);
  EXPECT_EQ(c.witness.value_or(""), "tau0⊗1");
  EXPECT_TRUE(replay(c, b));
}

TEST(Obstruction, RandomAlgebrasOverTwo) {
  Gen g(801);
  for (int c = 0; c < kCases; ++c) {
    const RingTable b = table_from_algebra(*Algebra::create(g.presentation(Ring::fp(2)), g.uniform(2, 5)));
    const Verdict v = square_obstruction_p2(b, 2);
    ASSERT_EQ(v.status, VerdictStatus::Unsolvable);
    ASSERT_TRUE(replay(v, b));
    const Verdict w = square_obstruction_p2_control(b, 2);
    ASSERT_EQ(w.status, VerdictStatus::SolvableWitness);
    ASSERT_TRUE(replay(w, b));
  }
}

TEST(Obstruction, RandomAlgebrasAtThree) {
  Gen g(802);
  for (int c = 0; c < kCases; ++c) {
    const RingTable b = table_from_algebra(*Algebra::create(g.presentation(Ring::fp(3), 2), 4));
    const Verdict v = bockstein_q1_obstruction(3, b, 4);
    ASSERT_EQ(v.status, VerdictStatus::Unsolvable);
    ASSERT_TRUE(replay(v, b));
    const Verdict w = bockstein_q1_obstruction_control(3, b, 4);
    ASSERT_EQ(w.status, VerdictStatus::SolvableWitness);
    ASSERT_TRUE(replay(w, b));
  }
}

TEST(Obstruction, ReplayDetectsTampering) {
  const RingTable b = table("poly_x_f2.txt");
  Verdict v = square_obstruction_p2(b, 4);
  v.candidates[0].image = "tampered";
  EXPECT_FALSE(replay(v, b));
}

TEST(Obstruction, Errors) {
  const RingTable b = table("ext_xy_f3.txt");
  try {
    bockstein_q1_obstruction(3, b, 3);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), "CapTooSmall");
  }
  EXPECT_THROW(square_obstruction_p2(table("poly_x_f2.txt"), 1), MathError);
  EXPECT_THROW(square_obstruction_p2(b, 4), MathError);
  EXPECT_THROW(bockstein_q1_obstruction(2, b, 4), MathError);
}

TEST(ExtensionStatus, TruncatedPolynomialOverTwo) {
  const DGA x = formal_dga(table("trunc4_f2.txt"));
  const auto verdicts = extension_status(x, 4, {true, false, 1000000});
  ASSERT_EQ(verdicts.size(), 2u);
  EXPECT_EQ(verdicts[0].ground, Ring::fp(2));
  EXPECT_EQ(verdicts[0].verdict, ExtensionVerdict::CertifiedExtension);
  EXPECT_EQ(verdicts[1].ground, Ring::integers());
  EXPECT_EQ(verdicts[1].verdict, ExtensionVerdict::CertifiedNonExtension);
  ASSERT_TRUE(verdicts[1].obstruction.has_value());
}

TEST(ExtensionStatus, IntegralRoutes) {
  const auto formal = extension_status(formal_dga(table("poly_xy_z.txt")), 4, {true, false, 1000000});
  ASSERT_EQ(formal.size(), 1u);
  EXPECT_EQ(formal[0].verdict, ExtensionVerdict::CertifiedExtension);
  const auto unasserted = extension_status(formal_dga(table("poly_xy_z.txt")), 4, {false, false, 1000000});
  EXPECT_EQ(unasserted[0].verdict, ExtensionVerdict::Unknown);
  const auto lambda = extension_status(formal_dga(table("lambda_z_xy.txt")), 4, {true, false, 1000000});
  EXPECT_EQ(lambda[0].verdict, ExtensionVerdict::Unknown);
}

TEST(ExtensionStatus, OddPrimeNeedsAssertion) {
  const DGA x = formal_dga(table("ext_xy_f3.txt"));
  const auto plain = extension_status(x, 4, {true, false, 1000000});
  ASSERT_EQ(plain.size(), 2u);
  EXPECT_EQ(plain[1].verdict, ExtensionVerdict::Unknown);
  const auto asserted = extension_status(x, 4, {true, true, 1000000});
  EXPECT_EQ(asserted[1].verdict, ExtensionVerdict::CertifiedNonExtension);
  EXPECT_EQ(asserted[0].verdict, ExtensionVerdict::CertifiedExtension);
}

TEST(ExtensionStatus, NonFormalDgaOverTwo) {
  const DGA x = build_dga(load("dga_db_a2.txt"));
  const auto v = extension_status(x, 2, {false, false, 1000000});
  EXPECT_EQ(v[0].verdict, ExtensionVerdict::Unknown);
  EXPECT_EQ(v[1].verdict, ExtensionVerdict::CertifiedNonExtension);
}
