#include <gtest/gtest.h>

#include <functional>

#include "support.hpp"
#include "thhkit/errors.hpp"
#include "thhkit/thh.hpp"

using namespace thhkit;
using testing_support::Gen;
using testing_support::kCases;

namespace {

THHTable shipped(const std::string& name) { return build_thh_table(read_document(testing_support::data("thh/" + name))); }

std::vector<std::size_t> convolution(const GradedModuleResult& hh_values, const THHTable& t, int cap) {
  std::vector<std::size_t> out(static_cast<std::size_t>(cap) + 1, 0);
  for (int i = 0; i <= cap; ++i)
    for (int j = 0; i + j <= cap; ++j)
      out[static_cast<std::size_t>(i + j)] +=
          t.values[static_cast<std::size_t>(i)].dimension * hh_values.values[static_cast<std::size_t>(j)].dimension;
  return out;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MathError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST(Thh, ShippedTablesMatchStandardValues) {
  EXPECT_EQ(shipped("thh_hz.txt").values, thh_hz_table(16).values);
  EXPECT_EQ(shipped("thh_hf2.txt").values, thh_hfp_table(2, 16).values);
  EXPECT_EQ(shipped("thh_hf3.txt").values, thh_hfp_table(3, 16).values);
  EXPECT_EQ(shipped("thh_hf5.txt").values, thh_hfp_table(5, 16).values);
  for (const char* name : {"thh_hz.txt", "thh_hf2.txt", "thh_hf3.txt", "thh_hf5.txt"})
    EXPECT_EQ(shipped(name).provenance, Provenance::ExternalLiterature) << name;
  EXPECT_EQ(thh_hz_table(8).values[5].to_string(), "Z/3");
  EXPECT_EQ(thh_hz_table(8).values[4].to_string(), "0");
}

TEST(Thh, FieldSplittingIsConvolution) {
  const int cap = 8;
  for (const char* name : {"ground_f2.txt", "poly_x_f2.txt", "dual_x_f2.txt", "trunc4_f2.txt", "poly_xy_f3.txt",
                           "dual_x_f3.txt", "x_ysq_f3.txt", "x2y_y3_f3.txt"}) {
    const RingTable x = build_table(testing_support::load(name));
    const THHTable t = shipped(x.ring().char_two() ? "thh_hf2.txt" : "thh_hf3.txt");
    const KunnethResult r = thh_of_table(x, t, cap, false);
    EXPECT_NE(r.certification.find("monoid basis"), std::string::npos) << name;
    const auto expect = convolution(hh(x, cap), t, cap);
    ASSERT_EQ(r.degrees.size(), static_cast<std::size_t>(cap) + 1);
    for (int d = 0; d <= cap; ++d) {
      EXPECT_EQ(r.degrees[static_cast<std::size_t>(d)].tensor_part.dimension, expect[static_cast<std::size_t>(d)])
          << name << " degree " << d;
      EXPECT_TRUE(r.degrees[static_cast<std::size_t>(d)].tor_part.is_zero());
    }
  }
}

TEST(Thh, FieldSplittingIsConvolutionRandom) {
  Gen g(701);
  for (int c = 0; c < kCases; ++c) {
    const unsigned long p = g.coin() ? 2 : 3;
    const RingTable x = table_from_algebra(*Algebra::create(g.presentation(Ring::fp(p), 2), 6));
    const THHTable t = thh_hfp_table(p, 6);
    const GradedModuleResult h = hh(x, 6);
    const KunnethResult r = thh_groups(h, x.ring(), t, 6, "asserted");
    const auto expect = convolution(h, t, 6);
    for (int d = 0; d <= 6; ++d)
      ASSERT_EQ(r.degrees[static_cast<std::size_t>(d)].tensor_part.dimension, expect[static_cast<std::size_t>(d)]);
  }
}

TEST(Thh, IntegersOverThemselvesGiveTheTable) {
  const RingTable z = build_table(testing_support::load("ground_z.txt"));
  const THHTable t = shipped("thh_hz.txt");
  const KunnethResult r = thh_of_table(z, t, 8, false);
  for (int d = 0; d <= 8; ++d) {
    const KunnethDegree& k = r.degrees[static_cast<std::size_t>(d)];
    EXPECT_EQ(k.tensor_part.group + k.tor_part, t.values[static_cast<std::size_t>(d)].group) << d;
    EXPECT_EQ(k.flag, KunnethFlag::SplitDetermined);
  }
}

TEST(Thh, IntegralTorTerms) {
  // Z[x]/(x^2), |x| = 2: HH_3 = Z and HH_5 = Z/2, while THH_3(HZ) = Z/2.
  const RingTable x = build_table(testing_support::load("hh_dual_z.txt"));
  const GradedModuleResult h = hh(x, 5);
  const KunnethResult r = thh_groups(h, x.ring(), thh_hz_table(5), 5, "asserted");
  EXPECT_EQ(r.degrees[3].tensor_part.group.to_string(), "Z + Z/2");
  EXPECT_EQ(r.degrees[5].tensor_part.group.to_string(), "Z/2 + Z/6");
  EXPECT_EQ(r.degrees[5].flag, KunnethFlag::ExtensionAmbiguous);
  EXPECT_EQ(r.degrees[4].flag, KunnethFlag::SplitDetermined);
  Gen g(702);
  for (int c = 0; c < kCases; ++c) {
    const RingTable y = table_from_algebra(*Algebra::create(g.presentation(Ring::integers(), 2), 5));
    const GradedModuleResult hy = hh(y, 5);
    const KunnethResult ry = thh_groups(hy, y.ring(), thh_hz_table(5), 5, "asserted");
    for (int n = 0; n <= 5; ++n) {
      FgAbelianGroup tensor, tor;
      for (int i = 0; i <= n; ++i)
        tensor = tensor + tensor_fg(thh_hz_table(5).values[static_cast<std::size_t>(i)].group,
                                    hy.values[static_cast<std::size_t>(n - i)].group);
      for (int i = 0; i + 1 <= n; ++i)
        tor = tor + tor_fg(thh_hz_table(5).values[static_cast<std::size_t>(i)].group,
                           hy.values[static_cast<std::size_t>(n - 1 - i)].group);
      ASSERT_EQ(ry.degrees[static_cast<std::size_t>(n)].tensor_part.group, tensor);
      ASSERT_EQ(ry.degrees[static_cast<std::size_t>(n)].tor_part, tor);
    }
  }
}

TEST(Thh, Errors) {
  const RingTable f2 = build_table(testing_support::load("poly_x_f2.txt"));
  const GradedModuleResult h = hh(f2, 4);
  EXPECT_EQ(code_of([&] { thh_groups(h, f2.ring(), thh_hfp_table(2, 4), 4, ""); }), "NotCertified");
  EXPECT_EQ(code_of([&] { thh_groups(h, f2.ring(), thh_hfp_table(3, 4), 4, "x"); }), "RingMismatch");
  EXPECT_EQ(code_of([&] { thh_groups(h, f2.ring(), thh_hfp_table(2, 3), 4, "x"); }), "CapTooSmall");
  const RingTable lambda = build_table(testing_support::load("lambda_z_xy.txt"));
  EXPECT_EQ(code_of([&] { thh_of_table(lambda, thh_hz_table(4), 4, false); }), "NotCertified");
  const KunnethResult forced = thh_of_table(lambda, thh_hz_table(4), 4, true);
  EXPECT_EQ(forced.certification, "extension hypothesis assumed by override");
  THHTable bad = thh_hfp_table(2, 4);
  bad.values[0] = GradedValue::of_dimension(2);
  EXPECT_EQ(code_of([&] { bad.validate(); }), "InvalidTable");
}
