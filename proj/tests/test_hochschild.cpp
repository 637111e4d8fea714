#include <gtest/gtest.h>

#include "support.hpp"
#include "thhkit/dga.hpp"
#include "thhkit/errors.hpp"
#include "thhkit/hochschild.hpp"

using namespace thhkit;
using testing_support::Gen;
using testing_support::kCases;

namespace {

// Free graded-commutative algebra that is smooth over its ground ring:
// polynomial generators in even degree (any degree over F2), exterior ones
// in odd degree otherwise.
Presentation smooth(Gen& g, const Ring& r) {
  Presentation p;
  p.ring = r;
  const int n = g.uniform(1, 2);
  for (int i = 0; i < n; ++i) {
    GeneratorSpec s;
    s.name = std::string(1, static_cast<char>('a' + i));
    s.degree = g.uniform(1, 4);
    s.kind = (s.degree % 2 == 0 || r.char_two()) ? GenKind::Polynomial : GenKind::Exterior;
    p.generators.push_back(s);
  }
  return p;
}

// Poincaré series of A ⊗ Ω: each generator x contributes its own algebra
// and a divided-power or exterior class dx in degree |x| + 1.
std::vector<std::size_t> hkr_series(const Presentation& p, int cap) {
  std::vector<std::size_t> s(static_cast<std::size_t>(cap) + 1, 0);
  s[0] = 1;
  auto times_poly = [&](int d) {
    for (int k = d; k <= cap; ++k) s[static_cast<std::size_t>(k)] += s[static_cast<std::size_t>(k - d)];
  };
  auto times_ext = [&](int d) {
    for (int k = cap; k >= d; --k) s[static_cast<std::size_t>(k)] += s[static_cast<std::size_t>(k - d)];
  };
  for (const auto& g : p.generators) {
    if (g.kind == GenKind::Polynomial) {
      times_poly(g.degree);
      times_ext(g.degree + 1);
    } else {
      times_ext(g.degree);
      times_poly(g.degree + 1);
    }
  }
  return s;
}

RingTable random_table(Gen& g, int cap) {
  return table_from_algebra(*Algebra::create(g.presentation(g.ring(), 2), cap));
}

}  // namespace

TEST(Hochschild, BoundarySquaresToZero) {
  Gen g(501);
  for (int c = 0; c < kCases; ++c) {
    const RingTable t = random_table(g, g.uniform(2, 4));
    const HochschildComplex hc = hochschild_complex(t, nullptr, t.cap());
    ASSERT_TRUE(hc.square_zero());
  }
}

TEST(Hochschild, BoundarySquaresToZeroWithDifferential) {
  for (const char* name : {"dga_acyclic.txt", "dga_acyclic_z.txt", "dga_db_a2.txt"}) {
    const DGA x = build_dga(testing_support::load(name));
    const HochschildComplex hc = hochschild_complex(x.table(), &x.differential(), 4);
    EXPECT_TRUE(hc.square_zero()) << name;
  }
}

TEST(Hochschild, SmoothAlgebrasMatchDifferentialForms) {
  Gen g(502);
  const int cap = 6;
  for (int c = 0; c < kCases; ++c) {
    const Ring r = g.ring();
    const Presentation p = smooth(g, r);
    const RingTable t = table_from_algebra(*Algebra::create(p, cap));
    const GradedModuleResult h = hh(t, cap);
    ASSERT_EQ(h.exactness, Exactness::Exact);
    const auto expect = hkr_series(p, cap);
    for (int d = 0; d <= cap; ++d) {
      const GradedValue& v = h.values[static_cast<std::size_t>(d)];
      ASSERT_EQ(v.dimension, expect[static_cast<std::size_t>(d)]) << r.name() << " degree " << d;
      if (!v.over_field) {
        ASSERT_TRUE(v.group.is_free());
      }
    }
  }
}

TEST(Hochschild, FormalDgaMatchesRing) {
  Gen g(503);
  for (int c = 0; c < kCases; ++c) {
    const RingTable t = random_table(g, g.uniform(2, 4));
    ASSERT_EQ(hh_dga(formal_dga(t), t.cap()).values, hh(t, t.cap()).values);
  }
}

TEST(Hochschild, IntegralRouteAgrees) {
  Gen g(504);
  for (int c = 0; c < kCases; ++c) {
    const RingTable t = table_from_algebra(*Algebra::create(g.presentation(Ring::integers(), 2), 4));
    ASSERT_EQ(hh_over_Z(t, 4).values, hh(t, 4).values);
  }
}

TEST(Hochschild, TorsionInIntegralHH) {
  // Z[x]/(x^2), |x| = 2: HH_5 = Z/2.
  const RingTable t = build_table(testing_support::load("hh_dual_z.txt"));
  EXPECT_EQ(hh_over_Z(t, 5).values[5].to_string(), "Z/2");
}

TEST(Hochschild, LengthCapMarksTruncation) {
  const RingTable t = build_table(testing_support::load("hh_poly_f3.txt"));
  EXPECT_EQ(hh(t, 5, 2).exactness, Exactness::TruncationLimited);
  EXPECT_EQ(hh(t, 5).exactness, Exactness::Exact);
}

TEST(Hochschild, Errors) {
  const RingTable f2 = build_table(testing_support::load("hh_dual_f2.txt"));
  try {
    hh_over_Z(f2, 3);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), "NonFreePieces");
  }
  const RingTable idem = build_table(parse_document("kind ring-table\nring Z\ncap 2\nbasis deg 0: 1, e\nmul e*e = e\n"));
  try {
    hh_over_Z(idem, 2);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), "NotConnected");
  }
  EXPECT_THROW(hh(f2, f2.cap() + 1), MathError);
}
