#include <gtest/gtest.h>

#include "support.hpp"
#include "thhkit/errors.hpp"
#include "thhkit/steenrod.hpp"

using namespace thhkit;
using testing_support::Gen;
using testing_support::kCases;

namespace {

int sign(int a, int b) { return (a * b) % 2 ? -1 : 1; }

// Exponent vectors of total degree d, each exponent below its own bound.
std::size_t count_monomials(const std::vector<int>& degrees, const std::vector<int>& bounds, int d, std::size_t i = 0) {
  if (i == degrees.size()) return d == 0 ? 1 : 0;
  std::size_t n = 0;
  for (int e = 0; e <= bounds[i] && e * degrees[i] <= d; ++e) n += count_monomials(degrees, bounds, d - e * degrees[i], i + 1);
  return n;
}

std::size_t brute_dimension(const Presentation& p, int d) {
  std::vector<int> degrees, bounds;
  for (const auto& g : p.generators) {
    degrees.push_back(g.degree);
    switch (g.kind) {
      case GenKind::Polynomial: bounds.push_back(1000); break;
      case GenKind::Exterior: bounds.push_back(1); break;
      case GenKind::Truncated: bounds.push_back(g.height - 1); break;
    }
  }
  return count_monomials(degrees, bounds, d);
}

void check_laws(Gen& g, const std::shared_ptr<const Algebra>& a) {
  const int cap = a->cap();
  const int i = g.uniform(0, cap), j = g.uniform(0, cap - i), k = g.uniform(0, cap - i - j);
  const Element x = g.element(*a, i), y = g.element(*a, j), z = g.element(*a, k);
  ASSERT_EQ(x * y, (y * x).scaled(sign(i, j))) << x.to_string() << " / " << y.to_string();
  ASSERT_EQ((x * y) * z, x * (y * z));
  ASSERT_EQ(x * a->one(), x);
  ASSERT_EQ(x * (y + z), x * y + x * z);
}

}  // namespace

TEST(GradedRing, KoszulCommutativityAndAssociativityRandom) {
  Gen g(201);
  for (int c = 0; c < kCases; ++c) {
    const auto a = Algebra::create(g.presentation(g.ring()), 7);
    for (int rep = 0; rep < 3; ++rep) check_laws(g, a);
  }
}

TEST(GradedRing, KoszulLawsWithRelations) {
  Gen g(202);
  const std::vector<std::string> names = {"x2y_y3_z.txt", "x2y_y3_f3.txt", "x_ysq_z.txt", "poly_xy_f3.txt",
                                          "ext_xy_f3.txt", "trunc4_f2.txt", "lambda_z_xy.txt"};
  for (int c = 0; c < kCases; ++c) {
    const auto a = build_algebra(testing_support::load(g.pick(names)));
    check_laws(g, a);
  }
}

TEST(GradedRing, OddSquareVanishes) {
  Gen g(203);
  for (int c = 0; c < kCases; ++c) {
    const Ring r = g.coin() ? Ring::fp(3) : Ring::integers();
    const auto a = Algebra::create(g.presentation(r), 7);
    const int d = 2 * g.uniform(0, 1) + 1;
    const Element x = g.element(*a, d);
    ASSERT_TRUE((x * x).is_zero()) << x.to_string();
  }
}

TEST(GradedRing, ExpansionMatchesBruteForceThroughTwenty) {
  Gen g(204);
  for (int c = 0; c < kCases; ++c) {
    const Presentation p = g.presentation(g.ring());
    const auto basis = expand_basis(p, 20);
    ASSERT_EQ(basis.size(), 21u);
    for (int d = 0; d <= 20; ++d) {
      ASSERT_EQ(basis[static_cast<std::size_t>(d)].size(), brute_dimension(p, d)) << "degree " << d;
      ASSERT_EQ(enumerate_monomials(p, d).size(), brute_dimension(p, d));
    }
  }
}

TEST(GradedRing, RelationsCutDimensions) {
  // Z[x,y]/(x^2 y, y^3), |x| = |y| = 2: monomials 1; x,y; x^2,xy,y^2; x^3,xy^2; x^4,xy^3=0...
  const auto a = build_algebra(testing_support::load("x2y_y3_z.txt"));
  EXPECT_EQ(a->dimension(0), 1u);
  EXPECT_EQ(a->dimension(2), 2u);
  EXPECT_EQ(a->dimension(4), 3u);
  EXPECT_EQ(a->dimension(6), 2u);  // x^3, x y^2
  EXPECT_EQ(a->dimension(8), 1u);  // x^4
}

TEST(GradedRing, RejectsInvalidPresentations) {
  Presentation p;
  p.ring = Ring::integers();
  p.generators = {{"x", 1, GenKind::Polynomial, 0}};
  EXPECT_THROW(Algebra::create(p, 4), MathError);
  p.ring = Ring::fp(2);
  EXPECT_NO_THROW(Algebra::create(p, 4));
  p.generators = {{"x", 0, GenKind::Polynomial, 0}};
  EXPECT_THROW(Algebra::create(p, 4), MathError);
  p.generators = {{"x", 2, GenKind::Truncated, 1}};
  EXPECT_THROW(Algebra::create(p, 4), MathError);
  p.generators = {{"x", 2, GenKind::Polynomial, 0}, {"x", 2, GenKind::Polynomial, 0}};
  EXPECT_THROW(Algebra::create(p, 4), MathError);
}

TEST(GradedRing, UngradedSignsCommuteStrictly) {
  Presentation p;
  p.ring = Ring::integers();
  p.signs = SignRule::Ungraded;
  p.generators = {{"x", 1, GenKind::Polynomial, 0}, {"y", 1, GenKind::Polynomial, 0}};
  const auto a = Algebra::create(p, 4);
  EXPECT_EQ(a->generator("x") * a->generator("y"), a->generator("y") * a->generator("x"));
  EXPECT_FALSE((a->generator("x") * a->generator("x")).is_zero());
}

TEST(GradedRing, TensorSignRule) {
  Gen g(205);
  for (int c = 0; c < kCases; ++c) {
    const Ring r = g.coin() ? Ring::fp(2) : Ring::fp(3);
    const auto a = Algebra::create(g.presentation(r, 2), 6);
    Presentation q = g.presentation(r, 2);
    for (auto& gen : q.generators) gen.name = "t" + gen.name;
    const auto b = Algebra::create(q, 6);
    const auto t = tensor(a, b, 6);
    const int i = g.uniform(0, 3), j = g.uniform(0, 3);
    const Element x = embed_left(t, g.element(*a, i)), y = embed_right(t, g.element(*b, j));
    ASSERT_EQ(y * x, (x * y).scaled(sign(i, j)));
    check_laws(g, t);
  }
}

namespace {

// Coefficients of Π 1/(1 - t^d_i) · Π (1 + t^e_j) through n.
std::vector<long> series(const std::vector<int>& poly, const std::vector<int>& ext, int n) {
  std::vector<long> s(static_cast<std::size_t>(n) + 1, 0);
  s[0] = 1;
  for (int d : poly)
    for (int k = d; k <= n; ++k) s[static_cast<std::size_t>(k)] += s[static_cast<std::size_t>(k - d)];
  for (int e : ext)
    for (int k = n; k >= e; --k) s[static_cast<std::size_t>(k)] += s[static_cast<std::size_t>(k - e)];
  return s;
}

}  // namespace

TEST(GradedRing, DualSteenrodDimensions) {
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const int cap = p == 2 ? 40 : 60;
    std::vector<int> poly, ext;
    for (long q = 1; q <= 1000; q *= static_cast<long>(p)) {
      const long xi = p == 2 ? q * 2 - 1 : 2 * (q * static_cast<long>(p) - 1);
      if (xi <= cap) poly.push_back(static_cast<int>(xi));
      if (p != 2 && 2 * q - 1 <= cap) ext.push_back(static_cast<int>(2 * q - 1));
    }
    const auto expect = series(poly, ext, cap);
    for (auto basis : {SteenrodBasis::Xi, SteenrodBasis::Zeta}) {
      const auto ctx = dual_steenrod(p, basis, cap);
      for (int d = 0; d <= cap; ++d)
        ASSERT_EQ(static_cast<long>(ctx.algebra()->dimension(d)), expect[static_cast<std::size_t>(d)]) << p << " " << d;
    }
  }
}
