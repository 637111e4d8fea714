#include <gtest/gtest.h>

#include "support.hpp"
#include "thhkit/dga.hpp"
#include "thhkit/errors.hpp"

using namespace thhkit;
using testing_support::Gen;
using testing_support::kCases;

namespace {

using Sparse = std::map<std::size_t, mpz_class>;

void add(Sparse& acc, const Sparse& v, const mpz_class& c, const Ring& r) {
  for (const auto& [k, x] : v) {
    mpz_class s = r.reduce(acc[k] + c * x);
    if (s == 0) acc.erase(k); else acc[k] = s;
  }
}

Sparse apply(const std::vector<Vec>& d, const Sparse& v, const Ring& r) {
  Sparse out;
  for (const auto& [k, c] : v) add(out, Sparse(d[k].begin(), d[k].end()), c, r);
  return out;
}

Sparse mul(const RingTable& t, const Sparse& a, const Sparse& b) {
  Sparse out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) add(out, Sparse(t.product(i, j).begin(), t.product(i, j).end()), x * y, t.ring());
  return out;
}

// The laws checked straight from the structure constants.
std::string classify(const RingTable& t, const std::vector<Vec>& d) {
  const Ring& r = t.ring();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!apply(d, apply(d, Sparse{{i, 1}}, r), r).empty()) return "DifferentialNotSquareZero";
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) {
      const Sparse ei{{i, 1}}, ej{{j, 1}};
      const Sparse lhs = apply(d, mul(t, ei, ej), r);
      Sparse rhs = mul(t, apply(d, ei, r), ej);
      add(rhs, mul(t, ei, apply(d, ej, r)), t.entry(i).degree % 2 ? -1 : 1, r);
      if (lhs != rhs) return "LeibnizViolation";
    }
  return "";
}

std::vector<Vec> random_differential(Gen& g, const RingTable& t) {
  std::vector<Vec> d(t.size());
  const int mode = g.uniform(0, 3);
  if (mode == 0) return d;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (mode == 1 && g.uniform(0, 3) != 0) continue;
    for (std::size_t k : t.indices_of_degree(t.entry(i).degree - 1)) {
      const mpz_class c = t.ring().reduce(g.uniform(-1, 1));
      if (c != 0) d[i][k] = c;
    }
  }
  return d;
}

DGA parse_dga(const std::string& text) { return build_dga(parse_document(text)); }

}  // namespace

TEST(Dga, CreateAgreesWithDirectLawCheck) {
  Gen g(301);
  int accepted = 0, square = 0, leibniz = 0;
  for (int c = 0; c < kCases; ++c) {
    const auto a = Algebra::create(g.presentation(g.ring(), 2), g.uniform(3, 5));
    const RingTable t = table_from_algebra(*a);
    const auto d = random_differential(g, t);
    const std::string expect = classify(t, d);
    try {
      DGA::create(t, d);
      ASSERT_EQ(expect, "");
      ++accepted;
    } catch (const MathError& e) {
      ASSERT_EQ(e.code(), expect) << e.what();
      (expect == "LeibnizViolation" ? leibniz : square)++;
    }
  }
  EXPECT_GT(accepted, 20);
  EXPECT_GT(leibniz, 10);
  EXPECT_GT(square + leibniz + accepted, kCases - 1);
}

TEST(Dga, RandomAcceptedDifferentialsSquareToZero) {
  Gen g(302);
  int checked = 0;
  for (int c = 0; c < 4 * kCases && checked < kCases; ++c) {
    const auto a = Algebra::create(g.presentation(Ring::fp(2), 3), 5);
    const RingTable t = table_from_algebra(*a);
    try {
      const DGA x = DGA::create(t, random_differential(g, t));
      for (int n = 1; n <= t.cap(); ++n) {
        const Matrix dn = x.differential_matrix(n), dn1 = x.differential_matrix(n + 1);
        if (dn.rows() && dn.cols() && dn1.cols()) {
          ASSERT_TRUE((dn * dn1).reduced(t.ring()).is_zero());
        }
      }
      ++checked;
    } catch (const MathError&) {
    }
  }
  EXPECT_EQ(checked, kCases);
}

TEST(Dga, RejectsWrongDegree) {
  EXPECT_THROW(parse_dga("kind dga\nring F2\ncap 3\nbasis deg 0: 1\nbasis deg 2: b\nd b = 1\n"), MathError);
  try {
    parse_dga("kind dga\nring F2\ncap 3\nbasis deg 0: 1\nbasis deg 2: b\nd b = 1\n");
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), "InvalidDifferential");
  }
}

TEST(Dga, RejectsLeibnizFailure) {
  // d(a*a) = d b = a, but d(a)a - a d(a) = 0.
  try {
    parse_dga("kind dga\nring Z\ncap 2\nbasis deg 0: 1\nbasis deg 1: a\nbasis deg 2: b\nmul a*a = b\nd b = a\n");
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), "LeibnizViolation");
  }
}

TEST(Dga, AcyclicHomology) {
  for (const char* name : {"dga_acyclic.txt", "dga_acyclic_z.txt"}) {
    const Homology h = homology(build_dga(testing_support::load(name)));
    EXPECT_EQ(h.value_string(0), h.over_field() ? "1" : "Z") << name;
    for (int d = 1; d <= 2; ++d) EXPECT_EQ(h.value_string(d), "0") << name;
  }
}

TEST(Dga, SquareBoundaryKillsSquare) {
  const DGA x = build_dga(testing_support::load("dga_db_a2.txt"));
  const Homology h = homology(x);
  EXPECT_EQ(h.value_string(0), "1");
  EXPECT_EQ(h.value_string(1), "1");
  EXPECT_EQ(h.value_string(2), "0");
  EXPECT_EQ(h.value_string(3), "0");
  const RingTable r = homology_ring(x);
  ASSERT_EQ(r.dimension(1), 1u);
  const std::size_t a = r.indices_of_degree(1)[0];
  EXPECT_TRUE(r.product(a, a).empty());
}

TEST(Dga, TorsionHomologyOverZ) {
  const DGA x = parse_dga("kind dga\nring Z\ncap 2\nbasis deg 0: 1\nbasis deg 1: a\nbasis deg 2: b\nd b = 2*a\n");
  const Homology h = homology(x);
  EXPECT_EQ(h.value_string(1), "Z/2");
  EXPECT_EQ(h.value_string(2), "0");
  try {
    homology_ring(x);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), "TorsionInHomology");
  }
  EXPECT_EQ(h.project(1, Vec{{1, 3}}), (std::vector<mpz_class>{1}));
  EXPECT_THROW(h.project(2, Vec{{2, 1}}), MathError);
}

TEST(Dga, CompositeModulusNotSupported) {
  const DGA x = parse_dga("kind dga\nring Z/4\ncap 1\nbasis deg 0: 1\n");
  try {
    homology(x);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), "NotSupported");
  }
}

TEST(Dga, FormalHomologyRecoversTable) {
  Gen g(303);
  for (int c = 0; c < kCases; ++c) {
    const auto a = Algebra::create(g.presentation(g.ring(), 2), g.uniform(2, 5));
    const RingTable t = table_from_algebra(*a);
    const DGA x = formal_dga(t);
    const Homology h = homology(x);
    const RingTable r = homology_ring(x);
    ASSERT_EQ(r.ring(), t.ring());
    for (int d = 0; d <= t.cap(); ++d) {
      ASSERT_EQ(r.dimension(d), t.dimension(d));
      const auto* hd = h.at(d);
      ASSERT_EQ(hd ? hd->group.free_rank() : 0u, t.dimension(d));
    }
    ASSERT_NO_THROW(r.check());
    // Random cycles project back to their own coordinates up to the chosen basis.
    const int d = g.uniform(0, t.cap());
    if (t.dimension(d) == 0) continue;
    Vec v;
    for (std::size_t k : t.indices_of_degree(d)) {
      const mpz_class coef = t.ring().reduce(g.uniform(-3, 3));
      if (coef != 0) v[k] = coef;
    }
    const auto coords = h.project(d, v);
    Vec back;
    const auto* hd = h.at(d);
    for (std::size_t i = 0; i < coords.size(); ++i) vec_axpy(back, hd->representatives[i], coords[i], t.ring());
    ASSERT_EQ(back, v);
  }
}
