#pragma once

#include <random>
#include <string>
#include <vector>

#include "thhkit/algebra.hpp"
#include "thhkit/format.hpp"
#include "thhkit/table.hpp"

namespace testing_support {

inline constexpr int kCases = 200;

inline std::string fixture(const std::string& name) { return std::string(THHKIT_SOURCE_DIR) + "/fixtures/" + name; }
inline std::string data(const std::string& name) { return std::string(THHKIT_SOURCE_DIR) + "/data/" + name; }

inline thhkit::InputDocument load(const std::string& name) { return thhkit::read_document(fixture(name)); }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  thhkit::Ring ring() {
    switch (uniform(0, 2)) {
      case 0: return thhkit::Ring::fp(2);
      case 1: return thhkit::Ring::fp(3);
      default: return thhkit::Ring::integers();
    }
  }

  /// Free graded commutative algebra (possibly truncated) that the Koszul
  /// rule accepts over `r`.
  thhkit::Presentation presentation(const thhkit::Ring& r, int max_gens = 3) {
    thhkit::Presentation p;
    p.ring = r;
    const int n = uniform(1, max_gens);
    for (int i = 0; i < n; ++i) {
      thhkit::GeneratorSpec g;
      g.name = std::string(1, static_cast<char>('a' + i));
      g.degree = uniform(1, 3);
      const bool odd = g.degree % 2 == 1 && !r.char_two();
      if (odd) {
        g.kind = thhkit::GenKind::Exterior;
      } else {
        switch (uniform(0, 2)) {
          case 0: g.kind = thhkit::GenKind::Polynomial; break;
          case 1: g.kind = thhkit::GenKind::Exterior; break;
          default:
            g.kind = thhkit::GenKind::Truncated;
            g.height = uniform(2, 4);
        }
      }
      p.generators.push_back(g);
    }
    return p;
  }

  /// Random element of degree d (possibly zero).
  thhkit::Element element(const thhkit::Algebra& a, int d) {
    thhkit::Element e = a.zero();
    if (d < 0 || d > a.cap()) return e;
    for (const auto& m : a.basis(d)) e = e + a.monomial(m, uniform(-2, 2));
    return e;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing_support
