#include "thhkit/hochschild.hpp"

#include <functional>
#include <map>

#include "thhkit/errors.hpp"
#include "thhkit/parallel.hpp"

namespace thhkit {

std::string to_string(Exactness e) { return e == Exactness::Exact ? "exact" : "truncation-limited"; }

bool HochschildComplex::square_zero() const {
  for (std::size_t t = 2; t < boundary.size(); ++t)
    for (const Vec& col : boundary[t]) {
      Vec out;
      for (const auto& [k, c] : col) vec_axpy(out, boundary[t - 1][k], c, ring);
      if (!out.empty()) return false;
    }
  return true;
}

std::string HochschildComplex::render_chain(int t, std::size_t i) const {
  std::string s;
  for (std::size_t k : chains.at(static_cast<std::size_t>(t)).at(i)) s += (s.empty() ? "" : "⊗") + table.entry(k).name;
  return s;
}

namespace {

using Tuple = std::vector<std::size_t>;

std::vector<Tuple> enumerate_chains(const RingTable& a, std::size_t unit, int t, int length_cap) {
  std::vector<Tuple> out;
  std::vector<std::size_t> bar;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i != unit) bar.push_back(i);
  Tuple cur;
  std::function<void(int, int)> fill = [&](int slots, int remaining) {
    if (slots == 0) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (std::size_t i : bar) {
      int d = a.entry(i).degree;
      if (d > remaining) continue;
      cur.push_back(i);
      fill(slots - 1, remaining - d);
      cur.pop_back();
    }
  };
  for (int n = 0; n <= length_cap && n <= t; ++n)
    for (std::size_t a0 = 0; a0 < a.size(); ++a0) {
      int rem = t - n - a.entry(a0).degree;
      if (rem < 0) continue;
      cur.assign(1, a0);
      fill(n, rem);
    }
  return out;
}

}  // namespace

HochschildComplex hochschild_complex(const RingTable& input, const std::vector<Vec>* differential, int degree_cap,
                                     std::optional<int> length_cap) {
  if (degree_cap < 0) throw MathError("InvalidCap", "degree cap must be >= 0");
  if (input.min_degree() < 0) throw MathError("NotConnective", "Hochschild homology needs a nonnegatively graded input");
  if (input.unit().empty()) throw MathError("NonUnital", "the unit is zero");
  if (differential && !input.unit_index())
    throw MathError("NonUnital", "the unit of a DGA must be one of its basis elements");
  RingTable a = input.unit_index() ? input : normalize_unit(input);
  const std::size_t unit = *a.unit_index();
  const bool connected = a.dimension(0) == 1;
  HochschildComplex c;
  c.ring = a.ring();
  c.degree_cap = degree_cap;
  c.length_cap = length_cap ? *length_cap : (connected ? degree_cap + 1 : degree_cap + 2);
  if (c.length_cap < 0) throw MathError("InvalidCap", "length cap must be >= 0");
  c.exact = connected && c.length_cap >= degree_cap + 1;
  const int top = degree_cap + 1;
  c.chains.resize(static_cast<std::size_t>(top) + 1);
  std::vector<std::map<Tuple, std::size_t>> index(c.chains.size());
  parallel_for(c.chains.size(), [&](std::size_t t) {
    c.chains[t] = enumerate_chains(a, unit, static_cast<int>(t), c.length_cap);
    for (std::size_t i = 0; i < c.chains[t].size(); ++i) index[t].emplace(c.chains[t][i], i);
  });
  const Ring& ring = a.ring();
  auto deg = [&](std::size_t i) { return a.entry(i).degree; };
  c.boundary.resize(c.chains.size());
  parallel_for(c.chains.size(), [&](std::size_t t) {
    auto& cols = c.boundary[t];
    cols.resize(c.chains[t].size());
    if (t == 0) return;
    const auto& target = index[t - 1];
    for (std::size_t col = 0; col < c.chains[t].size(); ++col) {
      const Tuple& x = c.chains[t][col];
      const std::size_t n = x.size() - 1;
      Vec& out = cols[col];
      auto add = [&](const Tuple& y, const mpz_class& coeff) {
        for (std::size_t s = 1; s < y.size(); ++s)
          if (y[s] == unit) return;
        auto it = target.find(y);
        if (it == target.end()) throw MathError("InternalError", "Hochschild boundary left the chain basis");
        vec_axpy(out, Vec{{it->second, 1}}, coeff, ring);
      };
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& [k, v] : a.product(x[i], x[i + 1])) {
          Tuple y(x.begin(), x.begin() + static_cast<long>(i));
          y.push_back(k);
          y.insert(y.end(), x.begin() + static_cast<long>(i) + 2, x.end());
          add(y, i % 2 ? -v : v);
        }
      if (n >= 1) {
        long before = 0;
        for (std::size_t i = 0; i < n; ++i) before += deg(x[i]);
        int sign = (n % 2 ? -1 : 1) * ((before * deg(x[n])) % 2 ? -1 : 1);
        for (const auto& [k, v] : a.product(x[n], x[0])) {
          Tuple y{k};
          y.insert(y.end(), x.begin() + 1, x.begin() + static_cast<long>(n));
          add(y, sign * v);
        }
      }
      if (differential) {
        long prefix = 0;
        for (std::size_t i = 0; i <= n; ++i) {
          int sign = (n % 2 ? -1 : 1) * (prefix % 2 ? -1 : 1);
          for (const auto& [k, v] : (*differential)[x[i]]) {
            Tuple y = x;
            y[i] = k;
            add(y, sign * v);
          }
          prefix += deg(x[i]);
        }
      }
    }
  });
  c.table = std::move(a);
  if (!c.square_zero()) throw MathError("InternalError", "Hochschild differential does not square to zero");
  return c;
}

GradedModuleResult complex_homology(const HochschildComplex& c) {
  const Ring& ring = c.ring;
  if (!ring.is_field() && !ring.is_integers())
    throw MathError("NotSupported", "Hochschild homology over " + ring.name() + " (composite modulus) is not supported");
  const std::size_t top = c.chains.size();  // degrees 0..degree_cap+1
  std::vector<std::size_t> rank(top, 0);
  std::vector<std::vector<mpz_class>> factors(top);
  parallel_for(top, [&](std::size_t t) {
    if (t == 0 || c.chains[t].empty() || c.chains[t - 1].empty()) return;
    if (ring.is_field()) {
      const std::uint64_t p = ring.modulus().get_ui();
      std::vector<std::vector<std::uint64_t>> rows;
      for (const Vec& col : c.boundary[t]) {
        std::vector<std::uint64_t> row(c.chains[t - 1].size(), 0);
        for (const auto& [k, v] : col) row[k] = ring.reduce(v).get_ui();
        rows.push_back(std::move(row));
      }
      rank[t] = rank_mod_p(std::move(rows), p);
    } else {
      Matrix m(c.chains[t - 1].size(), c.chains[t].size());
      for (std::size_t col = 0; col < c.boundary[t].size(); ++col)
        for (const auto& [k, v] : c.boundary[t][col]) m(k, col) = v;
      factors[t] = invariant_factors(std::move(m));
      rank[t] = factors[t].size();
    }
  });
  GradedModuleResult r;
  r.degree_cap = c.degree_cap;
  r.length_cap = c.length_cap;
  r.exactness = c.exact ? Exactness::Exact : Exactness::TruncationLimited;
  for (int t = 0; t <= c.degree_cap; ++t) {
    const std::size_t ut = static_cast<std::size_t>(t);
    const std::size_t free = c.chains[ut].size() - rank[ut] - rank[ut + 1];
    if (ring.is_field()) {
      r.values.push_back(GradedValue::of_dimension(free));
    } else {
      std::vector<mpz_class> orders(free, 0);
      for (const auto& f : factors[ut + 1])
        if (f > 1) orders.push_back(f);
      r.values.push_back(GradedValue::of_group(FgAbelianGroup::from_cyclic(orders)));
    }
  }
  return r;
}

GradedModuleResult hh(const RingTable& a, int degree_cap, std::optional<int> length_cap) {
  if (a.cap() < degree_cap)
    throw MathError("CapTooSmall", "table is only known through degree " + std::to_string(a.cap()) +
                                       ", below the requested degree cap " + std::to_string(degree_cap));
  return complex_homology(hochschild_complex(a, nullptr, degree_cap, length_cap));
}

GradedModuleResult hh_dga(const DGA& x, int degree_cap, std::optional<int> length_cap) {
  if (!x.connective()) throw MathError("NotConnective", "hh-dga needs a connective DGA");
  return complex_homology(hochschild_complex(x.table(), &x.differential(), degree_cap, length_cap));
}

GradedModuleResult hh_over_Z(const RingTable& a, int degree_cap) {
  if (!a.ring().is_integers()) throw MathError("NonFreePieces", "integral Hochschild homology needs a table over Z");
  if (a.dimension(0) != 1) throw MathError("NotConnected", "integral Hochschild homology needs A_0 = Z");
  return hh(a, degree_cap);
}

}  // namespace thhkit
